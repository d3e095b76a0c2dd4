#pragma once

#include <cstdint>
#include <vector>

#include "turanlab/measure.hpp"
#include "turanlab/polyeval.hpp"

namespace turanlab {

struct EstimateConfig {
  int n = 1;
  double q = kInf;
  int multistarts = 32;
  int max_iters = 2000;  // Nelder-Mead iterations per start
  std::uint64_t seed = 0;
  double projection_tol = 1e-9;
  int order = 0;  // quadrature order; <= 0 selects default_order
  // (delta, theta) used to build the witness start; theta <= 0 uses the
  // measured slab fraction at delta.
  double witness_delta = 0.5;
  double witness_theta = 0.0;
};

enum class StartKind { witness, endpoint, random };
const char* to_string(StartKind k);

struct StartRecord {
  StartKind kind = StartKind::random;
  double initial_ratio = kInf;
  double best_ratio = kInf;
  int iterations = 0;
  bool converged = false;
};

struct EstimateResult {
  double best_ratio = kInf;
  std::vector<Complex> best_zeros;
  std::vector<StartRecord> history;
  int best_start = -1;
  int order = 0;
  bool converged = false;  // the winning start met the simplex tolerance
};

/// Projected Nelder-Mead over the 2n coordinates of the zeros, multistarted
/// from the witness (when it can be built), the best split of the zeros
/// between the two diameter endpoints, and uniform random placements.
/// Deterministic for a fixed seed.
EstimateResult estimate_oscillation(const ConvexBody& body, const MeasureModel& mu, const EstimateConfig& config);

struct OracleResult {
  double ratio = kInf;
  std::vector<Complex> zeros;
  std::size_t evaluated = 0;
};

inline constexpr std::size_t kOracleBudget = 4'000'000;

/// Exhaustive minimum over multisets of n points drawn from a grid of the
/// body (grid_resolution per axis) plus grid_resolution samples per boundary
/// edge (4 grid_resolution on a circle). Requires n in {1,2,3} and
/// grid_resolution <= 64; throws std::domain_error("oracle budget") when the
/// number of multisets exceeds kOracleBudget.
OracleResult brute_oracle(const ConvexBody& body, const MeasureModel& mu, int n, double q, int grid_resolution,
                          int order = 0);

/// Lexicographic order on (Re, Im).
void sort_zeros(std::vector<Complex>& zeros);

}  // namespace turanlab
