#pragma once

#include <array>
#include <vector>

#include "turanlab/types.hpp"

namespace turanlab {

struct Root {
  Complex z;
  int multiplicity = 1;
};

/// Monic polynomial held as its zero multiset. Equal zeros are grouped, so
/// evaluation cost scales with the number of distinct zeros.
class ZeroPoly {
 public:
  /// Throws std::invalid_argument on an empty list or non-finite zeros.
  explicit ZeroPoly(const std::vector<Complex>& zeros);
  explicit ZeroPoly(std::vector<Root> roots);

  const std::vector<Root>& roots() const noexcept { return roots_; }
  int degree() const noexcept { return degree_; }
  std::vector<Complex> zeros() const;

  /// Zeros pushed through z -> kappa (z - z0).
  ZeroPoly mapped(Complex kappa, Complex z0) const;

 private:
  std::vector<Root> roots_;
  int degree_ = 0;
};

inline constexpr double kEpsSplit = 1e-8;

/// ln|p(z)|; -inf exactly at a zero.
double log_abs(const ZeroPoly& p, Complex z);
/// ln|p'(z)|. Returns -inf where p' vanishes or the logarithmic derivative
/// cancels below rounding level.
double log_abs_deriv(const ZeroPoly& p, Complex z);

/// (1+z)^(n-k) (1-z)^k for 0 <= k <= n.
ZeroPoly endpoint_poly(int n, int k);

struct WitnessFamily {
  int n = 0;
  int k = 0;
  double M = 0.0;

  /// Requires 1 <= k and 2k < n.
  static WitnessFamily make(int n, int k);
  ZeroPoly poly() const { return endpoint_poly(n, k); }
};

/// Smallest k with 2 <= 2k < n-1 and A+w <= 1-2k/n <= A+1.5w.
/// Throws std::domain_error("degree below witness threshold") when n < 4/w or
/// no such k exists.
int choose_k(int n, double A, double w);

struct PeakShapeReport {
  int n = 0;
  int k = 0;
  double M = 0.0;
  int grid = 0;
  double monotone_violation = 0.0;   // max log-drop against the expected direction
  double asymmetry_violation = 0.0;  // max of ln p(M+x) - ln p(M-x)
  bool ok(double tol = 1e-12) const { return monotone_violation <= tol && asymmetry_violation <= tol; }
};

/// Grid check that (1+x)^(n-k)(1-x)^k rises on [-1,M], falls on [M,1], and
/// p(M-x) >= p(M+x). Requires 0 <= k, 2k < n, grid >= 2.
PeakShapeReport peak_shape_check(int n, int k, int grid);

/// (n-k) ln((1+x)^2+w^2) + k ln((1-x)^2+w^2).
double fnk_log(double x, int n, int k, double w);

/// u(x) = x^3 - M x^2 - (1-w^2) x + M(1+w^2).
double extremum_cubic(double x, double M, double w);

struct ExtremumPoints {
  double ell = 0.0;
  double mtilde = 0.0;
  double r = 0.0;
  double M = 0.0;
  double w = 0.0;
  std::array<double, 3> residuals{};  // |u| at ell, mtilde, r
  double pattern_violation = 0.0;     // f_{n,k} down/up/down/up on a grid
};

/// Roots of u in (-1,-M), (M, M+w/2), (1-w/2, 1) by bisection. Requires
/// 1 <= k, 2k < n and 0 < w < (1-M)/4; throws std::domain_error otherwise.
ExtremumPoints extremum_points(int n, int k, double w, int grid = 10000);

struct TailReport {
  int n = 0;
  int k = 0;
  double A = 0.0;
  double B = 0.0;
  double w = 0.0;
  double M = 0.0;
  int grid = 0;
  double left_violation = 0.0;   // max f_{n-1,k}(x) - f_{n-1,k}(A-2w), log scale
  double right_violation = 0.0;  // max f_{n-1,k-1}(x) - f_{n-1,k-1}(B+2w), log scale
  bool ok(double tol = 1e-10) const { return left_violation <= tol && right_violation <= tol; }
};

/// Checks the side conditions (throwing ConditionViolation named "B", "k",
/// "nw", "Mcond" or "l503") and then grid-verifies the two tail bounds.
TailReport tail_domination_check(int n, int k, double A, double w, int grid = 10000);

/// sqrt(e^2 - 1).
double e2_root();

}  // namespace turanlab
