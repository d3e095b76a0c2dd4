#pragma once

#include <optional>

#include "turanlab/geometry.hpp"
#include "turanlab/measure.hpp"
#include "turanlab/norms.hpp"
#include "turanlab/polyeval.hpp"

namespace turanlab {

/// 5 + sqrt(e^2 - 1); the small/large width split is w = (1 - delta)/m.
double m_constant();

/// 121/(1-delta) (1 + 2/theta)^(1/q), with 1/q = 0 at q = inf.
double theorem_constant(double delta, double theta, double q);

/// ceil(2 (1+1/q) (d/w)^2 ln(d/w)), floored at 1. Throws "zero width" for w = 0.
long long n_threshold(double d, double w, double q);

/// Smallest n with n > 1.5 (1+1/q) ln(1/w) / w^2 (normalized width w).
long long internal_n_condition(double w, double q);

enum class Branch { small_width, large_width };
const char* to_string(Branch b);

/// Side conditions of the construction; nullopt where a condition does not
/// apply to the branch taken.
struct ConditionFlags {
  std::optional<bool> ncondTh;
  std::optional<bool> ncond1;
  std::optional<bool> l503;
  std::optional<bool> nw;
  std::optional<bool> Mcond;
};

/// Slack of the small-branch margin inequalities (each must be >= 0).
struct Margins {
  double e1 = 0.0;   // 1 - A - m w
  double e1b = 0.0;  // 1 - B - (m-3) w
  double e2 = 0.0;   // 1 - (B+w) - (m-4) w
  double e3 = 0.0;   // 1 - (B+2w) - (1-delta)(1-5/m)
  double e4 = 0.0;   // B + w - M - 5w/2
  double min() const;
};

/// Parameters of the witness construction, in the normalized frame.
struct WitnessSpec {
  Branch branch = Branch::large_width;
  double delta = 0.0;
  double theta = 0.0;
  double q = 0.0;
  int n = 0;
  double w = 0.0;  // normalized width
  double m = 0.0;
  double theta_certified = 0.0;  // mu(K_delta)/mu(K)
  ConditionFlags conditions;

  // Small-width branch. A, B, M, k and the x-ranges of Q, K_A, K_B are given
  // in the construction frame, which is z -> -z of the normalized frame when
  // `mirrored` is set.
  std::optional<StripResult> strip;
  bool mirrored = false;
  double A = 0.0;
  double B = 0.0;
  int k = 0;
  double M = 0.0;
  Band Q;
  Band K_A;
  Band K_B;
  std::optional<Margins> margins;
  std::optional<TailReport> tail;

  // Large-width branch: left_wins selects (1-z)^n, otherwise (1+z)^n.
  bool left_wins = true;
  double mass_left = 0.0;
  double mass_right = 0.0;
  double total_mass = 0.0;
};

struct Witness {
  WitnessSpec spec;
  ZeroPoly poly;  // zeros in the normalized frame
};

/// body and mu must already be normalized. Throws std::domain_error when the
/// (delta, theta) certificate fails and ConditionViolation for a degree below
/// the branch's threshold.
Witness build_witness(const ConvexBody& body, const MeasureModel& mu, double delta, double theta, int n,
                      double q, int tail_grid = 2000);

struct TheoremReport {
  WitnessSpec spec;
  double d = 0.0;
  double w = 0.0;  // original width
  double kappa_abs = 0.0;
  int order = 0;
  double constant = 0.0;
  double ratio = 0.0;  // ||p'||_q / ||p||_q on the original body
  double bound = 0.0;  // C_q(delta, theta) (w/d^2) n
  double slack = 0.0;  // ratio / bound
  /// Ratio in the normalized frame against the branch's own intermediate
  /// bound: 4n(1+2/theta)^(1/q) (large) or 4 sqrt(17)/((1-5/m)(1-delta))
  /// (1+2/theta)^(1/q) (w/d^2) n at d = 2 (small).
  double normalized_ratio = 0.0;
  double chain_bound = 0.0;
  bool chain_ok = false;
  bool pass = false;
  std::vector<Complex> zeros;  // witness zeros in the original frame
};

/// Normalizes, builds the witness, maps it back and measures its ratio on the
/// original (body, mu). order <= 0 selects default_order.
TheoremReport verify_theorem(const ConvexBody& body, const MeasureModel& mu, double delta, double theta,
                             int n, double q, int order = 0);

struct OptimizedConstant {
  double C = 0.0;
  double delta_opt = 0.0;
};

/// Boundary arc length, theta = delta/2.
OptimizedConstant arclength_constant(double q);
/// Area, theta = delta/4.
OptimizedConstant area_constant(double q);
/// Minimizes 121 (1 + c/delta)^(1/q) / (1 - delta) over delta in (0,1) with
/// Brent's method (c = 4 for arc length, 8 for area).
OptimizedConstant minimized_constant(double q, double c);

struct RCircularReport {
  double R = 0.0;
  int samples = 0;
  double min_margin = kInf;  // min ln|p'| - ln(n/(2R)|p|)
  Complex argmin{};
};

/// Throws std::domain_error("not R-circular certified") unless body is a disk
/// of radius <= R, and std::invalid_argument if a zero lies outside the body.
RCircularReport r_circular_lower(const ConvexBody& body, double R, const ZeroPoly& p, int samples);

}  // namespace turanlab
