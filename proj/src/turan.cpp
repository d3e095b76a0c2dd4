#include "turanlab/turan.hpp"

#include <algorithm>
#include <numbers>

#include <boost/math/tools/minima.hpp>

namespace turanlab {

double m_constant() { return 5.0 + e2_root(); }

double theorem_constant(double delta, double theta, double q) {
  if (!(delta > 0.0 && delta < 1.0) || !(theta > 0.0 && theta <= 1.0))
    throw std::invalid_argument("theorem constant needs delta in (0,1), theta in (0,1]");
  if (!(q > 0.0)) throw std::invalid_argument("q must be positive");
  return 121.0 / (1.0 - delta) * std::pow(1.0 + 2.0 / theta, reciprocal_exponent(q));
}

long long n_threshold(double d, double w, double q) {
  if (w == 0.0) throw std::invalid_argument("zero width");
  if (!(w > 0.0) || !(d > 0.0) || !(q > 0.0)) throw std::invalid_argument("threshold needs d, w, q > 0");
  const double ratio = d / w;
  const double v = 2.0 * (1.0 + reciprocal_exponent(q)) * ratio * ratio * std::log(ratio);
  if (!(v > 1.0)) return 1;
  return static_cast<long long>(std::ceil(v));
}

long long internal_n_condition(double w, double q) {
  if (!(w > 0.0)) throw std::invalid_argument("zero width");
  if (!(q > 0.0)) throw std::invalid_argument("q must be positive");
  const double v = 1.5 * (1.0 + reciprocal_exponent(q)) * std::log(1.0 / w) / (w * w);
  if (v < 0.0) return 1;
  return std::max(1LL, static_cast<long long>(std::floor(v)) + 1);
}

const char* to_string(Branch b) { return b == Branch::small_width ? "small_width" : "large_width"; }

double Margins::min() const { return std::min({e1, e1b, e2, e3, e4}); }

Witness build_witness(const ConvexBody& body, const MeasureModel& mu, double delta, double theta, int n,
                      double q, int tail_grid) {
  if (!(delta > 0.0 && delta < 1.0) || !(theta > 0.0 && theta <= 1.0))
    throw std::invalid_argument("witness needs delta in (0,1), theta in (0,1]");
  const double w = width(body);
  if (!(w > 0.0)) throw std::invalid_argument("zero width");

  WitnessSpec spec;
  spec.delta = delta;
  spec.theta = theta;
  spec.q = q;
  spec.n = n;
  spec.w = w;
  spec.m = m_constant();

  const SlabMass slab = slab_mass(body, mu, delta);
  spec.theta_certified = slab.theta;
  spec.total_mass = slab.total;
  if (slab.theta < theta * (1.0 - 1e-12))
    throw std::domain_error("no (delta, theta) certificate: mu(K_delta)/mu(K) = " + std::to_string(slab.theta));
  spec.conditions.ncondTh = n >= n_threshold(2.0, w, q);

  if (w > (1.0 - delta) / spec.m) {
    spec.branch = Branch::large_width;
    if (n < 2) throw ConditionViolation("n2", "the large-width witness needs n >= 2");
    spec.mass_left = measure_of(body, mu, Band{-delta, 0.0});
    spec.mass_right = measure_of(body, mu, Band{0.0, delta});
    spec.left_wins = spec.mass_left >= spec.mass_right;
    return {spec, spec.left_wins ? endpoint_poly(n, n) : endpoint_poly(n, 0)};
  }

  spec.branch = Branch::small_width;
  spec.conditions.ncond1 = n >= internal_n_condition(w, q);
  if (!*spec.conditions.ncond1) throw ConditionViolation("ncond1", "n must exceed 1.5(1+1/q) ln(1/w)/w^2");

  spec.strip = select_strip(body, mu, delta, theta, w);
  spec.mirrored = spec.strip->needs_mirror;
  const double A = spec.strip->construction_A();
  spec.A = A;
  spec.B = A + 3.0 * w;
  spec.k = choose_k(n, A, w);
  spec.M = 1.0 - 2.0 * spec.k / n;
  spec.Q = Band{A - 2.0 * w, spec.B + 2.0 * w};
  spec.K_A = Band{-1.0, A - 2.0 * w};
  spec.K_B = Band{spec.B + 2.0 * w, 1.0};

  const double m = spec.m;
  Margins mg;
  mg.e1 = 1.0 - A - m * w;
  mg.e1b = 1.0 - spec.B - (m - 3.0) * w;
  mg.e2 = 1.0 - (spec.B + w) - (m - 4.0) * w;
  mg.e3 = 1.0 - (spec.B + 2.0 * w) - (1.0 - delta) * (1.0 - 5.0 / m);
  mg.e4 = spec.B + w - spec.M - 2.5 * w;
  spec.margins = mg;

  // Throws ConditionViolation naming the first failed side condition.
  spec.tail = tail_domination_check(n, spec.k, A, w, tail_grid);
  spec.conditions.nw = true;
  spec.conditions.Mcond = true;
  spec.conditions.l503 = true;

  ZeroPoly p = spec.mirrored ? endpoint_poly(n, n - spec.k) : endpoint_poly(n, spec.k);
  return {spec, std::move(p)};
}

TheoremReport verify_theorem(const ConvexBody& body, const MeasureModel& mu, double delta, double theta,
                             int n, double q, int order) {
  TheoremReport rep;
  const DiameterPair dp = diameter(body);
  rep.d = dp.d;
  rep.w = width(body);
  const long long threshold = n_threshold(rep.d, rep.w, q);
  if (n < threshold)
    throw ConditionViolation("ncondTh", "n = " + std::to_string(n) + " < " + std::to_string(threshold));

  const NormalizedBody nb = normalize(body, dp);
  rep.kappa_abs = nb.map.scale();
  const MeasureModel mu_n = mu.mapped(nb.map);
  Witness wit = build_witness(nb.body, mu_n, delta, theta, n, q);
  rep.spec = wit.spec;
  rep.spec.conditions.ncondTh = true;

  const ZeroPoly p = wit.poly.mapped(1.0 / nb.map.kappa, -nb.map.kappa * nb.map.z0);
  rep.zeros = p.zeros();
  rep.order = order > 0 ? order : default_order(n, mu, q);
  rep.ratio = oscillation_ratio(p, build_quadrature(body, mu, rep.order), q);
  rep.constant = theorem_constant(delta, theta, q);
  rep.bound = rep.constant * rep.w / (rep.d * rep.d) * n;
  rep.slack = rep.ratio / rep.bound;

  const double tail = std::pow(1.0 + 2.0 / theta, reciprocal_exponent(q));
  rep.normalized_ratio = rep.ratio / rep.kappa_abs;
  if (rep.spec.branch == Branch::large_width) {
    rep.chain_bound = 4.0 * n * tail;
  } else {
    const double m = rep.spec.m;
    rep.chain_bound = 4.0 * std::sqrt(17.0) / ((1.0 - 5.0 / m) * (1.0 - delta)) * tail * rep.spec.w / 4.0 * n;
  }
  rep.chain_ok = rep.normalized_ratio <= rep.chain_bound;
  rep.pass = rep.slack <= 1.0 && rep.chain_ok;
  return rep;
}

OptimizedConstant arclength_constant(double q) {
  if (!(q > 0.0)) throw std::invalid_argument("q must be positive");
  if (is_max_norm(q)) return {121.0, 0.0};
  const double Q = std::sqrt(q * q + 3.0 * q + 1.0);
  return {121.0 * (3.0 * q + 2.0 + 2.0 * Q) / (5.0 * q) * std::pow(3.0 + 2.0 * q + 2.0 * Q, 1.0 / q),
          2.0 / (Q + q + 1.0)};
}

OptimizedConstant area_constant(double q) {
  if (!(q > 0.0)) throw std::invalid_argument("q must be positive");
  if (is_max_norm(q)) return {121.0, 0.0};
  const double Q = std::sqrt(4.0 * q * q + 10.0 * q + 4.0);
  return {121.0 * (5.0 * q + 4.0 + 2.0 * Q) / (9.0 * q) * std::pow(4.0 * q + 5.0 + 2.0 * Q, 1.0 / q),
          4.0 / (Q + 2.0 * q + 2.0)};
}

OptimizedConstant minimized_constant(double q, double c) {
  if (!(q > 0.0) || !(c > 0.0)) throw std::invalid_argument("q and c must be positive");
  if (is_max_norm(q)) return {121.0, 0.0};
  auto f = [&](double delta) { return std::log1p(c / delta) / q - std::log1p(-delta); };
  const auto [delta, value] = boost::math::tools::brent_find_minima(f, 1e-12, 1.0 - 1e-12, 60);
  return {121.0 * std::exp(value), delta};
}

RCircularReport r_circular_lower(const ConvexBody& body, double R, const ZeroPoly& p, int samples) {
  if (!body.is_disk() || !(R >= body.radius() * (1.0 - 1e-12)))
    throw std::domain_error("not R-circular certified");
  if (samples < 1) throw std::invalid_argument("need at least one boundary sample");
  for (const Root& r : p.roots())
    if (!body.contains(r.z, 1e-9)) throw std::invalid_argument("zeros must lie in the body");

  RCircularReport rep;
  rep.R = R;
  rep.samples = samples;
  const double log_factor = std::log(p.degree() / (2.0 * R));
  for (int j = 0; j < samples; ++j) {
    const Complex z = body.center() + body.radius() * std::polar(1.0, 2.0 * std::numbers::pi * j / samples);
    const double lp = log_abs(p, z);
    if (lp == kNegInf) continue;  // p(z) = 0: the bound holds trivially
    const double margin = log_abs_deriv(p, z) - (lp + log_factor);
    if (margin < rep.min_margin) {
      rep.min_margin = margin;
      rep.argmin = z;
    }
  }
  return rep;
}

}  // namespace turanlab
