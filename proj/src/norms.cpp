#include "turanlab/norms.hpp"

#include <algorithm>
#include <vector>

namespace turanlab {

namespace {

template <class Eval>
NormResult lq_impl(const QuadratureRule& rule, double q, Eval&& eval) {
  if (!(q > 0.0) || is_max_norm(q)) throw std::invalid_argument("lq_norm needs 0 < q < inf");
  std::vector<double> terms;
  terms.reserve(rule.size());
  bool weighted = false;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    if (!(rule.weights[i] > 0.0)) continue;
    weighted = true;
    const double v = eval(rule.nodes[i]);
    terms.push_back(v == kNegInf ? kNegInf : std::log(rule.weights[i]) + q * v);
  }
  if (!weighted) throw std::invalid_argument("quadrature rule carries no weight");
  return {log_sum_exp(terms) / q, q, rule.order};
}

template <class Eval>
NormResult sup_impl(const QuadratureRule& rule, Eval&& eval) {
  if (rule.empty()) throw std::invalid_argument("quadrature rule is empty");
  double best = kNegInf;
  for (std::size_t i = 0; i < rule.size(); ++i)
    if (rule.weights[i] > 0.0) best = std::max(best, eval(rule.nodes[i]));
  for (Complex z : rule.support) best = std::max(best, eval(z));
  return {best, kInf, rule.order};
}

}  // namespace

double log_sum_exp(std::span<const double> x) {
  double hi = kNegInf;
  for (double v : x) hi = std::max(hi, v);
  if (hi == kNegInf) return kNegInf;
  if (std::isinf(hi)) return hi;
  double sum = 0.0, comp = 0.0;
  for (double v : x) {
    if (v == kNegInf) continue;
    const double y = std::exp(v - hi) - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return hi + std::log(sum);
}

NormResult lq_norm(const ZeroPoly& p, const QuadratureRule& rule, double q) {
  return lq_impl(rule, q, [&](Complex z) { return log_abs(p, z); });
}

NormResult sup_norm(const ZeroPoly& p, const QuadratureRule& rule) {
  return sup_impl(rule, [&](Complex z) { return log_abs(p, z); });
}

NormResult norm(const ZeroPoly& p, const QuadratureRule& rule, double q) {
  return is_max_norm(q) ? sup_norm(p, rule) : lq_norm(p, rule, q);
}

NormResult lq_norm_deriv(const ZeroPoly& p, const QuadratureRule& rule, double q) {
  return lq_impl(rule, q, [&](Complex z) { return log_abs_deriv(p, z); });
}

NormResult sup_norm_deriv(const ZeroPoly& p, const QuadratureRule& rule) {
  return sup_impl(rule, [&](Complex z) { return log_abs_deriv(p, z); });
}

NormResult norm_deriv(const ZeroPoly& p, const QuadratureRule& rule, double q) {
  return is_max_norm(q) ? sup_norm_deriv(p, rule) : lq_norm_deriv(p, rule, q);
}

int default_order(int n, const MeasureModel& mu, double q) {
  if (mu.kind() == MeasureKind::discrete) return 1;
  if (mu.base() == MeasureKind::boundary_arclength) return std::max(256, 8 * n);
  const double qe = is_max_norm(q) ? 1.0 : std::max(q, 1.0);
  return std::max(64, static_cast<int>(std::ceil(16.0 * std::sqrt(n * qe))));
}

double log_oscillation_ratio(const ZeroPoly& p, const QuadratureRule& rule, double q) {
  const double lp = norm(p, rule, q).log_norm;
  if (lp == kNegInf) throw std::domain_error("degenerate norm");
  return norm_deriv(p, rule, q).log_norm - lp;
}

double oscillation_ratio(const ZeroPoly& p, const QuadratureRule& rule, double q) {
  return std::exp(log_oscillation_ratio(p, rule, q));
}

double oscillation_ratio(const ZeroPoly& p, const ConvexBody& body, const MeasureModel& mu, double q,
                         int order) {
  if (order <= 0) order = default_order(p.degree(), mu, q);
  return oscillation_ratio(p, build_quadrature(body, mu, order), q);
}

}  // namespace turanlab
