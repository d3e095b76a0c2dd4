#pragma once

#include <span>

#include "turanlab/measure.hpp"
#include "turanlab/polyeval.hpp"

namespace turanlab {

/// ln sum exp(x_i): max first, then a compensated sum of exp(x_i - max).
/// -inf entries count as exact zeros; an all -inf input gives -inf.
double log_sum_exp(std::span<const double> x);

struct NormResult {
  double log_norm = kNegInf;  // ln ||p||_q
  double q = 0.0;
  int rule_order = 0;
};

/// q in (0, inf). Throws std::invalid_argument when the rule carries no weight.
NormResult lq_norm(const ZeroPoly& p, const QuadratureRule& rule, double q);
/// Node max over positive-weight nodes and the rule's support points.
NormResult sup_norm(const ZeroPoly& p, const QuadratureRule& rule);
/// Dispatches on q; q = +inf selects sup_norm.
NormResult norm(const ZeroPoly& p, const QuadratureRule& rule, double q);

/// Same, for p' through log_abs_deriv.
NormResult lq_norm_deriv(const ZeroPoly& p, const QuadratureRule& rule, double q);
NormResult sup_norm_deriv(const ZeroPoly& p, const QuadratureRule& rule);
NormResult norm_deriv(const ZeroPoly& p, const QuadratureRule& rule, double q);

/// Default quadrature order for a degree-n polynomial.
/// Boundary measures: max(256, 8n) per edge or circle. Area measures resolve
/// the peak of |p|^q, which has width of order 1/sqrt(nq).
int default_order(int n, const MeasureModel& mu, double q);

/// ||p'||_q / ||p||_q. Throws std::domain_error("degenerate norm") when
/// ||p||_q = 0 on the rule.
double oscillation_ratio(const ZeroPoly& p, const QuadratureRule& rule, double q);
double log_oscillation_ratio(const ZeroPoly& p, const QuadratureRule& rule, double q);
/// order <= 0 selects default_order.
double oscillation_ratio(const ZeroPoly& p, const ConvexBody& body, const MeasureModel& mu, double q,
                         int order = 0);

}  // namespace turanlab
