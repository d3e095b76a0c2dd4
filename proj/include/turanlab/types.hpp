#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace turanlab {

using Complex = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Exponents are passed as doubles; q = +inf selects the max-norm path.
inline bool is_max_norm(double q) { return std::isinf(q) && q > 0; }
inline double reciprocal_exponent(double q) { return is_max_norm(q) ? 0.0 : 1.0 / q; }

// A named side condition of the witness construction failed. The name is the
// key used in report JSON ("ncondTh", "ncond1", "l503", "nw", "Mcond", ...).
class ConditionViolation : public std::domain_error {
 public:
  explicit ConditionViolation(std::string condition, const std::string& detail = {})
      : std::domain_error("condition (" + condition + ") violated" +
                          (detail.empty() ? std::string{} : ": " + detail)),
        condition_(std::move(condition)) {}

  const std::string& condition() const noexcept { return condition_; }

 private:
  std::string condition_;
};

}  // namespace turanlab
