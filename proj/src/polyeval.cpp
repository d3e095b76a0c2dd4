#include "turanlab/polyeval.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

namespace turanlab {

namespace {

constexpr double kLn2 = std::numbers::ln2;

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

bool lex_less(Complex a, Complex b) {
  return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
}

// ln prod |z - z_j|^{m_j} over the roots except `skip`; -inf on a hit.
double log_abs_except(const std::vector<Root>& roots, Complex z, std::size_t skip) {
  double mantissa = 1.0;
  long exponent = 0;
  double extra = 0.0;
  for (std::size_t j = 0; j < roots.size(); ++j) {
    if (j == skip) continue;
    const double n2 = std::norm(z - roots[j].z);
    if (n2 == 0.0) return kNegInf;
    if (roots[j].multiplicity == 1) {
      int e = 0;
      mantissa = std::frexp(mantissa * n2, &e);
      exponent += e;
    } else {
      extra += roots[j].multiplicity * std::log(n2);
    }
  }
  return 0.5 * (std::log(mantissa) + static_cast<double>(exponent) * kLn2 + extra);
}

// sum m_j / (z - z_j) over the roots except `skip`, with the sum of moduli.
std::pair<Complex, double> log_derivative(const std::vector<Root>& roots, Complex z, std::size_t skip) {
  Complex s{};
  double mag = 0.0;
  for (std::size_t j = 0; j < roots.size(); ++j) {
    if (j == skip) continue;
    const Complex t = static_cast<double>(roots[j].multiplicity) / (z - roots[j].z);
    s += t;
    mag += std::abs(t);
  }
  return {s, mag};
}

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
constexpr double kCancel = 8.0 * std::numeric_limits<double>::epsilon();

}  // namespace

ZeroPoly::ZeroPoly(const std::vector<Complex>& zeros) {
  if (zeros.empty()) throw std::invalid_argument("polynomial needs at least one zero");
  std::vector<Complex> sorted = zeros;
  for (Complex z : sorted)
    if (!finite(z)) throw std::invalid_argument("zeros must be finite");
  std::sort(sorted.begin(), sorted.end(), lex_less);
  for (Complex z : sorted) {
    if (!roots_.empty() && roots_.back().z == z)
      ++roots_.back().multiplicity;
    else
      roots_.push_back({z, 1});
  }
  degree_ = static_cast<int>(zeros.size());
}

ZeroPoly::ZeroPoly(std::vector<Root> roots) : roots_(std::move(roots)) {
  for (const Root& r : roots_) {
    if (!finite(r.z)) throw std::invalid_argument("zeros must be finite");
    if (r.multiplicity < 1) throw std::invalid_argument("multiplicity must be positive");
    degree_ += r.multiplicity;
  }
  if (degree_ < 1) throw std::invalid_argument("polynomial needs at least one zero");
}

std::vector<Complex> ZeroPoly::zeros() const {
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(degree_));
  for (const Root& r : roots_) out.insert(out.end(), static_cast<std::size_t>(r.multiplicity), r.z);
  return out;
}

ZeroPoly ZeroPoly::mapped(Complex kappa, Complex z0) const {
  std::vector<Root> out = roots_;
  for (Root& r : out) r.z = kappa * (r.z - z0);
  return ZeroPoly(std::move(out));
}

double log_abs(const ZeroPoly& p, Complex z) { return log_abs_except(p.roots(), z, kNone); }

double log_abs_deriv(const ZeroPoly& p, Complex z) {
  const auto& roots = p.roots();
  std::size_t nearest = 0;
  double dmin = kInf;
  for (std::size_t j = 0; j < roots.size(); ++j) {
    const double d = std::abs(z - roots[j].z);
    if (d < dmin) {
      dmin = d;
      nearest = j;
    }
  }

  if (dmin > kEpsSplit) {
    const auto [s, mag] = log_derivative(roots, z, kNone);
    const double as = std::abs(s);
    if (as <= kCancel * mag) return kNegInf;
    return log_abs(p, z) + std::log(as);
  }

  // p = (z - z_m)^mu g, p' = (z - z_m)^(mu-1) g (mu + (z - z_m) g'/g).
  const int mu = roots[nearest].multiplicity;
  const Complex h = z - roots[nearest].z;
  const double log_g = log_abs_except(roots, z, nearest);
  if (h == Complex{}) return mu == 1 ? log_g : kNegInf;
  const auto [sg, mag] = log_derivative(roots, z, nearest);
  const Complex inner = static_cast<double>(mu) + h * sg;
  if (std::abs(inner) <= kCancel * (mu + std::abs(h) * mag)) return kNegInf;
  return (mu - 1) * std::log(std::abs(h)) + log_g + std::log(std::abs(inner));
}

ZeroPoly endpoint_poly(int n, int k) {
  if (n < 1 || k < 0 || k > n) throw std::invalid_argument("endpoint polynomial needs 0 <= k <= n, n >= 1");
  std::vector<Root> roots;
  if (n - k > 0) roots.push_back({Complex{-1.0, 0.0}, n - k});
  if (k > 0) roots.push_back({Complex{1.0, 0.0}, k});
  return ZeroPoly(std::move(roots));
}

WitnessFamily WitnessFamily::make(int n, int k) {
  if (k < 1 || 2 * k >= n) throw std::invalid_argument("witness needs 1 <= k and 2k < n");
  return {n, k, 1.0 - 2.0 * k / n};
}

int choose_k(int n, double A, double w) {
  if (!(w > 0.0)) throw std::invalid_argument("witness width must be positive");
  if (n * w < 4.0 * (1.0 - 1e-12)) throw std::domain_error("degree below witness threshold");
  const double lo = A + w, hi = A + 1.5 * w;
  const double tol = 1e-12;
  for (int k = 1; 2 * k < n - 1; ++k) {
    const double M = 1.0 - 2.0 * k / n;
    if (M > hi + tol) continue;
    if (M < lo - tol) break;
    return k;
  }
  throw std::domain_error("degree below witness threshold");
}

PeakShapeReport peak_shape_check(int n, int k, int grid) {
  if (n < 1 || k < 0 || 2 * k >= n) throw std::invalid_argument("peak shape check needs 0 <= k and 2k < n");
  if (grid < 2) throw std::invalid_argument("grid needs at least two points");
  PeakShapeReport rep;
  rep.n = n;
  rep.k = k;
  rep.M = 1.0 - 2.0 * k / n;
  rep.grid = grid;
  const double M = rep.M;
  const double nk = n - k;

  // ln p(b) - ln p(a) for -1 <= a < b <= 1, formed from log1p of small ratios.
  auto rise = [&](double a, double b) {
    const double h = b - a;
    double r = 0.0;
    if (a == -1.0) return kInf;
    r += nk * std::log1p(h / (1.0 + a));
    if (k > 0) r += b == 1.0 ? kNegInf : k * std::log1p(-h / (1.0 - a));
    return r;
  };

  double prev = -1.0;
  for (int i = 1; i < grid; ++i) {
    const double x = i == grid - 1 ? M : -1.0 + (M + 1.0) * i / (grid - 1);
    if (x > prev) rep.monotone_violation = std::max(rep.monotone_violation, -rise(prev, x));
    prev = x;
  }
  prev = M;
  for (int i = 1; i < grid; ++i) {
    const double x = i == grid - 1 ? 1.0 : M + (1.0 - M) * i / (grid - 1);
    if (x > prev) rep.monotone_violation = std::max(rep.monotone_violation, rise(prev, x));
    prev = x;
  }

  for (int i = 0; i < grid; ++i) {
    const double x = (1.0 - M) * i / (grid - 1);
    if (x == 0.0) continue;
    // ln p(M-x) - ln p(M+x)
    double gap = nk * std::log1p(-2.0 * x / (1.0 + M + x));
    if (k > 0) gap += (M + x >= 1.0) ? kInf : k * std::log1p(2.0 * x / (1.0 - M - x));
    rep.asymmetry_violation = std::max(rep.asymmetry_violation, -gap);
  }
  return rep;
}

double fnk_log(double x, int n, int k, double w) {
  const double w2 = w * w;
  double r = 0.0;
  if (n - k != 0) r += (n - k) * std::log((1.0 + x) * (1.0 + x) + w2);
  if (k != 0) r += k * std::log((1.0 - x) * (1.0 - x) + w2);
  return r;
}

double extremum_cubic(double x, double M, double w) {
  const double w2 = w * w;
  return ((x - M) * x - (1.0 - w2)) * x + M * (1.0 + w2);
}

double e2_root() { return std::sqrt(std::exp(2.0) - 1.0); }

ExtremumPoints extremum_points(int n, int k, double w, int grid) {
  if (k < 1 || 2 * k >= n) throw std::domain_error("extremum bracketing inapplicable: needs 1 <= k and 2k < n");
  const double M = 1.0 - 2.0 * k / n;
  if (!(w > 0.0) || !(4.0 * w < 1.0 - M))
    throw std::domain_error("extremum bracketing inapplicable: needs 0 < w < (1-M)/4");

  auto u = [&](double x) { return extremum_cubic(x, M, w); };
  auto bisect = [&](double a, double b) {
    double fa = u(a);
    while (b - a > 1e-14) {
      const double mid = 0.5 * (a + b);
      const double fm = u(mid);
      if (fm == 0.0) return mid;
      if ((fm < 0.0) == (fa < 0.0)) {
        a = mid;
        fa = fm;
      } else {
        b = mid;
      }
    }
    return 0.5 * (a + b);
  };

  ExtremumPoints out;
  out.M = M;
  out.w = w;
  out.ell = bisect(-1.0, -M);
  out.mtilde = bisect(M, M + 0.5 * w);
  out.r = bisect(1.0 - 0.5 * w, 1.0);
  out.residuals = {std::abs(u(out.ell)), std::abs(u(out.mtilde)), std::abs(u(out.r))};

  // f_{n,k} falls, rises, falls, rises across the three roots.
  grid = std::max(grid, 2);
  double px = -1.0, pf = fnk_log(-1.0, n, k, w);
  for (int i = 1; i < grid; ++i) {
    const double x = -1.0 + 2.0 * i / (grid - 1);
    const double f = fnk_log(x, n, k, w);
    const double mid = 0.5 * (px + x);
    const bool straddles = (px < out.ell && x > out.ell) || (px < out.mtilde && x > out.mtilde) ||
                           (px < out.r && x > out.r);
    if (!straddles) {
      const bool rising = (mid > out.ell && mid < out.mtilde) || mid > out.r;
      const double slack = 1e-12 * std::max(1.0, std::abs(f));
      const double bad = rising ? pf - f : f - pf;
      if (bad > slack) out.pattern_violation = std::max(out.pattern_violation, bad);
    }
    px = x;
    pf = f;
  }
  return out;
}

TailReport tail_domination_check(int n, int k, double A, double w, int grid) {
  if (!(w > 0.0) || !(w < 1.0)) throw std::invalid_argument("tail check needs w in (0,1)");
  if (!(A >= 0.0) || !(A < 1.0)) throw std::invalid_argument("tail check needs A in [0,1)");
  const double B = A + 3.0 * w;
  if (!(B < 1.0)) throw ConditionViolation("B", "A + 3w >= 1");
  if (!(0 < 2 * k && 2 * k < n - 1)) throw ConditionViolation("k", "needs 0 < 2k < n-1");
  if (n * w < 4.0 * (1.0 - 1e-12)) throw ConditionViolation("nw", "n < 4/w");
  const double M = 1.0 - 2.0 * k / n;
  if (M < A + w - 1e-12 || M > A + 1.5 * w + 1e-12) throw ConditionViolation("Mcond", "M outside [A+w, A+1.5w]");
  if (w > (1.0 - B) / (e2_root() + 2.0) * (1.0 + 1e-12))
    throw ConditionViolation("l503", "w > (1-B)/(sqrt(e^2-1)+2)");

  TailReport rep;
  rep.n = n;
  rep.k = k;
  rep.A = A;
  rep.B = B;
  rep.w = w;
  rep.M = M;
  rep.grid = grid = std::max(grid, 2);

  const double xa = A - 2.0 * w;
  const double fa = fnk_log(xa, n - 1, k, w);
  for (int i = 0; i < grid; ++i) {
    const double x = i == grid - 1 ? xa : -1.0 + (xa + 1.0) * i / (grid - 1);
    rep.left_violation = std::max(rep.left_violation, fnk_log(x, n - 1, k, w) - fa);
  }
  const double xb = B + 2.0 * w;
  const double fb = fnk_log(xb, n - 1, k - 1, w);
  for (int i = 0; i < grid; ++i) {
    const double x = i == grid - 1 ? 1.0 : xb + (1.0 - xb) * i / (grid - 1);
    rep.right_violation = std::max(rep.right_violation, fnk_log(x, n - 1, k - 1, w) - fb);
  }
  return rep;
}

}  // namespace turanlab
