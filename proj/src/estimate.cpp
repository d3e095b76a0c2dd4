#include "turanlab/estimate.hpp"

#include <algorithm>
#include <numbers>
#include <random>

#include "turanlab/norms.hpp"
#include "turanlab/parallel.hpp"
#include "turanlab/turan.hpp"

namespace turanlab {

namespace {

using Point = std::vector<double>;  // 2n coordinates (re0, im0, re1, im1, ...)

Point to_point(const std::vector<Complex>& zeros) {
  Point x;
  x.reserve(2 * zeros.size());
  for (Complex z : zeros) {
    x.push_back(z.real());
    x.push_back(z.imag());
  }
  return x;
}

std::vector<Complex> to_zeros(const Point& x) {
  std::vector<Complex> z(x.size() / 2);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = {x[2 * i], x[2 * i + 1]};
  return z;
}

class Objective {
 public:
  Objective(const ConvexBody& body, const QuadratureRule& rule, double q) : body_(body), rule_(rule), q_(q) {}

  // Projects onto K^n, sorts the zeros, and returns ln(||p'||/||p||).
  double operator()(Point& x) const {
    std::vector<Complex> z = to_zeros(x);
    for (Complex& c : z) c = body_.project(c);
    sort_zeros(z);
    x = to_point(z);
    try {
      const double v = log_oscillation_ratio(ZeroPoly(z), rule_, q_);
      return std::isnan(v) ? kInf : v;
    } catch (const std::domain_error&) {
      return kInf;
    }
  }

 private:
  const ConvexBody& body_;
  const QuadratureRule& rule_;
  double q_;
};

struct NelderMeadOutcome {
  Point best;
  double value = kInf;
  int iterations = 0;
  bool converged = false;
};

NelderMeadOutcome nelder_mead(const Objective& f, Point x0, double step, int max_iters) {
  const std::size_t dim = x0.size();
  std::vector<Point> v(dim + 1, x0);
  std::vector<double> fv(dim + 1);
  fv[0] = f(v[0]);
  for (std::size_t i = 0; i < dim; ++i) {
    Point& p = v[i + 1];
    p = v[0];
    p[i] += step;
    fv[i + 1] = f(p);
    if (p == v[0]) {
      p[i] -= 2.0 * step;
      fv[i + 1] = f(p);
    }
  }

  auto affine = [&](const Point& a, const Point& b, double t) {  // a + t (b - a)
    Point r(dim);
    for (std::size_t j = 0; j < dim; ++j) r[j] = a[j] + t * (b[j] - a[j]);
    return r;
  };

  NelderMeadOutcome out;
  std::vector<std::size_t> idx(dim + 1);
  int it = 0;
  for (; it < max_iters; ++it) {
    for (std::size_t i = 0; i <= dim; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t ib = idx.front(), iw = idx.back(), is = idx[dim - 1];

    double size = 0.0;
    for (std::size_t i = 0; i <= dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) size = std::max(size, std::abs(v[i][j] - v[ib][j]));
    const bool flat = std::isfinite(fv[iw]) && fv[iw] - fv[ib] <= 1e-13 * (1.0 + std::abs(fv[ib]));
    if (flat && size <= 1e-10) {
      out.converged = true;
      break;
    }
    if (size <= 1e-13) {
      out.converged = true;
      break;
    }

    Point c(dim, 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == iw) continue;
      for (std::size_t j = 0; j < dim; ++j) c[j] += v[i][j] / static_cast<double>(dim);
    }

    Point xr = affine(c, v[iw], -1.0);
    const double fr = f(xr);
    if (fr < fv[ib]) {
      Point xe = affine(c, v[iw], -2.0);
      const double fe = f(xe);
      if (fe < fr) {
        v[iw] = std::move(xe);
        fv[iw] = fe;
      } else {
        v[iw] = std::move(xr);
        fv[iw] = fr;
      }
      continue;
    }
    if (fr < fv[is]) {
      v[iw] = std::move(xr);
      fv[iw] = fr;
      continue;
    }
    Point xc = fr < fv[iw] ? affine(c, xr, 0.5) : affine(c, v[iw], 0.5);
    const double fc = f(xc);
    if (fc < std::min(fr, fv[iw])) {
      v[iw] = std::move(xc);
      fv[iw] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == ib) continue;
      v[i] = affine(v[ib], v[i], 0.5);
      fv[i] = f(v[i]);
    }
  }

  const auto best = static_cast<std::size_t>(std::min_element(fv.begin(), fv.end()) - fv.begin());
  out.best = v[best];
  out.value = fv[best];
  out.iterations = it;
  return out;
}

Complex random_point(const ConvexBody& body, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (body.is_disk()) {
    const double r = body.radius() * std::sqrt(u(rng));
    return body.center() + std::polar(r, 2.0 * std::numbers::pi * u(rng));
  }
  if (body.is_segment()) {
    const auto& v = body.vertices();
    return v[0] + u(rng) * (v[1] - v[0]);
  }
  const auto box = body.bounding_box();
  for (;;) {
    const Complex z{box.xmin + u(rng) * (box.xmax - box.xmin), box.ymin + u(rng) * (box.ymax - box.ymin)};
    if (body.contains(z, 0.0)) return z;
  }
}

std::vector<Complex> witness_start(const ConvexBody& body, const MeasureModel& mu, const EstimateConfig& cfg) {
  try {
    const NormalizedBody nb = normalize(body);
    const MeasureModel mu_n = mu.mapped(nb.map);
    double theta = cfg.witness_theta;
    if (!(theta > 0.0)) theta = slab_mass(nb.body, mu_n, cfg.witness_delta).theta;
    const Witness wit = build_witness(nb.body, mu_n, cfg.witness_delta, theta, cfg.n, cfg.q, 200);
    return wit.poly.mapped(1.0 / nb.map.kappa, -nb.map.kappa * nb.map.z0).zeros();
  } catch (const std::exception&) {
    return {};
  }
}

// n - k zeros at one diameter endpoint and k at the other, with k picked by
// ratio. k = 0 puts every zero at one endpoint. Large n scans 129 splits.
std::vector<Complex> endpoint_start(const DiameterPair& dp, const QuadratureRule& rule, const EstimateConfig& cfg) {
  const int n = cfg.n;
  const int samples = std::min(n, 128);
  int best_k = 0;
  double best = kInf;
  for (int j = 0; j <= samples; ++j) {
    const int k = static_cast<int>(std::lround(static_cast<double>(j) * n / samples));
    std::vector<Root> roots;
    if (n - k > 0) roots.push_back({dp.a, n - k});
    if (k > 0) roots.push_back({dp.b, k});
    try {
      const double v = log_oscillation_ratio(ZeroPoly(std::move(roots)), rule, cfg.q);
      if (v < best) {
        best = v;
        best_k = k;
      }
    } catch (const std::domain_error&) {
    }
  }
  std::vector<Complex> z(static_cast<std::size_t>(n), dp.a);
  std::fill(z.begin() + (n - best_k), z.end(), dp.b);
  return z;
}

}  // namespace

const char* to_string(StartKind k) {
  switch (k) {
    case StartKind::witness:
      return "witness";
    case StartKind::endpoint:
      return "endpoint";
    default:
      return "random";
  }
}

void sort_zeros(std::vector<Complex>& zeros) {
  std::sort(zeros.begin(), zeros.end(), [](Complex a, Complex b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
}

EstimateResult estimate_oscillation(const ConvexBody& body, const MeasureModel& mu, const EstimateConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("degree must be at least 1");
  if (cfg.multistarts < 1) throw std::invalid_argument("multistarts must be at least 1");
  if (cfg.max_iters < 0) throw std::invalid_argument("max_iters must be nonnegative");
  if (!(cfg.q > 0.0)) throw std::invalid_argument("q must be positive");

  EstimateResult res;
  res.order = cfg.order > 0 ? cfg.order : default_order(cfg.n, mu, cfg.q);
  const QuadratureRule rule = build_quadrature(body, mu, res.order);
  const Objective objective(body, rule, cfg.q);
  const DiameterPair dp = diameter(body);
  const double step = 0.05 * dp.d;

  std::vector<std::pair<StartKind, std::vector<Complex>>> seeds;
  if (auto w = witness_start(body, mu, cfg); !w.empty()) seeds.emplace_back(StartKind::witness, std::move(w));
  seeds.emplace_back(StartKind::endpoint, endpoint_start(dp, rule, cfg));
  if (seeds.size() > static_cast<std::size_t>(cfg.multistarts)) seeds.resize(static_cast<std::size_t>(cfg.multistarts));

  const auto starts = static_cast<std::size_t>(cfg.multistarts);
  std::vector<NelderMeadOutcome> outcomes(starts);
  res.history.resize(starts);
  parallel_for(starts, [&](std::size_t s) {
    StartRecord& rec = res.history[s];
    std::vector<Complex> z0;
    if (s < seeds.size()) {
      rec.kind = seeds[s].first;
      z0 = seeds[s].second;
    } else {
      std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                        static_cast<std::uint32_t>(s)};
      std::mt19937_64 rng(seq);
      rec.kind = StartKind::random;
      for (int i = 0; i < cfg.n; ++i) z0.push_back(random_point(body, rng));
    }
    Point x = to_point(z0);
    rec.initial_ratio = std::exp(objective(x));

    // Restart from the incumbent while the budget lasts and progress is made.
    NelderMeadOutcome best{x, std::log(rec.initial_ratio), 0, false};
    int used = 0;
    while (used < cfg.max_iters) {
      NelderMeadOutcome run = nelder_mead(objective, best.best, step, cfg.max_iters - used);
      used += std::max(run.iterations, 1);
      const bool improved = run.value < best.value - 1e-12 * (1.0 + std::abs(best.value));
      const bool converged = run.converged;
      if (run.value < best.value) best = std::move(run);
      best.converged = best.converged || converged;
      if (!improved) break;
    }
    best.iterations = used;
    rec.best_ratio = std::exp(best.value);
    rec.iterations = used;
    rec.converged = best.converged;
    outcomes[s] = std::move(best);
  });

  for (std::size_t s = 0; s < starts; ++s) {
    if (res.best_start < 0 || outcomes[s].value < outcomes[static_cast<std::size_t>(res.best_start)].value)
      res.best_start = static_cast<int>(s);
  }
  const auto& win = outcomes[static_cast<std::size_t>(res.best_start)];
  res.best_zeros = to_zeros(win.best);
  res.converged = win.converged;
  res.best_ratio = oscillation_ratio(ZeroPoly(res.best_zeros), rule, cfg.q);
  return res;
}

OracleResult brute_oracle(const ConvexBody& body, const MeasureModel& mu, int n, double q, int grid_resolution,
                          int order) {
  if (n < 1 || n > 3) throw std::invalid_argument("oracle degree must be 1, 2 or 3");
  if (grid_resolution < 2 || grid_resolution > 64) throw std::invalid_argument("grid resolution must be in [2, 64]");

  std::vector<Complex> pts;
  const auto box = body.bounding_box();
  const int g = grid_resolution;
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) {
      const Complex z{box.xmin + (box.xmax - box.xmin) * i / (g - 1), box.ymin + (box.ymax - box.ymin) * j / (g - 1)};
      if (body.contains(z, 1e-12)) pts.push_back(z);
    }
  }
  if (body.is_disk()) {
    for (int j = 0; j < 4 * g; ++j)
      pts.push_back(body.center() + std::polar(body.radius(), 2.0 * std::numbers::pi * j / (4 * g)));
  } else {
    const auto& v = body.vertices();
    const std::size_t edges = body.is_segment() ? 1 : v.size();
    for (std::size_t e = 0; e < edges; ++e)
      for (int j = 0; j < g; ++j) pts.push_back(v[e] + (v[(e + 1) % v.size()] - v[e]) * (static_cast<double>(j) / g));
  }

  const std::size_t P = pts.size();
  double combos = 1.0;
  for (int i = 0; i < n; ++i) combos = combos * static_cast<double>(P + static_cast<std::size_t>(i)) / (i + 1);
  if (combos > static_cast<double>(kOracleBudget)) throw std::domain_error("oracle budget");

  if (order <= 0) order = default_order(n, mu, q);
  const QuadratureRule rule = build_quadrature(body, mu, order);
  auto eval = [&](const std::vector<Complex>& z) {
    try {
      return oscillation_ratio(ZeroPoly(z), rule, q);
    } catch (const std::domain_error&) {
      return kInf;
    }
  };

  std::vector<OracleResult> partial(P);
  parallel_for(P, [&](std::size_t i) {
    OracleResult& r = partial[i];
    auto consider = [&](std::vector<Complex> z) {
      const double v = eval(z);
      ++r.evaluated;
      if (v < r.ratio) {
        r.ratio = v;
        r.zeros = std::move(z);
      }
    };
    if (n == 1) {
      consider({pts[i]});
    } else if (n == 2) {
      for (std::size_t j = i; j < P; ++j) consider({pts[i], pts[j]});
    } else {
      for (std::size_t j = i; j < P; ++j)
        for (std::size_t k = j; k < P; ++k) consider({pts[i], pts[j], pts[k]});
    }
  });

  OracleResult out;
  for (const auto& r : partial) {
    out.evaluated += r.evaluated;
    if (r.ratio < out.ratio) {
      out.ratio = r.ratio;
      out.zeros = r.zeros;
    }
  }
  return out;
}

}  // namespace turanlab
