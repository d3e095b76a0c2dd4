#include "turanlab/measure.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace turanlab {

namespace {

constexpr int kPanelPoints = 16;

const GaussRule& panel_rule(int points) {
  static const std::vector<GaussRule> table = [] {
    std::vector<GaussRule> t(kPanelPoints + 1);
    for (int n = 1; n <= kPanelPoints; ++n) t[n] = gauss_legendre(n);
    return t;
  }();
  return table.at(static_cast<std::size_t>(points));
}

// Composite Gauss-Legendre on [a, b] with at least `points` nodes; emit(t, weight).
template <class Emit>
void composite_gauss(double a, double b, int points, Emit&& emit) {
  points = std::max(points, 1);
  const int per_panel = std::min(points, kPanelPoints);
  const int panels = (points + per_panel - 1) / per_panel;
  const GaussRule& g = panel_rule(per_panel);
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
      emit(lo + 0.5 * h * (g.nodes[i] + 1.0), 0.5 * h * g.weights[i]);
  }
}

bool covers(const Band& band, double xmin, double xmax) { return band.lo <= xmin && band.hi >= xmax; }

int support_samples(int order) { return std::max(64, 8 * order); }

void boundary_polygon(const ConvexBody& body, int order, const Band& band, QuadratureRule& rule) {
  const auto& v = body.vertices();
  const std::size_t edges = body.is_segment() ? 1 : v.size();
  for (std::size_t i = 0; i < edges; ++i) {
    const Complex p = v[i];
    const Complex q = v[(i + 1) % v.size()];
    double t0 = 0.0, t1 = 1.0;
    const double dx = q.real() - p.real();
    if (dx == 0.0) {
      if (p.real() < band.lo || p.real() > band.hi) continue;
    } else {
      double ta = (band.lo - p.real()) / dx;
      double tb = (band.hi - p.real()) / dx;
      if (ta > tb) std::swap(ta, tb);
      t0 = std::max(0.0, ta);
      t1 = std::min(1.0, tb);
      if (!(t0 < t1)) continue;
    }
    const double len = std::abs(q - p);
    const int points = static_cast<int>(std::ceil(order * (t1 - t0)));
    composite_gauss(t0, t1, points, [&](double t, double wt) {
      rule.nodes.push_back(p + t * (q - p));
      rule.weights.push_back(len * wt);
    });
    rule.support.push_back(p + t0 * (q - p));
    rule.support.push_back(p + t1 * (q - p));
  }
}

// Angular range [t1, t2] within [0, pi] of the upper half circle where
// cx + r cos t lies in the band; empty when t1 >= t2.
std::pair<double, double> disk_angles(const ConvexBody& body, const Band& band) {
  const double cx = body.center().real();
  const double r = body.radius();
  const double cl = std::clamp((band.lo - cx) / r, -1.0, 1.0);
  const double ch = std::clamp((band.hi - cx) / r, -1.0, 1.0);
  if (band.lo > cx + r || band.hi < cx - r) return {0.0, 0.0};
  return {std::acos(ch), std::acos(cl)};
}

void boundary_disk(const ConvexBody& body, int order, const Band& band, QuadratureRule& rule) {
  const Complex c = body.center();
  const double r = body.radius();
  auto at = [&](double t) { return c + r * Complex{std::cos(t), std::sin(t)}; };
  if (covers(band, c.real() - r, c.real() + r)) {
    // Trapezoid rule; N divisible by 4 puts +-1, +-i (relative to c) on nodes.
    const int n = std::max(4, (order + 3) / 4 * 4);
    const double wt = 2.0 * std::numbers::pi * r / n;
    for (int j = 0; j < n; ++j) {
      rule.nodes.push_back(at(2.0 * std::numbers::pi * j / n));
      rule.weights.push_back(wt);
    }
    return;
  }
  const auto [t1, t2] = disk_angles(body, band);
  if (!(t1 < t2)) return;
  const int points = static_cast<int>(std::ceil(order * (t2 - t1) / (2.0 * std::numbers::pi)));
  for (double sign : {1.0, -1.0}) {
    composite_gauss(t1, t2, points, [&](double t, double wt) {
      rule.nodes.push_back(at(sign * t));
      rule.weights.push_back(r * wt);
    });
    rule.support.push_back(at(sign * t1));
    rule.support.push_back(at(sign * t2));
  }
}

int chord_points(int order) { return std::max(16, order / 4); }

// Vertical chord {y : x + iy in polygon}; empty pair (lo > hi) if x misses it.
std::pair<double, double> chord(const std::vector<Complex>& v, double x) {
  double lo = kInf, hi = kNegInf;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Complex p = v[i];
    const Complex q = v[(i + 1) % v.size()];
    const double x0 = std::min(p.real(), q.real()), x1 = std::max(p.real(), q.real());
    if (x < x0 || x > x1) continue;
    if (x0 == x1) {
      lo = std::min({lo, p.imag(), q.imag()});
      hi = std::max({hi, p.imag(), q.imag()});
      continue;
    }
    const double y = p.imag() + (x - p.real()) * (q.imag() - p.imag()) / (q.real() - p.real());
    lo = std::min(lo, y);
    hi = std::max(hi, y);
  }
  return {lo, hi};
}

// Tensor Gauss-Legendre over vertical chords. Chord ends are linear between
// consecutive vertex abscissae, so each x-piece is integrated without kinks.
void area_polygon(const ConvexBody& body, int order, const Band& band, QuadratureRule& rule) {
  if (body.is_segment()) return;
  const auto& v = body.vertices();
  const auto box = body.bounding_box();
  const double xa = std::max(box.xmin, band.lo), xb = std::min(box.xmax, band.hi);
  if (!(xa < xb)) return;

  std::vector<double> breaks{xa, xb};
  for (Complex z : v)
    if (z.real() > xa && z.real() < xb) breaks.push_back(z.real());
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  const double span = box.xmax - box.xmin;
  const int y_points = chord_points(order);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i], b = breaks[i + 1];
    const int x_points = static_cast<int>(std::ceil(order * (b - a) / span));
    composite_gauss(a, b, x_points, [&](double x, double wx) {
      const auto [ylo, yhi] = chord(v, x);
      if (!(ylo < yhi)) return;
      composite_gauss(ylo, yhi, y_points, [&](double y, double wy) {
        rule.nodes.emplace_back(x, y);
        rule.weights.push_back(wx * wy);
      });
    });
  }

  const std::vector<Complex> clipped = covers(band, box.xmin, box.xmax)
                                           ? v
                                           : clip_to_band(v, band.lo, band.hi);
  const int samples = support_samples(order);
  for (std::size_t e = 0; e < clipped.size(); ++e) {
    const Complex p = clipped[e];
    const Complex q = clipped[(e + 1) % clipped.size()];
    for (int j = 0; j < samples; ++j) rule.support.push_back(p + (q - p) * (static_cast<double>(j) / samples));
  }
}

void area_disk(const ConvexBody& body, int order, const Band& band, QuadratureRule& rule) {
  const Complex c = body.center();
  const double r = body.radius();
  const auto [t1, t2] = disk_angles(body, band);
  if (!(t1 < t2)) return;
  // x = cx + r cos t removes the square-root behaviour of the chord at the ends.
  const int t_points = static_cast<int>(std::ceil(order * (t2 - t1) / std::numbers::pi));
  const int y_points = chord_points(order);
  composite_gauss(t1, t2, t_points, [&](double t, double wt) {
    const double half = r * std::sin(t);
    const double x = c.real() + r * std::cos(t);
    composite_gauss(-half, half, y_points, [&](double y, double wy) {
      rule.nodes.emplace_back(x, c.imag() + y);
      rule.weights.push_back(wt * half * wy);
    });
  });
  const int samples = 4 * support_samples(order);
  for (int j = 0; j < samples; ++j) {
    const Complex z = c + r * std::polar(1.0, 2.0 * std::numbers::pi * j / samples);
    if (band.lo <= z.real() && z.real() <= band.hi) rule.support.push_back(z);
  }
}

void base_rule(const ConvexBody& body, MeasureKind kind, int order, const Band& band,
               QuadratureRule& rule) {
  if (kind == MeasureKind::boundary_arclength) {
    body.is_disk() ? boundary_disk(body, order, band, rule) : boundary_polygon(body, order, band, rule);
  } else {
    body.is_disk() ? area_disk(body, order, band, rule) : area_polygon(body, order, band, rule);
  }
}

}  // namespace

GaussRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre needs at least one point");
  GaussRule g;
  g.nodes.resize(static_cast<std::size_t>(n));
  g.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      dp = n * (z * p1 - p2) / (z * z - 1.0);
      const double step = p1 / dp;
      z -= step;
      if (std::abs(step) < 1e-16) break;
    }
    g.nodes[static_cast<std::size_t>(i)] = -z;
    g.nodes[static_cast<std::size_t>(n - 1 - i)] = z;
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    g.weights[static_cast<std::size_t>(i)] = w;
    g.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return g;
}

double QuadratureRule::total_mass() const {
  double sum = 0.0, comp = 0.0;
  for (double w : weights) {
    const double t = sum + w;
    comp += std::abs(sum) >= std::abs(w) ? (sum - t) + w : (w - t) + sum;
    sum = t;
  }
  return sum + comp;
}

void QuadratureRule::scale_weights(double c) {
  for (double& w : weights) w *= c;
}

MeasureModel MeasureModel::boundary_arclength() { return MeasureModel{}; }

MeasureModel MeasureModel::area() {
  MeasureModel m;
  m.kind_ = m.base_ = MeasureKind::area;
  return m;
}

MeasureModel MeasureModel::discrete(std::vector<Atom> atoms) {
  for (const Atom& a : atoms) {
    if (!(a.mass >= 0.0) || !std::isfinite(a.mass) || !std::isfinite(a.point.real()) ||
        !std::isfinite(a.point.imag()))
      throw std::invalid_argument("atoms need finite coordinates and finite nonnegative mass");
  }
  MeasureModel m;
  m.kind_ = m.base_ = MeasureKind::discrete;
  m.atoms_ = std::move(atoms);
  return m;
}

MeasureModel MeasureModel::weighted(MeasureKind base, Density density, std::string label) {
  if (base != MeasureKind::boundary_arclength && base != MeasureKind::area)
    throw std::invalid_argument("weighted measure base must be boundary_arclength or area");
  if (!density) throw std::invalid_argument("weighted measure needs a density");
  MeasureModel m;
  m.kind_ = MeasureKind::weighted;
  m.base_ = base;
  m.density_ = std::move(density);
  m.label_ = std::move(label);
  return m;
}

MeasureModel MeasureModel::mapped(const AffineNormalization& map) const {
  MeasureModel out = *this;
  for (Atom& a : out.atoms_) a.point = map.forward(a.point);
  if (density_) {
    out.density_ = [inner = density_, map](Complex t) { return inner(map.inverse(t)); };
  }
  const double s = map.scale();
  if (base_ == MeasureKind::boundary_arclength) out.mass_scale_ /= s;
  if (base_ == MeasureKind::area) out.mass_scale_ /= s * s;
  return out;
}

QuadratureRule build_quadrature(const ConvexBody& body, const MeasureModel& mu, int order,
                                const Band& band) {
  if (order < 1) throw std::invalid_argument("quadrature order must be positive");
  QuadratureRule rule;
  rule.order = order;
  if (mu.kind() == MeasureKind::discrete) {
    for (const Atom& a : mu.atoms()) {
      if (!body.contains(a.point, 1e-9)) throw std::invalid_argument("discrete atom lies outside the body");
      if (a.mass > 0.0 && band.admits(a.point.real())) {
        rule.nodes.push_back(a.point);
        rule.weights.push_back(a.mass);
      }
    }
    return rule;
  }

  base_rule(body, mu.base(), order, band, rule);
  if (mu.kind() == MeasureKind::weighted) {
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double rho = mu.density(rule.nodes[i]);
      if (!(rho >= 0.0) || !std::isfinite(rho))
        throw std::invalid_argument("density must be finite and nonnegative at every node");
      rule.weights[i] *= rho;
    }
    std::erase_if(rule.support, [&](Complex z) { return !(mu.density(z) > 0.0); });
  }
  rule.scale_weights(mu.mass_scale());
  return rule;
}

QuadratureRule build_quadrature(const ConvexBody& body, const MeasureModel& mu, int order) {
  QuadratureRule rule = build_quadrature(body, mu, order, Band{});
  if (!(rule.total_mass() > 0.0)) throw std::domain_error("null measure");
  return rule;
}

double measure_of(const ConvexBody& body, const MeasureModel& mu, const std::optional<Band>& band,
                  int order) {
  return build_quadrature(body, mu, order, band.value_or(Band{})).total_mass();
}

SlabMass slab_mass(const ConvexBody& body, const MeasureModel& mu, double delta, int order) {
  if (!(delta > 0.0)) throw std::invalid_argument("slab half-width must be positive");
  SlabMass out;
  out.total = measure_of(body, mu, std::nullopt, order);
  if (!(out.total > 0.0)) throw std::domain_error("null measure");
  out.mass = measure_of(body, mu, Band{-delta, delta}, order);
  out.theta = out.mass / out.total;
  return out;
}

StripResult select_strip(const ConvexBody& body, const MeasureModel& mu, double delta, double theta,
                         double w, int order) {
  if (!(w > 0.0)) throw std::invalid_argument("strip width must be positive");
  if (!(delta > 0.0) || !(theta > 0.0)) throw std::invalid_argument("delta and theta must be positive");
  if (w + delta >= 1.0) throw std::domain_error("strip selection inapplicable: w + delta >= 1");

  const SlabMass slab = slab_mass(body, mu, delta, order);
  if (slab.mass < theta * slab.total * (1.0 - 1e-12))
    throw std::domain_error("no (delta, theta) certificate: mu(K_delta) < theta mu(K)");

  StripResult out;
  out.w = w;
  out.total = slab.total;
  out.theta_used = theta;
  out.cells = std::max(1, static_cast<int>(std::ceil(delta / w - 1e-12)));
  const int L = out.cells;

  for (int ell = -L + 1; ell <= L; ++ell) {
    const Band cell{std::max((ell - 1) * w, -delta), std::min(ell * w, delta), ell == -L + 1, true};
    out.cell_masses.push_back(measure_of(body, mu, cell, order));
  }

  // Ties go to the smallest |ell|, then to positive ell.
  std::vector<int> preference;
  for (int ell = -L + 1; ell <= L; ++ell) preference.push_back(ell);
  std::stable_sort(preference.begin(), preference.end(), [](int a, int b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
    return a > b;
  });
  const double tie = 1e-12 * slab.total;
  int best = preference.front();
  auto mass_of = [&](int ell) { return out.cell_masses[static_cast<std::size_t>(ell + L - 1)]; };
  for (int ell : preference) {
    if (mass_of(ell) > mass_of(best) + tie) best = ell;
  }
  out.ell0 = best;

  // Both branches make Q* contain the winning cell.
  out.A = best > 0 ? std::min(best * w, delta) : w + std::max((best - 1) * w, -delta);
  out.needs_mirror = out.A <= 0.0;
  out.mass = measure_of(body, mu, Band{out.A - w, out.A}, order);
  return out;
}

}  // namespace turanlab
