#include "turanlab/geometry.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace turanlab {

namespace {

double dot(Complex a, Complex b) { return a.real() * b.real() + a.imag() * b.imag(); }

Complex closest_on_segment(Complex p, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return a;
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return a + t * ab;
}

double signed_area2(std::span<const Complex> v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += cross(v[i], v[(i + 1) % v.size()]);
  return s;
}

constexpr std::size_t kExhaustiveDiameterLimit = 64;
constexpr double kSnapTolerance = 1e-10;

}  // namespace

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

ConvexBody ConvexBody::polygon(std::vector<Complex> v) {
  for (Complex z : v) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::invalid_argument("polygon vertices must be finite");
  }
  if (v.empty()) throw std::invalid_argument("polygon needs at least two vertices");

  double scale = 0.0;
  for (Complex z : v) scale = std::max(scale, std::abs(z - v.front()));
  if (scale == 0.0) throw std::invalid_argument("degenerate polygon: single point");
  const double tol = 1e-12 * scale;

  std::vector<Complex> u;
  for (Complex z : v) {
    if (u.empty() || std::abs(z - u.back()) > tol) u.push_back(z);
  }
  while (u.size() > 1 && std::abs(u.front() - u.back()) <= tol) u.pop_back();

  // Collinear input collapses to the segment spanned by its extremes.
  Complex far = u.front();
  for (Complex z : u) {
    if (std::abs(z - u.front()) > std::abs(far - u.front())) far = z;
  }
  const Complex dir = (far - u.front()) / std::abs(far - u.front());
  double off_line = 0.0;
  for (Complex z : u) off_line = std::max(off_line, std::abs(cross(dir, z - u.front())));
  if (off_line <= tol) {
    double tmin = 0.0, tmax = 0.0;
    for (Complex z : u) {
      const double t = dot(z - u.front(), dir);
      tmin = std::min(tmin, t);
      tmax = std::max(tmax, t);
    }
    ConvexBody seg;
    seg.vertices_ = {u.front() + tmin * dir, u.front() + tmax * dir};
    return seg;
  }

  if (signed_area2(u) < 0.0) std::reverse(u.begin(), u.end());

  for (bool changed = true; changed && u.size() > 2;) {
    changed = false;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const Complex prev = u[(i + u.size() - 1) % u.size()];
      const Complex next = u[(i + 1) % u.size()];
      const Complex e1 = u[i] - prev;
      const Complex e2 = next - u[i];
      if (std::abs(cross(e1, e2)) <= 1e-12 * std::abs(e1) * std::abs(e2)) {
        if (dot(e1, e2) < 0.0) throw std::invalid_argument("polygon is not convex (spike)");
        u.erase(u.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }

  double turning = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const Complex e1 = u[i] - u[(i + u.size() - 1) % u.size()];
    const Complex e2 = u[(i + 1) % u.size()] - u[i];
    const double c = cross(e1, e2);
    if (c <= 0.0) throw std::invalid_argument("polygon is not convex");
    turning += std::atan2(c, dot(e1, e2));
  }
  if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-6)
    throw std::invalid_argument("polygon is self-intersecting");

  ConvexBody body;
  body.vertices_ = std::move(u);
  return body;
}

ConvexBody ConvexBody::disk(Complex center, double radius) {
  if (!std::isfinite(center.real()) || !std::isfinite(center.imag()) || !std::isfinite(radius))
    throw std::invalid_argument("disk parameters must be finite");
  if (!(radius > 0.0)) throw std::invalid_argument("disk radius must be positive");
  ConvexBody body;
  body.kind_ = BodyKind::disk;
  body.center_ = center;
  body.radius_ = radius;
  return body;
}

bool ConvexBody::contains(Complex z, double tol) const {
  if (is_disk()) return std::abs(z - center_) <= radius_ + tol;
  if (is_segment()) return std::abs(z - closest_on_segment(z, vertices_[0], vertices_[1])) <= tol;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const Complex e = vertices_[(i + 1) % vertices_.size()] - vertices_[i];
    if (cross(e, z - vertices_[i]) < -tol * std::abs(e)) return false;
  }
  return true;
}

Complex ConvexBody::project(Complex z) const {
  if (is_disk()) {
    const double r = std::abs(z - center_);
    if (r <= radius_) return z;
    return center_ + (z - center_) * (radius_ / r);
  }
  if (contains(z, 0.0)) return z;
  Complex best = vertices_.front();
  double best_dist = kInf;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const Complex c = closest_on_segment(z, vertices_[i], vertices_[(i + 1) % vertices_.size()]);
    const double dist = std::abs(z - c);
    if (dist < best_dist) {
      best_dist = dist;
      best = c;
    }
  }
  return best;
}

ConvexBody ConvexBody::mapped(Complex kappa, Complex z0) const {
  if (kappa == Complex{}) throw std::invalid_argument("affine map needs nonzero kappa");
  ConvexBody out = *this;
  if (is_disk()) {
    out.center_ = kappa * (center_ - z0);
    out.radius_ = radius_ * std::abs(kappa);
  } else {
    for (Complex& z : out.vertices_) z = kappa * (z - z0);
  }
  return out;
}

std::vector<Complex> ConvexBody::to_polygon(std::size_t arc_resolution) const {
  if (!is_disk()) return vertices_;
  if (arc_resolution < 3) throw std::invalid_argument("arc resolution must be at least 3");
  std::vector<Complex> out(arc_resolution);
  for (std::size_t j = 0; j < arc_resolution; ++j) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(arc_resolution);
    out[j] = center_ + radius_ * Complex{std::cos(t), std::sin(t)};
  }
  return out;
}

double ConvexBody::area() const {
  if (is_disk()) return std::numbers::pi * radius_ * radius_;
  if (is_segment()) return 0.0;
  return 0.5 * signed_area2(vertices_);
}

double ConvexBody::perimeter() const {
  if (is_disk()) return 2.0 * std::numbers::pi * radius_;
  double s = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    s += std::abs(vertices_[(i + 1) % vertices_.size()] - vertices_[i]);
  return s;
}

ConvexBody::Box ConvexBody::bounding_box() const {
  if (is_disk()) {
    return {center_.real() - radius_, center_.real() + radius_, center_.imag() - radius_,
            center_.imag() + radius_};
  }
  Box box{kInf, -kInf, kInf, -kInf};
  for (Complex z : vertices_) {
    box.xmin = std::min(box.xmin, z.real());
    box.xmax = std::max(box.xmax, z.real());
    box.ymin = std::min(box.ymin, z.imag());
    box.ymax = std::max(box.ymax, z.imag());
  }
  return box;
}

DiameterPair diameter_exhaustive(std::span<const Complex> points) {
  DiameterPair best{points.front(), points.front(), 0.0};
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const double d = std::abs(points[j] - points[i]);
      if (d > best.d) best = {points[i], points[j], d};
    }
  }
  return best;
}

DiameterPair diameter_calipers(std::span<const Complex> v) {
  const std::size_t n = v.size();
  if (n < 3) return diameter_exhaustive(v);
  DiameterPair best{v[0], v[0], 0.0};
  auto consider = [&](std::size_t i, std::size_t j) {
    const double d = std::abs(v[j] - v[i]);
    if (d > best.d) best = {v[i], v[j], d};
  };
  std::size_t j = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ni = (i + 1) % n;
    const Complex edge = v[ni] - v[i];
    while (cross(edge, v[(j + 1) % n] - v[i]) > cross(edge, v[j] - v[i])) j = (j + 1) % n;
    consider(i, j);
    consider(ni, j);
  }
  return best;
}

DiameterPair diameter(const ConvexBody& body) {
  if (body.is_disk()) {
    const Complex r{body.radius(), 0.0};
    return {body.center() - r, body.center() + r, 2.0 * body.radius()};
  }
  const auto& v = body.vertices();
  return v.size() <= kExhaustiveDiameterLimit ? diameter_exhaustive(v) : diameter_calipers(v);
}

double width(const ConvexBody& body) {
  if (body.is_disk()) return 2.0 * body.radius();
  if (body.is_segment()) return 0.0;
  const auto& v = body.vertices();
  double best = kInf;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Complex e = v[(i + 1) % v.size()] - v[i];
    const double len = std::abs(e);
    double far = 0.0;
    for (Complex z : v) far = std::max(far, cross(e, z - v[i]) / len);
    best = std::min(best, far);
  }
  return best;
}

NormalizedBody normalize(const ConvexBody& body, const DiameterPair& pair) {
  if (!(pair.d > 0.0) || pair.a == pair.b) throw std::invalid_argument("zero diameter");
  AffineNormalization map{2.0 / (pair.b - pair.a), 0.5 * (pair.a + pair.b)};
  ConvexBody image = body.mapped(map.kappa, map.z0);

  // Rounding leaves the images of a, b within ulps of -1, +1; pin them.
  if (image.is_disk()) {
    Complex c = image.center();
    double r = image.radius();
    if (std::abs(c) <= kSnapTolerance) c = 0.0;
    if (std::abs(r - 1.0) <= kSnapTolerance) r = 1.0;
    image = ConvexBody::disk(c, r);
  } else {
    std::vector<Complex> v = image.vertices();
    for (Complex& z : v) {
      if (std::abs(z - 1.0) <= kSnapTolerance) z = 1.0;
      if (std::abs(z + 1.0) <= kSnapTolerance) z = -1.0;
    }
    image = ConvexBody::polygon(std::move(v));
  }
  return {std::move(image), map};
}

std::vector<Complex> clip_to_band(std::span<const Complex> polygon, double lo, double hi) {
  auto clip = [](const std::vector<Complex>& in, double level, bool keep_above) {
    std::vector<Complex> out;
    if (in.empty()) return out;
    auto inside = [&](Complex z) { return keep_above ? z.real() >= level : z.real() <= level; };
    auto crossing = [&](Complex p, Complex q) {
      const double t = (level - p.real()) / (q.real() - p.real());
      return Complex{level, p.imag() + t * (q.imag() - p.imag())};
    };
    for (std::size_t i = 0; i < in.size(); ++i) {
      const Complex p = in[i];
      const Complex q = in[(i + 1) % in.size()];
      if (inside(q)) {
        if (!inside(p)) out.push_back(crossing(p, q));
        out.push_back(q);
      } else if (inside(p)) {
        out.push_back(crossing(p, q));
      }
    }
    return out;
  };
  std::vector<Complex> v(polygon.begin(), polygon.end());
  return clip(clip(v, lo, true), hi, false);
}

ConvexBody slab(const ConvexBody& body, double delta, std::size_t arc_resolution) {
  if (!(delta > 0.0)) throw std::invalid_argument("slab half-width must be positive");
  const ConvexBody::Box box = body.bounding_box();
  if (box.xmin >= -delta && box.xmax <= delta) return body;
  const auto clipped = clip_to_band(body.to_polygon(arc_resolution), -delta, delta);
  if (clipped.empty()) throw std::logic_error("slab of a normalized body cannot be empty");
  return ConvexBody::polygon(clipped);
}

bool bounding_rectangle_check(const ConvexBody& body) {
  constexpr double tol = 1e-9;
  const double w = width(body);
  std::vector<Complex> pts = body.vertices();
  if (body.is_disk()) {
    const Complex c = body.center();
    const double r = body.radius();
    pts = {c + r, c - r, c + Complex{0.0, r}, c - Complex{0.0, r}};
  }
  return std::all_of(pts.begin(), pts.end(), [&](Complex z) {
    return std::abs(z.real()) <= 1.0 + tol && std::abs(z.imag()) <= w + tol;
  });
}

std::vector<Complex> convex_hull(std::vector<Complex> pts) {
  std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Complex> hull(2 * pts.size());
  std::size_t k = 0;
  for (Complex p : pts) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace turanlab
