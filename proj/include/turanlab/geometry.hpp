#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "turanlab/types.hpp"

namespace turanlab {

enum class BodyKind { polygon, disk };

inline constexpr std::size_t kDefaultArcResolution = 512;

/// A compact convex subset of the plane.
///
/// Polygons are stored counterclockwise with consecutive duplicates and
/// collinear vertices merged, so every stored corner turns strictly left.
/// A polygon that collapses onto a line is kept as a two-vertex segment
/// (width 0). Disks stay analytic; clipping code converts them to an
/// inscribed N-gon through to_polygon().
class ConvexBody {
 public:
  /// Validates convex position; accepts either orientation.
  /// Throws std::invalid_argument for non-finite, non-convex or single-point input.
  static ConvexBody polygon(std::vector<Complex> vertices);
  static ConvexBody disk(Complex center, double radius);

  BodyKind kind() const noexcept { return kind_; }
  bool is_disk() const noexcept { return kind_ == BodyKind::disk; }
  bool is_segment() const noexcept { return kind_ == BodyKind::polygon && vertices_.size() == 2; }

  const std::vector<Complex>& vertices() const noexcept { return vertices_; }
  Complex center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }

  bool contains(Complex z, double tol = 1e-9) const;
  /// Euclidean projection onto the body.
  Complex project(Complex z) const;

  /// Image under z -> kappa (z - z0). Similarity maps keep orientation.
  ConvexBody mapped(Complex kappa, Complex z0) const;

  std::vector<Complex> to_polygon(std::size_t arc_resolution = kDefaultArcResolution) const;

  double area() const;
  double perimeter() const;

  struct Box {
    double xmin, xmax, ymin, ymax;
  };
  Box bounding_box() const;

 private:
  ConvexBody() = default;

  BodyKind kind_ = BodyKind::polygon;
  std::vector<Complex> vertices_;
  Complex center_{};
  double radius_ = 0.0;
};

struct DiameterPair {
  Complex a;
  Complex b;
  double d = 0.0;
};

/// phi(z) = kappa (z - z0), psi = phi^{-1}.
struct AffineNormalization {
  Complex kappa{1.0, 0.0};
  Complex z0{};

  Complex forward(Complex z) const { return kappa * (z - z0); }
  Complex inverse(Complex t) const { return t / kappa + z0; }
  double scale() const { return std::abs(kappa); }
};

struct NormalizedBody {
  ConvexBody body;
  AffineNormalization map;
};

DiameterPair diameter(const ConvexBody& body);
DiameterPair diameter_exhaustive(std::span<const Complex> points);
/// Requires a strictly convex counterclockwise vertex list.
DiameterPair diameter_calipers(std::span<const Complex> ccw_vertices);

double width(const ConvexBody& body);

/// Maps the pair to -1, +1; the image has diameter 2.
NormalizedBody normalize(const ConvexBody& body, const DiameterPair& pair);
inline NormalizedBody normalize(const ConvexBody& body) { return normalize(body, diameter(body)); }

/// K intersected with |Re z| <= delta, for a normalized body.
ConvexBody slab(const ConvexBody& body, double delta,
                std::size_t arc_resolution = kDefaultArcResolution);

/// True iff the body lies in [-1,1] x [-w,w] (w its own width), tolerance 1e-9.
bool bounding_rectangle_check(const ConvexBody& body);

/// Sutherland-Hodgman clip of a closed polygon against lo <= Re z <= hi.
std::vector<Complex> clip_to_band(std::span<const Complex> polygon, double lo, double hi);

/// Andrew's monotone chain; counterclockwise, collinear points dropped.
std::vector<Complex> convex_hull(std::vector<Complex> points);

double cross(Complex a, Complex b);

}  // namespace turanlab
