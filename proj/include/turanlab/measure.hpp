#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "turanlab/geometry.hpp"

namespace turanlab {

enum class MeasureKind { boundary_arclength, area, discrete, weighted };

struct Atom {
  Complex point;
  double mass = 0.0;
};

using Density = std::function<double(Complex)>;

/// The measure mu on K. Boundary arc length on a two-vertex (segment) body is
/// the linear measure of the segment, traversed once.
class MeasureModel {
 public:
  static MeasureModel boundary_arclength();
  static MeasureModel area();
  static MeasureModel discrete(std::vector<Atom> atoms);
  /// base must be boundary_arclength or area.
  static MeasureModel weighted(MeasureKind base, Density density, std::string label = "custom");

  MeasureKind kind() const noexcept { return kind_; }
  /// The underlying continuous measure (kind() itself unless weighted).
  MeasureKind base() const noexcept { return base_; }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  const std::string& label() const noexcept { return label_; }
  double density(Complex z) const { return density_ ? density_(z) : 1.0; }
  /// Constant factor carried by push-forwards so that total mass is preserved.
  double mass_scale() const noexcept { return mass_scale_; }

  /// Push-forward under z -> kappa (z - z0).
  MeasureModel mapped(const AffineNormalization& map) const;
  MeasureModel mirrored() const { return mapped({Complex{-1.0, 0.0}, Complex{}}); }

 private:
  MeasureKind kind_ = MeasureKind::boundary_arclength;
  MeasureKind base_ = MeasureKind::boundary_arclength;
  std::vector<Atom> atoms_;
  Density density_;
  std::string label_;
  double mass_scale_ = 1.0;
};

/// Nodes and nonnegative weights realizing integration against mu.
///
/// `support` holds extra points of supp(mu) carrying no weight (polygon
/// corners, boundary samples of area measures). They only enter max-norms,
/// which are taken over the positive-weight nodes and the support points.
struct QuadratureRule {
  std::vector<Complex> nodes;
  std::vector<double> weights;
  std::vector<Complex> support;
  int order = 0;

  std::size_t size() const noexcept { return nodes.size(); }
  bool empty() const noexcept { return nodes.empty() && support.empty(); }
  /// Compensated sum of weights.
  double total_mass() const;
  /// Multiply every weight by c > 0.
  void scale_weights(double c);
};

/// Vertical band lo <= Re z <= hi. The include flags only matter for atoms.
struct Band {
  double lo = -kInf;
  double hi = kInf;
  bool include_lo = true;
  bool include_hi = true;

  bool admits(double x) const {
    return (include_lo ? x >= lo : x > lo) && (include_hi ? x <= hi : x < hi);
  }
};

struct GaussRule {
  std::vector<double> nodes;  // on [-1, 1]
  std::vector<double> weights;
};
GaussRule gauss_legendre(int points);

/// order: points per polygon edge (composite Gauss-Legendre) or on the circle
/// (trapezoid). For area measures, Gauss-Legendre points across the x-extent,
/// with max(16, order/4) points along each vertical chord.
QuadratureRule build_quadrature(const ConvexBody& body, const MeasureModel& mu, int order);
/// Rule for mu restricted to a band; may be empty, never throws "null measure".
QuadratureRule build_quadrature(const ConvexBody& body, const MeasureModel& mu, int order,
                                const Band& band);

inline constexpr int kMassOrder = 64;

double measure_of(const ConvexBody& body, const MeasureModel& mu,
                  const std::optional<Band>& band = std::nullopt, int order = kMassOrder);

struct SlabMass {
  double mass = 0.0;   // mu(K_delta)
  double total = 0.0;  // mu(K)
  double theta = 0.0;  // mass / total
};

/// mu(K_delta) for a normalized body, K_delta = {|Re z| <= delta}.
SlabMass slab_mass(const ConvexBody& body, const MeasureModel& mu, double delta,
                   int order = kMassOrder);

struct StripResult {
  double A = 0.0;           // strip is [A - w, A]
  double w = 0.0;
  double mass = 0.0;        // mu(Q*)
  double total = 0.0;       // mu(K)
  double theta_used = 0.0;
  int ell0 = 0;
  int cells = 0;            // L; cells are ell = -L+1 .. L
  std::vector<double> cell_masses;
  /// A <= 0: the strip sits left of the origin and the construction must run
  /// on the mirror image z -> -z, where the strip becomes [A' - w, A'].
  bool needs_mirror = false;

  double construction_A() const { return needs_mirror ? w - A : A; }
  double guaranteed_mass() const { return 0.5 * w * theta_used * total; }
};

/// Picks a width-w vertical strip inside K_delta's neighbourhood carrying at
/// least (w/2) theta mu(K). Requires w + delta < 1 and mu(K_delta) >= theta mu(K).
StripResult select_strip(const ConvexBody& body, const MeasureModel& mu, double delta,
                         double theta, double w, int order = kMassOrder);

}  // namespace turanlab
