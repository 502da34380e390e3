#pragma once

#include <optional>
#include <string>
#include <vector>

#include "szg/mobius.hpp"

// Closed C^2 boundary surfaces (spheres and their Moebius images) with
// quadrature rules carrying the surface measure.  Rules are exact for
// polynomial integrands up to the stated order on spheres; transported rules
// inherit spectral accuracy for smooth integrands.
namespace szg {

struct QuadratureRule {
  std::vector<Paravector> nodes;
  std::vector<double> weights;  // include the area element
  int order = 0;

  std::size_t size() const { return nodes.size(); }
  double total_mass() const {
    double s = 0;
    for (double w : weights) s += w;
    return s;
  }
};

class BoundarySurface {
 public:
  enum class Kind { Sphere, MobiusImage };

  static BoundarySurface sphere(int m, const Paravector& center, double radius);
  // Image of the sphere |y - base_center| = base_radius under V; the pole of
  // V must lie outside the closed base ball.
  static BoundarySurface mobius_image(const VahlenMatrix& V, const Paravector& base_center,
                                      double base_radius);

  Kind kind() const { return kind_; }
  int m() const { return m_; }
  const Paravector& center() const { return center_; }
  double radius() const { return radius_; }
  const VahlenMatrix& map() const { return *map_; }

  // chart: m=1 takes (u in [0,2pi)); m=2 takes (t in [-1,1], phi in [0,2pi))
  Paravector chart(double u, double v = 0.0) const;

  std::string descriptor() const;

 private:
  Kind kind_ = Kind::Sphere;
  int m_ = 0;
  Paravector center_;  // base sphere for MobiusImage
  double radius_ = 1.0;
  std::optional<VahlenMatrix> map_;
};

// Exact for polynomials of total degree <= order restricted to the sphere
// (m = 2: Gauss-Legendre in the polar cosine x uniform azimuth; m = 1:
// uniform circle rule).
QuadratureRule sphere_quadrature(int m, int order, double radius = 1.0,
                                 const Paravector& center = {});

// Pushes a rule forward through V; weights pick up conformal_scale^m.
QuadratureRule transport_quadrature(const QuadratureRule& rule, const VahlenMatrix& V);

// Rule adapted to the surface kind (transport for Moebius images).
QuadratureRule surface_quadrature(const BoundarySurface& s, int order);

// Sphere rule with polar panels geometrically refined toward the point of the
// sphere nearest to `toward`; resolves integrands peaked at scale >= 1e-4.
QuadratureRule refined_sphere_quadrature(int m, double radius, const Paravector& center,
                                         const Paravector& toward, int panels = 36,
                                         int points_per_panel = 12);

// Nearest boundary point with tangent-ball data.  Throws when the minimizer
// is not unique within tolerance (e.g. the center of a ball).
TangentBallData nearest_boundary_point(const BoundarySurface& s, const Paravector& z, double r0);

namespace legendre {
// Gauss-Legendre nodes/weights on [-1, 1].
void nodes(int n, std::vector<double>& x, std::vector<double>& w);
}  // namespace legendre

}  // namespace szg
