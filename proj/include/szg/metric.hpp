#pragma once

#include <string>
#include <vector>

#include "szg/hardy.hpp"

// The Szego metric lambda(z)|dz| with lambda = K(z,z), its Gaussian
// curvature, polyline/graph geodesics, and the Szego-Caratheodory machinery
// (certified lower bounds from explicit Hardy-space witnesses).
namespace szg {

// acc += src * c (right multiplication by a constant, on tables)
void table_accumulate_right(EvalTable& acc, const EvalTable& src, const Mv& c, int m);

class SzegoMetric {
 public:
  explicit SzegoMetric(TruncatedSzegoKernel kernel) : kernel_(std::move(kernel)) {}

  const TruncatedSzegoKernel& kernel() const { return kernel_; }
  int m() const { return kernel_.m(); }
  const BoundarySurface& boundary() const { return kernel_.basis().surface; }

  // interior test with Euclidean clearance (image-side clearance for Moebius
  // domains, approximated through the conformal scale)
  bool contains(const Paravector& z, double clearance = 0.0) const;
  // signed distance to the boundary for ball domains; chart-scan otherwise
  double boundary_distance(const Paravector& z) const;

  // K(z,z); the nonscalar mass must stay below 1e-9 relative
  double lambda(const Paravector& z, double* nonscalar_rel = nullptr) const;

  // Laplacian of log lambda by central differences, Richardson-extrapolated
  // from steps h and h/2; |A(h) - A(h/2)| goes out through *drift.
  double delta_log_lambda(const Paravector& z, double h = 1e-3, double* drift = nullptr) const;

  // Gaussian curvature -(1/lambda^2) Delta log lambda
  double curvature(const Paravector& z, double h = 1e-3, double* drift = nullptr) const;
  // series route: Delta log lambda = Kzbarz/lambda - |Kz|^2/lambda^2 on the
  // diagonal; used as a cross-check of the FD route
  double curvature_series(const Paravector& z) const;

  struct Lemma4 {
    double quoted_form;  // K(K Kzbarz - Sc(Kz Kzbar)) from kernel derivatives
    double norm_form;    // ||Mtilde||^2 by boundary quadrature
  };
  Lemma4 lemma4_quantity(const Paravector& z) const;

 private:
  TruncatedSzegoKernel kernel_;
};

// ---------------------------------------------------------------------------
// Paths and geodesic distances.

struct PathPolyline {
  std::vector<Paravector> vertices;  // at least two; endpoints included
};

// composite Gauss quadrature of lambda along each segment
double path_length(const SzegoMetric& M, const PathPolyline& path, int gauss_points = 8);

struct GridSpec {
  int n_per_axis = 21;
  double clearance_steps = 2.0;  // boundary clearance in units of the grid step
};

struct DistanceResult {
  double value = 0;            // reported upper approximation of the infimum
  double graph_value = 0;      // pure grid-graph shortest path
  PathPolyline witness;
};

class DistanceEngine {
 public:
  DistanceEngine(const SzegoMetric& M, const GridSpec& spec);

  DistanceResult distance(const Paravector& z1, const Paravector& z2) const;

  // graph metric restricted to grid nodes (exact symmetry, triangle
  // inequality up to float summation)
  std::size_t node_count() const { return nodes_.size(); }
  const Paravector& node(std::size_t i) const { return nodes_[i]; }
  double graph_distance(std::size_t i, std::size_t j) const;
  std::size_t nearest_node(const Paravector& z) const;

 private:
  std::vector<double> dijkstra(std::size_t src, std::vector<int>* prev = nullptr) const;
  PathPolyline smooth(PathPolyline path, int passes) const;

  const SzegoMetric& metric_;
  GridSpec spec_;
  double step_ = 0;
  std::vector<Paravector> nodes_;
  std::vector<std::vector<std::pair<int, double>>> adj_;
};

// ---------------------------------------------------------------------------
// Szego-Caratheodory metric: certified lower bounds of
//   d_C(z) = sup { |Dbar f(z)| : f in H^2, f(z) = 0, ||f|| <= 1 }
// over the explicit witnesses (shifted Fueter variables, their combinations,
// Cauchy-kernel derivatives with exterior poles, kernel-derived sections).

struct CaratheodoryFamily {
  bool fueter = true;
  bool combinations = true;
  bool cauchy_derivative = true;   // K2-style candidates
  bool kernel_derived = true;      // needs a kernel
  std::vector<double> pole_scales = {1.0, 2.0, 4.0};  // w0 at P + s*delta*outward
  unsigned seed = 20240901;
  int combination_count = 2;
};

struct CaratheodoryEstimate {
  double value = 0;
  std::string witness;
  struct Candidate {
    std::string name;
    double value;
  };
  std::vector<Candidate> candidates;
};

CaratheodoryEstimate caratheodory_lower_bound(const SzegoMetric& M, const Paravector& z,
                                              const CaratheodoryFamily& family = {});

// |Dbar f(z)| / ||f||  for the boundary test function with pole w0 (vanishing
// at z); the norm uses a polar-refined rule on sphere domains.
double cauchy_candidate_value(const BoundarySurface& surface, const QuadratureRule& rule,
                              const Paravector& z, const Paravector& w0);

// ---------------------------------------------------------------------------
// Identity checks.

struct IntertwiningResult {
  double lhs = 0;        // |Dbar(weight_p * f(V z))|
  double rhs = 0;        // |weight_{p+2} (Dbar f)(V z)|
  double residual = 0;   // |lhs - rhs|
};

// f is pre-shifted so that f(V<z>) = 0.  Exact polynomial route for c = 0
// (affine maps), finite differences otherwise.
IntertwiningResult intertwining_residual(const VahlenMatrix& V, const Poly& f,
                                         const Paravector& z, int p,
                                         const FDScheme& fd = {});

struct TransformCheck {
  double lhs = 0;   // |w_m(z)| * dhat_C^image(Vz), matched family
  double rhs = 0;   // dhat_C^base(z) over the pushed-forward weighted family
  double violation = 0;  // max(0, lhs - rhs)
};

// Matched-family instance of the Caratheodory transformation inequality.  V
// maps the base domain onto the image domain; candidates are shifted Fueter
// variables on the image pushed back with the isometric weight
// conj(c z + d)/|c z + d|^{m+1}.
TransformCheck caratheodory_transform_check(const VahlenMatrix& V,
                                            const BoundarySurface& base_surface,
                                            const QuadratureRule& base_rule,
                                            const BoundarySurface& image_surface,
                                            const QuadratureRule& image_rule,
                                            const Paravector& z);

struct BlowupPoint {
  double delta;
  double value;  // dhat_C lower bound at z = (1 - delta) * direction
};

struct BlowupReport {
  std::vector<BlowupPoint> points;
  double slope = 0;  // least-squares slope of log value vs log delta
  bool monotone = false;
};

// Boundary blow-up of the Caratheodory lower bound on the unit ball along a
// unit direction, driven by the Cauchy-derivative witness with |z-w0| = 2 delta.
BlowupReport blowup_scan(int m, const Paravector& direction, const std::vector<double>& deltas);

struct MetricComparison {
  double lambda;
  double lambda_star;          // sqrt(Delta log K^2) — the proof-side quantity
  double lambda_star_nosqrt;   // Delta log K^2 as printed in the statement
  double caratheodory;         // lower bound
  bool lambda_dominates;       // lambda >= dhat - tol
  bool star_dominates;         // lambda_star >= dhat - tol
};

MetricComparison metric_comparison(const SzegoMetric& M, const Paravector& z, double tol = 1e-6,
                                   const CaratheodoryFamily& family = {});

// relative residual of K_{VG}(Vz,Vz) = |cz+d|^{2m} K_G(z,z)
double pseudo_invariance_residual(const VahlenMatrix& V, const Paravector& z,
                                  const TruncatedSzegoKernel& K_G,
                                  const TruncatedSzegoKernel& K_VG);

// ---------------------------------------------------------------------------
// Canonical cross-domain test fixtures: a bounded Moebius image of the unit
// ball with an honest Vahlen representation (pole at 4 e_1, image ball of
// radius 1/2).
VahlenMatrix helper_vahlen(int m);
BoundarySurface helper_image_surface(int m);

}  // namespace szg
