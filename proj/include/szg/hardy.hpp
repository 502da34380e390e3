#pragma once

#include <array>
#include <string>
#include <vector>

#include "szg/monogenic.hpp"
#include "szg/quadrature.hpp"

// Boundary inner products, Gram-Schmidt over the quadratured Hardy space, and
// the truncated Szegoe kernel K(z,w) = sum_k phi_k(z) conj(phi_k(w)) with its
// Dbar-derivatives.
//
// Two orthonormalization modes are provided.  CliffordModule runs
// Gram-Schmidt with Clifford-valued projection coefficients and produces a
// module-orthonormal basis; the kernel is the plain series above.  RealSpan
// orthonormalizes the blade-extended generator set under the real inner
// product Sc<f,g>; the resulting series overcounts the module series by
// exactly 2^m (each module element appears once per blade), so the kernel
// carries the compensating 2^{-m} factor.  The reproducing-property tests
// exercise both modes.
namespace szg {

// Per-blade structure-of-arrays evaluation table over quadrature nodes.
struct EvalTable {
  std::vector<std::vector<double>> blade;  // [2^m][n_nodes]

  static EvalTable zero(int m, std::size_t n) {
    EvalTable t;
    t.blade.assign(std::size_t(1) << m, std::vector<double>(n, 0.0));
    return t;
  }
};

// Evaluates p(node - center) over the rule.  Basis polynomials are kept in
// the variable y = z - center of the expansion point: evaluating a recentered
// high-degree polynomial through raw monomials would cancel catastrophically.
EvalTable evaluate_on_nodes(const Poly& p, const QuadratureRule& rule,
                            const Paravector& center = {});

// full Clifford-valued inner product (f,g) = sum_k w_k conj(f_k) g_k
Mv hardy_inner_product(const EvalTable& f, const EvalTable& g, const QuadratureRule& rule, int m);
Mv hardy_inner_product(const Poly& f, const Poly& g, const QuadratureRule& rule);
// real part Sc(f,g) only
double hardy_scalar_inner(const EvalTable& f, const EvalTable& g, const QuadratureRule& rule);

struct GramReport {
  double max_offdiagonal = 0;   // max |Sc<phi_j,phi_k> - delta_jk|
  double max_nonscalar = 0;     // max ||nonscalar part of <phi_j,phi_k>||
  int dropped = 0;              // generators removed as dependent
};

struct HardyBasis {
  int m = 0;
  int max_degree = 0;
  BasisMode mode = BasisMode::CliffordModule;
  BoundarySurface surface = BoundarySurface::sphere(1, Paravector(1), 1.0);
  QuadratureRule rule;         // geometric nodes on the surface
  Paravector center;           // expansion point of the polynomial variable
  double kernel_factor = 1.0;  // 1 (module) or 2^{-m} (real span)

  std::vector<Poly> phi;       // orthonormal elements, in y = z - center
  std::vector<Poly> dbar_phi;  // Dbar phi_k, differentiated exactly
  std::vector<int> degrees;    // source-generator homogeneity degree
  std::vector<EvalTable> tables;  // phi_k sampled on the rule
  std::vector<std::vector<Mv>> coeff;  // phi_k = sum_j gen_j * coeff[k][j]
  GramReport gram;

  std::size_t size() const { return phi.size(); }
  Mv eval_phi(std::size_t k, const Paravector& z) const { return szg::eval(phi[k], z - center); }
  Mv eval_dbar_phi(std::size_t k, const Paravector& z) const {
    return szg::eval(dbar_phi[k], z - center);
  }
};

// Modified Gram-Schmidt (with one reorthogonalization pass) over the
// generator set; drops elements whose post-projection norm falls below
// drop_tol relative to the largest generator norm.  Generators are read in
// the variable y = z - center.
HardyBasis orthonormalize(const BasisSet<double>& generators, const BoundarySurface& surface,
                          const QuadratureRule& rule, double drop_tol = 1e-10,
                          const Paravector& center = {});

struct KernelDerivatives {
  Mv K;        // K(z,w)
  Mv Kz;       // Dbar_z K(z,w)
  Mv Kzbar;    // conj of Kz
  Mv Kzbarz;   // sum phi'_k(z) conj(phi'_k(w))
};

class TruncatedSzegoKernel {
 public:
  explicit TruncatedSzegoKernel(HardyBasis basis) : basis_(std::move(basis)) {}

  const HardyBasis& basis() const { return basis_; }
  int m() const { return basis_.m; }
  int degree() const { return basis_.max_degree; }

  Mv eval(const Paravector& z, const Paravector& w) const;
  KernelDerivatives derivatives(const Paravector& z, const Paravector& w) const;

  // scalar diagonal K(z,z); nonscalar mass returned through *off if given
  double diagonal(const Paravector& z, double* off = nullptr) const;
  // sum_k ||Dbar phi_k(z)||^2 (real, positive)
  double diagonal_kzbarz(const Paravector& z) const;

  // quadrature of K(z,.) f(.) over the basis rule
  Mv reproduce(const FieldHandle& f, const Paravector& z) const;
  Mv reproduce(const Poly& f, const Paravector& z) const;

  struct TailBlock {
    int degree;
    double increment;  // block sum of ||phi'_k(z)||^2
  };
  std::vector<TailBlock> tail_check(const Paravector& z) const;

 private:
  HardyBasis basis_;
};

// Expansion point for the polynomial generators (sphere center, or its image
// under the surface map); recentering keeps the Gram matrix well conditioned.
Paravector expansion_center(const BoundarySurface& surface);
BasisSet<double> surface_generators(const BoundarySurface& surface, int N, BasisMode mode);

// Builds the truncated kernel on a surface: generators of degree <= N,
// quadrature of the given order (>= 2N+2 recommended), selected mode.
TruncatedSzegoKernel build_kernel(const BoundarySurface& surface, int N, int quad_order,
                                  BasisMode mode = BasisMode::CliffordModule,
                                  double drop_tol = 1e-10);

// K_G(z,zeta) - factor(V,z) K_G*(z*,zeta*) (c zeta + d)/|c zeta + d|^{m+1};
// returns the multivector residual, with the comparison scale through *scale.
Mv transformation_residual(const TruncatedSzegoKernel& K_G, const TruncatedSzegoKernel& K_Gstar,
                           const VahlenMatrix& V, const Paravector& z, const Paravector& zeta,
                           double* scale = nullptr);

// ---------------------------------------------------------------------------
// Kernel cache files: decimal text, 17 significant digits, keyed by a content
// hash of (m, N, mode, surface, quadrature).

std::uint64_t kernel_cache_hash(const BoundarySurface& surface, int N, int quad_order,
                                BasisMode mode);
void save_kernel(const std::string& path, const TruncatedSzegoKernel& K, int quad_order);
// Throws std::runtime_error on malformed files; if expect_hash is nonzero and
// the stored hash differs, throws as a cache mismatch.
TruncatedSzegoKernel load_kernel(const std::string& path, std::uint64_t expect_hash = 0);

}  // namespace szg
