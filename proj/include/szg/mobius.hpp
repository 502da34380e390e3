#pragma once

#include <optional>
#include <string>
#include <vector>

#include "szg/algebra.hpp"

// Moebius transformations of R^{m+1} in Vahlen form T(z) = (az+b)(cz+d)^{-1},
// plus the sphere-inversion pair used by the completeness construction.  The
// inversion pair composes to z -> r0 (z - C)^{-1}, which is anti-conformal
// for even m and therefore carries no pseudo-determinant-one Vahlen matrix;
// it is kept as an explicit map type instead.
namespace szg {

struct VahlenMatrix {
  Mv a, b, c, d;
  // Paravector factorizations of the entries when known (entry constraint
  // checks need them); empty lists mean "not supplied".
  std::array<std::vector<Paravector>, 4> factors{};

  int m() const { return a.m(); }

  static VahlenMatrix identity(int m);
  static VahlenMatrix translation(const Paravector& t);
  static VahlenMatrix scaling(int m, double s);  // z -> s z, s > 0
  // unit-ball automorphism z -> (z - a)(1 - conj(a) z)^{-1}, |a| < 1
  static VahlenMatrix ball_automorphism(const Paravector& a);
};

enum class CheckStatus { Pass, Fail, NotCheckable };

struct VahlenDiagnostics {
  CheckStatus entry_products[4];  // constraint (i) per entry a,b,c,d
  double entry_residuals[4];
  bool pseudo_det_ok;       // constraint (ii)
  double pseudo_det_residual;
  bool paravector_ratios_ok;  // constraint (iii)
  double paravector_ratio_residual;

  bool all_ok() const {
    if (!pseudo_det_ok || !paravector_ratios_ok) return false;
    for (auto s : entry_products)
      if (s == CheckStatus::Fail) return false;
    return true;
  }
  std::string summary() const;
};

VahlenDiagnostics validate(const VahlenMatrix& V, double tol = 1e-9);

// T(z); throws when |cz+d| is below tol (pole) or when the image leaves the
// paravector subspace beyond the relative tolerance.
Paravector apply(const VahlenMatrix& V, const Paravector& z, double pole_tol = 1e-12);

VahlenMatrix compose(const VahlenMatrix& V1, const VahlenMatrix& V2);
VahlenMatrix inverse(const VahlenMatrix& V);

// |dT| = |dz| / |cz+d|^2
double conformal_scale(const VahlenMatrix& V, const Paravector& z);

// conj(cz+d) / |cz+d|^p ; p = m+1 gives the kernel weight.
Mv automorphy_factor(const VahlenMatrix& V, const Paravector& z, int p);

// Multiplicative inverse of a Clifford-group element (conj(x)/|x|^2 when
// x conj(x) is scalar, general solve otherwise).
Mv group_inverse(const Mv& x);

// ---------------------------------------------------------------------------
// Completeness-construction maps around a tangent ball.

struct TangentBallData {
  Paravector P;   // boundary point
  Paravector C;   // external tangent-ball center
  double r0 = 0;  // tangent-ball radius
  double delta = 0;  // Euclidean distance of the query point to the boundary
};

struct InversionPair {
  Paravector C;
  double r0 = 0;

  int m() const { return C.m(); }

  // i_P: z -> r0^2 (z - C)^{-1} + C  (sphere inversion at the tangent ball)
  Paravector apply_i(const Paravector& z) const;
  // j_P: z -> (z - C)/r0, also available in Vahlen form
  Paravector apply_j(const Paravector& z) const;
  VahlenMatrix j_vahlen() const;
  // (j o i)(z) = r0 (z - C)^{-1}
  Paravector apply_composed(const Paravector& z) const;

  // weight r0 conj(z - C)/|z - C|^p attached to the composed map; the default
  // exponent p = m+1 has modulus r0/(delta + r0)^m at |z - C| = delta + r0.
  Mv automorphy_weight(const Paravector& z, int p) const;
  double automorphy_weight_modulus(const Paravector& z, int p) const;
};

InversionPair inversion_maps(const Paravector& P, const Paravector& C, double r0);

}  // namespace szg
