#include "szg/mobius.hpp"

#include <cmath>
#include <sstream>

namespace szg {

namespace {

Mv scalar_mv(int m, double v) { return Mv::scalar(m, v); }

bool nearly_zero(const Mv& x, double tol) { return norm(x) <= tol; }

}  // namespace

VahlenMatrix VahlenMatrix::identity(int m) {
  VahlenMatrix V{scalar_mv(m, 1), Mv(m), Mv(m), scalar_mv(m, 1)};
  V.factors[0] = {Paravector(m, {1.0})};
  V.factors[3] = {Paravector(m, {1.0})};
  return V;
}

VahlenMatrix VahlenMatrix::translation(const Paravector& t) {
  int m = t.m();
  VahlenMatrix V{scalar_mv(m, 1), t.embed(), Mv(m), scalar_mv(m, 1)};
  V.factors[0] = {Paravector(m, {1.0})};
  V.factors[1] = {t};
  V.factors[3] = {Paravector(m, {1.0})};
  return V;
}

VahlenMatrix VahlenMatrix::scaling(int m, double s) {
  if (!(s > 0)) throw std::invalid_argument("scaling: s must be positive");
  double r = std::sqrt(s);
  VahlenMatrix V{scalar_mv(m, r), Mv(m), Mv(m), scalar_mv(m, 1.0 / r)};
  Paravector pa(m);
  pa[0] = r;
  Paravector pd(m);
  pd[0] = 1.0 / r;
  V.factors[0] = {pa};
  V.factors[3] = {pd};
  return V;
}

VahlenMatrix VahlenMatrix::ball_automorphism(const Paravector& a) {
  int m = a.m();
  double n2 = a.norm_sq();
  if (!(n2 < 1.0)) throw std::invalid_argument("ball_automorphism: |a| must be < 1");
  double s = 1.0 / std::sqrt(1.0 - n2);
  VahlenMatrix V{scalar_mv(m, s), (-a).embed() * s, (-a.conjugate()).embed() * s,
                 scalar_mv(m, s)};
  Paravector ps(m);
  ps[0] = s;
  V.factors[0] = {ps};
  V.factors[3] = {ps};
  if (a.norm() > 0) {
    Paravector mb = -a * s;
    V.factors[1] = {mb};
    Paravector mc = -a.conjugate() * s;
    V.factors[2] = {mc};
  }
  return V;
}

Mv group_inverse(const Mv& x) {
  Mv q = x * conj(x);
  double sc = q[0];
  Mv rest = vector_rest(q);
  if (std::abs(sc) > 1e-14 && norm(rest) <= 1e-10 * std::abs(sc)) {
    return conj(x) * (1.0 / sc);
  }
  return clifford_inverse(x);
}

VahlenDiagnostics validate(const VahlenMatrix& V, double tol) {
  VahlenDiagnostics d{};
  const int m = V.m();
  const Mv* entries[4] = {&V.a, &V.b, &V.c, &V.d};

  for (int k = 0; k < 4; ++k) {
    const Mv& e = *entries[k];
    if (e.is_zero() || norm(e) <= tol) {
      d.entry_products[k] = CheckStatus::Pass;  // zero entry is admissible
      d.entry_residuals[k] = 0.0;
      continue;
    }
    if (!V.factors[k].empty()) {
      Mv prod = scalar_mv(m, 1);
      for (const Paravector& p : V.factors[k]) prod = prod * p.embed();
      double res = norm(prod - e) / std::max(norm(e), 1e-300);
      d.entry_residuals[k] = res;
      d.entry_products[k] = res <= tol ? CheckStatus::Pass : CheckStatus::Fail;
      continue;
    }
    // A single paravector is trivially a product of paravectors.
    double off = off_paravector_mass(e) / std::max(norm(e), 1e-300);
    if (off <= tol) {
      d.entry_products[k] = CheckStatus::Pass;
      d.entry_residuals[k] = off;
    } else {
      d.entry_products[k] = CheckStatus::NotCheckable;
      d.entry_residuals[k] = off;
    }
  }

  Mv pseudo = V.a * reverse(V.d) - V.b * reverse(V.c);
  d.pseudo_det_residual = norm(pseudo - scalar_mv(m, 1));
  d.pseudo_det_ok = d.pseudo_det_residual <= tol;

  d.paravector_ratio_residual = 0.0;
  d.paravector_ratios_ok = true;
  auto ratio_off = [&](const Mv& num, const Mv& den, bool den_left) {
    Mv inv = group_inverse(den);
    Mv r = den_left ? inv * num : num * inv;
    return off_paravector_mass(r) / std::max(norm(r), 1e-300);
  };
  if (norm(V.c) > tol) {
    double r1 = ratio_off(V.a, V.c, false);  // a c^{-1}
    double r2 = ratio_off(V.d, V.c, true);   // c^{-1} d
    d.paravector_ratio_residual = std::max(r1, r2);
  } else if (norm(V.b) > tol) {
    d.paravector_ratio_residual = ratio_off(V.b, V.d, false);  // b d^{-1}
  }
  d.paravector_ratios_ok = d.paravector_ratio_residual <= tol;
  return d;
}

std::string VahlenDiagnostics::summary() const {
  std::ostringstream os;
  const char* names = "abcd";
  for (int k = 0; k < 4; ++k) {
    os << names[k] << ":";
    switch (entry_products[k]) {
      case CheckStatus::Pass: os << "pass"; break;
      case CheckStatus::Fail: os << "FAIL"; break;
      case CheckStatus::NotCheckable: os << "n/a"; break;
    }
    os << " ";
  }
  os << "pseudo-det:" << (pseudo_det_ok ? "pass" : "FAIL") << " (" << pseudo_det_residual << ") ";
  os << "ratios:" << (paravector_ratios_ok ? "pass" : "FAIL") << " (" << paravector_ratio_residual
     << ")";
  return os.str();
}

Paravector apply(const VahlenMatrix& V, const Paravector& z, double pole_tol) {
  Mv ze = z.embed();
  Mv den = V.c * ze + V.d;
  double dn = norm(den);
  if (dn <= pole_tol) throw std::domain_error("apply: z at the pole of the Moebius map");
  Mv num = V.a * ze + V.b;
  Mv w = num * group_inverse(den);
  return to_paravector(w, 1e-9);
}

VahlenMatrix compose(const VahlenMatrix& V1, const VahlenMatrix& V2) {
  VahlenMatrix R{V1.a * V2.a + V1.b * V2.c, V1.a * V2.b + V1.b * V2.d,
                 V1.c * V2.a + V1.d * V2.c, V1.c * V2.b + V1.d * V2.d};
  return R;  // entry factorizations do not survive sums; left unsupplied
}

VahlenMatrix inverse(const VahlenMatrix& V) {
  return VahlenMatrix{reverse(V.d), -reverse(V.b), -reverse(V.c), reverse(V.a)};
}

double conformal_scale(const VahlenMatrix& V, const Paravector& z) {
  Mv den = V.c * z.embed() + V.d;
  double n2 = norm_sq(den);
  if (n2 <= 0) throw std::domain_error("conformal_scale: pole");
  return 1.0 / n2;
}

Mv automorphy_factor(const VahlenMatrix& V, const Paravector& z, int p) {
  Mv den = V.c * z.embed() + V.d;
  double dn = norm(den);
  if (dn <= 0) throw std::domain_error("automorphy_factor: pole");
  return conj(den) * (1.0 / std::pow(dn, p));
}

Paravector InversionPair::apply_i(const Paravector& z) const {
  Paravector y = z - C;
  double n2 = y.norm_sq();
  if (n2 <= 0) throw std::domain_error("inversion: z at the center pole");
  return y.conjugate() * (r0 * r0 / n2) + C;
}

Paravector InversionPair::apply_j(const Paravector& z) const { return (z - C) * (1.0 / r0); }

VahlenMatrix InversionPair::j_vahlen() const {
  int mm = C.m();
  double r = std::sqrt(r0);
  VahlenMatrix V{Mv::scalar(mm, 1.0 / r), (-C).embed() * (1.0 / r), Mv(mm), Mv::scalar(mm, r)};
  Paravector pa(mm);
  pa[0] = 1.0 / r;
  Paravector pd(mm);
  pd[0] = r;
  V.factors[0] = {pa};
  V.factors[1] = {-C * (1.0 / r)};
  V.factors[3] = {pd};
  return V;
}

Paravector InversionPair::apply_composed(const Paravector& z) const {
  Paravector y = z - C;
  double n2 = y.norm_sq();
  if (n2 <= 0) throw std::domain_error("inversion: z at the center pole");
  return y.conjugate() * (r0 / n2);
}

Mv InversionPair::automorphy_weight(const Paravector& z, int p) const {
  Paravector y = z - C;
  double n = y.norm();
  if (n <= 0) throw std::domain_error("automorphy_weight: pole");
  return y.conjugate().embed() * (r0 / std::pow(n, p));
}

double InversionPair::automorphy_weight_modulus(const Paravector& z, int p) const {
  Paravector y = z - C;
  double n = y.norm();
  return r0 / std::pow(n, p - 1);
}

InversionPair inversion_maps(const Paravector& P, const Paravector& C, double r0) {
  if (!(r0 > 0)) throw std::invalid_argument("inversion_maps: r0 must be positive");
  double gap = std::abs((P - C).norm() - r0);
  if (gap > 1e-6 * std::max(1.0, r0))
    throw std::invalid_argument("inversion_maps: |P - C| != r0, not a tangent configuration");
  return InversionPair{C, r0};
}

}  // namespace szg
