#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "szg/polynomial.hpp"

// Generalized Cauchy-Riemann operator D = d/dz_0 + sum_i e_i d/dz_i, its
// conjugate Dbar = d/dz_0 - sum_i e_i d/dz_i, right-sided variants (the e_i
// multiplies from the right), the Laplacian, and the four generalized product
// rules.  Exact on polynomials; central finite differences on black-box
// fields.
namespace szg {

enum class Side { Left, Right };

template <typename R>
MultivectorPolynomial<R> dirac_D(const MultivectorPolynomial<R>& f, Side side = Side::Left) {
  const int m = f.m();
  MultivectorPolynomial<R> r = f.partial(0);
  for (int i = 1; i <= m; ++i) {
    Multivector<R> ei = Multivector<R>::basis(m, i);
    MultivectorPolynomial<R> di = f.partial(i);
    r += (side == Side::Left) ? di.left_mul(ei) : di.right_mul(ei);
  }
  return r;
}

template <typename R>
MultivectorPolynomial<R> dirac_Dbar(const MultivectorPolynomial<R>& f, Side side = Side::Left) {
  const int m = f.m();
  MultivectorPolynomial<R> r = f.partial(0);
  for (int i = 1; i <= m; ++i) {
    Multivector<R> ei = Multivector<R>::basis(m, i);
    MultivectorPolynomial<R> di = f.partial(i);
    r -= (side == Side::Left) ? di.left_mul(ei) : di.right_mul(ei);
  }
  return r;
}

template <typename R>
MultivectorPolynomial<R> laplacian(const MultivectorPolynomial<R>& f) {
  MultivectorPolynomial<R> r(f.m());
  for (int i = 0; i <= f.m(); ++i) r += f.partial(i).partial(i);
  return r;
}

// Subset family over which the product-rule correction sums run: exactly the
// blades with e_i e_A != conj(e_A) e_i, i.e.
//   i not in A with |A| = 2,3 (mod 4),  or  i in A with |A| = 0,1 (mod 4).
inline bool mod4_selected(int i, blade_t a) {
  bool in = (a >> (i - 1)) & 1u;
  int g = blade_grade(a) & 3;
  return in ? (g == 0 || g == 1) : (g == 2 || g == 3);
}

inline std::vector<blade_t> mod4_selector(int i, int m) {
  std::vector<blade_t> fam;
  for (blade_t a = 0; a < (blade_t(1) << m); ++a)
    if (mod4_selected(i, a)) fam.push_back(a);
  return fam;
}

enum class ProductRule { DLeft, DRight, DbarLeft, DbarRight };

// Right-hand side of the generalized product rule.  The conjugation-defect
// term (f - conj f) replaces 2 R(f); the two agree for m <= 2 where every
// non-scalar blade flips under conjugation.
template <typename R>
MultivectorPolynomial<R> product_rule_rhs(ProductRule rule, const MultivectorPolynomial<R>& f,
                                          const MultivectorPolynomial<R>& g) {
  const int m = f.m();
  using P = MultivectorPolynomial<R>;
  const bool left = (rule == ProductRule::DLeft || rule == ProductRule::DbarLeft);
  const bool bar = (rule == ProductRule::DbarLeft || rule == ProductRule::DbarRight);
  const R corr_sign = bar ? R(-1) : R(1);

  P rhs(m);
  if (left) {
    // D(fg) = (Df)g + conj(f)(Dg) + (f - conj f)(d0 g) +- 2 sum f_A e_i e_A (di g)
    P df = bar ? dirac_Dbar(f) : dirac_D(f);
    P dg = bar ? dirac_Dbar(g) : dirac_D(g);
    rhs += df * g;
    rhs += f.conjugated() * dg;
    rhs += (f - f.conjugated()) * g.partial(0);
    for (int i = 1; i <= m; ++i) {
      P gi = g.partial(i);
      for (blade_t a = 0; a < (blade_t(1) << m); ++a) {
        if (!mod4_selected(i, a)) continue;
        P fa = f.blade_component(a);
        if (fa.is_zero()) continue;
        Multivector<R> eiea = Multivector<R>::basis(m, i) * Multivector<R>(m, a, R(1));
        rhs += (fa * gi.left_mul(eiea)).scaled(R(2) * corr_sign);
      }
    }
  } else {
    // (fg)D = (fD)conj(g) + f(gD) + (d0 f)(g - conj g) +- 2 sum g_A (di f) e_A e_i
    P df = bar ? dirac_Dbar(f, Side::Right) : dirac_D(f, Side::Right);
    P dg = bar ? dirac_Dbar(g, Side::Right) : dirac_D(g, Side::Right);
    rhs += df * g.conjugated();
    rhs += f * dg;
    rhs += f.partial(0) * (g - g.conjugated());
    for (int i = 1; i <= m; ++i) {
      P fi = f.partial(i);
      for (blade_t a = 0; a < (blade_t(1) << m); ++a) {
        if (!mod4_selected(i, a)) continue;
        P ga = g.blade_component(a);
        if (ga.is_zero()) continue;
        Multivector<R> eaei = Multivector<R>(m, a, R(1)) * Multivector<R>::basis(m, i);
        rhs += (ga * fi.right_mul(eaei)).scaled(R(2) * corr_sign);
      }
    }
  }
  return rhs;
}

// LHS - RHS of the selected identity; identically zero over the exact backend.
template <typename R>
MultivectorPolynomial<R> product_rule_residual(ProductRule rule, const MultivectorPolynomial<R>& f,
                                               const MultivectorPolynomial<R>& g) {
  const bool left = (rule == ProductRule::DLeft || rule == ProductRule::DbarLeft);
  const bool bar = (rule == ProductRule::DbarLeft || rule == ProductRule::DbarRight);
  MultivectorPolynomial<R> fg = f * g;
  MultivectorPolynomial<R> lhs =
      bar ? dirac_Dbar(fg, left ? Side::Left : Side::Right) : dirac_D(fg, left ? Side::Left : Side::Right);
  return lhs - product_rule_rhs(rule, f, g);
}

// ---------------------------------------------------------------------------
// Finite differences on black-box fields.

struct FDScheme {
  double h = 1e-4;   // first derivatives
  double h2 = 1e-3;  // second derivatives via nested first differences

  void validate() const {
    if (!(h >= 1e-6 && h <= 1e-2) || !(h2 >= 1e-6 && h2 <= 1e-2))
      throw std::invalid_argument("FDScheme: step outside [1e-6, 1e-2]");
  }
};

struct FieldHandle {
  int m = 0;
  std::function<Mv(const Paravector&)> evaluator;
  std::function<bool(const Paravector&)> guard;  // optional domain guard

  Mv operator()(const Paravector& z) const {
    if (guard && !guard(z)) throw std::domain_error("FieldHandle: evaluation outside guard");
    return evaluator(z);
  }
};

inline FieldHandle field_of(const Poly& p) {
  return FieldHandle{p.m(), [p](const Paravector& z) { return eval(p, z); }, nullptr};
}

Mv fd_partial(const FieldHandle& f, const Paravector& z, int var, double h);
Mv fd_dirac_D(const FieldHandle& f, const Paravector& z, const FDScheme& s = {},
              Side side = Side::Left);
Mv fd_dirac_Dbar(const FieldHandle& f, const Paravector& z, const FDScheme& s = {},
                 Side side = Side::Left);
Mv fd_laplacian(const FieldHandle& f, const Paravector& z, const FDScheme& s = {});

}  // namespace szg
