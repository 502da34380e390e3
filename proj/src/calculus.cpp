#include "szg/calculus.hpp"

namespace szg {

Poly to_double(const PolyQ& p) {
  Poly r(p.m());
  for (const auto& [k, c] : p.terms()) {
    Mv cd(p.m());
    for (blade_t a = 0; a < c.dim(); ++a) cd[a] = static_cast<double>(c[a]);
    r.add_term(k, cd);
  }
  return r;
}

Mv fd_partial(const FieldHandle& f, const Paravector& z, int var, double h) {
  Paravector zp = z, zm = z;
  zp[var] += h;
  zm[var] -= h;
  Mv d = f(zp) - f(zm);
  d *= 1.0 / (2.0 * h);
  return d;
}

Mv fd_dirac_D(const FieldHandle& f, const Paravector& z, const FDScheme& s, Side side) {
  s.validate();
  Mv r = fd_partial(f, z, 0, s.h);
  for (int i = 1; i <= f.m; ++i) {
    Mv ei = Mv::basis(f.m, i);
    Mv di = fd_partial(f, z, i, s.h);
    r += (side == Side::Left) ? ei * di : di * ei;
  }
  return r;
}

Mv fd_dirac_Dbar(const FieldHandle& f, const Paravector& z, const FDScheme& s, Side side) {
  s.validate();
  Mv r = fd_partial(f, z, 0, s.h);
  for (int i = 1; i <= f.m; ++i) {
    Mv ei = Mv::basis(f.m, i);
    Mv di = fd_partial(f, z, i, s.h);
    r -= (side == Side::Left) ? ei * di : di * ei;
  }
  return r;
}

Mv fd_laplacian(const FieldHandle& f, const Paravector& z, const FDScheme& s) {
  s.validate();
  const double h = s.h2;
  Mv acc(f.m);
  Mv center = f(z);
  for (int i = 0; i <= f.m; ++i) {
    Paravector zp = z, zm = z;
    zp[i] += h;
    zm[i] -= h;
    Mv second = f(zp) + f(zm) - 2.0 * center;
    second *= 1.0 / (h * h);
    acc += second;
  }
  return acc;
}

}  // namespace szg
