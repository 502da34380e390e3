#include "szg/hardy.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "szg/kernels.hpp"

namespace szg {

namespace {

Poly pruned(const Poly& p, double rel_tol) {
  double maxc = p.max_abs_coeff();
  if (maxc == 0.0) return p;
  double cut = rel_tol * maxc;
  Poly r(p.m());
  for (const auto& [k, c] : p.terms()) {
    Mv cc(p.m());
    bool any = false;
    for (blade_t a = 0; a < c.dim(); ++a) {
      if (std::abs(c[a]) > cut) {
        cc[a] = c[a];
        any = true;
      }
    }
    if (any) r.add_term(k, cc);
  }
  return r;
}

// v <- v - phi * c   (right multiplication by the constant c), on tables
void table_sub_right(EvalTable& v, const EvalTable& phi, const Mv& c, int m) {
  const Algebra& alg = Algebra::get(m);
  const blade_t dim = blade_t(1) << m;
  const std::size_t n = v.blade[0].size();
  for (blade_t a = 0; a < dim; ++a) {
    for (blade_t b = 0; b < dim; ++b) {
      double cb = c[b];
      if (cb == 0.0) continue;
      double s = alg.sign(a, b) * cb;
      simd::axpy(-s, phi.blade[a].data(), v.blade[a ^ b].data(), n);
    }
  }
}

void table_scale(EvalTable& v, double s) {
  for (auto& arr : v.blade) simd::scale(s, arr.data(), arr.size());
}

// v <- v * c (right multiplication by a general constant)
EvalTable table_right_mul(const EvalTable& v, const Mv& c, int m) {
  const Algebra& alg = Algebra::get(m);
  const blade_t dim = blade_t(1) << m;
  const std::size_t n = v.blade[0].size();
  EvalTable out = EvalTable::zero(m, n);
  for (blade_t a = 0; a < dim; ++a)
    for (blade_t b = 0; b < dim; ++b) {
      double cb = c[b];
      if (cb == 0.0) continue;
      double s = alg.sign(a, b) * cb;
      simd::axpy(s, v.blade[a].data(), out.blade[a ^ b].data(), n);
    }
  return out;
}

// Hermitian square roots in the conj-invariant subalgebra: scalar for m <= 2,
// scalar + pseudoscalar for m = 3.
Mv hermitian_invsqrt(const Mv& t, double* off_report) {
  const int m = t.m();
  double sc = t[0];
  if (sc <= 0.0) throw std::domain_error("hermitian_invsqrt: nonpositive scalar part");
  double off = 0.0;
  for (blade_t a = 1; a < t.dim(); ++a) off += t[a] * t[a];
  off = std::sqrt(off);
  if (m == 3) {
    const blade_t omega = 7;  // e_123, central with omega^2 = +1
    double b = t[omega];
    double rest2 = off * off - b * b;
    if (off_report) *off_report = std::sqrt(std::max(0.0, rest2));
    double lp = sc + b, lm = sc - b;
    if (lp > 0 && lm > 0) {
      double p = 0.5 * (1.0 / std::sqrt(lp) + 1.0 / std::sqrt(lm));
      double q = 0.5 * (1.0 / std::sqrt(lp) - 1.0 / std::sqrt(lm));
      Mv r(m);
      r[0] = p;
      r[omega] = q;
      return r;
    }
  }
  if (off_report) *off_report = off;
  return Mv::scalar(m, 1.0 / std::sqrt(sc));
}

}  // namespace

EvalTable evaluate_on_nodes(const Poly& p, const QuadratureRule& rule, const Paravector& center) {
  const int m = p.m();
  const std::size_t n = rule.size();
  const bool shifted = center.m() == m;
  EvalTable t = EvalTable::zero(m, n);
  int maxdeg = p.degree();
  // power tables powers[v][node*(maxdeg+1) + e]
  std::vector<std::vector<double>> powers(std::size_t(m) + 1);
  for (int v = 0; v <= m; ++v) {
    auto& pw = powers[std::size_t(v)];
    pw.resize(n * std::size_t(maxdeg + 1));
    for (std::size_t k = 0; k < n; ++k) {
      double base = rule.nodes[k][v] - (shifted ? center[v] : 0.0);
      double acc = 1.0;
      for (int e = 0; e <= maxdeg; ++e) {
        pw[k * std::size_t(maxdeg + 1) + std::size_t(e)] = acc;
        acc *= base;
      }
    }
  }
  for (const auto& [key, c] : p.terms()) {
    for (std::size_t k = 0; k < n; ++k) {
      double mono = 1.0;
      for (int v = 0; v <= m; ++v)
        mono *= powers[std::size_t(v)][k * std::size_t(maxdeg + 1) +
                                       std::size_t(key_exponent(key, v))];
      for (blade_t a = 0; a < c.dim(); ++a) {
        if (c[a] == 0.0) continue;
        t.blade[a][k] += c[a] * mono;
      }
    }
  }
  return t;
}

Mv hardy_inner_product(const EvalTable& f, const EvalTable& g, const QuadratureRule& rule, int m) {
  const Algebra& alg = Algebra::get(m);
  const blade_t dim = blade_t(1) << m;
  const std::size_t n = rule.size();
  Mv out(m);
  for (blade_t a = 0; a < dim; ++a) {
    int ca = blade_conj_sign(a);
    for (blade_t b = 0; b < dim; ++b) {
      double p = simd::wdot(f.blade[a].data(), g.blade[b].data(), rule.weights.data(), n);
      if (p == 0.0) continue;
      out[a ^ b] += ca * alg.sign(a, b) * p;
    }
  }
  return out;
}

Mv hardy_inner_product(const Poly& f, const Poly& g, const QuadratureRule& rule) {
  EvalTable tf = evaluate_on_nodes(f, rule);
  EvalTable tg = evaluate_on_nodes(g, rule);
  return hardy_inner_product(tf, tg, rule, f.m());
}

double hardy_scalar_inner(const EvalTable& f, const EvalTable& g, const QuadratureRule& rule) {
  const std::size_t n = rule.size();
  double s = 0.0;
  for (std::size_t a = 0; a < f.blade.size(); ++a)
    s += simd::wdot(f.blade[a].data(), g.blade[a].data(), rule.weights.data(), n);
  return s;
}

HardyBasis orthonormalize(const BasisSet<double>& generators, const BoundarySurface& surface,
                          const QuadratureRule& rule, double drop_tol, const Paravector& center) {
  const int m = generators.m;
  const bool module_mode = generators.mode == BasisMode::CliffordModule;
  const std::size_t ngen = generators.elems.size();
  if (ngen == 0) throw std::invalid_argument("orthonormalize: empty generator set");

  HardyBasis basis;
  basis.m = m;
  basis.max_degree = generators.max_degree;
  basis.mode = generators.mode;
  basis.surface = surface;
  basis.rule = rule;
  basis.center = center.m() == m ? center : Paravector(m);
  basis.kernel_factor = module_mode ? 1.0 : std::ldexp(1.0, -m);

  std::vector<EvalTable> gen_tables;
  gen_tables.reserve(ngen);
  double max_norm = 0.0;
  for (const Poly& g : generators.elems) {
    gen_tables.push_back(evaluate_on_nodes(g, rule, basis.center));
    max_norm = std::max(max_norm,
                        std::sqrt(hardy_scalar_inner(gen_tables.back(), gen_tables.back(), rule)));
  }

  std::vector<EvalTable> phi_tables;
  std::vector<std::vector<Mv>> coeff;  // over generators
  std::vector<int> degrees;
  double worst_nonscalar = 0.0;
  int dropped = 0;

  for (std::size_t j = 0; j < ngen; ++j) {
    EvalTable v = gen_tables[j];
    std::vector<Mv> cv(ngen, Mv(m));
    cv[j] = Mv::scalar(m, 1.0);

    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < phi_tables.size(); ++i) {
        if (module_mode) {
          Mv c = hardy_inner_product(phi_tables[i], v, rule, m);
          if (norm(c) == 0.0) continue;
          table_sub_right(v, phi_tables[i], c, m);
          for (std::size_t g = 0; g < ngen; ++g) cv[g] -= coeff[i][g] * c;
        } else {
          double c = hardy_scalar_inner(phi_tables[i], v, rule);
          if (c == 0.0) continue;
          for (std::size_t a = 0; a < v.blade.size(); ++a)
            simd::axpy(-c, phi_tables[i].blade[a].data(), v.blade[a].data(), v.blade[a].size());
          for (std::size_t g = 0; g < ngen; ++g) cv[g] -= coeff[i][g] * c;
        }
      }
    }

    double nrm2 = hardy_scalar_inner(v, v, rule);
    if (std::sqrt(std::max(nrm2, 0.0)) < drop_tol * max_norm) {
      ++dropped;
      continue;
    }

    if (module_mode) {
      Mv t = hardy_inner_product(v, v, rule, m);
      double off = 0.0;
      Mv u = hermitian_invsqrt(t, &off);
      worst_nonscalar = std::max(worst_nonscalar, off / std::max(t[0], 1e-300));
      EvalTable vn = table_right_mul(v, u, m);
      phi_tables.push_back(std::move(vn));
      for (std::size_t g = 0; g < ngen; ++g) cv[g] = cv[g] * u;
    } else {
      double s = 1.0 / std::sqrt(nrm2);
      table_scale(v, s);
      phi_tables.push_back(std::move(v));
      for (std::size_t g = 0; g < ngen; ++g) cv[g] *= s;
    }
    coeff.push_back(std::move(cv));
    degrees.push_back(generators.degrees[j]);
  }

  if (phi_tables.empty()) throw std::domain_error("orthonormalize: rank deficiency removed everything");

  // Gram residual report over the final set.
  GramReport rep;
  rep.dropped = dropped;
  for (std::size_t i = 0; i < phi_tables.size(); ++i)
    for (std::size_t k = i; k < phi_tables.size(); ++k) {
      Mv ip = hardy_inner_product(phi_tables[i], phi_tables[k], rule, m);
      double target = (i == k) ? 1.0 : 0.0;
      rep.max_offdiagonal = std::max(rep.max_offdiagonal, std::abs(ip[0] - target));
      double ns = 0.0;
      for (blade_t a = 1; a < ip.dim(); ++a) ns += ip[a] * ip[a];
      if (module_mode)
        rep.max_nonscalar = std::max(rep.max_nonscalar, std::sqrt(ns));
    }
  rep.max_nonscalar = module_mode ? rep.max_nonscalar : worst_nonscalar;
  basis.gram = rep;

  // Combined polynomials and their exact Dbar derivatives.
  for (std::size_t k = 0; k < coeff.size(); ++k) {
    Poly p(m);
    for (std::size_t g = 0; g < ngen; ++g) {
      if (norm(coeff[k][g]) == 0.0) continue;
      p += generators.elems[g].right_mul(coeff[k][g]);
    }
    p = pruned(p, 1e-15);
    basis.dbar_phi.push_back(dirac_Dbar(p));
    basis.phi.push_back(std::move(p));
  }
  basis.degrees = std::move(degrees);
  basis.tables = std::move(phi_tables);
  basis.coeff = std::move(coeff);
  return basis;
}

Mv TruncatedSzegoKernel::eval(const Paravector& z, const Paravector& w) const {
  const int mm = basis_.m;
  Mv acc(mm);
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    Mv fz = basis_.eval_phi(k, z);
    Mv fw = basis_.eval_phi(k, w);
    acc += fz * conj(fw);
  }
  return acc * basis_.kernel_factor;
}

KernelDerivatives TruncatedSzegoKernel::derivatives(const Paravector& z,
                                                    const Paravector& w) const {
  const int mm = basis_.m;
  KernelDerivatives d{Mv(mm), Mv(mm), Mv(mm), Mv(mm)};
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    Mv fz = basis_.eval_phi(k, z);
    Mv fw = basis_.eval_phi(k, w);
    Mv dz = basis_.eval_dbar_phi(k, z);
    Mv dw = basis_.eval_dbar_phi(k, w);
    d.K += fz * conj(fw);
    d.Kz += dz * conj(fw);
    d.Kzbarz += dz * conj(dw);
  }
  d.K *= basis_.kernel_factor;
  d.Kz *= basis_.kernel_factor;
  d.Kzbarz *= basis_.kernel_factor;
  d.Kzbar = conj(d.Kz);
  return d;
}

double TruncatedSzegoKernel::diagonal(const Paravector& z, double* off) const {
  double sc = 0.0;
  if (off == nullptr) {
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      Mv fz = basis_.eval_phi(k, z);
      sc += norm_sq(fz);
    }
    return sc * basis_.kernel_factor;
  }
  Mv full = eval(z, z);
  double ns = 0.0;
  for (blade_t a = 1; a < full.dim(); ++a) ns += full[a] * full[a];
  *off = std::sqrt(ns);
  return full[0];
}

double TruncatedSzegoKernel::diagonal_kzbarz(const Paravector& z) const {
  double sc = 0.0;
  for (std::size_t k = 0; k < basis_.size(); ++k) sc += norm_sq(basis_.eval_dbar_phi(k, z));
  return sc * basis_.kernel_factor;
}

Mv TruncatedSzegoKernel::reproduce(const FieldHandle& f, const Paravector& z) const {
  const int mm = basis_.m;
  const QuadratureRule& rule = basis_.rule;
  EvalTable ft = EvalTable::zero(mm, rule.size());
  for (std::size_t k = 0; k < rule.size(); ++k) {
    Mv v = f(rule.nodes[k]);
    for (blade_t a = 0; a < v.dim(); ++a) ft.blade[a][k] = v[a];
  }
  Mv acc(mm);
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    Mv ip = hardy_inner_product(basis_.tables[k], ft, rule, mm);
    acc += basis_.eval_phi(k, z) * ip;
  }
  return acc * basis_.kernel_factor;
}

Mv TruncatedSzegoKernel::reproduce(const Poly& f, const Paravector& z) const {
  return reproduce(field_of(f), z);
}

std::vector<TruncatedSzegoKernel::TailBlock> TruncatedSzegoKernel::tail_check(
    const Paravector& z) const {
  std::vector<TailBlock> blocks;
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    int deg = basis_.degrees[k];
    double v = norm_sq(basis_.eval_dbar_phi(k, z)) * basis_.kernel_factor;
    if (blocks.empty() || blocks.back().degree != deg)
      blocks.push_back({deg, v});
    else
      blocks.back().increment += v;
  }
  return blocks;
}

Paravector expansion_center(const BoundarySurface& surface) {
  if (surface.kind() == BoundarySurface::Kind::Sphere) return surface.center();
  const int m = surface.m();
  if (m > 2) return apply(surface.map(), surface.center());
  // Moebius images of spheres are spheres; recover the circumcenter from
  // chart samples via the linear system 2 (p_i - p_0) . x = |p_i|^2 - |p_0|^2.
  std::vector<Paravector> pts;
  if (m == 1) {
    for (int k = 0; k < 4; ++k) pts.push_back(surface.chart(1.5707963267948966 * k));
  } else {
    pts.push_back(surface.chart(1.0, 0.0));
    pts.push_back(surface.chart(-1.0, 0.0));
    pts.push_back(surface.chart(0.0, 0.0));
    pts.push_back(surface.chart(0.0, 2.0943951023931953));
    pts.push_back(surface.chart(0.0, 4.1887902047863905));
  }
  const int n = m + 1;
  // normal equations of the least-squares system
  std::vector<double> A(std::size_t(n) * n, 0.0), rhs(std::size_t(n), 0.0);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    std::vector<double> row(std::size_t(n), 0.0);
    double b = 0.5 * (pts[i].norm_sq() - pts[0].norm_sq());
    for (int j = 0; j < n; ++j) row[std::size_t(j)] = pts[i][j] - pts[0][j];
    for (int r = 0; r < n; ++r) {
      rhs[std::size_t(r)] += row[std::size_t(r)] * b;
      for (int c = 0; c < n; ++c) A[std::size_t(r) * n + c] += row[std::size_t(r)] * row[std::size_t(c)];
    }
  }
  for (int col = 0; col < n; ++col) {  // small dense solve, partial pivoting
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(A[std::size_t(r) * n + col]) > std::abs(A[std::size_t(piv) * n + col])) piv = r;
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(A[std::size_t(piv) * n + c], A[std::size_t(col) * n + c]);
      std::swap(rhs[std::size_t(piv)], rhs[std::size_t(col)]);
    }
    double p = A[std::size_t(col) * n + col];
    for (int r = 0; r < n; ++r) {
      if (r == col || A[std::size_t(r) * n + col] == 0.0) continue;
      double f = A[std::size_t(r) * n + col] / p;
      for (int c = col; c < n; ++c) A[std::size_t(r) * n + c] -= f * A[std::size_t(col) * n + c];
      rhs[std::size_t(r)] -= f * rhs[std::size_t(col)];
    }
  }
  Paravector center(m);
  for (int j = 0; j < n; ++j) center[j] = rhs[std::size_t(j)] / A[std::size_t(j) * n + j];
  return center;
}

BasisSet<double> surface_generators(const BoundarySurface& surface, int N, BasisMode mode) {
  // Generators live in the variable y = z - expansion_center(surface); the
  // span is translation invariant, and working in the recentered variable
  // keeps both the Gram matrix and the monomial representation conditioned
  // on off-center domains.
  return basis_up_to_degree<double>(N, surface.m(), mode);
}

TruncatedSzegoKernel build_kernel(const BoundarySurface& surface, int N, int quad_order,
                                  BasisMode mode, double drop_tol) {
  BasisSet<double> gens = surface_generators(surface, N, mode);
  QuadratureRule rule = surface_quadrature(surface, quad_order);
  return TruncatedSzegoKernel(
      orthonormalize(gens, surface, rule, drop_tol, expansion_center(surface)));
}

Mv transformation_residual(const TruncatedSzegoKernel& K_G, const TruncatedSzegoKernel& K_Gstar,
                           const VahlenMatrix& V, const Paravector& z, const Paravector& zeta,
                           double* scale) {
  const int mm = K_G.m();
  Mv lhs = K_G.eval(z, zeta);
  Paravector zs = apply(V, z);
  Paravector zetas = apply(V, zeta);
  Mv left = automorphy_factor(V, z, mm + 1);
  Mv den = V.c * zeta.embed() + V.d;
  Mv right = den * (1.0 / std::pow(norm(den), mm + 1));
  Mv rhs = left * K_Gstar.eval(zs, zetas) * right;
  if (scale) *scale = 0.5 * (norm(lhs) + norm(rhs));
  return lhs - rhs;
}

// ---------------------------------------------------------------------------
// cache io

std::uint64_t kernel_cache_hash(const BoundarySurface& surface, int N, int quad_order,
                                BasisMode mode) {
  std::ostringstream os;
  os << surface.descriptor() << "|N=" << N << "|q=" << quad_order
     << "|mode=" << (mode == BasisMode::CliffordModule ? "module" : "realspan");
  std::string s = os.str();
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

void write_mv(std::ostream& os, const Mv& v) {
  char buf[64];
  for (blade_t a = 0; a < v.dim(); ++a) {
    std::snprintf(buf, sizeof buf, "%.17g", v[a]);
    os << buf << (a + 1 < v.dim() ? " " : "");
  }
}

void write_paravector(std::ostream& os, const Paravector& p) {
  char buf[64];
  for (int i = 0; i <= p.m(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", p[i]);
    os << buf << (i < p.m() ? " " : "");
  }
}

Paravector read_paravector(std::istream& is, int m) {
  Paravector p(m);
  for (int i = 0; i <= m; ++i) is >> p[i];
  return p;
}

Mv read_mv(std::istream& is, int m) {
  Mv v(m);
  for (blade_t a = 0; a < v.dim(); ++a) is >> v[a];
  return v;
}

}  // namespace

void save_kernel(const std::string& path, const TruncatedSzegoKernel& K, int quad_order) {
  const HardyBasis& b = K.basis();
  std::ofstream os(path);
  if (!os) throw std::runtime_error("save_kernel: cannot open " + path);
  os << "szg-kernel-cache v1\n";
  os << "hash " << kernel_cache_hash(b.surface, b.max_degree, quad_order, b.mode) << "\n";
  os << "m " << b.m << " degree " << b.max_degree << " quad " << quad_order << " mode "
     << (b.mode == BasisMode::CliffordModule ? "module" : "realspan") << "\n";
  os << "surface "
     << (b.surface.kind() == BoundarySurface::Kind::Sphere ? "sphere" : "mobius") << " ";
  write_paravector(os, b.surface.center());
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", b.surface.radius());
  os << " " << buf << "\n";
  if (b.surface.kind() == BoundarySurface::Kind::MobiusImage) {
    const VahlenMatrix& V = b.surface.map();
    for (const Mv* e : {&V.a, &V.b, &V.c, &V.d}) {
      write_mv(os, *e);
      os << "\n";
    }
  }
  os << "gram " << b.gram.max_offdiagonal << " " << b.gram.max_nonscalar << " " << b.gram.dropped
     << "\n";
  std::size_t ngen = b.coeff.empty() ? 0 : b.coeff[0].size();
  os << "basis " << b.size() << " " << ngen << "\n";
  for (std::size_t k = 0; k < b.size(); ++k) {
    os << b.degrees[k] << "\n";
    for (std::size_t g = 0; g < ngen; ++g) {
      write_mv(os, b.coeff[k][g]);
      os << "\n";
    }
  }
}

TruncatedSzegoKernel load_kernel(const std::string& path, std::uint64_t expect_hash) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("load_kernel: cannot open " + path);
  std::string tag, ver;
  is >> tag >> ver;
  if (tag != "szg-kernel-cache" || ver != "v1")
    throw std::runtime_error("load_kernel: unrecognized cache format");
  std::string kw;
  std::uint64_t hash = 0;
  is >> kw >> hash;
  int m = 0, N = 0, q = 0;
  std::string mode_s;
  is >> kw >> m >> kw >> N >> kw >> q >> kw >> mode_s;
  BasisMode mode = mode_s == "module" ? BasisMode::CliffordModule : BasisMode::RealSpan;
  std::string surf_kind;
  is >> kw >> surf_kind;
  Paravector center = read_paravector(is, m);
  double radius = 0;
  is >> radius;
  BoundarySurface surface = BoundarySurface::sphere(m, center, radius);
  if (surf_kind == "mobius") {
    VahlenMatrix V{Mv(m), Mv(m), Mv(m), Mv(m)};
    V.a = read_mv(is, m);
    V.b = read_mv(is, m);
    V.c = read_mv(is, m);
    V.d = read_mv(is, m);
    surface = BoundarySurface::mobius_image(V, center, radius);
  }
  if (expect_hash != 0 && hash != expect_hash)
    throw std::runtime_error("load_kernel: cache mismatch (stale hash)");
  GramReport rep;
  is >> kw >> rep.max_offdiagonal >> rep.max_nonscalar >> rep.dropped;
  std::size_t nbasis = 0, ngen = 0;
  is >> kw >> nbasis >> ngen;
  if (!is) throw std::runtime_error("load_kernel: truncated header");

  BasisSet<double> gens = surface_generators(surface, N, mode);
  if (gens.elems.size() != ngen) throw std::runtime_error("load_kernel: generator count mismatch");
  QuadratureRule rule = surface_quadrature(surface, q);

  HardyBasis b;
  b.m = m;
  b.max_degree = N;
  b.mode = mode;
  b.surface = surface;
  b.rule = rule;
  b.center = expansion_center(surface);
  b.kernel_factor = mode == BasisMode::CliffordModule ? 1.0 : std::ldexp(1.0, -m);
  b.gram = rep;
  for (std::size_t k = 0; k < nbasis; ++k) {
    int deg = 0;
    is >> deg;
    std::vector<Mv> row;
    row.reserve(ngen);
    Poly p(m);
    for (std::size_t g = 0; g < ngen; ++g) {
      Mv c = read_mv(is, m);
      if (norm(c) != 0.0) p += gens.elems[g].right_mul(c);
      row.push_back(std::move(c));
    }
    if (!is) throw std::runtime_error("load_kernel: truncated coefficient table");
    b.degrees.push_back(deg);
    b.coeff.push_back(std::move(row));
    b.dbar_phi.push_back(dirac_Dbar(p));
    b.tables.push_back(evaluate_on_nodes(p, rule, b.center));
    b.phi.push_back(std::move(p));
  }
  return TruncatedSzegoKernel(std::move(b));
}

}  // namespace szg
