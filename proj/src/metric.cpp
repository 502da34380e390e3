#include "szg/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <random>
#include <sstream>
#include <unordered_map>

#include "szg/kernels.hpp"

namespace szg {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

void table_accumulate_right(EvalTable& acc, const EvalTable& src, const Mv& c, int m) {
  const Algebra& alg = Algebra::get(m);
  const blade_t dim = blade_t(1) << m;
  const std::size_t n = acc.blade[0].size();
  for (blade_t a = 0; a < dim; ++a)
    for (blade_t b = 0; b < dim; ++b) {
      double cb = c[b];
      if (cb == 0.0) continue;
      simd::axpy(alg.sign(a, b) * cb, src.blade[a].data(), acc.blade[a ^ b].data(), n);
    }
}

namespace {

Paravector axis_point(int m, int axis, double v) {
  Paravector p(m);
  p[axis] = v;
  return p;
}

}  // namespace

bool SzegoMetric::contains(const Paravector& z, double clearance) const {
  const BoundarySurface& s = boundary();
  if (s.kind() == BoundarySurface::Kind::Sphere)
    return (z - s.center()).norm() <= s.radius() - clearance;
  VahlenMatrix inv = inverse(s.map());
  Paravector y;
  try {
    y = apply(inv, z);
  } catch (const std::domain_error&) {
    return false;
  }
  double base_gap = s.radius() - (y - s.center()).norm();
  if (base_gap <= 0) return false;
  double sc = conformal_scale(s.map(), y);
  return base_gap * sc >= clearance;
}

double SzegoMetric::boundary_distance(const Paravector& z) const {
  const BoundarySurface& s = boundary();
  if (s.kind() == BoundarySurface::Kind::Sphere) return s.radius() - (z - s.center()).norm();
  TangentBallData tb = nearest_boundary_point(s, z, 1.0);
  return contains(z) ? tb.delta : -tb.delta;
}

double SzegoMetric::lambda(const Paravector& z, double* nonscalar_rel) const {
  if (nonscalar_rel == nullptr) return kernel_.diagonal(z);
  double off = 0;
  double sc = kernel_.diagonal(z, &off);
  *nonscalar_rel = off / std::max(std::abs(sc), 1e-300);
  return sc;
}

double SzegoMetric::delta_log_lambda(const Paravector& z, double h, double* drift) const {
  auto lap = [&](double hh) {
    double center = std::log(lambda(z));
    double acc = 0.0;
    for (int i = 0; i <= m(); ++i) {
      Paravector zp = z, zm = z;
      zp[i] += hh;
      zm[i] -= hh;
      acc += (std::log(lambda(zp)) + std::log(lambda(zm)) - 2.0 * center) / (hh * hh);
    }
    return acc;
  };
  double a = lap(h);
  double b = lap(0.5 * h);
  if (drift) *drift = std::abs(a - b);
  return (4.0 * b - a) / 3.0;
}

double SzegoMetric::curvature(const Paravector& z, double h, double* drift) const {
  double l = lambda(z);
  return -delta_log_lambda(z, h, drift) / (l * l);
}

double SzegoMetric::curvature_series(const Paravector& z) const {
  KernelDerivatives d = kernel_.derivatives(z, z);
  double l = d.K[0];
  double kzz = kernel_.diagonal_kzbarz(z);
  double dll = kzz / l - norm_sq(d.Kz) / (l * l);
  return -dll / (l * l);
}

SzegoMetric::Lemma4 SzegoMetric::lemma4_quantity(const Paravector& z) const {
  KernelDerivatives d = kernel_.derivatives(z, z);
  double l = d.K[0];
  double kzbarz = kernel_.diagonal_kzbarz(z);
  double quoted = l * (l * kzbarz - scalar_inner(d.Kz, d.Kz));

  // ||Mtilde||^2 with the section-valued arrangement
  //   Mtilde(w) = Kzbar(z,w) K(z,z) - K(w,z) conj(Kz(z,z))
  //             = sum_k phi_k(w) [ conj(phi'_k(z)) K(z,z) - conj(phi_k(z)) conj(Kz(z,z)) ]
  // (a Hardy-space element vanishing at z; the printed form reads the kernel
  // in the slot where it is anti-monogenic and does not vanish at z)
  const HardyBasis& b = kernel_.basis();
  const double f = b.kernel_factor;
  Mv abar = conj(d.Kz);
  EvalTable mt = EvalTable::zero(b.m, b.rule.size());
  for (std::size_t k = 0; k < b.size(); ++k) {
    Mv phiz = b.eval_phi(k, z);
    Mv dphiz = b.eval_dbar_phi(k, z);
    table_accumulate_right(mt, b.tables[k], (conj(dphiz) * l - conj(phiz) * abar) * f, b.m);
  }
  double norm_form = hardy_scalar_inner(mt, mt, b.rule);
  return Lemma4{quoted, norm_form};
}

double path_length(const SzegoMetric& M, const PathPolyline& path, int gauss_points) {
  if (path.vertices.size() < 2) return 0.0;
  std::vector<double> gx, gw;
  legendre::nodes(gauss_points, gx, gw);
  double total = 0.0;
  for (std::size_t s = 0; s + 1 < path.vertices.size(); ++s) {
    const Paravector& a = path.vertices[s];
    const Paravector& b = path.vertices[s + 1];
    double len = (b - a).norm();
    if (len == 0.0) continue;
    double acc = 0.0;
    for (int q = 0; q < gauss_points; ++q) {
      double t = 0.5 + 0.5 * gx[std::size_t(q)];
      Paravector p = a + (b - a) * t;
      acc += 0.5 * gw[std::size_t(q)] * M.lambda(p);
    }
    total += acc * len;
  }
  return total;
}

DistanceEngine::DistanceEngine(const SzegoMetric& M, const GridSpec& spec)
    : metric_(M), spec_(spec) {
  const BoundarySurface& s = M.boundary();
  const int dims = M.m() + 1;

  // bounding box by chart sampling (exact for spheres)
  Paravector lo(M.m()), hi(M.m());
  if (s.kind() == BoundarySurface::Kind::Sphere) {
    for (int i = 0; i < dims; ++i) {
      lo[i] = s.center()[i] - s.radius();
      hi[i] = s.center()[i] + s.radius();
    }
  } else {
    bool first = true;
    int nu = 48, nv = 96;
    for (int i = 0; i <= nu; ++i) {
      double u = (M.m() == 1) ? kTwoPi * i / nu : -1.0 + 2.0 * double(i) / nu;
      for (int j = 0; j < (M.m() == 1 ? 1 : nv); ++j) {
        double v = kTwoPi * j / nv;
        Paravector p = s.chart(u, v);
        for (int k = 0; k < dims; ++k) {
          if (first || p[k] < lo[k]) lo[k] = p[k];
          if (first || p[k] > hi[k]) hi[k] = p[k];
        }
        first = false;
      }
    }
  }

  int n = std::max(spec.n_per_axis, 3);
  double ext = 0.0;
  for (int i = 0; i < dims; ++i) ext = std::max(ext, hi[i] - lo[i]);
  step_ = ext / (n - 1);
  double clearance = spec.clearance_steps * step_;

  // lattice -> node index
  std::unordered_map<long long, int> index;
  auto lattice_key = [&](const std::vector<int>& c) {
    long long k = 0;
    for (int v : c) k = k * 4096 + (v + 1024);
    return k;
  };
  std::vector<std::vector<int>> coords;
  std::vector<int> cur(std::size_t(dims), 0);
  std::vector<int> counts(std::size_t(dims), 0);
  for (int i = 0; i < dims; ++i) counts[std::size_t(i)] = int((hi[i] - lo[i]) / step_) + 1;

  // enumerate lattice
  std::vector<int> idx(std::size_t(dims), 0);
  while (true) {
    Paravector p(M.m());
    for (int i = 0; i < dims; ++i) p[i] = lo[i] + step_ * idx[std::size_t(i)];
    if (metric_.contains(p, clearance)) {
      index[lattice_key(idx)] = int(nodes_.size());
      coords.push_back(idx);
      nodes_.push_back(p);
    }
    int d = 0;
    while (d < dims) {
      if (++idx[std::size_t(d)] <= counts[std::size_t(d)]) break;
      idx[std::size_t(d)] = 0;
      ++d;
    }
    if (d == dims) break;
  }

  // neighbor offsets: all nonzero vectors in {-1,0,1}^dims
  std::vector<std::vector<int>> offsets;
  std::vector<int> off(std::size_t(dims), -1);
  while (true) {
    bool nonzero = false;
    for (int v : off) nonzero |= (v != 0);
    if (nonzero) offsets.push_back(off);
    int d = 0;
    while (d < dims) {
      if (++off[std::size_t(d)] <= 1) break;
      off[std::size_t(d)] = -1;
      ++d;
    }
    if (d == dims) break;
  }

  adj_.assign(nodes_.size(), {});
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    for (const auto& o : offsets) {
      std::vector<int> nb = coords[i];
      bool ok = true;
      for (int d = 0; d < dims; ++d) {
        nb[std::size_t(d)] += o[std::size_t(d)];
        if (nb[std::size_t(d)] < 0) ok = false;
      }
      if (!ok) continue;
      auto it = index.find(lattice_key(nb));
      if (it == index.end()) continue;
      int j = it->second;
      if (j <= int(i)) continue;  // add each edge once, both directions below
      Paravector mid = (nodes_[i] + nodes_[std::size_t(j)]) * 0.5;
      double w = metric_.lambda(mid) * (nodes_[std::size_t(j)] - nodes_[i]).norm();
      adj_[i].push_back({j, w});
      adj_[std::size_t(j)].push_back({int(i), w});
    }
  }
}

std::vector<double> DistanceEngine::dijkstra(std::size_t src, std::vector<int>* prev) const {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(nodes_.size(), inf);
  if (prev) prev->assign(nodes_.size(), -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[src] = 0.0;
  pq.push({0.0, int(src)});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[std::size_t(u)]) continue;
    for (auto [v, w] : adj_[std::size_t(u)]) {
      double nd = d + w;
      if (nd < dist[std::size_t(v)]) {
        dist[std::size_t(v)] = nd;
        if (prev) (*prev)[std::size_t(v)] = u;
        pq.push({nd, v});
      }
    }
  }
  return dist;
}

std::size_t DistanceEngine::nearest_node(const Paravector& z) const {
  std::size_t best = 0;
  double bd = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    double d = (nodes_[i] - z).norm_sq();
    if (d < bd) {
      bd = d;
      best = i;
    }
  }
  return best;
}

double DistanceEngine::graph_distance(std::size_t i, std::size_t j) const {
  if (i == j) return 0.0;
  std::size_t src = std::min(i, j), dst = std::max(i, j);  // canonical: exact symmetry
  return dijkstra(src)[dst];
}

PathPolyline DistanceEngine::smooth(PathPolyline path, int passes) const {
  double clearance = 0.5 * spec_.clearance_steps * step_;
  for (int pass = 0; pass < passes; ++pass) {
    bool improved = false;
    for (std::size_t v = 1; v + 1 < path.vertices.size(); ++v) {
      Paravector cand = (path.vertices[v - 1] + path.vertices[v + 1]) * 0.5;
      cand = path.vertices[v] + (cand - path.vertices[v]) * 0.8;
      if (!metric_.contains(cand, clearance)) continue;
      PathPolyline local{{path.vertices[v - 1], path.vertices[v], path.vertices[v + 1]}};
      double before = path_length(metric_, local, 6);
      local.vertices[1] = cand;
      double after = path_length(metric_, local, 6);
      if (after < before) {
        path.vertices[v] = cand;
        improved = true;
      }
    }
    if (!improved) break;
  }
  return path;
}

DistanceResult DistanceEngine::distance(const Paravector& z1, const Paravector& z2) const {
  if (!metric_.contains(z1) || !metric_.contains(z2))
    throw std::domain_error("distance: query point outside the grid region");
  DistanceResult res;
  std::size_t n1 = nearest_node(z1), n2 = nearest_node(z2);
  if (n1 == n2) {
    res.witness.vertices = {z1, z2};
    res.graph_value = 0.0;
    res.value = path_length(metric_, res.witness);
    return res;
  }
  std::size_t src = std::min(n1, n2), dst = std::max(n1, n2);
  std::vector<int> prev;
  std::vector<double> dist = dijkstra(src, &prev);
  res.graph_value = dist[dst];

  std::vector<Paravector> chain;
  for (int at = int(dst); at != -1; at = prev[std::size_t(at)]) chain.push_back(nodes_[std::size_t(at)]);
  // chain runs dst -> src; orient from n1 to n2
  if (src == n1) std::reverse(chain.begin(), chain.end());
  PathPolyline poly;
  poly.vertices.push_back(z1);
  for (const Paravector& p : chain) poly.vertices.push_back(p);
  poly.vertices.push_back(z2);
  poly = smooth(std::move(poly), 6);
  res.value = path_length(metric_, poly);
  res.witness = poly;

  // The straight chord is itself an admissible witness whenever it stays
  // interior; take it when shorter.
  bool chord_ok = true;
  for (int q = 0; q <= 16; ++q) {
    Paravector p = z1 + (z2 - z1) * (double(q) / 16.0);
    if (!metric_.contains(p, 0.0)) {
      chord_ok = false;
      break;
    }
  }
  if (chord_ok) {
    PathPolyline chord{{z1, z2}};
    double lc = path_length(metric_, chord);
    if (lc < res.value) {
      res.value = lc;
      res.witness = chord;
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Caratheodory machinery.

double cauchy_candidate_value(const BoundarySurface& surface, const QuadratureRule& rule,
                              const Paravector& z, const Paravector& w0) {
  CauchyKernelSpec ck{w0, 1.0};
  double value = norm(cauchy_exact_Dbar2(ck, z));
  Mv shift = cauchy_exact_Dbar(ck, z);

  const QuadratureRule* nr = &rule;
  QuadratureRule refined;
  if (surface.kind() == BoundarySurface::Kind::Sphere) {
    refined = refined_sphere_quadrature(surface.m(), surface.radius(), surface.center(), w0);
    nr = &refined;
  }
  double nrm2 = 0.0;
  for (std::size_t k = 0; k < nr->size(); ++k) {
    Mv v = cauchy_exact_Dbar(ck, nr->nodes[k]) - shift;
    nrm2 += nr->weights[k] * norm_sq(v);
  }
  if (nrm2 <= 0) return 0.0;
  return value / std::sqrt(nrm2);
}

CaratheodoryEstimate caratheodory_lower_bound(const SzegoMetric& M, const Paravector& z,
                                              const CaratheodoryFamily& family) {
  const int m = M.m();
  const BoundarySurface& surface = M.boundary();
  const QuadratureRule& rule = M.kernel().basis().rule;
  CaratheodoryEstimate est;

  auto consider = [&](const std::string& name, double v) {
    est.candidates.push_back({name, v});
    if (v > est.value) {
      est.value = v;
      est.witness = name;
    }
  };

  auto shifted_fueter_value = [&](const std::vector<double>& u) {
    // f_u(w) = sum_i u_i [ (w_i - z_i) - (w_0 - z_0) e_i ],  |Dbar f_u| = 2|u|
    double nrm2 = 0.0;
    double u2 = 0.0;
    for (double ui : u) u2 += ui * ui;
    for (std::size_t k = 0; k < rule.size(); ++k) {
      const Paravector& w = rule.nodes[k];
      double lin = 0.0;
      for (int i = 1; i <= m; ++i) lin += u[std::size_t(i - 1)] * (w[i] - z[i]);
      double d0 = w[0] - z[0];
      nrm2 += rule.weights[k] * (lin * lin + d0 * d0 * u2);
    }
    return 2.0 * std::sqrt(u2) / std::sqrt(nrm2);
  };

  if (family.fueter) {
    for (int i = 1; i <= m; ++i) {
      std::vector<double> u(std::size_t(m), 0.0);
      u[std::size_t(i - 1)] = 1.0;
      consider("fueter-shift-" + std::to_string(i), shifted_fueter_value(u));
    }
  }
  if (family.combinations && m > 1) {
    std::mt19937 rng(family.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int c = 0; c < family.combination_count; ++c) {
      std::vector<double> u(std::size_t(m), 0.0);
      double n2 = 0.0;
      for (double& v : u) {
        v = gauss(rng);
        n2 += v * v;
      }
      for (double& v : u) v /= std::sqrt(n2);
      consider("fueter-combination-" + std::to_string(c), shifted_fueter_value(u));
    }
  }
  if (family.cauchy_derivative) {
    try {
      TangentBallData tb = nearest_boundary_point(surface, z, 1.0);
      Paravector out = (tb.P - z) * (1.0 / tb.delta);
      for (double s : family.pole_scales) {
        Paravector w0 = tb.P + out * (s * tb.delta);
        double v = cauchy_candidate_value(surface, rule, z, w0);
        std::ostringstream name;
        name << "cauchy-derivative-pole-" << s;
        consider(name.str(), v);
      }
    } catch (const std::domain_error&) {
      // non-unique nearest point (domain center); skip the pole family
    }
  }
  if (family.kernel_derived) {
    const TruncatedSzegoKernel& K = M.kernel();
    const HardyBasis& b = K.basis();
    KernelDerivatives d = K.derivatives(z, z);
    double l = d.K[0];
    Mv abar = conj(d.Kz);
    // M(w) = sum_k phi_k(w) c_k,  c_k = f (conj(phi'_k(z)) l - conj(phi_k(z)) abar)
    std::vector<Mv> cks;
    cks.reserve(b.size());
    Mv dM(b.m);
    for (std::size_t k = 0; k < b.size(); ++k) {
      Mv phiz = b.eval_phi(k, z);
      Mv dphiz = b.eval_dbar_phi(k, z);
      Mv ck = (conj(dphiz) * l - conj(phiz) * abar) * b.kernel_factor;
      dM += b.eval_dbar_phi(k, z) * ck;
      cks.push_back(std::move(ck));
    }
    EvalTable mt = EvalTable::zero(b.m, b.rule.size());
    for (std::size_t k = 0; k < b.size(); ++k)
      table_accumulate_right(mt, b.tables[k], cks[k], b.m);
    double nrm2 = hardy_scalar_inner(mt, mt, b.rule);
    if (nrm2 > 0) consider("kernel-derived-section", norm(dM) / std::sqrt(nrm2));
  }
  return est;
}

IntertwiningResult intertwining_residual(const VahlenMatrix& V, const Poly& f, const Paravector& z,
                                         int p, const FDScheme& fd) {
  const int m = V.m();
  Paravector vz = apply(V, z);
  Poly fs = f;
  {
    Mv at = eval(f, vz);
    fs.add_term(0, -at);  // shift so that f(V<z>) = 0
  }
  Poly dfs = dirac_Dbar(fs);
  IntertwiningResult out;

  bool affine_identity_weight = norm(V.c) <= 1e-14 && norm(V.a - Mv::scalar(m, 1)) <= 1e-14 &&
                                norm(V.d - Mv::scalar(m, 1)) <= 1e-14;
  if (affine_identity_weight) {
    // translation: weight = 1 and composition stays polynomial
    Paravector t = to_paravector(V.b);
    Poly comp = translated(fs, t);
    out.lhs = norm(eval(dirac_Dbar(comp), z));
    out.rhs = norm(eval(dfs, vz));
    out.residual = std::abs(out.lhs - out.rhs);
    return out;
  }

  FieldHandle g{m,
                [&V, &fs, p](const Paravector& zz) {
                  return automorphy_factor(V, zz, p) * eval(fs, apply(V, zz));
                },
                nullptr};
  out.lhs = norm(fd_dirac_Dbar(g, z, fd));
  out.rhs = norm(automorphy_factor(V, z, p + 2) * eval(dfs, vz));
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

TransformCheck caratheodory_transform_check(const VahlenMatrix& V,
                                            const BoundarySurface& base_surface,
                                            const QuadratureRule& base_rule,
                                            const BoundarySurface& image_surface,
                                            const QuadratureRule& image_rule,
                                            const Paravector& z) {
  (void)base_surface;
  (void)image_surface;
  const int m = V.m();
  Paravector vz = apply(V, z);
  TransformCheck out;

  // image-side candidates: shifted Fueter variables at V<z>
  auto image_value = [&](int i) {
    double nrm2 = 0.0;
    for (std::size_t k = 0; k < image_rule.size(); ++k) {
      const Paravector& w = image_rule.nodes[k];
      double li = w[i] - vz[i];
      double d0 = w[0] - vz[0];
      nrm2 += image_rule.weights[k] * (li * li + d0 * d0);
    }
    return 2.0 / std::sqrt(nrm2);
  };
  double dhat_image = 0.0;
  for (int i = 1; i <= m; ++i) dhat_image = std::max(dhat_image, image_value(i));
  out.lhs = norm(automorphy_factor(V, z, m)) * dhat_image;

  // pushed-forward weighted family on the base domain
  FDScheme fd;
  double dhat_base = 0.0;
  for (int i = 1; i <= m; ++i) {
    auto fval = [&vz, i](const Paravector& w) {
      Mv r(w.m());
      r[0] = w[i] - vz[i];
      r[blade_t(1) << (i - 1)] = -(w[0] - vz[0]);
      return r;
    };
    FieldHandle g{m,
                  [&V, m, fval](const Paravector& zz) {
                    return automorphy_factor(V, zz, m + 1) * fval(apply(V, zz));
                  },
                  nullptr};
    double val = norm(fd_dirac_Dbar(g, z, fd));
    double nrm2 = 0.0;
    for (std::size_t k = 0; k < base_rule.size(); ++k)
      nrm2 += base_rule.weights[k] * norm_sq(g(base_rule.nodes[k]));
    dhat_base = std::max(dhat_base, val / std::sqrt(nrm2));
  }
  out.rhs = dhat_base;
  out.violation = std::max(0.0, out.lhs - out.rhs);
  return out;
}

BlowupReport blowup_scan(int m, const Paravector& direction, const std::vector<double>& deltas) {
  Paravector dir = direction * (1.0 / direction.norm());
  BoundarySurface ball = BoundarySurface::sphere(m, Paravector(m), 1.0);
  QuadratureRule dummy;  // cauchy_candidate_value switches to the refined rule on spheres
  BlowupReport rep;
  for (double d : deltas) {
    Paravector z = dir * (1.0 - d);
    Paravector w0 = dir * (1.0 + d);
    double v = cauchy_candidate_value(ball, dummy, z, w0);
    rep.points.push_back({d, v});
  }
  // least-squares slope in log-log coordinates
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = rep.points.size();
  for (const auto& p : rep.points) {
    double x = std::log(p.delta), y = std::log(p.value);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  rep.slope = (double(n) * sxy - sx * sy) / (double(n) * sxx - sx * sx);
  // monotone means the value grows as delta shrinks
  rep.monotone = true;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    bool smaller_delta = rep.points[i + 1].delta < rep.points[i].delta;
    bool larger_value = rep.points[i + 1].value > rep.points[i].value;
    if (smaller_delta != larger_value) rep.monotone = false;
  }
  return rep;
}

MetricComparison metric_comparison(const SzegoMetric& M, const Paravector& z, double tol,
                                   const CaratheodoryFamily& family) {
  MetricComparison out{};
  out.lambda = M.lambda(z);
  double dll = M.delta_log_lambda(z);
  out.lambda_star_nosqrt = 2.0 * dll;
  out.lambda_star = std::sqrt(std::max(0.0, 2.0 * dll));
  out.caratheodory = caratheodory_lower_bound(M, z, family).value;
  out.lambda_dominates = out.lambda >= out.caratheodory - tol;
  out.star_dominates = out.lambda_star >= out.caratheodory - tol;
  return out;
}

double pseudo_invariance_residual(const VahlenMatrix& V, const Paravector& z,
                                  const TruncatedSzegoKernel& K_G,
                                  const TruncatedSzegoKernel& K_VG) {
  const int m = V.m();
  Paravector vz = apply(V, z);
  double lhs = K_VG.diagonal(vz);
  double czd2 = 1.0 / conformal_scale(V, z);  // |cz+d|^2
  double rhs = std::pow(czd2, m) * K_G.diagonal(z);
  return std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300);
}

VahlenMatrix helper_vahlen(int m) {
  Paravector a = axis_point(m, 1, 0.25);
  Paravector t = axis_point(m, m >= 2 ? 2 : 1, 0.3);
  VahlenMatrix Ta = VahlenMatrix::ball_automorphism(a);
  VahlenMatrix Sc = VahlenMatrix::scaling(m, 0.5);
  VahlenMatrix Tr = VahlenMatrix::translation(t);
  return compose(Tr, compose(Sc, Ta));
}

BoundarySurface helper_image_surface(int m) {
  return BoundarySurface::mobius_image(helper_vahlen(m), Paravector(m), 1.0);
}

}  // namespace szg
