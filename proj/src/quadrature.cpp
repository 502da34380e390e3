#include "szg/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace szg {

namespace {
constexpr double kPi = std::numbers::pi;
}

namespace legendre {

void nodes(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(std::size_t(n), 0.0);
  w.assign(std::size_t(n), 0.0);
  for (int i = 0; i < n; ++i) {
    // Chebyshev initial guess + Newton on P_n.
    double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (t * p1 - p0) / (t * t - 1.0);
      double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    double p0 = 1.0, p1 = t;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (t * p1 - p0) / (t * t - 1.0);
    x[std::size_t(i)] = t;
    w[std::size_t(i)] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

}  // namespace legendre

BoundarySurface BoundarySurface::sphere(int m, const Paravector& center, double radius) {
  if (!(radius > 0)) throw std::invalid_argument("sphere: radius must be positive");
  BoundarySurface s;
  s.kind_ = Kind::Sphere;
  s.m_ = m;
  s.center_ = center;
  s.radius_ = radius;
  return s;
}

BoundarySurface BoundarySurface::mobius_image(const VahlenMatrix& V, const Paravector& base_center,
                                              double base_radius) {
  BoundarySurface s;
  s.kind_ = Kind::MobiusImage;
  s.m_ = V.m();
  s.center_ = base_center;
  s.radius_ = base_radius;
  s.map_ = V;
  if (norm(V.c) > 1e-14) {
    // pole of the map: cz + d = 0  =>  z = -c^{-1} d (a paravector for valid V)
    Paravector pole = to_paravector(-(group_inverse(V.c) * V.d), 1e-6);
    if ((pole - base_center).norm() <= base_radius + 1e-12)
      throw std::invalid_argument("mobius_image: map pole inside the closed base ball");
  }
  return s;
}

Paravector BoundarySurface::chart(double u, double v) const {
  Paravector p(m_);
  if (m_ == 1) {
    p[0] = center_[0] + radius_ * std::cos(u);
    p[1] = center_[1] + radius_ * std::sin(u);
  } else if (m_ == 2) {
    double t = u;  // polar cosine
    double s = std::sqrt(std::max(0.0, 1.0 - t * t));
    p[0] = center_[0] + radius_ * t;
    p[1] = center_[1] + radius_ * s * std::cos(v);
    p[2] = center_[2] + radius_ * s * std::sin(v);
  } else {
    throw std::invalid_argument("chart: only m = 1, 2 surfaces are parametrized");
  }
  if (kind_ == Kind::MobiusImage) return apply(*map_, p);
  return p;
}

std::string BoundarySurface::descriptor() const {
  std::ostringstream os;
  os.precision(17);
  if (kind_ == Kind::Sphere) {
    os << "sphere m=" << m_ << " r=" << radius_ << " c=";
  } else {
    os << "mobius-image m=" << m_ << " base_r=" << radius_ << " base_c=";
  }
  for (int i = 0; i <= m_; ++i) os << center_[i] << (i < m_ ? "," : "");
  if (kind_ == Kind::MobiusImage) {
    os << " map=";
    for (const Mv* e : {&map_->a, &map_->b, &map_->c, &map_->d}) {
      for (blade_t a = 0; a < e->dim(); ++a) os << (*e)[a] << ";";
      os << "|";
    }
  }
  return os.str();
}

QuadratureRule sphere_quadrature(int m, int order, double radius, const Paravector& center) {
  if (order < 1) order = 1;
  Paravector c = center.m() == m ? center : Paravector(m);
  QuadratureRule r;
  r.order = order;
  if (m == 1) {
    int n = order + 1;
    r.nodes.reserve(std::size_t(n));
    double w = 2.0 * kPi * radius / n;
    for (int k = 0; k < n; ++k) {
      double th = 2.0 * kPi * k / n;
      Paravector p(1);
      p[0] = c[0] + radius * std::cos(th);
      p[1] = c[1] + radius * std::sin(th);
      r.nodes.push_back(p);
      r.weights.push_back(w);
    }
  } else if (m == 2) {
    int ntheta = order / 2 + 1;
    int nphi = order + 1;
    std::vector<double> xt, wt;
    legendre::nodes(ntheta, xt, wt);
    double wphi = 2.0 * kPi / nphi;
    r.nodes.reserve(std::size_t(ntheta) * nphi);
    for (int i = 0; i < ntheta; ++i) {
      double t = xt[std::size_t(i)];
      double s = std::sqrt(std::max(0.0, 1.0 - t * t));
      for (int j = 0; j < nphi; ++j) {
        double phi = wphi * j;
        Paravector p(2);
        p[0] = c[0] + radius * t;
        p[1] = c[1] + radius * s * std::cos(phi);
        p[2] = c[2] + radius * s * std::sin(phi);
        r.nodes.push_back(p);
        r.weights.push_back(radius * radius * wt[std::size_t(i)] * wphi);
      }
    }
  } else if (m == 3) {
    // S^3 = Chebyshev-U rule in the first polar cosine (weight sqrt(1-t^2))
    // times an S^2 rule on the cross-section
    int nt = order / 2 + 2;
    QuadratureRule cross = sphere_quadrature(2, order);
    for (int k = 1; k <= nt; ++k) {
      double th = kPi * k / (nt + 1);
      double t = std::cos(th);
      double wt = kPi / (nt + 1) * std::sin(th) * std::sin(th);
      double s = std::sin(th);
      for (std::size_t j = 0; j < cross.size(); ++j) {
        Paravector p(3);
        p[0] = c[0] + radius * t;
        for (int i = 0; i < 3; ++i) p[i + 1] = c[i + 1] + radius * s * cross.nodes[j][i];
        r.nodes.push_back(p);
        r.weights.push_back(radius * radius * radius * wt * cross.weights[j]);
      }
    }
  } else {
    throw std::invalid_argument("sphere_quadrature: only m = 1, 2, 3 supported");
  }
  return r;
}

QuadratureRule transport_quadrature(const QuadratureRule& rule, const VahlenMatrix& V) {
  QuadratureRule out;
  out.order = rule.order;
  out.nodes.reserve(rule.size());
  out.weights.reserve(rule.size());
  const int m = V.m();
  for (std::size_t k = 0; k < rule.size(); ++k) {
    out.nodes.push_back(apply(V, rule.nodes[k]));
    double sc = conformal_scale(V, rule.nodes[k]);
    out.weights.push_back(rule.weights[k] * std::pow(sc, m));
  }
  return out;
}

QuadratureRule surface_quadrature(const BoundarySurface& s, int order) {
  QuadratureRule base = sphere_quadrature(s.m(), order, s.radius(), s.center());
  if (s.kind() == BoundarySurface::Kind::Sphere) return base;
  return transport_quadrature(base, s.map());
}

QuadratureRule refined_sphere_quadrature(int m, double radius, const Paravector& center,
                                         const Paravector& toward, int panels,
                                         int points_per_panel) {
  Paravector axis = toward - center;
  double an = axis.norm();
  if (an <= 0) throw std::invalid_argument("refined_sphere_quadrature: degenerate axis");
  axis = axis * (1.0 / an);

  std::vector<double> gx, gw;
  legendre::nodes(points_per_panel, gx, gw);

  // Panel edges in the polar angle measured from the axis, geometrically
  // refined toward 0.
  std::vector<double> edges;
  edges.push_back(0.0);
  double ratio = 0.65;
  std::vector<double> rev;
  double e = kPi;
  for (int i = 0; i < panels - 1; ++i) {
    rev.push_back(e);
    e *= ratio;
  }
  for (auto it = rev.rbegin(); it != rev.rend(); ++it) edges.push_back(*it);

  QuadratureRule r;
  r.order = -1;  // adaptive rule, no polynomial exactness claim

  // Orthonormal frame completing the axis.
  std::vector<Paravector> frame;
  for (int i = 0; i <= m; ++i) {
    Paravector cand(m);
    cand[i] = 1.0;
    // Gram-Schmidt against axis and previous frame vectors.
    auto dot = [&](const Paravector& x, const Paravector& y) {
      double s = 0;
      for (int j = 0; j <= m; ++j) s += x[j] * y[j];
      return s;
    };
    Paravector v = cand - axis * dot(cand, axis);
    for (const Paravector& f : frame) v -= f * dot(v, f);
    double n = v.norm();
    if (n > 1e-8) frame.push_back(v * (1.0 / n));
    if (int(frame.size()) == m) break;
  }

  if (m == 1) {
    // polar angle covers [0, pi] on both sides of the axis
    for (std::size_t pi_ = 0; pi_ + 1 < edges.size(); ++pi_) {
      double a = edges[pi_], b = edges[pi_ + 1];
      for (int q = 0; q < points_per_panel; ++q) {
        double th = 0.5 * (a + b) + 0.5 * (b - a) * gx[std::size_t(q)];
        double w = 0.5 * (b - a) * gw[std::size_t(q)] * radius;
        for (int side = -1; side <= 1; side += 2) {
          Paravector p = center + axis * (radius * std::cos(th)) +
                         frame[0] * (side * radius * std::sin(th));
          r.nodes.push_back(p);
          r.weights.push_back(w);
        }
      }
    }
  } else if (m == 2) {
    int nphi = 2 * points_per_panel;
    double wphi = 2.0 * kPi / nphi;
    for (std::size_t pi_ = 0; pi_ + 1 < edges.size(); ++pi_) {
      double a = edges[pi_], b = edges[pi_ + 1];
      for (int q = 0; q < points_per_panel; ++q) {
        double th = 0.5 * (a + b) + 0.5 * (b - a) * gx[std::size_t(q)];
        double wth = 0.5 * (b - a) * gw[std::size_t(q)] * std::sin(th) * radius * radius;
        for (int j = 0; j < nphi; ++j) {
          double phi = wphi * j;
          Paravector p = center + axis * (radius * std::cos(th)) +
                         frame[0] * (radius * std::sin(th) * std::cos(phi)) +
                         frame[1] * (radius * std::sin(th) * std::sin(phi));
          r.nodes.push_back(p);
          r.weights.push_back(wth * wphi);
        }
      }
    }
  } else {
    throw std::invalid_argument("refined_sphere_quadrature: only m = 1, 2");
  }
  return r;
}

namespace {

double chart_distance_sq(const BoundarySurface& s, const Paravector& z, double u, double v = 0.0) {
  Paravector p = s.chart(u, v);
  return (p - z).norm_sq();
}

}  // namespace

TangentBallData nearest_boundary_point(const BoundarySurface& s, const Paravector& z, double r0) {
  Paravector P(s.m());
  if (s.kind() == BoundarySurface::Kind::Sphere) {
    Paravector d = z - s.center();
    double dn = d.norm();
    if (dn <= 1e-12 * s.radius())
      throw std::domain_error("nearest_boundary_point: non-unique minimizer (ball center)");
    P = s.center() + d * (s.radius() / dn);
  } else {
    // coarse chart scan + local refinement
    double bu = 0, bv = 0, best = INFINITY;
    double second = INFINITY;
    double su = 0, sv = 0;
    if (s.m() == 1) {
      int n = 512;
      for (int i = 0; i < n; ++i) {
        double u = 2.0 * kPi * i / n;
        double d = chart_distance_sq(s, z, u);
        if (d < best) {
          second = best;
          su = bu;
          bu = u;
          best = d;
        } else if (d < second) {
          second = d;
          su = u;
        }
      }
      double ang_gap = std::abs(std::remainder(bu - su, 2.0 * kPi));
      if (second < best * (1.0 + 1e-6) && ang_gap > 0.2)
        throw std::domain_error("nearest_boundary_point: non-unique minimizer");
      double step = 2.0 * kPi / 512;
      for (int it = 0; it < 60; ++it) {
        for (int dir = -1; dir <= 1; ++dir) {
          double u = bu + dir * step;
          double d = chart_distance_sq(s, z, u);
          if (d < best) {
            best = d;
            bu = u;
          }
        }
        step *= 0.6;
      }
      P = s.chart(bu);
    } else {
      int nt = 96, np = 192;
      for (int i = 0; i <= nt; ++i) {
        double t = -1.0 + 2.0 * i / nt;
        for (int j = 0; j < np; ++j) {
          double phi = 2.0 * kPi * j / np;
          double d = chart_distance_sq(s, z, t, phi);
          if (d < best) {
            second = best;
            su = bu;
            sv = bv;
            bu = t;
            bv = phi;
            best = d;
          } else if (d < second) {
            second = d;
            su = t;
            sv = phi;
          }
        }
      }
      double param_gap = std::abs(bu - su) + std::abs(std::remainder(bv - sv, 2.0 * kPi));
      if (second < best * (1.0 + 1e-6) && param_gap > 0.2)
        throw std::domain_error("nearest_boundary_point: non-unique minimizer");
      double st = 2.0 / 96, sp = 2.0 * kPi / 192;
      for (int it = 0; it < 70; ++it) {
        for (int di = -1; di <= 1; ++di)
          for (int dj = -1; dj <= 1; ++dj) {
            double t = std::clamp(bu + di * st, -1.0, 1.0);
            double phi = bv + dj * sp;
            double d = chart_distance_sq(s, z, t, phi);
            if (d < best) {
              best = d;
              bu = t;
              bv = phi;
            }
          }
        st *= 0.7;
        sp *= 0.7;
      }
      P = s.chart(bu, bv);
    }
  }

  Paravector dir = P - z;
  double delta = dir.norm();
  if (delta <= 0) throw std::domain_error("nearest_boundary_point: z on the boundary");
  TangentBallData tb;
  tb.P = P;
  tb.C = P + dir * (r0 / delta);
  tb.r0 = r0;
  tb.delta = delta;
  return tb;
}

}  // namespace szg
