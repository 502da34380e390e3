#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "szg/algebra.hpp"

// Polynomials in the m+1 real coordinates z_0..z_m with Multivector
// coefficients.  Monomials are real-valued, so coefficient placement does not
// affect values; coefficients are stored on the left and right-sided
// operators order their products explicitly.
namespace szg {

// Exponent vector packed one byte per variable (degrees < 256).
using monomial_key = std::uint64_t;

inline int key_exponent(monomial_key k, int var) { return int((k >> (8 * var)) & 0xff); }
inline monomial_key key_bump(monomial_key k, int var, int by) {
  return k + (monomial_key(by) << (8 * var));
}
inline int key_total_degree(monomial_key k) {
  int d = 0;
  while (k != 0) {
    d += int(k & 0xff);
    k >>= 8;
  }
  return d;
}

template <typename R>
class MultivectorPolynomial {
 public:
  MultivectorPolynomial() : m_(0) {}
  explicit MultivectorPolynomial(int m) : m_(m) {}

  static MultivectorPolynomial constant(const Multivector<R>& c) {
    MultivectorPolynomial p(c.m());
    p.add_term(0, c);
    return p;
  }
  static MultivectorPolynomial zero(int m) { return MultivectorPolynomial(m); }
  // the coordinate function z_var
  static MultivectorPolynomial coordinate(int m, int var) {
    MultivectorPolynomial p(m);
    p.add_term(key_bump(0, var, 1), Multivector<R>::scalar(m, R(1)));
    return p;
  }

  int m() const { return m_; }
  const std::map<monomial_key, Multivector<R>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int degree() const {
    int d = 0;
    for (const auto& [k, c] : terms_) d = std::max(d, key_total_degree(k));
    return d;
  }

  void add_term(monomial_key k, const Multivector<R>& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(k, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  MultivectorPolynomial& operator+=(const MultivectorPolynomial& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  MultivectorPolynomial& operator-=(const MultivectorPolynomial& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }
  friend MultivectorPolynomial operator+(MultivectorPolynomial a, const MultivectorPolynomial& b) {
    return a += b;
  }
  friend MultivectorPolynomial operator-(MultivectorPolynomial a, const MultivectorPolynomial& b) {
    return a -= b;
  }
  MultivectorPolynomial operator-() const {
    MultivectorPolynomial r(m_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
  }

  friend MultivectorPolynomial operator*(const MultivectorPolynomial& a,
                                         const MultivectorPolynomial& b) {
    MultivectorPolynomial r(a.m_);
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) r.add_term(ka + kb, ca * cb);
    return r;
  }

  MultivectorPolynomial scaled(const R& s) const {
    MultivectorPolynomial r(m_);
    if (s == R(0)) return r;
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, c * s);
    return r;
  }
  MultivectorPolynomial left_mul(const Multivector<R>& c) const {
    MultivectorPolynomial r(m_);
    for (const auto& [k, v] : terms_) r.add_term(k, c * v);
    return r;
  }
  MultivectorPolynomial right_mul(const Multivector<R>& c) const {
    MultivectorPolynomial r(m_);
    for (const auto& [k, v] : terms_) r.add_term(k, v * c);
    return r;
  }

  MultivectorPolynomial partial(int var) const {
    MultivectorPolynomial r(m_);
    for (const auto& [k, c] : terms_) {
      int e = key_exponent(k, var);
      if (e == 0) continue;
      r.add_term(key_bump(k, var, -1), c * R(e));
    }
    return r;
  }

  // blade-A scalar coefficient as a polynomial (times the unit blade)
  MultivectorPolynomial blade_component(blade_t a) const {
    MultivectorPolynomial r(m_);
    for (const auto& [k, c] : terms_) {
      if (c[a] == R(0)) continue;
      r.add_term(k, Multivector<R>::scalar(m_, c[a]));
    }
    return r;
  }

  MultivectorPolynomial conjugated() const {
    MultivectorPolynomial r(m_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, szg::conj(c));
    return r;
  }

  Multivector<R> eval(std::span<const R> z) const {
    Multivector<R> acc(m_);
    for (const auto& [k, c] : terms_) {
      R mono(1);
      for (int v = 0; v <= m_; ++v) {
        int e = key_exponent(k, v);
        for (int j = 0; j < e; ++j) mono *= z[std::size_t(v)];
      }
      acc += c * mono;
    }
    return acc;
  }

  // substitute z -> z + t
  MultivectorPolynomial translated(std::span<const R> t) const {
    MultivectorPolynomial r(m_);
    for (const auto& [k, c] : terms_) {
      MultivectorPolynomial term = constant(c);
      for (int v = 0; v <= m_; ++v) {
        int e = key_exponent(k, v);
        if (e == 0) continue;
        MultivectorPolynomial lin = coordinate(m_, v);
        lin.add_term(0, Multivector<R>::scalar(m_, t[std::size_t(v)]));
        for (int j = 0; j < e; ++j) term = term * lin;
      }
      r += term;
    }
    return r;
  }

  R max_abs_coeff() const {
    R best(0);
    for (const auto& [k, c] : terms_)
      for (blade_t a = 0; a < c.dim(); ++a) {
        R v = c[a] < R(0) ? -c[a] : c[a];
        if (v > best) best = v;
      }
    return best;
  }

 private:
  int m_;
  std::map<monomial_key, Multivector<R>> terms_;
};

using Poly = MultivectorPolynomial<double>;
using PolyQ = MultivectorPolynomial<Rational>;

inline Mv eval(const Poly& p, const Paravector& z) {
  std::vector<double> pt(std::size_t(p.m()) + 1);
  for (int i = 0; i <= p.m(); ++i) pt[std::size_t(i)] = z[i];
  return p.eval(pt);
}

inline Poly translated(const Poly& p, const Paravector& t) {
  std::vector<double> tt(std::size_t(p.m()) + 1);
  for (int i = 0; i <= p.m(); ++i) tt[std::size_t(i)] = t[i];
  return p.translated(tt);
}

template <typename R>
MultivectorPolynomial<R> to_poly_backend(const PolyQ& p);

// rational -> double lowering for kernels that only need float accuracy
Poly to_double(const PolyQ& p);

}  // namespace szg
