#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

// Real Clifford algebra Cl_{0,m}: generators e_1..e_m with e_i e_j + e_j e_i
// = -2 delta_ij.  Blades are indexed by subset bitmasks of {1..m} in canonical
// increasing order (bit i-1 set  <=>  e_i present), e_0 = blade 0 = 1.
// Coefficients are stored densely (2^m entries) and templated on the scalar
// ring: double for kernel numerics, exact rationals for identity checks.
namespace szg {

using Rational = boost::multiprecision::cpp_rational;

inline constexpr int kMaxGenerators = 6;

using blade_t = std::uint32_t;

inline int blade_grade(blade_t a) { return std::popcount(a); }

// Transposition count for merging e_A e_B into canonical order: number of
// pairs (i in A, j in B) with i > j.
inline int blade_reorder_swaps(blade_t a, blade_t b) {
  int swaps = 0;
  a >>= 1;
  while (a != 0) {
    swaps += std::popcount(a & b);
    a >>= 1;
  }
  return swaps;
}

// Sign of e_A * e_B (result blade is A xor B); each shared generator squares
// to -1.
inline int blade_product_sign(blade_t a, blade_t b) {
  int swaps = blade_reorder_swaps(a, b) + blade_grade(a & b);
  return (swaps & 1) ? -1 : 1;
}

// conj(e_A) = +e_A for |A| = 0,3 (mod 4), -e_A for |A| = 1,2 (mod 4).
inline int blade_conj_sign(blade_t a) {
  int g = blade_grade(a) & 3;
  return (g == 0 || g == 3) ? 1 : -1;
}

// reversion: +e_A for |A| = 0,1 (mod 4), -e_A for |A| = 2,3 (mod 4).
inline int blade_reverse_sign(blade_t a) {
  int g = blade_grade(a) & 3;
  return (g == 0 || g == 1) ? 1 : -1;
}

// Cached per-signature product sign table.
class Algebra {
 public:
  explicit Algebra(int m) : m_(m) {
    if (m < 1 || m > kMaxGenerators) throw std::invalid_argument("Algebra: m out of range");
    dim_ = 1u << m;
    signs_.resize(std::size_t(dim_) * dim_);
    for (blade_t a = 0; a < dim_; ++a)
      for (blade_t b = 0; b < dim_; ++b)
        signs_[std::size_t(a) * dim_ + b] = static_cast<std::int8_t>(blade_product_sign(a, b));
  }

  int m() const { return m_; }
  blade_t dim() const { return dim_; }
  int sign(blade_t a, blade_t b) const { return signs_[std::size_t(a) * dim_ + b]; }

  static const Algebra& get(int m);

 private:
  int m_;
  blade_t dim_;
  std::vector<std::int8_t> signs_;
};

template <typename R>
class Multivector {
 public:
  Multivector() : m_(0), coeffs_(1, R(0)) {}
  explicit Multivector(int m) : m_(m), coeffs_(std::size_t(1) << m, R(0)) {}
  Multivector(int m, blade_t blade, const R& value) : Multivector(m) { coeffs_[blade] = value; }

  static Multivector scalar(int m, const R& value) { return Multivector(m, 0, value); }
  static Multivector basis(int m, int i) {
    if (i < 1 || i > m) throw std::invalid_argument("basis: generator index out of range");
    return Multivector(m, blade_t(1) << (i - 1), R(1));
  }

  int m() const { return m_; }
  blade_t dim() const { return blade_t(coeffs_.size()); }
  const R& operator[](blade_t a) const { return coeffs_[a]; }
  R& operator[](blade_t a) { return coeffs_[a]; }
  const std::vector<R>& coeffs() const { return coeffs_; }

  bool is_zero() const {
    for (const R& c : coeffs_)
      if (c != R(0)) return false;
    return true;
  }

  Multivector& operator+=(const Multivector& o) {
    check(o);
    for (blade_t a = 0; a < dim(); ++a) coeffs_[a] += o.coeffs_[a];
    return *this;
  }
  Multivector& operator-=(const Multivector& o) {
    check(o);
    for (blade_t a = 0; a < dim(); ++a) coeffs_[a] -= o.coeffs_[a];
    return *this;
  }
  Multivector& operator*=(const R& s) {
    for (R& c : coeffs_) c *= s;
    return *this;
  }

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(Multivector a, const R& s) { return a *= s; }
  friend Multivector operator*(const R& s, Multivector a) { return a *= s; }
  Multivector operator-() const {
    Multivector r = *this;
    for (R& c : r.coeffs_) c = -c;
    return r;
  }

  friend Multivector operator*(const Multivector& a, const Multivector& b) {
    a.check(b);
    const Algebra& alg = Algebra::get(a.m_);
    Multivector r(a.m_);
    for (blade_t i = 0; i < a.dim(); ++i) {
      const R& ca = a.coeffs_[i];
      if (ca == R(0)) continue;
      for (blade_t j = 0; j < a.dim(); ++j) {
        const R& cb = b.coeffs_[j];
        if (cb == R(0)) continue;
        R term = ca * cb;
        if (alg.sign(i, j) < 0) term = -term;
        r.coeffs_[i ^ j] += term;
      }
    }
    return r;
  }

  bool operator==(const Multivector& o) const { return m_ == o.m_ && coeffs_ == o.coeffs_; }

 private:
  void check(const Multivector& o) const {
    if (m_ != o.m_) throw std::invalid_argument("Multivector: signature mismatch");
  }

  int m_;
  std::vector<R> coeffs_;
};

template <typename R>
Multivector<R> conj(const Multivector<R>& a) {
  Multivector<R> r(a.m());
  for (blade_t i = 0; i < a.dim(); ++i)
    r[i] = blade_conj_sign(i) < 0 ? -a[i] : a[i];
  return r;
}

template <typename R>
Multivector<R> reverse(const Multivector<R>& a) {
  Multivector<R> r(a.m());
  for (blade_t i = 0; i < a.dim(); ++i)
    r[i] = blade_reverse_sign(i) < 0 ? -a[i] : a[i];
  return r;
}

template <typename R>
R scalar_part(const Multivector<R>& a) {
  return a[0];
}

// R(a) = a - Sc(a)
template <typename R>
Multivector<R> vector_rest(const Multivector<R>& a) {
  Multivector<R> r = a;
  r[0] = R(0);
  return r;
}

template <typename R>
R norm_sq(const Multivector<R>& a) {
  R s(0);
  for (blade_t i = 0; i < a.dim(); ++i) s += a[i] * a[i];
  return s;
}

inline double norm(const Multivector<double>& a) { return std::sqrt(norm_sq(a)); }

// Sc(a * conj(b)); equals the coefficient dot product by blade orthonormality.
template <typename R>
R scalar_inner(const Multivector<R>& a, const Multivector<R>& b) {
  R s(0);
  for (blade_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

using Mv = Multivector<double>;
using MvQ = Multivector<Rational>;

// Paravector z = z_0 + z_1 e_1 + ... + z_m e_m, a point of R^{m+1}.
class Paravector {
 public:
  Paravector() : m_(0) { comps_.fill(0.0); }
  explicit Paravector(int m) : m_(m) {
    if (m < 1 || m > kMaxGenerators) throw std::invalid_argument("Paravector: m out of range");
    comps_.fill(0.0);
  }
  Paravector(int m, std::initializer_list<double> vals) : Paravector(m) {
    int i = 0;
    for (double v : vals) {
      if (i > m) break;
      comps_[i++] = v;
    }
  }

  int m() const { return m_; }
  double operator[](int i) const { return comps_[i]; }
  double& operator[](int i) { return comps_[i]; }

  double norm_sq() const {
    double s = 0.0;
    for (int i = 0; i <= m_; ++i) s += comps_[i] * comps_[i];
    return s;
  }
  double norm() const { return std::sqrt(norm_sq()); }

  Paravector conjugate() const {
    Paravector r = *this;
    for (int i = 1; i <= m_; ++i) r.comps_[i] = -r.comps_[i];
    return r;
  }

  // z^{-1} = conj(z)/|z|^2
  Paravector inverse() const {
    double n2 = norm_sq();
    if (n2 == 0.0) throw std::domain_error("Paravector::inverse: zero paravector");
    Paravector r = conjugate();
    for (int i = 0; i <= m_; ++i) r.comps_[i] /= n2;
    return r;
  }

  Paravector& operator+=(const Paravector& o) {
    for (int i = 0; i <= m_; ++i) comps_[i] += o.comps_[i];
    return *this;
  }
  Paravector& operator-=(const Paravector& o) {
    for (int i = 0; i <= m_; ++i) comps_[i] -= o.comps_[i];
    return *this;
  }
  Paravector& operator*=(double s) {
    for (int i = 0; i <= m_; ++i) comps_[i] *= s;
    return *this;
  }
  friend Paravector operator+(Paravector a, const Paravector& b) { return a += b; }
  friend Paravector operator-(Paravector a, const Paravector& b) { return a -= b; }
  friend Paravector operator*(Paravector a, double s) { return a *= s; }
  friend Paravector operator*(double s, Paravector a) { return a *= s; }
  Paravector operator-() const {
    Paravector r = *this;
    for (int i = 0; i <= m_; ++i) r.comps_[i] = -r.comps_[i];
    return r;
  }

  Mv embed() const {
    Mv r(m_);
    r[0] = comps_[0];
    for (int i = 1; i <= m_; ++i) r[blade_t(1) << (i - 1)] = comps_[i];
    return r;
  }

 private:
  int m_;
  std::array<double, kMaxGenerators + 1> comps_;
};

// Euclidean norm of the coefficient mass outside the paravector subspace,
// used for "is this still a paravector" checks after Moebius application.
double off_paravector_mass(const Mv& a);

// Extracts the paravector part; throws if the relative off-subspace mass
// exceeds tol.
Paravector to_paravector(const Mv& a, double tol = 1e-9);

// General multiplicative inverse in Cl_{0,m} (double backend), computed from
// the 2^m x 2^m left-multiplication matrix.  Throws on (numerically)
// non-invertible input.
Mv clifford_inverse(const Mv& a);

std::string to_string(const Mv& a);

}  // namespace szg
