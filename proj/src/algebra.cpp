#include "szg/algebra.hpp"

#include <memory>
#include <mutex>
#include <sstream>

namespace szg {

const Algebra& Algebra::get(int m) {
  static std::array<std::unique_ptr<Algebra>, kMaxGenerators + 1> cache;
  static std::mutex mu;
  if (m < 1 || m > kMaxGenerators) throw std::invalid_argument("Algebra::get: m out of range");
  std::lock_guard<std::mutex> lock(mu);
  if (!cache[m]) cache[m] = std::make_unique<Algebra>(m);
  return *cache[m];
}

double off_paravector_mass(const Mv& a) {
  double s = 0.0;
  for (blade_t i = 0; i < a.dim(); ++i) {
    if (blade_grade(i) <= 1) continue;
    s += a[i] * a[i];
  }
  return std::sqrt(s);
}

Paravector to_paravector(const Mv& a, double tol) {
  double total = norm(a);
  double off = off_paravector_mass(a);
  if (off > tol * std::max(total, 1e-300))
    throw std::domain_error("to_paravector: off-subspace mass " + std::to_string(off));
  Paravector z(a.m());
  z[0] = a[0];
  for (int i = 1; i <= a.m(); ++i) z[i] = a[blade_t(1) << (i - 1)];
  return z;
}

Mv clifford_inverse(const Mv& a) {
  const int n = int(a.dim());
  const Algebra& alg = Algebra::get(a.m());
  // Column j of L holds a * e_j expressed in blades.
  std::vector<double> L(std::size_t(n) * n, 0.0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      double c = a[blade_t(i)];
      if (c == 0.0) continue;
      int sign = alg.sign(blade_t(i), blade_t(j));
      L[std::size_t(i ^ j) * n + j] += sign * c;
    }
  // Solve L x = e_0 by partial-pivot elimination.
  std::vector<double> rhs(n, 0.0);
  rhs[0] = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(L[std::size_t(r) * n + col]) > std::abs(L[std::size_t(piv) * n + col])) piv = r;
    double p = L[std::size_t(piv) * n + col];
    if (std::abs(p) < 1e-14) throw std::domain_error("clifford_inverse: singular element");
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(L[std::size_t(piv) * n + c], L[std::size_t(col) * n + c]);
      std::swap(rhs[piv], rhs[col]);
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      double f = L[std::size_t(r) * n + col] / p;
      if (f == 0.0) continue;
      for (int c = col; c < n; ++c) L[std::size_t(r) * n + c] -= f * L[std::size_t(col) * n + c];
      rhs[r] -= f * rhs[col];
    }
  }
  Mv x(a.m());
  for (int i = 0; i < n; ++i) x[blade_t(i)] = rhs[i] / L[std::size_t(i) * n + i];
  return x;
}

std::string to_string(const Mv& a) {
  std::ostringstream os;
  bool first = true;
  for (blade_t i = 0; i < a.dim(); ++i) {
    if (a[i] == 0.0) continue;
    if (!first) os << " + ";
    os << a[i];
    if (i != 0) {
      os << "*e";
      for (int g = 1; g <= a.m(); ++g)
        if (i & (blade_t(1) << (g - 1))) os << g;
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace szg
