#pragma once

#include <map>
#include <span>
#include <vector>

#include "szg/calculus.hpp"

// Concrete left-monogenic families: the Fueter variables z_i - z_0 e_i, their
// symmetrized products (a Taylor-type basis of homogeneous monogenic
// polynomials), the Cauchy kernel conj(z)/|z|^{m+1}, and the boundary test
// function built from its Dbar-derivative.
namespace szg {

template <typename R>
MultivectorPolynomial<R> fueter_variable(int m, int i) {
  using P = MultivectorPolynomial<R>;
  P p = P::coordinate(m, i);
  P z0 = P::coordinate(m, 0);
  p -= z0.right_mul(Multivector<R>::basis(m, i));
  return p;
}

// Symmetrized product over the multiset alpha (alpha[i-1] copies of the i-th
// Fueter variable), built by the grouping recurrence
//   V_alpha = (1/|alpha|) sum_i alpha_i V_{alpha - e_i} z_i ,
// which reproduces the permutation-average without factorial blowup.
template <typename R>
MultivectorPolynomial<R> fueter_polynomial(int m, std::span<const int> alpha) {
  using P = MultivectorPolynomial<R>;
  std::vector<int> a(alpha.begin(), alpha.end());
  int k = 0;
  for (int v : a) k += v;
  if (k == 0) return P::constant(Multivector<R>::scalar(m, R(1)));

  std::map<std::vector<int>, P> level;  // polynomials of the current degree
  level[std::vector<int>(std::size_t(m), 0)] = P::constant(Multivector<R>::scalar(m, R(1)));
  std::vector<P> vars;
  for (int i = 1; i <= m; ++i) vars.push_back(fueter_variable<R>(m, i));

  for (int deg = 1; deg <= k; ++deg) {
    std::map<std::vector<int>, P> next;
    for (const auto& [idx, poly] : level) {
      for (int i = 0; i < m; ++i) {
        if (idx[std::size_t(i)] >= a[std::size_t(i)]) continue;
        std::vector<int> nidx = idx;
        nidx[std::size_t(i)] += 1;
        P contrib = (poly * vars[std::size_t(i)]).scaled(R(nidx[std::size_t(i)]) / R(deg));
        auto it = next.find(nidx);
        if (it == next.end())
          next.emplace(nidx, contrib);
        else
          it->second += contrib;
      }
    }
    level = std::move(next);
  }
  return level.at(a);
}

// Reference implementation by explicit enumeration of distinct orderings of
// the multiset; used as the oracle for the recurrence at small degree.
template <typename R>
MultivectorPolynomial<R> fueter_polynomial_by_permutations(int m, std::span<const int> alpha);

enum class BasisMode { CliffordModule, RealSpan };

template <typename R>
struct BasisSet {
  int m = 0;
  int max_degree = 0;
  BasisMode mode = BasisMode::CliffordModule;
  std::vector<MultivectorPolynomial<R>> elems;
  std::vector<int> degrees;  // homogeneity degree per element
};

// All V_alpha with |alpha| <= N ordered by degree then lexicographic alpha;
// RealSpan additionally right-multiplies each by every blade (ascending
// index), giving a real spanning set.
template <typename R>
BasisSet<R> basis_up_to_degree(int N, int m, BasisMode mode = BasisMode::CliffordModule) {
  BasisSet<R> out;
  out.m = m;
  out.max_degree = N;
  out.mode = mode;

  std::vector<std::vector<int>> indices;
  std::vector<int> cur(std::size_t(m), 0);
  for (int deg = 0; deg <= N; ++deg) {
    // lexicographic enumeration of alpha with |alpha| = deg
    std::vector<std::vector<int>> level;
    std::vector<int> a(std::size_t(m), 0);
    // recursive fill via explicit stack
    struct Frame {
      int var;
      int rem;
    };
    std::vector<int> stackval(std::size_t(m), 0);
    // simple recursive lambda
    auto rec = [&](auto&& self, int var, int rem) -> void {
      if (var == m - 1) {
        stackval[std::size_t(var)] = rem;
        level.push_back(stackval);
        return;
      }
      for (int v = rem; v >= 0; --v) {
        stackval[std::size_t(var)] = v;
        self(self, var + 1, rem - v);
      }
    };
    if (m == 0) continue;
    rec(rec, 0, deg);
    for (auto& a2 : level) indices.push_back(a2);
  }

  for (const auto& alpha : indices) {
    MultivectorPolynomial<R> v = fueter_polynomial<R>(m, alpha);
    int deg = 0;
    for (int x : alpha) deg += x;
    if (mode == BasisMode::CliffordModule) {
      out.elems.push_back(v);
      out.degrees.push_back(deg);
    } else {
      for (blade_t a = 0; a < (blade_t(1) << m); ++a) {
        out.elems.push_back(v.right_mul(Multivector<R>(m, a, R(1))));
        out.degrees.push_back(deg);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cauchy kernel (normalization constant omitted; only ratios and signs are
// consumed downstream).

struct CauchyKernelSpec {
  Paravector w0;
  double normalization = 1.0;
};

// conj(y)/|y|^{m+1} at y = z - w0
Mv cauchy_kernel(const CauchyKernelSpec& spec, const Paravector& z);

// closed form of Dbar applied to the kernel, valid off the pole:
//   (1-m)/|y|^{m+1} - (m+1) conj(y)^2 / |y|^{m+3}
Mv cauchy_exact_Dbar(const CauchyKernelSpec& spec, const Paravector& z);

// closed form of Dbar^2 (= 4 d0^2 on the monogenic kernel):
//   4 [ -(m+1)(2 y_0 + conj(y))/|y|^{m+3} + (m+1)(m+3) y_0^2 conj(y)/|y|^{m+5} ]
Mv cauchy_exact_Dbar2(const CauchyKernelSpec& spec, const Paravector& z);

// The reduced display -4(m+1) conj(y)/|y|^{m+3}; coincides with the full
// closed form exactly on the slice y_0 = 0 (the tangent-ball geometry).
Mv cauchy_Dbar2_vector_slice(const CauchyKernelSpec& spec, const Paravector& z);

FieldHandle cauchy_field(const CauchyKernelSpec& spec);

// Boundary test function K2(z) = Dbar K(z - w0) - Dbar K(p0 - w0): monogenic
// on any domain avoiding w0 and vanishing at p0.
struct K2Spec {
  Paravector w0;  // exterior pole
  Paravector p0;  // designated zero
};

Mv k2_value(const K2Spec& spec, const Paravector& z);
Mv k2_Dbar(const K2Spec& spec, const Paravector& z);  // = Dbar^2 K(z - w0)
FieldHandle k2_test_function(const K2Spec& spec);

}  // namespace szg
