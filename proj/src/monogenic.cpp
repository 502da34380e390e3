#include "szg/monogenic.hpp"

#include <algorithm>
#include <cmath>

namespace szg {

template <typename R>
MultivectorPolynomial<R> fueter_polynomial_by_permutations(int m, std::span<const int> alpha) {
  using P = MultivectorPolynomial<R>;
  std::vector<int> word;
  for (int i = 0; i < m; ++i)
    for (int c = 0; c < alpha[std::size_t(i)]; ++c) word.push_back(i + 1);
  if (word.empty()) return P::constant(Multivector<R>::scalar(m, R(1)));

  std::vector<P> vars;
  for (int i = 1; i <= m; ++i) vars.push_back(fueter_variable<R>(m, i));

  std::sort(word.begin(), word.end());
  P acc(m);
  long count = 0;
  do {
    P prod = P::constant(Multivector<R>::scalar(m, R(1)));
    for (int letter : word) prod = prod * vars[std::size_t(letter - 1)];
    acc += prod;
    ++count;
  } while (std::next_permutation(word.begin(), word.end()));
  return acc.scaled(R(1) / R(count));
}

template MultivectorPolynomial<double> fueter_polynomial_by_permutations<double>(
    int, std::span<const int>);
template MultivectorPolynomial<Rational> fueter_polynomial_by_permutations<Rational>(
    int, std::span<const int>);

namespace {

Paravector diff_or_throw(const Paravector& z, const Paravector& w0) {
  Paravector y = z - w0;
  if (y.norm() <= 0) throw std::domain_error("cauchy kernel: evaluation at the pole");
  return y;
}

}  // namespace

Mv cauchy_kernel(const CauchyKernelSpec& spec, const Paravector& z) {
  Paravector y = diff_or_throw(z, spec.w0);
  double n = y.norm();
  return y.conjugate().embed() * (spec.normalization / std::pow(n, y.m() + 1));
}

Mv cauchy_exact_Dbar(const CauchyKernelSpec& spec, const Paravector& z) {
  Paravector y = diff_or_throw(z, spec.w0);
  const int m = y.m();
  double n = y.norm();
  Mv ybar = y.conjugate().embed();
  Mv r = Mv::scalar(m, (1.0 - m) / std::pow(n, m + 1));
  r -= (ybar * ybar) * ((m + 1.0) / std::pow(n, m + 3));
  return r * spec.normalization;
}

Mv cauchy_exact_Dbar2(const CauchyKernelSpec& spec, const Paravector& z) {
  Paravector y = diff_or_throw(z, spec.w0);
  const int m = y.m();
  double n = y.norm();
  double y0 = y[0];
  Mv ybar = y.conjugate().embed();
  Mv term1 = (Mv::scalar(m, 2.0 * y0) + ybar) * (-(m + 1.0) / std::pow(n, m + 3));
  Mv term2 = ybar * ((m + 1.0) * (m + 3.0) * y0 * y0 / std::pow(n, m + 5));
  return (term1 + term2) * (4.0 * spec.normalization);
}

Mv cauchy_Dbar2_vector_slice(const CauchyKernelSpec& spec, const Paravector& z) {
  Paravector y = diff_or_throw(z, spec.w0);
  const int m = y.m();
  double n = y.norm();
  return y.conjugate().embed() * (-4.0 * (m + 1.0) * spec.normalization / std::pow(n, m + 3));
}

FieldHandle cauchy_field(const CauchyKernelSpec& spec) {
  Paravector w0 = spec.w0;
  return FieldHandle{
      w0.m(), [spec](const Paravector& z) { return cauchy_kernel(spec, z); },
      [w0](const Paravector& z) { return (z - w0).norm() > 1e-12; }};
}

Mv k2_value(const K2Spec& spec, const Paravector& z) {
  CauchyKernelSpec ck{spec.w0, 1.0};
  return cauchy_exact_Dbar(ck, z) - cauchy_exact_Dbar(ck, spec.p0);
}

Mv k2_Dbar(const K2Spec& spec, const Paravector& z) {
  CauchyKernelSpec ck{spec.w0, 1.0};
  return cauchy_exact_Dbar2(ck, z);
}

FieldHandle k2_test_function(const K2Spec& spec) {
  Paravector w0 = spec.w0;
  return FieldHandle{
      w0.m(), [spec](const Paravector& z) { return k2_value(spec, z); },
      [w0](const Paravector& z) { return (z - w0).norm() > 1e-12; }};
}

}  // namespace szg
