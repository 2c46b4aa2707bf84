#pragma once
// Scalar-generic Hecke coefficient engine for GL(3).
//
// Everything is driven by the pair (A(p,1), A(1,p)) at each prime through
// the recursion  h_{k+1} = A(p,1) h_k - A(1,p) h_{k-1} + h_{k-2}  for the
// complete homogeneous values h_k = A(p^k,1), and the Jacobi-Trudi
// determinant for the two-parameter coefficients
//   A(p^a, p^b) = s_{(a+b, b, 0)} = h_{a+b} h_b - h_{a+b+1} h_{b-1}.
// The determinant form survives repeated Satake parameters (where a
// bialternant quotient would divide by zero).
//
// The scalar K is std::complex<double> in the numeric engine and an exact
// rational type in the checking engine; it needs +, -, *, and K(int).

#include <vector>

namespace gl3 {

// h_0..h_len with h_0 = 1, h_1 = A(p,1).
template <class K>
std::vector<K> hecke_h_sequence(const K& ap1, const K& a1p, int len) {
  std::vector<K> h(static_cast<size_t>(len) + 1);
  h[0] = K(1);
  if (len >= 1) h[1] = ap1;
  for (int k = 1; k < len; ++k) {
    K v = ap1 * h[k] - a1p * h[k - 1];
    if (k >= 2) v = v + h[k - 2];
    h[k + 1] = v;
  }
  return h;
}

// A(p^a, p^b) given h_0..h_{a+b+1}; indices below zero contribute nothing.
template <class K>
K coeff_prime_power_from_h(const std::vector<K>& h, int a, int b) {
  if (a < 0 || b < 0) return K(0);
  K v = h[static_cast<size_t>(a) + b] * h[b];
  if (b >= 1) v = v - h[static_cast<size_t>(a) + b + 1] * h[b - 1];
  return v;
}

template <class K>
K coeff_prime_power_pair(const K& ap1, const K& a1p, int a, int b) {
  if (a < 0 || b < 0) return K(0);
  std::vector<K> h = hecke_h_sequence(ap1, a1p, a + b + 1);
  return coeff_prime_power_from_h(h, a, b);
}

}  // namespace gl3
