#pragma once
// Rankin-Selberg / symmetric-square coefficient machinery: the tensor
// coefficients lambda_{phi x phi}, the B and C recursion chains, the exact
// identity expressing A(p^{2h},1) through C, the six-parameter local Euler
// factor of the symmetric-square lift, and partial sums of |A(n^2,1)|.
//
// The recursion cores are scalar-templated so the identity checks can run
// over exact rationals as well as complex doubles.

#include <complex>
#include <vector>

#include "gl3twist/coefficients.hpp"
#include "gl3twist/form.hpp"

namespace gl3 {

// lambda_{phi x phi}(p^h) = sum_{3i+2j+k=h} A(p^j,p^k)^2 for h = 0..H.
template <class K>
std::vector<K> lambda_tensor_sequence(const K& ap1, const K& a1p, int H) {
  std::vector<K> h = hecke_h_sequence(ap1, a1p, H + 1);
  std::vector<K> lam(static_cast<size_t>(H) + 1, K(0));
  for (int hh = 0; hh <= H; ++hh) {
    K acc(0);
    for (int i = 0; 3 * i <= hh; ++i) {
      for (int j = 0; 3 * i + 2 * j <= hh; ++j) {
        int k = hh - 3 * i - 2 * j;
        K c = coeff_prime_power_from_h(h, j, k);
        acc = acc + c * c;
      }
    }
    lam[hh] = acc;
  }
  return lam;
}

// B(p^h) = lam(h) - A(1,p) lam(h-1) + A(p,1) lam(h-2) - lam(h-3), indices
// below zero contributing nothing; C repeats the same window on B.
template <class K>
std::vector<K> recursion_window(const std::vector<K>& src, const K& ap1, const K& a1p) {
  std::vector<K> out(src.size(), K(0));
  for (size_t h = 0; h < src.size(); ++h) {
    K v = src[h];
    if (h >= 1) v = v - a1p * src[h - 1];
    if (h >= 2) v = v + ap1 * src[h - 2];
    if (h >= 3) v = v - src[h - 3];
    out[h] = v;
  }
  return out;
}

// Residuals of A(p^{2h},1) - C(p^h) - A(1,p) C(p^{h-1}) for h = 0..H.
template <class K>
std::vector<K> square_identity_residuals(const K& ap1, const K& a1p, int H) {
  std::vector<K> lam = lambda_tensor_sequence(ap1, a1p, H);
  std::vector<K> B = recursion_window(lam, ap1, a1p);
  std::vector<K> C = recursion_window(B, ap1, a1p);
  std::vector<K> h = hecke_h_sequence(ap1, a1p, 2 * H);
  std::vector<K> res(static_cast<size_t>(H) + 1, K(0));
  for (int hh = 0; hh <= H; ++hh) {
    K rhs = C[hh];
    if (hh >= 1) rhs = rhs + a1p * C[hh - 1];
    res[hh] = h[2 * hh] - rhs;  // A(p^{2h},1) = h_{2h}
  }
  return res;
}

struct SymSquareLocal {
  long long p = 0;
  std::vector<cplx> lambda;  // lambda_{phi x phi}(p^h)
  std::vector<cplx> B;       // Dirichlet coefficients of the local sym^2 factor
  std::vector<cplx> C;       // after dividing by the dual local factor
};

// Tensor-square coefficient by direct enumeration of k^3 m^2 n = q.
std::complex<double> lambda_tensor(const Gl3Form& f, long long q);

// Local factor of L(s, sym^2 phi): six inverse linear factors over the
// squared and pairwise-product Satake parameters.
std::complex<double> sym2_local_factor(const Gl3Form& f, long long p, std::complex<double> s);

SymSquareLocal bc_coefficients(const Gl3Form& f, long long p, int H);

// max_h |A(p^{2h},1) - C(p^h) - A(1,p) C(p^{h-1})| over h <= H.
double verify_square_identity(const Gl3Form& f, long long p, int H);

// Sum_{n<=X} |A(n^2,1)| via a multiplicative sieve.
double partial_sum_abs_square_coeffs(const Gl3Form& f, long long X);

// Least-squares slope of log sum against log X across X, X/2, X/4.
double partial_sum_growth_exponent(const Gl3Form& f, long long X);

}  // namespace gl3
