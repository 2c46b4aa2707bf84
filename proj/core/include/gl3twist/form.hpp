#pragma once
// GL(3) coefficient systems: forms built from Satake data, Hecke
// coefficients A(m,n), dual forms, and dense coefficient tables.

#include <array>
#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace gl3 {

using cplx = std::complex<double>;

struct Gl3Form {
  std::string label;
  // Archimedean Langlands parameters; the completed L-function carries
  // gamma factors prod_i Gamma((s + 1/2 - gamma_i)/2) up to pi powers.
  std::array<cplx, 3> gamma{};
  bool self_dual = true;
  double theta3_bound = 5.0 / 14.0;  // Kim-Sarnak quality bound for |A(p,1)|

  // Satake triple (alpha, beta, gamma) at p, with product 1.
  std::function<std::array<cplx, 3>(long long)> satake;
  // (A(p,1), A(1,p)) = (e1, e2) of the Satake triple; kept as its own
  // closure so presets can supply exact values without complex roots.
  std::function<std::pair<cplx, cplx>(long long)> hecke;
  // Set when a supplied GL(2) eigenvalue exceeded the Deligne range.
  std::shared_ptr<bool> deligne_warning = std::make_shared<bool>(false);

  std::pair<cplx, cplx> hecke_pair(long long p) const;
};

// Minimal-parabolic Eisenstein coefficients: A(n,1) = d_3(n).
Gl3Form d3_form();

// Symmetric-square lift of a GL(2) eigenform given its normalized Hecke
// eigenvalues: Satake (a_p^2, 1, a_p^{-2}) with a_p + a_p^{-1} = lambda(p),
// so A(p,1) = lambda(p)^2 - 1.
Gl3Form sym2_gl2_form(std::function<double(long long)> lambda, std::string label,
                      std::array<cplx, 3> gamma_params);

// The weight-12 discriminant-form preset, lambda(p) = tau(p)/p^{11/2}.
Gl3Form sym2_delta_form();

// One record per prime: `p re(a) im(a) re(b) im(b) re(c) im(c)`, `#` starts
// a comment. Triples must be unitary (|abc - 1| <= 1e-8). No archimedean
// data is carried in the file, so gamma defaults to (0,0,0).
Gl3Form satake_file_form(const std::string& path);

// "d3", "sym2delta", or a path to a Satake file.
Gl3Form build_form(const std::string& kind);

// Contragredient: Satake triples replaced by pairwise products, gamma
// negated; coefficients satisfy A~(m,n) = conj(A(n,m)).
Gl3Form dual(const Gl3Form& f);

std::complex<double> coeff_prime_power(const Gl3Form& f, long long p, int a, int b);
std::complex<double> coeff_general(const Gl3Form& f, long long m, long long n);

struct CoeffTable {
  long long N = 0;
  std::vector<cplx> a;  // a[n] = A(n,1) for 1 <= n <= N; a[0] unused
  const cplx& operator[](long long n) const { return a[static_cast<size_t>(n)]; }
};

// Dense A(n,1) for n <= N by a multiplicative sieve over smallest prime
// factors (one prime-power coefficient lookup per index).
CoeffTable coeff_table(const Gl3Form& f, long long N);

// Worst relative residual of the bilinear Hecke relation
//   A(m1,1) A(1,m2) = sum_{k | gcd(m1,m2)} A(m1/k, m2/k)
// over all 1 <= m1, m2 <= M.
double max_bilinear_residual(const Gl3Form& f, long long M);

}  // namespace gl3
