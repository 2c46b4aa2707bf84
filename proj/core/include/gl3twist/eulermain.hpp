#pragma once
// Main-term constants for the twisted first moment: the three-case local
// factors G_{phi,p}(s;l), their product over odd primes with a tail
// certificate, the Dirichlet-series identity check, the partial L-value
// L^{{2}}(s, sym^2 phi) (Euler factor at 2 removed) and its residue for the
// symmetric-square preset, the shifted constant C_phi(l), the auxiliary
// modulus c_phi, and the local-ratio determination test.

#include <complex>
#include <utility>
#include <vector>

#include "gl3twist/archimedean.hpp"
#include "gl3twist/arith.hpp"
#include "gl3twist/form.hpp"

namespace gl3 {

// One local factor of G_phi(s;l), by the three-case closed form (p | l1;
// p | l2 with p coprime to l1; p coprime to l).  p must be odd.
std::complex<double> G_phi_p_local(const Gl3Form& f, long long p, const TwistIndex& twist,
                                   std::complex<double> s);

struct GProductResult {
  std::complex<double> value;
  double tail_bound;  // certified bound for |product beyond P| - 1 effects
};

// prod_{odd p <= P} G_{phi,p}(s;l), with a tail certificate formed from the
// measured local deviations on (P, 10P] plus a Kim-Sarnak envelope beyond.
GProductResult G_phi_product(const Gl3Form& f, const TwistIndex& twist, std::complex<double> s,
                             long long P);

// Matched-truncation check of the Dirichlet identity: both sides are
// developed as Dirichlet series over odd m <= M (the left by the
// coefficient engine, the right from the local-factor power series) so the
// returned residual reflects the identity, not the shared tail.
double dirichlet_vs_product_check(const Gl3Form& f, const TwistIndex& twist,
                                  std::complex<double> s, long long M);

// L(s, sym^2 phi) with the Euler factor at 2 removed, as a product over odd
// primes p <= P.
std::complex<double> L2_sym2(const Gl3Form& f, std::complex<double> s, long long P);

// lim_{s->1} (s-1) L^{{2}}(s, sym^2 phi) for the symmetric-square preset,
// via sym^2(sym^2 f) = sym^4 f (+) trivial, cross-checked by Richardson
// extrapolation of (s-1) L^{{2}}(s); >1% disagreement throws.
double residue_L2_sym2(const Gl3Form& f, long long P);

// C_phi(l) = G_phi(l) ((2/3) a - log pi + PhiCheck'(0)/PhiCheck(0))
//            + (4/3) G'_phi(1;l).
std::complex<double> C_phi(const Gl3Form& f, const TwistIndex& twist, const SmoothWeight& w);

// Smallest (a,b) in {1,2}^2 (lexicographic) with all four local factors
// nonvanishing at l = 3^a 5^b 7^2 11^2; returns that modulus.
long long compute_c_phi(const Gl3Form& f);

// (1 + p A(p,1)) / (p + A(1,p)).
std::complex<double> local_ratio(const Gl3Form& f, long long p);

struct DeterminationResult {
  bool separated = false;
  long long first_separating_prime = 0;
  std::vector<std::pair<long long, bool>> per_prime;  // (p, ratios agree)
};

// Compares local ratios of two forms over primes in [p_lo, p_hi]; equal
// ratios force equal A(p,1) (real parts by the ratio algebra, imaginary
// parts by the positivity of p^2 + 2p Re A + 1, asserted from the
// Kim-Sarnak bound for p >= 17).
DeterminationResult determination_test(const Gl3Form& fa, const Gl3Form& fb, long long p_lo,
                                       long long p_hi);

struct MainTermConstants {
  std::complex<double> G_phi_l;
  std::complex<double> G_phi_deriv;
  std::complex<double> L2_value_or_residue;
  std::complex<double> C_phi_l;
  std::complex<double> kappa;
  std::complex<double> a_coeff;
  long long c_phi = 0;
};

MainTermConstants main_term_constants(const Gl3Form& f, const TwistIndex& twist,
                                      const SmoothWeight& w, long long P);

}  // namespace gl3
