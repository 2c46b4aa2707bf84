#pragma once
// Exact-rational coefficient engine used by the identity checks: the same
// Hecke recursions as the floating-point path, run over GMP rationals so
// residuals of polynomial identities are exactly zero.  Practical for the
// presets (whose A(p,1) are rational) at moderate prime powers.

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gl3twist/coefficients.hpp"
#include "gl3twist/tau.hpp"

namespace gl3::exact {

using Rat = mpq_class;

inline std::pair<Rat, Rat> hecke_pair_d3() { return {Rat(3), Rat(3)}; }

// tau(p) as an exact integer, from the small series or the big table digits.
inline mpz_class tau_exact(long long p) {
  if (p <= 1000) {
    static const std::vector<long long> small = tau::tau_exact_table(1000);
    return mpz_class(static_cast<long>(small[p]));
  }
  tau::ensure_built(p);
  tau::TauDigits d = tau::big_table().digits(p);
  const auto& m = tau::big_table().moduli();
  mpz_class m0(static_cast<unsigned long>(m[0]));
  mpz_class m1(static_cast<unsigned long>(m[1]));
  return mpz_class(static_cast<long>(d.d0)) +
         m0 * (mpz_class(static_cast<long>(d.d1)) + m1 * mpz_class(static_cast<long>(d.d2)));
}

// (A(p,1), A(1,p)) for the symmetric-square discriminant-form preset:
// lambda(p)^2 - 1 = (tau(p)^2 - p^11) / p^11, exactly.
inline std::pair<Rat, Rat> hecke_pair_sym2_delta(long long p) {
  mpz_class t = tau_exact(p);
  mpz_class p11;
  mpz_ui_pow_ui(p11.get_mpz_t(), static_cast<unsigned long>(p), 11);
  Rat a(t * t - p11, p11);
  a.canonicalize();
  return {a, a};
}

inline std::pair<Rat, Rat> hecke_pair(const std::string& kind, long long p) {
  if (kind == "d3") return hecke_pair_d3();
  if (kind == "sym2delta") return hecke_pair_sym2_delta(p);
  throw std::invalid_argument("exact::hecke_pair: presets only");
}

inline Rat coeff_prime_power(const std::pair<Rat, Rat>& pr, int a, int b) {
  return coeff_prime_power_pair(pr.first, pr.second, a, b);
}

}  // namespace gl3::exact
