#pragma once
// Ramanujan tau values at primes, at two scales:
//   * an exact O(limit^2) table from Delta = q * J^8 with
//     J = sum_k (-1)^k (2k+1) q^{k(k+1)/2}  (Jacobi's cube identity),
//     used for small indices and as the oracle for the big pipeline;
//   * a multi-million-entry table of tau(p) built from
//     Delta = (E4^3 - E6^2)/1728 with power-series arithmetic done by
//     length-2^24 number-theoretic transforms modulo three word-sized
//     primes, recombined into balanced mixed-radix digits.
// tau(p) overflows int64 (and eventually int128) in the big range, so the
// table exposes lambda(p) = tau(p) / p^{11/2} in floating point plus the
// exact digit triple for integer reconstruction by callers that want it.

#include <cstdint>
#include <vector>

namespace gl3::tau {

// Exact tau(n) for 1 <= n <= limit; entry [0] is unused.  limit <= 2000 (int64 range).
std::vector<long long> tau_exact_table(long long limit);

// Balanced mixed-radix digits: tau = d0 + m0*(d1 + m1*d2) for moduli m0, m1.
struct TauDigits {
  long long d0 = 0, d1 = 0, d2 = 0;
};

class TauPrimeTable {
 public:
  // Builds (or extends) the table so every prime p <= limit is covered.
  // Verifies tau(p) = 1 + p^11 mod 691 for every entry and checks the
  // smallest primes against the exact series before accepting the run.
  void build(long long limit);

  bool built() const { return limit_ > 0; }
  long long limit() const { return limit_; }
  bool has(long long p) const;

  double lambda(long long p) const;  // tau(p) / p^{11/2}
  TauDigits digits(long long p) const;
  const std::vector<uint64_t>& moduli() const { return moduli_; }

 private:
  long long index_of(long long p) const;  // -1 if absent

  long long limit_ = 0;
  std::vector<uint64_t> moduli_;
  std::vector<long long> primes_;
  std::vector<TauDigits> digits_;
  std::vector<double> lambda_;
};

// Process-wide table shared by the coefficient machinery.
TauPrimeTable& big_table();

// Default size used when a coefficient request first needs a prime beyond
// the exact range: every prime below 2^23 (largest transform-safe span).
inline constexpr long long kBigTableLimit = 8388608;

// tau(p)/p^{11/2} for prime p: exact series for p <= 1000, big table above
// (built lazily at kBigTableLimit on first use).
double lambda_p(long long p);

// Force the big table to cover primes up to plimit.
void ensure_built(long long plimit);

}  // namespace gl3::tau
