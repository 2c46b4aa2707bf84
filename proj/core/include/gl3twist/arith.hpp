#pragma once
// Exact integer number theory: Kronecker symbols, Mobius / square-free
// machinery, and quadratic Gauss sums G_k(n) for odd n with a brute-force
// oracle.  All G_k(n) values are exact integers times the square root of a
// square-free integer, and are stored that way.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gl3 {

// Kronecker symbol (a|n), full extension: n may be negative; n == 0 gives
// [|a| == 1].  Completely multiplicative in a for fixed n.
int kronecker(long long a, long long n);

// l = l1 * l2^2 with l1 square-free.  Only odd l are ever needed.
struct TwistIndex {
  long long l = 1;
  long long l1 = 1;  // square-free part
  long long l2 = 1;  // cofactor, l = l1 * l2^2
};

// Throws std::invalid_argument unless l is odd and positive.
TwistIndex squarefree_decompose(long long l);

// Shared prime table (ascending, sieved once up to at least 10^6).
const std::vector<long long>& prime_table();

// Factorization via the prime table.  Throws std::invalid_argument if a
// cofactor beyond the table's reach survives (desk scope is ~10^12).
std::vector<std::pair<long long, int>> factorize(long long n);

// mu(d) for d in [lo, hi), segmented sieve.
std::vector<int8_t> mobius_block(long long lo, long long hi);
int mobius(long long d);
int squarefree_indicator(long long d);

// M_Y(d) = sum over ell <= Y with ell^2 | d of mu(ell).  The square-free
// indicator mu^2(d) equals M_Y(d) + R_Y(d); taking Y past sqrt(d) makes the
// remainder vanish.
long long MY(long long d, double Y);

// Exact value of a quadratic Gauss sum: coeff * sqrt(radicand) with radicand
// square-free.  All G_k(n) for odd n are real.
struct GaussSumValue {
  long long coeff = 1;
  long long radicand = 1;  // square-free
  long long n = 1;
  long long k = 0;
  double value() const;
  // Multiply exactly; radicands combine with their common square factor
  // extracted so the product stays in coeff * sqrt(square-free) form.
  GaussSumValue operator*(const GaussSumValue& other) const;
};

// Closed-form G_k(n) for odd n >= 1 via multiplicativity over the prime
// factorization and the prime-power case table; k = 0 behaves as if the
// power of p dividing k were infinite.
GaussSumValue gauss_G(long long k, long long n);

// Defining character sum with its (1 -+ i)/2 prefactor, O(n) work.  Oracle
// for gauss_G; rejects n > 10^4 (quadratic total cost in tests) and even n.
std::complex<double> gauss_brute(long long k, long long n);

// x^e mod m for 64-bit m (128-bit intermediate products).
uint64_t powmod(uint64_t x, uint64_t e, uint64_t m);

}  // namespace gl3
