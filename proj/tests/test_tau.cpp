// Ramanujan tau machinery and the number-theoretic transform layer.
// The multi-million-entry table is deliberately NOT built here (it costs
// about a minute); its always-on congruence and series cross-checks are
// exercised by the long-running acceptance program instead.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "gl3twist/ntt.hpp"
#include "gl3twist/tau.hpp"

TEST_CASE("exact tau series: classical values and multiplicativity") {
  auto t = gl3::tau::tau_exact_table(100);
  CHECK(t[1] == 1);
  CHECK(t[2] == -24);
  CHECK(t[3] == 252);
  CHECK(t[5] == 4830);
  CHECK(t[7] == -16744);
  CHECK(t[11] == 534612);
  CHECK(t[6] == t[2] * t[3]);   // multiplicative
  CHECK(t[4] == t[2] * t[2] - 2048);  // tau(4) = tau(2)^2 - 2^11
  CHECK_THROWS_AS((void)gl3::tau::tau_exact_table(2001), std::invalid_argument);
}

TEST_CASE("691 congruence tau(p) = 1 + p^11 (mod 691) on the exact range") {
  auto t = gl3::tau::tau_exact_table(1000);
  for (long long p = 2; p <= 1000; ++p) {
    bool is_p = true;
    for (long long q = 2; q * q <= p; ++q)
      if (p % q == 0) { is_p = false; break; }
    if (!is_p) continue;
    long long rhs = 1;
    for (int i = 0; i < 11; ++i) rhs = (rhs * (p % 691)) % 691;
    rhs = (rhs + 1) % 691;
    long long lhs = ((t[p] % 691) + 691) % 691;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("lambda_p: normalized eigenvalue from the exact series") {
  // lambda(2) = -24 / 2^{11/2}
  CHECK(gl3::tau::lambda_p(2) == doctest::Approx(-24.0 / std::pow(2.0, 5.5)).epsilon(1e-14));
  CHECK(gl3::tau::lambda_p(3) == doctest::Approx(252.0 / std::pow(3.0, 5.5)).epsilon(1e-14));
  // Deligne: |lambda(p)| <= 2 for every prime in the exact range.
  for (long long p : {2LL, 3LL, 5LL, 7LL, 11LL, 13LL, 997LL})
    CHECK(std::abs(gl3::tau::lambda_p(p)) <= 2.0);
}

TEST_CASE("NTT moduli: k*2^24 + 1 primes below 2^63, distinct, largest first") {
  auto ps = gl3::ntt::find_ntt_primes(3, 24);
  REQUIRE(ps.size() == 3);
  for (uint64_t p : ps) {
    CHECK(gl3::ntt::is_prime_u64(p));
    CHECK(p % (uint64_t(1) << 24) == 1);
    CHECK(p < (uint64_t(1) << 63));
  }
  CHECK(ps[0] > ps[1]);
  CHECK(ps[1] > ps[2]);
}

TEST_CASE("Miller-Rabin on known primes and composites") {
  CHECK(gl3::ntt::is_prime_u64(2));
  CHECK(gl3::ntt::is_prime_u64(997));
  CHECK(gl3::ntt::is_prime_u64(2147483647ULL));          // 2^31 - 1
  CHECK(gl3::ntt::is_prime_u64(18446744073709551557ULL));  // largest 64-bit prime
  CHECK_FALSE(gl3::ntt::is_prime_u64(1));
  CHECK_FALSE(gl3::ntt::is_prime_u64(561));      // Carmichael
  CHECK_FALSE(gl3::ntt::is_prime_u64(3215031751ULL));  // strong pseudoprime to 2,3,5,7
}

TEST_CASE("Montgomery NTT: inverse undoes forward") {
  auto ps = gl3::ntt::find_ntt_primes(1, 24);
  gl3::ntt::MontgomeryNtt ntt(ps[0]);
  std::mt19937_64 rng(12345);
  std::vector<uint64_t> a(1024), orig;
  for (auto& x : a) x = rng() % ps[0];
  orig = a;
  ntt.forward(a);
  ntt.inverse(a);
  CHECK(a == orig);
}

TEST_CASE("NTT cyclic convolution matches schoolbook") {
  auto ps = gl3::ntt::find_ntt_primes(1, 24);
  uint64_t p = ps[0];
  gl3::ntt::MontgomeryNtt ntt(p);
  const size_t L = 64;
  std::mt19937_64 rng(999);
  std::vector<uint64_t> a(L), b(L);
  for (auto& x : a) x = rng() % 1000000;
  for (auto& x : b) x = rng() % 1000000;
  // Schoolbook cyclic convolution mod p.
  std::vector<uint64_t> want(L, 0);
  for (size_t i = 0; i < L; ++i)
    for (size_t j = 0; j < L; ++j) {
      size_t k = (i + j) % L;
      want[k] = (want[k] + ntt.mul(a[i] % p, b[j] % p)) % p;
    }
  // Transform, multiply frequency samples elementwise, transform back.
  std::vector<uint64_t> fa = a, fb = b;
  ntt.forward(fa);
  ntt.forward(fb);
  ntt.pointwise_mul(fa, fb);
  ntt.inverse(fa);
  CHECK(fa == want);
  // Squaring path agrees with self-multiplication in the frequency domain.
  std::vector<uint64_t> s1 = a, s2 = a;
  ntt.forward(s1);
  ntt.forward(s2);
  ntt.pointwise_square(s1);
  std::vector<uint64_t> s2f = s2;
  ntt.pointwise_mul(s2f, s2);
  CHECK(s1 == s2f);
  ntt.inverse(s1);
  // Self-convolution of a equals the schoolbook square.
  std::vector<uint64_t> want2(L, 0);
  for (size_t i = 0; i < L; ++i)
    for (size_t j = 0; j < L; ++j) {
      size_t k = (i + j) % L;
      want2[k] = (want2[k] + ntt.mul(a[i] % p, a[j] % p)) % p;
    }
  CHECK(s1 == want2);
}
