#include <cmath>
#include <complex>

#include "doctest.h"

#include "gl3twist/arith.hpp"

using gl3::gauss_G;
using gl3::gauss_brute;
using gl3::kronecker;

TEST_CASE("kronecker symbol pinned values") {
  CHECK(kronecker(2, 3) == -1);
  CHECK(kronecker(2, 15) == 1);
  CHECK(kronecker(8, 3) == -1);
  CHECK(kronecker(5, 5) == 0);
  CHECK(kronecker(1, 1) == 1);
  // chi_8 = (8/.) on odd n: period-8 pattern +,-,-,+ at 1,3,5,7.
  CHECK(kronecker(8, 1) == 1);
  CHECK(kronecker(8, 5) == -1);
  CHECK(kronecker(8, 7) == 1);
  CHECK(kronecker(8, 9) == 1);
  // Complete multiplicativity in the lower argument.
  for (long long a : {3, 8, 40, 21}) {
    for (long long m : {3, 5, 7, 9, 11}) {
      for (long long n : {3, 5, 13, 15}) {
        CHECK(kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n));
      }
    }
  }
}

TEST_CASE("square-free decomposition l = l1 l2^2") {
  auto t = gl3::squarefree_decompose(1);
  CHECK(t.l == 1);
  CHECK(t.l1 == 1);
  CHECK(t.l2 == 1);
  t = gl3::squarefree_decompose(45);
  CHECK(t.l1 == 5);
  CHECK(t.l2 == 3);
  t = gl3::squarefree_decompose(675);  // 3^3 5^2 = 3 * 15^2
  CHECK(t.l1 == 3);
  CHECK(t.l2 == 15);
  for (long long l : {1LL, 9LL, 45LL, 675LL, 3375LL, 88935LL}) {
    auto d = gl3::squarefree_decompose(l);
    CHECK(d.l1 * d.l2 * d.l2 == l);
    CHECK(gl3::squarefree_indicator(d.l1) == 1);
  }
  // Only odd twist indices are admitted.
  CHECK_THROWS_AS(gl3::squarefree_decompose(2), std::invalid_argument);
  CHECK_THROWS_AS(gl3::squarefree_decompose(12), std::invalid_argument);
  CHECK_THROWS_AS(gl3::squarefree_decompose(0), std::invalid_argument);
}

TEST_CASE("Mobius, square-free indicator, M_Y") {
  CHECK(gl3::mobius(1) == 1);
  CHECK(gl3::mobius(2) == -1);
  CHECK(gl3::mobius(4) == 0);
  CHECK(gl3::mobius(6) == 1);
  CHECK(gl3::mobius(30) == -1);
  CHECK(gl3::squarefree_indicator(18) == 0);
  CHECK(gl3::squarefree_indicator(15) == 1);

  // M_Y(d) with Y past sqrt(d) recovers mu^2(d).
  for (long long d = 1; d <= 300; ++d) {
    CHECK(gl3::MY(d, 20.0) == gl3::squarefree_indicator(d));
  }
  // Partial truncation: M_2(12) = mu(1) + mu(2) = 0.
  CHECK(gl3::MY(12, 2.0) == 0);
  CHECK(gl3::MY(45, 3.0) == 0);
  CHECK(gl3::MY(45, 2.0) == 1);

  auto blk = gl3::mobius_block(100, 120);
  for (long long d = 100; d <= 120; ++d) {
    CHECK(static_cast<int>(blk[static_cast<size_t>(d - 100)]) == gl3::mobius(d));
  }
}

TEST_CASE("factorize and prime table") {
  auto f = gl3::factorize(88935);
  REQUIRE(f.size() == 4);  // 3 * 5 * 7^2 * 11^2
  CHECK(f[0] == std::pair<long long, int>{3, 1});
  CHECK(f[1] == std::pair<long long, int>{5, 1});
  CHECK(f[2] == std::pair<long long, int>{7, 2});
  CHECK(f[3] == std::pair<long long, int>{11, 2});

  const auto& ps = gl3::prime_table();
  CHECK(ps[0] == 2);
  CHECK(ps[1] == 3);
  CHECK(ps[24] == 97);  // 25 primes below 100
}

TEST_CASE("Gauss sums: prime-power table pinned values") {
  // G_0(n) = phi(n) exactly when n is a perfect square.
  CHECK(gauss_G(0, 9).coeff == 6);
  CHECK(gauss_G(0, 9).radicand == 1);
  CHECK(gauss_G(0, 3).coeff == 0);
  CHECK(gauss_G(0, 225).coeff == 120);  // phi(225)
  // (k,n)=1, n square-free: G_k(n) = (k/n) sqrt(n).
  CHECK(gauss_G(1, 3).coeff == 1);
  CHECK(gauss_G(1, 3).radicand == 3);
  CHECK(gauss_G(2, 15).value() == doctest::Approx(std::sqrt(15.0)).epsilon(1e-14));
  // beta = alpha + 1 even case: G_3(9) = -3.
  CHECK(gauss_G(3, 9).coeff == -3);
  CHECK(gauss_G(3, 9).radicand == 1);
}

TEST_CASE("Gauss sums: closed form vs defining sum, small grid") {
  for (long long n = 1; n <= 45; n += 2) {
    for (long long k = -12; k <= 12; ++k) {
      auto g = gauss_G(k, n);
      std::complex<double> b = gauss_brute(k, n);
      CHECK(std::abs(b.imag()) < 1e-10);
      CHECK(std::abs(g.value() - b.real()) < 1e-9);
    }
  }
}

TEST_CASE("Gauss sums: multiplicative in n over coprime odd parts") {
  for (long long k : {0, 1, 2, 5, 12}) {
    auto lhs = gauss_G(k, 9 * 25);
    auto rhs = gauss_G(k, 9) * gauss_G(k, 25);
    CHECK(lhs.coeff == rhs.coeff);
    CHECK(lhs.radicand == rhs.radicand);
  }
}

TEST_CASE("Gauss brute rejects unsupported inputs") {
  CHECK_THROWS(gauss_brute(1, 4));
  CHECK_THROWS(gauss_brute(1, 20001));
}

TEST_CASE("powmod") {
  CHECK(gl3::powmod(2, 10, 1000) == 24);
  CHECK(gl3::powmod(3, 0, 7) == 1);
  CHECK(gl3::powmod(123456789ull, 987654321ull, 1000000007ull) == 652541198ull);
}
