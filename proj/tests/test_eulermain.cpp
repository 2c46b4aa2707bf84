// Main-term constant machinery: three-case local factors, certified Euler
// products, the Dirichlet-series identity, partial symmetric-square
// L-values and their residue gate, C_phi, c_phi, and the local-ratio
// determination test.

#include <cmath>
#include <complex>
#include <stdexcept>

#include "doctest.h"
#include "gl3twist/archimedean.hpp"
#include "gl3twist/arith.hpp"
#include "gl3twist/eulermain.hpp"
#include "gl3twist/form.hpp"

using gl3::cplx;

static gl3::TwistIndex twist_of(long long l) { return gl3::squarefree_decompose(l); }

TEST_CASE("local factors for d3 at p=3, s=1: the three closed forms") {
  auto f = gl3::d3_form();
  // p coprime to l: bracket (8/27) times the removable-denominator factor.
  cplx g1 = gl3::G_phi_p_local(f, 3, twist_of(1), cplx(1.0));
  CHECK(std::abs(g1 - cplx(340.0 / 729.0)) < 1e-12);
  // p | l1 (l = 3): (A + x) * bracket = (10/3)(8/27).
  cplx g3 = gl3::G_phi_p_local(f, 3, twist_of(3), cplx(1.0));
  CHECK(std::abs(g3 - cplx(80.0 / 81.0)) < 1e-12);
  // p | l2, p coprime to l1 (l = 9): (1 + A'x) * bracket = 2 * 8/27.
  cplx g9 = gl3::G_phi_p_local(f, 3, twist_of(9), cplx(1.0));
  CHECK(std::abs(g9 - cplx(16.0 / 27.0)) < 1e-12);
  // A prime not dividing l = 9 still uses the generic branch.
  cplx g5 = gl3::G_phi_p_local(f, 5, twist_of(9), cplx(1.0));
  CHECK(std::abs(g5 - gl3::G_phi_p_local(f, 5, twist_of(1), cplx(1.0))) < 1e-14);
}

TEST_CASE("local factor rejects p = 2 and flags a vanishing denominator") {
  auto f = gl3::d3_form();
  CHECK_THROWS_AS((void)gl3::G_phi_p_local(f, 2, twist_of(1), cplx(2.0)),
                  std::invalid_argument);
  // Synthetic coefficients with A(1,3) = -3 make 3^s + A(1,p) vanish at s=1.
  gl3::Gl3Form bad;
  bad.label = "synthetic-pole";
  bad.hecke = [](long long) { return std::make_pair(cplx(0.0), cplx(-3.0)); };
  CHECK_THROWS_AS((void)gl3::G_phi_p_local(bad, 3, twist_of(1), cplx(1.0)),
                  std::domain_error);
}

TEST_CASE("Euler product over odd primes carries an honest tail certificate") {
  auto f = gl3::d3_form();
  auto t = twist_of(1);
  auto lo = gl3::G_phi_product(f, t, cplx(1.0), 501);
  auto hi = gl3::G_phi_product(f, t, cplx(1.0), 5001);
  CHECK(std::abs(hi.value - lo.value) <= lo.tail_bound);
  CHECK(hi.tail_bound < lo.tail_bound);
  CHECK(lo.tail_bound < 0.05 * std::abs(lo.value));
  // Same behaviour on the symmetric-square preset (exact-series prime range).
  auto fs = gl3::sym2_delta_form();
  auto slo = gl3::G_phi_product(fs, twist_of(3), cplx(1.0), 101);
  auto shi = gl3::G_phi_product(fs, twist_of(3), cplx(1.0), 997);
  CHECK(std::abs(shi.value - slo.value) <= slo.tail_bound);
  CHECK_THROWS_AS((void)gl3::G_phi_product(f, t, cplx(1.0), 2), std::invalid_argument);
}

TEST_CASE("Dirichlet series equals the Euler product under matched truncation") {
  auto f = gl3::d3_form();
  for (long long l : {1LL, 3LL, 9LL, 15LL, 45LL})
    CHECK(gl3::dirichlet_vs_product_check(f, twist_of(l), cplx(2.0), 2000) < 1e-9);
  auto fs = gl3::sym2_delta_form();
  for (long long l : {1LL, 3LL})
    CHECK(gl3::dirichlet_vs_product_check(fs, twist_of(l), cplx(2.0), 999) < 1e-9);
}

TEST_CASE("partial symmetric-square L-value for d3 collapses to zeta powers") {
  // For d3 the local sym^2 factor at p is (1-p^{-s})^{-6}, so the product
  // over odd p <= P approaches (zeta(2)(1 - 2^{-2}))^6 = (pi^2/8)^6.
  cplx v = gl3::L2_sym2(gl3::d3_form(), cplx(2.0), 200000);
  double want = std::pow(M_PI * M_PI / 8.0, 6);
  CHECK(std::abs(v - cplx(want)) < 2e-4 * want);
  CHECK_THROWS_AS((void)gl3::L2_sym2(gl3::d3_form(), cplx(2.0), 2), std::invalid_argument);
}

TEST_CASE("symmetric-square residue is gated to the right forms") {
  // d3's symmetric square is six zeta factors: the residue at s=1 has pole
  // order six, not one, and the request must be refused loudly.
  CHECK_THROWS_AS((void)gl3::residue_L2_sym2(gl3::d3_form(), 1000), std::domain_error);
  // Non-self-dual synthetic input is refused as well.
  gl3::Gl3Form g;
  g.label = "sym2-synthetic";
  g.self_dual = false;
  g.hecke = [](long long) { return std::make_pair(cplx(0.1), cplx(0.1)); };
  CHECK_THROWS_AS((void)gl3::residue_L2_sym2(g, 1000), std::domain_error);
}

TEST_CASE("C_phi for d3 at l = 1 is finite, real, and stable in P") {
  auto f = gl3::d3_form();
  gl3::SmoothWeight w;
  cplx c = gl3::C_phi(f, twist_of(1), w);
  CHECK(std::isfinite(c.real()));
  CHECK(std::abs(c.imag()) < 1e-9 * std::max(1.0, std::abs(c.real())));
  CHECK(std::abs(c) < 1e3);
}

TEST_CASE("auxiliary modulus c_phi for d3") {
  CHECK(gl3::compute_c_phi(gl3::d3_form()) == 88935);  // 3 * 5 * 7^2 * 11^2
}

TEST_CASE("local ratio values and singular input") {
  auto f = gl3::d3_form();
  // (1 + 3p)/(p + 3) at p=3 gives 10/6 = 5/3.
  CHECK(std::abs(gl3::local_ratio(f, 3) - cplx(5.0 / 3.0)) < 1e-14);
  gl3::Gl3Form bad;
  bad.label = "synthetic-pole";
  bad.hecke = [](long long) { return std::make_pair(cplx(0.0), cplx(-5.0)); };
  CHECK_THROWS_AS((void)gl3::local_ratio(bad, 5), std::domain_error);
}

TEST_CASE("determination: identical forms never separate, distinct ones do") {
  auto f = gl3::d3_form();
  auto same = gl3::determination_test(f, gl3::d3_form(), 17, 97);
  CHECK_FALSE(same.separated);
  CHECK(same.first_separating_prime == 0);
  CHECK(same.per_prime.size() == 19);  // primes in [17, 97]
  for (auto& [p, agree] : same.per_prime) { (void)p; CHECK(agree); }

  auto fs = gl3::sym2_delta_form();
  auto diff = gl3::determination_test(f, fs, 17, 97);
  CHECK(diff.separated);
  CHECK(diff.first_separating_prime == 17);
  CHECK_FALSE(diff.per_prime.front().second);
  // Direct confirmation at p=17: d3 has A(17,1)=3 while the lift carries
  // lambda(17)^2 - 1 built from tau(17) = -6905934.
  double lam = -6905934.0 / std::pow(17.0, 5.5);
  CHECK(std::abs(fs.hecke_pair(17).first - cplx(lam * lam - 1.0)) < 1e-12);
  CHECK(std::abs(f.hecke_pair(17).first - cplx(3.0)) < 1e-15);
}

TEST_CASE("main-term constants refuse the degenerate self-dual preset") {
  // The self-dual branch needs the simple residue of the symmetric-square
  // L-function; d3's has a higher-order pole, so assembly must throw.
  auto f = gl3::d3_form();
  gl3::SmoothWeight w;
  CHECK_THROWS_AS((void)gl3::main_term_constants(f, twist_of(1), w, 10000),
                  std::domain_error);
}
