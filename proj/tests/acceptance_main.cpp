// Acceptance program: thirteen numbered checks, one pass/fail line each,
// exit code = number of failed criteria.
//
// Execution order differs from numbering: the light identity checks run
// first, and the first check that needs multi-million-index coefficients
// (13) runs before the moment criteria (9, 8, 10) so the one-time build of
// the big eigenvalue table is paid exactly once.  Lines print in numeric
// order at the end.
//
// Criterion 5's first clause (|V(1e-6) - 1| < 1e-4) is expected to fail:
// the kernel approaches its y -> 0 limit only like 1 + O(sqrt(y) log^2 y)
// because the gamma product has a triple pole at s = -1/2 for this gamma
// preset, and sqrt(1e-6) log^2(1e-6) is of order 0.19.  The measured gap,
// about 3.8e-2, is intrinsic to the kernel, not a quadrature artifact; the
// line reports the measured value.
//
// Criterion 10 (l=3 ratio window) is a statistical near-miss at this scale
// and also reports fail: the chi_{8d}(3)-signed moment at X = 500 cancels to
// about 4.6% of its unsigned mass (-0.342 against 7.40 for l=1), so the
// ratio to a prediction five times smaller than l=1's carries O(1) relative
// fluctuation.  Measured ratios wander 0.48 / 1.82 / 0.37 at X = 125 / 250 /
// 500 with no trend, while the l=9 control (trivial square-free part, so the
// same normalization path as l=1) tracks the l=1 ratio to a few percent at
// every X — the normalization is right and the window floor 0.4 is simply
// crossed by this deterministic draw at 0.3706.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "gl3twist/archimedean.hpp"
#include "gl3twist/arith.hpp"
#include "gl3twist/coefficients.hpp"
#include "gl3twist/eulermain.hpp"
#include "gl3twist/exact.hpp"
#include "gl3twist/form.hpp"
#include "gl3twist/moments.hpp"
#include "gl3twist/symsq.hpp"

namespace {

using gl3::cplx;
using clock_type = std::chrono::steady_clock;

std::vector<std::string> g_lines(14);
int g_failures = 0;

std::string fmt(const char* pattern, ...) {
  char buf[768];
  va_list ap;
  va_start(ap, pattern);
  std::vsnprintf(buf, sizeof(buf), pattern, ap);
  va_end(ap);
  return buf;
}

void record(int idx, bool ok, const std::string& detail, double secs) {
  g_lines[static_cast<size_t>(idx)] =
      fmt("criterion %d: %s — %s (%.2f s)", idx, ok ? "PASS" : "FAIL", detail.c_str(), secs);
  if (!ok) ++g_failures;
  std::fprintf(stderr, "[acceptance] criterion %d done in %.2f s: %s\n", idx, secs,
               ok ? "pass" : "fail");
}

template <class F>
void run(int idx, F&& body) {
  auto t0 = clock_type::now();
  bool ok = false;
  std::string detail;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    ok = false;
    detail += std::string(detail.empty() ? "" : "; ") + "exception: " + e.what();
  }
  double secs = std::chrono::duration<double>(clock_type::now() - t0).count();
  record(idx, ok, detail, secs);
}

double elapsed(const clock_type::time_point& t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

}  // namespace

int main() {
  gl3::SmoothWeight weight;

  // ---- 1: Gauss-sum closed form vs brute oracle -------------------------
  run(1, [](std::string& detail) {
    auto t0 = clock_type::now();
    double worst = 0.0, worst_im = 0.0;
    for (long long n = 1; n <= 225; n += 2) {
      for (long long k = -60; k <= 60; ++k) {
        auto g = gl3::gauss_G(k, n);
        auto b = gl3::gauss_brute(k, n);
        worst = std::max(worst, std::abs(g.value() - b.real()));
        worst_im = std::max(worst_im, std::abs(b.imag()));
      }
    }
    double secs = elapsed(t0);
    detail = fmt("max |closed-brute| = %.2e, max brute imag = %.2e over odd n<=225, |k|<=60",
                 worst, worst_im);
    return worst < 1e-9 && worst_im < 1e-9 && secs < 5.0;
  });

  // ---- 2: bilinear Hecke relation, both presets -------------------------
  run(2, [](std::string& detail) {
    auto t0 = clock_type::now();
    double r_d3 = gl3::max_bilinear_residual(gl3::d3_form(), 60);
    double r_s2 = gl3::max_bilinear_residual(gl3::sym2_delta_form(), 60);
    double secs = elapsed(t0);
    detail = fmt("relative residual d3 = %.2e, sym2 lift = %.2e, m1,m2 <= 60", r_d3, r_s2);
    return r_d3 < 1e-12 && r_s2 < 1e-12 && secs < 5.0;
  });

  // ---- 3: Dirichlet series vs Euler product at s = 2 --------------------
  run(3, [](std::string& detail) {
    auto t0 = clock_type::now();
    auto f = gl3::d3_form();
    double worst = 0.0;
    for (long long l : {1LL, 3LL, 9LL, 15LL, 45LL}) {
      double r = gl3::dirichlet_vs_product_check(f, gl3::squarefree_decompose(l),
                                                 cplx(2.0), 10000);
      worst = std::max(worst, r);
    }
    double secs = elapsed(t0);
    detail = fmt("max residual %.2e over l in {1,3,9,15,45}, cutoff 1e4", worst);
    return worst < 1e-6 && secs < 30.0;
  });

  // ---- 4: recursion closure / square-coefficient identity ----------------
  run(4, [](std::string& detail) {
    auto t0 = clock_type::now();
    bool exact_ok = true;
    using gl3::exact::Rat;
    for (long long p : {2LL, 3LL, 5LL, 7LL, 11LL}) {
      auto prd = gl3::exact::hecke_pair_d3();
      for (const Rat& r : gl3::square_identity_residuals<Rat>(prd.first, prd.second, 6))
        exact_ok = exact_ok && (r == Rat(0));
      auto prs = gl3::exact::hecke_pair_sym2_delta(p);
      for (const Rat& r : gl3::square_identity_residuals<Rat>(prs.first, prs.second, 6))
        exact_ok = exact_ok && (r == Rat(0));
    }
    double worst = 0.0;
    for (const char* kind : {"d3", "sym2delta"}) {
      auto f = gl3::build_form(kind);
      for (long long p : {2LL, 3LL, 5LL, 7LL, 11LL})
        worst = std::max(worst, gl3::verify_square_identity(f, p, 6));
    }
    double secs = elapsed(t0);
    detail = fmt("exact-rational residuals %s, double residual %.2e, p in {2..11}, h <= 6",
                 exact_ok ? "all zero" : "NONZERO", worst);
    return exact_ok && worst < 1e-10 && secs < 5.0;
  });

  // ---- 5: V-kernel normalization and contour independence ---------------
  run(5, [](std::string& detail) {
    auto t0 = clock_type::now();
    auto f = gl3::d3_form();
    double v_small = gl3::V_kernel(f, 1e-6).real();
    double v40 = std::abs(gl3::V_kernel(f, 40.0));
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (double u : {0.5, 1.0, 2.0}) {
      gl3::ContourSpec spec;
      spec.u = u;
      spec.T = 18.0 + 1.5 * u;
      spec.nodes = static_cast<int>(2.0 * spec.T / 0.005) + 1;
      double v = gl3::V_kernel(f, 10.0, spec).real();
      if (first) { lo = hi = v; first = false; }
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    double spread = hi - lo;
    double secs = elapsed(t0);
    bool clause1 = std::abs(v_small - 1.0) < 1e-4;
    bool clause2 = v40 < 1e-10;
    bool clause3 = spread < 1e-9;
    detail = fmt("|V(1e-6)-1| = %.3e (need < 1e-4%s), |V(40)| = %.2e, contour spread = %.2e",
                 std::abs(v_small - 1.0),
                 clause1 ? "" : "; intrinsic sqrt(y) log^2 y approach, see header comment",
                 v40, spread);
    return clause1 && clause2 && clause3 && secs < 10.0;
  });

  // ---- 6: degenerate-case central-value oracle ---------------------------
  run(6, [](std::string& detail) {
    auto t0 = clock_type::now();
    auto f = gl3::d3_form();
    gl3::CentralValueEngine engine(f, 29.0, {});
    double worst = 0.0;
    for (long long d : {1LL, 3LL, 5LL, 7LL, 11LL, 13LL, 15LL, 17LL, 19LL, 21LL, 23LL, 29LL}) {
      double ref = std::pow(gl3::gl1_central_value(d), 3);
      double rel = std::abs(engine.value(d) - cplx(ref)) / std::abs(ref);
      worst = std::max(worst, rel);
    }
    double secs = elapsed(t0);
    detail = fmt("max relative error %.2e vs GL(1) cube, odd square-free d <= 29", worst);
    return worst < 1e-6 && secs < 30.0;
  });

  // ---- 7: Poisson-summation harness --------------------------------------
  run(7, [&weight](std::string& detail) {
    auto t0 = clock_type::now();
    struct Cfg { long long n; double X, Y; };
    double worst = 0.0;
    for (const Cfg& c : {Cfg{3, 500, 5}, Cfg{5, 500, 5}, Cfg{15, 1000, 10}}) {
      auto r = gl3::poisson_verify(c.n, c.X, c.Y, weight);
      worst = std::max(worst, r.residual / std::max(1.0, std::abs(r.lhs)));
    }
    double secs = elapsed(t0);
    detail = fmt("max normalized residual %.2e over (3,500,5),(5,500,5),(15,1000,10)", worst);
    return worst < 1e-6 && secs < 60.0;
  });

  // ---- 11: auxiliary modulus selection -----------------------------------
  run(11, [](std::string& detail) {
    auto f = gl3::d3_form();
    long long c = gl3::compute_c_phi(f);
    auto twist = gl3::squarefree_decompose(c);
    double least = 1e300;
    for (long long p : {3LL, 5LL, 7LL, 11LL})
      least = std::min(least, std::abs(gl3::G_phi_p_local(f, p, twist, cplx(1.0))));
    detail = fmt("c_phi = %lld, least |local factor| at p in {3,5,7,11} = %.3e", c, least);
    return c == 88935 && least > 1e-10;
  });

  // ---- 12: determination by local ratios ---------------------------------
  run(12, [](std::string& detail) {
    auto f = gl3::d3_form();
    auto fs = gl3::sym2_delta_form();
    auto same = gl3::determination_test(f, gl3::d3_form(), 17, 97);
    auto diff = gl3::determination_test(f, fs, 17, 97);
    cplx a_d3 = f.hecke_pair(17).first;
    cplx a_s2 = fs.hecke_pair(17).first;
    bool direct = std::abs(a_d3 - a_s2) > 1e-6;
    detail = fmt("d3/d3 separated: %s; d3/sym2 first separation p = %lld "
                 "(A(17,1): %.6f vs %.6f)",
                 same.separated ? "YES (unexpected)" : "no",
                 diff.first_separating_prime, a_d3.real(), a_s2.real());
    return !same.separated && diff.separated && diff.first_separating_prime == 17 && direct;
  });

  // ---- 13: square-coefficient partial sums (builds the big table) --------
  run(13, [](std::string& detail) {
    auto fs = gl3::sym2_delta_form();
    double lx[3], ls[3];
    const long long xs[3] = {1000, 10000, 100000};
    for (int i = 0; i < 3; ++i) {
      double s = gl3::partial_sum_abs_square_coeffs(fs, xs[i]);
      lx[i] = std::log(static_cast<double>(xs[i]));
      ls[i] = std::log(s);
    }
    double mx = (lx[0] + lx[1] + lx[2]) / 3.0, my = (ls[0] + ls[1] + ls[2]) / 3.0;
    double num = 0.0, den = 0.0;
    for (int i = 0; i < 3; ++i) {
      num += (lx[i] - mx) * (ls[i] - my);
      den += (lx[i] - mx) * (lx[i] - mx);
    }
    double slope = num / den;
    detail = fmt("log-log slope of sum_{n<=X} |A(n^2,1)| = %.4f over X in {1e3,1e4,1e5}", slope);
    return slope <= 1.15;
  });

  // ---- 9: desk-scale moment, self-dual branch, l = 1 ---------------------
  static gl3::MomentReport rep500;  // consumed by criterion 8
  static bool have_rep500 = false;
  run(9, [&weight](std::string& detail) {
    auto t0 = clock_type::now();
    auto fs = gl3::sym2_delta_form();
    auto t1 = gl3::squarefree_decompose(1);
    rep500 = gl3::moment_report(fs, t1, 500.0, weight);
    have_rep500 = rep500.prediction_note.empty();
    auto rep125 = gl3::moment_report(fs, t1, 125.0, weight);
    double secs = elapsed(t0);
    double r500 = rep500.ratio.real();
    double r125 = rep125.ratio.real();
    detail = fmt("ratio(X=500) = %.4f, ratio(X=125) = %.4f%s%s", r500, r125,
                 rep500.prediction_note.empty() ? "" : "; note: ",
                 rep500.prediction_note.c_str());
    bool window = r500 >= 0.5 && r500 <= 2.0;
    bool trend = std::abs(r500 - 1.0) < std::abs(r125 - 1.0);
    return window && trend && rep500.prediction_note.empty() && secs < 600.0;
  });

  // ---- 8: self-dual reality ----------------------------------------------
  run(8, [](std::string& detail) {
    auto fs = gl3::sym2_delta_form();
    gl3::CentralValueEngine engine(fs, 200.0, {});
    double worst = 0.0;
    for (long long d = 1; d <= 200; d += 2) {
      if (!gl3::squarefree_indicator(d)) continue;
      cplx v = engine.value(d);
      worst = std::max(worst, std::abs(v.imag()) / std::max(1e-300, std::abs(v)));
    }
    double mom_frac = 0.0;
    bool have = have_rep500;
    if (have) {
      mom_frac = std::abs(rep500.computed_moment.imag()) /
                 std::max(1e-300, std::abs(rep500.computed_moment));
    }
    detail = fmt("max Im fraction %.2e over d <= 200; moment Im fraction %s%.2e",
                 worst, have ? "" : "(X=500 report unavailable) ", mom_frac);
    return worst < 1e-6 && have && mom_frac < 1e-4;
  });

  // ---- 10: twisted moment, l = 3 -----------------------------------------
  run(10, [&weight](std::string& detail) {
    auto fs = gl3::sym2_delta_form();
    auto rep = gl3::moment_report(fs, gl3::squarefree_decompose(3), 500.0, weight);
    double r = rep.ratio.real();
    detail = fmt("ratio(X=500, l=3) = %.4f (moment %.4f, predicted %.4f; signed sum, see header)%s%s",
                 r, rep.computed_moment.real(), rep.predicted_main.real(),
                 rep.prediction_note.empty() ? "" : "; note: ", rep.prediction_note.c_str());
    return r >= 0.4 && r <= 2.5 && rep.prediction_note.empty();
  });

  for (int i = 1; i <= 13; ++i) std::printf("%s\n", g_lines[static_cast<size_t>(i)].c_str());
  std::printf("acceptance: %d of 13 criteria passed\n", 13 - g_failures);
  return g_failures;
}
