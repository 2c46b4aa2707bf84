// Command-line front end: coefficient tables, Gauss sums, central values,
// twisted first moments with their main-term prediction, identity
// verification suites, and the two-form determination check.
//
// Exit codes: 0 success, 1 failed verification or compute error, 2 usage.

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gl3twist/archimedean.hpp"
#include "gl3twist/arith.hpp"
#include "gl3twist/eulermain.hpp"
#include "gl3twist/form.hpp"
#include "gl3twist/moments.hpp"
#include "gl3twist/symsq.hpp"

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// All report text goes through one sink so --out redirects everything.
struct Sink {
  std::ostream* os = &std::cout;
  std::ofstream file;
  void open(const std::string& path) {
    if (path.empty()) return;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    os = &file;
  }
  template <typename T>
  Sink& operator<<(const T& v) {
    *os << v;
    return *this;
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

int run_coeffs(const std::string& form, long long nmax, Sink& out) {
  gl3::Gl3Form f = gl3::build_form(form);
  gl3::CoeffTable t = gl3::coeff_table(f, nmax);
  out << "# cmd=coeffs form=" << form << " n=" << nmax << "\n";
  out << "n,re_A,im_A\n";
  for (long long n = 1; n <= nmax; ++n) {
    out << n << "," << fmt(t[n].real()) << "," << fmt(t[n].imag()) << "\n";
  }
  return 0;
}

int run_gauss(long long k, long long n, Sink& out) {
  if (n <= 0 || n % 2 == 0) throw UsageError("gauss: --n must be odd and positive");
  gl3::GaussSumValue g = gl3::gauss_G(k, n);
  out << "# cmd=gauss k=" << k << " n=" << n << "\n";
  out << "closed_form " << fmt(g.value()) << " (= " << g.coeff << " * sqrt(" << g.radicand
      << "))\n";
  if (n <= 10000) {
    std::complex<double> b = gl3::gauss_brute(k, n);
    out << "brute " << fmt(b.real()) << " (im " << fmt(b.imag()) << ")\n";
    out << "diff " << fmt(std::abs(b - std::complex<double>(g.value()))) << "\n";
  }
  return 0;
}

int run_lvalue(const std::string& form, const std::vector<long long>& ds, Sink& out) {
  if (ds.empty()) throw UsageError("lvalue: at least one --d required");
  long long dmax = 0;
  for (long long d : ds) {
    if (d <= 0 || d % 2 == 0 || !gl3::squarefree_indicator(d)) {
      throw UsageError("lvalue: every --d must be odd, square-free, positive");
    }
    dmax = std::max(dmax, d);
  }
  gl3::Gl3Form f = gl3::build_form(form);
  gl3::CentralValueEngine engine(f, static_cast<double>(dmax));
  out << "# cmd=lvalue form=" << form << " y_cut=" << fmt(engine.y_cut())
      << " n_limit=" << engine.n_limit() << "\n";
  out << "d,re_L,im_L\n";
  for (long long d : ds) {
    std::complex<double> v = engine.value(d);
    out << d << "," << fmt(v.real()) << "," << fmt(v.imag()) << "\n";
  }
  return 0;
}

int run_moment(const std::string& form, double X, long long l, int threads,
               const std::string& format, Sink& out) {
  if (l % 2 == 0) throw UsageError("moment: --l must be odd");
  if (X <= 0) throw UsageError("moment: --X must be positive");
  gl3::Gl3Form f = gl3::build_form(form);
  gl3::TwistIndex twist = gl3::squarefree_decompose(l);
  gl3::SmoothWeight w;
  gl3::MomentOptions opt;
  opt.threads = threads;
  gl3::MomentReport rep = gl3::moment_report(f, twist, X, w, opt);
  if (format == "json") {
    nlohmann::json j = nlohmann::json::parse(gl3::moment_json(rep));
    j["config"] = {{"cmd", "moment"}, {"form", form}, {"X", X},
                   {"l", l},          {"threads", threads}, {"format", format}};
    out << j.dump(2) << "\n";
  } else {
    out << "# cmd=moment form=" << form << " X=" << fmt(X) << " l=" << l
        << " threads=" << threads << " format=" << format << "\n";
    if (!rep.prediction_note.empty()) out << "# note: " << rep.prediction_note << "\n";
    out << gl3::moment_csv_header() << "\n" << gl3::moment_csv_row(rep) << "\n";
  }
  return 0;
}

struct SuiteState {
  int failures = 0;
  Sink* out = nullptr;
  void check(const std::string& name, double residual, double tol) {
    bool ok = residual < tol;
    (*out) << (ok ? "ok   " : "FAIL ") << name << " residual=" << fmt(residual)
           << " tol=" << fmt(tol) << "\n";
    if (!ok) ++failures;
  }
};

void suite_hecke(SuiteState& st) {
  for (const char* kind : {"d3", "sym2delta"}) {
    gl3::Gl3Form f = gl3::build_form(kind);
    st.check(std::string("hecke-bilinear-") + kind, gl3::max_bilinear_residual(f, 60), 1e-12);
  }
}

void suite_euler(SuiteState& st) {
  gl3::Gl3Form f = gl3::build_form("d3");
  for (long long l : {1, 3, 9, 15, 45}) {
    gl3::TwistIndex twist = gl3::squarefree_decompose(l);
    double r = gl3::dirichlet_vs_product_check(f, twist, std::complex<double>(2.0), 10000);
    st.check("dirichlet-vs-product-d3-l" + std::to_string(l), r, 1e-6);
  }
}

void suite_recursion(SuiteState& st) {
  for (const char* kind : {"d3", "sym2delta"}) {
    gl3::Gl3Form f = gl3::build_form(kind);
    for (long long p : {2, 3, 5, 7, 11}) {
      st.check("square-identity-" + std::string(kind) + "-p" + std::to_string(p),
               gl3::verify_square_identity(f, p, 6), 1e-10);
    }
  }
}

void suite_poisson(SuiteState& st, long long n, double X, double Y) {
  gl3::SmoothWeight w;
  gl3::PoissonResult r = gl3::poisson_verify(n, X, Y, w);
  st.check("poisson-n" + std::to_string(n), r.residual, 1e-6 * std::max(std::abs(r.lhs), 1.0));
}

void suite_contour(SuiteState& st) {
  gl3::Gl3Form f = gl3::build_form("d3");
  for (double y : {0.5, 2.0, 5.0}) {
    double lo = 1e300, hi = -1e300;
    for (double u : {0.5, 1.0, 2.0}) {
      gl3::ContourSpec spec;
      spec.u = u;
      spec.T = 18.0 + 1.5 * u;
      spec.nodes = static_cast<int>(2.0 * spec.T / 0.005) + 1;
      double v = gl3::V_kernel(f, y, spec).real();
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    st.check("contour-shift-y" + std::to_string(y).substr(0, 3), hi - lo, 1e-9);
  }
}

int run_verify(const std::string& suite, long long n, double X, double Y, Sink& out) {
  SuiteState st;
  st.out = &out;
  out << "# cmd=verify suite=" << suite << " n=" << n << " X=" << fmt(X) << " Y=" << fmt(Y)
      << "\n";
  bool matched = false;
  if (suite == "hecke" || suite == "all") suite_hecke(st), matched = true;
  if (suite == "euler" || suite == "all") suite_euler(st), matched = true;
  if (suite == "recursion" || suite == "all") suite_recursion(st), matched = true;
  if (suite == "poisson" || suite == "all") suite_poisson(st, n, X, Y), matched = true;
  if (suite == "contour" || suite == "all") suite_contour(st), matched = true;
  if (!matched) {
    throw UsageError("verify: unknown --suite (hecke|euler|recursion|poisson|contour|all)");
  }
  out << "# failures=" << st.failures << "\n";
  return st.failures == 0 ? 0 : 1;
}

int run_determine(const std::vector<std::string>& forms, Sink& out) {
  if (forms.size() != 2) throw UsageError("determine: exactly two --form arguments required");
  gl3::Gl3Form fa = gl3::build_form(forms[0]);
  gl3::Gl3Form fb = gl3::build_form(forms[1]);
  gl3::DeterminationResult r = gl3::determination_test(fa, fb, 17, 97);
  out << "# cmd=determine form=" << forms[0] << " form=" << forms[1] << " window=[17,97]\n";
  out << "p,agree\n";
  for (auto& [p, agree] : r.per_prime) out << p << "," << (agree ? 1 : 0) << "\n";
  if (r.separated) {
    out << "separated at p=" << r.first_separating_prime << "\n";
  } else {
    out << "no separating prime in window\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GL(3) quadratic-twist central values, moments, and identity checks"};
  app.require_subcommand(1);

  std::string form = "d3";
  std::vector<std::string> forms;
  std::vector<long long> ds;
  long long l = 1, k = 0, n = 3, ncount = 30;
  double X = 500.0, Y = 5.0;
  std::string out_path, format = "csv", suite = "all";
  int threads = 1;

  CLI::App* c_coeffs = app.add_subcommand("coeffs", "Print an A(n,1) table");
  c_coeffs->add_option("--form", form);
  c_coeffs->add_option("--n", ncount, "largest index");
  c_coeffs->add_option("--out", out_path);

  CLI::App* c_gauss = app.add_subcommand("gauss", "Gauss sum G_k(n), closed form vs brute");
  c_gauss->add_option("--k", k)->required();
  c_gauss->add_option("--n", n)->required();
  c_gauss->add_option("--out", out_path);

  CLI::App* c_lvalue = app.add_subcommand("lvalue", "Central values L(1/2, phi x chi_{8d})");
  c_lvalue->add_option("--form", form);
  c_lvalue->add_option("--d", ds, "odd square-free d (repeatable)");
  c_lvalue->add_option("--out", out_path);

  CLI::App* c_moment = app.add_subcommand("moment", "Twisted first moment and prediction");
  c_moment->add_option("--form", form);
  c_moment->add_option("--X", X);
  c_moment->add_option("--l", l);
  c_moment->add_option("--threads", threads);
  c_moment->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  c_moment->add_option("--out", out_path);

  CLI::App* c_verify = app.add_subcommand("verify", "Identity verification suites");
  c_verify->add_option("--suite", suite);
  c_verify->add_option("--n", n, "Poisson twist n");
  c_verify->add_option("--X", X, "Poisson X");
  c_verify->add_option("--Y", Y, "Poisson Y");
  c_verify->add_option("--out", out_path);

  CLI::App* c_det = app.add_subcommand("determine", "Local-ratio determination of two forms");
  c_det->add_option("--form", forms, "two form selectors");
  c_det->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    Sink out;
    out.open(out_path);
    if (c_coeffs->parsed()) return run_coeffs(form, ncount, out);
    if (c_gauss->parsed()) return run_gauss(k, n, out);
    if (c_lvalue->parsed()) return run_lvalue(form, ds, out);
    if (c_moment->parsed()) return run_moment(form, X, l, threads, format, out);
    if (c_verify->parsed()) return run_verify(suite, n, X, Y, out);
    if (c_det->parsed()) return run_determine(forms, out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
