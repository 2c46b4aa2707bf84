#include "gl3twist/form.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <sys/stat.h>
#include <unordered_map>

#include "gl3twist/arith.hpp"
#include "gl3twist/coefficients.hpp"
#include "gl3twist/tau.hpp"

namespace gl3 {

std::pair<cplx, cplx> Gl3Form::hecke_pair(long long p) const {
  if (hecke) return hecke(p);
  if (!satake) throw std::logic_error("Gl3Form: no coefficient source");
  auto s = satake(p);
  cplx e1 = s[0] + s[1] + s[2];
  cplx e2 = s[0] * s[1] + s[0] * s[2] + s[1] * s[2];
  return {e1, e2};
}

Gl3Form d3_form() {
  Gl3Form f;
  f.label = "d3";
  f.gamma = {cplx(0.0), cplx(0.0), cplx(0.0)};
  f.self_dual = true;
  f.satake = [](long long) { return std::array<cplx, 3>{cplx(1.0), cplx(1.0), cplx(1.0)}; };
  f.hecke = [](long long) { return std::make_pair(cplx(3.0), cplx(3.0)); };
  return f;
}

Gl3Form sym2_gl2_form(std::function<double(long long)> lambda, std::string label,
                      std::array<cplx, 3> gamma_params) {
  Gl3Form f;
  f.label = std::move(label);
  f.gamma = gamma_params;
  f.self_dual = true;
  auto warn = f.deligne_warning;
  auto lam = std::move(lambda);
  f.hecke = [lam, warn](long long p) {
    double l = lam(p);
    if (std::abs(l) > 2.0 + 1e-9) *warn = true;
    cplx a(l * l - 1.0);
    return std::make_pair(a, a);
  };
  f.satake = [lam, warn](long long p) {
    double l = lam(p);
    if (std::abs(l) > 2.0 + 1e-9) *warn = true;
    cplx ap;  // GL(2) Satake parameter with ap + 1/ap = lambda
    if (std::abs(l) <= 2.0) {
      ap = cplx(l / 2.0, std::sqrt(std::max(0.0, 4.0 - l * l)) / 2.0);
    } else {
      double r = (std::abs(l) + std::sqrt(l * l - 4.0)) / 2.0;
      ap = cplx(l > 0 ? r : -r, 0.0);
    }
    cplx a2 = ap * ap;
    return std::array<cplx, 3>{a2, cplx(1.0), cplx(1.0) / a2};
  };
  return f;
}

Gl3Form sym2_delta_form() {
  return sym2_gl2_form([](long long p) { return tau::lambda_p(p); }, "sym2delta",
                       {cplx(-0.5), cplx(-10.5), cplx(-11.5)});
}

Gl3Form satake_file_form(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("satake_file_form: cannot open " + path);
  auto table = std::make_shared<std::map<long long, std::array<cplx, 3>>>();
  std::string line;
  long long lineno = 0;
  bool all_real_pairs = true;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    long long p;
    if (!(ss >> p)) continue;  // blank or comment-only line
    double re_a, im_a, re_b, im_b, re_c, im_c;
    if (!(ss >> re_a >> im_a >> re_b >> im_b >> re_c >> im_c)) {
      throw std::runtime_error("satake_file_form: malformed record at line " + std::to_string(lineno));
    }
    std::array<cplx, 3> s{cplx(re_a, im_a), cplx(re_b, im_b), cplx(re_c, im_c)};
    cplx prod = s[0] * s[1] * s[2];
    if (std::abs(prod - cplx(1.0)) > 1e-8) {
      throw std::invalid_argument("satake_file_form: non-unitary triple at p=" + std::to_string(p));
    }
    cplx e1 = s[0] + s[1] + s[2];
    cplx e2 = s[0] * s[1] + s[0] * s[2] + s[1] * s[2];
    if (std::abs(e1 - e2) > 1e-10 || std::abs(e1.imag()) > 1e-10) all_real_pairs = false;
    (*table)[p] = s;
  }
  Gl3Form f;
  f.label = path;
  f.gamma = {cplx(0.0), cplx(0.0), cplx(0.0)};
  f.self_dual = all_real_pairs;
  auto warn = f.deligne_warning;
  f.satake = [table, path](long long p) {
    auto it = table->find(p);
    if (it == table->end()) {
      throw std::out_of_range("satake_file_form: no record for p=" + std::to_string(p) + " in " + path);
    }
    return it->second;
  };
  // Kim-Sarnak quality check, as a warning rather than a rejection.
  const double theta = 5.0 / 14.0;
  auto satake = f.satake;
  f.hecke = [satake, warn, theta](long long p) {
    auto s = satake(p);
    cplx e1 = s[0] + s[1] + s[2];
    cplx e2 = s[0] * s[1] + s[0] * s[2] + s[1] * s[2];
    if (std::abs(e1) > 3.0 * std::pow(static_cast<double>(p), theta) + 1e-9) *warn = true;
    return std::make_pair(e1, e2);
  };
  return f;
}

Gl3Form build_form(const std::string& kind) {
  if (kind == "d3") return d3_form();
  if (kind == "sym2delta" || kind == "sym2_delta" || kind == "sym2") return sym2_delta_form();
  struct stat st;
  if (stat(kind.c_str(), &st) == 0) return satake_file_form(kind);
  throw std::invalid_argument("build_form: unknown form kind '" + kind + "'");
}

Gl3Form dual(const Gl3Form& f) {
  Gl3Form g;
  g.label = f.label + ".dual";
  g.gamma = {-f.gamma[0], -f.gamma[1], -f.gamma[2]};
  g.self_dual = f.self_dual;
  g.theta3_bound = f.theta3_bound;
  g.deligne_warning = f.deligne_warning;
  if (f.satake) {
    auto satake = f.satake;
    g.satake = [satake](long long p) {
      auto s = satake(p);
      return std::array<cplx, 3>{s[0] * s[1], s[0] * s[2], s[1] * s[2]};
    };
  }
  if (f.hecke) {
    auto hecke = f.hecke;
    g.hecke = [hecke](long long p) {
      auto pr = hecke(p);
      return std::make_pair(pr.second, pr.first);
    };
  }
  return g;
}

std::complex<double> coeff_prime_power(const Gl3Form& f, long long p, int a, int b) {
  if (a < 0 || b < 0) return cplx(0.0);
  if (a == 0 && b == 0) return cplx(1.0);
  auto pr = f.hecke_pair(p);
  return coeff_prime_power_pair(pr.first, pr.second, a, b);
}

std::complex<double> coeff_general(const Gl3Form& f, long long m, long long n) {
  if (m < 1 || n < 1) throw std::invalid_argument("coeff_general: indices must be positive");
  std::map<long long, std::pair<int, int>> exps;
  for (auto [p, e] : factorize(m)) exps[p].first = e;
  for (auto [p, e] : factorize(n)) exps[p].second = e;
  cplx out(1.0);
  for (auto& [p, ab] : exps) out *= coeff_prime_power(f, p, ab.first, ab.second);
  return out;
}

CoeffTable coeff_table(const Gl3Form& f, long long N) {
  if (N < 1) throw std::invalid_argument("coeff_table: N >= 1");
  if (N > (1ll << 24)) throw std::length_error("coeff_table: N exceeds memory budget");
  CoeffTable t;
  t.N = N;
  t.a.assign(static_cast<size_t>(N) + 1, cplx(0.0));
  t.a[1] = cplx(1.0);
  if (N == 1) return t;

  std::vector<int32_t> spf(static_cast<size_t>(N) + 1, 0);
  for (long long i = 2; i <= N; ++i) {
    if (spf[i] == 0) {
      for (long long j = i; j <= N; j += i) {
        if (spf[j] == 0) spf[j] = static_cast<int32_t>(i);
      }
    }
  }

  // Cached h-sequences per prime, extended on demand.
  std::unordered_map<long long, std::vector<cplx>> hcache;
  auto prime_power_coeff = [&](long long p, int e) -> cplx {
    auto& h = hcache[p];
    if (static_cast<int>(h.size()) < e + 1) {
      auto pr = f.hecke_pair(p);
      h = hecke_h_sequence(pr.first, pr.second, e + 1);
    }
    return h[e];  // A(p^e, 1) = h_e
  };

  for (long long n = 2; n <= N; ++n) {
    long long p = spf[n];
    long long rest = n;
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    t.a[n] = t.a[rest] * prime_power_coeff(p, e);
  }
  return t;
}

double max_bilinear_residual(const Gl3Form& f, long long M) {
  double worst = 0.0;
  for (long long m1 = 1; m1 <= M; ++m1) {
    for (long long m2 = 1; m2 <= M; ++m2) {
      cplx lhs = coeff_general(f, m1, 1) * coeff_general(f, 1, m2);
      cplx rhs(0.0);
      long long g = std::gcd(m1, m2);
      for (long long k = 1; k <= g; ++k) {
        if (g % k == 0) rhs += coeff_general(f, m1 / k, m2 / k);
      }
      double rel = std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
      worst = std::max(worst, rel);
    }
  }
  return worst;
}

}  // namespace gl3
