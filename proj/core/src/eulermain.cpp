#include "gl3twist/eulermain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "gl3twist/symsq.hpp"

namespace gl3 {

namespace {

std::vector<long long> primes_up_to(long long n) {
  std::vector<uint8_t> comp(std::max<long long>(n + 1, 3), 0);
  std::vector<long long> out;
  for (long long i = 2; i <= n; ++i) {
    if (!comp[i]) {
      out.push_back(i);
      for (long long j = i * i; j <= n; j += i) comp[j] = 1;
    }
  }
  return out;
}

// Truncated product of two power series.
std::vector<cplx> series_mul(const std::vector<cplx>& a, const std::vector<cplx>& b, int len) {
  std::vector<cplx> c(len, cplx(0.0));
  for (int i = 0; i < static_cast<int>(a.size()) && i < len; ++i) {
    for (int j = 0; j < static_cast<int>(b.size()) && i + j < len; ++j) {
      c[i + j] += a[i] * b[j];
    }
  }
  return c;
}

// Power-series coefficients (in x = p^{-s}) of the local factor
// G_{phi,p}(s;l), by the same three-case formula as G_phi_p_local; the
// third case is polynomial after the removable denominator cancels:
//   G = bracket * [(1+A'x)(p+1) - (A^2-A')x + (A'^2-2A)x^2 - x^3] / (p+1).
std::vector<cplx> G_local_poly(const Gl3Form& f, long long p, const TwistIndex& twist) {
  auto pr = f.hecke_pair(p);
  const cplx A = pr.first, Ad = pr.second;
  std::vector<cplx> bracket = {cplx(1.0), -Ad, A, cplx(-1.0)};
  if (twist.l1 % p == 0) {
    return series_mul({A, cplx(1.0)}, bracket, 5);
  }
  if (twist.l % p == 0) {
    return series_mul({cplx(1.0), Ad}, bracket, 6);
  }
  const double q = static_cast<double>(p + 1);
  std::vector<cplx> second = {cplx(1.0), Ad - (A * A - Ad) / q, (Ad * Ad - 2.0 * A) / q,
                              cplx(-1.0 / q)};
  return series_mul(bracket, second, 7);
}

}  // namespace

std::complex<double> G_phi_p_local(const Gl3Form& f, long long p, const TwistIndex& twist,
                                   std::complex<double> s) {
  if (p < 3 || p % 2 == 0) throw std::invalid_argument("G_phi_p_local: p must be an odd prime");
  auto pr = f.hecke_pair(p);
  const cplx Ad = pr.second;
  const cplx x = std::pow(cplx(static_cast<double>(p)), -s);
  if (twist.l % p != 0) {
    // The displayed formula divides by p^s + A(1,p); the division is
    // removable, but a vanishing denominator still flags bad input.
    if (std::abs(cplx(1.0) + Ad * x) < 1e-12) {
      throw std::domain_error("G_phi_p_local: p^s + A(1,p) vanishes");
    }
  }
  std::vector<cplx> poly = G_local_poly(f, p, twist);
  cplx v(0.0);
  for (int i = static_cast<int>(poly.size()) - 1; i >= 0; --i) v = v * x + poly[i];
  return v;
}

GProductResult G_phi_product(const Gl3Form& f, const TwistIndex& twist, std::complex<double> s,
                             long long P) {
  if (P < 3) throw std::invalid_argument("G_phi_product: P >= 3");
  if (P > 2000000) throw std::length_error("G_phi_product: P beyond desk scale");
  const double sigma = s.real();
  // Measured tail segment (P, S], then a coefficient-counting envelope.
  long long S = std::min<long long>(10 * P, 8300000);
  std::vector<long long> primes = primes_up_to(std::max(P, S));
  cplx value(1.0);
  double seg = 0.0;
  double max_coeff = 1.0;
  for (long long p : primes) {
    if (p == 2) continue;
    if (p <= P) {
      value *= G_phi_p_local(f, p, twist, s);
    } else if (p <= S) {
      seg += std::abs(G_phi_p_local(f, p, twist, s) - cplx(1.0));
      auto pr = f.hecke_pair(p);
      max_coeff = std::max({max_coeff, std::abs(pr.first), std::abs(pr.second)});
    }
  }
  // Beyond S the local deviation is dominated by (A^2-A')/p^{s+1} and the
  // x^2 cross terms: |G_p - 1| <= C p^{-sigma-1} with C counted from the
  // (bounded) coefficients, doubled for slack.
  double C = 2.0 * (2.0 * max_coeff * max_coeff + 3.0 * max_coeff + 5.0);
  double env = S > 2 ? C * std::pow(static_cast<double>(S), -sigma) /
                           (sigma * std::log(static_cast<double>(S)))
                     : 0.0;
  double log_tail = 1.1 * seg + env;
  GProductResult out;
  out.value = value;
  out.tail_bound = std::abs(value) * (std::exp(log_tail) - 1.0);
  return out;
}

double dirichlet_vs_product_check(const Gl3Form& f, const TwistIndex& twist,
                                  std::complex<double> s, long long M) {
  if (M < 1) throw std::invalid_argument("dirichlet_vs_product_check: M >= 1");
  if (M > 2000000) throw std::length_error("dirichlet_vs_product_check: M beyond desk scale");

  std::vector<int32_t> spf(static_cast<size_t>(M) + 1, 0);
  for (long long i = 2; i <= M; ++i) {
    if (spf[i] == 0) {
      for (long long j = i; j <= M; j += i) {
        if (spf[j] == 0) spf[j] = static_cast<int32_t>(i);
      }
    }
  }

  std::vector<std::pair<long long, int>> lfac = factorize(twist.l);
  auto lweight = [&lfac]() {
    double w = 1.0;
    for (auto& [p, e] : lfac) {
      (void)e;
      w *= static_cast<double>(p) / (p + 1.0);
    }
    return w;
  }();

  std::unordered_map<long long, std::vector<cplx>> hcache;
  auto hval = [&](long long p, int k) -> cplx {
    auto& h = hcache[p];
    if (static_cast<int>(h.size()) < k + 1) {
      auto pr = f.hecke_pair(p);
      h = hecke_h_sequence(pr.first, pr.second, k + 2);
    }
    return h[k];
  };

  // Left side: direct coefficient sum over odd m <= M.
  cplx lhs(0.0);
  for (long long m = 1; m <= M; m += 2) {
    // Factor m, form A(l1 m^2, 1) = prod h_{v_p(l1) + 2 v_p(m)}, and the
    // weight over primes dividing l m.
    cplx val(1.0);
    double w = lweight;
    long long rest = m;
    while (rest > 1) {
      long long p = spf[rest];
      int e = 0;
      while (rest % p == 0) {
        rest /= p;
        ++e;
      }
      int delta = (twist.l1 % p == 0) ? 1 : 0;
      val *= hval(p, delta + 2 * e);
      if (twist.l % p != 0) w *= static_cast<double>(p) / (p + 1.0);
    }
    for (auto& [p, e] : lfac) {
      (void)e;
      if (twist.l1 % p == 0 && m % p != 0) val *= hval(p, 1);
    }
    lhs += val * w * std::pow(cplx(static_cast<double>(m)), -s);
  }

  // Right side: Dirichlet coefficients of G_{phi,p} * L_p(sym^2) per odd
  // prime, assembled multiplicatively and truncated at the same M.
  std::unordered_map<long long, std::vector<cplx>> local_series;
  auto series_at = [&](long long p) -> const std::vector<cplx>& {
    auto it = local_series.find(p);
    if (it != local_series.end()) return it->second;
    int H = static_cast<int>(std::log(static_cast<double>(M)) / std::log(static_cast<double>(p))) + 1;
    H = std::min(H, 20);
    SymSquareLocal bc = bc_coefficients(f, p, H);
    std::vector<cplx> combined = series_mul(G_local_poly(f, p, twist), bc.B, H + 1);
    return local_series.emplace(p, std::move(combined)).first->second;
  };

  std::vector<cplx> r(static_cast<size_t>(M) + 1, cplx(0.0));
  r[1] = cplx(1.0);
  cplx rhs(0.0);
  for (long long m = 1; m <= M; m += 2) {
    if (m > 1) {
      long long p = spf[m];
      long long rest = m;
      int e = 0;
      while (rest % p == 0) {
        rest /= p;
        ++e;
      }
      const std::vector<cplx>& sp = series_at(p);
      r[m] = e < static_cast<int>(sp.size()) ? r[rest] * sp[e] : cplx(0.0);
    }
    // Primes dividing l1 contribute their constant term A(p,1) to every m
    // they do not divide (the local series starts at A(p,1), not 1).
    cplx coef = r[m];
    for (auto& [p, e] : lfac) {
      (void)e;
      if (twist.l1 % p == 0 && m % p != 0) coef *= series_at(p)[0];
    }
    rhs += coef * std::pow(cplx(static_cast<double>(m)), -s);
  }
  rhs *= lweight;

  return std::abs(lhs - rhs);
}

std::complex<double> L2_sym2(const Gl3Form& f, std::complex<double> s, long long P) {
  if (P < 3) throw std::invalid_argument("L2_sym2: P >= 3");
  cplx out(1.0);
  for (long long p : primes_up_to(P)) {
    if (p == 2) continue;
    out *= sym2_local_factor(f, p, s);
  }
  return out;
}

double residue_L2_sym2(const Gl3Form& f, long long P) {
  if (f.label == "d3") {
    throw std::domain_error(
        "residue_L2_sym2: L(s, sym^2) for d3 carries a zeta(s)^6 factor (pole order 6); "
        "no simple residue exists");
  }
  if (!(f.self_dual && f.label.rfind("sym2", 0) == 0)) {
    throw std::domain_error("residue_L2_sym2: supported for symmetric-square presets only");
  }

  std::vector<long long> primes = primes_up_to(P);

  // Factorization route: sym^2(sym^2 g) = sym^4 g (+) trivial for a GL(2)
  // form g, so (s-1) L^{{2}}(s, sym^2 phi) -> (1/2) L^{{2}}(1, sym^4 g).
  // The sym^4 local factor needs only cos(2 theta_p) = (A(p,1)-1)/2 and
  // cos(4 theta_p), both rational in A(p,1).
  double value_a = 0.5;
  for (long long p : primes) {
    if (p == 2) continue;
    double A = f.hecke_pair(p).first.real();
    double x = 1.0 / static_cast<double>(p);
    double c2 = (A - 1.0) / 2.0;
    double c4 = 2.0 * c2 * c2 - 1.0;
    double inv = (1.0 - x) * (1.0 - 2.0 * c2 * x + x * x) * (1.0 - 2.0 * c4 * x + x * x);
    value_a /= inv;
  }

  // Cross-check: (s-1) L^{{2}}(s) = [delta zeta(1+delta)(1-2^{-1-delta})] *
  // prod_{odd p<=P} [local(s) (1-p^{-s})], Richardson-extrapolated in delta.
  auto f_of = [&](double delta) {
    double s1 = 1.0 + delta;
    cplx prod(1.0);
    for (long long p : primes) {
      if (p == 2) continue;
      prod *= sym2_local_factor(f, p, cplx(s1)) * (1.0 - std::pow(static_cast<double>(p), -s1));
    }
    double zeta2 = std::riemann_zeta(s1) * (1.0 - std::pow(2.0, -s1));
    return delta * zeta2 * prod.real();
  };
  double f1 = f_of(0.05), f2 = f_of(0.025), f3 = f_of(0.0125);
  double g1 = 2.0 * f2 - f1, g2 = 2.0 * f3 - f2;
  double value_b = (4.0 * g2 - g1) / 3.0;

  if (std::abs(value_a - value_b) > 0.01 * std::abs(value_a)) {
    throw std::runtime_error("residue_L2_sym2: factorization value " + std::to_string(value_a) +
                             " and extrapolation " + std::to_string(value_b) +
                             " disagree beyond 1%");
  }
  return value_a;
}

std::complex<double> C_phi(const Gl3Form& f, const TwistIndex& twist, const SmoothWeight& w) {
  const long long P = 100000;
  cplx a = a_coefficient(f);
  cplx G = G_phi_product(f, twist, cplx(1.0), P).value;
  auto G_at = [&](double s) { return G_phi_product(f, twist, cplx(s), P).value; };
  auto central = [&](double h) { return (G_at(1.0 + h) - G_at(1.0 - h)) / (2.0 * h); };
  cplx d1 = central(1e-4);
  cplx d2 = central(5e-5);
  cplx Gderiv = (4.0 * d2 - d1) / 3.0;
  double phi0 = phi_check0(w);
  double phi0d = phi_check_deriv0(w);
  return G * ((2.0 / 3.0) * a - std::log(std::numbers::pi) + phi0d / phi0) +
         (4.0 / 3.0) * Gderiv;
}

long long compute_c_phi(const Gl3Form& f) {
  for (int a = 1; a <= 2; ++a) {
    for (int b = 1; b <= 2; ++b) {
      long long l = 49 * 121;
      for (int i = 0; i < a; ++i) l *= 3;
      for (int i = 0; i < b; ++i) l *= 5;
      TwistIndex twist = squarefree_decompose(l);
      bool ok = true;
      for (long long p : {3, 5, 7, 11}) {
        if (std::abs(G_phi_p_local(f, p, twist, cplx(1.0))) <= 1e-10) {
          ok = false;
          break;
        }
      }
      if (ok) return l;
    }
  }
  throw std::runtime_error("compute_c_phi: all exponent choices vanish locally");
}

std::complex<double> local_ratio(const Gl3Form& f, long long p) {
  auto pr = f.hecke_pair(p);
  cplx den = static_cast<double>(p) + pr.second;
  if (std::abs(den) < 1e-12) throw std::domain_error("local_ratio: p + A(1,p) vanishes");
  return (1.0 + static_cast<double>(p) * pr.first) / den;
}

DeterminationResult determination_test(const Gl3Form& fa, const Gl3Form& fb, long long p_lo,
                                       long long p_hi) {
  DeterminationResult out;
  for (long long p : primes_up_to(p_hi)) {
    if (p < p_lo) continue;
    // Positivity underpinning the imaginary-part step: p^2 + 2p Re A + 1 > 0,
    // guaranteed by |A(p,1)| <= 3 p^{5/14} for p >= 17.
    for (const Gl3Form* f : {&fa, &fb}) {
      double reA = f->hecke_pair(p).first.real();
      if (!(p * p + 2.0 * p * reA + 1.0 > 0.0)) {
        throw std::logic_error("determination_test: positivity failed at p=" + std::to_string(p));
      }
    }
    cplx ra = local_ratio(fa, p);
    cplx rb = local_ratio(fb, p);
    bool agree = std::abs(ra - rb) <= 1e-9 * std::max(1.0, std::abs(ra));
    out.per_prime.emplace_back(p, agree);
    if (!agree && !out.separated) {
      out.separated = true;
      out.first_separating_prime = p;
    }
  }
  return out;
}

MainTermConstants main_term_constants(const Gl3Form& f, const TwistIndex& twist,
                                      const SmoothWeight& w, long long P) {
  MainTermConstants out;
  GProductResult g = G_phi_product(f, twist, cplx(1.0), P);
  out.G_phi_l = g.value;
  auto G_at = [&](double s) { return G_phi_product(f, twist, cplx(s), P).value; };
  auto central = [&](double h) { return (G_at(1.0 + h) - G_at(1.0 - h)) / (2.0 * h); };
  out.G_phi_deriv = (4.0 * central(5e-5) - central(1e-4)) / 3.0;
  out.L2_value_or_residue =
      f.self_dual ? cplx(residue_L2_sym2(f, P)) : L2_sym2(f, cplx(1.0), P);
  out.C_phi_l = C_phi(f, twist, w);
  out.kappa = gamma_ratio_kappa(f);
  out.a_coeff = a_coefficient(f);
  out.c_phi = compute_c_phi(f);
  return out;
}

}  // namespace gl3
