#include "gl3twist/moments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <thread>

#include <boost/math/special_functions/gamma.hpp>

#include "json.hpp"

#include "gl3twist/eulermain.hpp"

namespace gl3 {

namespace {

constexpr double kPi = std::numbers::pi;

double conductor_scale(double d) { return std::pow(kPi / (8.0 * d), 1.5); }

}  // namespace

std::vector<int8_t> quadratic_character_sieve(long long q, long long nmax,
                                              const std::vector<int32_t>& spf) {
  // chi_q(n) for odd n by a multiplicative sieve; Kronecker evaluations
  // only at primes.  chi_q vanishes on even n for the moduli q = 8d used
  // here, and the sieve leaves those entries at zero.
  std::vector<int8_t> chi(static_cast<size_t>(nmax) + 1, 0);
  if (nmax >= 1) chi[1] = 1;
  for (long long n = 3; n <= nmax; n += 2) {
    long long p = spf[static_cast<size_t>(n)];
    chi[static_cast<size_t>(n)] =
        (p == n) ? static_cast<int8_t>(kronecker(q, n))
                 : static_cast<int8_t>(chi[static_cast<size_t>(p)] * chi[static_cast<size_t>(n / p)]);
  }
  return chi;
}

std::vector<int8_t> quadratic_character_sieve(long long q, long long nmax) {
  std::vector<int32_t> spf(static_cast<size_t>(nmax) + 1, 0);
  for (long long i = 2; i <= nmax; ++i) {
    if (spf[static_cast<size_t>(i)] == 0) {
      for (long long j = i; j <= nmax; j += i) {
        if (spf[static_cast<size_t>(j)] == 0) spf[static_cast<size_t>(j)] = static_cast<int32_t>(i);
      }
    }
  }
  return quadratic_character_sieve(q, nmax, spf);
}

CentralValueEngine::CentralValueEngine(const Gl3Form& f, double d_max, const MomentOptions& opt)
    : form_(&f), self_dual_(f.self_dual), kappa_(gamma_ratio_kappa(f)) {
  if (d_max < 1.0) throw std::invalid_argument("CentralValueEngine: d_max >= 1");
  VTailBound tb(f);

  // Smallest y with a certified |V(y)| below tol: geometric bisection.
  double lo = 0.5, hi = 400.0;
  if (tb(hi) > opt.point_tol) {
    throw std::runtime_error("CentralValueEngine: tail certificate never reaches tolerance");
  }
  if (tb(lo) <= opt.point_tol) {
    hi = lo;
  } else {
    for (int i = 0; i < 64; ++i) {
      double mid = std::sqrt(lo * hi);
      (tb(mid) <= opt.point_tol ? hi : lo) = mid;
    }
  }
  y_cut_ = hi;

  const double c_min = conductor_scale(d_max);
  n_limit_ = static_cast<long long>(std::ceil(y_cut_ / c_min));
  coeffs_ = std::make_shared<CoeffTable>(coeff_table(f, n_limit_));

  spf_.assign(static_cast<size_t>(n_limit_) + 1, 0);
  for (long long i = 2; i <= n_limit_; ++i) {
    if (spf_[i] == 0) {
      for (long long j = i; j <= n_limit_; j += i) {
        if (spf_[j] == 0) spf_[j] = static_cast<int32_t>(i);
      }
    }
  }

  cache_ = std::make_shared<VCache>(f, 0.9 * c_min, 1.02 * y_cut_, opt.cache_step);

  // Envelope for the discarded n-tail at the largest d: coefficients are
  // bounded by 10 n^{5/14} at this scale, |V| by the certified line bounds.
  double tail = 0.0;
  double n0 = static_cast<double>(n_limit_);
  for (double n = n0; n < 1e12; n *= 1.05) {
    double piece = 10.0 * std::pow(n, 5.0 / 14.0 - 0.5) * tb(n * c_min) * (0.05 * n);
    tail += piece;
    if (piece < 1e-30 * (1.0 + tail)) break;
  }
  tail_bound_ = tail;
}

std::complex<double> CentralValueEngine::value(long long d) const {
  if (d <= 0 || d % 2 == 0) {
    throw std::invalid_argument("central_value: d must be positive and odd");
  }
  if (!squarefree_indicator(d)) {
    throw std::invalid_argument("central_value: d must be square-free");
  }
  const double c = conductor_scale(static_cast<double>(d));
  const long long nmax = static_cast<long long>(std::ceil(y_cut_ / c));
  if (nmax > n_limit_) {
    throw std::length_error("central_value: coefficient table too short for this d's certified cutoff");
  }

  std::vector<int8_t> chi = quadratic_character_sieve(8 * d, nmax, spf_);

  if (self_dual_) {
    double acc = 0.0;
    const auto& a = coeffs_->a;
    for (long long n = 1; n <= nmax; n += 2) {
      if (chi[n] == 0) continue;
      double v = cache_->real_at(c * static_cast<double>(n));
      if (v == 0.0) continue;
      acc += static_cast<double>(chi[n]) * a[static_cast<size_t>(n)].real() * v /
             std::sqrt(static_cast<double>(n));
    }
    return {2.0 * acc, 0.0};  // kappa = 1 doubles the self-dual sum
  }

  std::complex<double> acc(0.0);
  for (long long n = 1; n <= nmax; n += 2) {
    if (chi[n] == 0) continue;
    std::complex<double> t =
        (*coeffs_)[n] * (*cache_)(c * static_cast<double>(n));
    acc += (t + kappa_ * std::conj(t)) *
           (static_cast<double>(chi[n]) / std::sqrt(static_cast<double>(n)));
  }
  return acc;
}

std::complex<double> central_value(const Gl3Form& f, long long d, const MomentOptions& opt) {
  CentralValueEngine engine(f, static_cast<double>(d), opt);
  return engine.value(d);
}

namespace {

std::complex<double> moment_core(const Gl3Form& f, const TwistIndex& twist, double X,
                                 const SmoothWeight& weight, const MomentOptions& opt,
                                 MomentReport* rep) {
  if (twist.l % 2 == 0) throw std::invalid_argument("twisted_first_moment: l must be odd");
  if (X <= 0.0) throw std::invalid_argument("twisted_first_moment: X > 0");

  std::vector<long long> ds;
  for (long long d = static_cast<long long>(std::floor(X)) + 1;
       static_cast<double>(d) < 2.0 * X; ++d) {
    if (d >= 1 && d % 2 == 1 && static_cast<double>(d) > X && squarefree_indicator(d)) {
      ds.push_back(d);
    }
  }
  if (rep != nullptr) rep->count = static_cast<long long>(ds.size());
  if (ds.empty()) {
    if (rep != nullptr) {
      rep->prediction_note = "empty support: no odd square-free d in (X, 2X)";
    }
    return {0.0, 0.0};
  }

  CentralValueEngine engine(f, static_cast<double>(ds.back()), opt);
  if (rep != nullptr) {
    rep->y_cut = engine.y_cut();
    rep->n_limit = engine.n_limit();
    rep->tail_bound = engine.tail_bound();
  }

  const size_t block = static_cast<size_t>(std::max(1, opt.block));
  const size_t nblocks = (ds.size() + block - 1) / block;
  std::vector<std::complex<double>> partial(nblocks, std::complex<double>(0.0));
  auto run_block = [&](size_t b) {
    std::complex<double> acc(0.0);
    size_t end = std::min(ds.size(), (b + 1) * block);
    for (size_t i = b * block; i < end; ++i) {
      long long d = ds[i];
      double w = weight(static_cast<double>(d) / X);
      if (w == 0.0) continue;
      acc += static_cast<double>(kronecker(8 * d, twist.l)) * engine.value(d) * w;
    }
    partial[b] = acc;
  };

  int threads = std::max(1, opt.threads);
  if (threads == 1 || nblocks <= 1) {
    for (size_t b = 0; b < nblocks; ++b) run_block(b);
  } else {
    std::atomic<size_t> next{0};
    auto worker = [&]() {
      for (size_t b = next.fetch_add(1); b < nblocks; b = next.fetch_add(1)) run_block(b);
    };
    std::vector<std::thread> pool;
    int tcount = std::min<size_t>(static_cast<size_t>(threads), nblocks);
    for (int t = 0; t < tcount; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Ordered pairwise reduction: bit-stable regardless of thread schedule.
  std::vector<std::complex<double>> level = partial;
  while (level.size() > 1) {
    std::vector<std::complex<double>> up;
    up.reserve((level.size() + 1) / 2);
    for (size_t i = 0; i + 1 < level.size(); i += 2) up.push_back(level[i] + level[i + 1]);
    if (level.size() % 2 == 1) up.push_back(level.back());
    level.swap(up);
  }
  return level[0];
}

}  // namespace

std::complex<double> twisted_first_moment(const Gl3Form& f, const TwistIndex& twist, double X,
                                          const SmoothWeight& weight, const MomentOptions& opt) {
  return moment_core(f, twist, X, weight, opt, nullptr);
}

std::complex<double> main_term_prediction(const Gl3Form& f, const TwistIndex& twist, double X,
                                          const SmoothWeight& weight, const MomentOptions& opt) {
  if (twist.l % 2 == 0) throw std::invalid_argument("main_term_prediction: l must be odd");
  const double phi0 = phi_check0(weight);
  const double zeta2 = kPi * kPi / 6.0;
  double lfac = 1.0;
  for (auto& [p, e] : factorize(twist.l)) {
    (void)e;
    lfac *= static_cast<double>(p) / (p + 1.0);
  }
  const double sqrt_l1 = std::sqrt(static_cast<double>(twist.l1));
  const long long PG = std::min<long long>(opt.euler_P, 100000);
  std::complex<double> G = G_phi_product(f, twist, std::complex<double>(1.0), PG).value;

  if (f.self_dual) {
    double residue = residue_L2_sym2(f, opt.euler_P);
    std::complex<double> C = C_phi(f, twist, weight);
    double logterm = std::log(X / std::pow(static_cast<double>(twist.l1), 2.0 / 3.0));
    return residue * phi0 * X / (zeta2 * sqrt_l1) * lfac * (G * logterm + C);
  }

  std::complex<double> L2 = L2_sym2(f, std::complex<double>(1.0), PG);
  std::complex<double> L2d = L2_sym2(dual(f), std::complex<double>(1.0), PG);
  std::complex<double> kap = gamma_ratio_kappa(f);
  return 2.0 * phi0 * X / (3.0 * zeta2 * sqrt_l1) * lfac *
         (G * L2 + kap * std::conj(G) * L2d);
}

MomentReport moment_report(const Gl3Form& f, const TwistIndex& twist, double X,
                           const SmoothWeight& weight, const MomentOptions& opt) {
  MomentReport rep;
  rep.form = f.label;
  rep.l = twist.l;
  rep.X = X;
  rep.branch = f.self_dual ? "self_dual" : "non_self_dual";
  auto t0 = std::chrono::steady_clock::now();
  rep.computed_moment = moment_core(f, twist, X, weight, opt, &rep);
  try {
    rep.predicted_main = main_term_prediction(f, twist, X, weight, opt);
    if (rep.predicted_main != std::complex<double>(0.0)) {
      rep.ratio = rep.computed_moment / rep.predicted_main;
    }
  } catch (const std::exception& e) {
    rep.predicted_main = {0.0, 0.0};
    rep.ratio = {0.0, 0.0};
    if (!rep.prediction_note.empty()) rep.prediction_note += "; ";
    rep.prediction_note += e.what();
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

PoissonResult poisson_verify(long long n, double X, double Y, const SmoothWeight& weight) {
  if (n <= 0 || n % 2 == 0) throw std::invalid_argument("poisson_verify: n must be odd positive");
  if (Y > 50.0) throw std::invalid_argument("poisson_verify: Y <= 50");
  if (X < 1.0) throw std::invalid_argument("poisson_verify: X >= 1");

  PoissonResult out;

  // Left side: (1/X) sum over odd d of M_Y(d) (d/n) F(d/X).
  double lhs = 0.0;
  for (long long d = static_cast<long long>(std::floor(X)) + 1;
       static_cast<double>(d) < 2.0 * X; ++d) {
    if (d % 2 == 0) continue;
    double w = weight(static_cast<double>(d) / X);
    if (w == 0.0) continue;
    lhs += static_cast<double>(MY(d, Y)) * static_cast<double>(kronecker(d, n)) * w;
  }
  lhs /= X;
  out.lhs = lhs;

  // G_k(n) depends on k only through k mod n.
  std::vector<double> gtab(static_cast<size_t>(n));
  double gmax = 0.0;
  for (long long j = 0; j < n; ++j) {
    gtab[static_cast<size_t>(j)] = gauss_G(j, n).value();
    gmax = std::max(gmax, std::abs(gtab[static_cast<size_t>(j)]));
  }
  auto gk = [&](long long k) { return gtab[static_cast<size_t>(((k % n) + n) % n)]; };

  std::complex<double> rhs(0.0);
  const long long kcap = 20000;
  for (long long alpha = 1; static_cast<double>(alpha) <= Y; alpha += 2) {
    if (std::gcd(alpha, 2 * n) != 1) continue;
    int mu = mobius(alpha);
    if (mu == 0) continue;
    const double denom = 2.0 * static_cast<double>(alpha) * static_cast<double>(alpha) *
                         static_cast<double>(n);
    double ksum = gk(0) * phi_tilde(weight, 0.0);
    double prev_block_max = std::abs(phi_tilde(weight, 0.0)) + 1.0;
    bool certified = false;
    for (long long k0 = 1; k0 <= kcap && !certified; k0 += 16) {
      double block_max = 0.0;
      for (long long k = k0; k < k0 + 16; ++k) {
        double xi = static_cast<double>(k) * X / denom;
        double fp = phi_tilde(weight, xi);
        double fm = phi_tilde(weight, -xi);
        double sign = (k % 2 == 0) ? 1.0 : -1.0;
        ksum += sign * (gk(k) * fp + gk(-k) * fm);
        block_max = std::max({block_max, std::abs(fp), std::abs(fm)});
      }
      // Certified truncation: the transform's envelope must be decaying and
      // the remaining contribution negligible against the identity scale.
      if (block_max <= prev_block_max && 32.0 * gmax * block_max < 1e-10 * denom) {
        certified = true;
      }
      prev_block_max = std::max(block_max, 1e-300);
    }
    if (!certified) {
      throw std::runtime_error("poisson_verify: k-truncation certificate failure");
    }
    rhs += (static_cast<double>(mu) /
            (static_cast<double>(alpha) * static_cast<double>(alpha))) *
           ksum;
  }
  rhs *= static_cast<double>(kronecker(2, n)) / (2.0 * static_cast<double>(n));
  out.rhs = rhs;
  out.residual = std::abs(std::complex<double>(lhs) - rhs);
  return out;
}

double gl1_central_value(long long d) {
  if (d <= 0 || d % 2 == 0 || !squarefree_indicator(d)) {
    throw std::invalid_argument("gl1_central_value: d must be odd, square-free, positive");
  }
  const long long q = 8 * d;
  const double scale = std::sqrt(kPi / static_cast<double>(q));
  double acc = 0.0;
  for (long long m = 1;; m += 2) {
    double y = static_cast<double>(m) * scale;
    if (y > 8.0) break;  // Q(1/4, y^2) < 1e-26 beyond
    int chi = kronecker(q, m);
    if (chi == 0) continue;
    acc += static_cast<double>(chi) * boost::math::gamma_q(0.25, y * y) /
           std::sqrt(static_cast<double>(m));
  }
  return 2.0 * acc;
}

std::string moment_csv_header() {
  return "form,l,X,count,re_moment,im_moment,re_pred,im_pred,ratio,seconds";
}

std::string moment_csv_row(const MomentReport& r) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), "%s,%lld,%.15g,%lld,%.15g,%.15g,%.15g,%.15g,%.15g,%.15g",
                r.form.c_str(), r.l, r.X, r.count, r.computed_moment.real(),
                r.computed_moment.imag(), r.predicted_main.real(), r.predicted_main.imag(),
                r.ratio.real(), r.seconds);
  return buf;
}

std::string moment_json(const MomentReport& r) {
  nlohmann::json j;
  j["form"] = r.form;
  j["l"] = r.l;
  j["X"] = r.X;
  j["count"] = r.count;
  j["re_moment"] = r.computed_moment.real();
  j["im_moment"] = r.computed_moment.imag();
  j["re_pred"] = r.predicted_main.real();
  j["im_pred"] = r.predicted_main.imag();
  j["ratio_re"] = r.ratio.real();
  j["ratio_im"] = r.ratio.imag();
  j["branch"] = r.branch;
  j["prediction_note"] = r.prediction_note;
  j["y_cut"] = r.y_cut;
  j["n_limit"] = r.n_limit;
  j["tail_bound"] = r.tail_bound;
  j["seconds"] = r.seconds;
  return j.dump();
}

}  // namespace gl3
