#include "gl3twist/archimedean.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gl3 {

namespace {

constexpr double kPi = std::numbers::pi;

// Lanczos approximation, g = 7, 9 coefficients.
constexpr double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

bool near_nonpositive_integer(std::complex<double> z, double tol = 1e-12) {
  if (z.real() > 0.5) return false;
  double r = std::round(z.real());
  return r <= 0.0 && std::abs(z.real() - r) < tol && std::abs(z.imag()) < tol;
}

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
  using C = std::complex<double>;
  if (near_nonpositive_integer(z)) throw std::domain_error("log_gamma: pole");
  if (z.real() < 0.5) {
    // Reflection: log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z).
    return std::log(C(kPi) / std::sin(C(kPi) * z)) - log_gamma(C(1.0) - z);
  }
  z -= 1.0;
  C x(kLanczos[0]);
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + C(static_cast<double>(i)));
  C t = z + 7.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

std::complex<double> digamma(std::complex<double> z) {
  using C = std::complex<double>;
  if (near_nonpositive_integer(z)) throw std::domain_error("digamma: pole");
  if (z.real() < 0.5) {
    // psi(z) = psi(1-z) - pi cot(pi z)
    return digamma(C(1.0) - z) - kPi * std::cos(kPi * z) / std::sin(kPi * z);
  }
  C shift(0.0);
  while (z.real() < 12.0) {
    shift -= 1.0 / z;
    z += 1.0;
  }
  // Asymptotic series with Bernoulli numbers B_2..B_14.
  static const double b[7] = {1.0 / 12.0,  -1.0 / 120.0,     1.0 / 252.0, -1.0 / 240.0,
                              1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0};
  C inv2 = 1.0 / (z * z);
  C sum(0.0);
  C pw = inv2;
  for (int k = 0; k < 7; ++k) {
    sum += b[k] * pw;
    pw *= inv2;
  }
  return shift + std::log(z) - 0.5 / z - sum;
}

double SmoothWeight::operator()(double t) const {
  if (t <= lo || t >= hi) return 0.0;
  double d = (t - lo) * (hi - t);
  double e = -1.0 / d;
  if (e < -700.0) return 0.0;
  return std::exp(e);
}

namespace {

// Normalized gamma product g(s) = prod Gamma((s+1/2-gamma_i)/2) /
// Gamma((1/2-gamma_i)/2), optionally times exp(s^2).
std::complex<double> gamma_product(const Gl3Form& f, std::complex<double> s, bool regulator) {
  std::complex<double> lg(0.0);
  for (const auto& g : f.gamma) {
    lg += log_gamma((s + 0.5 - g) / 2.0) - log_gamma((0.5 - g) / 2.0);
  }
  if (regulator) lg += s * s;
  return std::exp(lg);
}

double max_real_gamma(const Gl3Form& f) {
  double m = 0.0;
  for (const auto& g : f.gamma) m = std::max(m, std::abs(g.real()));
  return m;
}

}  // namespace

ContourSpec auto_contour(const Gl3Form& f, double y) {
  ContourSpec spec;
  double maxg = max_real_gamma(f);
  if (y >= 3.0) {
    spec.u = 8.0;
  } else if (y >= 0.5) {
    spec.u = 1.0;
  } else {
    spec.u = std::clamp(3.0 / std::log(1.0 / y), 0.05, 1.0);
  }
  spec.T = 18.0 + 2.2 * maxg + 1.5 * spec.u;
  double spacing = spec.u <= 1.01 ? 0.005 : 0.01;
  spec.nodes = static_cast<int>(std::ceil(2.0 * spec.T / spacing));
  return spec;
}

VKernelIntegrator::VKernelIntegrator(const Gl3Form& f, const ContourSpec& spec) : spec_(spec) {
  if (spec_.u <= 0.0) throw std::invalid_argument("VKernelIntegrator: need u > 0");
  if (spec_.nodes < 16) throw std::invalid_argument("VKernelIntegrator: too few nodes");
  const int n = spec_.nodes;
  dt_ = 2.0 * spec_.T / n;
  k_.resize(n + 1);
  double peak = 0.0;
  for (int j = 0; j <= n; ++j) {
    double t = -spec_.T + j * dt_;
    std::complex<double> s(spec_.u, t);
    std::complex<double> g = gamma_product(f, s, spec_.gaussian_regulator);
    peak = std::max(peak, std::abs(g));
    double w = (j == 0 || j == n) ? 0.5 : 1.0;
    k_[j] = g / s * (w * dt_);
  }
  // The truncation error is controlled by the integrand at the endpoints.
  double edge = std::max(std::abs(k_[0]), std::abs(k_.back()));
  double mid = std::abs(k_[k_.size() / 2]);
  if (!(edge <= 1e-10 * std::max(mid, peak * dt_))) {
    throw std::invalid_argument("VKernelIntegrator: contour too short for target accuracy");
  }
}

std::complex<double> VKernelIntegrator::value(double y) const {
  if (!(y > 0.0)) throw std::invalid_argument("V_kernel: y > 0 required");
  const double lny = std::log(y);
  // y^{-s} = y^{-u} e^{-i t ln y}; phase advanced by recurrence, re-anchored
  // periodically to keep drift at machine level.
  const std::complex<double> step = std::polar(1.0, -dt_ * lny);
  std::complex<double> sum(0.0);
  std::complex<double> ph = std::polar(1.0, spec_.T * lny);
  for (size_t j = 0; j < k_.size(); ++j) {
    if (j % 256 == 0) ph = std::polar(1.0, -(-spec_.T + j * dt_) * lny);
    sum += k_[j] * ph;
    ph *= step;
  }
  return sum * std::pow(y, -spec_.u) / (2.0 * kPi);
}

std::complex<double> V_kernel(const Gl3Form& f, double y, const ContourSpec& spec) {
  return VKernelIntegrator(f, spec).value(y);
}

std::complex<double> V_kernel(const Gl3Form& f, double y) {
  return VKernelIntegrator(f, auto_contour(f, y)).value(y);
}

VTailBound::VTailBound(const Gl3Form& f) {
  const double maxg = max_real_gamma(f);
  for (double a : {8.0, 12.0, 20.0, 30.0}) {
    double T = 18.0 + 2.2 * (maxg + a);
    double dt = 0.02;
    int n = static_cast<int>(std::ceil(2.0 * T / dt));
    double integral = 0.0;
    for (int j = 0; j <= n; ++j) {
      double t = -T + j * dt;
      std::complex<double> s(a, t);
      double w = (j == 0 || j == n) ? 0.5 : 1.0;
      integral += std::abs(gamma_product(f, s, false)) / std::abs(s) * w * dt;
    }
    abscissa_.push_back(a);
    line_const_.push_back(integral / (2.0 * kPi));
  }
}

double VTailBound::operator()(double y) const {
  double best = HUGE_VAL;
  for (size_t i = 0; i < abscissa_.size(); ++i) {
    best = std::min(best, line_const_[i] * std::pow(y, -abscissa_[i]));
  }
  return best;
}

std::complex<double> gamma_ratio_kappa(const Gl3Form& f) {
  if (f.self_dual) return std::complex<double>(1.0);
  std::complex<double> lg(0.0);
  for (const auto& g : f.gamma) {
    std::complex<double> zp = (0.5 + g) / 2.0;
    std::complex<double> zm = (0.5 - g) / 2.0;
    if (near_nonpositive_integer(zp) || near_nonpositive_integer(zm)) {
      throw std::domain_error("gamma_ratio_kappa: parameter sits on a Gamma pole");
    }
    lg += log_gamma(zp) - log_gamma(zm);
  }
  return std::exp(lg);
}

std::complex<double> a_coefficient(const Gl3Form& f) {
  std::complex<double> a(0.0);
  for (const auto& g : f.gamma) a += 0.5 * digamma((0.5 - g) / 2.0);
  return a;
}

std::complex<double> a_coefficient_fd(const Gl3Form& f) {
  auto G = [&f](double s) { return gamma_product(f, std::complex<double>(s, 0.0), false); };
  auto central = [&](double h) { return (G(h) - G(-h)) / (2.0 * h); };
  std::complex<double> d1 = central(1e-3);
  std::complex<double> d2 = central(5e-4);
  return (4.0 * d2 - d1) / 3.0;
}

std::complex<double> phi_check(const SmoothWeight& w, std::complex<double> wexp) {
  if (wexp.real() <= -1.0) throw std::invalid_argument("phi_check: need Re w > -1");
  const int n = w.nodes - 1;
  const double h = (w.hi - w.lo) / n;
  std::complex<double> sum(0.0);
  for (int j = 1; j < n; ++j) {  // endpoint values vanish identically
    double t = w.lo + j * h;
    sum += w(t) * std::pow(std::complex<double>(t, 0.0), wexp);
  }
  return sum * h;
}

double phi_check0(const SmoothWeight& w) {
  const int n = w.nodes - 1;
  const double h = (w.hi - w.lo) / n;
  double sum = 0.0;
  for (int j = 1; j < n; ++j) sum += w(w.lo + j * h);
  return sum * h;
}

double phi_check_deriv0(const SmoothWeight& w) {
  const int n = w.nodes - 1;
  const double h = (w.hi - w.lo) / n;
  double sum = 0.0;
  for (int j = 1; j < n; ++j) {
    double t = w.lo + j * h;
    sum += w(t) * std::log(t);
  }
  return sum * h;
}

double phi_tilde_fn(const std::function<double(double)>& F, double lo, double hi, double xi) {
  int n = std::max(4000, 48 * (1 + static_cast<int>(std::ceil(std::abs(xi) * (hi - lo)))));
  const double h = (hi - lo) / n;
  double sum = 0.0;
  for (int j = 0; j <= n; ++j) {
    double x = lo + j * h;
    double wgt = (j == 0 || j == n) ? 0.5 : 1.0;
    double ph = 2.0 * kPi * xi * x;
    sum += wgt * F(x) * (std::cos(ph) + std::sin(ph));
  }
  return sum * h;
}

double phi_tilde(const SmoothWeight& w, double xi) {
  return phi_tilde_fn([&w](double x) { return w(x); }, w.lo, w.hi, xi);
}

VCache::VCache(const Gl3Form& f, double ymin, double ymax, double step_log)
    : form_(f), self_dual_(f.self_dual), ymin_(ymin), ymax_(ymax), h_(step_log) {
  if (!(ymin > 0.0) || !(ymax > ymin)) throw std::invalid_argument("VCache: bad range");
  lny0_ = std::log(ymin) - 2.0 * h_;  // margin nodes for the cubic stencil
  size_t count = static_cast<size_t>(std::ceil((std::log(ymax) - lny0_) / h_)) + 4;
  re_.resize(count);
  if (!self_dual_) im_.resize(count);

  // One kernel per abscissa band; nodes in a band share it.
  struct Band {
    double y_lo, y_hi, rep;
  };
  const Band bands[3] = {{0.0, 0.5, ymin}, {0.5, 3.0, 1.0}, {3.0, HUGE_VAL, 10.0}};
  for (const Band& b : bands) {
    bool used = false;
    for (size_t i = 0; i < count && !used; ++i) {
      double y = std::exp(lny0_ + i * h_);
      used = y >= b.y_lo && y < b.y_hi;
    }
    if (!used) continue;
    VKernelIntegrator integ(f, auto_contour(f, b.rep));
    for (size_t i = 0; i < count; ++i) {
      double y = std::exp(lny0_ + i * h_);
      if (y < b.y_lo || y >= b.y_hi) continue;
      std::complex<double> v = integ.value(y);
      re_[i] = v.real();
      if (!self_dual_) im_[i] = v.imag();
    }
  }
}

namespace {
double catmull_rom(const std::vector<double>& p, size_t j, double t) {
  double pm = p[j - 1], p0 = p[j], p1 = p[j + 1], p2 = p[j + 2];
  return p0 + 0.5 * t *
                  (p1 - pm +
                   t * (2.0 * pm - 5.0 * p0 + 4.0 * p1 - p2 + t * (3.0 * (p0 - p1) + p2 - pm)));
}
}  // namespace

std::complex<double> VCache::operator()(double y) const {
  if (!(y > 0.0)) throw std::invalid_argument("VCache: y > 0 required");
  if (y > ymax_) return {0.0, 0.0};
  if (y < ymin_) return V_kernel(form_, y);
  double x = (std::log(y) - lny0_) / h_;
  size_t j = static_cast<size_t>(x);
  if (j < 1) j = 1;
  if (j > re_.size() - 3) j = re_.size() - 3;
  double t = x - j;
  double vr = catmull_rom(re_, j, t);
  double vi = self_dual_ ? 0.0 : catmull_rom(im_, j, t);
  return {vr, vi};
}

double VCache::real_at(double y) const {
  if (!(y > 0.0)) throw std::invalid_argument("VCache: y > 0 required");
  if (y > ymax_) return 0.0;
  if (y < ymin_) return V_kernel(form_, y).real();
  double x = (std::log(y) - lny0_) / h_;
  size_t j = static_cast<size_t>(x);
  if (j < 1) j = 1;
  if (j > re_.size() - 3) j = re_.size() - 3;
  return catmull_rom(re_, j, x - j);
}

}  // namespace gl3
