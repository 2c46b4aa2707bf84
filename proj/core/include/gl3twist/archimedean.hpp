#pragma once
// Gamma-factor analysis: complex log-Gamma / digamma, the Mellin kernel
// V(y) of the approximate functional equation with contour quadrature,
// certified tail bounds, a read-only interpolation cache for bulk
// evaluation, the gamma-ratio kappa, the first Laurent coefficient of the
// normalized gamma product, and the smooth bump weight with its Mellin
// (phi_check) and cosine-plus-sine (phi_tilde) transforms.

#include <complex>
#include <functional>
#include <vector>

#include "gl3twist/form.hpp"

namespace gl3 {

std::complex<double> log_gamma(std::complex<double> z);
std::complex<double> digamma(std::complex<double> z);

// Fixed C-infinity bump supported on (1,2); all derivatives vanish at the
// endpoints, so uniform trapezoid sums converge spectrally.
struct SmoothWeight {
  double lo = 1.0, hi = 2.0;
  int nodes = 4001;
  double operator()(double t) const;
};

struct ContourSpec {
  double u = 1.0;    // abscissa Re s = u > 0
  double T = 12.0;   // truncation |Im s| <= T
  int nodes = 2400;  // trapezoid points across [-T, T]
  // Optionally damp the integrand by exp(s^2) (even, value 1 at s=0, decays
  // on vertical lines).  Off by default: the bare gamma product already
  // decays exponentially, and the undamped kernel keeps V(y) uniformly
  // small for large y instead of re-inflating it through exp(u^2).
  bool gaussian_regulator = false;
};

// Contour adapted to the form's parameters and the target y: small
// abscissa for small y (bounds y^{-u}), u = 8 for large y (controls
// cancellation), truncation past the gamma decay threshold.
ContourSpec auto_contour(const Gl3Form& f, double y);

// Precomputed integrand samples g(s)/s on a fixed vertical line, so many
// y evaluate against the same kernel.
class VKernelIntegrator {
 public:
  VKernelIntegrator(const Gl3Form& f, const ContourSpec& spec);
  std::complex<double> value(double y) const;
  const ContourSpec& spec() const { return spec_; }

 private:
  ContourSpec spec_;
  double dt_ = 0.0;
  std::vector<std::complex<double>> k_;  // g(u+it)/ (u+it) * trapezoid weight
};

// V(y) = (1/2 pi i) Int_{(u)} prod_i Gamma((s+1/2-gamma_i)/2) /
//        Gamma((1/2-gamma_i)/2) * y^{-s} ds / s, truncated at |Im s| = T.
std::complex<double> V_kernel(const Gl3Form& f, double y, const ContourSpec& spec);
std::complex<double> V_kernel(const Gl3Form& f, double y);  // auto contour

// Certified upper bound for |V(y)|: minimum over a few right-shifted lines
// Re s = A of y^{-A} times the line constant (1/2pi) Int |g(A+it)/(A+it)| dt.
// Decreasing in y; line constants are computed once per call site via the
// returned object.
class VTailBound {
 public:
  explicit VTailBound(const Gl3Form& f);
  double operator()(double y) const;

 private:
  std::vector<double> abscissa_;
  std::vector<double> line_const_;
};

// kappa = prod_i Gamma((1/2+gamma_i)/2) / Gamma((1/2-gamma_i)/2).  For a
// self-dual form the dual contribution it multiplies is the form's own, and
// the literal quotient can sit on a Gamma pole (gamma_i = -1/2 gives
// Gamma(0)), so the self-dual branch returns exactly 1.
std::complex<double> gamma_ratio_kappa(const Gl3Form& f);

// First-order coefficient of the normalized gamma product
// G(s) = prod_i Gamma((s+1/2-gamma_i)/2)/Gamma((1/2-gamma_i)/2) = 1 + a s + ...
// computed as (1/2) sum_i psi((1/2-gamma_i)/2).
std::complex<double> a_coefficient(const Gl3Form& f);
// Independent check: Richardson-extrapolated central difference of G.
std::complex<double> a_coefficient_fd(const Gl3Form& f);

// Mellin transform of the bump: Int_0^infty Phi(y) y^w dy (Re w > -1).
std::complex<double> phi_check(const SmoothWeight& w, std::complex<double> wexp);
double phi_check0(const SmoothWeight& w);        // value at w = 0
double phi_check_deriv0(const SmoothWeight& w);  // Int Phi(y) log(y) dy

// Int (cos(2 pi xi x) + sin(2 pi xi x)) F(x) dx for smooth F on [lo, hi].
double phi_tilde_fn(const std::function<double(double)>& F, double lo, double hi, double xi);
double phi_tilde(const SmoothWeight& w, double xi);

// Geometric-grid cache of V with cubic interpolation in log y; read-only
// after construction.  Queries below ymin fall back to direct quadrature;
// queries above ymax return 0 (choose ymax so the tail bound is below the
// caller's tolerance).
class VCache {
 public:
  VCache(const Gl3Form& f, double ymin, double ymax, double step_log = 0.006);
  std::complex<double> operator()(double y) const;
  double real_at(double y) const;  // self-dual fast path (real part)
  double ymin() const { return ymin_; }
  double ymax() const { return ymax_; }

 private:
  Gl3Form form_;
  bool self_dual_;
  double ymin_, ymax_, lny0_, h_;
  std::vector<double> re_, im_;
};

}  // namespace gl3
