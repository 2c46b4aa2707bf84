#pragma once
// Central values through the approximate functional equation, the twisted
// first moment over quadratic discriminants with its main-term prediction,
// and the Poisson-summation verification harness.

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gl3twist/archimedean.hpp"
#include "gl3twist/arith.hpp"
#include "gl3twist/form.hpp"

namespace gl3 {

struct MomentOptions {
  int threads = 1;
  double cache_step = 0.006;    // V-cache grid spacing in ln y
  double point_tol = 1e-12;     // |V| level fixing the certified n-cutoff
  int block = 64;               // d-block size of the deterministic reduction
  long long euler_P = 1000000;  // prime cutoff for main-term constants
};

// Shared state for evaluating many central values against one coefficient
// table and one V cache: sized once for every odd square-free d <= d_max.
class CentralValueEngine {
 public:
  CentralValueEngine(const Gl3Form& f, double d_max, const MomentOptions& opt = {});

  // L(1/2, phi x chi_{8d}) for odd square-free d, by the truncated sum
  //   sum_n [A(n,1) V(n c) + kappa conj(A(n,1) V(n c))] chi_{8d}(n)/sqrt(n),
  // c = (pi/8d)^{3/2}, cut where the certified |V| bound drops below tol.
  std::complex<double> value(long long d) const;

  double y_cut() const { return y_cut_; }
  long long n_limit() const { return n_limit_; }
  double tail_bound() const { return tail_bound_; }

 private:
  const Gl3Form* form_;
  bool self_dual_;
  std::complex<double> kappa_;
  double y_cut_;
  long long n_limit_;
  double tail_bound_;
  std::shared_ptr<VCache> cache_;
  std::shared_ptr<CoeffTable> coeffs_;
  std::vector<int32_t> spf_;  // smallest prime factor, for the chi sieve
};

std::complex<double> central_value(const Gl3Form& f, long long d,
                                   const MomentOptions& opt = {});

// chi_q(n) for 1 <= n <= nmax as int8 entries, by a multiplicative sieve
// with Kronecker evaluations only at primes; even entries stay zero (the
// moduli in use are multiples of 8).  The spf overload reuses a caller's
// smallest-prime-factor table indexed up to nmax.
std::vector<int8_t> quadratic_character_sieve(long long q, long long nmax,
                                              const std::vector<int32_t>& spf);
std::vector<int8_t> quadratic_character_sieve(long long q, long long nmax);

struct MomentReport {
  std::string form;
  long long l = 1;
  double X = 0.0;
  long long count = 0;  // odd square-free d in (X, 2X)
  std::complex<double> computed_moment{0.0, 0.0};
  std::complex<double> predicted_main{0.0, 0.0};
  std::complex<double> ratio{0.0, 0.0};
  std::string branch;          // "self_dual" | "non_self_dual"
  std::string prediction_note; // empty, or why the prediction is unavailable
  double y_cut = 0.0;          // truncation stats
  long long n_limit = 0;
  double tail_bound = 0.0;
  double seconds = 0.0;
};

// Direct sum over odd square-free d in (X, 2X) of
// chi_{8d}(l) L(1/2, phi x chi_{8d}) Phi(d/X).
std::complex<double> twisted_first_moment(const Gl3Form& f, const TwistIndex& twist, double X,
                                          const SmoothWeight& weight,
                                          const MomentOptions& opt = {});

// Main term of the first moment: on the self-dual branch
//   residue * PhiCheck(0) * X / (zeta(2) sqrt(l1)) * prod_{p|l} p/(p+1)
//     * (G_phi(l) log(X / l1^{2/3}) + C_phi(l)),
// and on the non-self-dual branch
//   2 PhiCheck(0) X / (3 zeta(2) sqrt(l1)) * prod_{p|l} p/(p+1)
//     * (G_phi(l) L^{2}(1, sym2 phi) + kappa conj(G_phi(l)) L^{2}(1, sym2 dual)).
std::complex<double> main_term_prediction(const Gl3Form& f, const TwistIndex& twist, double X,
                                          const SmoothWeight& weight,
                                          const MomentOptions& opt = {});

// Full run: moment, prediction (with a note instead of a throw when the
// prediction is undefined for the form), ratio, truncation stats, timing.
MomentReport moment_report(const Gl3Form& f, const TwistIndex& twist, double X,
                           const SmoothWeight& weight, const MomentOptions& opt = {});

struct PoissonResult {
  double lhs = 0.0;
  std::complex<double> rhs{0.0, 0.0};
  double residual = 0.0;
};

// Two sides of the Mobius-truncated Poisson identity for the character sum
//   (1/X) sum_{d odd} M_Y(d) (d/n) F(d/X)
//     = (1/2n)(2/n) sum_{alpha<=Y,(alpha,2n)=1} mu(alpha)/alpha^2
//         sum_k (-1)^k G_k(n) FTilde(kX / (2 alpha^2 n)),
// with the k-sum truncated under a certified decay check of FTilde.
PoissonResult poisson_verify(long long n, double X, double Y, const SmoothWeight& weight);

// Independent degenerate-case oracle: L(1/2, chi_{8d}) from the GL(1)
// functional equation, V1(y) = Q(1/4, y^2) (normalized incomplete gamma).
double gl1_central_value(long long d);

// Report emission: CSV columns
// form,l,X,count,re_moment,im_moment,re_pred,im_pred,ratio,seconds
// at 15 significant digits, and a JSON object carrying every field.
std::string moment_csv_header();
std::string moment_csv_row(const MomentReport& r);
std::string moment_json(const MomentReport& r);

}  // namespace gl3
