#include "gl3twist/symsq.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

#include "gl3twist/arith.hpp"

namespace gl3 {

std::complex<double> lambda_tensor(const Gl3Form& f, long long q) {
  if (q < 1) throw std::invalid_argument("lambda_tensor: q >= 1");
  cplx sum(0.0);
  for (long long k = 1; k * k * k <= q; ++k) {
    if (q % (k * k * k) != 0) continue;
    long long q1 = q / (k * k * k);
    for (long long m = 1; m * m <= q1; ++m) {
      if (q1 % (m * m) != 0) continue;
      long long n = q1 / (m * m);
      cplx a = coeff_general(f, m, n);
      sum += a * a;
    }
  }
  return sum;
}

std::complex<double> sym2_local_factor(const Gl3Form& f, long long p, std::complex<double> s) {
  if (!f.satake) throw std::logic_error("sym2_local_factor: form has no Satake data");
  auto sat = f.satake(p);
  const cplx x = std::pow(cplx(static_cast<double>(p)), -s);
  const cplx params[6] = {sat[0] * sat[0], sat[1] * sat[1], sat[2] * sat[2],
                          sat[0] * sat[1], sat[0] * sat[2], sat[1] * sat[2]};
  cplx out(1.0);
  for (const cplx& t : params) {
    cplx factor = cplx(1.0) - t * x;
    if (std::abs(factor) < 1e-14) {
      throw std::domain_error("sym2_local_factor: local factor pole");
    }
    out /= factor;
  }
  return out;
}

SymSquareLocal bc_coefficients(const Gl3Form& f, long long p, int H) {
  if (H < 0 || H > 20) throw std::invalid_argument("bc_coefficients: 0 <= H <= 20");
  auto pr = f.hecke_pair(p);
  SymSquareLocal out;
  out.p = p;
  out.lambda = lambda_tensor_sequence(pr.first, pr.second, H);
  out.B = recursion_window(out.lambda, pr.first, pr.second);
  out.C = recursion_window(out.B, pr.first, pr.second);
  return out;
}

double verify_square_identity(const Gl3Form& f, long long p, int H) {
  if (H < 0 || H > 10) throw std::invalid_argument("verify_square_identity: 0 <= H <= 10");
  auto pr = f.hecke_pair(p);
  std::vector<cplx> res = square_identity_residuals(pr.first, pr.second, H);
  double worst = 0.0;
  for (const cplx& r : res) worst = std::max(worst, std::abs(r));
  return worst;
}

double partial_sum_abs_square_coeffs(const Gl3Form& f, long long X) {
  if (X < 1) throw std::invalid_argument("partial_sum_abs_square_coeffs: X >= 1");
  if (X > 1000000) throw std::length_error("partial_sum_abs_square_coeffs: X beyond desk scale");
  // |A(n^2,1)| is multiplicative with p-part |A(p^{2e},1)| = |h_{2e}|.
  std::vector<int32_t> spf(static_cast<size_t>(X) + 1, 0);
  for (long long i = 2; i <= X; ++i) {
    if (spf[i] == 0) {
      for (long long j = i; j <= X; j += i) {
        if (spf[j] == 0) spf[j] = static_cast<int32_t>(i);
      }
    }
  }
  std::vector<cplx> a2(static_cast<size_t>(X) + 1, cplx(0.0));
  a2[1] = cplx(1.0);
  std::unordered_map<long long, std::vector<cplx>> hcache;
  double sum = std::abs(a2[1]);
  for (long long n = 2; n <= X; ++n) {
    long long p = spf[n];
    long long rest = n;
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    auto& h = hcache[p];
    if (static_cast<int>(h.size()) < 2 * e + 1) {
      auto pr = f.hecke_pair(p);
      h = hecke_h_sequence(pr.first, pr.second, 2 * e + 1);
    }
    a2[n] = a2[rest] * h[2 * e];
    sum += std::abs(a2[n]);
  }
  return sum;
}

double partial_sum_growth_exponent(const Gl3Form& f, long long X) {
  if (X < 4) throw std::invalid_argument("partial_sum_growth_exponent: X >= 4");
  double x2 = std::log(static_cast<double>(X));
  double x1 = std::log(static_cast<double>(X) / 2.0);
  double x0 = std::log(static_cast<double>(X) / 4.0);
  double y2 = std::log(partial_sum_abs_square_coeffs(f, X));
  double y1 = std::log(partial_sum_abs_square_coeffs(f, X / 2));
  double y0 = std::log(partial_sum_abs_square_coeffs(f, X / 4));
  // Least-squares slope through the three points.
  double mx = (x0 + x1 + x2) / 3.0, my = (y0 + y1 + y2) / 3.0;
  double num = (x0 - mx) * (y0 - my) + (x1 - mx) * (y1 - my) + (x2 - mx) * (y2 - my);
  double den = (x0 - mx) * (x0 - mx) + (x1 - mx) * (x1 - mx) + (x2 - mx) * (x2 - mx);
  return num / den;
}

}  // namespace gl3
