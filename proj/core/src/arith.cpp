#include "gl3twist/arith.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>

namespace gl3 {

int kronecker(long long a, long long n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;  // (a|-1) = sign(a)
  }
  if (n % 2 == 0) {
    if (a % 2 == 0) return 0;
    // (a|2) = (2|a) = (-1)^((a^2-1)/8)
    int t2 = 0;
    while (n % 2 == 0) {
      n /= 2;
      ++t2;
    }
    long long am8 = ((a % 8) + 8) % 8;
    if ((t2 & 1) && (am8 == 3 || am8 == 5)) result = -result;
  }
  // Jacobi symbol (a|n) for odd n >= 1.
  a %= n;
  if (a < 0) a += n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      long long nm8 = n % 8;
      if (nm8 == 3 || nm8 == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return (n == 1) ? result : 0;
}

TwistIndex squarefree_decompose(long long l) {
  if (l <= 0 || l % 2 == 0)
    throw std::invalid_argument("squarefree_decompose: l must be odd and positive");
  TwistIndex t;
  t.l = l;
  t.l1 = 1;
  t.l2 = 1;
  for (auto [p, e] : factorize(l)) {
    for (int i = 0; i < e / 2; ++i) t.l2 *= p;
    if (e % 2) t.l1 *= p;
  }
  return t;
}

namespace {

std::vector<long long> sieve_primes(long long limit) {
  std::vector<bool> comp(static_cast<size_t>(limit) + 1, false);
  std::vector<long long> ps;
  for (long long i = 2; i <= limit; ++i) {
    if (!comp[static_cast<size_t>(i)]) {
      ps.push_back(i);
      for (long long j = i * i; j <= limit; j += i) comp[static_cast<size_t>(j)] = true;
    }
  }
  return ps;
}

std::vector<long long> g_primes;
std::once_flag g_primes_once;

}  // namespace

const std::vector<long long>& prime_table() {
  std::call_once(g_primes_once, [] { g_primes = sieve_primes(1000000); });
  return g_primes;
}

std::vector<std::pair<long long, int>> factorize(long long n) {
  if (n <= 0) throw std::invalid_argument("factorize: n must be positive");
  std::vector<std::pair<long long, int>> f;
  for (long long p : prime_table()) {
    if (p * p > n) break;
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      f.emplace_back(p, e);
    }
  }
  if (n > 1) {
    const long long pmax = prime_table().back();
    if (n > pmax * pmax)
      throw std::invalid_argument("factorize: cofactor beyond prime-table reach");
    f.emplace_back(n, 1);  // remaining cofactor is prime
  }
  return f;
}

std::vector<int8_t> mobius_block(long long lo, long long hi) {
  if (lo < 1 || hi < lo) throw std::invalid_argument("mobius_block: bad range");
  const size_t len = static_cast<size_t>(hi - lo);
  std::vector<int8_t> mu(len, 1);
  std::vector<long long> rem(len);
  for (size_t i = 0; i < len; ++i) rem[i] = lo + static_cast<long long>(i);
  for (long long p : prime_table()) {
    if (p * p >= hi) break;
    // squares of p kill mu; single factors flip sign
    long long start = ((lo + p * p - 1) / (p * p)) * (p * p);
    for (long long j = start; j < hi; j += p * p) mu[static_cast<size_t>(j - lo)] = 0;
    start = ((lo + p - 1) / p) * p;
    for (long long j = start; j < hi; j += p) {
      size_t i = static_cast<size_t>(j - lo);
      if (mu[i] == 0) {
        while (rem[i] % p == 0) rem[i] /= p;
        continue;
      }
      int e = 0;
      while (rem[i] % p == 0) {
        rem[i] /= p;
        ++e;
      }
      if (e == 1) mu[i] = -mu[i];
    }
  }
  for (size_t i = 0; i < len; ++i)
    if (mu[i] != 0 && rem[i] > 1) mu[i] = -mu[i];  // one big prime left
  return mu;
}

int mobius(long long d) {
  if (d < 1) throw std::invalid_argument("mobius: d must be positive");
  int m = 1;
  for (auto [p, e] : factorize(d)) {
    (void)p;
    if (e > 1) return 0;
    m = -m;
  }
  return m;
}

int squarefree_indicator(long long d) { return mobius(d) != 0 ? 1 : 0; }

long long MY(long long d, double Y) {
  if (d < 1 || Y < 1) throw std::invalid_argument("MY: need d >= 1, Y >= 1");
  long long s = 0;
  for (long long ell = 1; static_cast<double>(ell) <= Y; ++ell)
    if (d % (ell * ell) == 0) s += mobius(ell);
  return s;
}

double GaussSumValue::value() const {
  return static_cast<double>(coeff) * std::sqrt(static_cast<double>(radicand));
}

GaussSumValue GaussSumValue::operator*(const GaussSumValue& other) const {
  GaussSumValue r;
  r.coeff = coeff * other.coeff;
  r.radicand = 1;
  // sqrt(r1) * sqrt(r2) = g * sqrt((r1/g)(r2/g)) with g = gcd(r1, r2); for
  // square-free r1, r2 the cofactor product is square-free again.
  long long g = std::gcd(radicand, other.radicand);
  r.coeff *= g;
  r.radicand = (radicand / g) * (other.radicand / g);
  r.n = n * other.n;
  r.k = k;
  return r;
}

GaussSumValue gauss_G(long long k, long long n) {
  if (n <= 0 || n % 2 == 0) throw std::invalid_argument("gauss_G: n must be odd and positive");
  GaussSumValue total;
  total.n = n;
  total.k = k;
  for (auto [p, beta] : factorize(n)) {
    // alpha = v_p(k), with k = 0 acting as alpha = infinity.
    int alpha = 0;
    long long kp = k;
    bool infinite = (k == 0);
    if (!infinite)
      while (kp % p == 0) {
        kp /= p;
        ++alpha;
      }
    GaussSumValue loc;
    loc.n = 1;
    for (int i = 0; i < beta; ++i) loc.n *= p;
    loc.k = k;
    long long pa = 1;  // p^min(alpha, beta-ish) as needed below
    if (infinite || beta <= alpha) {
      if (beta % 2 == 1) {
        loc.coeff = 0;
        loc.radicand = 1;
      } else {
        // phi(p^beta)
        long long phi = loc.n / p * (p - 1);
        loc.coeff = phi;
        loc.radicand = 1;
      }
    } else if (beta == alpha + 1) {
      for (int i = 0; i < alpha; ++i) pa *= p;
      if (beta % 2 == 1) {
        loc.coeff = kronecker(kp, p) * pa;
        loc.radicand = p;
      } else {
        loc.coeff = -pa;
        loc.radicand = 1;
      }
    } else {  // beta >= alpha + 2
      loc.coeff = 0;
      loc.radicand = 1;
    }
    if (loc.coeff == 0) {
      total.coeff = 0;
      total.radicand = 1;
      return total;
    }
    long long saved_n = total.n;
    total = total * loc;
    total.n = saved_n;
    total.k = k;
  }
  return total;
}

std::complex<double> gauss_brute(long long k, long long n) {
  if (n <= 0 || n % 2 == 0)
    throw std::invalid_argument("gauss_brute: n must be odd and positive");
  if (n > 10000) throw std::invalid_argument("gauss_brute: oracle scale is n <= 10^4");
  const double twopi = 2.0 * std::numbers::pi;
  std::complex<double> sum = 0.0;
  for (long long a = 0; a < n; ++a) {
    int chi = kronecker(a, n);
    if (chi == 0) continue;
    double ang = twopi * static_cast<double>((a * (k % n) % n + n) % n) / static_cast<double>(n);
    sum += static_cast<double>(chi) * std::complex<double>(std::cos(ang), std::sin(ang));
  }
  const std::complex<double> i(0.0, 1.0);
  std::complex<double> pref = (1.0 - i) / 2.0 + static_cast<double>(kronecker(-1, n)) * (1.0 + i) / 2.0;
  return pref * sum;
}

uint64_t powmod(uint64_t x, uint64_t e, uint64_t m) {
  unsigned __int128 r = 1, b = x % m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return static_cast<uint64_t>(r);
}

}  // namespace gl3
