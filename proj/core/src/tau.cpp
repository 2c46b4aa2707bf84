#include "gl3twist/tau.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gl3twist/ntt.hpp"

namespace gl3::tau {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<u128>(a) * b % m);
}

uint64_t powmod(uint64_t b, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

// Smallest-prime-factor table for 2..limit.
std::vector<int32_t> spf_table(long long limit) {
  std::vector<int32_t> spf(limit + 1, 0);
  for (long long i = 2; i <= limit; ++i) {
    if (spf[i] == 0) {
      for (long long j = i; j <= limit; j += i) {
        if (spf[j] == 0) spf[j] = static_cast<int32_t>(i);
      }
    }
  }
  return spf;
}

// sigma_k(n) mod m for all n <= limit (k = power on the divisors), via the
// multiplicative recursion over the smallest prime factor.
std::vector<uint64_t> sigma_mod(long long limit, int k, uint64_t m, const std::vector<int32_t>& spf) {
  std::vector<uint64_t> sig(limit + 1, 0);
  if (limit >= 1) sig[1] = 1 % m;
  for (long long n = 2; n <= limit; ++n) {
    long long q = spf[n];
    long long rest = n;
    int e = 0;
    while (rest % q == 0) {
      rest /= q;
      ++e;
    }
    uint64_t qk = powmod(static_cast<uint64_t>(q), k, m);
    uint64_t pp = 1 % m;  // 1 + q^k + ... + q^{k e} by Horner
    for (int i = 0; i < e; ++i) pp = (mulmod(pp, qk, m) + 1) % m;
    sig[n] = mulmod(sig[rest], pp, m);
  }
  return sig;
}

long long checked_narrow(i128 v, const char* what) {
  if (v > static_cast<i128>(INT64_MAX) || v < static_cast<i128>(INT64_MIN)) {
    throw std::overflow_error(std::string("tau: int64 overflow in ") + what);
  }
  return static_cast<long long>(v);
}

}  // namespace

std::vector<long long> tau_exact_table(long long limit) {
  // tau(n) = [q^{n-1}] J^8; beyond ~2000 the values threaten int64.
  if (limit < 1 || limit > 2000) throw std::invalid_argument("tau_exact_table: limit in [1, 2000]");
  const long long deg = limit - 1;  // highest series degree needed
  std::vector<i128> j(deg + 1, 0);
  for (long long k = 0;; ++k) {
    long long idx = k * (k + 1) / 2;
    if (idx > deg) break;
    j[idx] = (k % 2 == 0 ? 1 : -1) * (2 * k + 1);
  }
  auto square = [deg](const std::vector<i128>& a) {
    std::vector<i128> c(deg + 1, 0);
    for (long long i = 0; i <= deg; ++i) {
      if (a[i] == 0) continue;
      for (long long k = i; i + k <= deg; ++k) {
        if (k == i) {
          c[2 * i] += a[i] * a[i];
        } else {
          c[i + k] += 2 * a[i] * a[k];
        }
      }
    }
    return c;
  };
  std::vector<i128> j8 = square(square(square(j)));
  std::vector<long long> tau(limit + 1, 0);
  for (long long n = 1; n <= limit; ++n) tau[n] = checked_narrow(j8[n - 1], "tau_exact_table");
  return tau;
}

void TauPrimeTable::build(long long limit) {
  if (limit <= limit_) return;
  const size_t L = 1ull << 24;
  // Degrees above `limit` are never read and cyclic aliasing can only reach
  // degree 0 when 2*limit = L, so limit <= L/2 keeps every read index exact
  // (the one polluted intermediate, degree 0 of E4^2, is restored to its
  // known value 1 before reuse).
  if (limit > static_cast<long long>(L / 2)) throw std::invalid_argument("TauPrimeTable: limit too large");

  std::vector<uint64_t> moduli = ntt::find_ntt_primes(3, 24);

  // Primes up to limit.
  std::vector<uint8_t> composite(limit + 1, 0);
  std::vector<long long> primes;
  for (long long i = 2; i <= limit; ++i) {
    if (!composite[i]) {
      primes.push_back(i);
      for (long long j = i * i; j <= limit; j += i) composite[j] = 1;
    }
  }
  composite.clear();
  composite.shrink_to_fit();

  std::vector<int32_t> spf = spf_table(limit);
  std::vector<std::vector<uint64_t>> residues(3, std::vector<uint64_t>(primes.size()));

  for (int mi = 0; mi < 3; ++mi) {
    const uint64_t p = moduli[mi];
    ntt::MontgomeryNtt ntt(p);

    // E4^3 mod p, exact through degree `limit`.
    std::vector<uint64_t> work;
    {
      std::vector<uint64_t> sig3 = sigma_mod(limit, 3, p, spf);
      work.assign(L, 0);
      work[0] = 1 % p;
      for (long long n = 1; n <= limit; ++n) work[n] = mulmod(240 % p, sig3[n], p);
    }
    ntt.forward(work);
    std::vector<uint64_t> fa = work;  // transform of E4, reused for the cube
    ntt.pointwise_square(work);
    ntt.inverse(work);  // E4^2
    work[0] = 1 % p;
    std::fill(work.begin() + limit + 1, work.end(), 0);
    ntt.forward(work);
    ntt.pointwise_mul(work, fa);
    fa.clear();
    fa.shrink_to_fit();
    ntt.inverse(work);  // E4^3
    std::vector<uint64_t> e4cube(work.begin(), work.begin() + limit + 1);
    work.clear();
    work.shrink_to_fit();

    // E6^2 mod p.
    {
      std::vector<uint64_t> sig5 = sigma_mod(limit, 5, p, spf);
      work.assign(L, 0);
      work[0] = 1 % p;
      uint64_t c504 = p - 504 % p;
      for (long long n = 1; n <= limit; ++n) work[n] = mulmod(c504, sig5[n], p);
    }
    ntt.forward(work);
    ntt.pointwise_square(work);
    ntt.inverse(work);  // E6^2

    const uint64_t inv1728 = powmod(1728 % p, p - 2, p);
    for (size_t i = 0; i < primes.size(); ++i) {
      long long n = primes[i];
      uint64_t diff = e4cube[n] >= work[n] ? e4cube[n] - work[n] : e4cube[n] + p - work[n];
      residues[mi][i] = mulmod(diff, inv1728, p);
    }
    work.clear();
    work.shrink_to_fit();
  }
  spf.clear();
  spf.shrink_to_fit();

  // Balanced mixed-radix recombination (digits centered so each term of
  // d0 + m0*(d1 + m1*d2) is comparable to tau itself).
  const uint64_t m0 = moduli[0], m1 = moduli[1], m2 = moduli[2];
  const uint64_t inv_m0_mod_m1 = powmod(m0 % m1, m1 - 2, m1);
  const uint64_t inv_m0m1_mod_m2 = powmod(mulmod(m0 % m2, m1 % m2, m2), m2 - 2, m2);

  std::vector<TauDigits> digits(primes.size());
  std::vector<double> lambda(primes.size());
  for (size_t i = 0; i < primes.size(); ++i) {
    i128 t0 = residues[0][i], t1 = residues[1][i], t2 = residues[2][i];
    i128 d0 = t0 > static_cast<i128>(m0 / 2) ? t0 - static_cast<i128>(m0) : t0;
    i128 r1 = (t1 - d0) % static_cast<i128>(m1);
    if (r1 < 0) r1 += m1;
    i128 d1 = mulmod(static_cast<uint64_t>(r1), inv_m0_mod_m1, m1);
    if (d1 > static_cast<i128>(m1 / 2)) d1 -= m1;
    i128 r2 = (t2 - d0 - d1 * static_cast<i128>(m0 % m2)) % static_cast<i128>(m2);
    if (r2 < 0) r2 += m2;
    i128 d2 = mulmod(static_cast<uint64_t>(r2), inv_m0m1_mod_m2, m2);
    if (d2 > static_cast<i128>(m2 / 2)) d2 -= m2;
    digits[i] = {static_cast<long long>(d0), static_cast<long long>(d1), static_cast<long long>(d2)};

    long double t = static_cast<long double>(d0) +
                    static_cast<long double>(m0) *
                        (static_cast<long double>(d1) + static_cast<long double>(m1) * static_cast<long double>(d2));
    lambda[i] = static_cast<double>(t / powl(static_cast<long double>(primes[i]), 5.5L));
  }
  residues.clear();

  // Congruence check mod 691 for every entry.
  auto mod691 = [&](const TauDigits& d) {
    long long v = ((d.d0 % 691) + 691) % 691;
    long long a = ((d.d1 % 691) + 691) % 691;
    long long b = ((d.d2 % 691) + 691) % 691;
    long long mm0 = m0 % 691, mm1 = m1 % 691;
    return (v + mm0 * ((a + mm1 * b) % 691)) % 691;
  };
  for (size_t i = 0; i < primes.size(); ++i) {
    long long p = primes[i];
    long long expect = (1 + static_cast<long long>(powmod(p % 691, 11, 691))) % 691;
    if (mod691(digits[i]) != expect) throw std::runtime_error("TauPrimeTable: mod-691 congruence failed");
  }

  // Agreement with the exact series on the small primes.
  {
    std::vector<long long> exact = tau_exact_table(std::min<long long>(limit, 1000));
    for (size_t i = 0; i < primes.size() && primes[i] < static_cast<long long>(exact.size()); ++i) {
      i128 v = static_cast<i128>(digits[i].d0) +
               static_cast<i128>(m0) * (static_cast<i128>(digits[i].d1) + static_cast<i128>(m1) * digits[i].d2);
      if (v != static_cast<i128>(exact[primes[i]])) {
        throw std::runtime_error("TauPrimeTable: disagreement with exact series");
      }
    }
  }

  limit_ = limit;
  moduli_ = std::move(moduli);
  primes_ = std::move(primes);
  digits_ = std::move(digits);
  lambda_ = std::move(lambda);
}

long long TauPrimeTable::index_of(long long p) const {
  auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
  if (it == primes_.end() || *it != p) return -1;
  return it - primes_.begin();
}

bool TauPrimeTable::has(long long p) const { return index_of(p) >= 0; }

double TauPrimeTable::lambda(long long p) const {
  long long i = index_of(p);
  if (i < 0) throw std::out_of_range("TauPrimeTable::lambda: prime not covered");
  return lambda_[i];
}

TauDigits TauPrimeTable::digits(long long p) const {
  long long i = index_of(p);
  if (i < 0) throw std::out_of_range("TauPrimeTable::digits: prime not covered");
  return digits_[i];
}

TauPrimeTable& big_table() {
  static TauPrimeTable table;
  return table;
}

namespace {
const std::vector<long long>& small_tau() {
  static std::vector<long long> table = tau_exact_table(1000);
  return table;
}
}  // namespace

double lambda_p(long long p) {
  if (p < 2) throw std::invalid_argument("lambda_p: need a prime");
  if (p <= 1000) {
    return static_cast<double>(static_cast<long double>(small_tau()[p]) /
                               powl(static_cast<long double>(p), 5.5L));
  }
  TauPrimeTable& t = big_table();
  if (!t.has(p)) {
    t.build(std::max<long long>(p, kBigTableLimit));
  }
  return t.lambda(p);
}

void ensure_built(long long plimit) {
  if (plimit <= 1000) return;
  TauPrimeTable& t = big_table();
  if (t.limit() < plimit) t.build(std::max<long long>(plimit, kBigTableLimit));
}

}  // namespace gl3::tau
