#include "gl3twist/ntt.hpp"

#include <stdexcept>

#include "gl3twist/arith.hpp"

namespace gl3::ntt {

namespace {

using u128 = unsigned __int128;

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<u128>(a) * b % m);
}

uint64_t powmod_u64(uint64_t b, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, b, m);
    b = mulmod_u64(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 0; i < s - 1; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

uint64_t primitive_root(uint64_t p) {
  // Factor p - 1 by trial division; moduli here have p - 1 = 2^24 * k with
  // k < 2^39, so the prime table up to 10^6 covers every needed divisor.
  std::vector<uint64_t> factors;
  uint64_t m = p - 1;
  for (long long q : prime_table()) {
    if (static_cast<uint64_t>(q) * q > m) break;
    if (m % q == 0) {
      factors.push_back(q);
      while (m % q == 0) m /= q;
    }
  }
  if (m > 1) {
    if (!is_prime_u64(m)) throw std::runtime_error("primitive_root: incomplete factorization");
    factors.push_back(m);
  }
  for (uint64_t g = 2;; ++g) {
    bool ok = true;
    for (uint64_t q : factors) {
      if (powmod_u64(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
}

std::vector<uint64_t> find_ntt_primes(int count, int order) {
  std::vector<uint64_t> out;
  const uint64_t step = 1ull << order;
  // Largest k with k*2^order + 1 < 2^63 (Montgomery reduction needs p < 2^63).
  uint64_t k = ((1ull << 63) - 2) >> order;
  for (; k > 0 && static_cast<int>(out.size()) < count; --k) {
    uint64_t p = k * step + 1;
    if (is_prime_u64(p)) out.push_back(p);
  }
  if (static_cast<int>(out.size()) < count) throw std::runtime_error("find_ntt_primes: exhausted");
  return out;
}

MontgomeryNtt::MontgomeryNtt(uint64_t prime) : p_(prime) {
  if (p_ >= (1ull << 63) || p_ < 3 || !is_prime_u64(p_)) {
    throw std::invalid_argument("MontgomeryNtt: need an odd prime below 2^63");
  }
  // Newton iteration for p^{-1} mod 2^64, then negate.
  uint64_t inv = p_;
  for (int i = 0; i < 6; ++i) inv *= 2 - p_ * inv;
  ninv_ = ~inv + 1;
  // 2^64 mod p by repeated doubling of 2^32 mod p.
  uint64_t r = (1ull << 32) % p_;
  one_ = mulmod_u64(r, r, p_);
  r2_ = mulmod_u64(one_, one_, p_);
  g_ = primitive_root(p_);
}

uint64_t MontgomeryNtt::redc(uint64_t a, uint64_t b) const {
  u128 t = static_cast<u128>(a) * b;
  uint64_t m = static_cast<uint64_t>(t) * ninv_;
  uint64_t r = static_cast<uint64_t>((t + static_cast<u128>(m) * p_) >> 64);
  return r >= p_ ? r - p_ : r;
}

uint64_t MontgomeryNtt::mont_pow(uint64_t base_mont, uint64_t e) const {
  uint64_t r = one_;
  while (e) {
    if (e & 1) r = redc(r, base_mont);
    base_mont = redc(base_mont, base_mont);
    e >>= 1;
  }
  return r;
}

void MontgomeryNtt::transform(std::vector<uint64_t>& a, bool invert) const {
  const size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("transform: power-of-two length");
  if ((p_ - 1) % n != 0) throw std::invalid_argument("transform: length exceeds root order");

  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  for (size_t len = 2; len <= n; len <<= 1) {
    uint64_t wlen = mont_pow(to_mont(g_), (p_ - 1) / len);
    if (invert) wlen = mont_pow(wlen, p_ - 2);
    const size_t half = len >> 1;
    for (size_t i = 0; i < n; i += len) {
      uint64_t w = one_;
      for (size_t j = 0; j < half; ++j) {
        uint64_t u = a[i + j];
        uint64_t v = redc(a[i + j + half], w);
        uint64_t s = u + v;
        a[i + j] = s >= p_ ? s - p_ : s;
        a[i + j + half] = u >= v ? u - v : u + p_ - v;
        w = redc(w, wlen);
      }
    }
  }

  if (invert) {
    uint64_t n_inv = mont_pow(to_mont(n % p_), p_ - 2);
    for (auto& x : a) x = redc(x, n_inv);
  }
}

void MontgomeryNtt::forward(std::vector<uint64_t>& a) const {
  for (auto& x : a) x = to_mont(x);
  transform(a, false);
  for (auto& x : a) x = from_mont(x);
}

void MontgomeryNtt::inverse(std::vector<uint64_t>& a) const {
  for (auto& x : a) x = to_mont(x);
  transform(a, true);
  for (auto& x : a) x = from_mont(x);
}

void MontgomeryNtt::pointwise_square(std::vector<uint64_t>& a) const {
  for (auto& x : a) {
    uint64_t m = to_mont(x);
    x = from_mont(redc(m, m));
  }
}

void MontgomeryNtt::pointwise_mul(std::vector<uint64_t>& a, const std::vector<uint64_t>& b) const {
  if (a.size() != b.size()) throw std::invalid_argument("pointwise_mul: size mismatch");
  for (size_t i = 0; i < a.size(); ++i) {
    a[i] = from_mont(redc(to_mont(a[i]), to_mont(b[i])));
  }
}

}  // namespace gl3::ntt
