#pragma once
// Number-theoretic transform over word-sized prime fields, used for the
// big modular-form coefficient convolutions.  Montgomery arithmetic keeps
// the butterflies division-free; moduli are found at runtime as primes
// p = k*2^24 + 1 just below 2^63 so transforms up to length 2^24 exist.

#include <cstdint>
#include <vector>

namespace gl3::ntt {

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(uint64_t n);

// Smallest primitive root mod prime p (p - 1 factored by trial division).
uint64_t primitive_root(uint64_t p);

// `count` distinct primes p = k*2^order + 1 < 2^63, largest first.
std::vector<uint64_t> find_ntt_primes(int count, int order);

class MontgomeryNtt {
 public:
  explicit MontgomeryNtt(uint64_t prime);

  uint64_t prime() const { return p_; }

  // In-place transform; a.size() must be a power of two dividing 2^order.
  // Values are plain residues (not Montgomery form) on entry and exit.
  void forward(std::vector<uint64_t>& a) const;
  void inverse(std::vector<uint64_t>& a) const;

  // Elementwise products a[i] <- a[i] * b[i] (resp. a[i]^2) mod p.  Applied
  // between forward() and inverse(), they realize the cyclic convolution of
  // the original sequences; inverse() includes the 1/n normalization.
  void pointwise_square(std::vector<uint64_t>& a) const;
  void pointwise_mul(std::vector<uint64_t>& a, const std::vector<uint64_t>& b) const;

  // Plain modular product of residues: redc(aR, b) = a b mod p.
  uint64_t mul(uint64_t a, uint64_t b) const { return redc(to_mont(a), b); }

 private:
  void transform(std::vector<uint64_t>& a, bool invert) const;
  uint64_t redc(uint64_t a, uint64_t b) const;
  uint64_t to_mont(uint64_t x) const { return redc(x, r2_); }
  uint64_t from_mont(uint64_t x) const { return redc(x, 1); }
  uint64_t mont_pow(uint64_t base_mont, uint64_t e) const;

  uint64_t p_;
  uint64_t ninv_;  // -p^{-1} mod 2^64
  uint64_t r2_;    // 2^128 mod p
  uint64_t one_;   // 2^64 mod p (Montgomery image of 1)
  uint64_t g_;     // primitive root
};

}  // namespace gl3::ntt
