#pragma once

// Polynomial multiplication modulo an arbitrary p < 2^62 through up to three
// 62-bit NTT primes and Garner reconstruction.  Only as many primes are used
// as the coefficient bound (p-1)^2 min(|a|, |b|) requires.

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "modarith.hpp"

namespace spgcd::ntt {

struct ntt_prime {
  u64 p;
  u64 nprime;
  u64 r2;
  u64 one;
  u64 root;  // Montgomery form of a primitive root
  int max_log;

  constexpr u64 redc(u128 t) const noexcept {
    u64 m = static_cast<u64>(t) * nprime;
    u64 r = static_cast<u64>((t + static_cast<u128>(m) * p) >> 64);
    return r >= p ? r - p : r;
  }
  constexpr u64 mul(u64 a, u64 b) const noexcept { return redc(static_cast<u128>(a) * b); }
  constexpr u64 add(u64 a, u64 b) const noexcept {
    u64 s = a + b;
    return s >= p ? s - p : s;
  }
  constexpr u64 sub(u64 a, u64 b) const noexcept { return a >= b ? a - b : a + p - b; }
  constexpr u64 to_mont(u64 x) const noexcept { return redc(static_cast<u128>(x % p) * r2); }
  constexpr u64 from_mont(u64 x) const noexcept { return redc(x); }
  constexpr u64 pow(u64 a, u64 e) const noexcept {
    u64 r = one;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
};

constexpr ntt_prime make_prime(u64 p, u64 g, int max_log) {
  u64 inv = p;
  for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
  ntt_prime c{p, ~inv + 1, 0, 0, 0, max_log};
  u128 r = (static_cast<u128>(1) << 127) % p;
  c.r2 = static_cast<u64>((r * 2) % p);
  c.one = static_cast<u64>((static_cast<u128>(1) << 64) % p);
  c.root = c.to_mont(g);
  return c;
}

// p = c * 2^26 + 1, all below 2^62.
inline constexpr std::array<ntt_prime, 3> kPrimes = {
    make_prime(4611686017554972673ull, 5, 26),
    make_prime(4611686015004835841ull, 3, 26),
    make_prime(4611686009971671041ull, 6, 26),
};

// Twiddles for size n: w[n/2 + j] ... laid out per level so that the level
// of half-length h starts at index h (w[h + j] = root_{2h}^j).
struct twiddle_table {
  int log = 0;
  std::vector<u64> fwd, inv;
};

inline const twiddle_table& twiddles(std::size_t which, int log) {
  thread_local std::array<twiddle_table, 3> cache;
  auto& t = cache[which];
  if (t.log >= log) return t;
  const auto& P = kPrimes[which];
  const std::size_t n = std::size_t{1} << log;
  t.fwd.assign(n, 0);
  t.inv.assign(n, 0);
  for (std::size_t h = 1; h < n; h <<= 1) {
    u64 w = P.pow(P.root, (P.p - 1) / (2 * h));
    u64 wi = P.pow(w, P.p - 2);
    u64 cur = P.one, curi = P.one;
    for (std::size_t j = 0; j < h; ++j) {
      t.fwd[h + j] = cur;
      t.inv[h + j] = curi;
      cur = P.mul(cur, w);
      curi = P.mul(curi, wi);
    }
  }
  t.log = log;
  return t;
}

inline void transform(std::vector<u64>& a, bool invert, std::size_t which) {
  const auto& P = kPrimes[which];
  const std::size_t n = a.size();
  int log = 0;
  while ((std::size_t{1} << log) < n) ++log;
  const auto& tw = twiddles(which, log);
  const u64* w = invert ? tw.inv.data() : tw.fwd.data();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += 2 * h) {
      u64* x = a.data() + i;
      u64* y = x + h;
      for (std::size_t k = 0; k < h; ++k) {
        u64 u = x[k];
        u64 v = P.mul(y[k], w[h + k]);
        x[k] = P.add(u, v);
        y[k] = P.sub(u, v);
      }
    }
  }
  if (invert) {
    u64 ninv = P.pow(P.to_mont(n), P.p - 2);
    for (auto& x : a) x = P.mul(x, ninv);
  }
}

/// Cyclic convolution of length n modulo prime `which`; plain residues out.
inline std::vector<u64> convolve_one(const std::vector<u64>& a, const std::vector<u64>& b, std::size_t which,
                                     std::size_t n) {
  const auto& P = kPrimes[which];
  std::vector<u64> fa(n, 0), fb(n, 0);
  for (std::size_t i = 0; i < a.size(); ++i) fa[i] = P.to_mont(a[i]);
  for (std::size_t i = 0; i < b.size(); ++i) fb[i] = P.to_mont(b[i]);
  transform(fa, false, which);
  transform(fb, false, which);
  for (std::size_t i = 0; i < n; ++i) fa[i] = P.mul(fa[i], fb[i]);
  transform(fa, true, which);
  for (auto& x : fa) x = P.from_mont(x);
  return fa;
}

/// Number of NTT primes whose product exceeds (p-1)^2 len.
inline int primes_needed(u64 p, std::size_t len) {
  const long double bound = static_cast<long double>(p - 1) * static_cast<long double>(p - 1) *
                            static_cast<long double>(len);
  long double prod = 1;
  for (int i = 0; i < 3; ++i) {
    prod *= static_cast<long double>(kPrimes[static_cast<std::size_t>(i)].p);
    // margin for rounding in the long double estimate
    if (bound * 1.001L < prod) return i + 1;
  }
  return 3;
}

/// Product of a and b (plain residues in [0, p)) reduced modulo p.
inline std::vector<u64> multiply_mod(const std::vector<u64>& a, const std::vector<u64>& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  const std::size_t out = a.size() + b.size() - 1;
  std::size_t n = 1;
  while (n < out) n <<= 1;
  const int np = primes_needed(p, std::min(a.size(), b.size()));

  auto r1 = convolve_one(a, b, 0, n);
  r1.resize(out);
  if (np == 1) {
    for (auto& x : r1) x %= p;
    return r1;
  }
  const auto& P1 = kPrimes[0];
  const auto& P2 = kPrimes[1];
  const auto& P3 = kPrimes[2];
  auto r2 = convolve_one(a, b, 1, n);
  // Garner in Montgomery form: t2 = (r2 - r1) / P1 mod P2.
  const u64 c12 = P2.to_mont(invmod(P1.p % P2.p, P2.p));
  const u64 p1_mod_p = P1.p % p;
  std::vector<u64> res(out);
  if (np == 2) {
    for (std::size_t i = 0; i < out; ++i) {
      const u64 t1 = r1[i];
      const u64 t2 = P2.from_mont(P2.mul(P2.to_mont(P2.sub(r2[i], t1 % P2.p)), c12));
      res[i] = static_cast<u64>((static_cast<u128>(t2) * P1.p + t1) % p);
    }
    return res;
  }
  auto r3 = convolve_one(a, b, 2, n);
  const u64 c13 = P3.to_mont(invmod(P1.p % P3.p, P3.p));
  const u64 c23 = P3.to_mont(invmod(P2.p % P3.p, P3.p));
  const u64 p1p2_mod_p = mulmod(p1_mod_p, P2.p % p, p);
  for (std::size_t i = 0; i < out; ++i) {
    const u64 t1 = r1[i];
    const u64 t2 = P2.from_mont(P2.mul(P2.to_mont(P2.sub(r2[i], t1 % P2.p)), c12));
    u64 x3 = P3.mul(P3.to_mont(P3.sub(r3[i], t1 % P3.p)), c13);
    x3 = P3.mul(P3.sub(x3, P3.to_mont(t2)), c23);
    const u64 t3 = P3.from_mont(x3);
    u128 v = (static_cast<u128>(t2 % p) * p1_mod_p + t1) % p;
    v = (v + static_cast<u128>(t3 % p) * p1p2_mod_p) % p;
    res[i] = static_cast<u64>(v);
  }
  return res;
}

}  // namespace spgcd::ntt
