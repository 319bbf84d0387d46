#pragma once

// Scalar arithmetic on 64-bit residues: plain modular helpers, primality,
// and integer factorization for primitivity tests.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "errors.hpp"

namespace spgcd {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Largest supported prime modulus (exclusive).
inline constexpr u64 kMaxModulus = u64{1} << 62;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

/// Inverse of a modulo m via extended Euclid; m need not be prime but
/// gcd(a, m) must be 1.
inline u64 invmod(u64 a, u64 m) {
  using i128 = __int128;
  i128 t = 0, new_t = 1;
  i128 r = m, new_r = a % m;
  while (new_r != 0) {
    i128 q = r / new_r;
    i128 tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw division_by_zero();
  if (t < 0) t += m;
  return static_cast<u64>(t);
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
    u64 x = powmod(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

struct factor_budget {
  u64 trial_limit = 1'000'000;
  u64 rho_iterations = 1'000'000;
};

namespace detail {

// Brent's variant of Pollard rho; returns a nontrivial factor or 0.
inline u64 pollard_brent(u64 n, u64 c, u64 max_iter) {
  auto f = [&](u64 x) { return (mulmod(x, x, n) + c) % n; };
  u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
  u64 r = 1, iter = 0;
  constexpr u64 kBatch = 128;
  while (g == 1) {
    x = y;
    for (u64 i = 0; i < r; ++i) y = f(y);
    u64 k = 0;
    while (k < r && g == 1) {
      ys = y;
      u64 lim = std::min(kBatch, r - k);
      for (u64 i = 0; i < lim; ++i) {
        y = f(y);
        q = mulmod(q, x > y ? x - y : y - x, n);
      }
      g = std::gcd(q, n);
      k += lim;
      iter += lim;
      if (iter > max_iter) return 0;
    }
    r <<= 1;
  }
  if (g == n) {
    do {
      ys = f(ys);
      g = std::gcd(x > ys ? x - ys : ys - x, n);
    } while (g == 1);
  }
  return g == n ? 0 : g;
}

inline void factor_rec(u64 n, const factor_budget& budget, std::map<u64, int>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    ++out[n];
    return;
  }
  for (u64 c = 1; c < 64; ++c) {
    u64 f = pollard_brent(n, c, budget.rho_iterations);
    if (f != 0) {
      factor_rec(f, budget, out);
      factor_rec(n / f, budget, out);
      return;
    }
  }
  throw factorization_budget_exceeded("could not split " + std::to_string(n) + " within budget");
}

}  // namespace detail

/// Prime factorization of n >= 1: trial division up to the budget, then
/// Pollard rho on the cofactor.
inline std::map<u64, int> factorize(u64 n, const factor_budget& budget = {}) {
  std::map<u64, int> out;
  for (u64 p = 2; p <= budget.trial_limit && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  if (n > 1) detail::factor_rec(n, budget, out);
  return out;
}

inline std::vector<u64> prime_divisors(u64 n, const factor_budget& budget = {}) {
  std::vector<u64> ps;
  for (const auto& [p, e] : factorize(n, budget)) ps.push_back(p);
  return ps;
}

}  // namespace spgcd
