#pragma once

#include <cmath>
#include <cstdint>
#include <unordered_map>

#include "errors.hpp"
#include "field.hpp"

namespace spgcd {

/// Smallest e in [0, bound] with omega^e = target, by baby-step/giant-step
/// over ceil(sqrt(bound + 1)) blocks.  Throws not_a_power if none exists.
template <class F>
std::uint64_t discrete_log_bounded(const F& f, const typename F::elem_type& omega,
                                   const typename F::elem_type& target, std::uint64_t bound) {
  using elem = typename F::elem_type;
  if (f.is_zero(target)) throw not_a_power();
  if (f.eq(target, f.one())) return 0;

  std::uint64_t m = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(bound) + 1.0)));
  while (m * m < bound + 1) ++m;

  struct hasher {
    const F* f;
    std::size_t operator()(const elem& a) const { return f->hash(a); }
  };
  struct equal {
    const F* f;
    bool operator()(const elem& a, const elem& b) const { return f->eq(a, b); }
  };
  std::unordered_map<elem, std::uint64_t, hasher, equal> baby(m * 2, hasher{&f}, equal{&f});

  elem cur = f.one();
  for (std::uint64_t j = 0; j < m; ++j) {
    baby.try_emplace(cur, j);
    cur = f.mul(cur, omega);
  }
  // cur = omega^m; giant steps multiply by omega^-m.
  const elem giant = f.inv(cur);
  elem gamma = target;
  for (std::uint64_t i = 0; i * m <= bound; ++i) {
    auto it = baby.find(gamma);
    if (it != baby.end()) {
      std::uint64_t e = i * m + it->second;
      if (e <= bound) return e;
      throw not_a_power();
    }
    gamma = f.mul(gamma, giant);
  }
  throw not_a_power();
}

}  // namespace spgcd
