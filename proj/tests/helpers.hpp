#pragma once

#include <spgcd/spgcd.hpp>

#include <initializer_list>
#include <utility>
#include <vector>

namespace th {

using namespace spgcd;
using Poly = SparsePoly<PrimeField>;
using Terms = std::vector<std::pair<long long, Monomial>>;

/// Polynomial from signed integer coefficients; zero coefficients dropped.
inline Poly poly(const PrimeField& f, int n, const Terms& terms) {
  std::vector<std::pair<u64, Monomial>> t;
  for (const auto& [c, e] : terms) {
    u64 v = f.from_int(c);
    if (v != 0) t.emplace_back(v, e);
  }
  return sparse::from_terms(f, n, t);
}

/// Plain-residue (coefficient, exponent) list, lex increasing.
inline std::vector<std::pair<u64, Monomial>> terms_of(const PrimeField& f, const Poly& p) {
  std::vector<std::pair<u64, Monomial>> out;
  for (std::size_t i = 0; i < p.size(); ++i)
    out.emplace_back(f.to_u64(p.coeffs[i]), Monomial(p.exp(i).begin(), p.exp(i).end()));
  return out;
}

inline UniPoly<PrimeField> upoly(const PrimeField& f, std::initializer_list<long long> lo_to_hi) {
  UniPoly<PrimeField> a;
  for (auto c : lo_to_hi) a.push_back(f.from_int(c));
  uni::trim(f, a);
  return a;
}

inline std::vector<u64> plain(const PrimeField& f, const std::vector<u64>& v) {
  std::vector<u64> out;
  for (auto x : v) out.push_back(f.to_u64(x));
  return out;
}

template <class F>
UniPoly<F> random_monic(const F& f, std::size_t degree, rng_t& rng) {
  UniPoly<F> a(degree + 1);
  for (auto& x : a) x = f.random(rng);
  a.back() = f.one();
  return a;
}

template <class F>
bool same(const F& f, const UniPoly<F>& a, const UniPoly<F>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!f.eq(a[i], b[i])) return false;
  return true;
}

/// Random polynomial with distinct random monomials, partial degrees <= d.
inline Poly random_poly(const PrimeField& f, int n, std::size_t terms, long d, rng_t& rng) {
  std::vector<std::pair<u64, Monomial>> t;
  std::vector<Monomial> seen;
  std::uniform_int_distribution<int> ex(0, static_cast<int>(d));
  double space = 1;
  for (int i = 0; i < n; ++i) space *= static_cast<double>(d + 1);
  if (space < static_cast<double>(terms)) terms = static_cast<std::size_t>(space);  // at most (d+1)^n monomials
  while (t.size() < terms) {
    Monomial e(static_cast<std::size_t>(n));
    for (auto& x : e) x = ex(rng);
    bool dup = false;
    for (const auto& s : seen) dup = dup || s == e;
    if (dup) continue;
    seen.push_back(e);
    t.emplace_back(f.random_nonzero(rng), e);
  }
  return sparse::from_terms(f, n, t);
}

}  // namespace th
