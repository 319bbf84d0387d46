#pragma once

// Random planted-GCD instances: sample G, A', B' and expand A'G, B'G.

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "oracle.hpp"
#include "sparse_poly.hpp"

namespace spgcd {

struct InstanceSpec {
  int n = 6;
  std::size_t terms = 30;
  long degree = 30;  // total degree bound
  u64 p = 10000019;
  std::uint64_t seed = 0;
};

struct Instance {
  PrimeField field{2};
  SparsePoly<PrimeField> A, B;  // A' G and B' G
  SparsePoly<PrimeField> G;     // lex-monic
};

/// log C(D + n, n), the number of monomials of total degree <= D.
inline double log_monomial_count(int n, long D) {
  return std::lgamma(static_cast<double>(D + n) + 1) - std::lgamma(static_cast<double>(D) + 1) -
         std::lgamma(static_cast<double>(n) + 1);
}

namespace detail {

// Stars and bars: an n-subset b_1 < ... < b_n of {1..D+n} maps to
// e_i = b_i - b_{i-1} - 1, a uniform monomial of total degree <= D.
inline Monomial random_monomial(int n, long D, rng_t& rng) {
  const long slots = D + n;
  std::set<long> chosen;
  for (long j = slots - n + 1; j <= slots; ++j) {  // Floyd's subset sampling
    long t = std::uniform_int_distribution<long>(1, j)(rng);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  Monomial e;
  e.reserve(static_cast<std::size_t>(n));
  long prev = 0;
  for (long b : chosen) {
    e.push_back(static_cast<exponent_t>(b - prev - 1));
    prev = b;
  }
  return e;
}

inline void all_monomials(int n, long D, Monomial& cur, std::vector<Monomial>& out) {
  if (static_cast<int>(cur.size()) == n) {
    out.push_back(cur);
    return;
  }
  for (long e = 0; e <= D; ++e) {
    cur.push_back(static_cast<exponent_t>(e));
    all_monomials(n, D - e, cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

/// `terms` distinct monomials of total degree <= D, uniform among such
/// supports, with uniform nonzero coefficients.
inline SparsePoly<PrimeField> random_sparse(const PrimeField& f, int n, std::size_t terms, long D, rng_t& rng) {
  if (n < 0 || D < 0) throw invalid_input("variable count and degree must be nonnegative");
  const double log_count = log_monomial_count(n, D);
  if (std::log(static_cast<double>(terms)) > log_count + 1e-9) throw invalid_input("more terms than monomials");
  std::vector<std::pair<u64, Monomial>> out;
  auto coeff = [&] { return f.random_nonzero(rng); };
  if (log_count < std::log(4.0 * static_cast<double>(terms)) || n == 0) {
    std::vector<Monomial> all;
    Monomial cur;
    detail::all_monomials(n, D, cur, all);
    for (std::size_t i = 0; i < terms; ++i) {
      std::size_t j = i + std::uniform_int_distribution<std::size_t>(0, all.size() - 1 - i)(rng);
      std::swap(all[i], all[j]);
      out.emplace_back(coeff(), all[i]);
    }
  } else {
    std::set<Monomial> seen;
    while (out.size() < terms) {
      auto m = detail::random_monomial(n, D, rng);
      if (seen.insert(m).second) out.emplace_back(coeff(), std::move(m));
    }
  }
  return sparse::from_terms(f, n, out);
}

/// Planted instance.  A' and B' lose their common monomial factor; at small
/// scale they are resampled until the dense oracle calls them coprime.
inline Instance generate_instance(const InstanceSpec& spec) {
  if (spec.terms < 1) throw invalid_input("terms must be at least 1");
  if (spec.degree < 0) throw invalid_input("degree must be nonnegative");
  if (spec.n < 1) throw invalid_input("n must be at least 1");
  Instance inst{PrimeField(spec.p), {}, {}, {}};
  const PrimeField& f = inst.field;
  rng_t rng(spec.seed);
  auto G = random_sparse(f, spec.n, spec.terms, spec.degree, rng);
  for (int attempt = 0;; ++attempt) {
    if (attempt > 1000) throw budget_exceeded("could not sample a coprime cofactor pair");
    auto a = random_sparse(f, spec.n, spec.terms, spec.degree, rng);
    auto b = random_sparse(f, spec.n, spec.terms, spec.degree, rng);
    // A shared monomial factor would end up in the GCD; divide it out.
    auto c = monomial_gcd(monomial_content(a), monomial_content(b));
    for (auto& e : c) e = -e;
    a = sparse::shift_exponents(std::move(a), c);
    b = sparse::shift_exponents(std::move(b), c);
    const oracle::dense_budget small{3, 6};
    if (oracle::within_budget(a, small) && oracle::within_budget(b, small)) {
      auto g = oracle::dense_gcd(f, a, b);
      if (sparse::total_degree(g) > 0) continue;
    }
    inst.A = oracle::sparse_mul(f, a, G);
    inst.B = oracle::sparse_mul(f, b, G);
    inst.G = sparse::make_lex_monic(f, G);
    return inst;
  }
}

}  // namespace spgcd
