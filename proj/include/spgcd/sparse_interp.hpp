#pragma once

// Sparse interpolation from a base row f(alpha^i) and n shifted rows
// f(alpha_k^i), where alpha_k multiplies coordinate k of alpha by omega.
// Each row is decomposed independently (Berlekamp-Massey, roots,
// transposed Vandermonde); rows are joined on coefficients, and exponents
// come from bounded discrete logs of the monomial-value ratios.

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "dlog.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "sparse_poly.hpp"
#include "unipoly.hpp"

namespace spgcd {

template <class F>
struct EvalGrid {
  using elem = typename F::elem_type;

  std::vector<elem> base_row;
  std::vector<std::vector<elem>> shifted_rows;  // one per variable
  std::vector<elem> alpha;
  elem omega{};
  std::size_t T = 0;
};

template <class F>
struct RowTerms {
  std::vector<typename F::elem_type> nodes;   // monomial values
  std::vector<typename F::elem_type> coeffs;  // matching coefficients
};

/// Splits sum_j c_j m_j^i (i = 1..2T) into its nodes m_j and coefficients c_j.
template <class F>
RowTerms<F> decompose_row(const F& f, const std::vector<typename F::elem_type>& values, std::size_t T, rng_t& rng) {
  if (values.size() < 2 * T) throw length_mismatch("row holds fewer than 2T values");
  std::vector<typename F::elem_type> seq(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(2 * T));
  auto lambda = berlekamp_massey(f, seq);
  const std::size_t t = lambda.size() - 1;
  if (t > T) throw length_mismatch("recurrence longer than the term bound");
  RowTerms<F> out;
  if (t == 0) return out;
  out.nodes = find_roots(f, lambda, rng);
  out.coeffs = solve_transposed_vandermonde(f, out.nodes, seq);
  return out;
}

namespace detail {

template <class F>
struct elem_hash {
  const F* f;
  std::size_t operator()(const typename F::elem_type& a) const { return f->hash(a); }
};
template <class F>
struct elem_eq {
  const F* f;
  bool operator()(const typename F::elem_type& a, const typename F::elem_type& b) const { return f->eq(a, b); }
};

template <class F>
using coeff_index = std::unordered_map<typename F::elem_type, std::size_t, elem_hash<F>, elem_eq<F>>;

template <class F>
coeff_index<F> index_coefficients(const F& f, const RowTerms<F>& row) {
  coeff_index<F> idx(row.coeffs.size() * 2 + 1, elem_hash<F>{&f}, elem_eq<F>{&f});
  for (std::size_t j = 0; j < row.coeffs.size(); ++j) {
    if (!idx.emplace(row.coeffs[j], j).second) throw diversity_violation();
  }
  return idx;
}

}  // namespace detail

/// Recovers f with #f <= term_bound and every exponent <= deg_bound.
template <class F>
SparsePoly<F> interpolate(const F& f, const EvalGrid<F>& grid, std::uint64_t deg_bound, std::size_t term_bound,
                          rng_t& rng) {
  const int n = static_cast<int>(grid.shifted_rows.size());
  if (grid.alpha.size() != static_cast<std::size_t>(n)) throw length_mismatch("alpha length differs from row count");
  const std::size_t T = term_bound;

  auto base = decompose_row(f, grid.base_row, T, rng);
  const std::size_t t = base.nodes.size();
  auto base_index = detail::index_coefficients(f, base);

  SparsePoly<F> out(n);
  out.coeffs = base.coeffs;
  out.exps.assign(t * static_cast<std::size_t>(n), 0);

  std::vector<typename F::elem_type> inv_nodes(t);
  for (std::size_t j = 0; j < t; ++j) inv_nodes[j] = f.inv(base.nodes[j]);

  for (int k = 0; k < n; ++k) {
    auto row = decompose_row(f, grid.shifted_rows[static_cast<std::size_t>(k)], T, rng);
    if (row.nodes.size() != t) throw length_mismatch("shifted row has a different term count");
    std::vector<char> seen(t, 0);
    for (std::size_t j = 0; j < t; ++j) {
      auto it = base_index.find(row.coeffs[j]);
      if (it == base_index.end() || seen[it->second]) throw diversity_violation();
      const std::size_t b = it->second;
      seen[b] = 1;
      auto ratio = f.mul(row.nodes[j], inv_nodes[b]);
      auto e = discrete_log_bounded(f, grid.omega, ratio, deg_bound);
      out.exp(b)[k] = static_cast<exponent_t>(e);
    }
  }

  auto canon = sparse::canonicalize(f, out);
  if (canon.size() != t) throw diversity_violation();
  auto check = eval_at_powers(f, canon, grid.alpha, 2 * T);
  for (std::size_t i = 0; i < 2 * T; ++i)
    if (!f.eq(check[i], grid.base_row[i])) throw verification_mismatch();
  return canon;
}

}  // namespace spgcd
