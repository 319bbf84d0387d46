#pragma once

// Sparse multivariate polynomials and the structural transforms the GCD
// pipeline needs: monomial content, generalized homogenization, isolation
// tests, diversification, and evaluation along geometric sequences.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "field.hpp"

namespace spgcd {

using exponent_t = std::int32_t;
using Monomial = std::vector<exponent_t>;

/// Terms are stored column-wise: coeffs[i] pairs with exps[i*nvars ..].
/// Canonical form: nonzero coefficients, distinct exponent vectors,
/// lexicographically increasing (the leading term is last).
template <class F>
struct SparsePoly {
  using elem = typename F::elem_type;

  int nvars = 0;
  std::vector<elem> coeffs;
  std::vector<exponent_t> exps;

  SparsePoly() = default;
  explicit SparsePoly(int n) : nvars(n) {}

  std::size_t size() const noexcept { return coeffs.size(); }
  bool empty() const noexcept { return coeffs.empty(); }
  std::span<const exponent_t> exp(std::size_t i) const {
    return {exps.data() + i * static_cast<std::size_t>(nvars), static_cast<std::size_t>(nvars)};
  }
  std::span<exponent_t> exp(std::size_t i) {
    return {exps.data() + i * static_cast<std::size_t>(nvars), static_cast<std::size_t>(nvars)};
  }
  void push(const elem& c, std::span<const exponent_t> e) {
    coeffs.push_back(c);
    exps.insert(exps.end(), e.begin(), e.end());
  }
  void reserve(std::size_t t) {
    coeffs.reserve(t);
    exps.reserve(t * static_cast<std::size_t>(nvars));
  }
};

namespace sparse {

inline bool lex_less(std::span<const exponent_t> a, std::span<const exponent_t> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline bool same_exp(std::span<const exponent_t> a, std::span<const exponent_t> b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

/// Sorts terms, merges equal exponent vectors, and drops zero coefficients.
template <class F>
SparsePoly<F> canonicalize(const F& f, const SparsePoly<F>& in) {
  std::vector<std::size_t> order(in.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lex_less(in.exp(a), in.exp(b)); });
  SparsePoly<F> out(in.nvars);
  out.reserve(in.size());
  for (std::size_t idx = 0; idx < order.size();) {
    auto c = in.coeffs[order[idx]];
    std::size_t j = idx + 1;
    while (j < order.size() && same_exp(in.exp(order[j]), in.exp(order[idx]))) c = f.add(c, in.coeffs[order[j++]]);
    if (!f.is_zero(c)) out.push(c, in.exp(order[idx]));
    idx = j;
  }
  return out;
}

template <class F>
bool is_canonical(const F& f, const SparsePoly<F>& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (f.is_zero(p.coeffs[i])) return false;
    for (auto e : p.exp(i))
      if (e < 0) return false;
    if (i > 0 && !lex_less(p.exp(i - 1), p.exp(i))) return false;
  }
  return p.exps.size() == p.size() * static_cast<std::size_t>(p.nvars);
}

/// Builds a canonical polynomial from (coefficient, exponent vector) pairs.
template <class F>
SparsePoly<F> from_terms(const F& f, int nvars,
                         const std::vector<std::pair<typename F::elem_type, Monomial>>& terms) {
  SparsePoly<F> p(nvars);
  for (const auto& [c, e] : terms) {
    if (static_cast<int>(e.size()) != nvars) throw invalid_input("exponent vector length differs from nvars");
    for (auto x : e)
      if (x < 0) throw invalid_input("negative exponent");
    p.push(c, e);
  }
  return canonicalize(f, p);
}

template <class F>
SparsePoly<F> constant(const F& f, int nvars, const typename F::elem_type& c) {
  SparsePoly<F> p(nvars);
  if (!f.is_zero(c)) p.push(c, Monomial(static_cast<std::size_t>(nvars), 0));
  return p;
}

template <class F>
bool equal(const F& f, const SparsePoly<F>& a, const SparsePoly<F>& b) {
  if (a.nvars != b.nvars || a.size() != b.size() || a.exps != b.exps) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!f.eq(a.coeffs[i], b.coeffs[i])) return false;
  return true;
}

template <class F>
long total_degree(const SparsePoly<F>& p) {
  long best = p.empty() ? -1 : 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    long s = 0;
    for (auto e : p.exp(i)) s += e;
    best = std::max(best, s);
  }
  return best;
}

/// max_i deg_{x_i} p
template <class F>
long max_partial_degree(const SparsePoly<F>& p) {
  long best = p.empty() ? -1 : 0;
  for (auto e : p.exps) best = std::max<long>(best, e);
  return best;
}

/// Coefficient of the lexicographically greatest term.
template <class F>
typename F::elem_type leading_coeff(const F& f, const SparsePoly<F>& p) {
  if (p.empty()) return f.zero();
  return p.coeffs.back();
}

/// Divides by the lex-leading coefficient (identity on zero).
template <class F>
SparsePoly<F> make_lex_monic(const F& f, SparsePoly<F> p) {
  if (p.empty()) return p;
  auto inv = f.inv(p.coeffs.back());
  for (auto& c : p.coeffs) c = f.mul(c, inv);
  return p;
}

template <class F>
typename F::elem_type evaluate(const F& f, const SparsePoly<F>& p, const std::vector<typename F::elem_type>& pt) {
  auto acc = f.zero();
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto t = p.coeffs[i];
    auto e = p.exp(i);
    for (int k = 0; k < p.nvars; ++k) t = f.mul(t, f.pow(pt[static_cast<std::size_t>(k)], static_cast<u64>(e[k])));
    acc = f.add(acc, t);
  }
  return acc;
}

/// Maps coefficients into a larger field G (prime-field values embedded).
template <class G>
SparsePoly<G> embed_poly(const G& g, const SparsePoly<PrimeField>& p) {
  SparsePoly<G> out(p.nvars);
  out.exps = p.exps;
  out.coeffs.reserve(p.size());
  for (auto c : p.coeffs) out.coeffs.push_back(embed(g, c));
  return out;
}

/// Multiplies every term by the monomial m.
template <class F>
SparsePoly<F> shift_exponents(SparsePoly<F> p, const Monomial& m) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto e = p.exp(i);
    for (int k = 0; k < p.nvars; ++k) e[k] += m[static_cast<std::size_t>(k)];
  }
  return p;
}

}  // namespace sparse

// ---------------------------------------------------------------------------
// Monomial content

template <class F>
Monomial monomial_content(const SparsePoly<F>& p) {
  if (p.empty()) throw zero_polynomial();
  Monomial m(p.exp(0).begin(), p.exp(0).end());
  for (std::size_t i = 1; i < p.size(); ++i) {
    auto e = p.exp(i);
    for (int k = 0; k < p.nvars; ++k) m[static_cast<std::size_t>(k)] = std::min(m[static_cast<std::size_t>(k)], e[k]);
  }
  return m;
}

/// p divided by its monomial content.  Lex order is preserved.
template <class F>
SparsePoly<F> monomial_primitive(SparsePoly<F> p) {
  Monomial m = monomial_content(p);
  for (auto& x : m) x = -x;
  return sparse::shift_exponents(std::move(p), m);
}

inline Monomial monomial_gcd(const Monomial& a, const Monomial& b) {
  Monomial m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = std::min(a[i], b[i]);
  return m;
}

// ---------------------------------------------------------------------------
// Generalized homogenization x_i -> x_i y^{s_i}, divided by the lowest y power.

using IsolatingVector = std::vector<std::int64_t>;

template <class F>
struct HomoLayer {
  std::int64_t ydeg;
  SparsePoly<F> coeff;
};

template <class F>
struct HomoPoly {
  IsolatingVector s;
  std::vector<HomoLayer<F>> layers;  // strictly increasing ydeg, first is 0
};

/// Per-term y-degrees <e, s> - min <e, s>.
template <class F>
std::vector<std::int64_t> homogenized_degrees(const SparsePoly<F>& p, const IsolatingVector& s) {
  std::vector<std::int64_t> deg(p.size());
  std::int64_t lo = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::int64_t v = 0;
    auto e = p.exp(i);
    for (int k = 0; k < p.nvars; ++k) v += static_cast<std::int64_t>(e[k]) * s[static_cast<std::size_t>(k)];
    deg[i] = v;
    lo = i == 0 ? v : std::min(lo, v);
  }
  for (auto& v : deg) v -= lo;
  return deg;
}

template <class F>
HomoPoly<F> homogenize(const SparsePoly<F>& p, const IsolatingVector& s) {
  if (static_cast<int>(s.size()) != p.nvars) throw invalid_input("isolating vector length differs from nvars");
  for (auto v : s)
    if (v < 1) throw invalid_input("isolating vector entries must be positive");
  HomoPoly<F> h{s, {}};
  auto deg = homogenized_degrees(p, s);
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // stable: terms inside a layer keep lex order
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return deg[a] < deg[b]; });
  for (std::size_t idx : order) {
    if (h.layers.empty() || h.layers.back().ydeg != deg[idx]) h.layers.push_back({deg[idx], SparsePoly<F>(p.nvars)});
    h.layers.back().coeff.push(p.coeffs[idx], p.exp(idx));
  }
  return h;
}

/// Sum of layers, i.e. the substitution y = 1.
template <class F>
SparsePoly<F> flatten(const F& f, const HomoPoly<F>& h, int nvars) {
  SparsePoly<F> out(nvars);
  for (const auto& layer : h.layers)
    for (std::size_t i = 0; i < layer.coeff.size(); ++i) out.push(layer.coeff.coeffs[i], layer.coeff.exp(i));
  return sparse::canonicalize(f, out);
}

/// True iff the maximum of <e, s> over the terms is attained exactly once.
template <class F>
bool has_max_isolated_term(const SparsePoly<F>& p, const IsolatingVector& s) {
  if (p.empty()) throw zero_polynomial();
  std::int64_t best = 0;
  int count = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::int64_t v = 0;
    auto e = p.exp(i);
    for (int k = 0; k < p.nvars; ++k) v += static_cast<std::int64_t>(e[k]) * s[static_cast<std::size_t>(k)];
    if (count == 0 || v > best) {
      best = v;
      count = 1;
    } else if (v == best) {
      ++count;
    }
  }
  return count == 1;
}

enum class IsolationStrategy { doubling, full };

struct IsolationResult {
  IsolatingVector s;
  int isolated_by = 0;  // 0: first polynomial, 1: second
  std::int64_t range = 1;
  int samples = 0;
};

/// Random s in [1, N]^n until one of a, b has a maximum isolated term.
/// With the doubling strategy N runs 1, 2, 4, ... up to 2 min(#a-1, #b-1).
template <class F>
IsolationResult choose_isolating_vector(const SparsePoly<F>& a, const SparsePoly<F>& b, rng_t& rng,
                                        IsolationStrategy strategy = IsolationStrategy::doubling) {
  if (a.empty() || b.empty()) throw zero_polynomial();
  const std::int64_t full =
      std::max<std::int64_t>(1, 2 * std::min<std::int64_t>(static_cast<std::int64_t>(a.size()) - 1,
                                                           static_cast<std::int64_t>(b.size()) - 1));
  std::int64_t N = strategy == IsolationStrategy::full ? full : 1;
  IsolationResult res;
  res.s.assign(static_cast<std::size_t>(a.nvars), 1);
  constexpr int kMaxSamples = 1 << 20;
  for (res.samples = 1; res.samples <= kMaxSamples; ++res.samples) {
    std::uniform_int_distribution<std::int64_t> dist(1, N);
    for (auto& v : res.s) v = dist(rng);
    res.range = N;
    if (has_max_isolated_term(a, res.s)) {
      res.isolated_by = 0;
      return res;
    }
    if (has_max_isolated_term(b, res.s)) {
      res.isolated_by = 1;
      return res;
    }
    N = std::min(full, N * 2);
  }
  throw budget_exceeded("no isolating vector found");
}

// ---------------------------------------------------------------------------
// Diversification x_i -> zeta_i x_i

template <class F>
SparsePoly<F> diversify(const F& f, SparsePoly<F> p, const std::vector<typename F::elem_type>& zeta) {
  for (const auto& z : zeta)
    if (f.is_zero(z)) throw zero_scale();
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto e = p.exp(i);
    for (int k = 0; k < p.nvars; ++k)
      p.coeffs[i] = f.mul(p.coeffs[i], f.pow(zeta[static_cast<std::size_t>(k)], static_cast<u64>(e[k])));
  }
  return p;
}

template <class F>
SparsePoly<F> undiversify(const F& f, const SparsePoly<F>& p, const std::vector<typename F::elem_type>& zeta) {
  std::vector<typename F::elem_type> inv;
  inv.reserve(zeta.size());
  for (const auto& z : zeta) {
    if (f.is_zero(z)) throw zero_scale();
    inv.push_back(f.inv(z));
  }
  return diversify(f, p, inv);
}

/// Values of each monomial of p at the point alpha.
template <class F>
std::vector<typename F::elem_type> monomial_values(const F& f, const SparsePoly<F>& p,
                                                   const std::vector<typename F::elem_type>& alpha) {
  std::vector<typename F::elem_type> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto v = f.one();
    auto e = p.exp(i);
    for (int k = 0; k < p.nvars; ++k) {
      if (e[k]) v = f.mul(v, f.pow(alpha[static_cast<std::size_t>(k)], static_cast<u64>(e[k])));
    }
    out[i] = v;
  }
  return out;
}

/// p(alpha^1), ..., p(alpha^count) with alpha^i taken coordinatewise.
template <class F>
std::vector<typename F::elem_type> eval_at_powers(const F& f, const SparsePoly<F>& p,
                                                  const std::vector<typename F::elem_type>& alpha,
                                                  std::size_t count) {
  auto m = monomial_values(f, p, alpha);
  auto cur = p.coeffs;
  std::vector<typename F::elem_type> out(count, f.zero());
  for (std::size_t i = 0; i < count; ++i) {
    auto acc = f.zero();
    for (std::size_t j = 0; j < m.size(); ++j) {
      cur[j] = f.mul(cur[j], m[j]);
      acc = f.add(acc, cur[j]);
    }
    out[i] = acc;
  }
  return out;
}

}  // namespace spgcd
