#pragma once

// Ground truth for small instances: a recursive dense multivariate GCD
// (primitive pseudo-remainder sequences over F_p[x_2..x_n][x_1]), plus exact
// sparse multiplication and division.  Only field arithmetic is shared with
// the sparse pipeline.

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "sparse_poly.hpp"

namespace spgcd::oracle {

/// Polynomial in x_1 (outermost) whose coefficients are DensePolys in the
/// remaining variables; nvars == 0 holds a field value.
struct DensePoly {
  int nvars = 0;
  u64 value = 0;
  std::vector<DensePoly> coeffs;  // trailing zeros trimmed
};

struct dense_budget {
  int max_vars = 4;
  long max_partial_degree = 12;
};

inline bool is_zero(const DensePoly& a) { return a.nvars == 0 ? a.value == 0 : a.coeffs.empty(); }

inline DensePoly zero(int nvars) { return DensePoly{nvars, 0, {}}; }

inline DensePoly constant(const PrimeField& f, int nvars, u64 c) {
  if (nvars == 0) return DensePoly{0, c, {}};
  DensePoly p = zero(nvars);
  if (c != f.zero()) p.coeffs.push_back(constant(f, nvars - 1, c));
  return p;
}

inline void trim(DensePoly& a) {
  while (!a.coeffs.empty() && is_zero(a.coeffs.back())) a.coeffs.pop_back();
}

inline long degree(const DensePoly& a) { return static_cast<long>(a.coeffs.size()) - 1; }

inline bool equal(const DensePoly& a, const DensePoly& b) {
  if (a.nvars != b.nvars) return false;
  if (a.nvars == 0) return a.value == b.value;
  if (a.coeffs.size() != b.coeffs.size()) return false;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    if (!equal(a.coeffs[i], b.coeffs[i])) return false;
  return true;
}

inline DensePoly add(const PrimeField& f, const DensePoly& a, const DensePoly& b) {
  if (a.nvars == 0) return DensePoly{0, f.add(a.value, b.value), {}};
  DensePoly r = zero(a.nvars);
  r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), zero(a.nvars - 1));
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) {
    if (i < a.coeffs.size() && i < b.coeffs.size()) r.coeffs[i] = add(f, a.coeffs[i], b.coeffs[i]);
    else if (i < a.coeffs.size()) r.coeffs[i] = a.coeffs[i];
    else r.coeffs[i] = b.coeffs[i];
  }
  trim(r);
  return r;
}

inline DensePoly neg(const PrimeField& f, DensePoly a) {
  if (a.nvars == 0) {
    a.value = f.neg(a.value);
    return a;
  }
  for (auto& c : a.coeffs) c = neg(f, std::move(c));
  return a;
}

inline DensePoly sub(const PrimeField& f, const DensePoly& a, const DensePoly& b) { return add(f, a, neg(f, b)); }

inline DensePoly mul(const PrimeField& f, const DensePoly& a, const DensePoly& b) {
  if (a.nvars == 0) return DensePoly{0, f.mul(a.value, b.value), {}};
  DensePoly r = zero(a.nvars);
  if (a.coeffs.empty() || b.coeffs.empty()) return r;
  r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, zero(a.nvars - 1));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (is_zero(a.coeffs[i])) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j)
      r.coeffs[i + j] = add(f, r.coeffs[i + j], mul(f, a.coeffs[i], b.coeffs[j]));
  }
  trim(r);
  return r;
}

/// a * x_1^k
inline DensePoly shift(DensePoly a, std::size_t k) {
  if (a.coeffs.empty()) return a;
  a.coeffs.insert(a.coeffs.begin(), k, zero(a.nvars - 1));
  return a;
}

/// Exact quotient a / b, or nullopt when b does not divide a.
inline std::optional<DensePoly> exact_div(const PrimeField& f, const DensePoly& a, const DensePoly& b) {
  if (is_zero(b)) throw division_by_zero();
  if (a.nvars == 0) return DensePoly{0, f.div(a.value, b.value), {}};
  DensePoly r = a;
  DensePoly q = zero(a.nvars);
  const long db = degree(b);
  if (degree(r) < db) {
    if (is_zero(r)) return q;
    return std::nullopt;
  }
  q.coeffs.assign(static_cast<std::size_t>(degree(r) - db + 1), zero(a.nvars - 1));
  while (!is_zero(r) && degree(r) >= db) {
    auto c = exact_div(f, r.coeffs.back(), b.coeffs.back());
    if (!c) return std::nullopt;
    const std::size_t k = static_cast<std::size_t>(degree(r) - db);
    q.coeffs[k] = *c;
    DensePoly term = zero(a.nvars);
    term.coeffs.assign(k + 1, zero(a.nvars - 1));
    term.coeffs[k] = *c;
    const long before = degree(r);
    r = sub(f, r, mul(f, term, b));
    if (!is_zero(r) && degree(r) >= before) return std::nullopt;
  }
  if (!is_zero(r)) return std::nullopt;
  trim(q);
  return q;
}

/// Pseudo-remainder of a by b in x_1.
inline DensePoly prem(const PrimeField& f, DensePoly a, const DensePoly& b) {
  const long db = degree(b);
  const DensePoly& lb = b.coeffs.back();
  DensePoly lb_const = zero(a.nvars);
  lb_const.coeffs.push_back(lb);
  while (!is_zero(a) && degree(a) >= db) {
    DensePoly la = zero(a.nvars);
    la.coeffs.push_back(a.coeffs.back());
    auto t = shift(mul(f, la, b), static_cast<std::size_t>(degree(a) - db));
    const long before = degree(a);
    a = sub(f, mul(f, lb_const, a), t);
    if (!is_zero(a) && degree(a) >= before) throw error("pseudo-remainder failed to reduce degree");
  }
  return a;
}

inline DensePoly dense_gcd_unchecked(const PrimeField& f, const DensePoly& a, const DensePoly& b);

inline bool is_nonzero_constant(const DensePoly& p) {
  const DensePoly* q = &p;
  while (q->nvars > 0) {
    if (q->coeffs.size() != 1) return false;
    q = &q->coeffs[0];
  }
  return q->value != 0;
}

/// GCD of the x_1-coefficients (an element of F_p[x_2..x_n]).
inline DensePoly content(const PrimeField& f, const DensePoly& a) {
  DensePoly g = zero(a.nvars - 1);
  for (const auto& c : a.coeffs) {
    g = dense_gcd_unchecked(f, g, c);
    if (is_nonzero_constant(g)) break;
  }
  return g;
}

inline DensePoly primitive_part(const PrimeField& f, const DensePoly& a) {
  if (is_zero(a)) return a;
  auto c = content(f, a);
  DensePoly out = a;
  for (auto& x : out.coeffs) x = *exact_div(f, x, c);
  return out;
}

/// Unnormalized GCD (defined up to a unit).
inline DensePoly dense_gcd_unchecked(const PrimeField& f, const DensePoly& a, const DensePoly& b) {
  if (a.nvars == 0) {
    if (a.value == 0 && b.value == 0) return DensePoly{0, 0, {}};
    return DensePoly{0, f.one(), {}};
  }
  if (is_zero(a)) return b;
  if (is_zero(b)) return a;
  auto ca = content(f, a), cb = content(f, b);
  auto c = dense_gcd_unchecked(f, ca, cb);
  DensePoly u = primitive_part(f, a), v = primitive_part(f, b);
  if (degree(u) < degree(v)) std::swap(u, v);
  while (!is_zero(v)) {
    auto r = prem(f, u, v);
    u = std::move(v);
    v = primitive_part(f, r);
  }
  u = primitive_part(f, u);
  for (auto& x : u.coeffs) x = mul(f, x, c);
  return u;
}

// ---------------------------------------------------------------------------
// Conversion

namespace detail {

inline void insert_term(const PrimeField& f, DensePoly& p, u64 c, std::span<const exponent_t> e) {
  if (p.nvars == 0) {
    p.value = f.add(p.value, c);
    return;
  }
  const std::size_t k = static_cast<std::size_t>(e[0]);
  if (p.coeffs.size() <= k) p.coeffs.resize(k + 1, zero(p.nvars - 1));
  insert_term(f, p.coeffs[k], c, e.subspan(1));
}

inline void collect(const DensePoly& p, Monomial& prefix, std::vector<std::pair<u64, Monomial>>& out) {
  if (p.nvars == 0) {
    if (p.value != 0) out.emplace_back(p.value, prefix);
    return;
  }
  for (std::size_t k = 0; k < p.coeffs.size(); ++k) {
    prefix.push_back(static_cast<exponent_t>(k));
    collect(p.coeffs[k], prefix, out);
    prefix.pop_back();
  }
}

inline void trim_all(DensePoly& p) {
  if (p.nvars == 0) return;
  for (auto& c : p.coeffs) trim_all(c);
  trim(p);
}

}  // namespace detail

inline DensePoly to_dense(const PrimeField& f, const SparsePoly<PrimeField>& s) {
  DensePoly p = zero(s.nvars);
  for (std::size_t i = 0; i < s.size(); ++i) detail::insert_term(f, p, s.coeffs[i], s.exp(i));
  detail::trim_all(p);
  return p;
}

inline SparsePoly<PrimeField> to_sparse(const PrimeField& f, const DensePoly& p) {
  std::vector<std::pair<u64, Monomial>> terms;
  Monomial prefix;
  detail::collect(p, prefix, terms);
  return sparse::from_terms(f, p.nvars, terms);
}

inline bool within_budget(const SparsePoly<PrimeField>& a, const dense_budget& budget = {}) {
  return a.nvars <= budget.max_vars && sparse::max_partial_degree(a) <= budget.max_partial_degree;
}

namespace detail {

// a with every variable except x_i set to pt, as a univariate coefficient list.
inline std::vector<u64> image(const PrimeField& f, const SparsePoly<PrimeField>& a, int i, const std::vector<u64>& pt) {
  std::vector<u64> out(static_cast<std::size_t>(sparse::max_partial_degree(a)) + 1, f.zero());
  for (std::size_t t = 0; t < a.size(); ++t) {
    u64 c = a.coeffs[t];
    auto e = a.exp(t);
    for (int j = 0; j < a.nvars; ++j)
      if (j != i) c = f.mul(c, f.pow(pt[static_cast<std::size_t>(j)], static_cast<u64>(e[static_cast<std::size_t>(j)])));
    auto& slot = out[static_cast<std::size_t>(e[static_cast<std::size_t>(i)])];
    slot = f.add(slot, c);
  }
  while (!out.empty() && out.back() == f.zero()) out.pop_back();
  return out;
}

inline long image_gcd_degree(const PrimeField& f, std::vector<u64> u, std::vector<u64> v) {
  while (!v.empty()) {
    const u64 inv = f.inv(v.back());
    while (u.size() >= v.size()) {
      const u64 q = f.mul(u.back(), inv);
      const std::size_t off = u.size() - v.size();
      for (std::size_t k = 0; k < v.size(); ++k) u[off + k] = f.sub(u[off + k], f.mul(q, v[k]));
      while (!u.empty() && u.back() == f.zero()) u.pop_back();
    }
    std::swap(u, v);
  }
  return static_cast<long>(u.size()) - 1;
}

// True when a and b are certainly coprime: for each x_i some point keeps both
// leading coefficients in x_i alive, so deg_{x_i} gcd <= deg of the image gcd.
inline bool images_coprime(const PrimeField& f, const SparsePoly<PrimeField>& a, const SparsePoly<PrimeField>& b) {
  rng_t rng(0x6f7261636c65ULL);
  for (int i = 0; i < a.nvars; ++i) {
    long da = -1, db = -1;
    for (std::size_t t = 0; t < a.size(); ++t) da = std::max<long>(da, a.exp(t)[static_cast<std::size_t>(i)]);
    for (std::size_t t = 0; t < b.size(); ++t) db = std::max<long>(db, b.exp(t)[static_cast<std::size_t>(i)]);
    bool certified = false;
    for (int attempt = 0; attempt < 4 && !certified; ++attempt) {
      std::vector<u64> pt(static_cast<std::size_t>(a.nvars));
      for (auto& x : pt) x = f.random(rng);
      auto ua = image(f, a, i, pt), ub = image(f, b, i, pt);
      if (static_cast<long>(ua.size()) - 1 != da || static_cast<long>(ub.size()) - 1 != db) continue;
      if (image_gcd_degree(f, ua, ub) != 0) return false;
      certified = true;
    }
    if (!certified) return false;
  }
  return true;
}

}  // namespace detail

/// Lex-monic GCD of two small polynomials by the dense recursive algorithm.
inline SparsePoly<PrimeField> dense_gcd(const PrimeField& f, const SparsePoly<PrimeField>& a,
                                        const SparsePoly<PrimeField>& b, const dense_budget& budget = {}) {
  if (a.nvars != b.nvars) throw invalid_input("inputs have different variable counts");
  if (!within_budget(a, budget) || !within_budget(b, budget))
    throw budget_exceeded("dense oracle limited to " + std::to_string(budget.max_vars) + " variables and degree " +
                          std::to_string(budget.max_partial_degree));
  if (a.empty() && b.empty()) return SparsePoly<PrimeField>(a.nvars);
  if (!a.empty() && !b.empty() && detail::images_coprime(f, a, b))
    return sparse::from_terms(f, a.nvars, {{f.one(), Monomial(static_cast<std::size_t>(a.nvars), 0)}});
  auto g = dense_gcd_unchecked(f, to_dense(f, a), to_dense(f, b));
  return sparse::make_lex_monic(f, to_sparse(f, g));
}

// ---------------------------------------------------------------------------
// Sparse products and exact division

inline SparsePoly<PrimeField> sparse_mul(const PrimeField& f, const SparsePoly<PrimeField>& a,
                                         const SparsePoly<PrimeField>& b) {
  if (a.nvars != b.nvars) throw invalid_input("inputs have different variable counts");
  SparsePoly<PrimeField> r(a.nvars);
  r.reserve(a.size() * b.size());
  Monomial e(static_cast<std::size_t>(a.nvars));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      auto ea = a.exp(i), eb = b.exp(j);
      for (int k = 0; k < a.nvars; ++k) e[static_cast<std::size_t>(k)] = ea[k] + eb[k];
      r.push(f.mul(a.coeffs[i], b.coeffs[j]), e);
    }
  }
  return sparse::canonicalize(f, r);
}

/// Q with A = G Q, or nullopt.  Lex division by the single divisor G; a
/// quotient term exceeding deg_{x_i} A - deg_{x_i} G proves non-divisibility.
inline std::optional<SparsePoly<PrimeField>> divides_exactly(const PrimeField& f, const SparsePoly<PrimeField>& g,
                                                             const SparsePoly<PrimeField>& a) {
  if (g.empty()) throw zero_polynomial();
  if (g.nvars != a.nvars) throw invalid_input("inputs have different variable counts");
  const int n = a.nvars;
  std::vector<long> limit(static_cast<std::size_t>(n), 0);
  for (int k = 0; k < n; ++k) {
    long da = -1, dg = 0;
    for (std::size_t i = 0; i < a.size(); ++i) da = std::max<long>(da, a.exp(i)[k]);
    for (std::size_t i = 0; i < g.size(); ++i) dg = std::max<long>(dg, g.exp(i)[k]);
    limit[static_cast<std::size_t>(k)] = da - dg;
  }
  std::map<Monomial, u64> rem;
  for (std::size_t i = 0; i < a.size(); ++i) rem.emplace(Monomial(a.exp(i).begin(), a.exp(i).end()), a.coeffs[i]);
  const auto lg = g.exp(g.size() - 1);
  const u64 lc_inv = f.inv(g.coeffs.back());
  std::vector<std::pair<u64, Monomial>> quotient;
  Monomial qe(static_cast<std::size_t>(n)), t(static_cast<std::size_t>(n));
  while (!rem.empty()) {
    auto it = std::prev(rem.end());
    for (int k = 0; k < n; ++k) {
      const long diff = static_cast<long>(it->first[static_cast<std::size_t>(k)]) - lg[k];
      if (diff < 0 || diff > limit[static_cast<std::size_t>(k)]) return std::nullopt;
      qe[static_cast<std::size_t>(k)] = static_cast<exponent_t>(diff);
    }
    const u64 qc = f.mul(it->second, lc_inv);
    quotient.emplace_back(qc, qe);
    for (std::size_t i = 0; i < g.size(); ++i) {
      auto eg = g.exp(i);
      for (int k = 0; k < n; ++k) t[static_cast<std::size_t>(k)] = eg[k] + qe[static_cast<std::size_t>(k)];
      const u64 delta = f.mul(qc, g.coeffs[i]);
      auto [pos, inserted] = rem.try_emplace(t, f.neg(delta));
      if (!inserted) {
        pos->second = f.sub(pos->second, delta);
        if (pos->second == 0) rem.erase(pos);
      }
    }
  }
  return sparse::from_terms(f, n, quotient);
}

}  // namespace spgcd::oracle
