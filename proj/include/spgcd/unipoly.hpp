#pragma once

// Dense univariate polynomials over a field context F.
//
// A UniPoly is a low-to-high coefficient vector whose last entry is nonzero;
// the zero polynomial is the empty vector.  Large products go through the
// NTT (prime fields) or Kronecker packing into the prime field (extensions);
// large GCDs use the half-GCD recursion.

#include <algorithm>
#include <cstddef>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "ntt.hpp"

namespace spgcd {

template <class F>
using UniPoly = std::vector<typename F::elem_type>;

namespace uni {

inline constexpr std::size_t kMulThreshold = 48;
inline constexpr std::size_t kDivThreshold = 96;
inline constexpr std::size_t kHalfGcdThreshold = 160;

template <class F>
void trim(const F& f, UniPoly<F>& a) {
  while (!a.empty() && f.is_zero(a.back())) a.pop_back();
}

/// Degree, with -1 for the zero polynomial.
template <class F>
long deg(const UniPoly<F>& a) {
  return static_cast<long>(a.size()) - 1;
}

template <class F>
UniPoly<F> add(const F& f, const UniPoly<F>& a, const UniPoly<F>& b) {
  UniPoly<F> r(std::max(a.size(), b.size()), f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = f.add(r[i], b[i]);
  trim(f, r);
  return r;
}

template <class F>
UniPoly<F> sub(const F& f, const UniPoly<F>& a, const UniPoly<F>& b) {
  UniPoly<F> r(std::max(a.size(), b.size()), f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = f.sub(r[i], b[i]);
  trim(f, r);
  return r;
}

template <class F>
UniPoly<F> scale(const F& f, UniPoly<F> a, const typename F::elem_type& c) {
  for (auto& x : a) x = f.mul(x, c);
  trim(f, a);
  return a;
}

template <class F>
UniPoly<F> make_monic(const F& f, UniPoly<F> a) {
  trim(f, a);
  if (a.empty()) return a;
  auto inv = f.inv(a.back());
  for (auto& x : a) x = f.mul(x, inv);
  return a;
}

template <class F>
typename F::elem_type eval(const F& f, const UniPoly<F>& a, const typename F::elem_type& x) {
  auto r = f.zero();
  for (std::size_t i = a.size(); i-- > 0;) r = f.add(f.mul(r, x), a[i]);
  return r;
}

template <class F>
UniPoly<F> mul_schoolbook(const F& f, const UniPoly<F>& a, const UniPoly<F>& b) {
  if (a.empty() || b.empty()) return {};
  UniPoly<F> r(a.size() + b.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (f.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  trim(f, r);
  return r;
}

// Fast products: overloads per field kind.
inline UniPoly<PrimeField> mul(const PrimeField& f, const UniPoly<PrimeField>& a, const UniPoly<PrimeField>& b) {
  if (std::min(a.size(), b.size()) < kMulThreshold) return mul_schoolbook(f, a, b);
  std::vector<u64> pa(a.size()), pb(b.size());
  for (std::size_t i = 0; i < a.size(); ++i) pa[i] = f.to_u64(a[i]);
  for (std::size_t i = 0; i < b.size(); ++i) pb[i] = f.to_u64(b[i]);
  auto pr = ntt::multiply_mod(pa, pb, f.characteristic());
  UniPoly<PrimeField> r(pr.size());
  for (std::size_t i = 0; i < pr.size(); ++i) r[i] = f.from_u64(pr[i]);
  trim(f, r);
  return r;
}

/// Kronecker substitution: each coefficient becomes a block of 2k-1 prime
/// field coefficients, so block products never overlap.
template <std::size_t Cap>
UniPoly<ExtensionField<Cap>> mul(const ExtensionField<Cap>& f, const UniPoly<ExtensionField<Cap>>& a,
                                 const UniPoly<ExtensionField<Cap>>& b) {
  if (std::min(a.size(), b.size()) < kMulThreshold / 2) return mul_schoolbook(f, a, b);
  const std::size_t k = static_cast<std::size_t>(f.degree());
  const std::size_t block = 2 * k - 1;
  const PrimeField& base = f.base();
  auto pack = [&](const UniPoly<ExtensionField<Cap>>& x) {
    std::vector<u64> out(x.size() * block, 0);
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < k; ++j) out[i * block + j] = base.to_u64(x[i].c[j]);
    return out;
  };
  auto prod = ntt::multiply_mod(pack(a), pack(b), base.characteristic());
  UniPoly<ExtensionField<Cap>> r(a.size() + b.size() - 1);
  std::vector<u64> tmp(block);
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = 0; j < block; ++j) {
      std::size_t idx = i * block + j;
      tmp[j] = idx < prod.size() ? base.from_u64(prod[idx]) : 0;
    }
    r[i] = f.reduce(tmp.data(), block);
  }
  trim(f, r);
  return r;
}

/// Truncated product mod x^n.
template <class F>
UniPoly<F> mul_trunc(const F& f, const UniPoly<F>& a, const UniPoly<F>& b, std::size_t n) {
  UniPoly<F> ta(a.begin(), a.begin() + std::min(a.size(), n));
  UniPoly<F> tb(b.begin(), b.begin() + std::min(b.size(), n));
  auto r = mul(f, ta, tb);
  if (r.size() > n) r.resize(n);
  trim(f, r);
  return r;
}

/// Power-series inverse of a (a[0] != 0) modulo x^n by Newton iteration.
template <class F>
UniPoly<F> inverse_series(const F& f, const UniPoly<F>& a, std::size_t n) {
  UniPoly<F> g{f.inv(a.at(0))};
  std::size_t len = 1;
  while (len < n) {
    len = std::min(2 * len, n);
    auto ag = mul_trunc(f, a, g, len);
    // g <- g * (2 - a g)
    UniPoly<F> corr(len, f.zero());
    for (std::size_t i = 0; i < ag.size(); ++i) corr[i] = f.neg(ag[i]);
    corr[0] = f.add(corr[0], f.from_u64(2));
    trim(f, corr);
    g = mul_trunc(f, g, corr, len);
  }
  return g;
}

template <class F>
void divmod_schoolbook(const F& f, UniPoly<F> a, const UniPoly<F>& b, UniPoly<F>& q, UniPoly<F>& r) {
  trim(f, a);
  if (b.empty()) throw division_by_zero();
  const std::size_t db = b.size() - 1;
  if (a.size() <= db) {
    q.clear();
    r = std::move(a);
    return;
  }
  const auto lc_inv = f.inv(b.back());
  q.assign(a.size() - db, f.zero());
  for (std::size_t i = a.size(); i-- > db;) {
    auto c = f.mul(a[i], lc_inv);
    q[i - db] = c;
    if (f.is_zero(c)) continue;
    for (std::size_t j = 0; j < db; ++j) a[i - db + j] = f.sub(a[i - db + j], f.mul(c, b[j]));
  }
  a.resize(db);
  trim(f, a);
  trim(f, q);
  r = std::move(a);
}

template <class F>
void divmod(const F& f, const UniPoly<F>& a, const UniPoly<F>& b, UniPoly<F>& q, UniPoly<F>& r) {
  if (b.empty()) throw division_by_zero();
  if (a.size() < b.size()) {
    q.clear();
    r = a;
    trim(f, r);
    return;
  }
  const std::size_t qlen = a.size() - b.size() + 1;
  if (qlen < kDivThreshold || b.size() < kDivThreshold) {
    divmod_schoolbook(f, a, b, q, r);
    return;
  }
  UniPoly<F> ra(a.rbegin(), a.rend()), rb(b.rbegin(), b.rend());
  auto inv = inverse_series(f, rb, qlen);
  auto rq = mul_trunc(f, ra, inv, qlen);
  rq.resize(qlen, f.zero());
  q.assign(rq.rbegin(), rq.rend());
  trim(f, q);
  r = sub(f, a, mul(f, b, q));
}

template <class F>
UniPoly<F> rem(const F& f, const UniPoly<F>& a, const UniPoly<F>& b) {
  UniPoly<F> q, r;
  divmod(f, a, b, q, r);
  return r;
}

template <class F>
UniPoly<F> mulmod(const F& f, const UniPoly<F>& a, const UniPoly<F>& b, const UniPoly<F>& m) {
  return rem(f, mul(f, a, b), m);
}

template <class F, class E>
UniPoly<F> powmod(const F& f, UniPoly<F> a, E e, const UniPoly<F>& m) {
  UniPoly<F> r{f.one()};
  r = rem(f, r, m);
  a = rem(f, a, m);
  while (e) {
    if (e & 1) r = mulmod(f, r, a, m);
    e >>= 1;
    if (e) a = mulmod(f, a, a, m);
  }
  return r;
}

/// Classical Euclid with monic normalization of each remainder.
template <class F>
UniPoly<F> monic_gcd_classical(const F& f, UniPoly<F> u, UniPoly<F> v) {
  trim(f, u);
  trim(f, v);
  u = make_monic(f, std::move(u));
  v = make_monic(f, std::move(v));
  while (!v.empty()) {
    UniPoly<F> q, r;
    divmod_schoolbook(f, u, v, q, r);
    u = std::move(v);
    v = make_monic(f, std::move(r));
  }
  return u;
}

namespace detail {

template <class F>
struct poly_matrix {
  UniPoly<F> a, b, c, d;

  static poly_matrix identity(const F& f) { return {{f.one()}, {}, {}, {f.one()}}; }

  void apply(const F& f, UniPoly<F>& x, UniPoly<F>& y) const {
    auto nx = add(f, mul(f, a, x), mul(f, b, y));
    auto ny = add(f, mul(f, c, x), mul(f, d, y));
    x = std::move(nx);
    y = std::move(ny);
  }

  // this = [[0,1],[1,-q]] * this
  void push_quotient(const F& f, const UniPoly<F>& q) {
    auto nc = sub(f, a, mul(f, q, c));
    auto nd = sub(f, b, mul(f, q, d));
    a = std::move(c);
    b = std::move(d);
    c = std::move(nc);
    d = std::move(nd);
  }

  // returns lhs * rhs
  friend poly_matrix multiply(const F& f, const poly_matrix& l, const poly_matrix& r) {
    return {add(f, mul(f, l.a, r.a), mul(f, l.b, r.c)), add(f, mul(f, l.a, r.b), mul(f, l.b, r.d)),
            add(f, mul(f, l.c, r.a), mul(f, l.d, r.c)), add(f, mul(f, l.c, r.b), mul(f, l.d, r.d))};
  }
};

template <class F>
UniPoly<F> shift_down(const UniPoly<F>& a, std::size_t k) {
  if (a.size() <= k) return {};
  return UniPoly<F>(a.begin() + static_cast<std::ptrdiff_t>(k), a.end());
}

// Euclid steps on (a, b) while deg b >= m, accumulating the quotient matrix.
template <class F>
poly_matrix<F> hgcd_classical(const F& f, UniPoly<F> a, UniPoly<F> b, long m) {
  auto M = poly_matrix<F>::identity(f);
  while (deg<F>(b) >= m) {
    UniPoly<F> q, r;
    divmod(f, a, b, q, r);
    M.push_quotient(f, q);
    a = std::move(b);
    b = std::move(r);
  }
  return M;
}

// For deg a > deg b: a matrix M of Euclidean quotients such that
// M (a, b) = (c, d) with deg c >= ceil(deg a / 2) > deg d.
template <class F>
poly_matrix<F> hgcd(const F& f, UniPoly<F> a, UniPoly<F> b) {
  const long n = deg<F>(a);
  const long m = (n + 1) / 2;
  if (deg<F>(b) < m) return poly_matrix<F>::identity(f);
  if (static_cast<std::size_t>(n) < kHalfGcdThreshold) return hgcd_classical(f, std::move(a), std::move(b), m);

  auto R = hgcd(f, shift_down<F>(a, static_cast<std::size_t>(m)), shift_down<F>(b, static_cast<std::size_t>(m)));
  R.apply(f, a, b);
  if (deg<F>(b) < m) return R;

  UniPoly<F> q, r;
  divmod(f, a, b, q, r);
  R.push_quotient(f, q);
  a = std::move(b);
  b = std::move(r);
  if (deg<F>(b) < m) return R;

  const long k = 2 * m - deg<F>(a);
  auto S = hgcd(f, shift_down<F>(a, static_cast<std::size_t>(k)), shift_down<F>(b, static_cast<std::size_t>(k)));
  return multiply(f, S, R);
}

}  // namespace detail

/// Monic generator of the ideal (u, v).
template <class F>
UniPoly<F> monic_gcd(const F& f, UniPoly<F> u, UniPoly<F> v) {
  trim(f, u);
  trim(f, v);
  if (u.size() < v.size()) std::swap(u, v);
  while (!v.empty()) {
    if (u.size() < kHalfGcdThreshold) return monic_gcd_classical(f, std::move(u), std::move(v));
    if (u.size() == v.size()) {
      auto r = rem(f, u, v);
      u = std::move(v);
      v = std::move(r);
      continue;
    }
    auto M = detail::hgcd(f, u, v);
    M.apply(f, u, v);
    if (v.empty()) break;
    auto r = rem(f, u, v);
    u = std::move(v);
    v = std::move(r);
  }
  return make_monic(f, std::move(u));
}

/// Minimal monic Lambda(z) = z^L + ... annihilating seq as a linear
/// recurrence; for v_i = sum c_j m_j^i it is prod (z - m_j).
template <class F>
UniPoly<F> berlekamp_massey(const F& f, const std::vector<typename F::elem_type>& seq) {
  using elem = typename F::elem_type;
  std::vector<elem> C{f.one()}, B{f.one()};
  std::size_t L = 0, m = 1;
  elem b = f.one();
  for (std::size_t n = 0; n < seq.size(); ++n) {
    elem d = seq[n];
    for (std::size_t i = 1; i <= L && i < C.size(); ++i) d = f.add(d, f.mul(C[i], seq[n - i]));
    if (f.is_zero(d)) {
      ++m;
      continue;
    }
    const elem coef = f.div(d, b);
    auto T = C;
    if (C.size() < B.size() + m) C.resize(B.size() + m, f.zero());
    for (std::size_t i = 0; i < B.size(); ++i) C[i + m] = f.sub(C[i + m], f.mul(coef, B[i]));
    if (2 * L <= n) {
      L = n + 1 - L;
      B = std::move(T);
      b = d;
      m = 1;
    } else {
      ++m;
    }
  }
  C.resize(L + 1, f.zero());
  UniPoly<F> lambda(L + 1);
  for (std::size_t i = 0; i <= L; ++i) lambda[i] = C[L - i];
  return lambda;
}

namespace detail {

template <class F>
UniPoly<F> frobenius_mod(const F& f, UniPoly<F> a, const UniPoly<F>& m) {
  return powmod(f, std::move(a), f.characteristic(), m);
}

// Random splitting of a monic squarefree g whose roots all lie in F.
template <class F>
void split_roots(const F& f, const UniPoly<F>& g, rng_t& rng, std::vector<typename F::elem_type>& out) {
  const long n = deg<F>(g);
  if (n <= 0) return;
  if (n == 1) {
    out.push_back(f.neg(g[0]));
    return;
  }
  const u64 p = f.characteristic();
  const int K = f.degree();
  for (int attempt = 0; attempt < 256; ++attempt) {
    UniPoly<F> w;
    if (p == 2) {
      // Trace map Tr(a z) = sum_{j<K} (a z)^(2^j).
      UniPoly<F> cur{f.zero(), f.random_nonzero(rng)};
      cur = rem(f, cur, g);
      w = cur;
      for (int j = 1; j < K; ++j) {
        cur = mulmod(f, cur, cur, g);
        w = add(f, w, cur);
      }
    } else {
      // (z + a)^((q-1)/2) with (q-1)/2 = (1 + p + ... + p^(K-1)) (p-1)/2.
      UniPoly<F> cur{f.random(rng), f.one()};
      cur = rem(f, cur, g);
      UniPoly<F> t = cur;
      for (int j = 1; j < K; ++j) {
        cur = frobenius_mod(f, cur, g);
        t = mulmod(f, t, cur, g);
      }
      w = powmod(f, t, (p - 1) / 2, g);
      w = sub(f, w, UniPoly<F>{f.one()});
    }
    auto h = monic_gcd(f, w, g);
    const long dh = deg<F>(h);
    if (dh > 0 && dh < n) {
      UniPoly<F> q, r;
      divmod(f, g, h, q, r);
      split_roots(f, h, rng, out);
      split_roots(f, make_monic(f, q), rng, out);
      return;
    }
  }
  throw root_deficit(out.size(), out.size() + static_cast<std::size_t>(n));
}

}  // namespace detail

/// All roots of a squarefree polynomial that splits over F.  Throws
/// root_deficit when fewer than deg(a) distinct roots exist in F.
template <class F>
std::vector<typename F::elem_type> find_roots(const F& f, UniPoly<F> a, rng_t& rng) {
  a = make_monic(f, std::move(a));
  if (a.empty()) throw zero_polynomial();
  std::vector<typename F::elem_type> roots;
  const long n = deg<F>(a);
  if (n == 0) return roots;
  if (f.is_zero(a[0])) {
    roots.push_back(f.zero());
    a.erase(a.begin());
    if (!a.empty() && f.is_zero(a[0])) throw root_deficit(1, static_cast<std::size_t>(n));
  }
  // g = gcd(z^q - z, a) collects the distinct roots in F.
  UniPoly<F> h{f.zero(), f.one()};
  h = rem(f, h, a);
  for (int j = 0; j < f.degree(); ++j) h = detail::frobenius_mod(f, h, a);
  h = sub(f, h, UniPoly<F>{f.zero(), f.one()});
  auto g = monic_gcd(f, h, a);
  if (g.size() != a.size()) {
    throw root_deficit(roots.size() + (g.empty() ? 0 : g.size() - 1), static_cast<std::size_t>(n));
  }
  detail::split_roots(f, g, rng, roots);
  return roots;
}

/// Solves sum_j c_j m_j^i = v_i for i = 1..t with t = nodes.size().
template <class F>
std::vector<typename F::elem_type> solve_transposed_vandermonde(const F& f,
                                                                const std::vector<typename F::elem_type>& nodes,
                                                                const std::vector<typename F::elem_type>& values) {
  using elem = typename F::elem_type;
  const std::size_t t = nodes.size();
  if (t == 0) return {};
  if (values.size() < t) throw length_mismatch("fewer values than Vandermonde nodes");
  for (std::size_t i = 0; i < t; ++i) {
    if (f.is_zero(nodes[i])) throw singular_system();
    for (std::size_t j = 0; j < i; ++j)
      if (f.eq(nodes[i], nodes[j])) throw singular_system();
  }
  // master(z) = prod (z - m_j)
  std::vector<elem> master{f.one()};
  for (const auto& m : nodes) {
    std::vector<elem> next(master.size() + 1, f.zero());
    for (std::size_t i = 0; i < master.size(); ++i) {
      next[i + 1] = f.add(next[i + 1], master[i]);
      next[i] = f.sub(next[i], f.mul(m, master[i]));
    }
    master = std::move(next);
  }
  std::vector<elem> coeffs(t);
  std::vector<elem> q(t);
  for (std::size_t j = 0; j < t; ++j) {
    // q = master / (z - m_j) by synthetic division.
    elem carry = master[t];
    for (std::size_t l = t; l-- > 0;) {
      q[l] = carry;
      carry = f.add(master[l], f.mul(carry, nodes[j]));
    }
    elem num = f.zero(), qm = f.zero();
    for (std::size_t l = t; l-- > 0;) {
      num = f.add(num, f.mul(q[l], values[l]));
      qm = f.add(f.mul(qm, nodes[j]), q[l]);
    }
    coeffs[j] = f.div(num, f.mul(nodes[j], qm));
  }
  // Residual check against the inputs.
  std::vector<elem> pw = nodes;
  for (std::size_t i = 0; i < t; ++i) {
    elem s = f.zero();
    for (std::size_t j = 0; j < t; ++j) {
      s = f.add(s, f.mul(coeffs[j], pw[j]));
      pw[j] = f.mul(pw[j], nodes[j]);
    }
    if (!f.eq(s, values[i])) throw singular_system();
  }
  return coeffs;
}

}  // namespace uni

using uni::berlekamp_massey;
using uni::find_roots;
using uni::monic_gcd;
using uni::solve_transposed_vandermonde;

}  // namespace spgcd
