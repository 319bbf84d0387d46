#pragma once

// Finite fields F_p (p < 2^62) and F_{p^k} = F_p[z]/(Phi).
//
// Field objects are immutable contexts; elements are plain values and all
// arithmetic goes through the context (f.mul(a, b)).  Prime-field elements
// are kept in Montgomery form, so use from_u64/to_u64 at the boundary.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "modarith.hpp"

namespace spgcd {

using rng_t = std::mt19937_64;

class PrimeField {
 public:
  using elem_type = u64;

  explicit PrimeField(u64 p) : p_(p) {
    if (p >= kMaxModulus) throw invalid_input("modulus must be below 2^62");
    if (!is_prime_u64(p)) throw invalid_input("modulus " + std::to_string(p) + " is not prime");
    if (p == 2) {
      one_ = 1;
      return;
    }
    // nprime = -p^{-1} mod 2^64 by Newton iteration.
    u64 inv = p;
    for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
    nprime_ = ~inv + 1;
    r2_ = static_cast<u64>((static_cast<u128>(1) << 127) % p);
    r2_ = mulmod(r2_, 2, p);
    one_ = static_cast<u64>((static_cast<u128>(1) << 64) % p);
  }

  u64 characteristic() const noexcept { return p_; }
  int degree() const noexcept { return 1; }

  u64 zero() const noexcept { return 0; }
  u64 one() const noexcept { return one_; }
  bool is_zero(u64 a) const noexcept { return a == 0; }
  bool eq(u64 a, u64 b) const noexcept { return a == b; }
  std::size_t hash(u64 a) const noexcept { return static_cast<std::size_t>(a * 0x9E3779B97F4A7C15ull); }

  u64 add(u64 a, u64 b) const noexcept {
    u64 s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  u64 sub(u64 a, u64 b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  u64 neg(u64 a) const noexcept { return a == 0 ? 0 : p_ - a; }

  u64 mul(u64 a, u64 b) const noexcept {
    if (p_ == 2) return a & b;
    return redc(static_cast<u128>(a) * b);
  }

  u64 inv(u64 a) const {
    if (a == 0) throw division_by_zero();
    return from_u64(invmod(to_u64(a), p_));
  }

  u64 div(u64 a, u64 b) const { return mul(a, inv(b)); }

  template <class E>
  u64 pow(u64 a, E e) const noexcept {
    u64 r = one_;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  u64 from_u64(u64 x) const noexcept {
    x %= p_;
    if (p_ == 2) return x;
    return redc(static_cast<u128>(x) * r2_);
  }
  u64 from_int(std::int64_t x) const noexcept {
    if (x >= 0) return from_u64(static_cast<u64>(x));
    return neg(from_u64(static_cast<u64>(-(x + 1)) + 1));
  }
  u64 to_u64(u64 a) const noexcept {
    if (p_ == 2) return a;
    return redc(a);
  }

  /// The element if it lies in the prime field (always, here).
  std::optional<u64> base_value(u64 a) const { return to_u64(a); }
  std::vector<u64> coords(u64 a) const { return {to_u64(a)}; }
  std::string to_string(u64 a) const { return std::to_string(to_u64(a)); }

  u64 random(rng_t& rng) const { return from_u64(std::uniform_int_distribution<u64>(0, p_ - 1)(rng)); }
  u64 random_nonzero(rng_t& rng) const {
    return from_u64(std::uniform_int_distribution<u64>(1, p_ - 1)(rng));
  }

  const PrimeField& base() const noexcept { return *this; }

 private:
  u64 redc(u128 t) const noexcept {
    u64 m = static_cast<u64>(t) * nprime_;
    u64 r = static_cast<u64>((t + static_cast<u128>(m) * p_) >> 64);
    return r >= p_ ? r - p_ : r;
  }

  u64 p_;
  u64 nprime_ = 0;
  u64 r2_ = 0;
  u64 one_ = 1;
};

// Dense polynomials over F_p with Montgomery coefficients, low to high.
// Small-degree helpers for extension moduli; not the general UniPoly.
namespace bpoly {

using poly = std::vector<u64>;

inline void trim(poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline poly mul(const PrimeField& f, const poly& a, const poly& b) {
  if (a.empty() || b.empty()) return {};
  poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

/// a mod m for monic m.
inline poly rem_monic(const PrimeField& f, poly a, const poly& m) {
  const std::size_t k = m.size() - 1;
  trim(a);
  while (a.size() > k) {
    u64 lc = a.back();
    std::size_t shift = a.size() - 1 - k;
    for (std::size_t j = 0; j < k; ++j) a[shift + j] = f.sub(a[shift + j], f.mul(lc, m[j]));
    a.pop_back();
    trim(a);
  }
  return a;
}

inline void divmod(const PrimeField& f, poly a, const poly& b, poly& q, poly& r) {
  trim(a);
  if (b.empty()) throw division_by_zero();
  u64 lc_inv = f.inv(b.back());
  std::size_t db = b.size() - 1;
  q.assign(a.size() > db ? a.size() - db : 0, 0);
  while (a.size() > db) {
    std::size_t shift = a.size() - 1 - db;
    u64 c = f.mul(a.back(), lc_inv);
    q[shift] = c;
    for (std::size_t j = 0; j < db; ++j) a[shift + j] = f.sub(a[shift + j], f.mul(c, b[j]));
    a.pop_back();
    trim(a);
  }
  r = std::move(a);
}

inline poly gcd_monic(const PrimeField& f, poly a, poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    poly q, r;
    divmod(f, a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    u64 inv = f.inv(a.back());
    for (auto& c : a) c = f.mul(c, inv);
  }
  return a;
}

inline poly mulmod(const PrimeField& f, const poly& a, const poly& b, const poly& m) {
  return rem_monic(f, mul(f, a, b), m);
}

template <class E>
poly powmod(const PrimeField& f, poly a, E e, const poly& m) {
  poly r{f.one()};
  r = rem_monic(f, r, m);
  a = rem_monic(f, a, m);
  while (e) {
    if (e & 1) r = mulmod(f, r, a, m);
    a = mulmod(f, a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace bpoly

/// Rabin's test: f monic of degree k is irreducible iff x^(p^k) = x mod f and
/// gcd(x^(p^(k/r)) - x, f) = 1 for every prime r | k.
inline bool is_irreducible(const PrimeField& f, const bpoly::poly& m) {
  const std::size_t k = m.size() - 1;
  if (k == 0) return false;
  if (k == 1) return true;
  const u64 p = f.characteristic();
  std::vector<u64> divisors;
  for (u64 r : prime_divisors(k)) divisors.push_back(k / r);
  bpoly::poly x{0, f.one()};
  bpoly::poly h = x;
  for (std::size_t j = 1; j <= k; ++j) {
    h = bpoly::powmod(f, h, p, m);
    for (u64 kd : divisors) {
      if (kd != j) continue;
      bpoly::poly t = h;
      t.resize(std::max<std::size_t>(t.size(), 2), 0);
      t[1] = f.sub(t[1], f.one());
      bpoly::trim(t);
      if (t.empty()) return false;
      if (bpoly::gcd_monic(f, t, m).size() != 1) return false;
    }
  }
  bpoly::poly t = h;
  t.resize(std::max<std::size_t>(t.size(), 2), 0);
  t[1] = f.sub(t[1], f.one());
  bpoly::trim(t);
  return t.empty();
}

/// Random monic irreducible polynomial of degree k over F_p (Montgomery form).
inline bpoly::poly find_irreducible(const PrimeField& f, std::size_t k, rng_t& rng) {
  if (k == 0) throw invalid_input("irreducible degree must be positive");
  for (;;) {
    bpoly::poly m(k + 1);
    for (std::size_t i = 0; i < k; ++i) m[i] = f.random(rng);
    m[k] = f.one();
    if (is_irreducible(f, m)) return m;
  }
}

/// F_{p^k} as F_p[z]/(Phi) with k <= Cap.
template <std::size_t Cap>
class ExtensionField {
 public:
  struct elem_type {
    std::array<u64, Cap> c{};
  };

  ExtensionField(PrimeField base, bpoly::poly modulus) : base_(base), k_(modulus.size() - 1) {
    if (k_ < 1 || k_ > Cap) throw invalid_input("extension degree outside capacity");
    if (modulus.back() != base_.one()) throw invalid_input("extension modulus must be monic");
    for (std::size_t i = 0; i < k_; ++i) mod_[i] = modulus[i];
    modulus_ = std::move(modulus);
    one_.c[0] = base_.one();
  }

  const PrimeField& base() const noexcept { return base_; }
  u64 characteristic() const noexcept { return base_.characteristic(); }
  int degree() const noexcept { return static_cast<int>(k_); }
  const bpoly::poly& modulus() const noexcept { return modulus_; }

  elem_type zero() const noexcept { return {}; }
  elem_type one() const noexcept { return one_; }
  bool is_zero(const elem_type& a) const noexcept {
    for (std::size_t i = 0; i < k_; ++i)
      if (a.c[i]) return false;
    return true;
  }
  bool eq(const elem_type& a, const elem_type& b) const noexcept {
    for (std::size_t i = 0; i < k_; ++i)
      if (a.c[i] != b.c[i]) return false;
    return true;
  }
  std::size_t hash(const elem_type& a) const noexcept {
    u64 h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < k_; ++i) h = (h ^ a.c[i]) * 0x100000001b3ull;
    return static_cast<std::size_t>(h);
  }

  elem_type add(const elem_type& a, const elem_type& b) const noexcept {
    elem_type r;
    for (std::size_t i = 0; i < k_; ++i) r.c[i] = base_.add(a.c[i], b.c[i]);
    return r;
  }
  elem_type sub(const elem_type& a, const elem_type& b) const noexcept {
    elem_type r;
    for (std::size_t i = 0; i < k_; ++i) r.c[i] = base_.sub(a.c[i], b.c[i]);
    return r;
  }
  elem_type neg(const elem_type& a) const noexcept {
    elem_type r;
    for (std::size_t i = 0; i < k_; ++i) r.c[i] = base_.neg(a.c[i]);
    return r;
  }

  elem_type mul(const elem_type& a, const elem_type& b) const noexcept {
    std::array<u64, 2 * Cap> t{};
    for (std::size_t i = 0; i < k_; ++i) {
      if (a.c[i] == 0) continue;
      for (std::size_t j = 0; j < k_; ++j) t[i + j] = base_.add(t[i + j], base_.mul(a.c[i], b.c[j]));
    }
    return reduce(t.data(), 2 * k_ - 1);
  }

  /// Reduces a coefficient vector of length len <= 2k - 1 modulo Phi.
  elem_type reduce(u64* t, std::size_t len) const noexcept {
    for (std::size_t i = len; i-- > k_;) {
      u64 lc = t[i];
      if (lc == 0) continue;
      std::size_t shift = i - k_;
      for (std::size_t j = 0; j < k_; ++j) t[shift + j] = base_.sub(t[shift + j], base_.mul(lc, mod_[j]));
    }
    elem_type r;
    for (std::size_t i = 0; i < k_ && i < len; ++i) r.c[i] = t[i];
    return r;
  }

  elem_type inv(const elem_type& a) const {
    if (is_zero(a)) throw division_by_zero();
    // Extended Euclid in F_p[z]: s*a + t*Phi = 1.
    bpoly::poly r0 = modulus_, r1(a.c.begin(), a.c.begin() + k_);
    bpoly::trim(r1);
    bpoly::poly s0{}, s1{base_.one()};
    while (!r1.empty()) {
      bpoly::poly q, r;
      bpoly::divmod(base_, r0, r1, q, r);
      bpoly::poly qs = bpoly::mul(base_, q, s1);
      bpoly::poly s2(std::max(s0.size(), qs.size()), 0);
      for (std::size_t i = 0; i < s2.size(); ++i) {
        u64 x = i < s0.size() ? s0[i] : 0;
        u64 y = i < qs.size() ? qs[i] : 0;
        s2[i] = base_.sub(x, y);
      }
      bpoly::trim(s2);
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    // r0 is a nonzero constant.
    u64 c = base_.inv(r0[0]);
    elem_type out;
    for (std::size_t i = 0; i < s0.size() && i < k_; ++i) out.c[i] = base_.mul(s0[i], c);
    return out;
  }

  elem_type div(const elem_type& a, const elem_type& b) const { return mul(a, inv(b)); }

  template <class E>
  elem_type pow(elem_type a, E e) const noexcept {
    elem_type r = one_;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  elem_type from_u64(u64 x) const noexcept {
    elem_type r;
    r.c[0] = base_.from_u64(x);
    return r;
  }
  elem_type from_int(std::int64_t x) const noexcept {
    elem_type r;
    r.c[0] = base_.from_int(x);
    return r;
  }
  /// Embeds a prime-field element (Montgomery form) as a constant.
  elem_type from_base(u64 b) const noexcept {
    elem_type r;
    r.c[0] = b;
    return r;
  }

  std::optional<u64> base_value(const elem_type& a) const {
    for (std::size_t i = 1; i < k_; ++i)
      if (a.c[i]) return std::nullopt;
    return base_.to_u64(a.c[0]);
  }
  std::vector<u64> coords(const elem_type& a) const {
    std::vector<u64> v(k_);
    for (std::size_t i = 0; i < k_; ++i) v[i] = base_.to_u64(a.c[i]);
    return v;
  }
  std::string to_string(const elem_type& a) const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < k_; ++i) os << (i ? " " : "") << base_.to_u64(a.c[i]);
    os << ']';
    return os.str();
  }

  elem_type random(rng_t& rng) const {
    elem_type r;
    for (std::size_t i = 0; i < k_; ++i) r.c[i] = base_.random(rng);
    return r;
  }
  elem_type random_nonzero(rng_t& rng) const {
    for (;;) {
      elem_type r = random(rng);
      if (!is_zero(r)) return r;
    }
  }

  /// a^(p^times), by repeated p-th powers.
  elem_type frobenius(elem_type a, std::size_t times = 1) const noexcept {
    for (std::size_t i = 0; i < times; ++i) a = pow(a, characteristic());
    return a;
  }

 private:
  PrimeField base_;
  std::size_t k_;
  std::array<u64, Cap> mod_{};
  bpoly::poly modulus_;
  elem_type one_{};
};

/// Element embedding for a prime-field value (Montgomery form) into F.
inline u64 embed(const PrimeField&, u64 b) { return b; }
template <std::size_t Cap>
typename ExtensionField<Cap>::elem_type embed(const ExtensionField<Cap>& f, u64 b) {
  return f.from_base(b);
}

/// q = p^k as a 128-bit integer, or nullopt when it does not fit in 64 bits.
inline std::optional<u64> field_order_u64(u64 p, int k) {
  u128 q = 1;
  for (int i = 0; i < k; ++i) {
    q *= p;
    if (q > ~u64{0}) return std::nullopt;
  }
  return static_cast<u64>(q);
}

/// True iff g generates the multiplicative group of F (order p^k - 1).
template <class F>
bool is_primitive_element(const F& f, const typename F::elem_type& g, const factor_budget& budget = {}) {
  if (f.is_zero(g)) return false;
  auto q = field_order_u64(f.characteristic(), f.degree());
  if (!q) throw factorization_budget_exceeded("field order exceeds 64 bits");
  const u64 n = *q - 1;
  if (n == 1) return f.eq(g, f.one());
  for (u64 r : prime_divisors(n, budget)) {
    if (f.eq(f.pow(g, n / r), f.one())) return false;
  }
  return true;
}

/// Smallest (prime field) or first random (extension) generator of F^*.
inline u64 find_primitive_root(const PrimeField& f, const factor_budget& budget = {}) {
  const u64 p = f.characteristic();
  if (p == 2) return f.one();
  const auto divs = prime_divisors(p - 1, budget);
  for (u64 g = 2; g < p; ++g) {
    u64 ge = f.from_u64(g);
    bool ok = true;
    for (u64 r : divs) {
      if (f.eq(f.pow(ge, (p - 1) / r), f.one())) {
        ok = false;
        break;
      }
    }
    if (ok) return ge;
  }
  throw invalid_input("no primitive root found");
}

template <std::size_t Cap>
typename ExtensionField<Cap>::elem_type find_primitive_root(const ExtensionField<Cap>& f, rng_t& rng,
                                                            const factor_budget& budget = {}) {
  auto q = field_order_u64(f.characteristic(), f.degree());
  if (!q) throw factorization_budget_exceeded("field order exceeds 64 bits");
  const auto divs = prime_divisors(*q - 1, budget);
  for (;;) {
    auto g = f.random_nonzero(rng);
    bool ok = true;
    for (u64 r : divs) {
      if (f.eq(f.pow(g, (*q - 1) / r), f.one())) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
}

/// A generator of the subfield F_{p^sub} inside F (sub | deg F), obtained as
/// the image of a random element under x -> x^((p^K - 1)/(p^sub - 1)).
template <std::size_t Cap>
typename ExtensionField<Cap>::elem_type subfield_generator(const ExtensionField<Cap>& f, int sub, rng_t& rng) {
  const int K = f.degree();
  if (sub <= 0 || K % sub != 0) throw invalid_input("subfield degree must divide the field degree");
  auto qs = field_order_u64(f.characteristic(), sub);
  if (!qs) throw factorization_budget_exceeded("subfield order exceeds 64 bits");
  const auto divs = prime_divisors(*qs - 1);
  for (;;) {
    auto b = f.random_nonzero(rng);
    auto g = f.one();
    for (int j = 0; j < K / sub; ++j) {
      g = f.mul(g, b);
      b = f.frobenius(b, static_cast<std::size_t>(sub));
    }
    bool ok = true;
    for (u64 r : divs) {
      if (f.eq(f.pow(g, (*qs - 1) / r), f.one())) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
}

/// Calls fn with F_{p^degree}: the prime field itself for degree 1, otherwise
/// an extension by a fresh random irreducible modulus.
template <class Fn>
decltype(auto) with_field(const PrimeField& base, int degree, rng_t& rng, Fn&& fn) {
  if (degree <= 1) return fn(base);
  auto modulus = find_irreducible(base, static_cast<std::size_t>(degree), rng);
  if (degree <= 4) return fn(ExtensionField<4>(base, std::move(modulus)));
  if (degree <= 8) return fn(ExtensionField<8>(base, std::move(modulus)));
  if (degree <= 16) return fn(ExtensionField<16>(base, std::move(modulus)));
  if (degree <= 64) return fn(ExtensionField<64>(base, std::move(modulus)));
  throw invalid_input("extension degree " + std::to_string(degree) + " exceeds the supported maximum of 64");
}

}  // namespace spgcd
