#pragma once

// Sparse multivariate GCD over F_p.
//
// Pipeline for monomial-primitive inputs A, B (d = max partial degree):
//   I    pick s so that A_(s,y) or B_(s,y) has a maximum isolated term
//   II   over F_{q^r}: monic GCD images at sigma^i, scaled by (prod sigma)^{i d},
//        grown until every y-coefficient has a singular Hankel matrix; the
//        first singular size minus one bounds that coefficient's term count
//   III  over F_{q^m}: random diversifier zeta and point alpha
//   IV   scaled GCD images at alpha^i and at the omega-shifted points
//   V    sparse interpolation of every y-coefficient, undiversified
//   VI   add (x_1...x_n)^d, strip monomial content, normalize lex-monic
// with q = p^k the smallest power for which omega^e, e <= 2d, are distinct.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dlog.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "sparse_interp.hpp"
#include "sparse_poly.hpp"
#include "unipoly.hpp"

namespace spgcd {

enum class TermStrategy { doubling, linear };

/// by_formula sizes the Stage II/III extensions from epsilon; none keeps
/// the working field at F_q.
enum class FieldExtension { by_formula, none };

struct GcdConfig {
  double epsilon = 1e-3;
  std::uint64_t seed = 0;
  int max_retries = 3;
  TermStrategy term_strategy = TermStrategy::doubling;
  IsolationStrategy isolation_strategy = IsolationStrategy::doubling;
  FieldExtension field_extension = FieldExtension::by_formula;
  std::optional<u64> omega;  // primitive root of F_p, plain residue
  std::optional<std::chrono::milliseconds> time_limit;
  factor_budget factoring{};
};

struct TermBounds {
  std::vector<std::int64_t> ydeg;   // y-degrees of the non-leading layers, increasing
  std::vector<std::size_t> bound;   // T_i per layer
  std::size_t T = 0;                // max T_i
  std::int64_t top = 0;             // y-degree of the leading layer
  std::size_t layers() const noexcept { return ydeg.size() + 1; }
};

struct StageTrace {
  IsolatingVector s;
  int isolated_by = 0;
  int base_degree = 1;  // k with q = p^k
  int r = 1;
  int m = 1;
  std::vector<std::vector<u64>> sigma, alpha, zeta;  // coordinates over F_p
  std::vector<u64> omega;
  int retries = 0;
  std::vector<std::string> failures;
  std::array<double, 6> stage_ms{};
  TermBounds bounds;
};

namespace engine {

using clock = std::chrono::steady_clock;

struct deadline {
  std::optional<clock::time_point> at;
  void check(const char* stage) const {
    if (at && clock::now() > *at) throw gcd_failure(stage, "time limit exceeded", false);
  }
};

class stage_timer {
 public:
  stage_timer(StageTrace* t, int idx) : t_(t), idx_(idx), start_(clock::now()) {}
  ~stage_timer() {
    if (t_) t_->stage_ms[static_cast<std::size_t>(idx_)] += std::chrono::duration<double, std::milli>(clock::now() - start_).count();
  }
  stage_timer(const stage_timer&) = delete;
  stage_timer& operator=(const stage_timer&) = delete;

 private:
  StageTrace* t_;
  int idx_;
  clock::time_point start_;
};

/// Dense y-images of a homogenized polynomial at point^1, point^2, ...
template <class F>
class ImageEvaluator {
 public:
  using elem = typename F::elem_type;

  ImageEvaluator(const F& f, const SparsePoly<F>& p, const std::vector<std::int64_t>& ydeg,
                 const std::vector<elem>& point)
      : f_(&f), ydeg_(ydeg), step_(monomial_values(f, p, point)), cur_(p.coeffs) {
    for (auto v : ydeg_) top_ = std::max(top_, v);
  }

  std::int64_t top() const noexcept { return top_; }

  UniPoly<F> next() {
    UniPoly<F> img(static_cast<std::size_t>(top_ + 1), f_->zero());
    for (std::size_t j = 0; j < cur_.size(); ++j) {
      cur_[j] = f_->mul(cur_[j], step_[j]);
      auto& slot = img[static_cast<std::size_t>(ydeg_[j])];
      slot = f_->add(slot, cur_[j]);
    }
    return img;
  }

 private:
  const F* f_;
  std::vector<std::int64_t> ydeg_;
  std::vector<elem> step_;
  std::vector<elem> cur_;
  std::int64_t top_ = 0;
};

inline std::uint64_t saturating_pow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (b != 0 && r > std::numeric_limits<std::uint64_t>::max() / b) return std::numeric_limits<std::uint64_t>::max();
    r *= b;
  }
  return r;
}

/// Smallest k with p^k - 1 > bound.
inline int base_extension_degree(u64 p, std::uint64_t bound) {
  int k = 1;
  u128 q = p;
  while (q - 1 <= bound) {
    q *= p;
    ++k;
  }
  return k;
}

inline int formula_degree(double numerator, double log_q) {
  return std::max(1, static_cast<int>(std::ceil(numerator / log_q - 1e-12)));
}

/// Extension degree for the term-bound stage.
inline int stage_two_degree(double eps, int n, std::int64_t d, std::int64_t s_max, double log_q) {
  const double nn = n, dd = static_cast<double>(d);
  const double num = std::log(1 / eps) + std::log(86.0) + 2 * nn * std::log(dd + 1) + 2 * std::log(nn * dd) +
                     std::log(static_cast<double>(s_max));
  return formula_degree(num, log_q);
}

/// Extension degree for the interpolation stages.
inline int stage_three_degree(double eps, int n, std::int64_t d, std::size_t T, double log_q) {
  const double nn = n, dd = static_cast<double>(d), tt = static_cast<double>(T);
  const double num = std::log(1 / eps) + std::log(42.0) + std::log(nn + 1) + 2 * std::log(nn * dd * tt);
  return formula_degree(num, log_q);
}

template <class F>
std::vector<std::vector<u64>> coords_of(const F& f, const std::vector<typename F::elem_type>& v) {
  std::vector<std::vector<u64>> out;
  for (const auto& x : v) out.push_back(f.coords(x));
  return out;
}

template <class F>
std::vector<typename F::elem_type> random_point(const F& f, int n, rng_t& rng) {
  std::vector<typename F::elem_type> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = f.random_nonzero(rng);
  return v;
}

// omega of F_{p^k} inside the working field.
inline u64 working_omega(const PrimeField&, int, u64 omega_base, rng_t&) { return omega_base; }
template <std::size_t Cap>
typename ExtensionField<Cap>::elem_type working_omega(const ExtensionField<Cap>& f, int k, u64 omega_base,
                                                      rng_t& rng) {
  if (k == 1) return f.from_base(omega_base);
  return subfield_generator(f, k, rng);
}

struct Inputs {
  const PrimeField* base;
  const SparsePoly<PrimeField>* a;
  const SparsePoly<PrimeField>* b;
  int n;
  std::int64_t d;
  int k;
  u64 omega_base;  // Montgomery form; meaningful when k == 1
  const GcdConfig* cfg;
  deadline limit;
  StageTrace* trace;
};

struct Attempt {
  IsolatingVector s;
  std::vector<std::int64_t> ydeg_a, ydeg_b;
};

}  // namespace engine

/// Smallest s <= T with det of the s x s Hankel matrix (v_{i+j-1}) equal to
/// zero, or nullopt if all of them are nonsingular.  Needs 2T-1 values.
template <class F>
std::optional<std::size_t> hankel_first_singular(const F& f, const std::vector<typename F::elem_type>& v,
                                                 std::size_t T) {
  if (T == 0) return std::nullopt;
  if (v.size() < 2 * T - 1) throw length_mismatch("Hankel test needs 2T-1 values");
  // Elimination without pivoting; pivot s is det(HK_s)/det(HK_{s-1}).
  std::vector<std::vector<typename F::elem_type>> h(T, std::vector<typename F::elem_type>(T));
  for (std::size_t i = 0; i < T; ++i)
    for (std::size_t j = 0; j < T; ++j) h[i][j] = v[i + j];
  for (std::size_t s = 0; s < T; ++s) {
    if (f.is_zero(h[s][s])) return s + 1;
    auto inv = f.inv(h[s][s]);
    for (std::size_t i = s + 1; i < T; ++i) {
      if (f.is_zero(h[i][s])) continue;
      auto c = f.mul(h[i][s], inv);
      for (std::size_t j = s; j < T; ++j) h[i][j] = f.sub(h[i][j], f.mul(c, h[s][j]));
    }
  }
  return std::nullopt;
}

namespace engine {

template <class F>
TermBounds stage_two(const F& f, const Inputs& in, const Attempt& at, rng_t& rng) {
  using elem = typename F::elem_type;
  const int n = in.n;
  auto sigma = random_point(f, n, rng);
  if (in.trace) in.trace->sigma = coords_of(f, sigma);

  ImageEvaluator<F> ea(f, sparse::embed_poly(f, *in.a), at.ydeg_a, sigma);
  ImageEvaluator<F> eb(f, sparse::embed_poly(f, *in.b), at.ydeg_b, sigma);

  elem prod = f.one();
  for (const auto& x : sigma) prod = f.mul(prod, x);
  const elem step = f.pow(prod, static_cast<u64>(in.d));
  elem scale = f.one();

  std::vector<UniPoly<F>> eta;  // eta[i-1] for i = 1, 2, ...
  long degree = -1;
  auto evaluate_next = [&] {
    auto ia = ea.next();
    auto ib = eb.next();
    if (f.is_zero(ia.back()) || f.is_zero(ib.back())) throw gcd_failure("II", "leading coefficient vanished");
    auto g = monic_gcd(f, std::move(ia), std::move(ib));
    const long dg = uni::deg<F>(g);
    if (degree < 0) degree = dg;
    if (dg != degree) throw gcd_failure("II", "image degrees disagree");
    scale = f.mul(scale, step);
    for (auto& c : g) c = f.mul(c, scale);
    eta.push_back(std::move(g));
  };

  const std::uint64_t cap = saturating_pow(static_cast<std::uint64_t>(in.d) + 1, n);
  std::size_t T = 1;
  evaluate_next();
  const std::size_t positions = static_cast<std::size_t>(degree);
  std::vector<std::optional<std::size_t>> first_singular(positions);
  std::size_t unresolved = positions;
  for (;;) {
    while (eta.size() < 2 * T - 1) {
      in.limit.check("II");
      evaluate_next();
    }
    std::vector<elem> column(2 * T - 1);
    for (std::size_t pos = 0; pos < positions; ++pos) {
      if (first_singular[pos]) continue;
      for (std::size_t i = 0; i < column.size(); ++i) column[i] = eta[i][pos];
      if (auto s = hankel_first_singular(f, column, T)) {
        first_singular[pos] = s;
        --unresolved;
      }
    }
    if (unresolved == 0) break;
    T = in.cfg->term_strategy == TermStrategy::doubling ? 2 * T : T + 1;
    if (T > cap) throw gcd_failure("II", "term bound exceeded (d+1)^n", false);
  }

  TermBounds tb;
  tb.top = degree;
  for (std::size_t pos = 0; pos < positions; ++pos) {
    const std::size_t t = *first_singular[pos] - 1;
    if (t == 0) continue;
    tb.ydeg.push_back(static_cast<std::int64_t>(pos));
    tb.bound.push_back(t);
    tb.T = std::max(tb.T, t);
  }
  if (degree > 0 && (tb.ydeg.empty() || tb.ydeg.front() != 0)) throw gcd_failure("II", "lowest layer vanished");
  return tb;
}

template <class F>
SparsePoly<PrimeField> stages_three_to_six(const F& f, const Inputs& in, const Attempt& at, const TermBounds& tb,
                                           rng_t& rng) {
  using elem = typename F::elem_type;
  const int n = in.n;
  const PrimeField& base = *in.base;
  const std::size_t L = tb.ydeg.size();
  const std::size_t cols = 2 * tb.T;

  // Stage III
  std::vector<elem> zeta, alpha;
  elem omega;
  SparsePoly<F> a_div, b_div;
  {
    stage_timer timer(in.trace, 2);
    omega = working_omega(f, in.k, in.omega_base, rng);
    zeta = random_point(f, n, rng);
    alpha = random_point(f, n, rng);
    if (in.trace) {
      in.trace->zeta = coords_of(f, zeta);
      in.trace->alpha = coords_of(f, alpha);
      in.trace->omega = f.coords(omega);
    }
    a_div = diversify(f, sparse::embed_poly(f, *in.a), zeta);
    b_div = diversify(f, sparse::embed_poly(f, *in.b), zeta);
  }

  // Stage IV: values[row][layer][i]
  std::vector<std::vector<std::vector<elem>>> values(
      static_cast<std::size_t>(n) + 1, std::vector<std::vector<elem>>(L, std::vector<elem>(cols)));
  {
    stage_timer timer(in.trace, 3);
    std::vector<bool> is_layer(static_cast<std::size_t>(tb.top), false);
    for (auto e : tb.ydeg) is_layer[static_cast<std::size_t>(e)] = true;

    elem prod = f.one();
    for (const auto& x : alpha) prod = f.mul(prod, x);
    for (int row = 0; row <= n; ++row) {
      auto point = alpha;
      elem pr = prod;
      if (row > 0) {
        point[static_cast<std::size_t>(row - 1)] = f.mul(point[static_cast<std::size_t>(row - 1)], omega);
        pr = f.mul(pr, omega);
      }
      const elem step = f.pow(pr, static_cast<u64>(in.d));
      elem scale = f.one();
      ImageEvaluator<F> ea(f, a_div, at.ydeg_a, point);
      ImageEvaluator<F> eb(f, b_div, at.ydeg_b, point);
      for (std::size_t i = 0; i < cols; ++i) {
        in.limit.check("IV");
        auto ia = ea.next();
        auto ib = eb.next();
        if (f.is_zero(ia.back()) || f.is_zero(ib.back())) throw gcd_failure("IV", "leading coefficient vanished");
        auto g = monic_gcd(f, std::move(ia), std::move(ib));
        if (uni::deg<F>(g) != tb.top) throw gcd_failure("IV", "image degree differs from the term-bound stage");
        for (std::int64_t pos = 0; pos < tb.top; ++pos)
          if (!is_layer[static_cast<std::size_t>(pos)] && !f.is_zero(g[static_cast<std::size_t>(pos)]))
            throw gcd_failure("IV", "nonzero coefficient outside the detected layers");
        scale = f.mul(scale, step);
        for (std::size_t j = 0; j < L; ++j)
          values[static_cast<std::size_t>(row)][j][i] = f.mul(g[static_cast<std::size_t>(tb.ydeg[j])], scale);
      }
    }
  }

  // Stage V
  SparsePoly<PrimeField> sum(n);
  std::int64_t s_dot_top = 0;
  for (int k = 0; k < n; ++k) s_dot_top += in.d * at.s[static_cast<std::size_t>(k)];
  const std::int64_t offset = s_dot_top - tb.top;  // <e, s> - ydeg for every term of H
  {
    stage_timer timer(in.trace, 4);
    // The leading layer was normalized to (x_1...x_n)^d before undoing the
    // diversification, which leaves (prod zeta)^(-d) on every other layer.
    elem zeta_d = f.one();
    for (const auto& z : zeta) zeta_d = f.mul(zeta_d, z);
    zeta_d = f.pow(zeta_d, static_cast<u64>(in.d));
    for (std::size_t j = 0; j < L; ++j) {
      in.limit.check("V");
      const std::size_t Tj = tb.bound[j];
      EvalGrid<F> grid;
      grid.alpha = alpha;
      grid.omega = omega;
      grid.T = Tj;
      grid.base_row.assign(values[0][j].begin(), values[0][j].begin() + static_cast<std::ptrdiff_t>(2 * Tj));
      for (int k = 1; k <= n; ++k)
        grid.shifted_rows.emplace_back(values[static_cast<std::size_t>(k)][j].begin(),
                                       values[static_cast<std::size_t>(k)][j].begin() +
                                           static_cast<std::ptrdiff_t>(2 * Tj));
      SparsePoly<F> h;
      try {
        h = undiversify(f, interpolate(f, grid, static_cast<std::uint64_t>(2 * in.d), Tj, rng), zeta);
      } catch (const gcd_failure&) {
        throw;
      } catch (const error& e) {
        throw gcd_failure("V", e.what());
      }
      for (std::size_t t = 0; t < h.size(); ++t) {
        auto c = f.base_value(f.mul(h.coeffs[t], zeta_d));
        if (!c) throw gcd_failure("V", "coefficient outside the base field");
        std::int64_t dot = 0;
        auto e = h.exp(t);
        for (int k = 0; k < n; ++k) dot += static_cast<std::int64_t>(e[k]) * at.s[static_cast<std::size_t>(k)];
        if (dot - tb.ydeg[j] != offset) throw gcd_failure("V", "term inconsistent with its layer");
        sum.push(base.from_u64(*c), e);
      }
    }
  }

  // Stage VI
  stage_timer timer(in.trace, 5);
  sum.push(base.one(), Monomial(static_cast<std::size_t>(n), static_cast<exponent_t>(in.d)));
  const std::size_t before = sum.size();
  auto canon = sparse::canonicalize(base, sum);
  if (canon.size() != before) throw gcd_failure("VI", "layers share a monomial");
  return sparse::make_lex_monic(base, monomial_primitive(std::move(canon)));
}

inline SparsePoly<PrimeField> run_attempt(const Inputs& in, rng_t& rng) {
  const PrimeField& base = *in.base;
  StageTrace* trace = in.trace;
  const int n = in.n;

  Attempt at;
  {
    stage_timer timer(trace, 0);
    auto iso = choose_isolating_vector(*in.a, *in.b, rng, in.cfg->isolation_strategy);
    at.s = iso.s;
    at.ydeg_a = homogenized_degrees(*in.a, at.s);
    at.ydeg_b = homogenized_degrees(*in.b, at.s);
    if (trace) {
      trace->s = iso.s;
      trace->isolated_by = iso.isolated_by;
    }
  }

  const double log_q = in.k * std::log(static_cast<double>(base.characteristic()));
  const bool extend = in.cfg->field_extension == FieldExtension::by_formula;
  std::int64_t s_max = 1;
  for (auto v : at.s) s_max = std::max(s_max, v);

  const int r = extend ? stage_two_degree(in.cfg->epsilon, n, in.d, s_max, log_q) : 1;
  if (trace) trace->r = r;
  TermBounds tb;
  {
    stage_timer timer(trace, 1);
    tb = with_field(base, in.k * r, rng, [&](const auto& f) { return stage_two(f, in, at, rng); });
  }
  if (trace) trace->bounds = tb;
  in.limit.check("II");
  if (tb.ydeg.empty()) return sparse::constant(base, n, base.one());

  const int m = extend ? stage_three_degree(in.cfg->epsilon, n, in.d, tb.T, log_q) : 1;
  if (trace) trace->m = m;
  return with_field(base, in.k * m, rng, [&](const auto& f) { return stages_three_to_six(f, in, at, tb, rng); });
}

}  // namespace engine

/// GCD of nonzero monomial-primitive A and B, lex-monic.  Throws
/// gcd_failure once all retries are spent.
inline SparsePoly<PrimeField> primitive_gcd(const PrimeField& base, const SparsePoly<PrimeField>& A,
                                            const SparsePoly<PrimeField>& B, const GcdConfig& cfg,
                                            StageTrace* trace = nullptr) {
  if (!(cfg.epsilon > 0 && cfg.epsilon < 1)) throw invalid_input("epsilon must lie in (0, 1)");
  if (cfg.max_retries < 0) throw invalid_input("max_retries must be nonnegative");
  if (A.nvars != B.nvars) throw invalid_input("inputs have different variable counts");
  if (A.empty() || B.empty()) throw invalid_input("inputs must be nonzero");
  if (!sparse::is_canonical(base, A) || !sparse::is_canonical(base, B))
    throw invalid_input("inputs must be in canonical form");
  for (auto e : monomial_content(A))
    if (e) throw invalid_input("first input is not monomial-primitive");
  for (auto e : monomial_content(B))
    if (e) throw invalid_input("second input is not monomial-primitive");

  StageTrace local;
  if (!trace) trace = &local;
  *trace = StageTrace{};

  const int n = A.nvars;
  const std::int64_t d = std::max(sparse::max_partial_degree(A), sparse::max_partial_degree(B));
  if (d == 0) return sparse::constant(base, n, base.one());

  engine::Inputs in{};
  in.base = &base;
  in.a = &A;
  in.b = &B;
  in.n = n;
  in.d = d;
  in.cfg = &cfg;
  in.trace = trace;
  in.k = engine::base_extension_degree(base.characteristic(), static_cast<std::uint64_t>(2 * d));
  trace->base_degree = in.k;
  if (cfg.time_limit) in.limit.at = engine::clock::now() + *cfg.time_limit;
  if (in.k == 1) {
    if (cfg.omega) {
      const u64 w = base.from_u64(*cfg.omega);
      if (!is_primitive_element(base, w, cfg.factoring)) throw invalid_input("omega is not a primitive root");
      in.omega_base = w;
    } else {
      in.omega_base = find_primitive_root(base, cfg.factoring);
    }
  }

  rng_t rng(cfg.seed);
  for (int attempt = 0;; ++attempt) {
    trace->retries = attempt;
    try {
      return engine::run_attempt(in, rng);
    } catch (const gcd_failure& e) {
      trace->failures.push_back(e.what());
      if (!e.retryable() || attempt >= cfg.max_retries) throw;
    }
  }
}

/// GCD of A and B (not both zero): monomial contents are split off, the
/// primitive parts go through primitive_gcd, and the content GCD is
/// multiplied back.
inline SparsePoly<PrimeField> gcd(const PrimeField& base, const SparsePoly<PrimeField>& A,
                                  const SparsePoly<PrimeField>& B, const GcdConfig& cfg,
                                  StageTrace* trace = nullptr) {
  if (A.nvars != B.nvars) throw invalid_input("inputs have different variable counts");
  if (A.empty() && B.empty()) throw invalid_input("gcd(0, 0) is undefined");
  if (B.empty()) return sparse::make_lex_monic(base, A);
  if (A.empty()) return sparse::make_lex_monic(base, B);
  const Monomial ca = monomial_content(A), cb = monomial_content(B);
  auto g = primitive_gcd(base, monomial_primitive(A), monomial_primitive(B), cfg, trace);
  return sparse::shift_exponents(std::move(g), monomial_gcd(ca, cb));
}

}  // namespace spgcd
