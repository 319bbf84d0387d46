#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace th;

namespace {

// Plain-integer polynomial remainder over F_p, low to high, for brute-force
// irreducibility checks.
std::vector<u64> rem_plain(std::vector<u64> a, const std::vector<u64>& m, u64 p) {
  const std::size_t dm = m.size() - 1;
  const u64 inv_lead = invmod(m.back(), p);
  while (a.size() > dm) {
    u64 c = mulmod(a.back(), inv_lead, p);
    const std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = (a[shift + i] + p - mulmod(c, m[i], p)) % p;
    a.pop_back();
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

bool brute_irreducible(const std::vector<u64>& m, u64 p) {
  const std::size_t k = m.size() - 1;
  for (std::size_t d = 1; d <= k / 2; ++d) {
    std::vector<u64> cand(d + 1, 0);
    cand[d] = 1;
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) total *= p;
    for (std::size_t code = 0; code < total; ++code) {
      std::size_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        cand[i] = c % p;
        c /= p;
      }
      if (rem_plain(m, cand, p).empty()) return false;
    }
  }
  return true;
}

std::vector<u64> plain_poly(const PrimeField& f, const bpoly::poly& m) {
  std::vector<u64> out;
  for (auto c : m) out.push_back(f.to_u64(c));
  return out;
}

u64 multiplicative_order_brute(const PrimeField& f, u64 g) {
  u64 x = g;
  for (u64 k = 1;; ++k) {
    if (x == f.one()) return k;
    x = f.mul(x, g);
  }
}

}  // namespace

TEST(PrimeField, ProductOfThreeAndFiveInF7IsOne) {
  PrimeField f(7);
  EXPECT_EQ(f.to_u64(f.mul(f.from_u64(3), f.from_u64(5))), 1u);
}

TEST(PrimeField, InverseOfThreeInF7IsFive) {
  PrimeField f(7);
  EXPECT_EQ(f.to_u64(f.inv(f.from_u64(3))), 5u);
}

TEST(PrimeField, FermatForSixModTenMillionNineteen) {
  PrimeField f(10000019);
  EXPECT_EQ(f.to_u64(f.pow(f.from_u64(6), u64{10000018})), 1u);
}

TEST(PrimeField, InvertingZeroThrows) {
  PrimeField f(7);
  EXPECT_THROW(f.inv(f.zero()), division_by_zero);
  PrimeField f2(2);
  EXPECT_THROW(f2.inv(f2.zero()), division_by_zero);
}

TEST(PrimeField, RejectsCompositeAndOversizedModuli) {
  EXPECT_THROW(PrimeField(15), invalid_input);
  EXPECT_THROW(PrimeField((u64{1} << 62) + 135), invalid_input);
}

TEST(PrimeField, RandomInverseAndPowerLaws) {
  rng_t rng(11);
  for (u64 p : {2ull, 3ull, 7ull, 10000019ull, 4611686018427387847ull}) {
    PrimeField f(p);
    for (int i = 0; i < 200; ++i) {
      u64 a = f.random_nonzero(rng);
      EXPECT_EQ(f.mul(a, f.inv(a)), f.one());
      u64 x = rng() % 1000, y = rng() % 1000;
      EXPECT_EQ(f.mul(f.pow(a, x), f.pow(a, y)), f.pow(a, x + y));
      u64 b = f.random(rng);
      EXPECT_EQ(f.to_u64(f.mul(a, b)), mulmod(f.to_u64(a), f.to_u64(b), p));
    }
  }
}

TEST(PrimeField, FromIntHandlesNegatives) {
  PrimeField f(7);
  EXPECT_EQ(f.to_u64(f.from_int(-1)), 6u);
  EXPECT_EQ(f.to_u64(f.from_int(-15)), 6u);
  EXPECT_EQ(f.to_u64(f.from_int(9)), 2u);
}

TEST(ModArith, FactorizeRecoversProduct) {
  rng_t rng(5);
  for (int i = 0; i < 200; ++i) {
    u64 n = (rng() >> 4) | 2;
    u64 prod = 1;
    for (auto [q, e] : factorize(n)) {
      EXPECT_TRUE(is_prime_u64(q));
      for (int j = 0; j < e; ++j) prod *= q;
    }
    EXPECT_EQ(prod, n);
  }
}

TEST(Irreducible, DegreeOneOverF2) {
  PrimeField f(2);
  rng_t rng(1);
  auto m = find_irreducible(f, 1, rng);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m.back(), f.one());
}

TEST(Irreducible, ZSquaredPlusOneOverF7) {
  PrimeField f(7);
  EXPECT_TRUE(is_irreducible(f, {f.from_u64(1), 0, f.one()}));
  EXPECT_TRUE(brute_irreducible({1, 0, 1}, 7));
}

TEST(Irreducible, ZSquaredPlusTwoOverF5) {
  PrimeField f(5);
  EXPECT_TRUE(is_irreducible(f, {f.from_u64(2), 0, f.one()}));
  EXPECT_TRUE(brute_irreducible({2, 0, 1}, 5));
}

TEST(Irreducible, RejectsReducible) {
  PrimeField f(7);
  // z^2 - 1 = (z - 1)(z + 1); z^4 + 2z^2 + 1 = (z^2 + 1)^2
  EXPECT_FALSE(is_irreducible(f, {f.from_int(-1), 0, f.one()}));
  EXPECT_FALSE(is_irreducible(f, {f.one(), 0, f.from_u64(2), 0, f.one()}));
}

TEST(Irreducible, OutputPassesBruteForceCheck) {
  rng_t rng(3);
  for (u64 p : {2ull, 3ull, 5ull, 7ull}) {
    PrimeField f(p);
    for (std::size_t k = 1; k <= 6; ++k) {
      auto m = find_irreducible(f, k, rng);
      ASSERT_EQ(m.size(), k + 1);
      EXPECT_EQ(m.back(), f.one());
      EXPECT_TRUE(brute_irreducible(plain_poly(f, m), p)) << "p=" << p << " k=" << k;
    }
  }
}

TEST(Irreducible, AgreesWithBruteForceOnAllCubicsOverF3) {
  PrimeField f(3);
  for (int code = 0; code < 27; ++code) {
    std::vector<u64> m = {static_cast<u64>(code % 3), static_cast<u64>(code / 3 % 3), static_cast<u64>(code / 9), 1};
    bpoly::poly mm;
    for (auto c : m) mm.push_back(f.from_u64(c));
    EXPECT_EQ(is_irreducible(f, mm), brute_irreducible(m, 3)) << code;
  }
}

TEST(PrimitiveRoot, ThreeGeneratesF7) {
  PrimeField f(7);
  u64 g = find_primitive_root(f);
  EXPECT_EQ(f.to_u64(g), 3u);
  EXPECT_EQ(multiplicative_order_brute(f, f.from_u64(3)), 6u);
  EXPECT_TRUE(is_primitive_element(f, f.from_u64(3)));
  EXPECT_FALSE(is_primitive_element(f, f.from_u64(2)));
}

TEST(PrimitiveRoot, SixGeneratesTenMillionNineteen) {
  PrimeField f(10000019);
  EXPECT_TRUE(is_primitive_element(f, f.from_u64(6)));
  // Independent check: trial-divide p - 1 and test every maximal subgroup.
  u64 n = 10000018, m = n;
  for (u64 q = 2; q * q <= m; ++q) {
    if (m % q) continue;
    while (m % q == 0) m /= q;
    EXPECT_NE(f.pow(f.from_u64(6), n / q), f.one());
  }
  if (m > 1) {
    EXPECT_NE(f.pow(f.from_u64(6), n / m), f.one());
  }
  u64 g = find_primitive_root(f);
  EXPECT_TRUE(is_primitive_element(f, g));
}

TEST(PrimitiveRoot, F2IsGeneratedByOne) {
  PrimeField f(2);
  EXPECT_EQ(f.to_u64(find_primitive_root(f)), 1u);
}

TEST(PrimitiveRoot, BudgetExceededIsReported) {
  PrimeField f(4611686018427387847ull);
  factor_budget tiny;
  tiny.trial_limit = 10;
  tiny.rho_iterations = 1;
  EXPECT_THROW(find_primitive_root(f, tiny), factorization_budget_exceeded);
}

TEST(ExtensionField, FieldLawsAndFrobenius) {
  rng_t rng(9);
  PrimeField base(7);
  ExtensionField<4> F(base, find_irreducible(base, 3, rng));
  for (int i = 0; i < 200; ++i) {
    auto a = F.random_nonzero(rng), b = F.random(rng), c = F.random(rng);
    EXPECT_TRUE(F.eq(F.mul(a, F.inv(a)), F.one()));
    EXPECT_TRUE(F.eq(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c))));
    EXPECT_TRUE(F.eq(F.frobenius(b), F.pow(b, u64{7})));
    EXPECT_TRUE(F.eq(F.pow(a, u64{343 - 1}), F.one()));
  }
  EXPECT_THROW(F.inv(F.zero()), division_by_zero);
}

TEST(ExtensionField, BaseValueDetectsSubfield) {
  rng_t rng(2);
  PrimeField base(101);
  ExtensionField<4> F(base, find_irreducible(base, 2, rng));
  auto x = F.from_base(base.from_u64(42));
  ASSERT_TRUE(F.base_value(x).has_value());
  EXPECT_EQ(*F.base_value(x), 42u);
  ExtensionField<4>::elem_type z{};
  z.c[1] = base.one();
  EXPECT_FALSE(F.base_value(z).has_value());
}

TEST(ExtensionField, PrimitiveRootHasFullOrder) {
  rng_t rng(4);
  PrimeField base(3);
  ExtensionField<4> F(base, find_irreducible(base, 4, rng));
  auto g = find_primitive_root(F, rng);
  auto x = g;
  std::size_t order = 1;
  while (!F.eq(x, F.one())) {
    x = F.mul(x, g);
    ++order;
  }
  EXPECT_EQ(order, 80u);
}

TEST(ExtensionField, SubfieldGeneratorHasSubfieldOrder) {
  rng_t rng(8);
  PrimeField base(5);
  ExtensionField<8> F(base, find_irreducible(base, 6, rng));
  auto g = subfield_generator(F, 2, rng);
  auto x = g;
  std::size_t order = 1;
  while (!F.eq(x, F.one())) {
    x = F.mul(x, g);
    ++order;
  }
  EXPECT_EQ(order, 24u);
}

TEST(Dlog, ThreeToTheFourIsFourInF7) {
  PrimeField f(7);
  EXPECT_EQ(discrete_log_bounded(f, f.from_u64(3), f.from_u64(4), 6), 4u);
}

TEST(Dlog, TargetOneGivesZero) {
  PrimeField f(10000019);
  EXPECT_EQ(discrete_log_bounded(f, f.from_u64(6), f.one(), 1000), 0u);
  rng_t rng(1);
  ExtensionField<4> F(f, find_irreducible(f, 2, rng));
  EXPECT_EQ(discrete_log_bounded(F, F.random_nonzero(rng), F.one(), 17), 0u);
}

TEST(Dlog, ExponentAboveBoundIsNotAPower) {
  PrimeField f(7);
  EXPECT_THROW(discrete_log_bounded(f, f.from_u64(3), f.from_u64(5), 2), not_a_power);
}

TEST(Dlog, ExhaustiveUpToOneThousand) {
  PrimeField f(10000019);
  const u64 w = f.from_u64(6);
  u64 x = f.one();
  for (u64 e = 0; e <= 1000; ++e) {
    ASSERT_EQ(discrete_log_bounded(f, w, x, 1000), e);
    x = f.mul(x, w);
  }
  for (u64 bound : {0ull, 1ull, 2ull, 3ull, 15ull, 16ull, 17ull, 99ull}) {
    u64 y = f.one();
    for (u64 e = 0; e <= bound; ++e) {
      ASSERT_EQ(discrete_log_bounded(f, w, y, bound), e);
      y = f.mul(y, w);
    }
    EXPECT_THROW(discrete_log_bounded(f, w, y, bound), not_a_power);
  }
}

TEST(Dlog, ExhaustiveInExtension) {
  rng_t rng(6);
  PrimeField base(7);
  ExtensionField<4> F(base, find_irreducible(base, 3, rng));
  auto w = find_primitive_root(F, rng);
  auto x = F.one();
  for (u64 e = 0; e <= 341; ++e) {
    ASSERT_EQ(discrete_log_bounded(F, w, x, 341), e);
    x = F.mul(x, w);
  }
}

TEST(Ntt, MatchesSchoolbookAcrossModuli) {
  rng_t rng(12);
  for (u64 p : {2ull, 7ull, 10000019ull, 1000000007ull, 4611686018427387847ull}) {
    for (std::size_t n : {1ul, 2ul, 33ul, 257ul, 1000ul}) {
      std::vector<u64> a(n), b(n + 5);
      for (auto& x : a) x = rng() % p;
      for (auto& x : b) x = rng() % p;
      auto c = ntt::multiply_mod(a, b, p);
      ASSERT_EQ(c.size(), a.size() + b.size() - 1);
      for (std::size_t k = 0; k < c.size(); k += 7) {
        u64 acc = 0;
        for (std::size_t i = 0; i <= k && i < a.size(); ++i)
          if (k - i < b.size()) acc = static_cast<u64>((static_cast<u128>(acc) + mulmod(a[i], b[k - i], p)) % p);
        ASSERT_EQ(c[k], acc) << "p=" << p << " n=" << n << " k=" << k;
      }
    }
  }
}

TEST(Ntt, PrimeCountFollowsCoefficientBound) {
  EXPECT_EQ(ntt::primes_needed(10000019, 1 << 15), 1);
  EXPECT_EQ(ntt::primes_needed(1000000007, 1000), 2);
  EXPECT_EQ(ntt::primes_needed(4611686018427387847ull, 10), 3);
}
