#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace qtcodes;
using namespace testing_support;

namespace {
const FieldSpec& F2 = FieldSpec::of(2);
const FieldSpec& F5 = FieldSpec::of(5);
const FieldSpec& F7 = FieldSpec::of(7);
}  // namespace

TEST(Polynomial, ConstructionTrimsAndValidates) {
  EXPECT_EQ(Polynomial(F5, {1, 2, 0, 0}).degree(), 1);
  EXPECT_TRUE(Polynomial(F5).is_zero());
  EXPECT_EQ(Polynomial(F5).degree(), kZeroDegree);
  EXPECT_THROW(Polynomial(F5, std::vector<Symbol>{1, 5}), std::out_of_range);
  EXPECT_EQ(Polynomial::binomial(F5, 3, 1), Polynomial(F5, {-1, 0, 0, 1}));
}

TEST(Polynomial, RingExamples) {
  EXPECT_EQ(poly_mul(Polynomial(F5, {1, 1}), Polynomial(F5, {4, 1})), Polynomial(F5, {4, 0, 1}));
  const DivMod dm = poly_divmod(Polynomial::binomial(F5, 3, 1), Polynomial(F5, {-1, 1}));
  EXPECT_EQ(dm.quotient, Polynomial(F5, {1, 1, 1}));
  EXPECT_TRUE(dm.remainder.is_zero());
  const Polynomial f(F5, {3, 0, 2});
  EXPECT_EQ(poly_add(f, Polynomial(F5)), f);
  EXPECT_THROW((void)poly_divmod(f, Polynomial(F5)), std::domain_error);
  EXPECT_THROW((void)poly_add(f, Polynomial(F7, {1})), std::invalid_argument);
}

TEST(Polynomial, GcdExamples) {
  EXPECT_EQ(poly_gcd(Polynomial(F2, {1, 0, 1}), Polynomial(F2, {1, 1})), Polynomial(F2, {1, 1}));
  EXPECT_EQ(poly_gcd(Polynomial(F5, {2, 4}), Polynomial(F5)), Polynomial(F5, {3, 1}));
  EXPECT_EQ(poly_gcd(Polynomial::binomial(F5, 4, 1), Polynomial::binomial(F5, 2, 1)), Polynomial(F5, {4, 0, 1}));
  EXPECT_THROW((void)poly_gcd(Polynomial(F5), Polynomial(F5)), std::domain_error);
}

TEST(Polynomial, DivmodAgainstOracleProduct) {
  Rng rng(11);
  for (int q : {2, 3, 5, 7}) {
    const FieldSpec& F = FieldSpec::of(q);
    for (int trial = 0; trial < 200; ++trial) {
      const Polynomial f = random_poly(F, rng, 15);
      const Polynomial g = random_nonzero_poly(F, rng, 8);
      const DivMod dm = poly_divmod(f, g);
      EXPECT_LT(dm.remainder.degree(), g.degree());
      const std::vector<int> prod = oracle_poly_mul(ints(dm.quotient), ints(g), q);
      std::vector<int> rebuilt(std::max(prod.size(), dm.remainder.size()), 0);
      for (std::size_t i = 0; i < prod.size(); ++i) rebuilt[i] = prod[i];
      for (std::size_t i = 0; i < dm.remainder.size(); ++i) rebuilt[i] = (rebuilt[i] + dm.remainder.coeff(i)) % q;
      while (!rebuilt.empty() && rebuilt.back() == 0) rebuilt.pop_back();
      EXPECT_EQ(rebuilt, ints(f));
    }
  }
}

TEST(Polynomial, GcdDividesBothAndIsMonic) {
  Rng rng(12);
  for (int q : {2, 3, 5, 7}) {
    const FieldSpec& F = FieldSpec::of(q);
    for (int trial = 0; trial < 200; ++trial) {
      const Polynomial common = random_nonzero_poly(F, rng, 4);
      const Polynomial f = poly_mul(common, random_nonzero_poly(F, rng, 6));
      const Polynomial g = poly_mul(common, random_poly(F, rng, 6));
      const Polynomial d = poly_gcd(f, g);
      EXPECT_TRUE(d.is_monic());
      EXPECT_TRUE(poly_divides(d, f));
      EXPECT_TRUE(poly_divides(d, g));
      EXPECT_TRUE(poly_divides(poly_monic(common), d));
    }
  }
}

TEST(Polynomial, ParseFormat) {
  const Polynomial g = parse_poly(F5, "[1331311000103332]");
  EXPECT_EQ(g.degree(), 15);
  EXPECT_EQ(g.coeff(0), 1);
  EXPECT_TRUE(parse_poly(F5, "1").is_one());
  EXPECT_TRUE(parse_poly(F5, "").is_zero());
  EXPECT_EQ(format_poly(parse_poly(F5, "[0123400]")), "01234");
  EXPECT_EQ(format_poly(parse_poly(F5, "1331311000103332")), "1331311000103332");
  EXPECT_EQ(parse_poly(F5, "123", CoeffOrder::HighFirst), Polynomial(F5, {3, 2, 1}));
  EXPECT_EQ(format_poly(Polynomial(F5, {3, 2, 1}), CoeffOrder::HighFirst), "123");
  EXPECT_THROW((void)parse_poly(F5, "125"), std::invalid_argument);
  EXPECT_THROW((void)parse_poly(F5, "[12"), std::invalid_argument);
  EXPECT_THROW((void)parse_poly(F5, "1a"), std::invalid_argument);
  EXPECT_EQ(pretty_poly(Polynomial(F5, {4, 0, 1})), "x^2 + 4");
}

TEST(Polynomial, RoundTripRandomStrings) {
  Rng rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    std::string s;
    const int len = draw(rng, 20);
    for (int i = 0; i < len; ++i) s.push_back(static_cast<char>('0' + draw(rng, 7)));
    std::string expect = s;
    while (!expect.empty() && expect.back() == '0') expect.pop_back();
    EXPECT_EQ(format_poly(parse_poly(F7, "[" + s + "]")), expect);
  }
}

TEST(Polynomial, Irreducibility) {
  EXPECT_TRUE(is_irreducible(Polynomial(F2, {1, 1, 1})));
  EXPECT_FALSE(is_irreducible(Polynomial(F2, {1, 0, 1})));
  EXPECT_TRUE(is_irreducible(Polynomial(F5, {2, 0, 1})));   // x^2 + 2: 3 is a non-residue
  EXPECT_FALSE(is_irreducible(Polynomial(F5, {1, 0, 1})));  // x^2 + 1 = (x-2)(x-3)
}

TEST(Factorize, SmallExamples) {
  const FactoredModulus a = factorize_xn_minus_a(F5, 4, 1);
  ASSERT_EQ(a.factors.size(), 4U);
  std::set<std::string> got;
  for (const auto& fp : a.factors) {
    EXPECT_EQ(fp.multiplicity, 1);
    got.insert(format_poly(fp.factor));
  }
  EXPECT_EQ(got, (std::set<std::string>{"41", "31", "21", "11"}));

  const FactoredModulus b = factorize_xn_minus_a(F7, 3, 1);
  std::set<std::string> got7;
  for (const auto& fp : b.factors) got7.insert(format_poly(fp.factor));
  EXPECT_EQ(got7, (std::set<std::string>{"61", "51", "31"}));
}

TEST(Factorize, RepeatedRootLength840) {
  const FactoredModulus fm = factorize_xn_minus_a(F5, 840, 1);
  EXPECT_EQ(fm.coprime_length, 168);
  EXPECT_EQ(fm.repeat, 5);
  long long distinct = 0, total = 0;
  for (const auto& fp : fm.factors) {
    EXPECT_EQ(fp.multiplicity, 5);
    distinct += fp.factor.degree();
    total += fp.multiplicity * fp.factor.degree();
  }
  EXPECT_EQ(distinct, 168);
  EXPECT_EQ(total, 840);
  EXPECT_EQ(fm.product(), Polynomial::binomial(F5, 840, 1));
}

TEST(Factorize, ProductReconstructionRandom) {
  Rng rng(14);
  for (int trial = 0; trial < 60; ++trial) {
    const int q = std::vector<int>{2, 3, 5, 7}[static_cast<std::size_t>(draw(rng, 4))];
    const FieldSpec& F = FieldSpec::of(q);
    const long long N = trial % 5 == 0 ? q * (1 + draw(rng, 40)) : 1 + draw(rng, 200);
    const auto a = static_cast<Symbol>(1 + draw(rng, q - 1));
    const FactoredModulus fm = factorize_xn_minus_a(F, N, a);
    EXPECT_EQ(fm.product(), Polynomial::binomial(F, N, a)) << "q=" << q << " N=" << N << " a=" << int{a};
    for (const auto& fp : fm.factors) {
      EXPECT_TRUE(fp.factor.is_monic());
      EXPECT_TRUE(is_irreducible(fp.factor));
      EXPECT_EQ(fp.multiplicity, fm.repeat);
      if (fp.factor.degree() >= 2 && fp.factor.degree() <= 3)
        for (int x = 0; x < q; ++x) {
          int v = 0;
          for (int i = fp.factor.degree(); i >= 0; --i) v = (v * x + fp.factor.coeff(static_cast<std::size_t>(i))) % q;
          EXPECT_NE(v, 0);
        }
    }
  }
}

TEST(Factorize, Errors) {
  EXPECT_THROW((void)factorize_xn_minus_a(F5, 0, 1), std::invalid_argument);
  EXPECT_THROW((void)factorize_xn_minus_a(F5, 4, 0), std::invalid_argument);
}

TEST(Divisors, Examples) {
  const FactoredModulus fm = factorize_xn_minus_a(F5, 4, 1);
  const auto two = enumerate_divisors(fm, 2, 2, 1000, 1);
  EXPECT_EQ(two.size(), 6U);
  const auto zero = enumerate_divisors(fm, 0, 0, 1000, 1);
  ASSERT_EQ(zero.size(), 1U);
  EXPECT_TRUE(zero[0].is_one());
  const FactoredModulus big = factorize_xn_minus_a(F5, 840, 1);
  const auto d765 = enumerate_divisors(big, 765, 765, 50, 7);
  ASSERT_FALSE(d765.empty());
  EXPECT_LE(d765.size(), 50U);
  for (const auto& d : d765) {
    EXPECT_EQ(d.degree(), 765);
    EXPECT_TRUE(poly_divides(d, Polynomial::binomial(F5, 840, 1)));
  }
  EXPECT_EQ(enumerate_divisors(big, 765, 765, 50, 7), d765);
  EXPECT_THROW((void)enumerate_divisors(fm, 3, 2, 10, 1), std::invalid_argument);
  EXPECT_THROW((void)enumerate_divisors(fm, 0, 5, 10, 1), std::invalid_argument);
}

TEST(Divisors, EmptyWindowIsNotAnError) {
  // x^7 - 1 over GF(2) = (x + 1)(x^3 + x + 1)(x^3 + x^2 + 1): no divisor of degree 2.
  const FactoredModulus fm = factorize_xn_minus_a(F2, 7, 1);
  EXPECT_TRUE(enumerate_divisors(fm, 2, 2, 10, 1).empty());
  EXPECT_EQ(enumerate_divisors(fm, 3, 3, 10, 1).size(), 2U);
}

TEST(Divisors, ExhaustiveCountsMatchSubsetProducts) {
  Rng rng(15);
  for (int trial = 0; trial < 25; ++trial) {
    const int q = std::vector<int>{2, 3, 5}[static_cast<std::size_t>(draw(rng, 3))];
    const FieldSpec& F = FieldSpec::of(q);
    const long long N = 2 + draw(rng, 30);
    const FactoredModulus fm = factorize_xn_minus_a(F, N, 1);
    // Independent count of exponent vectors by degree.
    std::vector<long long> count(static_cast<std::size_t>(N) + 1, 0);
    count[0] = 1;
    for (const auto& fp : fm.factors) {
      std::vector<long long> next(count.size(), 0);
      for (std::size_t d = 0; d < count.size(); ++d)
        for (long long e = 0; e <= fp.multiplicity; ++e) {
          const auto nd = d + static_cast<std::size_t>(e * fp.factor.degree());
          if (nd < next.size()) next[nd] += count[d];
        }
      count = next;
    }
    const int lo = draw(rng, static_cast<int>(N) + 1);
    const int hi = lo + draw(rng, static_cast<int>(N) - lo + 1);
    long long expect = 0;
    for (int d = lo; d <= hi; ++d) expect += count[static_cast<std::size_t>(d)];
    if (expect > 5000) continue;
    const auto divs = enumerate_divisors(fm, lo, hi, 5000, 3);
    EXPECT_EQ(static_cast<long long>(divs.size()), expect);
    EXPECT_EQ(std::set<Polynomial>(divs.begin(), divs.end()).size(), divs.size());
    const Polynomial mod = Polynomial::binomial(F, N, 1);
    for (const auto& d : divs) {
      EXPECT_TRUE(d.is_monic());
      EXPECT_TRUE(poly_divides(d, mod));
      EXPECT_GE(d.degree(), lo);
      EXPECT_LE(d.degree(), hi);
    }
  }
}

TEST(Divisors, SampledSubsetIsDeterministicAndDistinct) {
  const FactoredModulus fm = factorize_xn_minus_a(F5, 840, 1);
  const auto a = enumerate_divisors(fm, 400, 420, 200, 99);
  const auto b = enumerate_divisors(fm, 400, 420, 200, 99);
  EXPECT_EQ(a.size(), 200U);
  EXPECT_EQ(a, b);
  EXPECT_EQ(std::set<Polynomial>(a.begin(), a.end()).size(), a.size());
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
}
