#include "oracles.hpp"
#include "stiefel/chern_certificate.hpp"

#include <gtest/gtest.h>

using namespace stiefel;

TEST(ChernExpansion, ThreeTermsAtFive) {
  auto e = chern_x_expansion(5, 2, 5);
  ASSERT_EQ(e.terms.size(), 3u);
  EXPECT_EQ(e.terms[0].coefficient, LocalScalar(1, 5));
  EXPECT_EQ(e.terms[1].coefficient, LocalScalar(1, 2, 5));
  EXPECT_EQ(e.terms[2].coefficient, LocalScalar(1, 6, 5));
  for (const auto& t : e.terms) EXPECT_EQ(t.valuation, Valuation(0));
  EXPECT_TRUE(e.integral());
}

TEST(ChernExpansion, EmptyWhenKEqualsN) {
  auto e = chern_x_expansion(4, 4, 3);
  EXPECT_TRUE(e.terms.empty());
  EXPECT_TRUE(e.integral());
}

TEST(ChernExpansion, FifthTermFailsAtFive) {
  auto e = chern_x_expansion(7, 2, 5);
  ASSERT_EQ(e.terms.size(), 5u);
  EXPECT_EQ(e.terms[4].coefficient, LocalScalar(1, 120, 5));
  EXPECT_EQ(e.terms[4].valuation, Valuation(-1));
  EXPECT_FALSE(e.integral());
  EXPECT_EQ(e.first_nonintegral(), 5);
}

TEST(ChernExpansion, IntegralExactlyWhenPExceedsNMinusK) {
  for (std::int64_t n = 1; n <= 16; ++n)
    for (std::int64_t k = 0; k <= n; ++k)
      for (std::int64_t p : oracle::odd_primes_upto(23)) {
        auto e = chern_x_expansion(n, k, p);
        bool by_terms = true;
        for (std::int64_t i = 1; i <= n - k; ++i) by_terms = by_terms && oracle::factorial_valuation_by_terms(i, p) == 0;
        EXPECT_EQ(e.integral(), p > n - k);
        EXPECT_EQ(e.integral(), by_terms);
      }
}

TEST(GammaWindow, Examples) {
  auto w = gamma_integrality_window(5, 2, 7);
  EXPECT_TRUE(w.pass);
  ASSERT_EQ(w.entries.size(), 4u);
  for (const auto& e : w.entries) EXPECT_EQ(e.valuation, 0);
  EXPECT_EQ(w.top_term_degree, 15);

  auto edge = gamma_integrality_window(5, 2, 5);
  EXPECT_TRUE(edge.pass);
  EXPECT_TRUE(edge.p_equals_n);
  EXPECT_NE(edge.note.find("p = n"), std::string::npos);

  auto bad = gamma_integrality_window(8, 3, 7);
  EXPECT_FALSE(bad.pass);
  EXPECT_EQ(bad.first_failure, 6);
  EXPECT_EQ(bad.entries[6].valuation, 1);
}

TEST(GammaWindow, PassesExactlyWhenPAtLeastN) {
  for (std::int64_t n = 1; n <= 20; ++n)
    for (std::int64_t p : oracle::odd_primes_upto(29)) EXPECT_EQ(gamma_integrality_window(n, 1, p).pass, p >= n);
}

TEST(Certificate, PWFiveTwoAtSeven) {
  auto c = stable_split_certificate(SpaceDescriptor::pw(5, 2), 7);
  EXPECT_TRUE(c.condition1.pass);
  EXPECT_EQ(c.condition1.dimension, 15);
  EXPECT_EQ(c.condition1.bound, 84);
  EXPECT_TRUE(c.condition1.chain_applies);
  EXPECT_TRUE(c.condition2.pass);
  EXPECT_TRUE(c.condition3.pass);
  EXPECT_TRUE(c.verdict);
  EXPECT_FALSE(c.outside_hypotheses);
}

TEST(Certificate, PWFiveTwoAtThree) {
  auto c = stable_split_certificate(SpaceDescriptor::pw(5, 2), 3);
  ASSERT_EQ(c.condition2.ideal_scan.size(), 2u);
  EXPECT_EQ(c.condition2.ideal_scan[0].j, 4);
  EXPECT_EQ(c.condition2.ideal_scan[0].valuation, Valuation(0));
  EXPECT_EQ(c.condition2.ideal_scan[1].valuation, Valuation(0));
  EXPECT_FALSE(c.condition2.first_nonunit_j);
  EXPECT_TRUE(c.condition2.pass);
  EXPECT_FALSE(c.condition1.pass);
  EXPECT_FALSE(c.condition3.pass);
  EXPECT_EQ(c.condition3.chern.first_nonintegral(), 3);
  EXPECT_FALSE(c.verdict);
  EXPECT_TRUE(c.outside_hypotheses);
  EXPECT_FALSE(c.stamp.empty());
}

TEST(Certificate, TorsionWitnessIsReported) {
  auto c = stable_split_certificate(SpaceDescriptor::pw(5, 2), 5);
  EXPECT_FALSE(c.condition2.pass);
  EXPECT_EQ(c.condition2.first_nonunit_j, 4);
  EXPECT_EQ(c.condition2.first_torsion_degree, 8);
}

TEST(Certificate, PLWLeadingSumDivisible) {
  auto c = stable_split_certificate(SpaceDescriptor::plw(3, 2, {1, 2}), 7);
  EXPECT_FALSE(c.condition2.pass);
  ASSERT_TRUE(c.condition2.leading_symmetric_sum);
  EXPECT_EQ(*c.condition2.leading_symmetric_sum, 7);
  EXPECT_FALSE(c.condition2.leading_sum_unit);
  EXPECT_EQ(c.condition2.first_nonunit_j, 2);
  EXPECT_FALSE(c.verdict);
}

TEST(Certificate, RejectsOtherSpaces) {
  EXPECT_THROW(stable_split_certificate(SpaceDescriptor::w(3, 2), 5), DomainError);
  EXPECT_THROW(stable_split_certificate(SpaceDescriptor::wm(3, 2, 5), 5), DomainError);
}

TEST(Certificate, HoldsForEveryPrimeAboveN) {
  for (std::int64_t n = 1; n <= 12; ++n)
    for (std::int64_t k = 1; k <= n; ++k)
      for (std::int64_t p : oracle::odd_primes_upto(2 * n + 10)) {
        if (p <= n) continue;
        auto c = stable_split_certificate(SpaceDescriptor::pw(n, k), p);
        EXPECT_TRUE(c.verdict) << n << " " << k << " " << p;
        EXPECT_LT(2 * n * k - k * k - 1, 2 * p * p - 2 * p);
      }
}

TEST(Certificate, MonotoneInPrime) {
  const auto primes = oracle::odd_primes_upto(31);
  for (std::int64_t n = 1; n <= 10; ++n)
    for (std::int64_t k = 1; k <= n; ++k) {
      bool seen = false;
      for (auto p : primes) {
        bool v = stable_split_certificate(SpaceDescriptor::pw(n, k), p).verdict;
        if (seen && p > n) EXPECT_TRUE(v) << n << " " << k << " " << p;
        seen = seen || (v && p > n);
      }
    }
}
