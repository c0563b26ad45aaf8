#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace fracgame;
using fixtures::q;

namespace {

Game<Rational> scaled_by_size(const Game<Rational>& v, const std::vector<Rational>& g) {
  return Game<Rational>::from_function(v.size(), [&](Coalition c) { return v(c) * g[static_cast<std::size_t>(c.size())]; });
}

std::vector<Rational> random_multiplier(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> step(0, 3);
  std::vector<Rational> g(static_cast<std::size_t>(n) + 1, q(1));
  for (int s = 2; s <= n; ++s)
    g[static_cast<std::size_t>(s)] = g[static_cast<std::size_t>(s) - 1] * (q(1) + q(step(rng), 3));
  return g;
}

std::vector<Rational> powers_of_two(int n) {
  std::vector<Rational> g{q(1)};
  for (int s = 1; s <= n; ++s) g.push_back(g.back() * 2);
  return g;
}

const ClaimResult& claim(const InclusionReport& r, const std::string& id) {
  for (const auto& c : r.claims)
    if (c.id == id) return c;
  throw std::runtime_error("no claim " + id);
}

}  // namespace

TEST(Order, Examples) {
  auto linear = fixtures::by_size(3, [](int s) { return s; });
  auto square = fixtures::by_size(3, [](int s) { return s * s; });
  EXPECT_TRUE(leq_cp(linear, square).holds);
  EXPECT_TRUE(leq_cp(linear, linear).holds);
  auto verdict = leq_cp(square, linear);
  EXPECT_FALSE(verdict.holds);
  auto it = std::find_if(verdict.violations.begin(), verdict.violations.end(), [](const auto& v) {
    return v.smaller == Coalition::singleton(0) && v.larger == Coalition::grand(3);
  });
  ASSERT_NE(it, verdict.violations.end());
  EXPECT_EQ(it->lhs, 9);
  EXPECT_EQ(it->rhs, 3);
  auto pair_game = fixtures::by_size(2, [](int s) { return s; });
  EXPECT_THROW(leq_cp(linear, pair_game), DimensionMismatch);
}

TEST(Order, DoubleModeUsesRelativeTolerance) {
  auto a = Game<double>::from_function(2, [](Coalition c) { return c.size() == 1 ? 1.0 : 2.0; });
  auto b = Game<double>::from_function(2, [](Coalition c) { return c.size() == 1 ? 1.0 : 2.0 * (1 - 1e-12); });
  EXPECT_TRUE(leq_cp(a, b).holds);
  auto c = Game<double>::from_function(2, [](Coalition c) { return c.size() == 1 ? 1.0 : 2.0 * (1 - 1e-6); });
  EXPECT_FALSE(leq_cp(a, c).holds);
}

TEST(OrderedPairs, ConstructionExamples) {
  std::mt19937_64 rng(31);
  for (int n = 1; n <= 5; ++n) {
    auto v = random_game<Rational>(rng, n);
    EXPECT_TRUE(leq_cp(v, scaled_by_size(v, powers_of_two(n))).holds);
    auto same = scaled_by_size(v, std::vector<Rational>(static_cast<std::size_t>(n) + 1, q(1)));
    EXPECT_EQ(same.table(), v.table());
    EXPECT_TRUE(leq_cp(v, same).holds);
  }
}

TEST(OrderedPairs, GeneratedPairsAreOrdered) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    auto [v1, v2] = generate_ordered_pair(seed, 1 + static_cast<int>(seed % 5));
    EXPECT_TRUE(leq_cp(v1, v2).holds);
    EXPECT_TRUE(oracle::cp_ratio_form(v1, v2));
  }
  auto [a1, a2] = generate_ordered_pair(7, 4);
  auto [b1, b2] = generate_ordered_pair(7, 4);
  EXPECT_EQ(a1.table(), b1.table());
  EXPECT_EQ(a2.table(), b2.table());
}

TEST(Theorem, GeneratedPairsPass) {
  VerifyOptions opts;
  opts.samples = 40;
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    auto [v1, v2] = generate_ordered_pair(seed, 2 + static_cast<int>(seed % 3));
    auto report = verify_theorem1(v1, v2, opts);
    EXPECT_TRUE(report.precondition_met);
    ASSERT_EQ(report.claims.size(), 5u);
    for (const auto& c : report.claims) EXPECT_EQ(c.status, ClaimStatus::Pass) << c.id << ": " << c.counterexample;
  }
}

TEST(Theorem, IdenticalGamesPass) {
  std::mt19937_64 rng(32);
  auto v = random_game<Rational>(rng, 4);
  VerifyOptions opts;
  opts.samples = 30;
  EXPECT_TRUE(verify_theorem1(v, v, opts).all_pass());
}

TEST(Theorem, UnorderedPairFlagged) {
  auto square = fixtures::by_size(3, [](int s) { return s * s; });
  auto linear = fixtures::by_size(3, [](int s) { return s; });
  VerifyOptions opts;
  opts.samples = 30;
  auto report = verify_theorem1(square, linear, opts);
  EXPECT_FALSE(report.precondition_met);
  // Under |C|^2 only {N} resists fusion; under |C| every partition does.
  const auto& e = claim(report, "e");
  EXPECT_EQ(e.status, ClaimStatus::Fail);
  EXPECT_FALSE(e.counterexample.empty());
}

TEST(Theorem, CapExceeded) {
  auto [v1, v2] = generate_ordered_pair(1, 6);
  EXPECT_THROW(verify_theorem1(v1, v2), CapExceeded);
}

TEST(Corollary, AdditiveAndPowersOfTwo) {
  auto v1 = fixtures::additive3();
  auto v2 = scaled_by_size(v1, powers_of_two(3));
  EXPECT_EQ(v2(v2.grand()), 24);
  auto third = fixtures::point({q(1, 3), q(1, 3), q(1, 3)});
  EXPECT_TRUE(core_contains(v2, std::span<const Rational>(third), Strength::Strong));
  auto report = verify_corollary(v1, v2);
  EXPECT_TRUE(report.all_pass());
  EXPECT_GT(claim(report, "core").checked, 0u);
}

TEST(Corollary, EmptyCoreIsVacuous) {
  auto v1 = fixtures::g4gap();
  auto v2 = scaled_by_size(v1, powers_of_two(4));
  ASSERT_EQ(core_region(v1, Strength::Strong).status, RegionStatus::Empty);
  auto report = verify_corollary(v1, v2);
  EXPECT_TRUE(report.all_pass());
}

TEST(Corollary, SplinteredStabilityMovesDown) {
  int exercised = 0;
  VerifyOptions opts;
  opts.samples = 30;
  for (std::uint64_t seed = 0; seed < 200 && exercised < 10; ++seed) {
    auto [v1, v2] = generate_ordered_pair(seed, 3 + static_cast<int>(seed % 2));
    if (!fusion_resistant(v2, Partition::singletons(v2.size()))) continue;
    ++exercised;
    EXPECT_TRUE(fusion_resistant(v1, Partition::singletons(v1.size())));
    EXPECT_TRUE(verify_corollary(v1, v2, opts).all_pass());
  }
  EXPECT_GT(exercised, 0);
}

TEST(OrderProperties, ReflexiveAndTransitive) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 5;
    auto v = random_game<Rational>(rng, n);
    auto v1 = scaled_by_size(v, random_multiplier(rng, n));
    auto v2 = scaled_by_size(v1, random_multiplier(rng, n));
    EXPECT_TRUE(leq_cp(v, v).holds);
    EXPECT_TRUE(leq_cp(v, v1).holds);
    EXPECT_TRUE(leq_cp(v1, v2).holds);
    EXPECT_TRUE(leq_cp(v, v2).holds);
  }
  // Transitivity on unconstrained random triples: whenever both links hold, so does the chain.
  int chains = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    auto a = random_game<Rational>(rng, 2);
    auto b = random_game<Rational>(rng, 2);
    auto c = random_game<Rational>(rng, 2);
    if (leq_cp(a, b).holds && leq_cp(b, c).holds) {
      ++chains;
      EXPECT_TRUE(leq_cp(a, c).holds);
    }
  }
  EXPECT_GT(chains, 0);
}

TEST(OrderProperties, ZeroPatternsMatchRatioConventions) {
  std::mt19937_64 rng(34);
  std::uniform_int_distribution<int> val(1, 6);
  for (int pattern = 0; pattern < 4; ++pattern) {
    for (int trial = 0; trial < 200; ++trial) {
      const bool zero1 = pattern & 1, zero2 = pattern & 2;
      auto v1 = Game<Rational>({"a", "b"}, {q(0), zero1 ? q(0) : q(val(rng)), q(val(rng)), q(val(rng))});
      auto v2 = Game<Rational>({"a", "b"}, {q(0), zero2 ? q(0) : q(val(rng)), q(val(rng)), q(val(rng))});
      EXPECT_EQ(leq_cp(v1, v2).holds, oracle::cp_ratio_form(v1, v2)) << "pattern " << pattern;
    }
  }
}

TEST(OrderProperties, MonotoneConsolidationAlongChains) {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + trial % 3;
    std::vector<Game<Rational>> chain{random_game<Rational>(rng, n)};
    for (int k = 0; k < 3; ++k) chain.push_back(scaled_by_size(chain.back(), random_multiplier(rng, n)));
    std::size_t pu = SIZE_MAX, pi_plus = 0, pi_minus = 0;
    for (const auto& g : chain) {
      auto report = stable_sets(g);
      EXPECT_LE(report.count_fusion_resistant(), pu);
      EXPECT_GE(report.count_patched(Strength::Strong), pi_plus);
      EXPECT_GE(report.count_patched(Strength::Weak), pi_minus);
      pu = report.count_fusion_resistant();
      pi_plus = report.count_patched(Strength::Strong);
      pi_minus = report.count_patched(Strength::Weak);
    }
  }
}
