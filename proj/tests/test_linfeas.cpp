#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"

using namespace fracgame;
using fixtures::q;

namespace {

LinearSystem<Rational> simplex(int dim, Rational lower = Rational(0)) {
  LinearSystem<Rational> sys;
  sys.dim = dim;
  sys.lower.assign(static_cast<std::size_t>(dim), lower);
  sys.blocks = {Coalition::grand(dim)};
  return sys;
}

template <class T>
LinearSystem<T> random_system(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim_d(2, 5), coef_d(1, 1000), share_d(0, 12), low_d(0, 4);
  LinearSystem<T> sys;
  sys.dim = dim_d(rng);
  // Random block structure: cut the index range at random points.
  std::uniform_int_distribution<int> cut(0, 2);
  Coalition block;
  for (int i = 0; i < sys.dim; ++i) {
    block = block | Coalition::singleton(i);
    if (i + 1 == sys.dim || cut(rng) == 0) {
      sys.blocks.push_back(block);
      block = Coalition();
    }
  }
  for (int i = 0; i < sys.dim; ++i) sys.lower.push_back(T(low_d(rng)) / T(16));
  std::uniform_int_distribution<int> count_d(0, 4);
  std::uniform_int_distribution<Coalition::Mask> mask_d(1, Coalition::grand(sys.dim).bits());
  const int h = count_d(rng);
  for (int k = 0; k < h; ++k) {
    const T coef(coef_d(rng));
    sys.halfspaces.push_back({Coalition(mask_d(rng)), coef, coef * T(share_d(rng)) / T(12)});
  }
  return sys;
}

LinearSystem<double> to_double(const LinearSystem<Rational>& s) {
  LinearSystem<double> d;
  d.dim = s.dim;
  for (const auto& x : s.lower) d.lower.push_back(x.convert_to<double>());
  d.blocks = s.blocks;
  for (const auto& h : s.halfspaces)
    d.halfspaces.push_back({h.members, h.coefficient.convert_to<double>(), h.threshold.convert_to<double>()});
  return d;
}

/// Rank of the active constraint rows at x (bounds, block equalities, half-spaces).
int active_rank(const LinearSystem<Rational>& sys, const std::vector<Rational>& x) {
  std::vector<std::vector<Rational>> rows;
  const auto d = static_cast<std::size_t>(sys.dim);
  auto row_for = [&](Coalition c) {
    std::vector<Rational> r(d, Rational(0));
    for (int i : c.members()) r[static_cast<std::size_t>(i)] = 1;
    return r;
  };
  for (Coalition b : sys.blocks) rows.push_back(row_for(b));
  for (std::size_t i = 0; i < d; ++i)
    if (x[i] == sys.lower[i]) rows.push_back(row_for(Coalition::singleton(static_cast<int>(i))));
  for (const auto& h : sys.halfspaces) {
    Rational s(0);
    for (int i : h.members.members()) s += x[static_cast<std::size_t>(i)];
    if (h.coefficient * s == h.threshold) rows.push_back(row_for(h.members));
  }
  int rank = 0;
  for (std::size_t col = 0; col < d && rank < static_cast<int>(rows.size()); ++col) {
    auto piv = std::find_if(rows.begin() + rank, rows.end(), [&](const auto& r) { return r[col] != 0; });
    if (piv == rows.end()) continue;
    std::swap(*piv, rows[static_cast<std::size_t>(rank)]);
    const auto& p = rows[static_cast<std::size_t>(rank)];
    for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < rows.size(); ++r) {
      const Rational factor = rows[r][col] / p[col];
      for (std::size_t c = 0; c < d; ++c) rows[r][c] -= factor * p[c];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

TEST(Feasible, UniquePoint) {
  auto sys = simplex(3, q(1, 3));
  auto x = feasible(sys);
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, fixtures::point({q(1, 3), q(1, 3), q(1, 3)}));
}

TEST(Feasible, InfeasibleBounds) {
  auto sys = simplex(2, q(3, 4));
  EXPECT_FALSE(feasible(sys));
  EXPECT_FALSE(find_point(sys));
  EXPECT_THROW(max_slack_point(sys), Infeasible);
}

TEST(Feasible, PlainSimplexGivesUniform) {
  auto x = feasible(simplex(4));
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, std::vector<Rational>(4, q(1, 4)));
}

TEST(MaxSlack, Examples) {
  auto a = max_slack_point(simplex(3));
  EXPECT_EQ(a.point, std::vector<Rational>(3, q(1, 3)));
  EXPECT_EQ(a.slack, q(1, 3));
  EXPECT_EQ(max_slack_point(simplex(3, q(1, 3))).slack, 0);
}

TEST(MaxSlack, GapGameSystemHasInterior) {
  auto sys = boundary_system(fixtures::g4gap(), Coalition::grand(4));
  sys.halfspaces.push_back({Coalition::of({0, 1}), q(1), q(5, 6)});
  auto pt = max_slack_point(sys);
  EXPECT_GT(pt.slack, 0);
  EXPECT_TRUE(sys.satisfied_by(pt.point));
  // Brute grid over shares k/36: best achievable minimum slack.
  Rational best(-1);
  for (int a = 0; a <= 36; ++a)
    for (int b = 0; a + b <= 36; ++b)
      for (int c = 0; a + b + c <= 36; ++c) {
        const int d = 36 - a - b - c;
        Rational m = std::min({q(a, 36), q(b, 36), q(c, 36), q(d, 36), q(a + b, 36) - q(5, 6)});
        best = std::max(best, m);
      }
  EXPECT_EQ(pt.slack, best);
  EXPECT_EQ(pt.point, fixtures::point({q(1, 18), q(5, 6), q(1, 18), q(1, 18)}));
}

TEST(Vertices, Examples) {
  auto v = vertices(simplex(2));
  EXPECT_EQ(v, (std::vector<std::vector<Rational>>{{q(0), q(1)}, {q(1), q(0)}}));
  auto w = vertices(simplex(2, q(1, 4)));
  EXPECT_EQ(w, (std::vector<std::vector<Rational>>{{q(1, 4), q(3, 4)}, {q(3, 4), q(1, 4)}}));
  EXPECT_TRUE(vertices(simplex(2, q(3, 4))).empty());
  EXPECT_THROW(vertices(simplex(6)), CapExceeded);
}

TEST(Vertices, TwoBlocks) {
  LinearSystem<Rational> sys;
  sys.dim = 3;
  sys.lower.assign(3, q(0));
  sys.blocks = {Coalition::singleton(0), Coalition::of({1, 2})};
  auto v = vertices(sys);
  EXPECT_EQ(v, (std::vector<std::vector<Rational>>{{q(1), q(0), q(1)}, {q(1), q(1), q(0)}}));
}

TEST(LinfeasProperties, FeasibleIffVerticesExist) {
  std::mt19937_64 rng(21);
  int feasible_count = 0;
  for (int trial = 0; trial < 500; ++trial) {
    auto sys = random_system<Rational>(rng);
    auto x = feasible(sys);
    auto vs = vertices(sys);
    EXPECT_EQ(x.has_value(), !vs.empty());
    if (x) {
      ++feasible_count;
      EXPECT_TRUE(sys.satisfied_by(*x));
      auto any = find_point(sys);
      ASSERT_TRUE(any);
      EXPECT_TRUE(sys.satisfied_by(*any));
    }
    for (std::size_t i = 0; i < vs.size(); ++i) {
      EXPECT_TRUE(sys.satisfied_by(vs[i]));
      EXPECT_EQ(active_rank(sys, vs[i]), sys.dim);
      if (i) EXPECT_LT(vs[i - 1], vs[i]);
    }
  }
  // The generator should exercise both outcomes.
  EXPECT_GT(feasible_count, 50);
  EXPECT_LT(feasible_count, 450);
}

TEST(LinfeasProperties, RationalAndFloatAgree) {
  std::mt19937_64 rng(22);
  int compared = 0;
  while (compared < 500) {
    auto sys = random_system<Rational>(rng);
    // Margin: distance of the exact optimum slack from zero, scaled by the largest coefficient.
    auto exact = try_max_slack_point(sys);
    Rational margin = exact ? exact->slack : Rational(0);
    if (!exact) {
      // Infeasible: relax every inequality by 1e-6 and require it to stay infeasible.
      auto relaxed = sys;
      for (auto& lb : relaxed.lower) lb -= Rational(1, 1000000);
      for (auto& h : relaxed.halfspaces) h.threshold -= h.coefficient * Rational(1, 1000000);
      if (find_point(relaxed)) continue;
    } else if (margin <= Rational(1, 1000000)) {
      continue;
    }
    ++compared;
    auto dsys = to_double(sys);
    auto x = feasible(dsys);
    EXPECT_EQ(x.has_value(), exact.has_value());
    if (x) EXPECT_TRUE(dsys.satisfied_by(*x));
  }
}
