#pragma once

// The centripetality order between games on the same player set, and checkers for
// the inclusions it implies between feasible, resistant and stable solution sets.

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "game.hpp"
#include "linfeas.hpp"
#include "partition.hpp"
#include "random.hpp"
#include "stability.hpp"

namespace fracgame {

/// One failing pair C1 ⊆ C2: lhs = v1(C2) v2(C1) exceeds rhs = v2(C2) v1(C1).
template <Scalar T>
struct OrderViolation {
  Coalition smaller;
  Coalition larger;
  T lhs;
  T rhs;
};

template <Scalar T>
struct OrderVerdict {
  bool holds = true;
  std::vector<OrderViolation<T>> violations;
};

inline constexpr double kDefaultOrderTolerance = 1e-9;

/// v1 ≤cp v2, tested division-free as v1(C2) v2(C1) <= v2(C2) v1(C1) for all C1 ⊆ C2.
///
/// This agrees with the ratio form under 0/0 = 1 and a/0 = +inf: zero values only
/// occur at singletons C1 = {i}. If v1(C1) = v2(C1) = 0 both sides are 0 (inf <= inf);
/// if only v2(C1) = 0 the ratio on the right is +inf and the product test reads
/// 0 <= v2(C2) v1(C1); if only v1(C1) = 0 the left ratio is +inf against a finite
/// right ratio, and the product test fails as v1(C2) v2(C1) > 0.
/// Float games compare with relative tolerance `rel_tol`.
template <Scalar T>
OrderVerdict<T> leq_cp(const Game<T>& v1, const Game<T>& v2, double rel_tol = kDefaultOrderTolerance) {
  if (v1.size() != v2.size()) throw DimensionMismatch("games over different player counts");
  OrderVerdict<T> verdict;
  const std::size_t slots = std::size_t{1} << v1.size();
  for (std::size_t m = 1; m < slots; ++m) {
    Coalition larger(static_cast<Coalition::Mask>(m));
    for_each_proper_subset(larger, [&](Coalition smaller) {
      T lhs = v1(larger) * v2(smaller);
      T rhs = v2(larger) * v1(smaller);
      bool ok;
      if constexpr (is_exact_v<T>) {
        ok = lhs <= rhs;
      } else {
        ok = lhs <= rhs + rel_tol * std::max(std::abs(lhs), std::abs(rhs));
      }
      if (!ok) verdict.violations.push_back({smaller, larger, std::move(lhs), std::move(rhs)});
    });
  }
  verdict.holds = verdict.violations.empty();
  return verdict;
}

/// (v1, v1 * m) with v1 random and m(C) = g(|C|), g positive and nondecreasing.
inline std::pair<Game<Rational>, Game<Rational>> generate_ordered_pair(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  auto v1 = random_game<Rational>(rng, n);
  std::uniform_int_distribution<int> step(0, 4);
  std::vector<Rational> g(static_cast<std::size_t>(n) + 1, Rational(1));
  for (int s = 2; s <= n; ++s)
    g[static_cast<std::size_t>(s)] = g[static_cast<std::size_t>(s) - 1] * (Rational(1) + Rational(step(rng), 4));
  auto v2 = Game<Rational>::from_function(
      n, [&](Coalition c) { return v1(c) * g[static_cast<std::size_t>(c.size())]; }, v1.tolerance(),
      v1.players());
  return {std::move(v1), std::move(v2)};
}

enum class ClaimStatus { Pass, Fail };

inline const char* to_string(ClaimStatus s) { return s == ClaimStatus::Pass ? "PASS" : "FAIL"; }

struct ClaimResult {
  std::string id;
  std::string statement;
  ClaimStatus status = ClaimStatus::Pass;
  std::string scope;
  std::size_t checked = 0;
  std::string counterexample;
};

struct InclusionReport {
  bool precondition_met = true;
  std::vector<ClaimResult> claims;

  bool all_pass() const {
    return std::all_of(claims.begin(), claims.end(),
                       [](const ClaimResult& c) { return c.status == ClaimStatus::Pass; });
  }
};

struct VerifyOptions {
  /// Random feasible allocations per partition (or per game for core claims).
  int samples = 200;
  std::uint64_t seed = 0;
  StabilityOptions stability{5, 2000, 0};
};

namespace detail {

template <Scalar T>
std::string format_point(std::span<const T> f) {
  std::string out = "(";
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) out += ",";
    out += to_string(f[i]);
  }
  return out + ")";
}

inline void fail(ClaimResult& claim, std::string what) {
  if (claim.status == ClaimStatus::Fail) return;
  claim.status = ClaimStatus::Fail;
  claim.counterexample = std::move(what);
}

template <Scalar T>
std::vector<T> scatter(const std::vector<T>& local, Coalition block, int n) {
  std::vector<T> f(static_cast<std::size_t>(n), T(1));
  std::size_t k = 0;
  for (int i : block.members()) f[static_cast<std::size_t>(i)] = local[k++];
  return f;
}

}  // namespace detail

/// Checks the five inclusions (boundary, feasible sets, solutions, fission-resistant
/// solutions of both strengths, fusion-resistant partitions) for a pair of games.
template <Scalar T>
InclusionReport verify_theorem1(const Game<T>& v1, const Game<T>& v2, const VerifyOptions& opts = {}) {
  if (v1.size() != v2.size()) throw DimensionMismatch("games over different player counts");
  const int n = v1.size();
  if (n > kMaxVertexDim) throw CapExceeded("inclusion checks need n <= 5");
  InclusionReport report;
  report.precondition_met = leq_cp(v1, v2).holds;
  std::mt19937_64 rng(opts.seed);
  const auto partitions = enumerate_partitions(n);
  const Coalition everyone = v1.grand();

  ClaimResult a{"a", "boundary(N,v1) ⊆ boundary(N,v2)", ClaimStatus::Pass,
                "vertices of boundary(N,v1) plus " + std::to_string(opts.samples) + " samples", 0, {}};
  {
    std::vector<std::vector<T>> pts;
    if (n == 1) {
      pts.push_back({T(1)});
    } else {
      pts = vertices(boundary_system(v1, everyone));
      for (int s = 0; s < opts.samples; ++s)
        if (auto f = sample_block_point(v1, everyone, rng)) pts.push_back(std::move(*f));
    }
    for (const auto& f : pts) {
      ++a.checked;
      if (!boundary_contains(v2, everyone, std::span<const T>(f)))
        detail::fail(a, "allocation " + detail::format_point(std::span<const T>(f)));
    }
  }

  ClaimResult b{"b", "F(N,v1,P) ⊆ F(N,v2,P) for every partition P", ClaimStatus::Pass,
                "exhaustive: vertices of every block polytope (F is a product over blocks)", 0, {}};
  const std::size_t slots = std::size_t{1} << n;
  for (std::size_t m = 1; m < slots; ++m) {
    Coalition c(static_cast<Coalition::Mask>(m));
    if (c.size() < 2) continue;
    for (const auto& f : vertices(boundary_system(v1, c))) {
      ++b.checked;
      if (!boundary_contains(v2, c, std::span<const T>(f)))
        detail::fail(b, "block {" + v1.name(c) + "} vertex " + detail::format_point(std::span<const T>(f)));
    }
  }

  ClaimResult c{"c", "Q(N,v1) ⊆ Q(N,v2)", ClaimStatus::Pass,
                std::to_string(opts.samples) + " sampled solutions per partition", 0, {}};
  ClaimResult d{"d", "Q^{i±}(N,v1) ⊆ Q^{i±}(N,v2) (weak and strong fission resistance)", ClaimStatus::Pass,
                "patched-core witnesses, strong block-core vertices, " + std::to_string(opts.samples) +
                    " sampled solutions per partition",
                0, {}};
  auto check_fission = [&](const Partition& p, const std::vector<T>& f) {
    for (Strength kind : {Strength::Strong, Strength::Weak}) {
      if (!fission_resistant(v1, p, std::span<const T>(f), kind)) continue;
      ++d.checked;
      if (!solution_feasible(v2, p, std::span<const T>(f)) ||
          !fission_resistant(v2, p, std::span<const T>(f), kind))
        detail::fail(d, std::string(to_string(kind)) + " at " + v1.name(p) + " with " +
                            detail::format_point(std::span<const T>(f)));
    }
  };
  // Strong fission resistance factorizes over blocks, so block-core vertices are exhaustive.
  for (std::size_t m = 1; m < slots; ++m) {
    Coalition blk(static_cast<Coalition::Mask>(m));
    if (blk.size() < 2) continue;
    for (const auto& local : vertices(strong_core_system(subgame(v1, blk)))) {
      auto f = detail::scatter(local, blk, n);
      std::vector<Coalition> blocks{blk};
      for (int i : (everyone - blk).members()) blocks.push_back(Coalition::singleton(i));
      check_fission(Partition(n, std::move(blocks)), f);
    }
  }
  for (const auto& p : partitions) {
    for (Strength kind : {Strength::Strong, Strength::Weak}) {
      auto pc = patched_core(v1, p, kind, opts.stability);
      if (pc.witness) check_fission(p, *pc.witness);
    }
    for (int s = 0; s < opts.samples; ++s) {
      auto f = sample_feasible_allocation(v1, p, rng);
      if (!f) break;
      ++c.checked;
      if (!solution_feasible(v2, p, std::span<const T>(*f)))
        detail::fail(c, v1.name(p) + " with " + detail::format_point(std::span<const T>(*f)));
      else
        check_fission(p, *f);
    }
  }

  ClaimResult e{"e", "P^u(N,v2) ⊆ P^u(N,v1)", ClaimStatus::Pass, "exhaustive over all partitions", 0, {}};
  for (const auto& p : partitions) {
    ++e.checked;
    if (fusion_resistant(v2, p) && !fusion_resistant(v1, p)) detail::fail(e, "partition " + v1.name(p));
  }

  report.claims = {std::move(a), std::move(b), std::move(c), std::move(d), std::move(e)};
  return report;
}

/// Core inclusion for both strengths, and downward transfer of the stability of the
/// all-singletons solution with the all-ones allocation.
template <Scalar T>
InclusionReport verify_corollary(const Game<T>& v1, const Game<T>& v2, const VerifyOptions& opts = {}) {
  if (v1.size() != v2.size()) throw DimensionMismatch("games over different player counts");
  const int n = v1.size();
  if (n > kMaxVertexDim) throw CapExceeded("inclusion checks need n <= 5");
  InclusionReport report;
  report.precondition_met = leq_cp(v1, v2).holds;
  std::mt19937_64 rng(opts.seed);

  ClaimResult core{"core", "F±(N,v1) ⊆ F±(N,v2)", ClaimStatus::Pass,
                   "strong: vertices of the v1 strong core; weak: weak-core witness, strong-core vertices and " +
                       std::to_string(opts.samples) + " sampled members",
                   0, {}};
  std::vector<std::vector<T>> strong_pts;
  if (n == 1) {
    strong_pts.push_back({T(1)});
  } else if (boundary_nonempty(v1, v1.grand())) {
    strong_pts = vertices(strong_core_system(v1));
  }
  for (const auto& f : strong_pts) {
    ++core.checked;
    if (!core_contains(v2, std::span<const T>(f), Strength::Strong))
      detail::fail(core, "strong core point " + detail::format_point(std::span<const T>(f)));
  }
  std::vector<std::vector<T>> weak_pts = strong_pts;
  auto region = core_region(v1, Strength::Weak, opts.stability);
  if (region.witness) weak_pts.push_back(*region.witness);
  for (int s = 0; s < opts.samples; ++s) {
    auto f = sample_block_point(v1, v1.grand(), rng);
    if (!f) break;
    if (core_contains(v1, std::span<const T>(*f), Strength::Weak)) weak_pts.push_back(std::move(*f));
  }
  for (const auto& f : weak_pts) {
    ++core.checked;
    if (!core_contains(v2, std::span<const T>(f), Strength::Weak))
      detail::fail(core, "weak core point " + detail::format_point(std::span<const T>(f)));
  }
  if (strong_pts.empty() && weak_pts.empty()) core.scope += " (vacuous: v1 cores empty)";

  ClaimResult splintered{"splintered", "(singletons, 1) ∈ S±(N,v2) implies (singletons, 1) ∈ S±(N,v1)",
                         ClaimStatus::Pass, "direct check, both strengths", 0, {}};
  const auto singles = Partition::singletons(n);
  const std::vector<T> ones(static_cast<std::size_t>(n), T(1));
  for (Strength kind : {Strength::Strong, Strength::Weak}) {
    ++splintered.checked;
    if (is_stable(v2, singles, std::span<const T>(ones), kind) &&
        !is_stable(v1, singles, std::span<const T>(ones), kind))
      detail::fail(splintered, std::string(to_string(kind)) + " stability lost under v1");
  }

  report.claims = {std::move(core), std::move(splintered)};
  return report;
}

}  // namespace fracgame
