#pragma once

// Cores, fission/fusion resistance, patched-up cores and stable solution sets.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "coalition.hpp"
#include "game.hpp"
#include "linfeas.hpp"
#include "partition.hpp"
#include "scalar.hpp"

namespace fracgame {

/// Strong = traditional (every coalition constraint); Weak = consensual blocking.
enum class Strength { Strong, Weak };

enum class ResistanceKind { WeakFission, StrongFission, Fusion };

inline const char* to_string(Strength s) { return s == Strength::Strong ? "strong" : "weak"; }

inline const char* to_string(ResistanceKind k) {
  switch (k) {
    case ResistanceKind::WeakFission: return "weak-fission";
    case ResistanceKind::StrongFission: return "strong-fission";
    case ResistanceKind::Fusion: return "fusion";
  }
  return "?";
}

enum class RegionStatus { Nonempty, Empty, Unknown };

inline const char* to_string(RegionStatus s) {
  switch (s) {
    case RegionStatus::Nonempty: return "NONEMPTY";
    case RegionStatus::Empty: return "EMPTY";
    case RegionStatus::Unknown: return "UNKNOWN(nonempty-not-found)";
  }
  return "?";
}

/// Largest n the exact weak-core search supports (coalition sets fit a 64-bit word).
inline constexpr int kWeakCoreHardCap = 6;

struct StabilityOptions {
  /// Exact weak-core search up to this player count; sampled search beyond.
  int max_exact_weak_core_n = 4;
  /// Points tried by the sampled weak-core search.
  int sampled_points = 2000;
  std::uint64_t seed = 0;
};

namespace detail {

/// f(S) for every submask S of the full player set of `f`.
template <Scalar T>
std::vector<T> subset_sums(std::span<const T> f) {
  const std::size_t slots = std::size_t{1} << f.size();
  std::vector<T> sums(slots, T(0));
  for (std::size_t m = 1; m < slots; ++m) {
    const auto low = static_cast<std::size_t>(std::countr_zero(m));
    sums[m] = sums[m & (m - 1)] + f[low];
  }
  return sums;
}

/// True iff the members of `rest` can be split into parts that are all "open"
/// (not objecting), using at least `min_parts` parts. Plain backtracking.
inline bool split_into_open_parts(Coalition rest, const std::vector<char>& open, int min_parts, int used) {
  if (rest.empty()) return used >= min_parts;
  const Coalition low = Coalition::singleton(rest.lowest());
  const Coalition others = rest - low;
  bool found = false;
  // Parts containing the lowest remaining member.
  for (auto s = others.bits();; s = (s - 1) & others.bits()) {
    Coalition part = low | Coalition(s);
    if (open[part.bits()] && split_into_open_parts(rest - part, open, min_parts, used + 1)) {
      found = true;
      break;
    }
    if (s == 0) break;
  }
  return found;
}

}  // namespace detail

/// Strong or weak fission resistance of a feasible solution (P, f).
/// Strong: every proper sub-coalition C' of every block C has v(C) f(C') >= v(C').
/// Weak: every proper split of every block contains at least one such C'.
template <Scalar T>
bool fission_resistant(const Game<T>& game, const Partition& p, std::span<const T> f, Strength kind) {
  if (!solution_feasible(game, p, f)) throw InfeasibleSolution("fission check on an infeasible solution");
  const double tol = game.tolerance();
  const auto sums = detail::subset_sums(f);
  for (Coalition block : p.blocks()) {
    if (block.size() < 2) continue;
    const T& vc = game(block);
    if (kind == Strength::Strong) {
      bool ok = true;
      for_each_proper_subset(block, [&](Coalition sub) {
        if (ok && !geq(T(vc * sums[sub.bits()]), game(sub), tol)) ok = false;
      });
      if (!ok) return false;
    } else {
      std::vector<char> open(std::size_t{1} << game.size(), 0);
      for_each_proper_subset(block, [&](Coalition sub) {
        open[sub.bits()] = geq(T(vc * sums[sub.bits()]), game(sub), tol) ? 0 : 1;
      });
      if (detail::split_into_open_parts(block, open, 2, 0)) return false;
    }
  }
  return true;
}

/// No union C' of two or more blocks has v(C') above the blocks' summed values.
template <Scalar T>
bool fusion_resistant(const Game<T>& game, const Partition& p) {
  const auto& blocks = p.blocks();
  const std::size_t k = blocks.size();
  const double tol = game.tolerance();
  for (std::size_t pick = 1; pick < (std::size_t{1} << k); ++pick) {
    if (std::popcount(pick) < 2) continue;
    Coalition merged;
    T total(0);
    for (std::size_t j = 0; j < k; ++j)
      if ((pick >> j) & 1u) {
        merged = merged | blocks[j];
        total += game(blocks[j]);
      }
    if (!geq(total, game(merged), tol)) return false;
  }
  return true;
}

/// w(P) = sum of block values.
template <Scalar T>
T partition_worth(const Game<T>& game, const Partition& p) {
  T total(0);
  for (Coalition b : p.blocks()) total += game(b);
  return total;
}

/// Fusion resistance as "no strict coarsening has a larger total worth".
template <Scalar T>
bool fusion_resistant_by_total(const Game<T>& game, const Partition& p) {
  const T own = partition_worth(game, p);
  for (const auto& coarser : fusion_neighborhood(p))
    if (!geq(own, partition_worth(game, coarser), game.tolerance())) return false;
  return true;
}

/// Membership of f in the strong or weak fractional core of the whole game.
template <Scalar T>
bool core_contains(const Game<T>& game, std::span<const T> f, Strength kind) {
  const Partition grand = Partition::grand(game.size());
  if (!solution_feasible(game, grand, f)) return false;
  if (game.size() == 1) return true;
  const double tol = game.tolerance();
  const auto sums = detail::subset_sums(f);
  const Coalition everyone = game.grand();
  const T& vn = game(everyone);
  const std::size_t slots = std::size_t{1} << game.size();
  if (kind == Strength::Strong) {
    for (std::size_t m = 1; m + 1 < slots; ++m) {
      Coalition c(static_cast<Coalition::Mask>(m));
      if (!geq(T(vn * sums[m]), game(c), tol)) return false;
    }
    return true;
  }
  // Weak: f fails iff N splits into >= 2 coalitions that all block.
  std::vector<char> blocking(slots, 0);
  for (std::size_t m = 1; m + 1 < slots; ++m)
    blocking[m] = geq(T(vn * sums[m]), game(Coalition(static_cast<Coalition::Mask>(m))), tol) ? 0 : 1;
  std::vector<char> coverable(slots, 0);  // mask is a disjoint union of blocking coalitions
  coverable[0] = 1;
  for (std::size_t m = 1; m < slots; ++m) {
    const std::size_t low = m & (~m + 1);
    const std::size_t rest = m ^ low;
    for (std::size_t s = rest;; s = (s - 1) & rest) {
      const std::size_t part = s | low;
      if (blocking[part] && coverable[m ^ part]) {
        coverable[m] = 1;
        break;
      }
      if (s == 0) break;
    }
  }
  return !coverable[slots - 1];
}

/// ∂(C, v|C) as a linear system over the members of `c` (local indices).
template <Scalar T>
LinearSystem<T> boundary_system(const Game<T>& game, Coalition c) {
  LinearSystem<T> sys;
  sys.dim = c.size();
  sys.tolerance = game.tolerance();
  sys.blocks = {Coalition::grand(sys.dim)};
  for (int i : c.members())
    sys.lower.push_back(c.size() == 1 ? T(1) : T(game(Coalition::singleton(i)) / game(c)));
  return sys;
}

/// Strong-core system: ∂(N, v) plus v(N) f(C) >= v(C) for every C ≠ N (singletons kept).
template <Scalar T>
LinearSystem<T> strong_core_system(const Game<T>& game) {
  auto sys = boundary_system(game, game.grand());
  const std::size_t slots = std::size_t{1} << game.size();
  for (std::size_t m = 1; m + 1 < slots; ++m) {
    Coalition c(static_cast<Coalition::Mask>(m));
    sys.halfspaces.push_back({c, game(game.grand()), game(c)});
  }
  return sys;
}

template <Scalar T>
struct CoreRegion {
  RegionStatus status = RegionStatus::Empty;
  std::optional<std::vector<T>> witness;
  /// Max-slack value of the witness when it comes from a polyhedral piece.
  std::optional<T> slack;
  std::string description;
};

namespace detail {

template <Scalar T>
std::optional<std::vector<T>> sample_boundary_point(const Game<T>& game, std::mt19937_64& rng) {
  const int n = game.size();
  if (!boundary_nonempty(game, game.grand())) return std::nullopt;
  const T& vn = game(game.grand());
  std::vector<T> lb;
  T rest(1);
  for (int i = 0; i < n; ++i) {
    lb.push_back(game(Coalition::singleton(i)) / vn);
    rest -= lb.back();
  }
  // Uniform composition of a fixed integer budget into n parts.
  constexpr int budget = 240;
  std::uniform_int_distribution<int> cut(0, budget);
  std::vector<int> cuts{0, budget};
  for (int i = 0; i < n - 1; ++i) cuts.push_back(cut(rng));
  std::sort(cuts.begin(), cuts.end());
  std::vector<T> f;
  for (int i = 0; i < n; ++i) {
    T part(cuts[static_cast<std::size_t>(i) + 1] - cuts[static_cast<std::size_t>(i)]);
    f.push_back(lb[static_cast<std::size_t>(i)] + rest * part / T(budget));
  }
  return f;
}

template <Scalar T>
class WeakCoreSearch {
 public:
  explicit WeakCoreSearch(const Game<T>& game) : game_(game) {
    const int n = game.size();
    for (const auto& p : enumerate_partitions(n)) {
      if (p.size() < 2) continue;
      bool has_singleton = std::any_of(p.blocks().begin(), p.blocks().end(),
                                       [](Coalition b) { return b.size() == 1; });
      // Singleton constraints are individual rationality, already part of ∂.
      if (!has_singleton) targets_.push_back(p.blocks());
    }
  }

  std::optional<SlackPoint<T>> run() {
    std::uint64_t chosen = 0;
    return dfs(chosen);
  }

 private:
  LinearSystem<T> system(std::uint64_t chosen) const {
    auto sys = boundary_system(game_, game_.grand());
    for (std::uint64_t bits = chosen; bits != 0; bits &= bits - 1) {
      Coalition c(static_cast<Coalition::Mask>(std::countr_zero(bits)));
      sys.halfspaces.push_back({c, game_(game_.grand()), game_(c)});
    }
    return sys;
  }

  static bool hit(const std::vector<Coalition>& target, std::uint64_t chosen) {
    return std::any_of(target.begin(), target.end(),
                       [&](Coalition c) { return (chosen >> c.bits()) & 1u; });
  }

  std::optional<SlackPoint<T>> dfs(std::uint64_t chosen) {
    auto open = std::find_if(targets_.begin(), targets_.end(),
                             [&](const auto& t) { return !hit(t, chosen); });
    if (open == targets_.end()) return try_max_slack_point(system(chosen));
    for (Coalition c : *open) {
      const std::uint64_t next = chosen | (std::uint64_t{1} << c.bits());
      if (!visited_.insert(next).second) continue;
      if (!find_point(system(next))) continue;
      if (auto found = dfs(next)) return found;
    }
    return std::nullopt;
  }

  const Game<T>& game_;
  std::vector<std::vector<Coalition>> targets_;
  std::unordered_set<std::uint64_t> visited_;
};

}  // namespace detail

/// Nonemptiness of the strong or weak core of the whole game, with a witness.
template <Scalar T>
CoreRegion<T> core_region(const Game<T>& game, Strength kind, const StabilityOptions& opts = {}) {
  CoreRegion<T> region;
  const int n = game.size();
  if (n == 1) {
    region.status = RegionStatus::Nonempty;
    region.witness = std::vector<T>{T(1)};
    region.description = "single player";
    return region;
  }
  if (!boundary_nonempty(game, game.grand())) {
    region.description = "no individually rational efficient allocation";
    return region;
  }
  if (kind == Strength::Strong) {
    if (auto pt = try_max_slack_point(strong_core_system(game))) {
      region.status = RegionStatus::Nonempty;
      region.witness = std::move(pt->point);
      region.slack = std::move(pt->slack);
      region.description = "max-slack point of the strong-core polytope";
    } else {
      region.description = "strong-core system infeasible";
    }
    return region;
  }
  const int cap = std::min(opts.max_exact_weak_core_n, kWeakCoreHardCap);
  if (n <= cap) {
    detail::WeakCoreSearch<T> search(game);
    if (auto pt = search.run()) {
      region.status = RegionStatus::Nonempty;
      region.witness = std::move(pt->point);
      region.slack = std::move(pt->slack);
      region.description = "max-slack point of a satisfying polyhedral piece";
    } else {
      region.description = "exhaustive search: no polyhedral piece is feasible";
    }
    return region;
  }
  // Beyond the exact cap: strong-core witness first, then random points of ∂.
  if (auto pt = try_max_slack_point(strong_core_system(game))) {
    region.status = RegionStatus::Nonempty;
    region.witness = std::move(pt->point);
    region.description = "strong-core point (strong core is inside the weak core)";
    return region;
  }
  std::mt19937_64 rng(opts.seed);
  for (int k = 0; k < opts.sampled_points; ++k) {
    auto f = detail::sample_boundary_point(game, rng);
    if (f && core_contains(game, std::span<const T>(*f), Strength::Weak)) {
      region.status = RegionStatus::Nonempty;
      region.witness = std::move(f);
      region.description = "sampled point";
      return region;
    }
  }
  region.status = RegionStatus::Unknown;
  region.description = "sampled search above the exact cap found no member";
  return region;
}

template <Scalar T>
struct PatchedCore {
  RegionStatus status = RegionStatus::Nonempty;
  /// Full-length allocation concatenating the block witnesses.
  std::optional<std::vector<T>> witness;
};

/// Product of the block-level cores of the subgames on the blocks of `p`.
template <Scalar T>
PatchedCore<T> patched_core(const Game<T>& game, const Partition& p, Strength kind,
                            const StabilityOptions& opts = {}) {
  if (p.players() != game.size()) throw InvalidPartition("partition over a different player set");
  PatchedCore<T> out;
  std::vector<T> f(static_cast<std::size_t>(game.size()), T(0));
  for (Coalition block : p.blocks()) {
    if (block.size() == 1) {
      f[static_cast<std::size_t>(block.lowest())] = T(1);
      continue;
    }
    auto region = core_region(subgame(game, block), kind, opts);
    if (region.status == RegionStatus::Empty) {
      out.status = RegionStatus::Empty;
      return out;
    }
    if (region.status == RegionStatus::Unknown) {
      out.status = RegionStatus::Unknown;
      continue;
    }
    std::size_t k = 0;
    for (int i : block.members()) f[static_cast<std::size_t>(i)] = (*region.witness)[k++];
  }
  if (out.status == RegionStatus::Nonempty) out.witness = std::move(f);
  return out;
}

template <Scalar T>
struct PartitionStatus {
  Partition partition;
  bool fusion_resistant = false;
  PatchedCore<T> strong;
  PatchedCore<T> weak;
};

template <Scalar T>
struct StableEntry {
  Partition partition;
  std::vector<T> witness;
};

/// Per-partition classification plus the stable sets S+ and S-.
template <Scalar T>
struct StabilityReport {
  std::vector<PartitionStatus<T>> partitions;  // restricted-growth order
  std::vector<StableEntry<T>> strong_stable;   // P in P^{i+} ∩ P^u
  std::vector<StableEntry<T>> weak_stable;     // P in P^{i-} ∩ P^u
  /// Fusion-resistant partitions whose weak patched core could not be decided.
  std::vector<Partition> weak_unknown;

  std::size_t count_fusion_resistant() const {
    return static_cast<std::size_t>(std::count_if(partitions.begin(), partitions.end(),
                                                  [](const auto& s) { return s.fusion_resistant; }));
  }
  std::size_t count_patched(Strength kind) const {
    return static_cast<std::size_t>(std::count_if(partitions.begin(), partitions.end(), [&](const auto& s) {
      return (kind == Strength::Strong ? s.strong : s.weak).status == RegionStatus::Nonempty;
    }));
  }
  std::size_t count_patched_unknown() const {
    return static_cast<std::size_t>(std::count_if(partitions.begin(), partitions.end(), [](const auto& s) {
      return s.weak.status == RegionStatus::Unknown;
    }));
  }
};

template <Scalar T>
StabilityReport<T> stable_sets(const Game<T>& game, const StabilityOptions& opts = {}) {
  StabilityReport<T> report;
  for (auto& p : enumerate_partitions(game.size())) {
    PartitionStatus<T> st{p, fusion_resistant(game, p), patched_core(game, p, Strength::Strong, opts),
                          patched_core(game, p, Strength::Weak, opts)};
    if (st.fusion_resistant) {
      if (st.strong.witness) report.strong_stable.push_back({p, *st.strong.witness});
      if (st.weak.witness) report.weak_stable.push_back({p, *st.weak.witness});
      if (st.weak.status == RegionStatus::Unknown) report.weak_unknown.push_back(p);
    }
    report.partitions.push_back(std::move(st));
  }
  return report;
}

/// Feasible, fission resistant of the given strength, and fusion resistant.
template <Scalar T>
bool is_stable(const Game<T>& game, const Partition& p, std::span<const T> f, Strength kind) {
  if (!solution_feasible(game, p, f)) return false;
  return fission_resistant(game, p, f, kind) && fusion_resistant(game, p);
}

template <Scalar T>
bool is_stable(const Game<T>& game, const Solution<T>& sol, Strength kind) {
  return is_stable(game, sol.partition, std::span<const T>(sol.allocation), kind);
}

/// Fewest blocks among S- partitions, ties broken by canonical text.
template <Scalar T>
std::optional<Partition> most_consolidated_stable(const Game<T>& game, const StabilityReport<T>& report) {
  std::optional<Partition> best;
  for (const auto& e : report.weak_stable) {
    if (!best || e.partition.size() < best->size() ||
        (e.partition.size() == best->size() && game.name(e.partition) < game.name(*best)))
      best = e.partition;
  }
  return best;
}

}  // namespace fracgame
