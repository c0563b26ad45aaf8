#pragma once

// Set partitions of the player set and their refinement/coarsening neighborhoods.

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coalition.hpp"
#include "errors.hpp"

namespace fracgame {

/// Largest player count for which full partition enumeration is allowed (Bell(12) = 4213597).
inline constexpr int kMaxEnumerationPlayers = 12;

/// Disjoint blocks covering {0,...,n-1}, kept sorted by smallest member.
class Partition {
 public:
  Partition() = default;

  Partition(int n, std::vector<Coalition> blocks) : n_(n), blocks_(std::move(blocks)) {
    if (n < 1 || n > kMaxPlayers) throw InvalidPartition("player count out of range");
    Coalition seen;
    for (Coalition b : blocks_) {
      if (b.empty()) throw InvalidPartition("empty block");
      if (b.intersects(seen)) throw InvalidPartition("overlapping blocks");
      seen = seen | b;
    }
    if (seen != Coalition::grand(n)) throw InvalidPartition("blocks do not cover the player set");
    std::sort(blocks_.begin(), blocks_.end(),
              [](Coalition a, Coalition b) { return a.lowest() < b.lowest(); });
  }

  static Partition singletons(int n) {
    std::vector<Coalition> blocks;
    for (int i = 0; i < n; ++i) blocks.push_back(Coalition::singleton(i));
    return Partition(n, std::move(blocks));
  }

  static Partition grand(int n) { return Partition(n, {Coalition::grand(n)}); }

  /// Builds the partition encoded by a restricted-growth string.
  static Partition from_rgs(const std::vector<int>& rgs) {
    const int n = static_cast<int>(rgs.size());
    std::vector<Coalition> blocks;
    for (int i = 0; i < n; ++i) {
      auto b = static_cast<std::size_t>(rgs[static_cast<std::size_t>(i)]);
      if (b >= blocks.size()) blocks.resize(b + 1);
      blocks[b] = blocks[b] | Coalition::singleton(i);
    }
    return Partition(n, std::move(blocks));
  }

  int players() const { return n_; }
  const std::vector<Coalition>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }

  Coalition block_of(int i) const {
    for (Coalition b : blocks_)
      if (b.contains(i)) return b;
    throw InvalidPartition("player not covered");
  }

  bool has_block(Coalition c) const {
    return std::find(blocks_.begin(), blocks_.end(), c) != blocks_.end();
  }

  /// Blocks joined by '|', e.g. "a|b,c".
  std::string to_string(const std::vector<std::string>& names) const {
    std::string out;
    for (Coalition b : blocks_) {
      if (!out.empty()) out += '|';
      out += coalition_name(b, names);
    }
    return out;
  }

  bool operator==(const Partition&) const = default;
  auto operator<=>(const Partition& o) const {
    if (auto c = n_ <=> o.n_; c != 0) return c;
    return blocks_ <=> o.blocks_;
  }

 private:
  int n_ = 0;
  std::vector<Coalition> blocks_;
};

/// Inverse of Partition::to_string.
inline Partition parse_partition(std::string_view text, const std::vector<std::string>& names) {
  std::vector<Coalition> blocks;
  std::size_t start = 0;
  auto index_of = [&](std::string_view name) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw ParseError("unknown player '" + std::string(name) + "'");
    return static_cast<int>(it - names.begin());
  };
  while (start <= text.size()) {
    auto bar = text.find('|', start);
    auto block_text = text.substr(start, bar == std::string_view::npos ? std::string_view::npos
                                                                       : bar - start);
    Coalition block;
    std::size_t p = 0;
    while (p <= block_text.size()) {
      auto comma = block_text.find(',', p);
      auto name = block_text.substr(p, comma == std::string_view::npos ? std::string_view::npos
                                                                       : comma - p);
      block = block | Coalition::singleton(index_of(name));
      if (comma == std::string_view::npos) break;
      p = comma + 1;
    }
    blocks.push_back(block);
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return Partition(static_cast<int>(names.size()), std::move(blocks));
}

/// Streams the partitions of {0,...,n-1} in restricted-growth-string order.
class PartitionEnumerator {
 public:
  explicit PartitionEnumerator(int n, int cap = kMaxEnumerationPlayers) : n_(n) {
    if (n < 1) throw InvalidPartition("need at least one player");
    if (n > cap)
      throw CapExceeded("partition enumeration capped at n=" + std::to_string(cap));
    rgs_.assign(static_cast<std::size_t>(n), 0);
    prefix_max_.assign(static_cast<std::size_t>(n), 0);
  }

  std::optional<Partition> next() {
    if (done_) return std::nullopt;
    if (!started_) {
      started_ = true;
      return Partition::from_rgs(rgs_);
    }
    // Rightmost position that can still grow: rgs[i] <= max(rgs[0..i-1]).
    for (int i = n_ - 1; i >= 1; --i) {
      auto ui = static_cast<std::size_t>(i);
      if (rgs_[ui] <= prefix_max_[ui - 1]) {
        ++rgs_[ui];
        prefix_max_[ui] = std::max(prefix_max_[ui - 1], rgs_[ui]);
        for (std::size_t j = ui + 1; j < rgs_.size(); ++j) {
          rgs_[j] = 0;
          prefix_max_[j] = prefix_max_[ui];
        }
        return Partition::from_rgs(rgs_);
      }
    }
    done_ = true;
    return std::nullopt;
  }

 private:
  int n_;
  std::vector<int> rgs_;
  std::vector<int> prefix_max_;
  bool started_ = false;
  bool done_ = false;
};

inline std::vector<Partition> enumerate_partitions(int n, int cap = kMaxEnumerationPlayers) {
  std::vector<Partition> out;
  PartitionEnumerator it(n, cap);
  while (auto p = it.next()) out.push_back(std::move(*p));
  return out;
}

/// All set partitions of the members of `c`, each as a list of blocks, in RGS order.
inline std::vector<std::vector<Coalition>> partitions_of(Coalition c) {
  const auto members = c.members();
  std::vector<std::vector<Coalition>> out;
  if (members.empty()) return out;
  PartitionEnumerator it(static_cast<int>(members.size()), kMaxPlayers);
  while (auto p = it.next()) {
    std::vector<Coalition> blocks;
    for (Coalition local : p->blocks()) {
      Coalition global;
      for (int j : local.members()) global = global | Coalition::singleton(members[static_cast<std::size_t>(j)]);
      blocks.push_back(global);
    }
    out.push_back(std::move(blocks));
  }
  return out;
}

/// Strict refinements of `p`: every block of a member lies inside a block of `p`.
inline std::vector<Partition> fission_neighborhood(const Partition& p) {
  std::vector<std::vector<std::vector<Coalition>>> per_block;
  for (Coalition b : p.blocks()) per_block.push_back(partitions_of(b));

  std::vector<Partition> out;
  std::vector<std::size_t> choice(per_block.size(), 0);
  while (true) {
    std::vector<Coalition> blocks;
    for (std::size_t k = 0; k < per_block.size(); ++k) {
      const auto& split = per_block[k][choice[k]];
      blocks.insert(blocks.end(), split.begin(), split.end());
    }
    Partition candidate(p.players(), std::move(blocks));
    if (candidate != p) out.push_back(std::move(candidate));

    std::size_t k = 0;
    while (k < choice.size() && ++choice[k] == per_block[k].size()) choice[k++] = 0;
    if (k == choice.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Strict coarsenings of `p`: every block of a member is a union of blocks of `p`.
inline std::vector<Partition> fusion_neighborhood(const Partition& p) {
  std::vector<Partition> out;
  const int blocks = static_cast<int>(p.size());
  PartitionEnumerator it(blocks, kMaxPlayers);
  while (auto grouping = it.next()) {
    if (static_cast<int>(grouping->size()) == blocks) continue;
    std::vector<Coalition> merged;
    for (Coalition group : grouping->blocks()) {
      Coalition u;
      for (int j : group.members()) u = u | p.blocks()[static_cast<std::size_t>(j)];
      merged.push_back(u);
    }
    out.emplace_back(p.players(), std::move(merged));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// True iff `fine` is a strict refinement of `coarse`.
inline bool is_strict_refinement(const Partition& fine, const Partition& coarse) {
  if (fine.players() != coarse.players())
    throw DimensionMismatch("partitions over different player counts");
  if (fine == coarse) return false;
  return std::all_of(fine.blocks().begin(), fine.blocks().end(), [&](Coalition b) {
    return b.subset_of(coarse.block_of(b.lowest()));
  });
}

}  // namespace fracgame
