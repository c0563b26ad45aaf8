#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"

namespace fracgame {

/// Hard limit on the player count of a value table (2^16 entries).
inline constexpr int kMaxPlayers = 16;

/// Nonempty-or-empty subset of players, player i <-> bit i.
class Coalition {
 public:
  using Mask = std::uint32_t;

  constexpr Coalition() = default;
  constexpr explicit Coalition(Mask bits) : bits_(bits) {}

  static constexpr Coalition singleton(int i) { return Coalition(Mask{1} << i); }
  static constexpr Coalition grand(int n) { return Coalition((Mask{1} << n) - 1); }

  static Coalition of(std::initializer_list<int> members) {
    Mask m = 0;
    for (int i : members) m |= Mask{1} << i;
    return Coalition(m);
  }

  constexpr Mask bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int i) const { return (bits_ >> i) & 1u; }
  constexpr bool subset_of(Coalition o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool proper_subset_of(Coalition o) const { return subset_of(o) && bits_ != o.bits_; }
  constexpr bool intersects(Coalition o) const { return (bits_ & o.bits_) != 0; }
  /// Lowest member; undefined on the empty coalition.
  constexpr int lowest() const { return std::countr_zero(bits_); }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (Mask m = bits_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
    return out;
  }

  constexpr Coalition operator|(Coalition o) const { return Coalition(bits_ | o.bits_); }
  constexpr Coalition operator&(Coalition o) const { return Coalition(bits_ & o.bits_); }
  /// Set difference.
  constexpr Coalition operator-(Coalition o) const { return Coalition(bits_ & ~o.bits_); }

  constexpr auto operator<=>(const Coalition&) const = default;

 private:
  Mask bits_ = 0;
};

/// Calls `fn(sub)` for every nonempty subset of `c` (including `c`), in decreasing mask order.
template <class Fn>
void for_each_subset(Coalition c, Fn&& fn) {
  const auto full = c.bits();
  for (Coalition::Mask s = full; s != 0; s = (s - 1) & full) fn(Coalition(s));
}

/// Same as for_each_subset but skips `c` itself.
template <class Fn>
void for_each_proper_subset(Coalition c, Fn&& fn) {
  const auto full = c.bits();
  for (Coalition::Mask s = (full - 1) & full; s != 0; s = (s - 1) & full) fn(Coalition(s));
}

/// "a,c" style name; members appear in ascending index order.
inline std::string coalition_name(Coalition c, const std::vector<std::string>& names) {
  std::string out;
  for (int i : c.members()) {
    if (!out.empty()) out += ',';
    out += names.at(static_cast<std::size_t>(i));
  }
  return out;
}

/// Dense table indexed by coalition mask; slot 0 (the empty coalition) is unused.
template <class T>
class CoalitionTable {
 public:
  CoalitionTable() = default;
  explicit CoalitionTable(int n, T fill = T{}) : n_(n) {
    if (n < 1 || n > kMaxPlayers)
      throw DimensionMismatch("player count " + std::to_string(n) + " outside [1, " +
                              std::to_string(kMaxPlayers) + "]");
    data_.assign(std::size_t{1} << n, fill);
  }

  int players() const { return n_; }
  T& operator[](Coalition c) { return data_[c.bits()]; }
  const T& operator[](Coalition c) const { return data_[c.bits()]; }
  const std::vector<T>& raw() const { return data_; }

 private:
  int n_ = 0;
  std::vector<T> data_;
};

}  // namespace fracgame
