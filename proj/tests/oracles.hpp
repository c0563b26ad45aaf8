#pragma once

// Brute-force reference implementations used only by the tests. They avoid the
// library's enumerators, DP and LP so that agreement means something.

#include <fracgame/fracgame.hpp>

#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

using fracgame::Coalition;
using fracgame::Game;
using fracgame::Rational;

/// Bell numbers through the Bell-triangle recurrence.
inline std::vector<std::uint64_t> bell_numbers(int up_to) {
  std::vector<std::uint64_t> bell{1};
  std::vector<std::uint64_t> row{1};
  for (int k = 1; k <= up_to; ++k) {
    std::vector<std::uint64_t> next{row.back()};
    for (std::uint64_t x : row) next.push_back(next.back() + x);
    row = next;
    bell.push_back(row.front());
  }
  return bell;
}

/// All set partitions of the given members, as lists of bit masks, by inserting
/// each element into an existing block or a fresh one.
inline std::vector<std::vector<std::uint32_t>> set_partitions(const std::vector<int>& members) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> blocks;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == members.size()) {
      out.push_back(blocks);
      return;
    }
    const std::uint32_t bit = 1u << members[k];
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      blocks[b] |= bit;
      rec(k + 1);
      blocks[b] &= ~bit;
    }
    blocks.push_back(bit);
    rec(k + 1);
    blocks.pop_back();
  };
  rec(0);
  return out;
}

inline std::vector<int> bits_of(std::uint32_t mask) {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i)
    if (mask >> i & 1u) out.push_back(i);
  return out;
}

template <class T>
T sum_on(const std::vector<T>& f, std::uint32_t mask) {
  T s(0);
  for (int i : bits_of(mask)) s += f[static_cast<std::size_t>(i)];
  return s;
}

/// f(i) in [v(i)/v(N), 1] and the shares sum to one.
inline bool in_boundary(const Game<Rational>& g, const std::vector<Rational>& f) {
  const std::uint32_t grand = g.grand().bits();
  if (g.size() == 1) return f[0] == 1;
  Rational total(0);
  for (int i = 0; i < g.size(); ++i) {
    const Rational& x = f[static_cast<std::size_t>(i)];
    if (x > 1 || x * g(Coalition(grand)) < g(Coalition::singleton(i))) return false;
    total += x;
  }
  return total == 1;
}

inline bool satisfied(const Game<Rational>& g, const std::vector<Rational>& f, std::uint32_t c) {
  return g(g.grand()) * sum_on(f, c) >= g(Coalition(c));
}

inline bool strong_core(const Game<Rational>& g, const std::vector<Rational>& f) {
  if (!in_boundary(g, f)) return false;
  for (std::uint32_t c = 1; c < g.grand().bits(); ++c)
    if (!satisfied(g, f, c)) return false;
  return true;
}

/// Every partition other than {N} contains a coalition whose constraint holds.
inline bool weak_core(const Game<Rational>& g, const std::vector<Rational>& f) {
  if (!in_boundary(g, f)) return false;
  std::vector<int> all(static_cast<std::size_t>(g.size()));
  for (int i = 0; i < g.size(); ++i) all[static_cast<std::size_t>(i)] = i;
  for (const auto& p : set_partitions(all)) {
    if (p.size() == 1) continue;
    bool some = false;
    for (auto c : p) some = some || satisfied(g, f, c);
    if (!some) return false;
  }
  return true;
}

/// Per-block fission check written straight from the definitions.
inline bool fission(const Game<Rational>& g, const std::vector<std::uint32_t>& blocks, const std::vector<Rational>& f,
                    bool strong) {
  for (auto c : blocks) {
    const auto members = bits_of(c);
    if (members.size() < 2) continue;
    auto stays = [&](std::uint32_t part) { return g(Coalition(c)) * sum_on(f, part) >= g(Coalition(part)); };
    if (strong) {
      for (std::uint32_t s = 1; s < (1u << 31); ++s) {
        if (s > c) break;
        if ((s & ~c) != 0 || s == c) continue;
        if (!stays(s)) return false;
      }
    } else {
      for (const auto& split : set_partitions(members)) {
        if (split.size() < 2) continue;
        bool some = false;
        for (auto part : split) some = some || stays(part);
        if (!some) return false;
      }
    }
  }
  return true;
}

/// Every union of two or more blocks is worth no more than its parts.
template <class T>
bool fusion(const Game<T>& g, const std::vector<std::uint32_t>& blocks) {
  const std::size_t k = blocks.size();
  for (std::uint32_t pick = 1; pick < (1u << k); ++pick) {
    if (std::popcount(pick) < 2) continue;
    std::uint32_t merged = 0;
    T parts(0);
    for (std::size_t b = 0; b < k; ++b)
      if (pick >> b & 1u) {
        merged |= blocks[b];
        parts += g(Coalition(blocks[b]));
      }
    if (!fracgame::geq(parts, g(Coalition(merged)), g.tolerance())) return false;
  }
  return true;
}

inline std::vector<std::uint32_t> masks(const fracgame::Partition& p) {
  std::vector<std::uint32_t> out;
  for (auto b : p.blocks()) out.push_back(b.bits());
  return out;
}

/// Extended-real ratio with 0/0 = 1 and a/0 = +inf; returns (is_infinite, value).
inline std::pair<bool, Rational> ratio(const Rational& a, const Rational& b) {
  if (b == 0) return a == 0 ? std::pair{false, Rational(1)} : std::pair{true, Rational(0)};
  return {false, a / b};
}

inline bool ratio_leq(const std::pair<bool, Rational>& x, const std::pair<bool, Rational>& y) {
  if (y.first) return true;
  if (x.first) return false;
  return x.second <= y.second;
}

/// The order in its ratio form, v1(C2)/v1(C1) <= v2(C2)/v2(C1) for C1 ⊆ C2.
inline bool cp_ratio_form(const Game<Rational>& v1, const Game<Rational>& v2) {
  const std::uint32_t grand = v1.grand().bits();
  for (std::uint32_t c2 = 1; c2 <= grand; ++c2)
    for (std::uint32_t c1 = 1; c1 <= c2; ++c1) {
      if ((c1 & ~c2) != 0) continue;
      if (!ratio_leq(ratio(v1(Coalition(c2)), v1(Coalition(c1))), ratio(v2(Coalition(c2)), v2(Coalition(c1)))))
        return false;
    }
  return true;
}

/// Points of the simplex with coordinates in steps of 1/den.
inline std::vector<std::vector<Rational>> simplex_grid(int n, int den) {
  std::vector<std::vector<Rational>> out;
  std::vector<int> parts(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n - 1) {
      parts[static_cast<std::size_t>(i)] = left;
      std::vector<Rational> f;
      for (int x : parts) f.emplace_back(x, den);
      out.push_back(std::move(f));
      return;
    }
    for (int x = 0; x <= left; ++x) {
      parts[static_cast<std::size_t>(i)] = x;
      rec(i + 1, left - x);
    }
  };
  rec(0, den);
  return out;
}

}  // namespace oracle
