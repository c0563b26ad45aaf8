#pragma once

// Seeded generators for games and feasible allocations.

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "coalition.hpp"
#include "game.hpp"
#include "partition.hpp"
#include "scalar.hpp"

namespace fracgame {

/// Random valid game: singleton values in {0,...,4} (zero about one time in five),
/// larger coalitions uniform on {1/2, 1, ..., 3|C|}.
template <Scalar T>
Game<T> random_game(std::mt19937_64& rng, int n, double tolerance = kDefaultTolerance) {
  std::uniform_int_distribution<int> singleton(0, 4);
  std::bernoulli_distribution zero(0.2);
  return Game<T>::from_function(
      n,
      [&](Coalition c) {
        if (c.size() == 1) return zero(rng) ? T(0) : T(singleton(rng));
        std::uniform_int_distribution<int> halves(1, 6 * c.size());
        return T(halves(rng)) / T(2);
      },
      tolerance);
}

/// Uniform-ish exact point of ∂(C, v|C): lower bounds plus a random integer
/// composition of the remaining mass. nullopt when ∂ is empty.
template <Scalar T>
std::optional<std::vector<T>> sample_block_point(const Game<T>& game, Coalition c, std::mt19937_64& rng,
                                                 int budget = 240) {
  const auto members = c.members();
  if (members.size() == 1) return std::vector<T>{T(1)};
  if (!boundary_nonempty(game, c)) return std::nullopt;
  std::vector<T> lb;
  T rest(1);
  for (int i : members) {
    lb.push_back(game(Coalition::singleton(i)) / game(c));
    rest -= lb.back();
  }
  if (rest < T(0)) rest = T(0);
  std::uniform_int_distribution<int> cut(0, budget);
  std::vector<int> cuts{0, budget};
  for (std::size_t i = 0; i + 1 < members.size(); ++i) cuts.push_back(cut(rng));
  std::sort(cuts.begin(), cuts.end());
  std::vector<T> f;
  for (std::size_t i = 0; i < members.size(); ++i) f.push_back(lb[i] + rest * T(cuts[i + 1] - cuts[i]) / T(budget));
  return f;
}

/// Random member of F(N, v, P), or nullopt when some block has an empty ∂.
template <Scalar T>
std::optional<std::vector<T>> sample_feasible_allocation(const Game<T>& game, const Partition& p,
                                                         std::mt19937_64& rng) {
  std::vector<T> f(static_cast<std::size_t>(game.size()), T(0));
  for (Coalition block : p.blocks()) {
    auto part = sample_block_point(game, block, rng);
    if (!part) return std::nullopt;
    std::size_t k = 0;
    for (int i : block.members()) f[static_cast<std::size_t>(i)] = (*part)[k++];
  }
  return f;
}

}  // namespace fracgame
