#pragma once

// Strictly positive coalitional games in fractional form.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coalition.hpp"
#include "errors.hpp"
#include "partition.hpp"
#include "scalar.hpp"

namespace fracgame {

enum class IssueKind { MissingCoalition, NonPositiveValue, NegativeSingleton };

inline const char* to_string(IssueKind k) {
  switch (k) {
    case IssueKind::MissingCoalition: return "MissingCoalition";
    case IssueKind::NonPositiveValue: return "NonPositiveValue";
    case IssueKind::NegativeSingleton: return "NegativeSingleton";
  }
  return "?";
}

struct ValidationIssue {
  Coalition coalition;
  IssueKind kind;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

/// Unchecked value table as read from input; absent entries are nullopt.
template <Scalar T>
struct GameCandidate {
  std::vector<std::string> players;
  std::vector<std::optional<T>> values;  // indexed by coalition mask, slot 0 unused
};

/// "a", "b", ... in index order.
inline std::vector<std::string> default_player_names(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  return names;
}

template <Scalar T>
ValidationReport validate_game(const GameCandidate<T>& raw) {
  const int n = static_cast<int>(raw.players.size());
  if (n < 1 || n > kMaxPlayers) throw InvalidGame("player count out of range");
  ValidationReport report;
  const std::size_t slots = std::size_t{1} << n;
  for (std::size_t m = 1; m < slots; ++m) {
    Coalition c(static_cast<Coalition::Mask>(m));
    if (m >= raw.values.size() || !raw.values[m]) {
      report.issues.push_back({c, IssueKind::MissingCoalition});
      continue;
    }
    const T& v = *raw.values[m];
    if (c.size() >= 2 && !(v > T(0))) report.issues.push_back({c, IssueKind::NonPositiveValue});
    if (c.size() == 1 && v < T(0)) report.issues.push_back({c, IssueKind::NegativeSingleton});
  }
  return report;
}

template <Scalar T>
std::string describe(const ValidationReport& report, const std::vector<std::string>& names) {
  std::string out;
  for (const auto& issue : report.issues) {
    if (!out.empty()) out += "; ";
    out += std::string(to_string(issue.kind)) + " at {" + coalition_name(issue.coalition, names) + "}";
  }
  return out;
}

/// Immutable game (N, v): v(C) > 0 for |C| >= 2 and v({i}) >= 0.
template <Scalar T>
class Game {
 public:
  using scalar_type = T;
  static constexpr bool exact = is_exact_v<T>;

  Game(std::vector<std::string> players, std::vector<T> values, double tolerance = kDefaultTolerance)
      : Game(make_candidate(std::move(players), std::move(values)), tolerance) {}

  explicit Game(const GameCandidate<T>& raw, double tolerance = kDefaultTolerance)
      : players_(raw.players), values_(static_cast<int>(raw.players.size())), tolerance_(tolerance) {
    auto report = validate_game(raw);
    if (!report.ok()) throw InvalidGame("invalid game: " + describe<T>(report, players_));
    for (std::size_t m = 1; m < raw.values.size(); ++m)
      values_[Coalition(static_cast<Coalition::Mask>(m))] = *raw.values[m];
  }

  /// Builds v(C) = fn(C) over all nonempty coalitions.
  template <class Fn>
  static Game from_function(int n, Fn&& fn, double tolerance = kDefaultTolerance,
                            std::vector<std::string> names = {}) {
    if (names.empty()) names = default_player_names(n);
    std::vector<T> values(std::size_t{1} << n, T(0));
    for (std::size_t m = 1; m < values.size(); ++m) values[m] = fn(Coalition(static_cast<Coalition::Mask>(m)));
    return Game(std::move(names), std::move(values), tolerance);
  }

  int size() const { return static_cast<int>(players_.size()); }
  Coalition grand() const { return Coalition::grand(size()); }
  const T& value(Coalition c) const { return values_[c]; }
  const T& operator()(Coalition c) const { return values_[c]; }
  const std::vector<std::string>& players() const { return players_; }
  double tolerance() const { return tolerance_; }
  std::string name(Coalition c) const { return coalition_name(c, players_); }
  std::string name(const Partition& p) const { return p.to_string(players_); }
  const std::vector<T>& table() const { return values_.raw(); }

 private:
  static GameCandidate<T> make_candidate(std::vector<std::string> players, std::vector<T> values) {
    GameCandidate<T> raw;
    raw.players = std::move(players);
    raw.values.assign(values.size(), std::nullopt);
    for (std::size_t m = 1; m < values.size(); ++m) raw.values[m] = std::move(values[m]);
    return raw;
  }

  std::vector<std::string> players_;
  CoalitionTable<T> values_;
  double tolerance_;
};

template <Scalar T>
using FractionalAllocation = std::vector<T>;

template <Scalar T>
struct Solution {
  Partition partition;
  FractionalAllocation<T> allocation;
};

/// f(C) = sum of shares over the members of `c`.
template <Scalar T>
T share_of(std::span<const T> f, Coalition c) {
  T sum(0);
  for (int i : c.members()) sum += f[static_cast<std::size_t>(i)];
  return sum;
}

/// Membership of the block sub-vector `f_c` (ordered by ascending member) in ∂(C, v|C).
template <Scalar T>
bool boundary_contains(const Game<T>& game, Coalition c, std::span<const T> f_c) {
  if (f_c.size() != static_cast<std::size_t>(c.size()))
    throw DimensionMismatch("share vector length differs from coalition size");
  const double tol = game.tolerance();
  if (c.size() == 1) return approx_equal(f_c[0], T(1), tol);
  T sum(0);
  std::size_t k = 0;
  const T& total = game(c);
  for (int i : c.members()) {
    const T& fi = f_c[k++];
    if (!geq(T(fi * total), game(Coalition::singleton(i)), tol)) return false;
    if (!leq(fi, T(1), tol)) return false;
    sum += fi;
  }
  return approx_equal(sum, T(1), tol);
}

/// Restriction of a full-length vector to the members of `c`.
template <Scalar T>
std::vector<T> restrict_to(std::span<const T> f, Coalition c) {
  std::vector<T> out;
  out.reserve(static_cast<std::size_t>(c.size()));
  for (int i : c.members()) out.push_back(f[static_cast<std::size_t>(i)]);
  return out;
}

/// sum_i v({i}) <= v(N) (or n == 1): the analytic nonemptiness criterion for ∂(N, v).
template <Scalar T>
bool boundary_nonempty(const Game<T>& game, Coalition c) {
  if (c.size() == 1) return true;
  T sum(0);
  for (int i : c.members()) sum += game(Coalition::singleton(i));
  return leq(sum, game(c), game.tolerance());
}

template <Scalar T>
bool solution_feasible(const Game<T>& game, const Partition& p, std::span<const T> f) {
  if (p.players() != game.size()) throw InvalidPartition("partition over a different player set");
  if (f.size() != static_cast<std::size_t>(game.size()))
    throw DimensionMismatch("allocation length differs from player count");
  for (Coalition b : p.blocks()) {
    auto sub = restrict_to(f, b);
    if (!boundary_contains(game, b, std::span<const T>(sub))) return false;
  }
  return true;
}

template <Scalar T>
bool solution_feasible(const Game<T>& game, const Solution<T>& sol) {
  return solution_feasible(game, sol.partition, std::span<const T>(sol.allocation));
}

/// (C, v restricted to subsets of C), players renumbered by ascending original index.
template <Scalar T>
Game<T> subgame(const Game<T>& game, Coalition c) {
  if (c.empty() || !c.subset_of(game.grand())) throw InvalidGame("subgame coalition out of range");
  const auto members = c.members();
  const int k = static_cast<int>(members.size());
  std::vector<std::string> names;
  for (int i : members) names.push_back(game.players()[static_cast<std::size_t>(i)]);
  return Game<T>::from_function(
      k,
      [&](Coalition local) {
        Coalition global;
        for (int j : local.members()) global = global | Coalition::singleton(members[static_cast<std::size_t>(j)]);
        return game(global);
      },
      game.tolerance(), std::move(names));
}

/// f(i) = x(i) / v(N); a one-player game with v(N) = 0 maps to f = (1).
template <Scalar T>
FractionalAllocation<T> to_fractional(const Game<T>& game, std::span<const T> absolute) {
  if (absolute.size() != static_cast<std::size_t>(game.size()))
    throw DimensionMismatch("allocation length differs from player count");
  const T& total = game(game.grand());
  if (is_zero(total)) return FractionalAllocation<T>(absolute.size(), T(1));
  FractionalAllocation<T> f;
  for (const T& x : absolute) f.push_back(x / total);
  return f;
}

template <Scalar T>
std::vector<T> to_absolute(const Game<T>& game, std::span<const T> f) {
  if (f.size() != static_cast<std::size_t>(game.size()))
    throw DimensionMismatch("allocation length differs from player count");
  std::vector<T> x;
  for (const T& fi : f) x.push_back(fi * game(game.grand()));
  return x;
}

}  // namespace fracgame
