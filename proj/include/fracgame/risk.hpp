#pragma once

// Games built from random outcomes: the mean/standard-deviation scenario with
// i.i.d. inputs, and the CVaR-mixture reward over piecewise-linear quantile curves.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "centripetality.hpp"
#include "coalition.hpp"
#include "errors.hpp"
#include "game.hpp"

namespace fracgame {

// ---------------------------------------------------------------------------
// Mean / standard deviation scenario

struct MeanStdScenario {
  int n = 0;
  double mu = 1.0;     // common input mean, > 0
  double sigma = 1.0;  // common input standard deviation, > 0
  double r = 0.0;      // risk-aversion weight in [0, mu / sigma)
  /// Amplifier phi(C) > 0; coalitions not listed use `phi_default`.
  std::map<Coalition, double> phi;
  double phi_default = 1.0;
  std::vector<std::string> players;

  double amplifier(Coalition c) const {
    auto it = phi.find(c);
    return it == phi.end() ? phi_default : it->second;
  }
};

/// v(C) = phi(C) (|C| mu - r sqrt|C| sigma).
inline Game<double> build_meanstd_game(const MeanStdScenario& s, double tolerance = kDefaultTolerance) {
  if (s.n < 1 || s.n > kMaxPlayers) throw InvalidGame("player count out of range");
  if (!(s.mu > 0.0) || !(s.sigma > 0.0)) throw InvalidGame("mean and standard deviation must be positive");
  if (!(s.r >= 0.0) || !(s.r < s.mu / s.sigma))
    throw RBarOutOfRange("risk weight " + to_string(s.r) + " outside [0, mu/sigma)");
  if (!(s.phi_default > 0.0)) throw InvalidGame("amplifier must be positive");
  for (const auto& [c, value] : s.phi)
    if (!(value > 0.0)) throw InvalidGame("amplifier must be positive");
  return Game<double>::from_function(
      s.n,
      [&](Coalition c) {
        const double size = c.size();
        return s.amplifier(c) * (size * s.mu - s.r * std::sqrt(size) * s.sigma);
      },
      tolerance, s.players);
}

// ---------------------------------------------------------------------------
// Piecewise-linear curves on [0, 1]

namespace detail {

inline void check_knots(const std::vector<std::pair<double, double>>& knots, const char* what) {
  if (knots.size() < 2) throw InvalidCurve(std::string(what) + ": need at least two knots");
  if (knots.front().first != 0.0 || knots.back().first != 1.0)
    throw InvalidCurve(std::string(what) + ": knots must start at 0 and end at 1");
  for (std::size_t j = 0; j + 1 < knots.size(); ++j)
    if (!(knots[j].first < knots[j + 1].first))
      throw InvalidCurve(std::string(what) + ": knot positions must increase strictly");
  for (const auto& [a, y] : knots)
    if (!std::isfinite(y)) throw InvalidCurve(std::string(what) + ": non-finite value");
}

inline double interpolate(const std::vector<std::pair<double, double>>& knots, double x) {
  if (x <= knots.front().first) return knots.front().second;
  if (x >= knots.back().first) return knots.back().second;
  auto hi = std::upper_bound(knots.begin(), knots.end(), x,
                             [](double v, const auto& k) { return v < k.first; });
  auto lo = hi - 1;
  const double w = (x - lo->first) / (hi->first - lo->first);
  return lo->second + w * (hi->second - lo->second);
}

/// Exact integral of the piecewise-linear interpolant over [0, t].
inline double integrate_to(const std::vector<std::pair<double, double>>& knots, double t) {
  double total = 0.0;
  for (std::size_t j = 0; j + 1 < knots.size(); ++j) {
    const double a = knots[j].first;
    if (a >= t) break;
    const double b = std::min(knots[j + 1].first, t);
    total += 0.5 * (b - a) * (knots[j].second + interpolate(knots, b));
  }
  return total;
}

}  // namespace detail

/// Continuous nondecreasing quantile function k(alpha), linear between knots,
/// nonnegative at 0 and strictly positive on (0, 1].
class QuantileCurve {
 public:
  QuantileCurve() = default;
  explicit QuantileCurve(std::vector<std::pair<double, double>> knots) : knots_(std::move(knots)) {
    detail::check_knots(knots_, "quantile curve");
    for (std::size_t j = 0; j < knots_.size(); ++j) {
      if (knots_[j].second < 0.0) throw InvalidCurve("quantile curve must be nonnegative");
      if (j > 0 && !(knots_[j].second > 0.0)) throw InvalidCurve("quantile curve must be positive on (0,1]");
      if (j > 0 && knots_[j].second < knots_[j - 1].second)
        throw InvalidCurve("quantile curve must be nondecreasing");
    }
  }

  /// k(alpha) = (1 - alpha) low + alpha high, the quantile of a uniform outcome.
  static QuantileCurve uniform(double low, double high) { return QuantileCurve({{0.0, low}, {1.0, high}}); }

  /// Empirical quantiles at `knot_count` evenly spaced levels, linearly interpolated.
  static QuantileCurve from_samples(std::vector<double> samples, int knot_count = 101) {
    if (samples.empty()) throw InvalidCurve("no samples");
    if (knot_count < 2) throw InvalidCurve("need at least two knots");
    std::sort(samples.begin(), samples.end());
    std::vector<std::pair<double, double>> knots;
    const double last = static_cast<double>(samples.size() - 1);
    for (int j = 0; j < knot_count; ++j) {
      const double alpha = static_cast<double>(j) / (knot_count - 1);
      const double pos = alpha * last;
      const auto lo = static_cast<std::size_t>(std::floor(pos));
      const auto hi = std::min(lo + 1, samples.size() - 1);
      const double w = pos - static_cast<double>(lo);
      knots.emplace_back(alpha, samples[lo] + w * (samples[hi] - samples[lo]));
    }
    knots.back().first = 1.0;
    return QuantileCurve(std::move(knots));
  }

  double operator()(double alpha) const { return detail::interpolate(knots_, alpha); }
  double integral_to(double t) const { return detail::integrate_to(knots_, t); }
  const std::vector<std::pair<double, double>>& knots() const { return knots_; }

 private:
  std::vector<std::pair<double, double>> knots_;
};

inline constexpr double kDensityNormalizationTol = 1e-12;

/// Piecewise-linear probability density on [0, 1]; interior knots strictly positive,
/// endpoint values may be zero (e.g. 2 alpha).
class Density {
 public:
  Density() = default;
  explicit Density(std::vector<std::pair<double, double>> knots) : knots_(std::move(knots)) {
    detail::check_knots(knots_, "density");
    for (std::size_t j = 0; j < knots_.size(); ++j) {
      const bool endpoint = j == 0 || j + 1 == knots_.size();
      if (knots_[j].second < 0.0 || (!endpoint && !(knots_[j].second > 0.0)))
        throw InvalidDensity("density must be strictly positive inside (0,1)");
    }
    if (std::abs(detail::integrate_to(knots_, 1.0) - 1.0) > kDensityNormalizationTol)
      throw InvalidDensity("density does not integrate to one");
    if (knots_.size() == 2 && knots_[0].second == 0.0 && knots_[1].second == 0.0)
      throw InvalidDensity("density vanishes");
  }

  /// Rescales arbitrary positive knot values to unit mass.
  static Density normalized(std::vector<std::pair<double, double>> knots) {
    detail::check_knots(knots, "density");
    const double mass = detail::integrate_to(knots, 1.0);
    if (!(mass > 0.0)) throw InvalidDensity("density has no mass");
    for (auto& k : knots) k.second /= mass;
    return Density(std::move(knots));
  }

  static Density uniform() { return Density({{0.0, 1.0}, {1.0, 1.0}}); }

  /// alpha^(a-1) sampled at `knot_count` even knots, normalized; exact for a = 1, 2.
  static Density beta_like(int a, int knot_count = 201) {
    if (a < 1) throw InvalidDensity("beta exponent must be a positive integer");
    if (a <= 2) knot_count = 2;
    std::vector<std::pair<double, double>> knots;
    for (int j = 0; j < knot_count; ++j) {
      const double alpha = static_cast<double>(j) / (knot_count - 1);
      knots.emplace_back(alpha, std::pow(alpha, a - 1));
    }
    knots.back().first = 1.0;
    return normalized(std::move(knots));
  }

  double operator()(double alpha) const { return detail::interpolate(knots_, alpha); }
  const std::vector<std::pair<double, double>>& knots() const { return knots_; }

 private:
  std::vector<std::pair<double, double>> knots_;
};

/// (1/(1-alpha)) * integral of k over [0, 1-alpha], the mean of the worst (1-alpha) share.
inline double cvar(const QuantileCurve& k, double alpha) {
  if (!(alpha >= 0.0) || !(alpha < 1.0)) throw AlphaOutOfRange("CVaR level must lie in [0,1)");
  const double t = 1.0 - alpha;
  return k.integral_to(t) / t;
}

namespace detail {

/// CVaR extended continuously to alpha = 1 (value k(0)).
inline double cvar_closed(const QuantileCurve& k, double alpha) {
  const double t = 1.0 - alpha;
  if (t <= 0.0) return k(0.0);
  return k.integral_to(t) / t;
}

inline std::vector<double> merged_breaks(const std::vector<std::pair<double, double>>& a,
                                         const std::vector<std::pair<double, double>>& b, bool flip_b) {
  std::vector<double> out;
  for (const auto& k : a) out.push_back(k.first);
  for (const auto& k : b) out.push_back(flip_b ? 1.0 - k.first : k.first);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(), [](double x, double y) { return std::abs(x - y) < 1e-15; }),
            out.end());
  out.front() = 0.0;
  out.back() = 1.0;
  return out;
}

}  // namespace detail

inline constexpr double kQuadratureTol = 1e-10;

/// Integral over alpha of CVaR(k, alpha) mu(alpha); Gauss-Kronrod on each piece of the
/// common refinement, where the integrand is smooth.
inline double mixture_reward(const QuantileCurve& k, const Density& mu) {
  const auto breaks = detail::merged_breaks(mu.knots(), k.knots(), true);
  double total = 0.0;
  auto integrand = [&](double alpha) { return detail::cvar_closed(k, alpha) * mu(alpha); };
  for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
    if (breaks[j + 1] - breaks[j] <= 0.0) continue;
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, breaks[j], breaks[j + 1],
                                                                          15, kQuadratureTol);
  }
  return total;
}

/// Quantile curve per coalition.
using CurveTable = CoalitionTable<QuantileCurve>;

struct TailViolation {
  Coalition smaller;
  Coalition larger;
  double from;
  double to;
  double slope_sign;  // positive value = ratio increasing on [from, to]
};

struct TailVerdict {
  bool holds = true;
  std::vector<TailViolation> violations;
};

namespace detail {

/// Sign of (p/q)' on [a, b] for linear p, q: p' q - p q', constant per piece; evaluated
/// at both ends and the larger taken.
template <class P, class Q>
double ratio_trend(const P& p, const Q& q, double a, double b) {
  const double dp = (p(b) - p(a)) / (b - a);
  const double dq = (q(b) - q(a)) / (b - a);
  const double at_a = dp * q(a) - p(a) * dq;
  const double at_b = dp * q(b) - p(b) * dq;
  return std::max(at_a, at_b);
}

}  // namespace detail

/// k(C2, .) / k(C1, .) nonincreasing on (0, 1) for every C1 ⊆ C2: larger coalitions
/// have relatively heavier low quantiles.
inline TailVerdict check_tail_dominance(const CurveTable& curves, double tol = kDefaultTolerance) {
  TailVerdict verdict;
  const std::size_t slots = std::size_t{1} << curves.players();
  for (std::size_t m = 1; m < slots; ++m) {
    Coalition larger(static_cast<Coalition::Mask>(m));
    for_each_proper_subset(larger, [&](Coalition smaller) {
      const auto& hi = curves[larger];
      const auto& lo = curves[smaller];
      const auto breaks = detail::merged_breaks(hi.knots(), lo.knots(), false);
      for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
        const double a = breaks[j], b = breaks[j + 1];
        const double trend = detail::ratio_trend(hi, lo, a, b);
        const double scale = std::max({1.0, std::abs(hi(b) * lo(b)), std::abs(hi(a) * lo(a))});
        if (trend > tol * scale) verdict.violations.push_back({smaller, larger, a, b, trend});
      }
    });
  }
  verdict.holds = verdict.violations.empty();
  return verdict;
}

struct LrVerdict {
  bool holds = true;
  std::vector<std::pair<double, double>> violating_intervals;
};

/// mu2 / mu1 nondecreasing on (0, 1).
inline LrVerdict leq_lr(const Density& mu1, const Density& mu2, double tol = kDefaultTolerance) {
  LrVerdict verdict;
  const auto breaks = detail::merged_breaks(mu1.knots(), mu2.knots(), false);
  for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
    const double a = breaks[j], b = breaks[j + 1];
    // Nondecreasing ratio mu2/mu1 <=> (mu1/mu2)' <= 0.
    const double trend = detail::ratio_trend(mu1, mu2, a, b);
    const double scale = std::max({1.0, std::abs(mu1(b) * mu2(b)), std::abs(mu1(a) * mu2(a))});
    if (trend > tol * scale) verdict.violating_intervals.emplace_back(a, b);
  }
  verdict.holds = verdict.violating_intervals.empty();
  return verdict;
}

/// v(C) = mixture_reward(k(C), mu).
inline Game<double> build_cvar_game(const CurveTable& curves, const Density& mu,
                                    std::vector<std::string> players = {},
                                    double tolerance = kDefaultTolerance) {
  return Game<double>::from_function(
      curves.players(), [&](Coalition c) { return mixture_reward(curves[c], mu); }, tolerance,
      std::move(players));
}

/// Quantile curves of the uniform family: k(C, alpha) = (1-alpha) low(|C|) + alpha high(|C|).
template <class Low, class High>
CurveTable uniform_family(int n, Low&& low, High&& high) {
  CurveTable curves(n);
  const std::size_t slots = std::size_t{1} << n;
  for (std::size_t m = 1; m < slots; ++m) {
    Coalition c(static_cast<Coalition::Mask>(m));
    curves[c] = QuantileCurve::uniform(low(c.size()), high(c.size()));
  }
  return curves;
}

// ---------------------------------------------------------------------------
// Risk aversion -> centripetality checks

struct PropositionReport {
  bool precondition_met = true;
  std::vector<ClaimResult> claims;

  bool all_pass() const {
    return std::all_of(claims.begin(), claims.end(),
                       [](const ClaimResult& c) { return c.status == ClaimStatus::Pass; });
  }
};

/// Mean/std games along a nondecreasing grid of risk weights are ≤cp-ordered; the
/// per-pair value ratio rises with the weight.
inline PropositionReport verify_prop1(int n, double mu, double sigma, const std::map<Coalition, double>& phi,
                                      double phi_default, const std::vector<double>& r_grid,
                                      double rel_tol = kDefaultOrderTolerance) {
  PropositionReport report;
  ClaimResult order{"order", "r1 <= r2 implies v(r1) ≤cp v(r2)", ClaimStatus::Pass,
                    "all ordered grid pairs", 0, {}};
  ClaimResult ratio{"ratio", "(|C2|mu - r sqrt|C2| sigma)/(|C1|mu - r sqrt|C1| sigma) nondecreasing in r",
                    ClaimStatus::Pass, "all coalition-size pairs along the grid", 0, {}};
  for (std::size_t j = 0; j < r_grid.size(); ++j) {
    if (!(r_grid[j] >= 0.0 && r_grid[j] < mu / sigma)) report.precondition_met = false;
    if (j > 0 && r_grid[j] < r_grid[j - 1]) report.precondition_met = false;
  }
  if (!report.precondition_met) {
    detail::fail(order, "grid not sorted inside [0, mu/sigma)");
    report.claims = {std::move(order), std::move(ratio)};
    return report;
  }
  std::vector<Game<double>> games;
  for (double r : r_grid) {
    MeanStdScenario s{n, mu, sigma, r, phi, phi_default, {}};
    games.push_back(build_meanstd_game(s));
  }
  for (std::size_t i = 0; i < games.size(); ++i)
    for (std::size_t j = i + 1; j < games.size(); ++j) {
      ++order.checked;
      auto verdict = leq_cp(games[i], games[j], rel_tol);
      if (!verdict.holds)
        detail::fail(order, "r=" + to_string(r_grid[i]) + " vs r=" + to_string(r_grid[j]) + " at {" +
                                games[i].name(verdict.violations.front().smaller) + "} ⊆ {" +
                                games[i].name(verdict.violations.front().larger) + "}");
    }
  for (int s1 = 1; s1 <= n; ++s1)
    for (int s2 = s1; s2 <= n; ++s2) {
      double prev = -1.0;
      for (double r : r_grid) {
        const double value = (s2 * mu - r * std::sqrt(double(s2)) * sigma) / (s1 * mu - r * std::sqrt(double(s1)) * sigma);
        ++ratio.checked;
        if (prev > value + rel_tol * std::abs(prev))
          detail::fail(ratio, "sizes " + std::to_string(s1) + "," + std::to_string(s2) + " at r=" + to_string(r));
        prev = value;
      }
    }
  report.claims = {std::move(order), std::move(ratio)};
  return report;
}

/// CVaR-mixture games under likelihood-ratio ordered densities are ≤cp-ordered when
/// the curves satisfy tail dominance; also checks the per-level CVaR ratio trend.
inline PropositionReport verify_prop2(const CurveTable& curves, const Density& mu1, const Density& mu2,
                                      const std::vector<double>& alpha_grid,
                                      double rel_tol = kDefaultOrderTolerance) {
  PropositionReport report;
  const bool tails = check_tail_dominance(curves).holds;
  const bool lr = leq_lr(mu1, mu2).holds;
  report.precondition_met = tails && lr;
  ClaimResult order{"order", "mu1 ≤lr mu2 implies v(mu1) ≤cp v(mu2)", ClaimStatus::Pass,
                    "all nested coalition pairs", 0, {}};
  ClaimResult unit{"one-unit", "CVaR(k(C2),alpha)/CVaR(k(C1),alpha) nondecreasing in alpha", ClaimStatus::Pass,
                   std::to_string(alpha_grid.size()) + "-point alpha grid, all nested coalition pairs", 0, {}};
  if (!tails) order.scope += " (tail dominance precondition unmet)";
  if (!lr) order.scope += " (likelihood-ratio precondition unmet)";

  const auto g1 = build_cvar_game(curves, mu1);
  const auto g2 = build_cvar_game(curves, mu2);
  auto verdict = leq_cp(g1, g2, rel_tol);
  order.checked = 1;
  if (!verdict.holds) {
    const auto& v = verdict.violations.front();
    detail::fail(order, "{" + g1.name(v.smaller) + "} ⊆ {" + g1.name(v.larger) + "}: " + to_string(v.lhs) +
                            " > " + to_string(v.rhs));
  }
  const std::size_t slots = std::size_t{1} << curves.players();
  for (std::size_t m = 1; m < slots; ++m) {
    Coalition larger(static_cast<Coalition::Mask>(m));
    for_each_proper_subset(larger, [&](Coalition smaller) {
      double prev = -1.0;
      for (double alpha : alpha_grid) {
        const double value = cvar(curves[larger], alpha) / cvar(curves[smaller], alpha);
        ++unit.checked;
        if (prev > value + rel_tol * std::abs(prev))
          detail::fail(unit, "{" + g1.name(smaller) + "} ⊆ {" + g1.name(larger) + "} at alpha=" + to_string(alpha));
        prev = value;
      }
    });
  }
  report.claims = {std::move(order), std::move(unit)};
  return report;
}

}  // namespace fracgame
