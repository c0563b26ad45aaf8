#pragma once

// Linear feasibility over products of simplices with lower bounds and coalition
// half-spaces: exact two-phase simplex, max-slack points and small-dimension vertices.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coalition.hpp"
#include "errors.hpp"
#include "scalar.hpp"

namespace fracgame {

/// coefficient * sum_{i in members} x_i >= threshold, coefficient > 0.
template <Scalar T>
struct Halfspace {
  Coalition members;
  T coefficient{1};
  T threshold{0};

  /// The threshold expressed in share units (coefficient divided out).
  T normalized_threshold() const { return threshold / coefficient; }
};

/// { x : x_i >= lower_i, sum_{i in B} x_i = 1 for every block B, all half-spaces hold }.
/// Blocks must partition the variables, which keeps the polytope bounded.
template <Scalar T>
struct LinearSystem {
  int dim = 0;
  std::vector<T> lower;
  std::vector<Coalition> blocks;
  std::vector<Halfspace<T>> halfspaces;
  double tolerance = kDefaultTolerance;

  void validate() const {
    if (dim < 1 || dim > kMaxPlayers) throw DimensionMismatch("system dimension out of range");
    if (lower.size() != static_cast<std::size_t>(dim))
      throw DimensionMismatch("lower bound count differs from dimension");
    Coalition seen;
    for (Coalition b : blocks) {
      if (b.empty() || b.intersects(seen)) throw DimensionMismatch("blocks overlap or are empty");
      seen = seen | b;
    }
    if (seen != Coalition::grand(dim)) throw DimensionMismatch("blocks do not cover all variables");
    for (const auto& h : halfspaces) {
      if (h.members.empty() || !h.members.subset_of(Coalition::grand(dim)))
        throw DimensionMismatch("half-space references unknown variables");
      if (!(h.coefficient > T(0))) throw DimensionMismatch("half-space coefficient must be positive");
    }
  }

  /// Half-spaces are checked in share units, so the tolerance means the same thing for all.
  bool satisfied_by(std::span<const T> x) const {
    if (x.size() != static_cast<std::size_t>(dim)) return false;
    for (int i = 0; i < dim; ++i)
      if (!geq(x[static_cast<std::size_t>(i)], lower[static_cast<std::size_t>(i)], tolerance)) return false;
    for (Coalition b : blocks) {
      T s(0);
      for (int i : b.members()) s += x[static_cast<std::size_t>(i)];
      if (!approx_equal(s, T(1), tolerance)) return false;
    }
    for (const auto& h : halfspaces) {
      T s(0);
      for (int i : h.members.members()) s += x[static_cast<std::size_t>(i)];
      if (!geq(s, h.normalized_threshold(), tolerance)) return false;
    }
    return true;
  }
};

namespace detail {

template <Scalar T>
bool positive(const T& a, double eps) {
  if constexpr (is_exact_v<T>) return a > T(0);
  else return a > eps;
}

template <Scalar T>
bool negative(const T& a, double eps) {
  if constexpr (is_exact_v<T>) return a < T(0);
  else return a < -eps;
}

template <Scalar T>
struct LpRow {
  std::vector<T> coeffs;
  T rhs;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

template <Scalar T>
struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<T> x;
  T objective{0};
};

/// Dense tableau simplex with Bland's rule: minimize c.x s.t. rows (equalities), x >= 0.
template <Scalar T>
class StandardLp {
 public:
  StandardLp(std::vector<LpRow<T>> rows, std::vector<T> cost, double eps)
      : vars_(cost.size()), cost_(std::move(cost)), eps_(eps) {
    const std::size_t m = rows.size();
    cols_ = vars_ + m;
    tab_.assign(m, std::vector<T>(cols_ + 1, T(0)));
    basis_.resize(m);
    for (std::size_t r = 0; r < m; ++r) {
      bool flip = rows[r].rhs < T(0);
      for (std::size_t j = 0; j < vars_; ++j) tab_[r][j] = flip ? T(-rows[r].coeffs[j]) : rows[r].coeffs[j];
      tab_[r][vars_ + r] = T(1);
      tab_[r][cols_] = flip ? T(-rows[r].rhs) : rows[r].rhs;
      basis_[r] = vars_ + r;
    }
  }

  LpResult<T> solve() {
    LpResult<T> result;
    // Phase 1: minimize the sum of artificials.
    obj_.assign(cols_ + 1, T(0));
    for (auto& row : tab_)
      for (std::size_t j = 0; j <= cols_; ++j)
        if (j < vars_ || j == cols_) obj_[j] -= row[j];
    if (!iterate(cols_)) throw NumericFailure("phase-one simplex reported unboundedness");
    T infeasibility = -obj_[cols_];
    double scale = 1.0;
    if constexpr (!is_exact_v<T>) {
      for (auto& row : tab_) scale = std::max(scale, std::abs(row[cols_]));
    }
    if (positive(infeasibility, eps_ * scale)) return result;

    // Drive remaining artificials out of the basis; drop redundant rows.
    for (std::size_t r = 0; r < tab_.size();) {
      if (basis_[r] < vars_) {
        ++r;
        continue;
      }
      std::size_t col = vars_;
      for (std::size_t j = 0; j < vars_; ++j)
        if (positive(T(abs_value(tab_[r][j])), eps_)) {
          col = j;
          break;
        }
      if (col == vars_) {
        tab_.erase(tab_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
        continue;
      }
      pivot(r, col);
      ++r;
    }

    // Phase 2.
    obj_.assign(cols_ + 1, T(0));
    for (std::size_t j = 0; j < vars_; ++j) obj_[j] = cost_[j];
    for (std::size_t r = 0; r < tab_.size(); ++r) {
      const T cb = basis_[r] < vars_ ? cost_[basis_[r]] : T(0);
      if (is_zero(cb)) continue;
      for (std::size_t j = 0; j <= cols_; ++j) obj_[j] -= cb * tab_[r][j];
    }
    if (!iterate(vars_)) {
      result.status = LpStatus::Unbounded;
      return result;
    }
    result.status = LpStatus::Optimal;
    result.x.assign(vars_, T(0));
    for (std::size_t r = 0; r < tab_.size(); ++r)
      if (basis_[r] < vars_) result.x[basis_[r]] = tab_[r][cols_];
    result.objective = -obj_[cols_];
    return result;
  }

 private:
  static T abs_value(const T& a) { return a < T(0) ? T(-a) : a; }

  /// Runs Bland pivots over columns [0, allowed); false on unboundedness.
  bool iterate(std::size_t allowed) {
    while (true) {
      std::size_t enter = allowed;
      for (std::size_t j = 0; j < allowed; ++j)
        if (negative(obj_[j], eps_)) {
          enter = j;
          break;
        }
      if (enter == allowed) return true;
      std::size_t leave = tab_.size();
      T best_ratio(0);
      for (std::size_t r = 0; r < tab_.size(); ++r) {
        if (!positive(tab_[r][enter], eps_)) continue;
        T ratio = tab_[r][cols_] / tab_[r][enter];
        if (leave == tab_.size() || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave == tab_.size()) return false;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    auto& prow = tab_[r];
    const T p = prow[c];
    for (auto& v : prow) v /= p;
    for (std::size_t k = 0; k < tab_.size(); ++k) {
      if (k == r || is_zero(tab_[k][c])) continue;
      const T factor = tab_[k][c];
      for (std::size_t j = 0; j <= cols_; ++j) tab_[k][j] -= factor * prow[j];
    }
    if (!is_zero(obj_[c])) {
      const T factor = obj_[c];
      for (std::size_t j = 0; j <= cols_; ++j) obj_[j] -= factor * prow[j];
    }
    basis_[r] = c;
  }

  std::size_t vars_;
  std::size_t cols_ = 0;
  std::vector<T> cost_;
  double eps_;
  std::vector<std::vector<T>> tab_;
  std::vector<T> obj_;
  std::vector<std::size_t> basis_;
};

template <Scalar T>
double pivot_eps() {
  if constexpr (is_exact_v<T>) return 0.0;
  else return 1e-11;
}

/// Inequality relaxation applied inside the float backend (zero when exact).
template <Scalar T>
T relaxation(const LinearSystem<T>& sys) {
  if constexpr (is_exact_v<T>) return T(0);
  else return sys.tolerance * 0.5;
}

/// Shifted lower bounds and share-unit thresholds, both relaxed for the float backend.
template <Scalar T>
struct Normalized {
  std::vector<T> lower;
  std::vector<T> thresholds;
};

template <Scalar T>
Normalized<T> normalize(const LinearSystem<T>& sys) {
  const T relax = relaxation(sys);
  Normalized<T> out;
  for (const T& lb : sys.lower) out.lower.push_back(lb - relax);
  for (const auto& h : sys.halfspaces) out.thresholds.push_back(h.normalized_threshold() - relax);
  return out;
}

template <Scalar T>
T sum_over(const std::vector<T>& v, Coalition c) {
  T s(0);
  for (int i : c.members()) s += v[static_cast<std::size_t>(i)];
  return s;
}

}  // namespace detail

/// Some point of the system (a basic solution), or nullopt iff it is infeasible.
template <Scalar T>
std::optional<std::vector<T>> find_point(const LinearSystem<T>& sys) {
  using namespace detail;
  sys.validate();
  const auto norm = normalize(sys);
  const std::size_t d = static_cast<std::size_t>(sys.dim);
  const std::size_t h = sys.halfspaces.size();
  // Variables: y_i = x_i - lower_i (d of them), then one surplus per half-space.
  std::vector<LpRow<T>> rows;
  for (Coalition b : sys.blocks) {
    LpRow<T> row{std::vector<T>(d + h, T(0)), T(1) - sum_over(norm.lower, b)};
    for (int i : b.members()) row.coeffs[static_cast<std::size_t>(i)] = T(1);
    rows.push_back(std::move(row));
  }
  for (std::size_t k = 0; k < h; ++k) {
    const auto& hs = sys.halfspaces[k];
    LpRow<T> row{std::vector<T>(d + h, T(0)), norm.thresholds[k] - sum_over(norm.lower, hs.members)};
    for (int i : hs.members.members()) row.coeffs[static_cast<std::size_t>(i)] = T(1);
    row.coeffs[d + k] = T(-1);
    rows.push_back(std::move(row));
  }
  StandardLp<T> lp(std::move(rows), std::vector<T>(d + h, T(0)), pivot_eps<T>());
  auto res = lp.solve();
  if (res.status != LpStatus::Optimal) return std::nullopt;
  std::vector<T> x(d);
  for (std::size_t i = 0; i < d; ++i) x[i] = res.x[i] + norm.lower[i];
  if (!sys.satisfied_by(x)) {
    if constexpr (is_exact_v<T>) throw NumericFailure("exact witness failed re-check");
    else throw NumericFailure("float witness failed re-check");
  }
  return x;
}

template <Scalar T>
struct SlackPoint {
  std::vector<T> point;
  T slack;
};

/// Maximizes the smallest inequality slack (lower bounds and half-spaces, in share
/// units); ties are broken towards the lexicographically smallest point.
template <Scalar T>
std::optional<SlackPoint<T>> try_max_slack_point(const LinearSystem<T>& sys) {
  using namespace detail;
  sys.validate();
  if (!find_point(sys)) return std::nullopt;
  const auto norm = normalize(sys);
  const std::size_t d = static_cast<std::size_t>(sys.dim);
  const std::size_t h = sys.halfspaces.size();
  // Variables: u (d), surplus s (h), t (1); x_i = lower_i + t + u_i.
  const std::size_t t_col = d + h;
  auto base_rows = [&](std::size_t extra_cols) {
    std::vector<LpRow<T>> rows;
    const std::size_t width = d + h + 1 + extra_cols;
    for (Coalition b : sys.blocks) {
      LpRow<T> row{std::vector<T>(width, T(0)), T(1) - sum_over(norm.lower, b)};
      for (int i : b.members()) row.coeffs[static_cast<std::size_t>(i)] = T(1);
      row.coeffs[t_col] = T(b.size());
      rows.push_back(std::move(row));
    }
    for (std::size_t k = 0; k < h; ++k) {
      const auto& hs = sys.halfspaces[k];
      LpRow<T> row{std::vector<T>(width, T(0)), norm.thresholds[k] - sum_over(norm.lower, hs.members)};
      for (int i : hs.members.members()) row.coeffs[static_cast<std::size_t>(i)] = T(1);
      row.coeffs[d + k] = T(-1);
      row.coeffs[t_col] = T(hs.members.size() - 1);
      rows.push_back(std::move(row));
    }
    return rows;
  };

  T fix_relax(0);
  if constexpr (!is_exact_v<T>) fix_relax = sys.tolerance * 1e-3;

  std::vector<T> cost(d + h + 1, T(0));
  cost[t_col] = T(-1);
  auto first = StandardLp<T>(base_rows(0), cost, pivot_eps<T>()).solve();
  if (first.status != LpStatus::Optimal) throw NumericFailure("max-slack program failed");
  const T best_t = first.x[t_col];

  // Lexicographic refinement: fix t >= t*, then minimize u_0, u_1, ... in turn,
  // each fixed as u_j <= value afterwards. Extra columns hold the fixing slacks.
  std::vector<std::pair<std::size_t, T>> upper_fixes;
  std::vector<T> solution = first.x;
  for (std::size_t j = 0; j < d; ++j) {
    const std::size_t extra = 1 + upper_fixes.size();
    auto rows = base_rows(extra);
    const std::size_t width = d + h + 1 + extra;
    LpRow<T> fix_t{std::vector<T>(width, T(0)), best_t - fix_relax};
    fix_t.coeffs[t_col] = T(1);
    fix_t.coeffs[d + h + 1] = T(-1);
    rows.push_back(std::move(fix_t));
    for (std::size_t k = 0; k < upper_fixes.size(); ++k) {
      LpRow<T> fix{std::vector<T>(width, T(0)), upper_fixes[k].second + fix_relax};
      fix.coeffs[upper_fixes[k].first] = T(1);
      fix.coeffs[d + h + 2 + k] = T(1);
      rows.push_back(std::move(fix));
    }
    std::vector<T> c(width, T(0));
    c[j] = T(1);
    auto res = StandardLp<T>(std::move(rows), std::move(c), pivot_eps<T>()).solve();
    if (res.status != LpStatus::Optimal) throw NumericFailure("lexicographic refinement failed");
    upper_fixes.emplace_back(j, res.x[j]);
    solution = std::move(res.x);
  }
  SlackPoint<T> out;
  const T t = solution[t_col];
  for (std::size_t i = 0; i < d; ++i) out.point.push_back(norm.lower[i] + t + solution[i]);
  out.slack = t - relaxation(sys);
  if (!sys.satisfied_by(out.point)) throw NumericFailure("max-slack witness failed re-check");
  return out;
}

template <Scalar T>
SlackPoint<T> max_slack_point(const LinearSystem<T>& sys) {
  auto pt = try_max_slack_point(sys);
  if (!pt) throw Infeasible("system has no feasible point");
  return std::move(*pt);
}

/// The canonical (max-slack) point of the system, or nullopt iff it is infeasible.
template <Scalar T>
std::optional<std::vector<T>> feasible(const LinearSystem<T>& sys) {
  auto pt = try_max_slack_point(sys);
  if (!pt) return std::nullopt;
  return std::move(pt->point);
}

/// Default dimension cap for brute-force vertex enumeration.
inline constexpr int kMaxVertexDim = 5;

namespace detail {

/// Solves the square system rows * x = rhs (rows given as 0/1 masks) in double;
/// false when numerically singular.
inline bool solve_masks_double(const std::vector<Coalition>& rows, const std::vector<double>& rhs,
                               int dim, std::vector<double>& x) {
  const std::size_t d = static_cast<std::size_t>(dim);
  std::vector<std::vector<double>> a(d, std::vector<double>(d + 1, 0.0));
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) a[r][c] = rows[r].contains(static_cast<int>(c)) ? 1.0 : 0.0;
    a[r][d] = rhs[r];
  }
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < d; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    if (std::abs(a[piv][c]) < 1e-9) return false;
    std::swap(a[piv], a[c]);
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c || a[r][c] == 0.0) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= d; ++k) a[r][k] -= f * a[c][k];
    }
  }
  x.assign(d, 0.0);
  for (std::size_t r = 0; r < d; ++r) x[r] = a[r][d] / a[r][r];
  return true;
}

template <Scalar T>
bool solve_masks_exact(const std::vector<Coalition>& rows, const std::vector<T>& rhs, int dim,
                       std::vector<T>& x) {
  const std::size_t d = static_cast<std::size_t>(dim);
  std::vector<std::vector<T>> a(d, std::vector<T>(d + 1, T(0)));
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) a[r][c] = rows[r].contains(static_cast<int>(c)) ? T(1) : T(0);
    a[r][d] = rhs[r];
  }
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = d;
    for (std::size_t r = c; r < d; ++r)
      if (!is_zero(a[r][c])) {
        piv = r;
        break;
      }
    if (piv == d) return false;
    std::swap(a[piv], a[c]);
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c || is_zero(a[r][c])) continue;
      const T f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= d; ++k) a[r][k] -= f * a[c][k];
    }
  }
  x.assign(d, T(0));
  for (std::size_t r = 0; r < d; ++r) x[r] = a[r][d] / a[r][r];
  return true;
}

}  // namespace detail

/// All vertices of the feasible polytope, deduplicated and sorted lexicographically.
template <Scalar T>
std::vector<std::vector<T>> vertices(const LinearSystem<T>& sys, int cap = kMaxVertexDim) {
  using namespace detail;
  sys.validate();
  if (sys.dim > cap) throw CapExceeded("vertex enumeration capped at dimension " + std::to_string(cap));
  if (!find_point(sys)) return {};

  // Inequalities as (mask, share-unit threshold); keep only the tightest per mask.
  std::vector<std::pair<Coalition, T>> ineqs;
  auto add = [&](Coalition m, const T& thr) {
    for (auto& [mask, t] : ineqs)
      if (mask == m) {
        if (thr > t) t = thr;
        return;
      }
    ineqs.emplace_back(m, thr);
  };
  for (int i = 0; i < sys.dim; ++i) add(Coalition::singleton(i), sys.lower[static_cast<std::size_t>(i)]);
  for (const auto& h : sys.halfspaces) add(h.members, h.normalized_threshold());

  const int k = sys.dim - static_cast<int>(sys.blocks.size());
  std::vector<std::vector<T>> found;
  if (k == 0) {
    // Every block is a single variable fixed at 1.
    found.emplace_back(static_cast<std::size_t>(sys.dim), T(1));
    if (!sys.satisfied_by(found.front())) found.clear();
    return found;
  }
  const std::size_t m = ineqs.size();
  if (static_cast<std::size_t>(k) > m) return {};

  std::vector<Coalition> row_masks(sys.blocks.begin(), sys.blocks.end());
  std::vector<double> rhs_d(row_masks.size(), 1.0);
  row_masks.resize(static_cast<std::size_t>(sys.dim));
  rhs_d.resize(static_cast<std::size_t>(sys.dim));
  const std::size_t base = sys.blocks.size();

  std::vector<std::size_t> pick(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i;
  std::vector<double> xd;
  std::vector<T> xt;
  while (true) {
    for (std::size_t i = 0; i < pick.size(); ++i) {
      row_masks[base + i] = ineqs[pick[i]].first;
      rhs_d[base + i] = to_double(ineqs[pick[i]].second);
    }
    if (solve_masks_double(row_masks, rhs_d, sys.dim, xd)) {
      bool plausible = true;
      constexpr double screen = 1e-7;
      for (std::size_t q = 0; q < m && plausible; ++q) {
        double s = 0.0;
        for (int i : ineqs[q].first.members()) s += xd[static_cast<std::size_t>(i)];
        plausible = s >= to_double(ineqs[q].second) - screen - sys.tolerance;
      }
      if (plausible) {
        if constexpr (is_exact_v<T>) {
          std::vector<T> rhs_t(static_cast<std::size_t>(sys.dim), T(1));
          for (std::size_t i = 0; i < pick.size(); ++i) rhs_t[base + i] = ineqs[pick[i]].second;
          if (solve_masks_exact(row_masks, rhs_t, sys.dim, xt) && sys.satisfied_by(xt)) found.push_back(xt);
        } else {
          if (sys.satisfied_by(xd)) found.push_back(xd);
        }
      }
    }
    // Next combination.
    std::size_t i = pick.size();
    while (i > 0 && pick[i - 1] == m - pick.size() + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < pick.size(); ++j) pick[j] = pick[j - 1] + 1;
  }

  std::sort(found.begin(), found.end());
  if constexpr (is_exact_v<T>) {
    found.erase(std::unique(found.begin(), found.end()), found.end());
  } else {
    const double tol = sys.tolerance;
    std::vector<std::vector<T>> unique_pts;
    for (auto& p : found) {
      bool dup = std::any_of(unique_pts.begin(), unique_pts.end(), [&](const std::vector<T>& q) {
        for (std::size_t i = 0; i < p.size(); ++i)
          if (std::abs(p[i] - q[i]) > tol) return false;
        return true;
      });
      if (!dup) unique_pts.push_back(std::move(p));
    }
    found = std::move(unique_pts);
  }
  return found;
}

}  // namespace fracgame
