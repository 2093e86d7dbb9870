#pragma once

#include <stdexcept>
#include <vector>

#include "polyeq/rational.hpp"

namespace polyeq {

// min c.y  subject to  A y <= b,  E y = f,  y >= 0.
template <class T>
struct LinearProgram {
  explicit LinearProgram(int num_vars) : num_vars(num_vars), objective(num_vars, T(0)) {}

  void set_objective(std::vector<T> c) {
    if (static_cast<int>(c.size()) != num_vars)
      throw std::invalid_argument("objective length mismatch");
    objective = std::move(c);
  }

  void add_le(std::vector<T> row, T rhs) {
    if (static_cast<int>(row.size()) != num_vars)
      throw std::invalid_argument("constraint length mismatch");
    le_rows.push_back(std::move(row));
    le_rhs.push_back(std::move(rhs));
  }

  void add_eq(std::vector<T> row, T rhs) {
    if (static_cast<int>(row.size()) != num_vars)
      throw std::invalid_argument("constraint length mismatch");
    eq_rows.push_back(std::move(row));
    eq_rhs.push_back(std::move(rhs));
  }

  int num_vars;
  std::vector<T> objective;
  std::vector<std::vector<T>> le_rows;
  std::vector<T> le_rhs;
  std::vector<std::vector<T>> eq_rows;
  std::vector<T> eq_rhs;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

template <class T>
struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<T> point;  // length num_vars when Optimal
  T value = T(0);
};

namespace detail {

template <class T>
T lp_feas_tol() {
  if constexpr (NumericTraits<T>::exact)
    return T(0);
  else
    return T(1e-9);
}

// Dense tableau simplex core. Columns: structural vars, slacks,
// artificials, rhs. Bland's rule (lowest eligible variable index enters,
// lowest-index basic variable leaves among minimum ratios), which cannot
// cycle.
template <class T>
class SimplexTableau {
 public:
  SimplexTableau(int rows, int cols) : rows_(rows), cols_(cols) {
    tab_.assign(rows + 1, std::vector<T>(cols + 1, T(0)));
    basis_.assign(rows, -1);
  }

  std::vector<T>& row(int r) { return tab_[r]; }
  T& at(int r, int c) { return tab_[r][c]; }
  T& rhs(int r) { return tab_[r][cols_]; }
  T& obj(int c) { return tab_[rows_][c]; }
  T& obj_rhs() { return tab_[rows_][cols_]; }
  int& basis(int r) { return basis_[r]; }

  void pivot(int r, int c) {
    const T piv = tab_[r][c];
    for (T& v : tab_[r]) v /= piv;
    for (int i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      const T factor = tab_[i][c];
      if (factor == T(0)) continue;
      for (int j = 0; j <= cols_; ++j) tab_[i][j] -= factor * tab_[r][j];
    }
    basis_[r] = c;
  }

  // Price out the objective row against the current basis.
  void restore_objective_row() {
    for (int r = 0; r < rows_; ++r) {
      const T factor = tab_[rows_][basis_[r]];
      if (factor == T(0)) continue;
      for (int j = 0; j <= cols_; ++j) tab_[rows_][j] -= factor * tab_[r][j];
    }
  }

  // Returns false when the problem is unbounded in the current phase.
  bool run(int max_col) {
    const T tol = lp_feas_tol<T>();
    for (;;) {
      int enter = -1;
      for (int c = 0; c < max_col; ++c) {
        if (tab_[rows_][c] < -tol) {
          enter = c;
          break;  // Bland: lowest index
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      for (int r = 0; r < rows_; ++r) {
        if (tab_[r][enter] <= tol) continue;
        if (leave < 0) {
          leave = r;
          continue;
        }
        const T lhs = tab_[r][cols_] * tab_[leave][enter];
        const T rhs_v = tab_[leave][cols_] * tab_[r][enter];
        if (lhs < rhs_v || (lhs == rhs_v && basis_[r] < basis_[leave])) leave = r;
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  int rows_, cols_;
  std::vector<std::vector<T>> tab_;
  std::vector<int> basis_;
};

}  // namespace detail

// Two-phase dense primal simplex. In exact mode the result is certified:
// the final basis is primal feasible and every reduced cost is nonnegative,
// which is the strong-duality optimality certificate.
template <class T>
LpResult<T> solve_lp(const LinearProgram<T>& lp) {
  const int n = lp.num_vars;
  const int mi = static_cast<int>(lp.le_rows.size());
  const int me = static_cast<int>(lp.eq_rows.size());
  const int rows = mi + me;
  const T tol = detail::lp_feas_tol<T>();

  // Column layout: [structural n][slack mi][artificial rows][rhs].
  const int slack0 = n;
  const int art0 = n + mi;
  const int cols = n + mi + rows;
  detail::SimplexTableau<T> t(rows, cols);

  for (int r = 0; r < rows; ++r) {
    const bool is_le = r < mi;
    const std::vector<T>& src = is_le ? lp.le_rows[r] : lp.eq_rows[r - mi];
    T rhs = is_le ? lp.le_rhs[r] : lp.eq_rhs[r - mi];
    const bool flip = rhs < T(0);
    for (int c = 0; c < n; ++c) t.at(r, c) = flip ? -src[c] : src[c];
    if (is_le) t.at(r, slack0 + r) = flip ? T(-1) : T(1);
    t.rhs(r) = flip ? -rhs : rhs;
    if (is_le && !flip) {
      t.basis(r) = slack0 + r;
    } else {
      t.at(r, art0 + r) = T(1);
      t.basis(r) = art0 + r;
    }
  }

  // Phase 1: minimize the artificial sum.
  bool any_artificial = false;
  for (int r = 0; r < rows; ++r)
    if (t.basis(r) >= art0) any_artificial = true;
  if (any_artificial) {
    for (int r = 0; r < rows; ++r)
      if (t.basis(r) >= art0) t.obj(art0 + r) = T(1);
    t.restore_objective_row();
    if (!t.run(cols)) throw std::logic_error("phase-1 objective unbounded");
    if (t.obj_rhs() < -tol) throw std::logic_error("phase-1 negative optimum");
    if (-t.obj_rhs() > tol) return {LpStatus::Infeasible, {}, T(0)};
    // Drive leftover artificials out of the basis; a row with no usable
    // pivot is redundant and can keep its zero-valued artificial.
    for (int r = 0; r < rows; ++r) {
      if (t.basis(r) < art0) continue;
      int c = 0;
      while (c < art0 && !(t.at(r, c) > tol || t.at(r, c) < -tol)) ++c;
      if (c < art0) t.pivot(r, c);
    }
  }

  // Phase 2.
  for (int c = 0; c <= cols; ++c) t.obj(c) = T(0);
  for (int c = 0; c < n; ++c) t.obj(c) = lp.objective[c];
  // Keep leftover artificials pinned at zero: bar them from re-entering by
  // pricing them out and never selecting them (enter scan stops at art0).
  t.restore_objective_row();
  if (!t.run(art0)) return {LpStatus::Unbounded, {}, T(0)};

  LpResult<T> res;
  res.status = LpStatus::Optimal;
  res.point.assign(n, T(0));
  for (int r = 0; r < rows; ++r)
    if (t.basis(r) < n) res.point[t.basis(r)] = t.rhs(r);
  res.value = T(0);
  for (int c = 0; c < n; ++c) res.value += lp.objective[c] * res.point[c];

  if constexpr (NumericTraits<T>::exact) {
    for (int r = 0; r < rows; ++r)
      if (t.rhs(r) < T(0)) throw std::logic_error("simplex lost feasibility");
    for (int c = 0; c < art0; ++c)
      if (t.obj(c) < T(0)) throw std::logic_error("simplex lost optimality");
  }
  return res;
}

}  // namespace polyeq
