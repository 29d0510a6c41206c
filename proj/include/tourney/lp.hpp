#pragma once

// Exact rational linear programming: dense two-phase simplex with Bland's
// anti-cycling rule. Variables are nonnegative; rows are equalities or
// <=-inequalities. Produces exact optima with duals, Farkas certificates
// for infeasible systems, and rays for unbounded ones.

#include <tourney/matrix.hpp>
#include <tourney/rational.hpp>

#include <optional>
#include <vector>

namespace tourney {

struct LinearProgram {
  struct Row {
    std::vector<Rational> a;
    Rational b;
    bool eq = false;  // false: a·x <= b
  };

  int num_vars = 0;
  std::vector<Row> rows;
  std::vector<Rational> objective;  // empty means feasibility only
  bool maximize = true;

  void add_eq(std::vector<Rational> a, Rational b) {
    rows.push_back(Row{std::move(a), std::move(b), true});
  }
  void add_le(std::vector<Rational> a, Rational b) {
    rows.push_back(Row{std::move(a), std::move(b), false});
  }
};

enum class LPStatus { optimal, infeasible, unbounded };

struct LPResult {
  LPStatus status = LPStatus::infeasible;
  Rational value;                 // optimal objective in the original sense
  std::vector<Rational> x;        // optimizer over the original variables
  std::vector<Rational> duals;    // per original row; value == duals·b
  std::vector<Rational> farkas;   // infeasible: u with uᵀA <= 0 (componentwise),
                                  // u_i <= 0 on <=-rows, u·b > 0
  std::vector<Rational> ray;      // unbounded: improving recession direction
};

namespace detail {

class SimplexTableau {
public:
  explicit SimplexTableau(const LinearProgram& lp) : lp_(lp) {
    m_ = static_cast<int>(lp.rows.size());
    nv_ = lp.num_vars;
    n_slack_ = 0;
    for (const auto& r : lp.rows)
      if (!r.eq) ++n_slack_;
    n_total_ = nv_ + n_slack_ + m_;  // structural | slacks | artificials

    a_.assign(m_, std::vector<Rational>(n_total_ + 1, Rational(0)));
    flip_.assign(m_, 1);
    basis_.assign(m_, -1);
    row_alive_.assign(m_, true);

    int slack = 0;
    for (int i = 0; i < m_; ++i) {
      const auto& row = lp.rows[i];
      if (static_cast<int>(row.a.size()) != nv_)
        throw TourneyError("LinearProgram: row width mismatch");
      for (int j = 0; j < nv_; ++j) a_[i][j] = row.a[j];
      if (!row.eq) a_[i][nv_ + slack++] = Rational(1);
      a_[i][n_total_] = row.b;
      if (row.b.sign() < 0) {
        flip_[i] = -1;
        for (auto& v : a_[i]) v = -v;
      }
      a_[i][nv_ + n_slack_ + i] = Rational(1);  // artificial
      basis_[i] = nv_ + n_slack_ + i;
    }
  }

  LPResult solve() {
    // Phase 1: minimize the sum of artificials.
    std::vector<Rational> cost1(n_total_, Rational(0));
    for (int i = 0; i < m_; ++i) cost1[nv_ + n_slack_ + i] = Rational(1);
    run(cost1, /*allow_artificial=*/false);
    Rational infeas = objective_of(cost1);
    if (infeas.sign() > 0) return infeasible_result(cost1);
    evict_artificials();

    // Phase 2.
    std::vector<Rational> cost2(n_total_, Rational(0));
    for (int j = 0; j < nv_ && j < static_cast<int>(lp_.objective.size()); ++j)
      cost2[j] = lp_.maximize ? -lp_.objective[j] : lp_.objective[j];
    std::optional<int> unbounded_col = run(cost2, false);
    if (unbounded_col) return unbounded_result(*unbounded_col);

    LPResult res;
    res.status = LPStatus::optimal;
    res.x.assign(nv_, Rational(0));
    for (int i = 0; i < m_; ++i)
      if (row_alive_[i] && basis_[i] < nv_) res.x[basis_[i]] = a_[i][n_total_];
    Rational v = objective_of(cost2);
    res.value = lp_.maximize ? -v : v;
    res.duals = extract_duals(cost2);
    if (lp_.maximize)
      for (auto& d : res.duals) d = -d;
    return res;
  }

private:
  // Reduced cost of column j under cost vector c: c_j - sum over basic rows.
  Rational reduced_cost(const std::vector<Rational>& c, int j) const {
    Rational r = c[j];
    for (int i = 0; i < m_; ++i)
      if (row_alive_[i] && !c[basis_[i]].is_zero()) r -= c[basis_[i]] * a_[i][j];
    return r;
  }

  Rational objective_of(const std::vector<Rational>& c) const {
    Rational v;
    for (int i = 0; i < m_; ++i)
      if (row_alive_[i]) v += c[basis_[i]] * a_[i][n_total_];
    return v;
  }

  // Bland's rule loop; returns the entering column if unbounded.
  std::optional<int> run(const std::vector<Rational>& c, bool allow_artificial) {
    int limit = allow_artificial ? n_total_ : nv_ + n_slack_;
    while (true) {
      int enter = -1;
      for (int j = 0; j < limit; ++j) {
        if (is_basic(j)) continue;
        if (reduced_cost(c, j).sign() < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return std::nullopt;

      int leave = -1;
      Rational best;
      for (int i = 0; i < m_; ++i) {
        if (!row_alive_[i] || a_[i][enter].sign() <= 0) continue;
        Rational ratio = a_[i][n_total_] / a_[i][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return enter;  // unbounded along this column
      pivot(leave, enter);
    }
  }

  bool is_basic(int j) const {
    for (int i = 0; i < m_; ++i)
      if (row_alive_[i] && basis_[i] == j) return true;
    return false;
  }

  void pivot(int row, int col) {
    Rational inv = Rational(1) / a_[row][col];
    for (auto& v : a_[row]) v *= inv;
    for (int i = 0; i < m_; ++i) {
      if (i == row || !row_alive_[i] || a_[i][col].is_zero()) continue;
      Rational f = a_[i][col];
      for (int j = 0; j <= n_total_; ++j) a_[i][j] -= f * a_[row][j];
    }
    basis_[row] = col;
  }

  // After phase 1 at zero cost: pivot basic artificials out on any structural
  // or slack column; rows that cannot pivot are redundant and get dropped.
  void evict_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (!row_alive_[i] || basis_[i] < nv_ + n_slack_) continue;
      int col = -1;
      for (int j = 0; j < nv_ + n_slack_; ++j)
        if (!is_basic(j) && !a_[i][j].is_zero()) {
          col = j;
          break;
        }
      if (col >= 0)
        pivot(i, col);
      else
        row_alive_[i] = false;
    }
  }

  // y_i = c_B B^{-1} e_i read off the artificial column of row i.
  std::vector<Rational> internal_duals(const std::vector<Rational>& c) const {
    std::vector<Rational> y(m_, Rational(0));
    for (int i = 0; i < m_; ++i) {
      if (!row_alive_[i]) continue;
      int art = nv_ + n_slack_ + i;
      Rational v;
      for (int k = 0; k < m_; ++k)
        if (row_alive_[k] && !c[basis_[k]].is_zero()) v += c[basis_[k]] * a_[k][art];
      y[i] = v;
    }
    return y;
  }

  std::vector<Rational> extract_duals(const std::vector<Rational>& c) const {
    auto y = internal_duals(c);
    std::vector<Rational> u(m_);
    for (int i = 0; i < m_; ++i) u[i] = flip_[i] == -1 ? -y[i] : y[i];
    return u;
  }

  LPResult infeasible_result(const std::vector<Rational>& cost1) {
    LPResult res;
    res.status = LPStatus::infeasible;
    auto y = internal_duals(cost1);
    res.farkas.assign(m_, Rational(0));
    for (int i = 0; i < m_; ++i)
      res.farkas[i] = flip_[i] == -1 ? -y[i] : y[i];
    return res;
  }

  LPResult unbounded_result(int enter) {
    LPResult res;
    res.status = LPStatus::unbounded;
    res.ray.assign(nv_, Rational(0));
    if (enter < nv_) res.ray[enter] = Rational(1);
    for (int i = 0; i < m_; ++i) {
      if (!row_alive_[i] || basis_[i] >= nv_) continue;
      if (a_[i][enter].sign() != 0) res.ray[basis_[i]] = -a_[i][enter];
    }
    return res;
  }

  const LinearProgram& lp_;
  int m_, nv_, n_slack_, n_total_;
  std::vector<std::vector<Rational>> a_;
  std::vector<int> flip_;
  std::vector<int> basis_;
  std::vector<bool> row_alive_;
};

}  // namespace detail

inline LPResult lp_solve(const LinearProgram& lp) {
  if (lp.num_vars == 0) throw TourneyError("lp_solve: no variables");
  return detail::SimplexTableau(lp).solve();
}

}  // namespace tourney
