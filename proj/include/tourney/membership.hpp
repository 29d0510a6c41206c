#pragma once

// Two independent membership tests for the polytope generated by the graph
// vectors: a fractional-arc-flow feasibility LP and a convex-hull LP over
// the enumerated corners.

#include <tourney/digraph.hpp>
#include <tourney/lp.hpp>
#include <tourney/matrix.hpp>

#include <optional>
#include <vector>

namespace tourney {

// Lower-triangular flow matrix: m_ij >= 0 for i >= j, zero above the
// diagonal, m_ij <= 1/2 for j not in {1, i}, rows sum to 1.
struct ArcFlow {
  int n = 0;
  std::vector<std::vector<Rational>> m;

  void validate() const {
    const Rational half(1, 2), one(1);
    for (int i = 1; i <= n; ++i) {
      Rational sum;
      for (int j = 1; j <= n; ++j) {
        const Rational& v = m[i - 1][j - 1];
        if (j > i && !v.is_zero()) throw TourneyError("ArcFlow: entry above diagonal");
        if (v.sign() < 0) throw TourneyError("ArcFlow: negative entry");
        if (j != 1 && j != i && v > half) throw TourneyError("ArcFlow: entry > 1/2");
        sum += v;
      }
      if (sum != one) throw TourneyError("ArcFlow: row sum != 1");
    }
  }

  WinVector vector() const {
    std::vector<Rational> comps(n);
    for (int j = 1; j <= n; ++j) {
      Rational s;
      for (int i = 1; i <= n; ++i) s += m[i - 1][j - 1];
      comps[j - 1] = s / Rational(n);
    }
    return WinVector(std::move(comps));
  }
};

struct MembershipResult {
  bool member = false;
  std::optional<ArcFlow> flow;                    // arc-flow witness
  std::optional<std::vector<Rational>> lambdas;   // hull witness (per corner)
  // For non-members: u (and offset beta for the hull test) with
  // u·x + beta > 0 while u·c + beta <= 0 for every point c of the polytope.
  std::optional<std::vector<Rational>> separator;
  std::optional<Rational> separator_offset;
};

// Feasibility of: (1/n) sum_i m_ij = x_j with M a fractional arc flow.
inline MembershipResult arc_flow_membership(const WinVector& x) {
  int n = x.n();
  // Variables: m_ij for i >= j, row-major over the lower triangle.
  std::vector<std::vector<int>> var(n + 1, std::vector<int>(n + 1, -1));
  int nv = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= i; ++j) var[i][j] = nv++;

  LinearProgram lp;
  lp.num_vars = nv;
  for (int i = 1; i <= n; ++i) {  // row sums
    std::vector<Rational> a(nv, Rational(0));
    for (int j = 1; j <= i; ++j) a[var[i][j]] = Rational(1);
    lp.add_eq(std::move(a), Rational(1));
  }
  for (int j = 1; j <= n; ++j) {  // column sums hit n * x_j
    std::vector<Rational> a(nv, Rational(0));
    for (int i = j; i <= n; ++i) a[var[i][j]] = Rational(1);
    lp.add_eq(std::move(a), Rational(n) * x[j]);
  }
  for (int i = 1; i <= n; ++i)
    for (int j = 2; j < i; ++j) {  // capacity 1/2 off the first column/diagonal
      std::vector<Rational> a(nv, Rational(0));
      a[var[i][j]] = Rational(1);
      lp.add_le(std::move(a), Rational(1, 2));
    }

  auto res = lp_solve(lp);
  MembershipResult out;
  if (res.status == LPStatus::optimal) {
    out.member = true;
    ArcFlow flow;
    flow.n = n;
    flow.m.assign(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= i; ++j) flow.m[i - 1][j - 1] = res.x[var[i][j]];
    flow.validate();
    out.flow = std::move(flow);
  } else {
    // Farkas components on the column-sum rows give a separating direction;
    // the remaining rows contribute a constant offset.
    std::vector<Rational> u(n);
    for (int j = 0; j < n; ++j) u[j] = res.farkas[n + j] * Rational(n);
    Rational beta;
    for (int i = 0; i < n; ++i) beta += res.farkas[i];
    for (size_t r = 2 * n; r < res.farkas.size(); ++r)
      beta += res.farkas[r] * Rational(1, 2);
    out.separator = std::move(u);
    out.separator_offset = beta;
  }
  return out;
}

inline MembershipResult hull_membership(const WinVector& x,
                                        const std::vector<WinVector>& points) {
  int n = x.n();
  int k = static_cast<int>(points.size());
  if (k == 0) throw TourneyError("hull_membership: empty point set");

  LinearProgram lp;
  lp.num_vars = k;
  for (int i = 1; i <= n; ++i) {
    std::vector<Rational> a(k);
    for (int c = 0; c < k; ++c) a[c] = points[c][i];
    lp.add_eq(std::move(a), x[i]);
  }
  lp.add_eq(std::vector<Rational>(k, Rational(1)), Rational(1));

  auto res = lp_solve(lp);
  MembershipResult out;
  if (res.status == LPStatus::optimal) {
    out.member = true;
    out.lambdas = res.x;
  } else {
    std::vector<Rational> u(res.farkas.begin(), res.farkas.begin() + n);
    out.separator = std::move(u);
    out.separator_offset = res.farkas[n];
  }
  return out;
}

inline MembershipResult hull_membership(const WinVector& x) {
  return hull_membership(x, corners(x.n()));
}

// Exact l-infinity distance from x to the convex hull of the given points.
inline Rational linf_distance_to_hull(const WinVector& x,
                                      const std::vector<WinVector>& points) {
  int n = x.n();
  int k = static_cast<int>(points.size());
  // Variables: lambda_1..lambda_k, t; minimize t.
  LinearProgram lp;
  lp.num_vars = k + 1;
  lp.maximize = false;
  lp.objective.assign(k + 1, Rational(0));
  lp.objective[k] = Rational(1);
  for (int i = 1; i <= n; ++i) {
    std::vector<Rational> up(k + 1), down(k + 1);
    for (int c = 0; c < k; ++c) {
      up[c] = points[c][i];
      down[c] = -points[c][i];
    }
    up[k] = Rational(-1);
    down[k] = Rational(-1);
    lp.add_le(std::move(down), -x[i]);  //  x_i - sum <= t
    lp.add_le(std::move(up), x[i]);     //  sum - x_i <= t
  }
  std::vector<Rational> ones(k + 1, Rational(1));
  ones[k] = Rational(0);
  lp.add_eq(std::move(ones), Rational(1));
  auto res = lp_solve(lp);
  if (res.status != LPStatus::optimal)
    throw TourneyError("linf_distance_to_hull: LP not optimal");
  return res.value;
}

}  // namespace tourney
