#include <tourney/digraph.hpp>
#include <tourney/lp.hpp>
#include <tourney/membership.hpp>
#include <tourney/simulate.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace tourney;

namespace {

Rational r(long n, long d = 1) { return Rational(n, d); }

// Exact feasibility check of a solution vector against the original rows.
bool feasible(const LinearProgram& lp, const std::vector<Rational>& x) {
  for (const auto& v : x)
    if (v.sign() < 0) return false;
  for (const auto& row : lp.rows) {
    Rational lhs;
    for (int j = 0; j < lp.num_vars; ++j) lhs += row.a[j] * x[j];
    if (row.eq ? lhs != row.b : lhs > row.b) return false;
  }
  return true;
}

// Validates the Farkas certificate contract from lp.hpp.
void check_farkas(const LinearProgram& lp, const std::vector<Rational>& u) {
  REQUIRE(u.size() == lp.rows.size());
  Rational dot_b;
  for (size_t i = 0; i < lp.rows.size(); ++i) {
    if (!lp.rows[i].eq) CHECK(u[i] <= r(0));
    dot_b += u[i] * lp.rows[i].b;
  }
  CHECK(dot_b > r(0));
  for (int j = 0; j < lp.num_vars; ++j) {
    Rational col;
    for (size_t i = 0; i < lp.rows.size(); ++i) col += u[i] * lp.rows[i].a[j];
    CHECK(col <= r(0));
  }
}

// Dual feasibility + strong duality for optimal results.
void check_duality(const LinearProgram& lp, const LPResult& res) {
  REQUIRE(res.status == LPStatus::optimal);
  Rational dual_value;
  for (size_t i = 0; i < lp.rows.size(); ++i) dual_value += res.duals[i] * lp.rows[i].b;
  CHECK(dual_value == res.value);
  for (int j = 0; j < lp.num_vars; ++j) {
    Rational col;
    for (size_t i = 0; i < lp.rows.size(); ++i) col += res.duals[i] * lp.rows[i].a[j];
    Rational c = j < static_cast<int>(lp.objective.size()) ? lp.objective[j] : r(0);
    if (lp.maximize)
      CHECK(col >= c);  // y A >= c, y >= 0 on inequality rows
    else
      CHECK(col <= c);
    }
  for (size_t i = 0; i < lp.rows.size(); ++i)
    if (!lp.rows[i].eq) {
      if (lp.maximize)
        CHECK(res.duals[i] >= r(0));
      else
        CHECK(res.duals[i] <= r(0));
    }
}

}  // namespace

TEST_CASE("one-variable maximization", "[lp]") {
  LinearProgram lp;
  lp.num_vars = 1;
  lp.objective = {r(1)};
  lp.add_le({r(1)}, r(1, 2));
  auto res = lp_solve(lp);
  REQUIRE(res.status == LPStatus::optimal);
  CHECK(res.value == r(1, 2));
  CHECK(res.x[0] == r(1, 2));
  check_duality(lp, res);
}

TEST_CASE("infeasible system yields a verifiable certificate", "[lp]") {
  LinearProgram lp;  // x >= 1 and x <= 0
  lp.num_vars = 1;
  lp.objective = {r(1)};
  lp.add_le({r(-1)}, r(-1));
  lp.add_le({r(1)}, r(0));
  auto res = lp_solve(lp);
  REQUIRE(res.status == LPStatus::infeasible);
  check_farkas(lp, res.farkas);
}

TEST_CASE("unbounded detection produces an improving ray", "[lp]") {
  LinearProgram lp;  // maximize x + y with x - y <= 1
  lp.num_vars = 2;
  lp.objective = {r(1), r(1)};
  lp.add_le({r(1), r(-1)}, r(1));
  auto res = lp_solve(lp);
  REQUIRE(res.status == LPStatus::unbounded);
  // ray satisfies A d <= 0, d >= 0, c d > 0
  Rational row = res.ray[0] - res.ray[1];
  CHECK(row <= r(0));
  CHECK(res.ray[0] + res.ray[1] > r(0));
  CHECK(res.ray[0] >= r(0));
  CHECK(res.ray[1] >= r(0));
}

TEST_CASE("equality constraints and minimization", "[lp]") {
  LinearProgram lp;  // minimize 2x + 3y with x + y = 1
  lp.num_vars = 2;
  lp.maximize = false;
  lp.objective = {r(2), r(3)};
  lp.add_eq({r(1), r(1)}, r(1));
  auto res = lp_solve(lp);
  REQUIRE(res.status == LPStatus::optimal);
  CHECK(res.value == r(2));
  CHECK(res.x == std::vector<Rational>{r(1), r(0)});
  check_duality(lp, res);
}

TEST_CASE("degenerate and redundant rows", "[lp]") {
  LinearProgram lp;  // duplicated equalities and a redundant inequality
  lp.num_vars = 2;
  lp.objective = {r(1), r(2)};
  lp.add_eq({r(1), r(1)}, r(1));
  lp.add_eq({r(2), r(2)}, r(2));
  lp.add_le({r(1), r(0)}, r(5));
  auto res = lp_solve(lp);
  REQUIRE(res.status == LPStatus::optimal);
  CHECK(res.value == r(2));
  check_duality(lp, res);
}

TEST_CASE("greedy arc-flow optimum equals the corner optimum", "[lp]") {
  // maximize u . v over fractional arc flows, u = (3, 2, 1): both routes
  // must give the best corner value, which is 3 at (1, 0, 0).
  int n = 3;
  std::vector<std::vector<int>> var(n + 1, std::vector<int>(n + 1, -1));
  int nv = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= i; ++j) var[i][j] = nv++;
  LinearProgram lp;
  lp.num_vars = nv;
  lp.objective.assign(nv, r(0));
  std::vector<Rational> u{r(3), r(2), r(1)};
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= i; ++j) lp.objective[var[i][j]] = u[j - 1] / r(n);
  for (int i = 1; i <= n; ++i) {
    std::vector<Rational> a(nv, r(0));
    for (int j = 1; j <= i; ++j) a[var[i][j]] = r(1);
    lp.add_eq(std::move(a), r(1));
  }
  for (int i = 1; i <= n; ++i)
    for (int j = 2; j < i; ++j) {
      std::vector<Rational> a(nv, r(0));
      a[var[i][j]] = r(1);
      lp.add_le(std::move(a), r(1, 2));
    }
  auto res = lp_solve(lp);
  REQUIRE(res.status == LPStatus::optimal);

  Rational best;
  bool first = true;
  for (const auto& c : corners(3)) {
    Rational val;
    for (int i = 1; i <= 3; ++i) val += u[i - 1] * c[i];
    if (first || val > best) best = val;
    first = false;
  }
  CHECK(best == r(3));
  CHECK(res.value == best);
  check_duality(lp, res);
}

TEST_CASE("random feasible systems: solution exactness and duality", "[lp]") {
  detail::SplitMix64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    int nv = 2 + static_cast<int>(rng.next() % 3);
    int nr = 1 + static_cast<int>(rng.next() % 3);
    LinearProgram lp;
    lp.num_vars = nv;
    lp.maximize = (rng.next() & 1) != 0;
    lp.objective.assign(nv, r(0));
    for (auto& c : lp.objective)
      c = r(static_cast<long>(rng.next() % 11) - 5, 1 + rng.next() % 3);
    for (int k = 0; k < nr; ++k) {
      std::vector<Rational> a(nv);
      for (auto& v : a) v = r(static_cast<long>(rng.next() % 7), 1 + rng.next() % 2);
      lp.add_le(std::move(a), r(1 + static_cast<long>(rng.next() % 5)));
    }
    // x bounded above to rule out unboundedness
    for (int j = 0; j < nv; ++j) {
      std::vector<Rational> a(nv, r(0));
      a[j] = r(1);
      lp.add_le(std::move(a), r(3));
    }
    auto res = lp_solve(lp);
    REQUIRE(res.status == LPStatus::optimal);
    CHECK(feasible(lp, res.x));
    check_duality(lp, res);
  }
}
