#include <tourney/membership.hpp>
#include <tourney/samples.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace tourney;

namespace {
Rational r(long n, long d = 1) { return Rational(n, d); }

void check_separator(const MembershipResult& res, const WinVector& x,
                     const std::vector<WinVector>& cs) {
  REQUIRE(res.separator.has_value());
  REQUIRE(res.separator_offset.has_value());
  const auto& u = *res.separator;
  Rational at_x = *res.separator_offset;
  for (int i = 1; i <= x.n(); ++i) at_x += u[i - 1] * x[i];
  CHECK(at_x > r(0));
  for (const auto& c : cs) {
    Rational at_c = *res.separator_offset;
    for (int i = 1; i <= x.n(); ++i) at_c += u[i - 1] * c[i];
    CHECK(at_c <= r(0));
  }
}
}  // namespace

TEST_CASE("uniform vector is a member with the identity flow", "[membership]") {
  auto res = arc_flow_membership(WinVector::uniform(4));
  REQUIRE(res.member);
  REQUIRE(res.flow.has_value());
  res.flow->validate();
  CHECK(res.flow->vector() == WinVector::uniform(4));
}

TEST_CASE("pentagon vertices are members; outside points are rejected",
          "[membership]") {
  CHECK(arc_flow_membership(WinVector({r(1, 3), r(1, 2), r(1, 6)})).member);
  CHECK(hull_membership(WinVector({r(1, 3), r(1, 2), r(1, 6)})).member);

  // x3 > 1/3 is impossible for three players
  auto bad = WinVector({r(1, 4), r(1, 4), r(1, 2)});
  auto af = arc_flow_membership(bad);
  CHECK_FALSE(af.member);
  check_separator(af, bad, corners(3));

  // x1 < 1/3 is impossible as well
  auto low = WinVector({r(3, 10), r(2, 5), r(3, 10)});
  auto hull = hull_membership(low);
  CHECK_FALSE(hull.member);
  check_separator(hull, low, corners(3));
}

TEST_CASE("hull witness reconstructs the point", "[membership]") {
  auto cs = corners(3);
  // midpoint of the two unfair vertices
  std::vector<Rational> mid(3);
  WinVector v1({r(1, 3), r(1, 2), r(1, 6)}), v2({r(2, 3), r(0), r(1, 3)});
  for (int i = 1; i <= 3; ++i) mid[i - 1] = (v1[i] + v2[i]) / r(2);
  WinVector x(mid);
  auto res = hull_membership(x);
  REQUIRE(res.member);
  REQUIRE(res.lambdas.has_value());
  Rational total;
  std::vector<Rational> recon(3, r(0));
  for (size_t c = 0; c < cs.size(); ++c) {
    total += (*res.lambdas)[c];
    for (int i = 1; i <= 3; ++i) recon[i - 1] += (*res.lambdas)[c] * cs[c][i];
  }
  CHECK(total == r(1));
  CHECK(WinVector(recon) == x);
}

TEST_CASE("membership tests agree on random points", "[membership]") {
  detail::SplitMix64 rng(kSampleSeed);
  for (int n = 3; n <= 4; ++n) {
    auto cs = corners(n);
    for (int k = 0; k < 40; ++k) {
      WinVector x = random_simplex_point(n, rng);
      bool a = arc_flow_membership(x).member;
      bool h = hull_membership(x, cs).member;
      CHECK(a == h);
    }
  }
}

TEST_CASE("every generator vector is accepted by both tests", "[membership]") {
  for (int n = 2; n <= 4; ++n) {
    auto cs = corners(n);
    for (const auto& g : enumerate_digraphs(n)) {
      auto v = graph_vector(g);
      CHECK(arc_flow_membership(v).member);
      CHECK(hull_membership(v, cs).member);
    }
  }
}

TEST_CASE("sorted vectors always belong to the polytope", "[membership]") {
  detail::SplitMix64 rng(kSampleSeed + 1);
  for (int n = 3; n <= 5; ++n) {
    for (int k = 0; k < 34; ++k) {
      auto x = random_simplex_point(n, rng);
      auto comps = x.components();
      std::sort(comps.rbegin(), comps.rend());
      WinVector sorted(comps);
      CHECK(arc_flow_membership(sorted).member);
    }
  }
}

TEST_CASE("four-player corner extremes", "[membership]") {
  auto cs = corners(4);
  Rational min_x1 = cs[0][1], max_x3 = cs[0][3];
  for (const auto& c : cs) {
    min_x1 = std::min(min_x1, c[1]);
    max_x3 = std::max(max_x3, c[3]);
  }
  CHECK(min_x1 == r(1, 4));
  CHECK(max_x3 == r(3, 8));
}

TEST_CASE("distance to hull is zero exactly on members", "[membership]") {
  auto cs = corners(3);
  CHECK(linf_distance_to_hull(WinVector::uniform(3), cs) == r(0));
  auto far = WinVector({r(0), r(0), r(1)});
  Rational d = linf_distance_to_hull(far, cs);
  CHECK(d > r(0));
  CHECK(d == r(2, 3));  // x3 must drop from 1 to 1/3
}
