#include <tourney/digraph.hpp>
#include <tourney/membership.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <set>

using namespace tourney;

namespace {
Rational r(long n, long d = 1) { return Rational(n, d); }

WinVector wv3(long a1, long b1, long a2, long b2, long a3, long b3) {
  return WinVector({Rational(a1, b1), Rational(a2, b2), Rational(a3, b3)});
}
}  // namespace

TEST_CASE("family counts match the product formula", "[digraph]") {
  CHECK(enumerate_digraphs(1).size() == 1);
  CHECK(enumerate_digraphs(2).size() == 3);
  CHECK(enumerate_digraphs(3).size() == 15);
  CHECK(enumerate_digraphs(4).size() == 120);
  CHECK(digraph_count(5) == 1440);
  CHECK(digraph_count(6) == 24480);
  CHECK(enumerate_digraphs(5, 6).size() == 1440);
  CHECK_THROWS_AS(enumerate_digraphs(7), SizeGuardError);
  CHECK(enumerate_digraphs(1)[0].arc_count(1, 1) == 2);  // two loops at vertex 1
}

TEST_CASE("rules are enforced on construction", "[digraph]") {
  CHECK_THROWS(Digraph(3, {{1, 1}, {2, 2}, {2, 2}}));  // doubled target 2 from 3
  CHECK_THROWS(Digraph(3, {{1, 2}, {2, 2}, {3, 3}}));  // arc 1 -> 2 points up
  CHECK_NOTHROW(Digraph(3, {{1, 1}, {1, 1}, {1, 3}}));
}

TEST_CASE("graph vectors match the corner table rows", "[digraph]") {
  // all-loops: uniform
  Digraph loops(3, {{1, 1}, {2, 2}, {3, 3}});
  CHECK(graph_vector(loops) == WinVector::uniform(3));

  CHECK(graph_vector(sigma_to_digraph(Permutation({2, 3, 1}))) ==
        wv3(1, 3, 1, 2, 1, 6));
  CHECK(graph_vector(sigma_to_digraph(Permutation({3, 1, 2}))) ==
        wv3(2, 3, 0, 1, 1, 3));
  CHECK(graph_vector(sigma_to_digraph(Permutation({2, 1, 3}))) ==
        wv3(1, 2, 1, 2, 0, 1));
  CHECK(graph_vector(sigma_to_digraph(Permutation({1, 2, 3}))) == wv3(1, 1, 0, 1, 0, 1));
  CHECK(graph_vector(sigma_to_digraph(Permutation({3, 2, 1}))) == WinVector::uniform(3));

  // two-player rows
  CHECK(graph_vector(sigma_to_digraph(Permutation({1, 2}))) ==
        WinVector({r(1), r(0)}));
  CHECK(graph_vector(sigma_to_digraph(Permutation({2, 1}))) ==
        WinVector({r(1, 2), r(1, 2)}));
}

TEST_CASE("equivalent orders collapse to one digraph", "[digraph]") {
  CHECK(sigma_to_digraph(Permutation({1, 2, 3})) ==
        sigma_to_digraph(Permutation({1, 3, 2})));
  // S_3 has 6 permutations; (1,2,3) and (1,3,2) share a digraph, so 5 rows.
  CHECK(corner_table(3).size() == 5);
  CHECK(corner_table(2).size() == 2);
}

TEST_CASE("corner sequences satisfy the counting recurrence", "[digraph]") {
  CHECK(corner_sequences(1) == std::vector<std::vector<int>>{{1}});
  auto two = corner_sequences(2);
  REQUIRE(two.size() == 2);
  CHECK(std::set<std::vector<int>>(two.begin(), two.end()) ==
        std::set<std::vector<int>>{{1}, {2, 1}});
  CHECK(corner_sequences(3).size() == 5);
  CHECK(corner_sequences(4).size() == 14);
  CHECK(corner_sequences(5).size() == 41);
  // a_n = 3 a_{n-1} - 1
  for (int n = 2; n <= 8; ++n)
    CHECK(corner_count(n) == 3 * corner_count(n - 1) - 1);
}

TEST_CASE("corners of the three-player polytope are the pentagon vertices",
          "[digraph]") {
  auto cs = corners(3);
  std::set<WinVector> got(cs.begin(), cs.end());
  std::set<WinVector> want{wv3(1, 3, 1, 2, 1, 6), wv3(2, 3, 0, 1, 1, 3),
                           wv3(1, 1, 0, 1, 0, 1), wv3(1, 2, 1, 2, 0, 1),
                           wv3(1, 3, 1, 3, 1, 3)};
  CHECK(got == want);
}

TEST_CASE("corner counts and distinctness", "[digraph]") {
  CHECK(corners(2).size() == 2);
  CHECK(corners(4).size() == 14);
  CHECK(corners(5).size() == 41);
  auto c6 = corners(6);
  std::set<WinVector> distinct(c6.begin(), c6.end());
  CHECK(distinct.size() == 122);
}

TEST_CASE("every corner is a vertex: not in the hull of the others", "[digraph]") {
  for (int n = 2; n <= 4; ++n) {
    auto cs = corners(n);
    for (size_t k = 0; k < cs.size(); ++k) {
      std::vector<WinVector> others;
      for (size_t j = 0; j < cs.size(); ++j)
        if (j != k) others.push_back(cs[j]);
      CHECK_FALSE(hull_membership(cs[k], others).member);
    }
  }
}

TEST_CASE("indegree identity holds on the whole family", "[digraph]") {
  for (const auto& g : enumerate_digraphs(4)) {
    auto v = graph_vector(g);  // throws if the two formulas disagree
    Rational sum;
    int total_indeg = 0;
    for (int i = 1; i <= 4; ++i) {
      sum += v[i];
      total_indeg += g.indegree(i);
    }
    CHECK(sum == Rational(1));
    CHECK(total_indeg == 8);
  }
}
