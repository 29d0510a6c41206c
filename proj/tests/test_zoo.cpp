#include <tourney/analysis.hpp>
#include <tourney/membership.hpp>
#include <tourney/samples.hpp>
#include <tourney/simulate.hpp>
#include <tourney/zoo.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace tourney;

namespace {
Rational r(long n, long d = 1) { return Rational(n, d); }

Rational linf(const WinVector& a, const WinVector& b) {
  Rational best;
  for (int i = 1; i <= a.n(); ++i) best = std::max(best, abs(a[i] - b[i]));
  return best;
}
}  // namespace

TEST_CASE("unfair three-player tournaments", "[zoo]") {
  CHECK_THROWS(make_unfair3(Unfair3Variant::t1, 1));
  CHECK(exact_win_vector(make_unfair3(Unfair3Variant::t1, 2), MatchMatrix::uniform(3))
            .win_vector == WinVector::uniform(3));
  CHECK(exact_win_vector(make_unfair3(Unfair3Variant::t2, 2), MatchMatrix::uniform(3))
            .win_vector == WinVector::uniform(3));
  // threshold is ceil(3N/4): for N = 2 a player must win both matches
  auto t = make_unfair3(Unfair3Variant::t2, 2);
  auto wv = exact_win_vector(t, pstar()).win_vector;
  CHECK(wv == WinVector({r(7, 12), r(1, 6), r(1, 4)}));
}

TEST_CASE("repeated round-robin with max rule", "[zoo]") {
  auto P = pstar();
  auto wv1 = exact_win_vector(make_roundrobin_repeat(3, 1, Tiebreak::max_uniform), P)
                 .win_vector;
  CHECK(wv1 == WinVector({r(7, 12), r(1, 3), r(1, 12)}));
  auto wv2 = exact_win_vector(make_roundrobin_repeat(3, 2, Tiebreak::max_uniform), P)
                 .win_vector;
  CHECK(wv2 == WinVector({r(17, 24), r(13, 48), r(1, 48)}));
  // drifts towards (1, 0, 0): player 1's lead grows with N
  WinVector limit({r(1), r(0), r(0)});
  CHECK(linf(wv2, limit) < linf(wv1, limit));
  for (const auto& wv : {wv1, wv2}) CHECK(wv[1] > wv[2]);

  CHECK(exact_win_vector(make_roundrobin_repeat(3, 2, Tiebreak::max_uniform),
                         MatchMatrix::uniform(3))
            .win_vector == WinVector::uniform(3));
}

TEST_CASE("repeated round-robin with min-out rule", "[zoo]") {
  CHECK_THROWS(make_roundrobin_repeat(4, 1, Tiebreak::min_out_then_coin));
  auto P = pstar();
  auto wv1 =
      exact_win_vector(make_roundrobin_repeat(3, 1, Tiebreak::min_out_then_coin), P)
          .win_vector;
  CHECK(wv1 == WinVector({r(11, 24), r(1, 3), r(5, 24)}));
  auto wv2 =
      exact_win_vector(make_roundrobin_repeat(3, 2, Tiebreak::min_out_then_coin), P)
          .win_vector;
  CHECK(wv2 == WinVector({r(47, 96), r(35, 96), r(7, 48)}));
  // drifts towards (1/2, 1/2, 0)
  WinVector limit({r(1, 2), r(1, 2), r(0)});
  CHECK(linf(wv2, limit) < linf(wv1, limit));
}

TEST_CASE("uniform lottery", "[zoo]") {
  detail::SplitMix64 rng(61);
  auto t = make_uniform_winner(5);
  CHECK(exact_win_vector(t, random_interior_matrix(5, rng)).win_vector ==
        WinVector::uniform(5));
  CHECK(exact_win_vector(make_uniform_winner(1), MatchMatrix::uniform(1)).win_vector ==
        WinVector({r(1)}));
}

TEST_CASE("single elimination with random seeding", "[zoo]") {
  CHECK_THROWS(make_single_elim_random(3));
  CHECK_THROWS(make_single_elim_random(1));

  auto two = make_single_elim_random(2);
  auto P2 = MatchMatrix::from_upper(2, {r(7, 10)});
  CHECK(exact_win_vector(two, P2).win_vector == WinVector({r(7, 10), r(3, 10)}));

  auto four = make_single_elim_random(4);
  CHECK(exact_win_vector(four, MatchMatrix::uniform(4)).win_vector ==
        WinVector::uniform(4));

  // strength-ordered matrix: win probabilities must be sorted
  detail::SplitMix64 rng(67);
  auto dm = random_doubly_monotonic(4, rng);
  CHECK(exact_win_vector(four, dm).win_vector.sorted_non_increasing());
}

TEST_CASE("uniform strict map", "[zoo][maps]") {
  auto h = uniform_strict_map(3);
  CHECK(h(MatchMatrix::uniform(3)) == WinVector::uniform(3));
  CHECK(h(pstar()) == WinVector({r(1, 2), r(1, 3), r(1, 6)}));
  // strictly increasing in each off-diagonal entry
  auto P = MatchMatrix::from_upper(3, {r(1, 2), r(3, 5), r(1, 2)});
  auto Q = MatchMatrix::from_upper(3, {r(11, 20), r(3, 5), r(1, 2)});
  CHECK(h(Q)[1] > h(P)[1]);
  CHECK(h(Q)[2] < h(P)[2]);
}

TEST_CASE("strictified maps stay close to the original", "[zoo][maps]") {
  auto g = induced_map(make_unfair3(Unfair3Variant::t1, 2));
  auto f = strictify_map(g, r(1, 5));
  detail::SplitMix64 rng(71);
  for (int k = 0; k < 20; ++k) {
    auto P = random_interior_matrix(3, rng);
    CHECK(linf(f(P), g(P)) <= r(1, 10));  // eps / 2
  }
  auto h = uniform_strict_map(3);
  CHECK(strictify_map(h, r(1))(pstar()) == h(pstar()));
  CHECK(strictify_map(constant_map(3, WinVector::uniform(3)), r(1, 2))(
            MatchMatrix::uniform(3)) == WinVector::uniform(3));
  CHECK_THROWS(strictify_map(g, r(0)));
  CHECK_THROWS(strictify_map(g, r(3, 2)));
}

TEST_CASE("map tournaments realize their map", "[zoo][maps]") {
  // constant map: any N
  auto c = make_map_tournament(constant_map(3, WinVector::uniform(3)), 3, 2);
  CHECK(exact_win_vector(c, pstar()).win_vector == WinVector::uniform(3));

  // single match through h on two players reproduces the match distribution
  auto h2 = uniform_strict_map(2);
  auto t = make_map_tournament(h2, 2, 1);
  auto P = MatchMatrix::from_upper(2, {r(2, 3)});
  CHECK(exact_win_vector(t, P).win_vector == WinVector({r(2, 3), r(1, 3)}));

  // the map tournament of an induced map approaches the original tournament
  auto base = make_unfair3(Unfair3Variant::t1, 2);
  auto f = induced_map(base);
  auto exact_base = exact_win_vector(base, pstar()).win_vector;
  Rational d2 = linf(exact_win_vector(make_map_tournament(f, 3, 2), pstar()).win_vector,
                     exact_base);
  Rational d6 = linf(exact_win_vector(make_map_tournament(f, 3, 6), pstar()).win_vector,
                     exact_base);
  CHECK(d6 < d2);
  CHECK(d6 < r(1, 10));
}

TEST_CASE("graph tournament spec validation", "[zoo][graph]") {
  auto G = sigma_to_digraph(Permutation({2, 3, 1, 4}));
  CHECK_THROWS(make_graph_tournament({G, pstar(), 1}));  // size mismatch / n < 4
  // matrix violating the 4-player chain: p23 > p12 reversed order
  auto bad = MatchMatrix::from_upper(4, {r(11, 20), r(3, 5), r(9, 10), r(5, 8),
                                         r(17, 20), r(4, 5)});
  CHECK_THROWS(make_graph_tournament({G, bad, 1}));
  CHECK_NOTHROW(make_graph_tournament({G, default_graph_matrix(4), 1}));
}

TEST_CASE("graph tournament: all-loops digraph is the pure lottery", "[zoo][graph]") {
  Digraph loops(4, {{1, 1}, {2, 2}, {3, 3}, {4, 4}});
  auto t = make_graph_tournament({loops, default_graph_matrix(4), 2});
  // no arcs between distinct players: every token has weight zero, so the
  // excluded player always wins and the vector is uniform for any matrix
  CHECK(exact_win_vector(t, default_graph_matrix(4)).win_vector ==
        WinVector::uniform(4));
  CHECK(exact_win_vector(t, MatchMatrix::uniform(4)).win_vector ==
        WinVector::uniform(4));
}

TEST_CASE("graph tournament token budget stays within one", "[zoo][graph]") {
  auto P = default_graph_matrix(4);
  GraphTournamentCore core(P, 1);
  long long m = 3;
  for (const auto& G : enumerate_digraphs(4)) {
    for (Player excl = 1; excl <= 4; ++excl) {
      std::vector<long long> counts(m, 0);
      for (;;) {
        auto cands = core.identify_all(excl, counts);
        CHECK_NOTHROW(core.token_total(G, cands));
        int k = static_cast<int>(m) - 1;
        while (k >= 0 && ++counts[k] > 1) counts[k--] = 0;
        if (k < 0) break;
      }
    }
  }
}

TEST_CASE("graph tournament matches the enumeration oracle", "[zoo][graph]") {
  // single transfer arc 3 -> 2, loops elsewhere; expected vector frozen from
  // an independent outcome-enumeration oracle
  auto P = default_graph_matrix(4);
  Digraph G(4, {{1, 1}, {2, 2}, {2, 3}, {4, 4}});
  CHECK(graph_vector(G) == WinVector({r(1, 4), r(3, 8), r(1, 8), r(1, 4)}));
  auto wv = exact_win_vector(make_graph_tournament({G, P, 1}), P).win_vector;
  CHECK(wv == WinVector({r(28437, 80000), r(4271, 16000), r(3551, 16000),
                         r(12453, 80000)}));
}

TEST_CASE("frugal construction stays inside the polytope", "[zoo][graph]") {
  // exact win vectors of the digraph tournament at doubly monotonic matrices
  // must be members of the generated polytope, by the frugality theorem
  auto P = default_graph_matrix(4);
  auto cs = corners(4);
  detail::SplitMix64 rng(73);
  std::vector<Digraph> gs{
      Digraph(4, {{1, 1}, {2, 2}, {2, 3}, {4, 4}}),
      sigma_to_digraph(Permutation({2, 3, 1, 4})),
      sigma_to_digraph(Permutation({4, 1, 2, 3})),
  };
  for (const auto& G : gs) {
    auto t = make_graph_tournament({G, P, 1});
    for (const auto& Q :
         {DoublyMonotonicWitness::check(P), DoublyMonotonicWitness::check(
                                                random_doubly_monotonic(4, rng))}) {
      auto wv = exact_win_vector(t, Q.matrix).win_vector;
      CHECK(hull_membership(wv, cs).member);
      CHECK(arc_flow_membership(wv).member);
    }
  }
}

TEST_CASE("simulated frugal vectors stay near the polytope", "[zoo][graph]") {
  // empirical frequencies are exact rationals (counts / trials); their
  // distance to the generated polytope is bounded by sampling noise
  auto P = default_graph_matrix(4);
  auto cs = corners(4);
  auto G = sigma_to_digraph(Permutation({2, 3, 1, 4}));
  auto t = make_graph_tournament({G, P, 20});
  auto rep = simulate(t, P, 20000, 424242);
  std::vector<Rational> comps(4);
  for (int i = 0; i < 4; ++i)
    comps[i] = Rational(static_cast<long>(rep.counts[i]),
                        static_cast<long>(rep.trials));
  Rational d = linf_distance_to_hull(WinVector(comps), cs);
  CHECK(d <= r(3, 100));
}

TEST_CASE("rounds example: conditionals follow the split rule", "[zoo][rounds]") {
  auto R = make_rounds_example();
  // fix pairing {1,2},{3,4}; after round 1, player 1's chances depend on the
  // outcome of his own round-1 match through the other pair's split
  for (long pnum : {1L, 2L}) {
    Rational p(pnum, 3);  // p34 = p
    auto P = MatchMatrix::from_upper(
        4, {r(1, 2), r(1, 2), r(1, 2), r(1, 2), r(1, 2), p});
    Rational after_win = (p * p + (r(1) - p) * (r(1) - p)) / r(2);
    Rational after_loss = p * (r(1) - p);

    // round-1 state with pairing 0: condition on player 1's own result only,
    // the other pair's match follows P
    auto cond_round1 = [&](bool win) {
      Rational total;
      auto step = R.step(State{1, 0});
      auto* rd = std::get_if<RoundDecision>(&step);
      REQUIRE(rd != nullptr);
      for (long long mask = 0; mask < 4; ++mask) {
        if (((mask & 1) != 0) != win) continue;
        auto [a, b] = rd->pairs[1];
        Rational w = (mask >> 1) & 1 ? P.p(a, b) : P.p(b, a);
        auto sub = detail::eval_rounds(R, P, rd->successors[mask], 0);
        total += w * sub[0];
      }
      return total;
    };
    CHECK(cond_round1(true) == after_win);
    CHECK(cond_round1(false) == after_loss);
    CHECK(after_win > after_loss);
  }
}

TEST_CASE("probe fixtures behave as designed", "[zoo]") {
  auto P = MatchMatrix::uniform(2);
  auto after = make_coin_after_match(r(9, 10));
  CHECK(exact_win_vector(after, P).win_vector == WinVector::uniform(2));
  auto before = make_coin_before_match(r(9, 10));
  CHECK(exact_win_vector(before, P).win_vector == WinVector::uniform(2));
  auto fixed = make_fixed_winner(3, 2);
  CHECK(exact_win_vector(fixed, MatchMatrix::uniform(3)).win_vector ==
        WinVector::unit(3, 2));
  auto futile = make_futile_probe(3);
  CHECK(exact_win_vector(futile, pstar()).win_vector == WinVector::uniform(3));
}
