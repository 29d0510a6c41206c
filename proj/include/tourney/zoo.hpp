#pragma once

// Concrete tournaments: the two unfair three-player constructions, repeated
// round-robin with max/min tie rules, the uniform lottery, single elimination
// with random seeding, map-backed tournaments, the digraph tournament, the
// two-round pairing example, and small probe fixtures used by the property
// checkers.

#include <tourney/digraph.hpp>
#include <tourney/maps.hpp>
#include <tourney/matrix.hpp>
#include <tourney/rounds.hpp>
#include <tourney/tournament.hpp>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tourney {

namespace detail {

// Lexicographic unordered pairs of a sorted player list.
inline std::vector<std::pair<Player, Player>> pairs_of(const std::vector<Player>& ps) {
  std::vector<std::pair<Player, Player>> out;
  for (size_t i = 0; i < ps.size(); ++i)
    for (size_t j = i + 1; j < ps.size(); ++j) out.push_back({ps[i], ps[j]});
  return out;
}

}  // namespace detail

enum class Unfair3Variant { t1, t2 };

// Excludes one player at random; the other two play N matches. A player with
// at least ceil(3N/4) wins is the "big winner". Variant t1 flips a coin
// between the big winner and the excluded player (or between the two playing
// players when there is no big winner); t2 declares the big winner outright
// (or the excluded player when there is none).
inline Tournament make_unfair3(Unfair3Variant variant, int N) {
  if (N < 2) throw TourneyError("make_unfair3: N must be >= 2");
  Tournament t;
  t.n = 3;
  t.initial = {0};
  t.max_matches = N;
  t.name = variant == Unfair3Variant::t1 ? "t1" : "t2";
  long long threshold = (3LL * N + 3) / 4;  // ceil(3N/4)
  t.step = [variant, N, threshold](const State& s) -> Decision {
    if (s[0] == 0) {
      ChanceDecision c;
      for (long long excl = 1; excl <= 3; ++excl)
        c.branches.push_back({Rational(1, 3), State{1, excl, 0, 0}});
      return c;
    }
    if (s[0] == 2) return WinnerDecision{static_cast<Player>(s[1])};
    long long excl = s[1], played = s[2], wins_lo = s[3];
    Player lo = excl == 1 ? 2 : 1;
    Player hi = excl == 3 ? 2 : 3;
    if (played < N)
      return MatchDecision{lo, hi, State{1, excl, played + 1, wins_lo + 1},
                           State{1, excl, played + 1, wins_lo}};
    long long big = 0;
    if (wins_lo >= threshold)
      big = lo;
    else if (N - wins_lo >= threshold)
      big = hi;
    if (variant == Unfair3Variant::t2) {
      return WinnerDecision{static_cast<Player>(big != 0 ? big : excl)};
    }
    Player a = big != 0 ? static_cast<Player>(big) : lo;
    Player b = big != 0 ? static_cast<Player>(excl) : hi;
    return ChanceDecision{{{Rational(1, 2), State{2, a}}, {Rational(1, 2), State{2, b}}}};
  };
  return t;
}

enum class Tiebreak { max_uniform, min_out_then_coin };

// N iterations of full round-robin. max_uniform picks uniformly among the
// players with the most wins; min_out_then_coin (3 players only) excludes a
// uniformly chosen minimum-win player and flips a coin between the rest.
inline Tournament make_roundrobin_repeat(int n, int N, Tiebreak tiebreak) {
  if (n < 2 || N < 1) throw TourneyError("make_roundrobin_repeat: need n >= 2, N >= 1");
  if (tiebreak == Tiebreak::min_out_then_coin && n != 3)
    throw TourneyError("min_out_then_coin is defined for n = 3 only");
  auto pairs = detail::pairs_of([n] {
    std::vector<Player> ps(n);
    for (int i = 0; i < n; ++i) ps[i] = i + 1;
    return ps;
  }());
  long long m = static_cast<long long>(pairs.size());
  Tournament t;
  t.n = n;
  t.max_matches = static_cast<int>(N * m);
  t.name = tiebreak == Tiebreak::max_uniform ? "rr-max" : "rr-min-coin";
  t.initial = State(2 + n, 0);
  t.initial[0] = 1;
  t.step = [n, N, m, pairs, tiebreak](const State& s) -> Decision {
    if (s[0] == -1) return WinnerDecision{static_cast<Player>(s[1])};
    if (s[0] == -2) {
      // excluded = s[1]; coin between the other two
      ChanceDecision c;
      for (Player p = 1; p <= 3; ++p)
        if (p != s[1]) c.branches.push_back({Rational(1, 2), State{-1, p}});
      return c;
    }
    long long idx = s[1];
    auto wins_at = [&](Player p) { return s[2 + p - 1]; };
    if (idx < N * m) {
      auto [a, b] = pairs[idx % m];
      State wa = s, wb = s;
      wa[1] = wb[1] = idx + 1;
      wa[2 + a - 1]++;
      wb[2 + b - 1]++;
      return MatchDecision{a, b, std::move(wa), std::move(wb)};
    }
    if (tiebreak == Tiebreak::max_uniform) {
      long long best = wins_at(1);
      for (Player p = 2; p <= n; ++p) best = std::max(best, wins_at(p));
      std::vector<Player> top;
      for (Player p = 1; p <= n; ++p)
        if (wins_at(p) == best) top.push_back(p);
      if (top.size() == 1) return WinnerDecision{top[0]};
      ChanceDecision c;
      for (Player p : top)
        c.branches.push_back({Rational(1, static_cast<long>(top.size())), State{-1, p}});
      return c;
    }
    long long worst = wins_at(1);
    for (Player p = 2; p <= 3; ++p) worst = std::min(worst, wins_at(p));
    std::vector<Player> bottom;
    for (Player p = 1; p <= 3; ++p)
      if (wins_at(p) == worst) bottom.push_back(p);
    ChanceDecision c;
    for (Player p : bottom)
      c.branches.push_back({Rational(1, static_cast<long>(bottom.size())), State{-2, p}});
    return c;
  };
  return t;
}

// Winner chosen uniformly at random; no matches at all.
inline Tournament make_uniform_winner(int n) {
  if (n < 1) throw TourneyError("make_uniform_winner: n must be >= 1");
  Tournament t;
  t.n = n;
  t.initial = {0};
  t.max_matches = 0;
  t.name = "uniform";
  t.step = [n](const State& s) -> Decision {
    if (s[0] == 0) {
      ChanceDecision c;
      for (Player p = 1; p <= n; ++p)
        c.branches.push_back({Rational(1, n), State{1, p}});
      return c;
    }
    return WinnerDecision{static_cast<Player>(s[1])};
  };
  return t;
}

// Knockout with a uniformly random bracket assignment.
// State: [1, L, bracket slots..., partial winners...].
inline Tournament make_single_elim_random(int n) {
  if (n < 2 || (n & (n - 1)) != 0)
    throw TourneyError("make_single_elim_random: n must be a power of two");
  Tournament t;
  t.n = n;
  t.initial = {0};
  t.max_matches = n - 1;
  t.name = "single-elim";
  t.step = [n](const State& s) -> Decision {
    if (s[0] == 0) {
      std::vector<int> perm(n);
      for (int i = 0; i < n; ++i) perm[i] = i + 1;
      long long fact = 1;
      for (int i = 2; i <= n; ++i) fact *= i;
      ChanceDecision c;
      do {
        State next{1, n};
        for (int p : perm) next.push_back(p);
        c.branches.push_back({Rational(1, fact), std::move(next)});
      } while (std::next_permutation(perm.begin(), perm.end()));
      return c;
    }
    long long L = s[1];
    if (L == 1) return WinnerDecision{static_cast<Player>(s[2])};
    long long k = static_cast<long long>(s.size()) - 2 - L;  // winners so far
    Player a = static_cast<Player>(s[2 + 2 * k]);
    Player b = static_cast<Player>(s[2 + 2 * k + 1]);
    auto advance = [&](Player w) -> State {
      if (2 * (k + 1) == L) {
        State next{1, L / 2};
        for (long long i = 0; i < k; ++i) next.push_back(s[2 + L + i]);
        next.push_back(w);
        return next;
      }
      State next = s;
      next.push_back(w);
      return next;
    };
    return MatchDecision{a, b, advance(a), advance(b)};
  };
  return t;
}

// N iterations of round-robin, then a lottery drawn from f applied to the
// empirical match matrix. The map must produce rational distributions.
inline Tournament make_map_tournament(const TournamentMap& f, int n, int N) {
  if (f.n != n) throw TourneyError("make_map_tournament: map size mismatch");
  if (N < 1) throw TourneyError("make_map_tournament: N must be >= 1");
  auto pairs = detail::pairs_of([n] {
    std::vector<Player> ps(n);
    for (int i = 0; i < n; ++i) ps[i] = i + 1;
    return ps;
  }());
  long long m = static_cast<long long>(pairs.size());
  Tournament t;
  t.n = n;
  t.max_matches = static_cast<int>(N * m);
  t.name = "map(" + f.name + ")";
  t.initial = State(2 + m, 0);
  t.initial[0] = 1;
  auto cache = std::make_shared<std::map<std::vector<long long>, WinVector>>();
  t.step = [n, N, m, pairs, f, cache](const State& s) -> Decision {
    if (s[0] == 2) return WinnerDecision{static_cast<Player>(s[1])};
    long long idx = s[1];
    if (idx < N * m) {
      auto [a, b] = pairs[idx % m];
      State wa = s, wb = s;
      wa[1] = wb[1] = idx + 1;
      wa[2 + idx % m]++;  // wins of the lower-numbered player
      return MatchDecision{a, b, std::move(wa), std::move(wb)};
    }
    std::vector<long long> key(s.begin() + 2, s.end());
    auto it = cache->find(key);
    if (it == cache->end()) {
      std::vector<Rational> upper(m);
      for (long long p = 0; p < m; ++p) upper[p] = Rational(key[p], N);
      it = cache->emplace(key, f(MatchMatrix::from_upper(n, upper))).first;
    }
    const WinVector& dist = it->second;
    ChanceDecision c;
    for (Player p = 1; p <= n; ++p)
      if (dist[p].sign() > 0) c.branches.push_back({dist[p], State{2, p}});
    return c;
  };
  return t;
}

struct TokenBudgetError : TourneyError {
  using TourneyError::TourneyError;
};

// The identification machinery shared by the digraph tournament's play path
// and the exhaustive well-definedness enumeration. A remainer identifies the
// other remainers with rows of the rule matrix by comparing win fractions
// within epsilon; on success the two missing row indices i < j are his own
// and the excluded player's, and he earns a token iff he beat everyone at
// the level expected of row i.
class GraphTournamentCore {
public:
  GraphTournamentCore(MatchMatrix P, int N) : P_(std::move(P)), N_(N) {
    n_ = P_.n();
    if (n_ < 4) throw TourneyError("graph tournament: n must be >= 4");
    if (N_ < 1) throw TourneyError("graph tournament: N must be >= 1");
    if (!is_doubly_monotonic(P_))
      throw TourneyError("graph tournament: rule matrix must be doubly monotonic");
    eps_ = epsilon_of(P_);
    if (n_ == 4) {
      // p14 > p24 > p34 > p13 > p12 > p23
      const Rational* chain[6] = {&P_.p(1, 4), &P_.p(2, 4), &P_.p(3, 4),
                                  &P_.p(1, 3), &P_.p(1, 2), &P_.p(2, 3)};
      for (int k = 0; k + 1 < 6; ++k)
        if (!(*chain[k] > *chain[k + 1]))
          throw TourneyError("graph tournament: 4-player rule matrix must satisfy "
                             "p14 > p24 > p34 > p13 > p12 > p23");
    }
  }

  int n() const { return n_; }
  int iterations() const { return N_; }
  const MatchMatrix& rule_matrix() const { return P_; }
  const Rational& epsilon() const { return eps_; }

  std::vector<Player> remainers(Player excl) const {
    std::vector<Player> out;
    for (Player p = 1; p <= n_; ++p)
      if (p != excl) out.push_back(p);
    return out;
  }

  // counts[k] = wins of the lower-numbered player of the k-th remainer pair.
  long long wins_between(const std::vector<Player>& rem,
                         const std::vector<long long>& counts, Player x,
                         Player y) const {
    auto pairs = detail::pairs_of(rem);
    for (size_t k = 0; k < pairs.size(); ++k) {
      if (pairs[k] == std::make_pair(std::min(x, y), std::max(x, y)))
        return x < y ? counts[k] : N_ - counts[k];
    }
    throw TourneyError("wins_between: pair not found");
  }

  struct TokenCandidate {
    Player player;
    int i, j;  // the two matrix rows not covered by his identification, i < j
  };

  // Token candidates for one completed play-through (G-independent).
  std::vector<TokenCandidate> identify_all(Player excl,
                                           const std::vector<long long>& counts) const {
    auto rem = remainers(excl);
    std::vector<TokenCandidate> out;
    for (Player a : rem) {
      std::vector<Player> others;
      for (Player x : rem)
        if (x != a) others.push_back(x);
      auto assignment = identify(rem, counts, others);
      if (!assignment) continue;
      std::vector<bool> used(n_ + 1, false);
      for (int u : *assignment) used[u] = true;
      int i = 0, j = 0;
      for (int v = 1; v <= n_; ++v)
        if (!used[v]) (i == 0 ? i : j) = v;
      bool passes = true;
      for (size_t x = 0; x < others.size(); ++x) {
        Rational r(wins_between(rem, counts, a, others[x]), N_);
        if (!(r > P_.p(i, (*assignment)[x]) - eps_)) {
          passes = false;
          break;
        }
      }
      if (passes) out.push_back(TokenCandidate{a, i, j});
    }
    return out;
  }

  // Total step-4 token weight for a digraph; throws if it exceeds one.
  Rational token_total(const Digraph& G,
                       const std::vector<TokenCandidate>& cands) const {
    Rational s;
    for (const auto& c : cands) s += Rational(G.arc_count(c.j, c.i), 2);
    if (s > Rational(1))
      throw TokenBudgetError("token weight " + s.str() + " exceeds 1");
    return s;
  }

private:
  // Unique tuple (u_x) of distinct rows matching the observed fractions of
  // `others`; nullopt when none matches, error when two do.
  std::optional<std::vector<int>> identify(const std::vector<Player>& rem,
                                           const std::vector<long long>& counts,
                                           const std::vector<Player>& others) const {
    size_t k = others.size();
    std::vector<Rational> q;  // fractions for pairs (x < y) in list order
    std::vector<std::pair<size_t, size_t>> qpairs;
    for (size_t x = 0; x < k; ++x)
      for (size_t y = x + 1; y < k; ++y) {
        q.push_back(Rational(wins_between(rem, counts, others[x], others[y]), N_));
        qpairs.push_back({x, y});
      }
    std::optional<std::vector<int>> found;
    std::vector<int> tuple(k, 0);
    std::vector<bool> used(n_ + 1, false);
    auto rec = [&](auto&& self, size_t pos) -> void {
      if (pos == k) {
        if (found)
          throw TourneyError(
              "graph tournament: two distinct identifications match (distinctness "
              "precondition violated)");
        found = tuple;
        return;
      }
      for (int u = 1; u <= n_; ++u) {
        if (used[u]) continue;
        tuple[pos] = u;
        bool ok = true;
        for (size_t t = 0; t < qpairs.size() && ok; ++t) {
          auto [x, y] = qpairs[t];
          if (y != pos) continue;
          if (!(abs(q[t] - P_.p(tuple[x], u)) < eps_)) ok = false;
        }
        if (!ok) continue;
        used[u] = true;
        self(self, pos + 1);
        used[u] = false;
      }
    };
    rec(rec, 0);
    return found;
  }

  MatchMatrix P_;
  int N_;
  int n_;
  Rational eps_;
};

struct GraphTournamentSpec {
  Digraph G;
  MatchMatrix P_param;
  int N = 1;
};

// The frugal digraph tournament: uniform exclusion, N round-robins among the
// rest, identification against the rule matrix, tokens per the digraph's
// arcs, and a lottery over the tokens (the excluded player holds the slack).
inline Tournament make_graph_tournament(const GraphTournamentSpec& spec) {
  auto core = std::make_shared<GraphTournamentCore>(spec.P_param, spec.N);
  if (spec.G.n() != core->n())
    throw TourneyError("make_graph_tournament: digraph size mismatch");
  Digraph G = spec.G;
  int n = core->n();
  long long N = spec.N;
  long long m = static_cast<long long>(n - 1) * (n - 2) / 2;
  Tournament t;
  t.n = n;
  t.initial = {0};
  t.max_matches = static_cast<int>(N * m);
  t.name = "graph";
  t.step = [core, G, n, N, m](const State& s) -> Decision {
    if (s[0] == 0) {
      ChanceDecision c;
      for (Player excl = 1; excl <= n; ++excl) {
        State next{1, excl, 0};
        next.resize(3 + m, 0);
        c.branches.push_back({Rational(1, n), std::move(next)});
      }
      return c;
    }
    if (s[0] == 2) return WinnerDecision{static_cast<Player>(s[1])};
    Player excl = static_cast<Player>(s[1]);
    long long idx = s[2];
    auto rem = core->remainers(excl);
    auto pairs = detail::pairs_of(rem);
    if (idx < N * m) {
      auto [a, b] = pairs[idx % m];
      State wa = s, wb = s;
      wa[2] = wb[2] = idx + 1;
      wa[3 + idx % m]++;
      return MatchDecision{a, b, std::move(wa), std::move(wb)};
    }
    std::vector<long long> counts(s.begin() + 3, s.end());
    auto cands = core->identify_all(excl, counts);
    Rational total = core->token_total(G, cands);
    ChanceDecision c;
    for (const auto& cand : cands) {
      Rational w(G.arc_count(cand.j, cand.i), 2);
      if (w.sign() > 0) c.branches.push_back({w, State{2, cand.player}});
    }
    if (total < Rational(1))
      c.branches.push_back({Rational(1) - total, State{2, excl}});
    return c;
  };
  return t;
}

// Rule matrices for the digraph tournament with the largest attainable
// epsilon: entries fill the maximal evenly spaced chain in [1/2, 1] along a
// monotone order, so identification tolerances are as forgiving as the
// distinctness requirement allows. The 4-player matrix additionally honours
// the p14 > p24 > p34 > p13 > p12 > p23 chain with a near-certain top entry.
inline MatchMatrix default_graph_matrix(int n) {
  if (n == 4)
    return MatchMatrix::from_upper(
        4, {Rational(3, 5), Rational(7, 10), Rational(999, 1000), Rational(11, 20),
            Rational(9, 10), Rational(4, 5)});
  if (n == 5)
    return MatchMatrix::from_upper(
        5, {Rational(11, 20), Rational(13, 20), Rational(19, 20), Rational(1),
            Rational(3, 5), Rational(4, 5), Rational(9, 10), Rational(3, 4),
            Rational(17, 20), Rational(7, 10)});
  throw TourneyError("default_graph_matrix: only n = 4 and n = 5 are provided");
}

// The two-round tournament: pair off uniformly, play the same pairs twice,
// then a coin decides which pair the winner comes from; a split in the other
// pair hands the win to the loser of the first match.
inline RoundsTournament make_rounds_example() {
  RoundsTournament r;
  r.n = 4;
  r.initial = {0};
  r.max_rounds = 2;
  r.name = "rounds-example";
  static const std::pair<Player, Player> kPairings[3][2] = {
      {{1, 2}, {3, 4}}, {{1, 3}, {2, 4}}, {{1, 4}, {2, 3}}};
  r.step = [](const State& s) -> RoundsStep {
    if (s[0] == 0) {
      ChanceDecision c;
      for (long long pi = 0; pi < 3; ++pi)
        c.branches.push_back({Rational(1, 3), State{1, pi}});
      return c;
    }
    if (s[0] == 4) return WinnerDecision{static_cast<Player>(s[1])};
    long long pi = s[1];
    auto pair0 = kPairings[pi][0];
    auto pair1 = kPairings[pi][1];
    if (s[0] == 1 || s[0] == 2) {
      RoundDecision rd;
      rd.pairs = {pair0, pair1};
      for (long long mask = 0; mask < 4; ++mask) {
        if (s[0] == 1)
          rd.successors.push_back(State{2, pi, mask});
        else
          rd.successors.push_back(State{3, pi, s[2], mask});
      }
      return rd;
    }
    // s = [3, pi, mask1, mask2]: coin toss decides the winning pair.
    long long m1 = s[2], m2 = s[3];
    auto winner_from = [&](std::pair<Player, Player> own,
                           std::pair<Player, Player> other, int own_bit,
                           int other_bit) -> Player {
      bool other_split = ((m1 >> other_bit) & 1) != ((m2 >> other_bit) & 1);
      bool own_first = (m1 >> own_bit) & 1;  // first-named player won round 1
      if (other_split) return own_first ? own.second : own.first;  // round-1 loser
      return own_first ? own.first : own.second;                   // round-1 winner
    };
    ChanceDecision c;
    c.branches.push_back(
        {Rational(1, 2), State{4, winner_from(pair0, pair1, 0, 1)}});
    c.branches.push_back(
        {Rational(1, 2), State{4, winner_from(pair1, pair0, 1, 0)}});
    return c;
  };
  return r;
}

// Two-player fixtures for the state-information distinction: the coin that
// keeps the match winner with probability p can be tossed after the match
// (honest) or before it (dishonest once the pre-drawn branch is reached).
inline Tournament make_coin_after_match(const Rational& p_keep) {
  Tournament t;
  t.n = 2;
  t.initial = {0};
  t.max_matches = 1;
  t.name = "coin-after-match";
  t.step = [p_keep](const State& s) -> Decision {
    if (s[0] == 0) return MatchDecision{1, 2, State{1, 1}, State{1, 2}};
    if (s[0] == 1) {
      Player w = static_cast<Player>(s[1]), l = w == 1 ? 2 : 1;
      ChanceDecision c;
      if (p_keep.sign() > 0) c.branches.push_back({p_keep, State{2, w}});
      if (p_keep < Rational(1))
        c.branches.push_back({Rational(1) - p_keep, State{2, l}});
      return c;
    }
    return WinnerDecision{static_cast<Player>(s[1])};
  };
  return t;
}

inline Tournament make_coin_before_match(const Rational& p_keep) {
  Tournament t;
  t.n = 2;
  t.initial = {0};
  t.max_matches = 1;
  t.name = "coin-before-match";
  t.step = [p_keep](const State& s) -> Decision {
    if (s[0] == 0) {
      ChanceDecision c;
      if (p_keep.sign() > 0) c.branches.push_back({p_keep, State{1, 0}});
      if (p_keep < Rational(1))
        c.branches.push_back({Rational(1) - p_keep, State{1, 1}});
      return c;
    }
    if (s[0] == 1)
      return MatchDecision{1, 2, State{2, s[1], 1}, State{2, s[1], 2}};
    Player match_winner = static_cast<Player>(s[2]);
    Player other = match_winner == 1 ? 2 : 1;
    return WinnerDecision{s[1] == 0 ? match_winner : other};
  };
  return t;
}

// Declares a fixed winner without playing; blatantly asymmetric.
inline Tournament make_fixed_winner(int n, Player k) {
  Tournament t;
  t.n = n;
  t.initial = {0};
  t.max_matches = 0;
  t.name = "fixed-winner";
  t.step = [k](const State&) -> Decision { return WinnerDecision{k}; };
  return t;
}

// Plays one match between players 1 and 2, ignores the result, and draws the
// winner uniformly: futile but not matchless.
inline Tournament make_futile_probe(int n) {
  if (n < 2) throw TourneyError("make_futile_probe: n must be >= 2");
  Tournament t;
  t.n = n;
  t.initial = {0};
  t.max_matches = 1;
  t.name = "futile-probe";
  t.step = [n](const State& s) -> Decision {
    if (s[0] == 0) return MatchDecision{1, 2, State{1}, State{1}};
    if (s[0] == 1) {
      ChanceDecision c;
      for (Player p = 1; p <= n; ++p)
        c.branches.push_back({Rational(1, n), State{2, p}});
      return c;
    }
    return WinnerDecision{static_cast<Player>(s[1])};
  };
  return t;
}

}  // namespace tourney
