#pragma once

// Tournaments with rounds: a round announces vertex-disjoint pairs played
// simultaneously. Evaluation branches over the joint outcome; the
// sequentializer lowers a rounds tournament to an ordinary one by ordering
// each round's matches uniformly at random.

#include <tourney/matrix.hpp>
#include <tourney/tournament.hpp>

#include <algorithm>
#include <functional>
#include <numeric>
#include <variant>
#include <vector>

namespace tourney {

struct RoundDecision {
  std::vector<std::pair<Player, Player>> pairs;
  // successors[mask]: bit k of mask set means pairs[k].first won.
  std::vector<State> successors;
};

using RoundsStep = std::variant<RoundDecision, ChanceDecision, WinnerDecision>;

struct RoundsTournament {
  int n = 0;
  State initial;
  int max_rounds = 0;
  std::function<RoundsStep(const State&)> step;
  std::string name;
};

namespace detail {

inline void check_round(const RoundDecision& r, int n) {
  std::vector<bool> used(n + 1, false);
  for (auto [a, b] : r.pairs) {
    if (a == b || a < 1 || b < 1 || a > n || b > n)
      throw EvalError("round: bad pair");
    if (used[a] || used[b]) throw EvalError("round: player in two pairs");
    used[a] = used[b] = true;
  }
  if (r.successors.size() != (size_t{1} << r.pairs.size()))
    throw EvalError("round: successor count mismatch");
}

inline std::vector<Rational> eval_rounds(const RoundsTournament& t,
                                         const MatchMatrix& p, const State& s,
                                         int depth) {
  if (depth > t.max_rounds + 64) throw EvalError("rounds: depth bound exceeded");
  RoundsStep d = t.step(s);
  std::vector<Rational> out(t.n, Rational(0));
  if (auto* w = std::get_if<WinnerDecision>(&d)) {
    out[w->who - 1] = Rational(1);
    return out;
  }
  if (auto* c = std::get_if<ChanceDecision>(&d)) {
    Rational total;
    for (auto& [q, succ] : c->branches) {
      total += q;
      if (q.sign() > 0) {
        auto sub = eval_rounds(t, p, succ, depth + 1);
        for (int i = 0; i < t.n; ++i) out[i] += q * sub[i];
      }
    }
    if (total != Rational(1)) throw EvalError("rounds: chance probabilities != 1");
    return out;
  }
  auto& r = std::get<RoundDecision>(d);
  check_round(r, t.n);
  size_t k = r.pairs.size();
  for (size_t mask = 0; mask < (size_t{1} << k); ++mask) {
    Rational w(1);
    for (size_t bit = 0; bit < k; ++bit) {
      auto [a, b] = r.pairs[bit];
      w *= (mask >> bit) & 1 ? p.p(a, b) : p.p(b, a);
      if (w.is_zero()) break;
    }
    if (w.is_zero()) continue;
    auto sub = eval_rounds(t, p, r.successors[mask], depth + 1);
    for (int i = 0; i < t.n; ++i) out[i] += w * sub[i];
  }
  return out;
}

}  // namespace detail

inline EvalReport exact_win_vector(const RoundsTournament& t, const MatchMatrix& p) {
  if (t.n != p.n()) throw EvalError("rounds eval: size mismatch");
  return EvalReport{WinVector(detail::eval_rounds(t, p, t.initial, 0)), 0, 0};
}

// Ordinary tournament playing each round's matches in a uniformly random
// order. Win vectors agree with the rounds tournament for every matrix.
//
// State layout: [mode, ordering, pos, partial_mask, rounds-state...].
inline Tournament sequentialize(const RoundsTournament& r) {
  Tournament t;
  t.n = r.n;
  t.max_matches = (r.max_rounds + 1) * (r.n / 2 + 1) + 64;
  t.name = "sequentialize(" + r.name + ")";
  t.initial = State{0, 0, 0, 0};
  t.initial.insert(t.initial.end(), r.initial.begin(), r.initial.end());
  auto rstep = r.step;
  int n = r.n;
  t.step = [rstep, n](const State& s) -> Decision {
    long long mode = s[0], ordering = s[1], pos = s[2], mask = s[3];
    State rstate(s.begin() + 4, s.end());
    RoundsStep d = rstep(rstate);
    if (auto* w = std::get_if<WinnerDecision>(&d)) return *w;
    if (auto* c = std::get_if<ChanceDecision>(&d)) {
      ChanceDecision out;
      for (auto& [q, succ] : c->branches) {
        State next{0, 0, 0, 0};
        next.insert(next.end(), succ.begin(), succ.end());
        out.branches.push_back({q, std::move(next)});
      }
      return out;
    }
    auto& round = std::get<RoundDecision>(d);
    detail::check_round(round, n);
    size_t k = round.pairs.size();

    // Orderings are numbered 0..k!-1 in factorial base.
    auto ordered_pair = [&](long long code, long long position) {
      std::vector<int> remaining(k);
      std::iota(remaining.begin(), remaining.end(), 0);
      int chosen = -1;
      for (long long step_i = 0; step_i <= position; ++step_i) {
        long long fact = 1;
        for (size_t f = 2; f < remaining.size(); ++f) fact *= f;
        long long idx = code / fact;
        chosen = remaining[idx];
        remaining.erase(remaining.begin() + idx);
        code %= fact;
      }
      return chosen;
    };

    if (mode == 0) {
      if (k == 0) {
        const State& rnext = round.successors[0];
        State next{0, 0, 0, 0};
        next.insert(next.end(), rnext.begin(), rnext.end());
        return ChanceDecision{{{Rational(1), std::move(next)}}};
      }
      // Chance over the k! orderings of this round's matches.
      long long kfact = 1;
      for (size_t f = 2; f <= k; ++f) kfact *= f;
      ChanceDecision out;
      for (long long code = 0; code < kfact; ++code) {
        State next{1, code, 0, 0};
        next.insert(next.end(), rstate.begin(), rstate.end());
        out.branches.push_back({Rational(1, kfact), std::move(next)});
      }
      return out;
    }

    // mode 1: play match pos of the chosen ordering.
    int pair_idx = ordered_pair(ordering, pos);
    auto [a, b] = round.pairs[pair_idx];
    auto succ = [&](bool first_won) -> State {
      long long new_mask = mask | (first_won ? (1ll << pair_idx) : 0);
      if (pos + 1 == static_cast<long long>(k)) {
        const State& rnext = round.successors[new_mask];
        State next{0, 0, 0, 0};
        next.insert(next.end(), rnext.begin(), rnext.end());
        return next;
      }
      State next{1, ordering, pos + 1, new_mask};
      next.insert(next.end(), rstate.begin(), rstate.end());
      return next;
    };
    return MatchDecision{a, b, succ(true), succ(false)};
  };
  return t;
}

}  // namespace tourney
