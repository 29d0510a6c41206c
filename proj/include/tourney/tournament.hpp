#pragma once

// The tournament abstraction: a finite-depth deterministic transition system
// whose decisions are Match (branch on who wins), Chance (branch on declared
// exact probabilities) or Winner. States are canonical integer encodings so
// evaluation can memoize and honesty checks can enumerate reachable states.

#include <tourney/matrix.hpp>
#include <tourney/rational.hpp>

#include <cstdlib>
#include <deque>
#include <functional>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

namespace tourney {

using Player = int;                 // 1-based
using State = std::vector<long long>;

struct MatchDecision {
  Player a = 0, b = 0;  // unordered pair, a != b
  State if_a_wins;
  State if_b_wins;
};

struct ChanceDecision {
  std::vector<std::pair<Rational, State>> branches;  // probabilities sum to 1
};

struct WinnerDecision {
  Player who = 0;
};

using Decision = std::variant<MatchDecision, ChanceDecision, WinnerDecision>;

struct Tournament {
  int n = 0;
  State initial;
  int max_matches = 0;  // bound on matches along any play path
  std::function<Decision(const State&)> step;
  std::string name;
};

struct EvalError : TourneyError {
  using TourneyError::TourneyError;
};

struct StateHash {
  size_t operator()(const State& s) const {
    size_t h = 1469598103934665603ull;
    for (long long v : s) {
      h ^= static_cast<size_t>(v);
      h *= 1099511628211ull;
    }
    return h;
  }
};

inline size_t default_max_states() {
  if (const char* env = std::getenv("TOURNEY_MAX_STATES")) {
    long v = std::atol(env);
    if (v > 0) return static_cast<size_t>(v);
  }
  return 5'000'000;
}

struct EvalOptions {
  bool memoize = true;
  size_t max_states = default_max_states();
};

struct EvalReport {
  WinVector win_vector;
  size_t states_visited = 0;
  size_t leaf_count = 0;
};

namespace detail {

class Evaluator {
public:
  Evaluator(const Tournament& t, const MatchMatrix& p, EvalOptions opt)
      : t_(t), p_(p), opt_(opt) {
    if (t.n != p.n()) throw EvalError("exact_win_vector: size mismatch");
  }

  std::vector<Rational> eval(const State& s, int matches_used) {
    if (opt_.memoize) {
      auto it = memo_.find(s);
      if (it != memo_.end()) return it->second;
    }
    if (in_progress_.contains(s))
      throw EvalError("tournament state recurs along a play path");
    if (++visited_ > opt_.max_states)
      throw EvalError("state guard exceeded (set TOURNEY_MAX_STATES to raise)");
    in_progress_.insert(s);

    Decision d = t_.step(s);
    std::vector<Rational> out(t_.n, Rational(0));
    if (auto* w = std::get_if<WinnerDecision>(&d)) {
      if (w->who < 1 || w->who > t_.n) throw EvalError("winner out of range");
      out[w->who - 1] = Rational(1);
      ++leaves_;
    } else if (auto* m = std::get_if<MatchDecision>(&d)) {
      if (matches_used >= t_.max_matches)
        throw EvalError("declared match bound exceeded");
      const Rational& pa = p_.p(m->a, m->b);
      const Rational& pb = p_.p(m->b, m->a);
      if (pa.sign() > 0) accumulate(out, pa, eval(m->if_a_wins, matches_used + 1));
      if (pb.sign() > 0) accumulate(out, pb, eval(m->if_b_wins, matches_used + 1));
    } else {
      auto& c = std::get<ChanceDecision>(d);
      Rational total;
      for (auto& [q, succ] : c.branches) {
        if (q.sign() < 0) throw EvalError("negative chance probability");
        total += q;
        if (q.sign() > 0) accumulate(out, q, eval(succ, matches_used));
      }
      if (total != Rational(1))
        throw EvalError("chance probabilities sum to " + total.str());
    }

    in_progress_.erase(s);
    if (opt_.memoize) memo_.emplace(s, out);
    return out;
  }

  size_t visited() const { return visited_; }
  size_t leaves() const { return leaves_; }

private:
  static void accumulate(std::vector<Rational>& acc, const Rational& w,
                         const std::vector<Rational>& v) {
    for (size_t i = 0; i < acc.size(); ++i) acc[i] += w * v[i];
  }

  const Tournament& t_;
  const MatchMatrix& p_;
  EvalOptions opt_;
  std::unordered_map<State, std::vector<Rational>, StateHash> memo_;
  std::unordered_set<State, StateHash> in_progress_;
  size_t visited_ = 0;
  size_t leaves_ = 0;
};

}  // namespace detail

inline EvalReport exact_win_vector(const Tournament& t, const MatchMatrix& p,
                                   EvalOptions opt = {}) {
  detail::Evaluator ev(t, p, opt);
  auto comps = ev.eval(t.initial, 0);
  return EvalReport{WinVector(std::move(comps)), ev.visited(), ev.leaves()};
}

// Win vector of the sub-tournament rooted at an arbitrary state.
inline WinVector eval_from(const Tournament& t, const MatchMatrix& p, const State& s,
                           EvalOptions opt = {}) {
  detail::Evaluator ev(t, p, opt);
  return WinVector(ev.eval(s, 0));
}

// Conditional win probabilities at an announced match, for both named players.
struct ConditionalPair {
  Player i = 0, j = 0;
  Rational i_win, i_lose, j_win, j_lose;
};

inline ConditionalPair conditional_pair(const Tournament& t, const MatchMatrix& p,
                                        const State& s, EvalOptions opt = {}) {
  Decision d = t.step(s);
  auto* m = std::get_if<MatchDecision>(&d);
  if (!m) throw EvalError("conditional_pair: state does not announce a match");
  WinVector after_a = eval_from(t, p, m->if_a_wins, opt);
  WinVector after_b = eval_from(t, p, m->if_b_wins, opt);
  return ConditionalPair{m->a, m->b, after_a[m->a], after_b[m->a],
                         after_b[m->b], after_a[m->b]};
}

// All states reachable from the initial one. If a matrix is supplied, match
// branches with probability zero under it are pruned (chance branches with
// zero weight are always pruned).
inline std::vector<State> reachable_states(const Tournament& t,
                                           const MatchMatrix* p = nullptr,
                                           size_t max_states = default_max_states()) {
  std::vector<State> order;
  std::unordered_set<State, StateHash> seen;
  std::deque<State> queue{t.initial};
  seen.insert(t.initial);
  while (!queue.empty()) {
    State s = std::move(queue.front());
    queue.pop_front();
    order.push_back(s);
    if (order.size() > max_states)
      throw EvalError("reachable_states: state guard exceeded");
    Decision d = t.step(s);
    auto push = [&](const State& succ) {
      if (seen.insert(succ).second) queue.push_back(succ);
    };
    if (auto* m = std::get_if<MatchDecision>(&d)) {
      if (!p || p->p(m->a, m->b).sign() > 0) push(m->if_a_wins);
      if (!p || p->p(m->b, m->a).sign() > 0) push(m->if_b_wins);
    } else if (auto* c = std::get_if<ChanceDecision>(&d)) {
      for (auto& [q, succ] : c->branches)
        if (q.sign() > 0) push(succ);
    }
  }
  return order;
}

namespace detail {

// Re-tags a decision's successor states with a prefix value.
inline Decision prefix_decision(Decision d, long long tag) {
  auto wrap = [tag](State& s) { s.insert(s.begin(), tag); };
  if (auto* m = std::get_if<MatchDecision>(&d)) {
    wrap(m->if_a_wins);
    wrap(m->if_b_wins);
  } else if (auto* c = std::get_if<ChanceDecision>(&d)) {
    for (auto& [q, succ] : c->branches) wrap(succ);
  }
  return d;
}

}  // namespace detail

// Plays t0 with probability p and t1 otherwise.
inline Tournament mixture(const Tournament& t0, const Tournament& t1, const Rational& p) {
  if (t0.n != t1.n) throw TourneyError("mixture: size mismatch");
  if (p.sign() < 0 || p > Rational(1)) throw TourneyError("mixture: p outside [0,1]");
  Tournament t;
  t.n = t0.n;
  t.initial = {0};
  t.max_matches = std::max(t0.max_matches, t1.max_matches);
  t.name = "mixture(" + t0.name + "," + t1.name + "," + p.str() + ")";
  auto s0 = t0.step, s1 = t1.step;
  State i0 = t0.initial, i1 = t1.initial;
  t.step = [s0, s1, i0, i1, p](const State& s) -> Decision {
    if (s.size() == 1 && s[0] == 0) {
      State b0 = i0, b1 = i1;
      b0.insert(b0.begin(), 1);
      b1.insert(b1.begin(), 2);
      ChanceDecision c;
      if (p.sign() > 0) c.branches.push_back({p, std::move(b0)});
      if (p < Rational(1)) c.branches.push_back({Rational(1) - p, std::move(b1)});
      return c;
    }
    State inner(s.begin() + 1, s.end());
    return detail::prefix_decision(s[0] == 1 ? s0(inner) : s1(inner), s[0]);
  };
  return t;
}

}  // namespace tourney
