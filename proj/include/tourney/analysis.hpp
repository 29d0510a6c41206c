#pragma once

// Executable versions of the defining tournament properties (symmetry,
// honesty, strict honesty, fairness, futility), epsilon-closeness of
// tournaments, the piecewise-linear matrix isomorphism, and the LP-backed
// polytope of discrete symmetric honest tournament maps.

#include <tourney/lp.hpp>
#include <tourney/maps.hpp>
#include <tourney/matrix.hpp>
#include <tourney/rounds.hpp>
#include <tourney/simulate.hpp>
#include <tourney/tournament.hpp>

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace tourney {

enum class Verdict { pass, fail, pass_on_samples };

struct Witness {
  std::string description;
  std::optional<State> state;
  std::vector<Rational> values;
  int sample_index = -1;
};

struct PropertyReport {
  std::string property;
  Verdict verdict = Verdict::pass_on_samples;
  std::vector<Witness> witnesses;
  size_t states_checked = 0;
  size_t samples_checked = 0;
  std::string notes;

  bool ok() const { return verdict != Verdict::fail; }
};

namespace detail {

inline std::string state_str(const State& s) {
  std::string out = "[";
  for (size_t i = 0; i < s.size(); ++i)
    out += (i ? "," : "") + std::to_string(s[i]);
  return out + "]";
}

inline constexpr std::uint64_t kStandardPermSeed = 0x7051u;

inline std::vector<Permutation> symmetry_group(int n, std::string* note) {
  if (n <= 5) return all_permutations(n);
  // Full enumeration is impractical; transpositions generate the group and
  // seeded extras add coverage.
  std::vector<Permutation> out;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) out.push_back(Permutation::transposition(n, a, b));
  SplitMix64 rng(kStandardPermSeed);
  for (int k = 0; k < 20; ++k) {
    std::vector<int> m(n);
    for (int i = 0; i < n; ++i) m[i] = i + 1;
    for (int i = n - 1; i > 0; --i)
      std::swap(m[i], m[rng.next() % (i + 1)]);
    out.push_back(Permutation(std::move(m)));
  }
  if (note) *note = "permutations sampled (transpositions + 20 seeded)";
  return out;
}

}  // namespace detail

inline PropertyReport check_symmetry(const Tournament& t,
                                     const std::vector<MatchMatrix>& samples) {
  if (samples.empty()) throw TourneyError("check_symmetry: no samples");
  PropertyReport rep;
  rep.property = "symmetry";
  auto sigmas = detail::symmetry_group(t.n, &rep.notes);
  for (size_t si = 0; si < samples.size(); ++si) {
    const MatchMatrix& p = samples[si];
    WinVector base = exact_win_vector(t, p).win_vector;
    for (const auto& sigma : sigmas) {
      WinVector permuted = exact_win_vector(t, permute_matrix(p, sigma)).win_vector;
      for (int i = 1; i <= t.n; ++i) {
        ++rep.states_checked;
        if (base[i] != permuted[sigma(i)]) {
          Witness w;
          w.sample_index = static_cast<int>(si);
          w.description = "pi_" + std::to_string(i) + "(P) = " + base[i].str() +
                          " but pi_" + std::to_string(sigma(i)) + "(sigma P) = " +
                          permuted[sigma(i)].str() + " for sigma = " + sigma.str();
          w.values = {base[i], permuted[sigma(i)]};
          rep.witnesses.push_back(std::move(w));
          rep.verdict = Verdict::fail;
          if (rep.witnesses.size() >= 5) return rep;
        }
      }
    }
    ++rep.samples_checked;
  }
  if (rep.verdict != Verdict::fail) rep.verdict = Verdict::pass_on_samples;
  return rep;
}

// pi+ >= pi- for both players of every reachable announced match. Strict
// mode additionally demands strict inequality on interior matrices and that
// every pair of players has positive probability of meeting.
inline PropertyReport check_honesty(const Tournament& t,
                                    const std::vector<MatchMatrix>& samples,
                                    bool strict = false) {
  if (samples.empty()) throw TourneyError("check_honesty: no samples");
  PropertyReport rep;
  rep.property = strict ? "strict-honesty" : "honesty";
  size_t skipped_zero_prob = 0;
  for (size_t si = 0; si < samples.size(); ++si) {
    const MatchMatrix& p = samples[si];
    auto reach = reachable_states(t, &p);
    auto structural = reachable_states(t, nullptr);
    skipped_zero_prob += structural.size() - reach.size();
    detail::Evaluator ev(t, p, EvalOptions{});
    std::set<std::pair<Player, Player>> met;
    for (const auto& s : reach) {
      Decision d = t.step(s);
      auto* m = std::get_if<MatchDecision>(&d);
      if (!m) continue;
      met.insert({std::min(m->a, m->b), std::max(m->a, m->b)});
      WinVector after_a(ev.eval(m->if_a_wins, 0));
      WinVector after_b(ev.eval(m->if_b_wins, 0));
      ++rep.states_checked;
      auto record = [&](Player who, const Rational& win, const Rational& lose) {
        bool bad = strict && p.interior() ? !(win > lose) : win < lose;
        if (!bad) return;
        Witness w;
        w.sample_index = static_cast<int>(si);
        w.state = s;
        w.values = {win, lose};
        w.description = "player " + std::to_string(who) + " at state " +
                        detail::state_str(s) + ": pi+ = " + win.str() +
                        (win < lose ? " < " : " not > ") + "pi- = " + lose.str();
        rep.witnesses.push_back(std::move(w));
        rep.verdict = Verdict::fail;
      };
      record(m->a, after_a[m->a], after_b[m->a]);
      record(m->b, after_b[m->b], after_a[m->b]);
      if (rep.witnesses.size() >= 5) return rep;
    }
    if (strict && p.interior()) {
      for (Player a = 1; a <= t.n; ++a)
        for (Player b = a + 1; b <= t.n; ++b)
          if (!met.contains({a, b})) {
            Witness w;
            w.sample_index = static_cast<int>(si);
            w.description = "players " + std::to_string(a) + " and " +
                            std::to_string(b) + " never meet with positive probability";
            rep.witnesses.push_back(std::move(w));
            rep.verdict = Verdict::fail;
          }
    }
    ++rep.samples_checked;
  }
  if (skipped_zero_prob > 0)
    rep.notes = std::to_string(skipped_zero_prob) +
                " structurally reachable states had probability 0 at their sample";
  if (rep.verdict != Verdict::fail) rep.verdict = Verdict::pass_on_samples;
  return rep;
}

// Honesty for rounds tournaments: condition on earlier rounds and on the
// current round's pairings; the other matches of the round follow P.
inline PropertyReport check_rounds_honesty(const RoundsTournament& t,
                                           const std::vector<MatchMatrix>& samples) {
  if (samples.empty()) throw TourneyError("check_rounds_honesty: no samples");
  PropertyReport rep;
  rep.property = "rounds-honesty";
  for (size_t si = 0; si < samples.size(); ++si) {
    const MatchMatrix& p = samples[si];
    // breadth-first over positive-probability states
    std::vector<State> queue{t.initial};
    std::set<State> seen{t.initial};
    while (!queue.empty()) {
      State s = queue.back();
      queue.pop_back();
      RoundsStep d = t.step(s);
      if (auto* c = std::get_if<ChanceDecision>(&d)) {
        for (auto& [q, succ] : c->branches)
          if (q.sign() > 0 && seen.insert(succ).second) queue.push_back(succ);
        continue;
      }
      auto* r = std::get_if<RoundDecision>(&d);
      if (!r) continue;
      size_t k = r->pairs.size();
      for (size_t mask = 0; mask < (size_t{1} << k); ++mask) {
        Rational w(1);
        for (size_t bit = 0; bit < k; ++bit) {
          auto [a, b] = r->pairs[bit];
          w *= (mask >> bit) & 1 ? p.p(a, b) : p.p(b, a);
        }
        if (w.sign() > 0 && seen.insert(r->successors[mask]).second)
          queue.push_back(r->successors[mask]);
      }
      // conditional win probabilities for each player of each pair
      ++rep.states_checked;
      for (size_t bit = 0; bit < k; ++bit) {
        auto eval_given = [&](bool first_wins, Player who) {
          Rational total;
          for (size_t mask = 0; mask < (size_t{1} << k); ++mask) {
            if ((((mask >> bit) & 1) != 0) != first_wins) continue;
            Rational w(1);
            for (size_t b2 = 0; b2 < k; ++b2) {
              if (b2 == bit) continue;
              auto [a, b] = r->pairs[b2];
              w *= (mask >> b2) & 1 ? p.p(a, b) : p.p(b, a);
            }
            if (w.is_zero()) continue;
            auto sub = detail::eval_rounds(t, p, r->successors[mask], 0);
            total += w * sub[who - 1];
          }
          return total;
        };
        auto [a, b] = r->pairs[bit];
        for (int side = 0; side < 2; ++side) {
          Player who = side == 0 ? a : b;
          Rational win = eval_given(side == 0, who);
          Rational lose = eval_given(side != 0, who);
          if (win < lose) {
            Witness w;
            w.sample_index = static_cast<int>(si);
            w.state = s;
            w.values = {win, lose};
            w.description = "player " + std::to_string(who) + " in round state " +
                            detail::state_str(s) + ": pi+ = " + win.str() +
                            " < pi- = " + lose.str();
            rep.witnesses.push_back(std::move(w));
            rep.verdict = Verdict::fail;
            if (rep.witnesses.size() >= 5) return rep;
          }
        }
      }
    }
    ++rep.samples_checked;
  }
  if (rep.verdict != Verdict::fail) rep.verdict = Verdict::pass_on_samples;
  return rep;
}

inline PropertyReport check_fairness(const Tournament& t,
                                     const std::vector<DoublyMonotonicWitness>& samples) {
  if (samples.empty()) throw TourneyError("check_fairness: no samples");
  PropertyReport rep;
  rep.property = "fairness";
  for (size_t si = 0; si < samples.size(); ++si) {
    if (!samples[si].verified || !is_doubly_monotonic(samples[si].matrix))
      throw TourneyError("check_fairness: sample is not doubly monotonic");
    WinVector wv = exact_win_vector(t, samples[si].matrix).win_vector;
    ++rep.samples_checked;
    for (int i = 1; i < t.n; ++i) {
      ++rep.states_checked;
      if (wv[i] < wv[i + 1]) {
        Witness w;
        w.sample_index = static_cast<int>(si);
        w.values = {wv[i], wv[i + 1]};
        w.description = "pi_" + std::to_string(i) + " = " + wv[i].str() + " < pi_" +
                        std::to_string(i + 1) + " = " + wv[i + 1].str();
        rep.witnesses.push_back(std::move(w));
        rep.verdict = Verdict::fail;
      }
    }
  }
  if (rep.verdict != Verdict::fail) rep.verdict = Verdict::pass_on_samples;
  return rep;
}

// pi+ == pi- at every reachable match, for both players.
inline PropertyReport check_futility(const Tournament& t,
                                     const std::vector<MatchMatrix>& samples) {
  if (samples.empty()) throw TourneyError("check_futility: no samples");
  PropertyReport rep;
  rep.property = "futility";
  for (size_t si = 0; si < samples.size(); ++si) {
    const MatchMatrix& p = samples[si];
    detail::Evaluator ev(t, p, EvalOptions{});
    for (const auto& s : reachable_states(t, &p)) {
      Decision d = t.step(s);
      auto* m = std::get_if<MatchDecision>(&d);
      if (!m) continue;
      ++rep.states_checked;
      WinVector after_a(ev.eval(m->if_a_wins, 0));
      WinVector after_b(ev.eval(m->if_b_wins, 0));
      for (int side = 0; side < 2; ++side) {
        Player who = side == 0 ? m->a : m->b;
        const Rational& win = side == 0 ? after_a[m->a] : after_b[m->b];
        const Rational& lose = side == 0 ? after_b[m->a] : after_a[m->b];
        if (win != lose) {
          Witness w;
          w.sample_index = static_cast<int>(si);
          w.state = s;
          w.values = {win, lose};
          w.description = "player " + std::to_string(who) + " at state " +
                          detail::state_str(s) + ": pi+ = " + win.str() +
                          " != pi- = " + lose.str();
          rep.witnesses.push_back(std::move(w));
          rep.verdict = Verdict::fail;
          if (rep.witnesses.size() >= 5) return rep;
        }
      }
    }
    ++rep.samples_checked;
  }
  if (rep.verdict != Verdict::fail) rep.verdict = Verdict::pass_on_samples;
  return rep;
}

// Max over samples and players of |pi_i(T1, P) - pi_i(T2, P)|, exact.
inline Rational epsilon_distance(const Tournament& t1, const Tournament& t2,
                                 const std::vector<MatchMatrix>& samples) {
  if (t1.n != t2.n) throw TourneyError("epsilon_distance: size mismatch");
  Rational best;
  for (const auto& p : samples) {
    WinVector a = exact_win_vector(t1, p).win_vector;
    WinVector b = exact_win_vector(t2, p).win_vector;
    for (int i = 1; i <= t1.n; ++i) {
      Rational d = abs(a[i] - b[i]);
      if (d > best) best = d;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Order isomorphism of matrices and the induced piecewise-linear map.

struct PiecewiseLinearMap {
  // Breakpoints sorted by x, including (0,0) and (1,1).
  std::vector<std::pair<Rational, Rational>> points;

  Rational operator()(const Rational& x) const {
    for (size_t k = 0; k + 1 < points.size(); ++k) {
      if (x >= points[k].first && x <= points[k + 1].first) {
        const auto& [x0, y0] = points[k];
        const auto& [x1, y1] = points[k + 1];
        if (x == x0) return y0;
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
      }
    }
    throw TourneyError("PiecewiseLinearMap: argument outside [0,1]");
  }
};

struct NotIsomorphic {
  std::string reason;
  int i1 = 0, j1 = 0, i2 = 0, j2 = 0;  // witnessing cells, when applicable
};

// Matrices are isomorphic when their entries are ordered identically; the
// map phi then sends the sorted value set of P to that of Q with phi(0)=0
// and phi(1)=1, which additionally requires agreement about whether 0/1
// actually occur as entries.
inline std::variant<PiecewiseLinearMap, NotIsomorphic> isomorphism_phi(
    const MatchMatrix& P, const MatchMatrix& Q) {
  if (P.n() != Q.n()) throw TourneyError("isomorphism_phi: size mismatch");
  int n = P.n();
  struct Cell {
    Rational p, q;
    int i, j;
  };
  std::vector<Cell> cells;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) cells.push_back({P.p(i, j), Q.p(i, j), i, j});
  std::sort(cells.begin(), cells.end(),
            [](const Cell& a, const Cell& b) { return a.p < b.p; });
  for (size_t k = 0; k + 1 < cells.size(); ++k) {
    const Cell& a = cells[k];
    const Cell& b = cells[k + 1];
    bool p_eq = a.p == b.p, q_eq = a.q == b.q;
    bool p_lt = a.p < b.p, q_lt = a.q < b.q;
    if ((p_eq && !q_eq) || (p_lt && !q_lt))
      return NotIsomorphic{"entries (" + std::to_string(a.i) + "," +
                               std::to_string(a.j) + ") and (" + std::to_string(b.i) +
                               "," + std::to_string(b.j) + ") are ordered differently",
                           a.i, a.j, b.i, b.j};
  }
  std::vector<std::pair<Rational, Rational>> pts;
  const Rational zero(0), one(1);
  bool p_has_zero = cells.front().p == zero;
  bool q_has_zero = cells.front().q == zero;
  if (p_has_zero != q_has_zero)
    return NotIsomorphic{"one matrix attains 0/1 and the other does not"};
  if (!p_has_zero) pts.push_back({zero, zero});
  for (size_t k = 0; k < cells.size(); ++k) {
    if (k > 0 && cells[k].p == cells[k - 1].p) continue;
    pts.push_back({cells[k].p, cells[k].q});
  }
  if (pts.back().first != one) pts.push_back({one, one});
  PiecewiseLinearMap phi{std::move(pts)};
  // phi(1-x) == 1 - phi(x) must hold on the breakpoints.
  for (const auto& [x, y] : phi.points)
    if (phi(one - x) != one - y)
      throw TourneyError("isomorphism_phi: complement symmetry violated");
  return phi;
}

// ---------------------------------------------------------------------------
// P-discrete tournament maps and the polytope of symmetric honest ones.

// A map defined on the matrices whose entries come from the value set of a
// base matrix (plus 0 and 1).
class DiscreteMap {
public:
  DiscreteMap(MatchMatrix base, std::map<std::vector<int>, WinVector> table,
              std::vector<Rational> levels)
      : base_(std::move(base)), table_(std::move(table)), levels_(std::move(levels)) {}

  const MatchMatrix& base() const { return base_; }
  const std::vector<Rational>& levels() const { return levels_; }

  static std::vector<Rational> level_set(const MatchMatrix& P) {
    std::set<Rational> s{Rational(0), Rational(1)};
    for (int i = 1; i <= P.n(); ++i)
      for (int j = 1; j <= P.n(); ++j) s.insert(P.p(i, j));
    return std::vector<Rational>(s.begin(), s.end());
  }

  int level_index(const Rational& v) const {
    for (size_t k = 0; k < levels_.size(); ++k)
      if (levels_[k] == v) return static_cast<int>(k);
    return -1;
  }

  // Key: level index of each upper-triangle pair, lexicographic.
  std::vector<int> key_of(const MatchMatrix& Q) const {
    int n = base_.n();
    std::vector<int> key;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        int idx = level_index(Q.p(i, j));
        if (idx < 0) throw TourneyError("DiscreteMap: matrix is off-grid");
        key.push_back(idx);
      }
    return key;
  }

  WinVector at(const MatchMatrix& Q) const {
    auto it = table_.find(key_of(Q));
    if (it == table_.end()) throw TourneyError("DiscreteMap: matrix outside domain");
    return it->second;
  }

  const std::map<std::vector<int>, WinVector>& table() const { return table_; }

private:
  MatchMatrix base_;
  std::map<std::vector<int>, WinVector> table_;
  std::vector<Rational> levels_;
};

namespace detail {

inline MatchMatrix matrix_from_key(int n, const std::vector<int>& key,
                                   const std::vector<Rational>& levels) {
  std::vector<Rational> upper(key.size());
  for (size_t k = 0; k < key.size(); ++k) upper[k] = levels[key[k]];
  return MatchMatrix::from_upper(n, upper);
}

}  // namespace detail

// Restriction of a tournament map to the grid of a base matrix.
inline DiscreteMap discretize_map(const TournamentMap& f, const MatchMatrix& base,
                                  size_t guard = 10000) {
  auto levels = DiscreteMap::level_set(base);
  int n = base.n();
  int m = n * (n - 1) / 2;
  size_t count = 1;
  for (int k = 0; k < m; ++k) {
    count *= levels.size();
    if (count > guard) throw SizeGuardError("discretize_map: domain too large");
  }
  std::map<std::vector<int>, WinVector> table;
  std::vector<int> key(m, 0);
  for (;;) {
    table.emplace(key, f(detail::matrix_from_key(n, key, levels)));
    int k = m - 1;
    while (k >= 0 && ++key[k] == static_cast<int>(levels.size())) key[k--] = 0;
    if (k < 0) break;
  }
  return DiscreteMap(base, std::move(table), std::move(levels));
}

// Exact expectation of f under independent per-pair randomized rounding of
// each off-grid entry to the two adjacent grid levels.
inline WinVector extend_discrete_map(const DiscreteMap& f, const MatchMatrix& Q) {
  int n = f.base().n();
  if (Q.n() != n) throw TourneyError("extend_discrete_map: size mismatch");
  const auto& levels = f.levels();
  int m = n * (n - 1) / 2;
  // Per pair: one or two (level index, weight) alternatives.
  std::vector<std::vector<std::pair<int, Rational>>> alt(m);
  int pair_idx = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j, ++pair_idx) {
      const Rational& v = Q.p(i, j);
      int exact = f.level_index(v);
      if (exact >= 0) {
        alt[pair_idx] = {{exact, Rational(1)}};
        continue;
      }
      size_t hi = 0;
      while (hi < levels.size() && levels[hi] < v) ++hi;
      // 0 and 1 are always grid levels, so v lies strictly between two.
      int k = static_cast<int>(hi) - 1;
      Rational w_low = (levels[hi] - v) / (levels[hi] - levels[k]);
      alt[pair_idx] = {{k, w_low}, {static_cast<int>(hi), Rational(1) - w_low}};
    }
  std::vector<Rational> acc(n, Rational(0));
  std::vector<int> choice(m, 0);
  auto rec = [&](auto&& self, int pos, Rational weight,
                 std::vector<int>& key) -> void {
    if (pos == m) {
      auto it = f.table().find(key);
      if (it == f.table().end())
        throw TourneyError("extend_discrete_map: rounding left the domain");
      for (int i = 0; i < n; ++i) acc[i] += weight * it->second[i + 1];
      return;
    }
    for (const auto& [lvl, w] : alt[pos]) {
      key[pos] = lvl;
      self(self, pos + 1, weight * w, key);
    }
  };
  std::vector<int> key(m, 0);
  rec(rec, 0, Rational(1), key);
  return WinVector(std::move(acc));
}

// The exact linear system over {f_i(Q)} cut out by the distribution,
// symmetry and adjacent-level honesty constraints; supports optimizing any
// objective over the coordinates of f at the base matrix. Variables are
// reduced to orbit representatives under the symmetry action first.
class DiscreteMapPolytope {
public:
  explicit DiscreteMapPolytope(const MatchMatrix& base, size_t guard = 10000)
      : base_(base), levels_(DiscreteMap::level_set(base)) {
    n_ = base.n();
    m_ = n_ * (n_ - 1) / 2;
    size_t count = 1;
    for (int k = 0; k < m_; ++k) {
      count *= levels_.size();
      if (count > guard)
        throw SizeGuardError("discrete_map_polytope: domain exceeds guard");
    }
    comp_level_.resize(levels_.size());
    for (size_t a = 0; a < levels_.size(); ++a) {
      comp_level_[a] = -1;
      for (size_t b = 0; b < levels_.size(); ++b)
        if (levels_[a] + levels_[b] == Rational(1)) comp_level_[a] = static_cast<int>(b);
      if (comp_level_[a] < 0)
        throw TourneyError("discrete_map_polytope: level set not complement-closed");
    }
    enumerate_keys();
    build_orbits();
    build_rows();
  }

  size_t domain_size() const { return keys_.size(); }
  size_t variable_count() const { return num_orbits_; }
  const std::vector<Rational>& levels() const { return levels_; }

  struct Optimum {
    Rational value;
    WinVector f_at_base;
  };

  // Optimize sum_i coeffs[i] * f_i(base).
  Optimum optimize(const std::vector<Rational>& coeffs, bool maximize) const {
    if (static_cast<int>(coeffs.size()) != n_)
      throw TourneyError("optimize: coefficient count mismatch");
    LinearProgram lp;
    lp.num_vars = static_cast<int>(num_orbits_);
    lp.maximize = maximize;
    lp.objective.assign(num_orbits_, Rational(0));
    std::vector<int> base_key = key_of_matrix(base_);
    for (int i = 1; i <= n_; ++i)
      lp.objective[var_of(base_key, i)] += coeffs[i - 1];
    lp.rows = rows_;
    auto res = lp_solve(lp);
    if (res.status != LPStatus::optimal)
      throw TourneyError("discrete_map_polytope: LP not optimal");
    std::vector<Rational> comps(n_);
    for (int i = 1; i <= n_; ++i) comps[i - 1] = res.x[var_of(base_key, i)];
    return Optimum{res.value, WinVector(std::move(comps))};
  }

  // Checks one explicit map against every constraint (used by tests).
  bool admits(const TournamentMap& f) const {
    for (const auto& key : keys_) {
      MatchMatrix Q = detail::matrix_from_key(n_, key, levels_);
      WinVector v = f(Q);
      for (const auto& sigma : all_permutations(n_)) {
        WinVector w = f(permute_matrix(Q, sigma));
        for (int i = 1; i <= n_; ++i)
          if (v[i] != w[sigma(i)]) return false;
      }
      for (int pair = 0; pair < m_; ++pair) {
        auto up = raise_key(key, pair);
        if (!up) continue;
        WinVector w = f(detail::matrix_from_key(n_, *up, levels_));
        auto [i, j] = pair_players(pair);
        if (v[i] > w[i] || w[j] > v[j]) return false;
      }
    }
    return true;
  }

private:
  std::pair<int, int> pair_players(int pair) const {
    int k = 0;
    for (int i = 1; i <= n_; ++i)
      for (int j = i + 1; j <= n_; ++j, ++k)
        if (k == pair) return {i, j};
    throw TourneyError("pair index out of range");
  }

  std::vector<int> key_of_matrix(const MatchMatrix& Q) const {
    std::vector<int> key;
    for (int i = 1; i <= n_; ++i)
      for (int j = i + 1; j <= n_; ++j) {
        int idx = -1;
        for (size_t k = 0; k < levels_.size(); ++k)
          if (levels_[k] == Q.p(i, j)) idx = static_cast<int>(k);
        if (idx < 0) throw TourneyError("matrix entry off-grid");
        key.push_back(idx);
      }
    return key;
  }

  void enumerate_keys() {
    std::vector<int> key(m_, 0);
    for (;;) {
      keys_.push_back(key);
      key_index_[key] = keys_.size() - 1;
      int k = m_ - 1;
      while (k >= 0 && ++key[k] == static_cast<int>(levels_.size())) key[k--] = 0;
      if (k < 0) break;
    }
  }

  // Key of sigma Q from the key of Q.
  std::vector<int> permute_key(const std::vector<int>& key,
                               const Permutation& sigma) const {
    auto inv = sigma.inverse();
    std::vector<int> out(m_);
    int k = 0;
    for (int a = 1; a <= n_; ++a)
      for (int b = a + 1; b <= n_; ++b, ++k) {
        int i = inv(a), j = inv(b);
        int idx;
        if (i < j)
          idx = key[pair_index(i, j)];
        else
          idx = comp_level_[key[pair_index(j, i)]];
        out[k] = idx;
      }
    return out;
  }

  int pair_index(int i, int j) const {
    // i < j, 1-based; lexicographic position
    return (i - 1) * n_ - (i - 1) * i / 2 + (j - i - 1);
  }

  void build_orbits() {
    auto sigmas = all_permutations(n_);
    var_id_.assign(keys_.size() * n_, -1);
    num_orbits_ = 0;
    for (size_t qi = 0; qi < keys_.size(); ++qi) {
      for (int i = 1; i <= n_; ++i) {
        size_t slot = qi * n_ + (i - 1);
        if (var_id_[slot] >= 0) continue;
        // new orbit: mark every image
        for (const auto& sigma : sigmas) {
          auto pkey = permute_key(keys_[qi], sigma);
          size_t pqi = key_index_.at(pkey);
          var_id_[pqi * n_ + (sigma(i) - 1)] = static_cast<int>(num_orbits_);
        }
        ++num_orbits_;
      }
    }
  }

  int var_of(const std::vector<int>& key, int player) const {
    return var_id_[key_index_.at(key) * n_ + (player - 1)];
  }

  std::optional<std::vector<int>> raise_key(const std::vector<int>& key,
                                            int pair) const {
    // Raising q_ij one level; the stored key tracks the upper-triangle entry.
    if (key[pair] + 1 >= static_cast<int>(levels_.size())) return std::nullopt;
    auto out = key;
    ++out[pair];
    return out;
  }

  void build_rows() {
    std::set<std::vector<Rational>> seen;
    auto add_row = [&](std::vector<Rational> a, Rational b, bool eq) {
      bool all_zero = true;
      for (const auto& v : a)
        if (!v.is_zero()) {
          all_zero = false;
          break;
        }
      if (all_zero && b.is_zero()) return;
      auto sig = a;
      sig.push_back(b);
      sig.push_back(Rational(eq ? 1 : 0));
      if (!seen.insert(sig).second) return;
      rows_.push_back(LinearProgram::Row{std::move(a), std::move(b), eq});
    };

    for (size_t qi = 0; qi < keys_.size(); ++qi) {
      // distribution: sum_i f_i(Q) = 1
      std::vector<Rational> row(num_orbits_, Rational(0));
      for (int i = 1; i <= n_; ++i)
        row[var_id_[qi * n_ + (i - 1)]] += Rational(1);
      add_row(std::move(row), Rational(1), true);

      // honesty: f_i(Q) <= f_i(Q with q_ij raised one level), j != i.
      // Raising the upper-triangle entry helps the row player; the reverse
      // direction (column player) is the same inequality read from the
      // raised matrix, so both orientations are covered by scanning every Q.
      for (int pair = 0; pair < m_; ++pair) {
        auto up = raise_key(keys_[qi], pair);
        if (!up) continue;
        auto [i, j] = pair_players(pair);
        size_t upi = key_index_.at(*up);
        // f_i increases with q_ij
        std::vector<Rational> r1(num_orbits_, Rational(0));
        r1[var_id_[qi * n_ + (i - 1)]] += Rational(1);
        r1[var_id_[upi * n_ + (i - 1)]] -= Rational(1);
        add_row(std::move(r1), Rational(0), false);
        // f_j decreases with q_ij (equivalently increases with q_ji)
        std::vector<Rational> r2(num_orbits_, Rational(0));
        r2[var_id_[upi * n_ + (j - 1)]] += Rational(1);
        r2[var_id_[qi * n_ + (j - 1)]] -= Rational(1);
        add_row(std::move(r2), Rational(0), false);
      }
    }
  }

  MatchMatrix base_;
  std::vector<Rational> levels_;
  std::vector<int> comp_level_;
  int n_ = 0, m_ = 0;
  std::vector<std::vector<int>> keys_;
  std::map<std::vector<int>, size_t> key_index_;
  std::vector<int> var_id_;
  size_t num_orbits_ = 0;
  std::vector<LinearProgram::Row> rows_;
};

inline DiscreteMapPolytope discrete_map_polytope(const MatchMatrix& base,
                                                 size_t guard = 10000) {
  return DiscreteMapPolytope(base, guard);
}

}  // namespace tourney
