#pragma once

// Seed-deterministic Monte Carlo play-through of a tournament. Each trial
// derives its own substream from (seed, trial index), so results do not
// depend on execution order or worker count. Match outcomes are drawn by
// comparing a uniform 64-bit value against a threshold scaled exactly from
// the rational match probability.

#include <tourney/matrix.hpp>
#include <tourney/tournament.hpp>

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

namespace tourney {

namespace detail {

struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t s) : state(s) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
};

inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t trial) {
  SplitMix64 mix(seed ^ (0xd1b54a32d192ed03ull * (trial + 1)));
  return mix.next();
}

}  // namespace detail

struct SimReport {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> counts;      // wins per player
  std::vector<double> empirical;          // counts / trials
  std::vector<double> standard_errors;    // sqrt(f(1-f)/trials)

  bool operator==(const SimReport& o) const {
    return trials == o.trials && seed == o.seed && counts == o.counts;
  }
};

inline SimReport simulate(const Tournament& t, const MatchMatrix& p,
                          std::uint64_t trials, std::uint64_t seed) {
  if (t.n != p.n()) throw EvalError("simulate: size mismatch");
  if (trials < 1) throw EvalError("simulate: trials must be >= 1");

  // Threshold per ordered pair: P(draw < threshold) differs from p_ab by
  // less than 2^-64; p == 1 is handled as always-win.
  int n = t.n;
  std::vector<std::uint64_t> threshold(n * n, 0);
  std::vector<bool> certain(n * n, false);
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      if (a == b) continue;
      const Rational& q = p.p(a, b);
      if (q == Rational(1))
        certain[(a - 1) * n + (b - 1)] = true;
      else
        threshold[(a - 1) * n + (b - 1)] = probability_threshold_u64(q);
    }

  // Chance nodes get cumulative thresholds, cached by state.
  std::map<State, std::vector<std::uint64_t>> chance_cache;
  auto chance_thresholds = [&](const State& s,
                               const ChanceDecision& c) -> const std::vector<std::uint64_t>& {
    auto it = chance_cache.find(s);
    if (it != chance_cache.end()) return it->second;
    Rational cum;
    std::vector<std::uint64_t> th;
    th.reserve(c.branches.size());
    for (const auto& [q, succ] : c.branches) {
      cum += q;
      th.push_back(cum == Rational(1) ? UINT64_MAX : probability_threshold_u64(cum));
    }
    if (cum != Rational(1)) throw EvalError("chance probabilities sum to " + cum.str());
    return chance_cache.emplace(s, std::move(th)).first->second;
  };

  std::vector<std::uint64_t> counts(n, 0);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    detail::SplitMix64 rng(detail::substream_seed(seed, trial));
    State s = t.initial;
    int matches = 0;
    for (;;) {
      Decision d = t.step(s);
      if (auto* w = std::get_if<WinnerDecision>(&d)) {
        ++counts[w->who - 1];
        break;
      }
      if (auto* m = std::get_if<MatchDecision>(&d)) {
        if (++matches > t.max_matches)
          throw EvalError("simulate: declared match bound exceeded");
        int idx = (m->a - 1) * n + (m->b - 1);
        bool a_wins = certain[idx] || rng.next() < threshold[idx];
        s = a_wins ? std::move(m->if_a_wins) : std::move(m->if_b_wins);
        continue;
      }
      auto& c = std::get<ChanceDecision>(d);
      const auto& th = chance_thresholds(s, c);
      std::uint64_t u = rng.next();
      size_t k = 0;
      while (k + 1 < th.size() && u >= th[k]) ++k;
      s = std::move(c.branches[k].second);
    }
  }

  SimReport rep;
  rep.trials = trials;
  rep.seed = seed;
  rep.counts = counts;
  rep.empirical.resize(n);
  rep.standard_errors.resize(n);
  for (int i = 0; i < n; ++i) {
    double f = static_cast<double>(counts[i]) / static_cast<double>(trials);
    rep.empirical[i] = f;
    rep.standard_errors[i] = std::sqrt(f * (1.0 - f) / static_cast<double>(trials));
  }
  return rep;
}

}  // namespace tourney
