#pragma once

// The digraph family G_n whose graph vectors generate the polytope of
// achievable win vectors: every vertex has out-degree exactly 2, arcs point
// to lower-or-equal labels, and a doubled target is only allowed for the
// vertex itself or vertex 1.

#include <tourney/matrix.hpp>
#include <tourney/rational.hpp>

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace tourney {

class Digraph {
public:
  // out[v-1] = the two arc targets of vertex v, sorted ascending.
  Digraph(int n, std::vector<std::array<int, 2>> out) : n_(n), out_(std::move(out)) {
    if (static_cast<int>(out_.size()) != n_) throw TourneyError("Digraph: bad out list");
    for (int v = 1; v <= n_; ++v) {
      auto [a, b] = out_[v - 1];
      if (a > b) std::swap(out_[v - 1][0], out_[v - 1][1]);
      a = out_[v - 1][0];
      b = out_[v - 1][1];
      if (a < 1 || b > n_) throw TourneyError("Digraph: target out of range");
      if (a > v || b > v) throw TourneyError("Digraph: arc points to higher label");
      if (a == b && a != 1 && a != v)
        throw TourneyError("Digraph: doubled target must be 1 or the vertex itself");
    }
  }

  int n() const { return n_; }
  const std::array<int, 2>& out(int v) const { return out_.at(v - 1); }

  int arc_count(int from, int to) const {
    const auto& o = out(from);
    return (o[0] == to) + (o[1] == to);
  }
  int indegree(int v) const {
    int d = 0;
    for (int u = 1; u <= n_; ++u) d += arc_count(u, v);
    return d;
  }

  // Arc multiset as (from, to, multiplicity), from-major.
  std::vector<std::array<int, 3>> arcs() const {
    std::vector<std::array<int, 3>> out;
    for (int u = 1; u <= n_; ++u) {
      const auto& o = out_[u - 1];
      if (o[0] == o[1]) {
        out.push_back({u, o[0], 2});
      } else {
        out.push_back({u, o[0], 1});
        out.push_back({u, o[1], 1});
      }
    }
    return out;
  }

  std::string str() const {
    std::string s;
    for (const auto& [u, v, m] : arcs()) {
      if (!s.empty()) s += ", ";
      s += std::to_string(u) + "->" + std::to_string(v);
      if (m == 2) s += " x2";
    }
    return s;
  }

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.n_ == b.n_ && a.out_ == b.out_;
  }
  friend bool operator<(const Digraph& a, const Digraph& b) { return a.out_ < b.out_; }

private:
  int n_;
  std::vector<std::array<int, 2>> out_;
};

// |G_n| = prod_{i=2..n} (2 + C(i,2)).
inline long digraph_count(int n) {
  long c = 1;
  for (int i = 2; i <= n; ++i) c *= 2 + i * (i - 1) / 2;
  return c;
}

inline std::vector<Digraph> enumerate_digraphs(int n, int guard = 6) {
  if (n < 1 || n > guard)
    throw SizeGuardError("enumerate_digraphs: n=" + std::to_string(n) +
                         " outside guard 1.." + std::to_string(guard));
  // Per-vertex choices: both loops, both to 1, or a distinct pair j1 < j2 <= v.
  std::vector<std::vector<std::array<int, 2>>> choices(n);
  for (int v = 1; v <= n; ++v) {
    auto& ch = choices[v - 1];
    ch.push_back({v, v});
    if (v > 1) ch.push_back({1, 1});
    for (int a = 1; a <= v; ++a)
      for (int b = a + 1; b <= v; ++b) ch.push_back({a, b});
  }
  std::vector<Digraph> out;
  std::vector<std::array<int, 2>> cur(n);
  std::vector<size_t> idx(n, 0);
  while (true) {
    for (int v = 0; v < n; ++v) cur[v] = choices[v][idx[v]];
    out.push_back(Digraph(n, cur));
    int v = n - 1;
    while (v >= 0 && ++idx[v] == choices[v].size()) idx[v--] = 0;
    if (v < 0) break;
  }
  return out;
}

// v_i = indeg(i) / 2n; cross-checked against the out-degree identity
// v_i = 1/n + (indeg - outdeg)/2n.
inline WinVector graph_vector(const Digraph& G) {
  int n = G.n();
  std::vector<Rational> comps;
  comps.reserve(n);
  for (int v = 1; v <= n; ++v) {
    Rational via_indeg(G.indegree(v), 2L * n);
    Rational via_balance = Rational(1, n) + Rational(G.indegree(v) - 2, 2L * n);
    if (via_indeg != via_balance)
      throw TourneyError("graph_vector: identity mismatch");  // unreachable
    comps.push_back(via_indeg);
  }
  return WinVector(std::move(comps));
}

// Greedy digraph for a target order: route every still-free out-arc of each
// vertex v >= t to target t, doubling only when t == 1 or t == v.
// Accepts full permutations or corner sequences (partial).
inline Digraph sigma_to_digraph(int n, const std::vector<int>& order) {
  std::vector<int> free_slots(n, 2);
  std::vector<std::vector<int>> assigned(n);
  for (int t : order) {
    for (int v = t; v <= n; ++v) {
      if (free_slots[v - 1] == 0) continue;
      int take = (t == 1 || t == v) ? free_slots[v - 1] : 1;
      for (int k = 0; k < take; ++k) assigned[v - 1].push_back(t);
      free_slots[v - 1] -= take;
    }
  }
  for (int v = 1; v <= n; ++v)
    if (free_slots[v - 1] != 0)
      throw TourneyError("sigma_to_digraph: order leaves vertex " + std::to_string(v) +
                         " with unassigned arcs (must contain 1)");
  std::vector<std::array<int, 2>> out(n);
  for (int v = 1; v <= n; ++v) {
    auto& a = assigned[v - 1];
    out[v - 1] = {a[0], a.size() == 2 ? a[1] : a[0]};
  }
  return Digraph(n, out);
}

inline Digraph sigma_to_digraph(const Permutation& sigma) {
  std::vector<int> order;
  for (int i = 1; i <= sigma.n(); ++i) order.push_back(sigma(i));
  return sigma_to_digraph(sigma.n(), order);
}

// Sequences of distinct elements of [n] that (i) end with 1 and (ii) have,
// before each element, at most one smaller element. These index the corners.
inline std::vector<std::vector<int>> corner_sequences(int n, int guard = 12) {
  if (n < 1 || n > guard)
    throw SizeGuardError("corner_sequences: n outside guard");
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::vector<bool> used(n + 1, false);
  auto rec = [&](auto&& self) -> void {
    if (!cur.empty() && cur.back() == 1) {
      out.push_back(cur);
      return;
    }
    for (int v = 1; v <= n; ++v) {
      if (used[v]) continue;
      int smaller = 0;
      for (int u : cur)
        if (u < v) ++smaller;
      if (smaller > 1) continue;
      used[v] = true;
      cur.push_back(v);
      self(self);
      cur.pop_back();
      used[v] = false;
    }
  };
  rec(rec);
  return out;
}

inline long corner_count(int n) {
  long p = 1;
  for (int i = 1; i < n; ++i) p *= 3;
  return (p + 1) / 2;
}

// The corner vectors of A*_n, one per corner sequence; distinctness is
// asserted (the corner-sequence encoding is injective).
inline std::vector<WinVector> corners(int n, int guard = 7) {
  if (n < 1 || n > guard) throw SizeGuardError("corners: n outside guard");
  std::set<WinVector> seen;
  std::vector<WinVector> out;
  for (const auto& seq : corner_sequences(n)) {
    WinVector v = graph_vector(sigma_to_digraph(n, seq));
    if (!seen.insert(v).second)
      throw TourneyError("corners: duplicate corner vector (injectivity violated)");
    out.push_back(std::move(v));
  }
  return out;
}

// Permutations grouped by their greedy digraph, with the graph vector.
struct CornerTableRow {
  std::vector<Permutation> sigmas;
  Digraph digraph;
  WinVector vector;
};

inline std::vector<CornerTableRow> corner_table(int n) {
  std::map<Digraph, std::vector<Permutation>> groups;
  for (const auto& sigma : all_permutations(n))
    groups.emplace(sigma_to_digraph(sigma), std::vector<Permutation>{})
        .first->second.push_back(sigma);
  std::vector<CornerTableRow> rows;
  for (const auto& [g, sigmas] : groups)
    rows.push_back(CornerTableRow{sigmas, g, graph_vector(g)});
  return rows;
}

}  // namespace tourney
