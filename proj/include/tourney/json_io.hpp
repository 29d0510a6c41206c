#pragma once

// JSON and CSV serialization. Rationals travel as "num/den" (or integer)
// strings so every value round-trips bit-exactly; decimals appear only in
// clearly display-only fields.

#include <tourney/analysis.hpp>
#include <tourney/digraph.hpp>
#include <tourney/matrix.hpp>
#include <tourney/membership.hpp>
#include <tourney/simulate.hpp>
#include <tourney/tournament.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace tourney {

using nlohmann::json;

inline json rational_json(const Rational& r) { return r.str(); }
inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  return Rational::parse(j.get<std::string>());
}

inline json matrix_to_json(const MatchMatrix& m) {
  json rows = json::array();
  for (int i = 1; i <= m.n(); ++i) {
    json row = json::array();
    for (int j = 1; j <= m.n(); ++j) row.push_back(rational_json(m.p(i, j)));
    rows.push_back(std::move(row));
  }
  return json{{"n", m.n()}, {"p", std::move(rows)}};
}

inline MatchMatrix matrix_from_json(const json& j) {
  int n = j.at("n").get<int>();
  const json& rows = j.at("p");
  if (static_cast<int>(rows.size()) != n)
    throw TourneyError("matrix json: row count != n");
  std::vector<std::vector<Rational>> raw(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      throw TourneyError("matrix json: column count != n");
    for (const auto& cell : rows[i]) raw[i].push_back(rational_from_json(cell));
  }
  return MatchMatrix::validate(raw);
}

inline json win_vector_to_json(const WinVector& v) {
  json arr = json::array();
  for (int i = 1; i <= v.n(); ++i) arr.push_back(rational_json(v[i]));
  return arr;
}

inline WinVector win_vector_from_json(const json& j) {
  std::vector<Rational> comps;
  for (const auto& c : j) comps.push_back(rational_from_json(c));
  return WinVector(std::move(comps));
}

inline json digraph_to_json(const Digraph& g) {
  json arcs = json::array();
  for (const auto& [u, v, m] : g.arcs()) arcs.push_back(json::array({u, v, m}));
  return json{{"n", g.n()}, {"arcs", std::move(arcs)}};
}

inline Digraph digraph_from_json(const json& j) {
  int n = j.at("n").get<int>();
  std::vector<std::vector<int>> targets(n);
  for (const auto& arc : j.at("arcs")) {
    int u = arc.at(0).get<int>(), v = arc.at(1).get<int>();
    int mult = arc.size() > 2 ? arc.at(2).get<int>() : 1;
    for (int k = 0; k < mult; ++k) targets.at(u - 1).push_back(v);
  }
  std::vector<std::array<int, 2>> out(n);
  for (int v = 1; v <= n; ++v) {
    if (targets[v - 1].size() != 2)
      throw TourneyError("digraph json: vertex " + std::to_string(v) +
                         " must have out-degree 2");
    out[v - 1] = {targets[v - 1][0], targets[v - 1][1]};
  }
  return Digraph(n, out);
}

inline json eval_report_to_json(const EvalReport& r, const MatchMatrix& input) {
  json decimals = json::array();
  for (int i = 1; i <= r.win_vector.n(); ++i)
    decimals.push_back(r.win_vector[i].to_double());
  return json{{"win_vector", win_vector_to_json(r.win_vector)},
              {"win_vector_display_decimal", std::move(decimals)},
              {"states_visited", r.states_visited},
              {"leaf_count", r.leaf_count},
              {"matrix", matrix_to_json(input)}};
}

inline json sim_report_to_json(const SimReport& r, const MatchMatrix& input) {
  return json{{"trials", r.trials},
              {"seed", r.seed},
              {"counts", r.counts},
              {"empirical", r.empirical},
              {"standard_errors", r.standard_errors},
              {"matrix", matrix_to_json(input)}};
}

inline json witness_to_json(const Witness& w) {
  json out{{"description", w.description}};
  if (w.state) {
    json st = json::array();
    for (long long v : *w.state) st.push_back(v);
    out["state"] = std::move(st);
  }
  if (!w.values.empty()) {
    json vals = json::array();
    for (const auto& v : w.values) vals.push_back(rational_json(v));
    out["values"] = std::move(vals);
  }
  if (w.sample_index >= 0) out["sample_index"] = w.sample_index;
  return out;
}

inline json property_report_to_json(const PropertyReport& r) {
  const char* verdict = r.verdict == Verdict::pass ? "pass"
                        : r.verdict == Verdict::fail ? "fail"
                                                     : "pass-on-samples";
  json ws = json::array();
  for (const auto& w : r.witnesses) ws.push_back(witness_to_json(w));
  json out{{"property", r.property},
           {"verdict", verdict},
           {"witnesses", std::move(ws)},
           {"states_checked", r.states_checked},
           {"samples_checked", r.samples_checked}};
  if (!r.notes.empty()) out["notes"] = r.notes;
  return out;
}

inline json membership_to_json(const MembershipResult& r) {
  json out{{"member", r.member}};
  if (r.flow) {
    json rows = json::array();
    for (const auto& row : r.flow->m) {
      json jr = json::array();
      for (const auto& v : row) jr.push_back(rational_json(v));
      rows.push_back(std::move(jr));
    }
    out["arc_flow"] = std::move(rows);
  }
  if (r.lambdas) {
    json l = json::array();
    for (const auto& v : *r.lambdas) l.push_back(rational_json(v));
    out["hull_coefficients"] = std::move(l);
  }
  if (r.separator) {
    json u = json::array();
    for (const auto& v : *r.separator) u.push_back(rational_json(v));
    out["separator"] = std::move(u);
    if (r.separator_offset) out["separator_offset"] = rational_json(*r.separator_offset);
  }
  return out;
}

inline std::string corners_to_csv(int n) {
  std::string out = "index,vector\n";
  auto cs = corners(n);
  for (size_t k = 0; k < cs.size(); ++k) {
    out += std::to_string(k) + ",\"";
    for (int i = 1; i <= n; ++i)
      out += (i > 1 ? "," : "") + cs[k][i].str();
    out += "\"\n";
  }
  return out;
}

inline std::string corner_table_to_csv(int n) {
  std::string out = "sigma_class,arcs,vector\n";
  for (const auto& row : corner_table(n)) {
    out += "\"";
    for (size_t k = 0; k < row.sigmas.size(); ++k)
      out += (k ? " | " : "") + row.sigmas[k].str();
    out += "\",\"" + row.digraph.str() + "\",\"";
    for (int i = 1; i <= n; ++i) out += (i > 1 ? "," : "") + row.vector[i].str();
    out += "\"\n";
  }
  return out;
}

}  // namespace tourney
