// Command-line front end: exact evaluation, seeded simulation, polytope
// queries, property checks, and the discrete-map LP, with JSON/CSV output.
// Exit codes: 0 = ok / property passed, 1 = property failed, 2 = error.

#include <tourney/analysis.hpp>
#include <tourney/json_io.hpp>
#include <tourney/membership.hpp>
#include <tourney/samples.hpp>
#include <tourney/zoo.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace tourney;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TourneyError("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw TourneyError("cannot write " + out_path);
  out << text << "\n";
}

struct TournamentChoice {
  std::string kind = "t1";
  int n = 3;
  int N = 2;
  std::string spec_path;
};

Tournament build_tournament(const TournamentChoice& c) {
  if (c.kind == "t1") return make_unfair3(Unfair3Variant::t1, c.N);
  if (c.kind == "t2") return make_unfair3(Unfair3Variant::t2, c.N);
  if (c.kind == "rr-max") return make_roundrobin_repeat(c.n, c.N, Tiebreak::max_uniform);
  if (c.kind == "rr-min-coin")
    return make_roundrobin_repeat(3, c.N, Tiebreak::min_out_then_coin);
  if (c.kind == "uniform") return make_uniform_winner(c.n);
  if (c.kind == "single-elim") return make_single_elim_random(c.n);
  if (c.kind == "map")
    return make_map_tournament(uniform_strict_map(c.n), c.n, c.N);
  if (c.kind == "rounds-example") return sequentialize(make_rounds_example());
  if (c.kind == "graph") {
    if (c.spec_path.empty())
      throw TourneyError("--spec file required for the graph tournament");
    json j = read_json_file(c.spec_path);
    GraphTournamentSpec spec{
        digraph_from_json(j.at("digraph")),
        j.contains("p_param") ? matrix_from_json(j.at("p_param"))
                              : default_graph_matrix(j.at("digraph").at("n").get<int>()),
        j.value("N", 1)};
    return make_graph_tournament(spec);
  }
  throw TourneyError("unknown tournament '" + c.kind + "'");
}

MatchMatrix load_matrix(const std::string& path, int fallback_n) {
  if (path.empty()) return MatchMatrix::uniform(fallback_n);
  return matrix_from_json(read_json_file(path));
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Rational::parse(item));
  return out;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"exact analysis of matchplay tournament formats"};
  app.require_subcommand(1);

  TournamentChoice choice;
  std::string matrix_path, out_path, format = "json", x_text, method = "both";
  std::string property = "honesty", objective = "max:1";
  std::uint64_t trials = 100000, seed = 0;
  std::uint64_t sample_seed = kSampleSeed;
  int n = 3;
  bool count_only = false;

  auto add_tournament_flags = [&](CLI::App* cmd) {
    cmd->add_option("--tournament", choice.kind,
                    "t1|t2|rr-max|rr-min-coin|uniform|single-elim|map|graph|rounds-example");
    cmd->add_option("--n", choice.n, "player count");
    cmd->add_option("--N", choice.N, "iteration parameter");
    cmd->add_option("--spec", choice.spec_path, "graph tournament spec (JSON)");
    cmd->add_option("--matrix", matrix_path, "match matrix JSON file");
    cmd->add_option("--out", out_path, "output file (default: stdout)");
  };

  auto* eval_cmd = app.add_subcommand("eval", "exact win vector");
  add_tournament_flags(eval_cmd);

  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo win frequencies");
  add_tournament_flags(sim_cmd);
  sim_cmd->add_option("--trials", trials, "number of trials");
  sim_cmd->add_option("--seed", seed, "RNG seed (required)")->required();

  auto* corners_cmd = app.add_subcommand("corners", "corner vectors of the polytope");
  corners_cmd->add_option("--n", n, "player count")->required();
  corners_cmd->add_option("--format", format, "json|csv");
  corners_cmd->add_option("--out", out_path, "output file");

  auto* digraphs_cmd = app.add_subcommand("digraphs", "enumerate the digraph family");
  digraphs_cmd->add_option("--n", n, "vertex count")->required();
  digraphs_cmd->add_flag("--count-only", count_only, "print only the count");
  digraphs_cmd->add_option("--out", out_path, "output file");

  auto* member_cmd = app.add_subcommand("member", "polytope membership of a vector");
  member_cmd->add_option("--n", n, "dimension")->required();
  member_cmd->add_option("--x", x_text, "comma-separated rationals")->required();
  member_cmd->add_option("--method", method, "arc-flow|hull|both");
  member_cmd->add_option("--out", out_path, "output file");

  auto* check_cmd = app.add_subcommand("check", "property check on the sample set");
  add_tournament_flags(check_cmd);
  check_cmd->add_option("--property", property,
                        "symmetry|honesty|strict-honesty|fairness|futility|rounds-honesty");
  check_cmd->add_option("--sample-seed", sample_seed, "seed for the sample matrices");

  auto* probe_cmd = app.add_subcommand("probe-map", "optimize over discrete symmetric honest maps");
  probe_cmd->add_option("--matrix", matrix_path, "base matrix JSON file")->required();
  probe_cmd->add_option("--objective", objective, "max:<player> or min:<player>");
  probe_cmd->add_option("--out", out_path, "output file");

  auto* table1_cmd = app.add_subcommand("table1", "corner map table for n = 2 and 3");
  table1_cmd->add_option("--format", format, "csv|json");
  table1_cmd->add_option("--out", out_path, "output file");

  CLI11_PARSE(app, argc, argv);

  if (eval_cmd->parsed()) {
    Tournament t = build_tournament(choice);
    MatchMatrix P = load_matrix(matrix_path, t.n);
    auto rep = exact_win_vector(t, P);
    emit(eval_report_to_json(rep, P).dump(2), out_path);
    return 0;
  }
  if (sim_cmd->parsed()) {
    Tournament t = build_tournament(choice);
    MatchMatrix P = load_matrix(matrix_path, t.n);
    auto rep = simulate(t, P, trials, seed);
    emit(sim_report_to_json(rep, P).dump(2), out_path);
    return 0;
  }
  if (corners_cmd->parsed()) {
    if (format == "csv") {
      emit(corners_to_csv(n), out_path);
    } else {
      json arr = json::array();
      for (const auto& c : corners(n)) arr.push_back(win_vector_to_json(c));
      emit(json{{"n", n}, {"count", arr.size()}, {"corners", std::move(arr)}}.dump(2),
           out_path);
    }
    return 0;
  }
  if (digraphs_cmd->parsed()) {
    if (count_only) {
      emit(json{{"n", n}, {"count", digraph_count(n)}}.dump(2), out_path);
      return 0;
    }
    json arr = json::array();
    for (const auto& g : enumerate_digraphs(n)) {
      json item = digraph_to_json(g);
      item["vector"] = win_vector_to_json(graph_vector(g));
      arr.push_back(std::move(item));
    }
    emit(json{{"n", n}, {"count", arr.size()}, {"digraphs", std::move(arr)}}.dump(2),
         out_path);
    return 0;
  }
  if (member_cmd->parsed()) {
    WinVector x(parse_rational_list(x_text));
    if (x.n() != n) throw TourneyError("--x has wrong dimension");
    json out{{"x", win_vector_to_json(x)}};
    if (method == "arc-flow" || method == "both")
      out["arc_flow"] = membership_to_json(arc_flow_membership(x));
    if (method == "hull" || method == "both")
      out["hull"] = membership_to_json(hull_membership(x));
    if (method == "both") {
      bool a = out["arc_flow"]["member"].get<bool>();
      bool h = out["hull"]["member"].get<bool>();
      if (a != h) throw TourneyError("membership tests disagree (internal error)");
      out["member"] = a;
    }
    emit(out.dump(2), out_path);
    return 0;
  }
  if (check_cmd->parsed()) {
    PropertyReport rep;
    if (property == "rounds-honesty") {
      if (choice.kind != "rounds-example")
        throw TourneyError("rounds-honesty applies to --tournament rounds-example");
      rep = check_rounds_honesty(make_rounds_example(),
                                 standard_samples(4, sample_seed));
    } else {
      Tournament t = build_tournament(choice);
      if (property == "symmetry")
        rep = check_symmetry(t, standard_samples(t.n, sample_seed));
      else if (property == "honesty")
        rep = check_honesty(t, standard_samples(t.n, sample_seed), false);
      else if (property == "strict-honesty")
        rep = check_honesty(t, standard_samples(t.n, sample_seed), true);
      else if (property == "fairness")
        rep = check_fairness(t, doubly_monotonic_samples(t.n, sample_seed));
      else if (property == "futility")
        rep = check_futility(t, standard_samples(t.n, sample_seed));
      else
        throw TourneyError("unknown property '" + property + "'");
    }
    emit(property_report_to_json(rep).dump(2), out_path);
    return rep.ok() ? 0 : 1;
  }
  if (probe_cmd->parsed()) {
    MatchMatrix P = matrix_from_json(read_json_file(matrix_path));
    auto colon = objective.find(':');
    if (colon == std::string::npos) throw TourneyError("--objective must be max:<k> or min:<k>");
    bool maximize = objective.substr(0, colon) == "max";
    int player = std::stoi(objective.substr(colon + 1));
    if (player < 1 || player > P.n()) throw TourneyError("objective player out of range");
    DiscreteMapPolytope poly(P);
    std::vector<Rational> coeffs(P.n(), Rational(0));
    coeffs[player - 1] = Rational(1);
    auto opt = poly.optimize(coeffs, maximize);
    json out{{"objective", objective},
             {"optimum", rational_json(opt.value)},
             {"f_at_base", win_vector_to_json(opt.f_at_base)},
             {"domain_size", poly.domain_size()},
             {"variables", poly.variable_count()}};
    emit(out.dump(2), out_path);
    return 0;
  }
  if (table1_cmd->parsed()) {
    if (format == "csv") {
      emit(corner_table_to_csv(2) + corner_table_to_csv(3), out_path);
      return 0;
    }
    json out = json::array();
    for (int k : {2, 3}) {
      for (const auto& row : corner_table(k)) {
        json sig = json::array();
        for (const auto& s : row.sigmas) sig.push_back(s.str());
        out.push_back(json{{"n", k},
                           {"sigmas", std::move(sig)},
                           {"digraph", digraph_to_json(row.digraph)},
                           {"vector", win_vector_to_json(row.vector)}});
      }
    }
    emit(out.dump(2), out_path);
    return 0;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const CLI::ParseError&) {
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
