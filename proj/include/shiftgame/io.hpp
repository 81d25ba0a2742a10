#pragma once
// File formats and report serialization.
//
// Profiles:  {"depth": n, "sigma_g": [...], "sigma_r1": [...], "sigma_r2": [...]}
//            entries are rational strings "p/q", decimal strings, or integers,
//            indexed by cylinder code.
// Graphs:    {"nodes": [{"id": 0, "e": 0, "t1": 1, "t2": null}, ...]}
// Reports carry every number as {"exact": "p/q", "approx": double}; estimates
// additionally carry standard errors. Field order is fixed so identical
// (arguments, seed, version) runs produce byte-identical reports.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "shiftgame/analysis.hpp"
#include "shiftgame/colouring.hpp"
#include "shiftgame/profiles.hpp"
#include "shiftgame/rational.hpp"
#include "shiftgame/version.hpp"

namespace shiftgame {

using ordered_json = nlohmann::ordered_json;

inline ordered_json rational_to_json(const Rational& r) {
  return ordered_json{{"exact", r.to_string()}, {"approx", r.to_double()}};
}

inline Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_string()) return Rational::from_string(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_unsigned()) return Rational(int128(j.get<unsigned long long>()));
  throw std::invalid_argument(
      "probabilities must be rational strings like \"1/2\" or \"0.25\", or integers");
}

// ---------------------------------------------------------------------------
// Profiles

inline ordered_json profile_to_json(const StrategyProfile& p) {
  ordered_json j;
  j["depth"] = p.depth;
  for (const auto& [name, vec] : {std::pair{"sigma_g", &p.sigma_g},
                                  std::pair{"sigma_r1", &p.sigma_r1},
                                  std::pair{"sigma_r2", &p.sigma_r2}}) {
    ordered_json arr = ordered_json::array();
    for (const Rational& r : *vec) arr.push_back(r.to_string());
    j[name] = arr;
  }
  return j;
}

inline StrategyProfile profile_from_json(const nlohmann::json& j) {
  StrategyProfile p;
  if (!j.contains("depth")) throw std::invalid_argument("profile file needs a depth field");
  p.depth = j.at("depth").get<int>();
  auto read = [&](const char* name, std::vector<Rational>& out) {
    if (!j.contains(name))
      throw std::invalid_argument(std::string("profile file needs field ") + name);
    for (const auto& entry : j.at(name)) out.push_back(rational_from_json(entry));
  };
  read("sigma_g", p.sigma_g);
  read("sigma_r1", p.sigma_r1);
  read("sigma_r2", p.sigma_r2);
  p.validate();
  return p;
}

inline StrategyProfile load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open profile file: " + path);
  nlohmann::json j;
  in >> j;
  return profile_from_json(j);
}

inline void save_profile(const StrategyProfile& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write profile file: " + path);
  out << profile_to_json(p).dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// Graphs

inline ordered_json graph_to_json(const PointGraph& g) {
  ordered_json nodes = ordered_json::array();
  for (size_t v = 0; v < g.size(); ++v) {
    ordered_json n;
    n["id"] = v;
    n["e"] = g.nodes[v].e_bit;
    n["t1"] = g.nodes[v].t1 ? ordered_json(*g.nodes[v].t1) : ordered_json(nullptr);
    n["t2"] = g.nodes[v].t2 ? ordered_json(*g.nodes[v].t2) : ordered_json(nullptr);
    nodes.push_back(n);
  }
  return ordered_json{{"nodes", nodes}};
}

inline PointGraph graph_from_json(const nlohmann::json& j) {
  if (!j.contains("nodes")) throw std::invalid_argument("graph file needs a nodes array");
  const auto& arr = j.at("nodes");
  PointGraph g;
  g.nodes.resize(arr.size());
  std::vector<bool> seen(arr.size(), false);
  for (const auto& n : arr) {
    uint64_t id = n.at("id").get<uint64_t>();
    if (id >= g.size() || seen[id])
      throw std::invalid_argument("graph node ids must be 0..n-1 without repeats");
    seen[id] = true;
    PointGraph::Node& node = g.nodes[id];
    node.e_bit = n.at("e").get<int>();
    for (const auto& [key, slot] : {std::pair{"t1", &node.t1}, std::pair{"t2", &node.t2}}) {
      if (n.contains(key) && !n.at(key).is_null())
        *slot = n.at(key).get<uint32_t>();
    }
  }
  g.validate();
  return g;
}

inline PointGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open graph file: " + path);
  nlohmann::json j;
  in >> j;
  return graph_from_json(j);
}

// ---------------------------------------------------------------------------
// Reports

inline ordered_json player_stats_to_json(const PlayerRegretStats& s, bool estimated) {
  ordered_json j;
  j["harsanyi"] = rational_to_json(s.harsanyi);
  j["sup_bayesian"] = rational_to_json(s.sup_bayesian);
  j["witness_code"] = s.witness_code;
  j["witness_depth"] = s.witness_depth;
  if (estimated) j["std_error"] = s.std_error;
  return j;
}

inline ordered_json regret_report_to_json(const RegretReport& r) {
  ordered_json j;
  j["tool_version"] = kToolVersion;
  j["kind"] = r.estimated ? "regret_estimate" : "regret_report";
  j["profile_depth"] = r.profile_depth;
  j["estimated"] = r.estimated;
  if (r.estimated) {
    j["samples"] = r.samples;
    j["seed"] = r.seed;
  }
  j["players"] = ordered_json{{"g0", player_stats_to_json(r.g0, r.estimated)},
                              {"r1", player_stats_to_json(r.r1, r.estimated)},
                              {"r2", player_stats_to_json(r.r2, r.estimated)}};
  j["mixing_mass"] = rational_to_json(r.mixing_mass);
  j["a0_mass"] = rational_to_json(r.a0_mass);
  j["a1_mass"] = rational_to_json(r.a1_mass);
  j["parity_violation_mass"] = rational_to_json(r.parity_violation_mass);
  if (r.estimated) {
    j["mixing_mass_std_error"] = r.mixing_mass_std_error;
    j["parity_violation_std_error"] = r.parity_std_error;
  }
  // sup_bayesian is a max over enumerated (or sampled) cylinders only: a
  // lower bound for the true pointwise supremum
  j["sup_bayesian_note"] = "maximum over enumerated cylinders; lower bound for the sup over points";
  return j;
}

// CSV with columns depth, q, max_r (exact strings plus decimal columns).
inline std::string eta_stats_to_csv(const EtaStats& stats) {
  std::ostringstream out;
  out << "depth,q,q_decimal,max_r,max_r_decimal\n";
  for (const EtaLevel& level : stats.levels) {
    out << level.level << "," << level.q.to_string() << "," << level.q.to_double() << ","
        << level.max_r.to_string() << "," << level.max_r.to_double() << "\n";
  }
  return out.str();
}

// CSV with columns case, b0_bound, b1_bound, gap.
inline std::string twin_cases_to_csv(const std::array<TwinCase, 4>& cases) {
  std::ostringstream out;
  out << "case,b0_bound,b1_bound,gap\n";
  for (const TwinCase& c : cases) {
    Rational b0 = c.preferred == ActionB::b0 ? c.preferred_bound : c.other_bound;
    Rational b1 = c.preferred == ActionB::b1 ? c.preferred_bound : c.other_bound;
    out << c.label << "," << b0.to_string() << "," << b1.to_string() << ","
        << c.gap.to_string() << "\n";
  }
  return out.str();
}

inline ordered_json colouring_to_json(const Colouring& col) {
  ordered_json colours = ordered_json::object();
  for (size_t v = 0; v < col.size(); ++v) {
    if (col[v]) colours[std::to_string(v)] = *col[v];
  }
  return ordered_json{{"kind", "colouring"}, {"colours", colours}};
}

inline ordered_json contradiction_to_json(const Contradiction& c) {
  ordered_json j;
  j["kind"] = "contradiction";
  j["equations"] = c.equations;
  if (c.forced)
    j["forced"] = ordered_json{{"node", c.forced->first}, {"colour", c.forced->second}};
  if (c.conflict_node) j["conflict_node"] = *c.conflict_node;
  j["note"] = c.note;
  return j;
}

inline ordered_json solution_to_json(const FiniteGameSolution& sol) {
  ordered_json nodes = ordered_json::array();
  for (size_t v = 0; v < sol.mix.size(); ++v) {
    nodes.push_back(ordered_json{{"id", v},
                                 {"g", rational_to_json(sol.mix[v].g)},
                                 {"r1", rational_to_json(sol.mix[v].r1)},
                                 {"r2", rational_to_json(sol.mix[v].r2)}});
  }
  ordered_json j;
  j["tool_version"] = kToolVersion;
  j["kind"] = "finite_game_solution";
  j["method"] = sol.method;
  j["converged"] = sol.converged;
  j["max_node_regret"] = rational_to_json(sol.max_node_regret);
  j["some_node_mixes"] = sol.some_node_mixes;
  j["assignment"] = nodes;
  return j;
}

}  // namespace shiftgame
