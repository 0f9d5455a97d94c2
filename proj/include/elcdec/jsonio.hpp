#pragma once

// JSON import/export: code specs, reduction reports, simulation configs and
// results, and automorphism generator files.

#include <string>
#include <vector>

#include "json.hpp"

#include "elcdec/codes.hpp"
#include "elcdec/perm.hpp"
#include "elcdec/sim.hpp"

namespace elcdec {

using nlohmann::json;

inline json code_to_json(const CodeSpec& code) {
  json j;
  j["name"] = code.name;
  j["n"] = code.n;
  j["k"] = code.k;
  if (code.d)
    j["d"] = *code.d;
  else
    j["d"] = nullptr;
  j["weight"] = weight(code.H);
  j["four_cycles"] = four_cycles(code.H);
  j["provenance"] = code.provenance.to_string();
  json rows = json::array();
  for (std::size_t r = 0; r < code.H.rows(); ++r) rows.push_back(row_hex(code.H, r));
  j["H"] = rows;
  return j;
}

inline json report_to_json(const ReductionReport& rep) {
  return json{{"initial_weight", rep.initial_weight},
              {"initial_cycles", rep.initial_cycles},
              {"final_weight", rep.final_weight},
              {"final_cycles", rep.final_cycles},
              {"moves", rep.moves},
              {"restricted_to_standard_form", rep.restricted_to_standard_form}};
}

inline const char* to_string(ElcInitScope s) {
  return s == ElcInitScope::all_new ? "all-new" : "complement-only";
}

inline ElcInitScope parse_elc_init_scope(const std::string& s) {
  if (s == "all-new" || s == "all_new") return ElcInitScope::all_new;
  if (s == "complement-only" || s == "complement_only") return ElcInitScope::complement_only;
  throw Error("unknown elc_init_scope '" + s + "'");
}

inline json params_to_json(const DecodeParams& p) {
  return json{{"i1", p.i1},
              {"i2", p.i2},
              {"i3", p.i3},
              {"alpha0", p.alpha0},
              {"p", p.p},
              {"clamp", p.clamp},
              {"syndrome_stop", p.syndrome_stop},
              {"elc_init_scope", to_string(p.elc_init_scope)}};
}

inline DecodeParams params_from_json(const json& j) {
  DecodeParams p;
  p.i1 = j.value("i1", p.i1);
  p.i2 = j.value("i2", p.i2);
  p.i3 = j.value("i3", p.i3);
  p.alpha0 = j.value("alpha0", p.alpha0);
  p.p = j.value("p", p.p);
  p.clamp = j.value("clamp", p.clamp);
  p.syndrome_stop = j.value("syndrome_stop", p.syndrome_stop);
  if (j.contains("elc_init_scope"))
    p.elc_init_scope = parse_elc_init_scope(j["elc_init_scope"].get<std::string>());
  if (p.alpha0 <= 0.0 || p.alpha0 > 1.0) throw Error("alpha0 must be in (0, 1]");
  return p;
}

inline json point_to_json(const FerPoint& pt) {
  return json{{"ebn0_db", pt.ebn0_db},
              {"frames", pt.frames},
              {"frame_errors", pt.frame_errors},
              {"undetected", pt.undetected},
              {"detected", pt.frame_errors - pt.undetected},
              {"fer", pt.fer},
              {"avg_spa_messages", pt.avg_spa_messages},
              {"avg_checkmsg_only", pt.avg_checkmsg_only},
              {"avg_iterations", pt.avg_iterations},
              {"avg_elc_ops", pt.avg_elc_ops},
              {"wallclock_s", pt.wallclock_s},
              {"budget_exhausted", pt.budget_exhausted}};
}

// Generator file format: {"n": N, "gens": [[images...], ...]}
inline GeneratorSet generators_from_json(const json& j, const std::string& source) {
  GeneratorSet out;
  out.n = j.at("n").get<std::size_t>();
  for (const auto& arr : j.at("gens")) {
    std::vector<std::uint32_t> img = arr.get<std::vector<std::uint32_t>>();
    if (img.size() != out.n) throw Error("generator length != n");
    out.gens.emplace_back(std::move(img));
  }
  out.source = source;
  return out;
}

inline json generators_to_json(const GeneratorSet& g) {
  json arr = json::array();
  for (const auto& pi : g.gens) arr.push_back(pi.images());
  return json{{"n", g.n}, {"gens", arr}};
}

}  // namespace elcdec
