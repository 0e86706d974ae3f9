/*
 * Copyright 2026 The egsolve authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "egsolve/cpremin.hpp"
#include "egsolve/encoding.hpp"
#include "egsolve/explicit_game.hpp"
#include "egsolve/game.hpp"
#include "egsolve/parser.hpp"
#include "egsolve/reduction.hpp"
#include "egsolve/sema.hpp"
#include "egsolve/solver_add.hpp"
#include "egsolve/solver_bdd.hpp"

namespace egsolve {

/// A specification compiled down to its symbolic game, ready for solving.
/// Owns the manager and encoding; safe to move.
struct LoadedGame {
  std::unique_ptr<DdManager> mgr;
  std::unique_ptr<Encoding> enc;
  SpecAst raw_ast;
  CheckedSpec checked;
  SymbolicGameGraph graph;
  WeightPartition partition;
  Add weight_add;
  std::vector<std::string> warnings;

  std::uint64_t valid_state_count() const {
    return mgr->sat_count(graph.valid_states, enc->all_unprimed);
  }
};

inline LoadedGame load_game(const std::string& spec_text, const std::string& weights_text) {
  LoadedGame lg;
  lg.raw_ast = parse_spec(spec_text);
  lg.checked = expand_and_check(lg.raw_ast);
  lg.warnings = lg.checked.warnings;
  lg.mgr = std::make_unique<DdManager>(manager_vars_for(lg.raw_ast));
  lg.enc = std::make_unique<Encoding>(build_encoding(lg.raw_ast, *lg.mgr));
  lg.graph = build_graph(lg.checked, *lg.mgr, *lg.enc);
  std::vector<WeightEntry> entries =
      check_weights(lg.raw_ast, parse_weights(weights_text), &lg.warnings);
  lg.partition = normalize_weights(entries, lg.graph);
  lg.weight_add = partition_to_add(lg.partition, *lg.mgr);
  return lg;
}

// ---- run reports -----------------------------------------------------------------

enum class Engine { Bdd, Add, Both, Oracle };

inline const char* engine_name(Engine e) {
  switch (e) {
    case Engine::Bdd: return "bdd";
    case Engine::Add: return "add";
    case Engine::Both: return "both";
    case Engine::Oracle: return "oracle";
  }
  return "?";
}

inline std::optional<Engine> engine_from_name(const std::string& s) {
  if (s == "bdd") return Engine::Bdd;
  if (s == "add") return Engine::Add;
  if (s == "both") return Engine::Both;
  if (s == "oracle") return Engine::Oracle;
  return std::nullopt;
}

struct RunReport {
  int schema_version = 1;
  std::string engine;
  std::int64_t max_energy = 0;
  std::uint64_t valid_states = 0;
  bool realizable = false;
  std::optional<std::int64_t> iterations_bdd, iterations_add, iterations_oracle;
  std::optional<double> wall_bdd_ms, wall_add_ms, wall_oracle_ms;
  std::optional<bool> engines_agree;
  std::optional<std::int64_t> max_finite_energy;
  // energy value ("0", "1", ... or "inf") -> number of states
  std::vector<std::pair<std::string, std::uint64_t>> histogram;
};

/// Wall-clock fields are reported but excluded from the determinism view.
inline nlohmann::ordered_json report_to_json(const RunReport& r, bool with_wall_times = true) {
  nlohmann::ordered_json j;
  j["schema_version"] = r.schema_version;
  j["engine"] = r.engine;
  j["max_energy"] = r.max_energy;
  j["valid_states"] = r.valid_states;
  j["realizable"] = r.realizable;
  auto put_opt = [&](const char* k, const auto& v) {
    if (v) j[k] = *v;
  };
  put_opt("iterations_bdd", r.iterations_bdd);
  put_opt("iterations_add", r.iterations_add);
  put_opt("iterations_oracle", r.iterations_oracle);
  put_opt("engines_agree", r.engines_agree);
  if (r.max_finite_energy) j["max_finite_energy"] = *r.max_finite_energy;
  else j["max_finite_energy"] = nullptr;
  nlohmann::ordered_json h = nlohmann::ordered_json::array();
  for (const auto& [k, v] : r.histogram) h.push_back({{"energy", k}, {"states", v}});
  j["energy_histogram"] = std::move(h);
  if (with_wall_times) {
    nlohmann::ordered_json w;
    if (r.wall_bdd_ms) w["bdd_ms"] = *r.wall_bdd_ms;
    if (r.wall_add_ms) w["add_ms"] = *r.wall_add_ms;
    if (r.wall_oracle_ms) w["oracle_ms"] = *r.wall_oracle_ms;
    j["wall_times"] = std::move(w);
  }
  return j;
}

namespace detail {

inline void histogram_from_add(LoadedGame& lg, Add energy, RunReport& out) {
  DdManager& mgr = *lg.mgr;
  std::uint64_t covered = 0;
  for (ExtInt t : mgr.add_terminal_values(energy)) {
    Bdd set = mgr.add_to_bdd(energy, TerminalPred{TerminalPred::Eq, t}) & lg.graph.valid_states;
    std::uint64_t n = mgr.sat_count(set, lg.enc->all_unprimed);
    if (n == 0) continue;
    if (t.is_finite()) {
      out.histogram.emplace_back(std::to_string(t.value()), n);
      covered += n;
      if (!out.max_finite_energy || *out.max_finite_energy < t.value())
        out.max_finite_energy = t.value();
    }
  }
  std::uint64_t inf_n = out.valid_states - covered;
  if (inf_n > 0) out.histogram.emplace_back("inf", inf_n);
}

}  // namespace detail

struct SolveOptions {
  std::int64_t max_energy = 100;
  Engine engine = Engine::Both;
  std::size_t explosion_limit = kDefaultExplosionLimit;
  std::ostream* trace = nullptr;
  BddIterationHook bdd_hook;
  AddIterationHook add_hook;
};

inline RunReport run_solve(LoadedGame& lg, const SolveOptions& opt) {
  RunReport r;
  r.engine = engine_name(opt.engine);
  r.max_energy = opt.max_energy;
  r.valid_states = lg.valid_state_count();

  std::optional<BddSolveResult> bdd;
  std::optional<AddSolveResult> add;

  if (opt.engine == Engine::Bdd || opt.engine == Engine::Both) {
    bdd = solve_bdd(lg.graph, lg.partition, opt.max_energy, opt.bdd_hook, opt.trace);
    r.iterations_bdd = bdd->iterations;
    r.wall_bdd_ms = bdd->wall_ms;
    r.realizable = bdd->realizable;
  }
  if (opt.engine == Engine::Add || opt.engine == Engine::Both) {
    add = solve_add(lg.graph, lg.weight_add, opt.max_energy, opt.add_hook, opt.trace);
    r.iterations_add = add->iterations;
    r.wall_add_ms = add->wall_ms;
    r.realizable = add->realizable;
  }
  if (opt.engine == Engine::Oracle) {
    auto t0 = std::chrono::steady_clock::now();
    ExplicitGame eg = explicate(lg.graph, lg.partition, opt.explosion_limit);
    CreditMap m = cpremin_reactive(eg, opt.max_energy);
    r.wall_oracle_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    r.iterations_oracle = m.iterations;
    std::map<std::int64_t, std::uint64_t> counts;
    std::uint64_t inf_n = 0;
    for (std::int64_t v : m.value) {
      if (v == kInfiniteCredit) ++inf_n;
      else ++counts[v];
    }
    for (auto& [v, n] : counts) {
      r.histogram.emplace_back(std::to_string(v), n);
      r.max_finite_energy = v;
    }
    if (inf_n) r.histogram.emplace_back("inf", inf_n);
    // realizability over the explicit winning set, mirroring the symbolic check
    Bdd win = lg.mgr->bdd_false();
    for (std::uint32_t s = 0; s < eg.states.size(); ++s) {
      if (m.value[s] == kInfiniteCredit) continue;
      Bdd cube = lg.mgr->bdd_true();
      for (std::size_t b = 0; b < lg.enc->all_unprimed.size(); ++b)
        cube = cube & (eg.states[s][b] ? lg.mgr->var(lg.enc->all_unprimed[b])
                                       : lg.mgr->nvar(lg.enc->all_unprimed[b]));
      win = win | cube;
    }
    r.realizable = check_realizable(lg.graph, win);
  }

  if (bdd && add) {
    Add from_antichain = antichain_to_add(*lg.mgr, bdd->min_eng_states);
    // antichain leaves invalid codes +inf as well, so handles must coincide
    r.engines_agree = from_antichain == add->min_eng && bdd->realizable == add->realizable;
  }

  if (add) {
    detail::histogram_from_add(lg, add->min_eng, r);
  } else if (bdd) {
    std::uint64_t covered = 0;
    for (const auto& [e, s] : bdd->min_eng_states.entries) {
      std::uint64_t n = lg.mgr->sat_count(s, lg.enc->all_unprimed);
      if (n == 0) continue;
      r.histogram.emplace_back(std::to_string(e), n);
      covered += n;
      r.max_finite_energy = e;
    }
    std::uint64_t inf_n = r.valid_states - covered;
    if (inf_n > 0) r.histogram.emplace_back("inf", inf_n);
  }
  return r;
}

}  // namespace egsolve
