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
#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <vector>

#include "egsolve/game.hpp"

namespace egsolve {

/// Ordered map from minimal energy value to a disjoint set of states.
struct EnergyAntichain {
  std::map<std::int64_t, Bdd> entries;  // strictly increasing keys, no empty sets

  bool operator==(const EnergyAntichain& o) const { return entries == o.entries; }
  bool operator!=(const EnergyAntichain& o) const { return !(*this == o); }
};

struct BddSolveResult {
  EnergyAntichain min_eng_states;
  std::int64_t iterations = 0;
  bool realizable = false;
  double wall_ms = 0.0;
};

/// Per-iteration observation hook (testing and tracing).
using BddIterationHook = std::function<void(std::int64_t iter, const EnergyAntichain&)>;

inline Bdd antichain_union_states(DdManager& mgr, const EnergyAntichain& a) {
  Bdd u = mgr.bdd_false();
  for (const auto& [e, s] : a.entries) u = u | s;
  return u;
}

/// States from which the system can force the environment into bestT
/// transitions: forall env' (rho_e -> exists sys' (rho_s & bestT)),
/// conjoined with state validity. Environment deadlocks satisfy this
/// vacuously for any bestT.
inline Bdd force_env_to(const SymbolicGameGraph& g, Bdd best_t) {
  DdManager& mgr = *g.mgr;
  Bdd inner = mgr.abstract_bool(Quant::Exists, g.rho_s & best_t, g.enc->sys_primed);
  Bdd forced = mgr.abstract_bool(Quant::Forall, g.rho_e.imp(inner), g.enc->env_primed);
  return forced & g.valid_states;
}

/// Ascending candidate energy values {0} u {e - w within [0, maxEng]}.
inline std::vector<std::int64_t> candidate_bests(const EnergyAntichain& a,
                                                 const WeightPartition& p,
                                                 std::int64_t max_eng) {
  std::set<std::int64_t> c{0};
  for (const auto& [e, s] : a.entries)
    for (const auto& b : p.entries) {
      std::int64_t v = e - b.value;
      if (v >= 0 && v <= max_eng) c.insert(v);
    }
  return std::vector<std::int64_t>(c.begin(), c.end());
}

/// Converts an antichain into the equivalent energy function: terminal e on
/// each state set, +inf elsewhere.
inline Add antichain_to_add(DdManager& mgr, const EnergyAntichain& a) {
  Add r = mgr.add_const(ExtInt::pos_inf());
  for (const auto& [e, s] : a.entries)
    r = mgr.add_ite(Add(&mgr, s.id()), mgr.add_const(ExtInt::of(e)), r);
  return r;
}

/// Antichain-of-BDDs fixed point for minimal required energy per set of
/// states. Starts from {(0, all valid states)} and iterates until two
/// successive antichains are identical (map keys plus handle equality).
inline BddSolveResult solve_bdd(const SymbolicGameGraph& g, const WeightPartition& p,
                                std::int64_t max_eng, const BddIterationHook& hook = {},
                                std::ostream* trace = nullptr) {
  auto t0 = std::chrono::steady_clock::now();
  DdManager& mgr = *g.mgr;
  BddSolveResult res;

  EnergyAntichain pred;
  pred.entries.emplace(0, g.valid_states);
  EnergyAntichain cur;  // starts empty, differs from pred

  while (cur != pred) {
    cur = pred;
    pred.entries.clear();
    Bdd remaining = antichain_union_states(mgr, cur);
    for (std::int64_t best : candidate_bests(cur, p, max_eng)) {
      Bdd best_t = mgr.bdd_false();
      for (const auto& bucket : p.entries) {
        Bdd targets = mgr.bdd_false();
        for (const auto& [ev, sev] : cur.entries)
          if (ev - bucket.value <= best) targets = targets | sev;
        best_t = best_t | (bucket.tset & g.prime(targets));
      }
      Bdd b = force_env_to(g, best_t) & remaining;
      if (!b.is_false()) {
        pred.entries.emplace(best, b);
        remaining = remaining & !b;
      }
    }
    ++res.iterations;
    if (trace) {
      *trace << "{\"solver\":\"bdd\",\"iteration\":" << res.iterations
             << ",\"antichain_size\":" << pred.entries.size()
             << ",\"nodes\":" << mgr.node_count() << "}\n";
    }
    if (hook) hook(res.iterations, pred);
  }

  res.min_eng_states = cur;
  res.realizable = check_realizable(g, antichain_union_states(mgr, cur));
  res.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace egsolve
