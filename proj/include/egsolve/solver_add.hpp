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
#include <ostream>

#include "egsolve/game.hpp"

namespace egsolve {

struct AddSolveResult {
  Add min_eng;  // States -> N u {+inf}, finite terminals <= maxEng
  std::int64_t iterations = 0;
  bool realizable = false;
  double wall_ms = 0.0;
};

using AddIterationHook = std::function<void(std::int64_t iter, const Add&)>;

/// The weighted arena: weights on transitions valid for both players, -inf
/// on environment-valid transitions the system cannot answer (system loses),
/// +inf on environment-invalid transitions (system wins).
inline Add build_arena(const SymbolicGameGraph& g, Add weights) {
  DdManager& mgr = *g.mgr;
  Add deadlocks = mgr.add_ite(Add(&mgr, g.rho_e.id()), mgr.add_const(ExtInt::neg_inf()),
                              mgr.add_const(ExtInt::pos_inf()));
  return mgr.add_ite(Add(&mgr, (g.rho_e & g.rho_s).id()), weights, deadlocks);
}

/// Bounded backward energy update: per transition, the accumulated energy
/// the source needs so that the successor's requirement f1 is met after the
/// arena weight f2 is applied.
///   0                 if f2 = +inf
///   +inf              if f1 = +inf or f2 = -inf
///   +inf              if f1 - f2 > maxEng
///   max(0, f1 - f2)   otherwise
inline Add ominus_maxeng(DdManager& mgr, Add primed_energy, Add arena, std::int64_t max_eng) {
  std::uint32_t op = mgr.register_custom_op("ominus_maxeng");
  ExtInt bound = ExtInt::of(max_eng);
  return mgr.add_apply_custom(op, primed_energy, arena, bound, [bound](ExtInt f1, ExtInt f2) {
    if (f2.is_pos_inf()) return ExtInt::of(0);
    if (f1.is_pos_inf() || f2.is_neg_inf()) return ExtInt::pos_inf();
    ExtInt d = f1 - f2;
    if (d > bound) return ExtInt::pos_inf();
    return max(ExtInt::of(0), d);
  });
}

/// Single-ADD fixed point for minimal required energy per state: prime the
/// previous energies, apply the bounded backward update against the arena,
/// then min-abstract the system choice and max-abstract the environment
/// choice. Detection is handle equality of successive energy functions.
inline AddSolveResult solve_add(const SymbolicGameGraph& g, Add weights, std::int64_t max_eng,
                                const AddIterationHook& hook = {}, std::ostream* trace = nullptr) {
  auto t0 = std::chrono::steady_clock::now();
  DdManager& mgr = *g.mgr;
  AddSolveResult res;

  Add arena = build_arena(g, weights);
  Add inf = mgr.add_const(ExtInt::pos_inf());
  Add valid01 = Add(&mgr, g.valid_states.id());

  // energy 0 on valid states, +inf on unused codes, so fixed-point equality
  // ranges over real states only
  Add pred = mgr.add_ite(valid01, mgr.add_const(ExtInt::of(0)), inf);
  Add cur;  // invalid handle, differs from pred

  while (!(cur == pred)) {
    cur = pred;
    Add accumulated = ominus_maxeng(mgr, g.prime(cur), arena, max_eng);
    Add m = mgr.add_abstract(AddAbs::Min, accumulated, g.enc->sys_primed);
    m = mgr.add_abstract(AddAbs::Max, m, g.enc->env_primed);
    pred = mgr.add_ite(valid01, m, inf);
    ++res.iterations;
    if (trace) {
      *trace << "{\"solver\":\"add\",\"iteration\":" << res.iterations
             << ",\"terminals\":" << mgr.add_terminal_values(pred).size()
             << ",\"nodes\":" << mgr.node_count() << "}\n";
    }
    if (hook) hook(res.iterations, pred);
  }

  res.min_eng = cur;
  res.realizable = check_realizable(
      g, mgr.add_to_bdd(cur, TerminalPred{TerminalPred::Lt, ExtInt::pos_inf()}));
  res.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

/// States with a finite minimal energy within the bound.
inline Bdd winning_states(DdManager& mgr, const AddSolveResult& r) {
  return mgr.add_to_bdd(r.min_eng, TerminalPred{TerminalPred::Lt, ExtInt::pos_inf()});
}

}  // namespace egsolve
