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

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "egsolve/dd.hpp"
#include "egsolve/encoding.hpp"
#include "egsolve/sema.hpp"

namespace egsolve {

/// The symbolic weighted game graph <theta_e, theta_s, rho_e, rho_s> plus the
/// encoding bookkeeping. Every component is conjoined with the validity
/// constraints of the variables it ranges over; assignments outside the valid
/// codes occur nowhere.
struct SymbolicGameGraph {
  DdManager* mgr = nullptr;
  const Encoding* enc = nullptr;

  Bdd theta_e;  // over env bits
  Bdd theta_s;  // over env+sys bits
  Bdd rho_e;    // over env+sys+env' bits
  Bdd rho_s;    // over env+sys+env'+sys' bits

  Bdd valid_states;         // unprimed validity
  Bdd valid_states_primed;  // primed counterpart

  Bdd prime(Bdd s) const { return mgr->rename_swap(s, enc->prime_pairs); }
  Add prime(Add s) const { return mgr->rename_swap(s, enc->prime_pairs); }
  Bdd unprime(Bdd s) const { return mgr->rename_swap(s, enc->prime_pairs); }
};

namespace detail {

// A safety body without next() must hold at every step: constrain both ends
// of the transition where the support stays inside the relation's legal
// variable set (current-only bodies also make their violating states
// deadlocks for the owning player).
inline Bdd compile_g_body(const ExprPtr& body, DdManager& mgr, const Encoding& enc,
                          bool allow_primed_sys) {
  Bdd cur = compile_expr(body, mgr, enc);
  bool has_next = false;
  std::function<void(const ExprPtr&)> walk = [&](const ExprPtr& e) {
    if (e->kind == ExprKind::NextRef) has_next = true;
    for (const auto& k : e->kids) walk(k);
  };
  walk(body);
  if (has_next) return cur;
  // shift the body one step by renaming: legal only if no sys bit would turn
  // into a primed sys bit inside rho_e
  if (!allow_primed_sys) {
    std::vector<VarId> sup = mgr.support(cur);
    for (VarId v : sup)
      if (std::find(enc.sys_unprimed.begin(), enc.sys_unprimed.end(), v) !=
          enc.sys_unprimed.end())
        return cur;
  }
  Bdd nxt = mgr.rename_swap(cur, enc.prime_pairs);
  return cur & nxt;
}

}  // namespace detail

/// theta_e/theta_s from the G-free formulas, rho_e/rho_s from the G bodies,
/// everything conjoined with the relevant validity constraints.
inline SymbolicGameGraph build_graph(const CheckedSpec& spec, DdManager& mgr,
                                     const Encoding& enc) {
  SymbolicGameGraph g;
  g.mgr = &mgr;
  g.enc = &enc;

  Bdd valid_env = mgr.bdd_true(), valid_sys = mgr.bdd_true();
  Bdd valid_env_p = mgr.bdd_true(), valid_sys_p = mgr.bdd_true();
  for (const auto& v : enc.vars) {
    if (v.owner == Owner::Env) {
      valid_env = valid_env & validity(mgr, v, false);
      valid_env_p = valid_env_p & validity(mgr, v, true);
    } else {
      valid_sys = valid_sys & validity(mgr, v, false);
      valid_sys_p = valid_sys_p & validity(mgr, v, true);
    }
  }
  g.valid_states = valid_env & valid_sys;
  g.valid_states_primed = valid_env_p & valid_sys_p;

  g.theta_e = valid_env;
  g.theta_s = g.valid_states;
  g.rho_e = g.valid_states & valid_env_p;
  g.rho_s = g.valid_states & valid_env_p & valid_sys_p;

  for (const auto& f : spec.ast.assumptions) {
    if (f.has_g)
      g.rho_e = g.rho_e & detail::compile_g_body(f.body, mgr, enc, /*allow_primed_sys=*/false);
    else
      g.theta_e = g.theta_e & compile_expr(f.body, mgr, enc);
  }
  for (const auto& f : spec.ast.guarantees) {
    if (f.has_g)
      g.rho_s = g.rho_s & detail::compile_g_body(f.body, mgr, enc, /*allow_primed_sys=*/true);
    else
      g.theta_s = g.theta_s & compile_expr(f.body, mgr, enc);
  }
  return g;
}

// ---- weights -------------------------------------------------------------------

/// Disjoint exhaustive weight buckets over the valid-code transition space,
/// sorted by value. Overlapping declarative entries add up; uncovered
/// transitions weigh 0.
struct WeightPartition {
  struct Bucket {
    std::int64_t value;
    Bdd tset;  // transitions (over all four variable groups)
  };
  std::vector<Bucket> entries;  // ascending by value, no empty sets
};

inline WeightPartition normalize_weights(const std::vector<WeightEntry>& entries,
                                         const SymbolicGameGraph& g) {
  DdManager& mgr = *g.mgr;
  Bdd all = g.valid_states & g.valid_states_primed;
  std::vector<WeightPartition::Bucket> buckets{{0, all}};
  for (const auto& e : entries) {
    Bdd t = compile_expr(e.formula, mgr, *g.enc) & all;
    std::vector<WeightPartition::Bucket> split;
    for (const auto& b : buckets) {
      Bdd in = b.tset & t;
      Bdd out = b.tset & !t;
      if (!in.is_false()) split.push_back({b.value + e.value, in});
      if (!out.is_false()) split.push_back({b.value, out});
    }
    buckets.swap(split);
  }
  // merge buckets that landed on the same value
  std::map<std::int64_t, Bdd> merged;
  for (const auto& b : buckets) {
    auto [it, fresh] = merged.emplace(b.value, b.tset);
    if (!fresh) it->second = it->second | b.tset;
  }
  WeightPartition p;
  for (const auto& [v, s] : merged) p.entries.push_back({v, s});
  return p;
}

/// The partition as a single Add over transition bits (invalid codes keep
/// terminal 0; the solvers mask them through rho_e).
inline Add partition_to_add(const WeightPartition& p, DdManager& mgr) {
  Add r = mgr.add_const(ExtInt::of(0));
  for (const auto& b : p.entries)
    r = mgr.add_ite(Add(&mgr, b.tset.id()), mgr.add_const(ExtInt::of(b.value)), r);
  return r;
}

/// Realizability: for every initial environment choice in theta_e the system
/// has a response inside theta_s landing in `win`.
inline bool check_realizable(const SymbolicGameGraph& g, Bdd win) {
  DdManager& mgr = *g.mgr;
  Bdd inner = mgr.abstract_bool(Quant::Exists, g.theta_s & win, g.enc->sys_unprimed);
  Bdd cond = mgr.abstract_bool(Quant::Forall, g.theta_e.imp(inner), g.enc->env_unprimed);
  return cond.is_true();
}

}  // namespace egsolve
