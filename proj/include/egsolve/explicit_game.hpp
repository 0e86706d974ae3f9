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

#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "egsolve/game.hpp"

namespace egsolve {

class ExplosionLimitError : public std::runtime_error {
 public:
  explicit ExplosionLimitError(std::size_t states, std::size_t limit)
      : std::runtime_error("explicit-state enumeration aborted: " + std::to_string(states) +
                           " states exceed the limit of " + std::to_string(limit)) {}
};

/// Enumerated concrete game, the trusted slow baseline. States are all valid
/// assignments, indexed in lexicographic bit order.
struct ExplicitGame {
  struct SysChoice {
    std::uint32_t target;  // successor state id
    std::int64_t weight;
  };
  struct EnvChoice {
    std::vector<bool> env_bits;     // assignment over primed env bits (level order)
    std::vector<SysChoice> sys;     // empty = deadlock for the system
  };

  std::vector<std::vector<bool>> states;          // per state: bits over all unprimed vars
  std::vector<std::vector<EnvChoice>> succ;       // empty = deadlock for the environment
  std::vector<std::vector<bool>> init_env;        // env assignments satisfying theta_e
  std::vector<bool> in_theta_s;                   // per state
  const Encoding* enc = nullptr;

  std::size_t env_bit_count = 0;  // states[i] is env bits followed by sys bits

  std::uint32_t state_index(const std::vector<bool>& bits) const {
    auto it = index_.find(bits);
    if (it == index_.end()) throw std::invalid_argument("unknown state assignment");
    return it->second;
  }

  /// Decoded domain values of a state, one per declared variable.
  std::vector<std::int64_t> decode(std::uint32_t sid) const {
    std::vector<std::int64_t> out;
    std::size_t pos = 0;
    for (const auto& v : enc->vars) {
      std::uint64_t code = 0;
      for (std::size_t b = 0; b < v.bits.size(); ++b)
        code |= static_cast<std::uint64_t>(states[sid][pos + b]) << b;
      pos += v.bits.size();
      out.push_back(v.domain.kind == DomainKind::IntRange
                        ? v.domain.lo + static_cast<std::int64_t>(code)
                        : static_cast<std::int64_t>(code));
    }
    return out;
  }

  std::string state_str(std::uint32_t sid) const {
    std::vector<std::int64_t> vals = decode(sid);
    std::string s = "(";
    for (std::size_t i = 0; i < enc->vars.size(); ++i) {
      if (i) s += ",";
      const auto& v = enc->vars[i];
      if (v.domain.kind == DomainKind::Enum)
        s += v.name + "=" + v.domain.labels[static_cast<std::size_t>(vals[i])];
      else
        s += v.name + "=" + std::to_string(vals[i]);
    }
    return s + ")";
  }

  std::map<std::vector<bool>, std::uint32_t> index_;
};

inline constexpr std::size_t kDefaultExplosionLimit = 1000000;

inline ExplicitGame explicate(const SymbolicGameGraph& g, const WeightPartition& p,
                              std::size_t limit = kDefaultExplosionLimit) {
  DdManager& mgr = *g.mgr;
  const Encoding& enc = *g.enc;
  ExplicitGame eg;
  eg.enc = &enc;
  eg.env_bit_count = enc.env_unprimed.size();

  std::uint64_t n_states = mgr.sat_count(g.valid_states, enc.all_unprimed);
  if (n_states > limit) throw ExplosionLimitError(n_states, limit);

  eg.states = mgr.enumerate_sat(g.valid_states, enc.all_unprimed);
  for (std::uint32_t i = 0; i < eg.states.size(); ++i) eg.index_.emplace(eg.states[i], i);

  eg.init_env = mgr.enumerate_sat(g.theta_e, enc.env_unprimed);

  std::vector<bool> full(mgr.var_count(), false);
  auto set_group = [&](const std::vector<VarId>& group, const std::vector<bool>& bits) {
    for (std::size_t i = 0; i < group.size(); ++i) full[group[i].index] = bits[i];
  };

  auto weight_of = [&](const std::vector<bool>& assignment) {
    for (const auto& b : p.entries)
      if (mgr.eval_bool(b.tset, assignment)) return b.value;
    throw std::logic_error("weight partition does not cover a valid transition");
  };

  eg.in_theta_s.resize(eg.states.size());
  eg.succ.resize(eg.states.size());
  for (std::uint32_t i = 0; i < eg.states.size(); ++i) {
    set_group(enc.all_unprimed, eg.states[i]);
    eg.in_theta_s[i] = mgr.eval_bool(g.theta_s, full);

    Bdd cube = mgr.bdd_true();
    for (std::size_t b = 0; b < enc.all_unprimed.size(); ++b)
      cube = cube & (eg.states[i][b] ? mgr.var(enc.all_unprimed[b]) : mgr.nvar(enc.all_unprimed[b]));

    Bdd env_moves = mgr.abstract_bool(Quant::Exists, g.rho_e & cube, enc.all_unprimed);
    for (const auto& ebits : mgr.enumerate_sat(env_moves, enc.env_primed)) {
      ExplicitGame::EnvChoice ec;
      ec.env_bits = ebits;
      Bdd ecube = mgr.bdd_true();
      for (std::size_t b = 0; b < enc.env_primed.size(); ++b)
        ecube = ecube & (ebits[b] ? mgr.var(enc.env_primed[b]) : mgr.nvar(enc.env_primed[b]));
      Bdd sys_moves = mgr.abstract_bool(Quant::Exists, g.rho_s & cube & ecube,
                                        enc.all_unprimed);
      sys_moves = mgr.abstract_bool(Quant::Exists, sys_moves, enc.env_primed);
      for (const auto& sbits : mgr.enumerate_sat(sys_moves, enc.sys_primed)) {
        std::vector<bool> succ_bits;
        succ_bits.reserve(enc.all_unprimed.size());
        for (bool b : ebits) succ_bits.push_back(b);
        for (bool b : sbits) succ_bits.push_back(b);
        std::uint32_t j = eg.state_index(succ_bits);
        set_group(enc.env_primed, ebits);
        set_group(enc.sys_primed, sbits);
        ec.sys.push_back({j, weight_of(full)});
      }
      eg.succ[i].push_back(std::move(ec));
    }
  }
  return eg;
}

/// Debug export as a DOT graph: one node per state, one edge per joint
/// transition, labelled with its weight.
inline void to_dot(std::ostream& os, const ExplicitGame& g) {
  os << "digraph explicit {\n";
  for (std::uint32_t i = 0; i < g.states.size(); ++i) {
    os << "  s" << i << " [label=\"" << g.state_str(i) << "\"];\n";
    for (const auto& ec : g.succ[i])
      for (const auto& sc : ec.sys)
        os << "  s" << i << " -> s" << sc.target << " [label=\"" << sc.weight << "\"];\n";
  }
  os << "}\n";
}

/// Line-oriented debug dump: one line per state with its successors.
inline void dump(std::ostream& os, const ExplicitGame& g) {
  for (std::uint32_t i = 0; i < g.states.size(); ++i) {
    os << i << " " << g.state_str(i) << (g.in_theta_s[i] ? " [theta_s]" : "") << "\n";
    for (const auto& ec : g.succ[i]) {
      os << "  env:";
      for (bool b : ec.env_bits) os << (b ? '1' : '0');
      if (ec.sys.empty()) os << " (system deadlock)";
      for (const auto& sc : ec.sys) os << " ->" << sc.target << " w=" << sc.weight;
      os << "\n";
    }
  }
}

}  // namespace egsolve
