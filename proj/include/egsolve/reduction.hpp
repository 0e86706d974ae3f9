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
#include <ostream>
#include <vector>

#include "egsolve/explicit_game.hpp"

namespace egsolve {

/// Bipartite reduction of a reactive game to the general energy-game model.
/// Player 0 (the system) maximizes, player 1 (the environment) minimizes.
/// Two trap cycles absorb deadlocks: C_win with net weight +1 per lap and
/// C_loss with net weight -1.
struct ReducedGame {
  struct Edge {
    std::uint32_t to;
    std::int64_t w;
  };

  std::vector<std::uint8_t> player;       // 0 or 1, by vertex
  std::vector<std::vector<Edge>> out;
  std::uint32_t v_empty = 0, v_win0 = 0, v_win1 = 0, v_loss0 = 0, v_loss1 = 0;

  // state id -> player-1 vertex (empty if the theta_e = empty shortcut fired)
  std::vector<std::uint32_t> state_vertex;
  // vertex -> state id (or -1 for the auxiliary vertices)
  std::vector<std::int64_t> vertex_state;

  std::uint32_t add_vertex(std::uint8_t pl) {
    player.push_back(pl);
    out.emplace_back();
    vertex_state.push_back(-1);
    return static_cast<std::uint32_t>(player.size() - 1);
  }
  void add_edge(std::uint32_t from, std::uint32_t to, std::int64_t w) {
    out[from].push_back({to, w});
  }
  std::size_t size() const { return player.size(); }
};

inline ReducedGame reduce(const ExplicitGame& g) {
  ReducedGame r;
  r.v_empty = r.add_vertex(1);
  r.v_win0 = r.add_vertex(0);
  r.v_win1 = r.add_vertex(1);
  r.v_loss0 = r.add_vertex(0);
  r.v_loss1 = r.add_vertex(1);
  r.add_edge(r.v_win0, r.v_win1, +1);
  r.add_edge(r.v_win1, r.v_win0, 0);
  r.add_edge(r.v_loss0, r.v_loss1, -1);
  r.add_edge(r.v_loss1, r.v_loss0, 0);

  // Phase 1: initial choices. No valid environment start traps every play in C_win.
  if (g.init_env.empty()) {
    r.add_edge(r.v_empty, r.v_win0, 0);
    return r;
  }

  r.state_vertex.resize(g.states.size());
  for (std::uint32_t s = 0; s < g.states.size(); ++s) {
    r.state_vertex[s] = r.add_vertex(1);
    r.vertex_state[r.state_vertex[s]] = s;
  }

  for (const auto& ebits : g.init_env) {
    std::uint32_t v_se = r.add_vertex(0);
    r.add_edge(r.v_empty, v_se, 0);
    bool any = false;
    for (std::uint32_t s = 0; s < g.states.size(); ++s) {
      if (!g.in_theta_s[s]) continue;
      bool match = true;
      for (std::size_t b = 0; b < g.env_bit_count; ++b)
        if (g.states[s][b] != ebits[b]) { match = false; break; }
      if (!match) continue;
      r.add_edge(v_se, r.state_vertex[s], 0);
      any = true;
    }
    if (!any) r.add_edge(v_se, r.v_loss1, -1);  // initial deadlock for the system
  }

  // Phase 2: transitions. One player-0 vertex per valid environment move.
  for (std::uint32_t s = 0; s < g.states.size(); ++s) {
    for (const auto& ec : g.succ[s]) {
      std::uint32_t v_t = r.add_vertex(0);
      r.add_edge(r.state_vertex[s], v_t, 0);
      if (ec.sys.empty()) {
        r.add_edge(v_t, r.v_loss1, -1);  // deadlock for the system
      } else {
        for (const auto& sc : ec.sys) r.add_edge(v_t, r.state_vertex[sc.target], sc.weight);
      }
    }
    if (g.succ[s].empty())
      r.add_edge(r.state_vertex[s], r.v_win0, 0);  // deadlock for the environment
  }
  return r;
}

inline void dump(std::ostream& os, const ReducedGame& g) {
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    os << v << " p" << int(g.player[v]);
    if (g.vertex_state[v] >= 0) os << " s" << g.vertex_state[v];
    for (const auto& e : g.out[v]) os << " ->" << e.to << " w=" << e.w;
    os << "\n";
  }
}

inline void to_dot(std::ostream& os, const ReducedGame& g) {
  os << "digraph reduced {\n";
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    os << "  v" << v << " [shape=" << (g.player[v] ? "circle" : "box") << ",label=\"" << v;
    if (g.vertex_state[v] >= 0) os << ":s" << g.vertex_state[v];
    os << "\"];\n";
    for (const auto& e : g.out[v])
      os << "  v" << v << " -> v" << e.to << " [label=\"" << e.w << "\"];\n";
  }
  os << "}\n";
}

}  // namespace egsolve
