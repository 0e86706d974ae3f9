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
#include <limits>
#include <string>
#include <vector>

#include "egsolve/explicit_game.hpp"
#include "egsolve/reduction.hpp"

namespace egsolve {

/// External infinity marker for credit values.
inline constexpr std::int64_t kInfiniteCredit = std::numeric_limits<std::int64_t>::max();

/// Per-vertex (or per-state) minimal sufficient credits, bounded by the
/// energy bound; kInfiniteCredit where no credit up to the bound wins.
struct CreditMap {
  std::vector<std::int64_t> value;
  std::int64_t iterations = 0;

  bool operator==(const CreditMap& o) const { return value == o.value; }
};

namespace detail {

inline std::int64_t clip(std::int64_t v, std::int64_t bound) {
  return v > bound ? kInfiniteCredit : v;
}

}  // namespace detail

/// Least fixed point of the general bounded CpreMin operator on the reduced
/// game, from the all-zero assignment. Player-0 vertices take the min over
/// their edges of max(0, e - w); player-1 vertices the max. Values exceeding
/// the bound become infinite. The optional chain records every element.
inline CreditMap cpremin_general(const ReducedGame& rg, std::int64_t max_eng,
                                 std::vector<std::vector<std::int64_t>>* chain = nullptr) {
  CreditMap m;
  m.value.assign(rg.size(), 0);
  if (chain) chain->push_back(m.value);
  while (true) {
    ++m.iterations;
    std::vector<std::int64_t> next(rg.size());
    for (std::uint32_t v = 0; v < rg.size(); ++v) {
      if (rg.player[v] == 0) {
        std::int64_t best = kInfiniteCredit;
        for (const auto& e : rg.out[v]) {
          if (m.value[e.to] == kInfiniteCredit) continue;
          std::int64_t x = std::max<std::int64_t>(0, m.value[e.to] - e.w);
          best = std::min(best, x);
        }
        next[v] = best == kInfiniteCredit ? best : detail::clip(best, max_eng);
      } else {
        std::int64_t worst = 0;
        for (const auto& e : rg.out[v]) {
          if (m.value[e.to] == kInfiniteCredit) { worst = kInfiniteCredit; break; }
          worst = std::max(worst, std::max<std::int64_t>(0, m.value[e.to] - e.w));
        }
        next[v] = worst == kInfiniteCredit ? worst : detail::clip(worst, max_eng);
      }
    }
    if (chain) chain->push_back(next);
    if (next == m.value) break;
    m.value.swap(next);
  }
  return m;
}

/// The composed reactive operator on the reduced game: player-1 values are
/// updated through their player-0 successors in a single application,
/// exploiting the 0 weight of every player-1 edge. Only player-1 slots are
/// meaningful; player-0 slots are pinned to 0.
inline CreditMap cpremin_opt_reduced(const ReducedGame& rg, std::int64_t max_eng,
                                     std::vector<std::vector<std::int64_t>>* chain = nullptr) {
  CreditMap m;
  m.value.assign(rg.size(), 0);
  auto v1_only = [&](const std::vector<std::int64_t>& full) {
    std::vector<std::int64_t> out(full);
    for (std::uint32_t v = 0; v < rg.size(); ++v)
      if (rg.player[v] == 0) out[v] = 0;
    return out;
  };
  if (chain) chain->push_back(v1_only(m.value));
  while (true) {
    ++m.iterations;
    std::vector<std::int64_t> next(rg.size(), 0);
    for (std::uint32_t v = 0; v < rg.size(); ++v) {
      if (rg.player[v] != 1) continue;
      std::int64_t worst = 0;
      for (const auto& e1 : rg.out[v]) {
        std::uint32_t v0 = e1.to;
        std::int64_t inner = kInfiniteCredit;
        for (const auto& e0 : rg.out[v0]) {
          if (m.value[e0.to] == kInfiniteCredit) continue;
          inner = std::min(inner, std::max<std::int64_t>(0, m.value[e0.to] - e0.w));
        }
        worst = std::max(worst, inner);
        if (worst == kInfiniteCredit) break;
      }
      next[v] = worst == kInfiniteCredit ? worst : detail::clip(worst, max_eng);
    }
    if (chain) chain->push_back(next);
    bool same = true;
    for (std::uint32_t v = 0; v < rg.size(); ++v)
      if (rg.player[v] == 1 && next[v] != m.value[v]) { same = false; break; }
    if (same) break;
    m.value.swap(next);
  }
  return m;
}

/// Concrete Algorithm-1 iteration over the explicit reactive game. The
/// deadlock handling: an environment-deadlocked state costs 0, a
/// system-deadlocked environment choice costs bound+1 (reported infinite).
inline CreditMap cpremin_reactive(const ExplicitGame& g, std::int64_t max_eng,
                                  std::vector<std::vector<std::int64_t>>* chain = nullptr) {
  CreditMap m;
  m.value.assign(g.states.size(), 0);
  if (chain) chain->push_back(m.value);
  while (true) {
    ++m.iterations;
    std::vector<std::int64_t> next(g.states.size());
    for (std::uint32_t s = 0; s < g.states.size(); ++s) {
      std::int64_t e = 0;  // max over all environment choices; invalid ones cost 0
      for (const auto& ec : g.succ[s]) {
        std::int64_t inner;
        if (ec.sys.empty()) {
          inner = max_eng + 1;  // deadlock for the system
        } else {
          inner = kInfiniteCredit;
          for (const auto& sc : ec.sys) {
            if (m.value[sc.target] == kInfiniteCredit) continue;  // successor left the antichain
            inner = std::min(inner, std::max<std::int64_t>(0, m.value[sc.target] - sc.weight));
          }
        }
        e = std::max(e, inner);
        if (e == kInfiniteCredit) break;
      }
      next[s] = e == kInfiniteCredit ? e : detail::clip(e, max_eng);
    }
    if (chain) chain->push_back(next);
    if (next == m.value) break;
    m.value.swap(next);
  }
  return m;
}

/// Empirical check of the chain identity between the general operator and the
/// composed reactive operator on the reduced game: the even general elements
/// restricted to player-1 vertices must equal the composed chain elementwise.
struct Lemma8Result {
  bool ok = true;
  std::int64_t first_bad_index = -1;
  std::int64_t first_bad_vertex = -1;
};

inline Lemma8Result check_lemma8(const ReducedGame& rg, std::int64_t max_eng) {
  std::vector<std::vector<std::int64_t>> gen_chain, opt_chain;
  cpremin_general(rg, max_eng, &gen_chain);
  cpremin_opt_reduced(rg, max_eng, &opt_chain);
  auto at = [](const std::vector<std::vector<std::int64_t>>& c, std::size_t i) {
    return c[std::min(i, c.size() - 1)];
  };
  std::size_t steps = std::max(opt_chain.size(), (gen_chain.size() + 1) / 2) + 1;
  Lemma8Result r;
  for (std::size_t i = 0; i < steps; ++i) {
    const auto& a = at(gen_chain, 2 * i);
    const auto& b = at(opt_chain, i);
    for (std::uint32_t v = 0; v < rg.size(); ++v) {
      if (rg.player[v] != 1) continue;
      if (a[v] != b[v]) {
        r.ok = false;
        r.first_bad_index = static_cast<std::int64_t>(i);
        r.first_bad_vertex = v;
        return r;
      }
    }
  }
  return r;
}

// ---- plays and energy levels ----------------------------------------------------

/// Energy levels of a play prefix: EL(j) = credit + sum of the first j
/// weights. The play wins (so far) iff every level is non-negative.
struct PlayEval {
  std::int64_t credit = 0;
  std::vector<std::int64_t> weights;

  std::vector<std::int64_t> levels() const {
    std::vector<std::int64_t> out;
    std::int64_t e = credit;
    for (std::int64_t w : weights) {
      e += w;
      out.push_back(e);
    }
    return out;
  }

  bool is_winning() const {
    for (std::int64_t l : levels())
      if (l < 0) return false;
    return true;
  }
};

/// Evaluates a play on the explicit game given as a state-id sequence; every
/// consecutive pair must be a valid joint transition.
inline PlayEval eval_play(const ExplicitGame& g, const std::vector<std::uint32_t>& play,
                          std::int64_t credit) {
  PlayEval pe;
  pe.credit = credit;
  for (std::size_t i = 0; i + 1 < play.size(); ++i) {
    bool found = false;
    for (const auto& ec : g.succ[play[i]]) {
      for (const auto& sc : ec.sys) {
        if (sc.target == play[i + 1]) {
          pe.weights.push_back(sc.weight);
          found = true;
          break;
        }
      }
      if (found) break;
    }
    if (!found)
      throw std::invalid_argument("eval_play: invalid transition at step " + std::to_string(i));
  }
  return pe;
}

/// Evaluates a play on the reduced game given as a vertex sequence.
inline PlayEval eval_play(const ReducedGame& rg, const std::vector<std::uint32_t>& play,
                          std::int64_t credit) {
  PlayEval pe;
  pe.credit = credit;
  for (std::size_t i = 0; i + 1 < play.size(); ++i) {
    bool found = false;
    for (const auto& e : rg.out[play[i]]) {
      if (e.to == play[i + 1]) {
        pe.weights.push_back(e.w);
        found = true;
        break;
      }
    }
    if (!found)
      throw std::invalid_argument("eval_play: no such edge at step " + std::to_string(i));
  }
  return pe;
}

}  // namespace egsolve
