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
#include <random>
#include <sstream>
#include <string>

namespace egsolve {

/// Seeded generator of small reactive games, emitted as specification and
/// weight texts so the full frontend pipeline is exercised. Deterministic:
/// the same parameters and seed produce byte-identical texts.
struct RandomGameParams {
  std::uint64_t seed = 1;
  int env_bits = 2;       // boolean environment variables
  int sys_bits = 2;       // boolean system variables
  int assumptions = 2;    // transition assumptions
  int guarantees = 2;     // transition guarantees
  int weight_entries = 3;
  int weight_min = -3, weight_max = 3;
  int formula_depth = 3;
  bool random_initials = true;  // also emit non-G assumption/guarantee
};

struct RandomGame {
  std::string spec_text;
  std::string weights_text;
};

namespace detail {

class RandomFormula {
 public:
  RandomFormula(std::mt19937_64& rng, const RandomGameParams& p) : rng_(rng), p_(p) {}

  // scope: 0 = env current only, 1 = current state, 2 = current + next(env),
  //        3 = full transition
  std::string gen(int depth, int scope) {
    if (depth <= 0 || chance(30)) return leaf(scope);
    switch (pick(4)) {
      case 0: return "!(" + gen(depth - 1, scope) + ")";
      case 1: return "(" + gen(depth - 1, scope) + " & " + gen(depth - 1, scope) + ")";
      case 2: return "(" + gen(depth - 1, scope) + " | " + gen(depth - 1, scope) + ")";
      default: return "(" + gen(depth - 1, scope) + " -> " + gen(depth - 1, scope) + ")";
    }
  }

 private:
  std::string leaf(int scope) {
    if (chance(8)) return chance(50) ? "TRUE" : "FALSE";
    bool nxt = false;
    bool sys_ok = scope >= 1;
    switch (scope) {
      case 2: nxt = chance(40); break;              // next(env) allowed
      case 3: nxt = chance(50); break;              // any next allowed
      default: break;
    }
    bool sys;
    if (!sys_ok) sys = false;
    else if (scope == 2 && nxt) sys = false;        // assumptions: no next(sys)
    else sys = p_.sys_bits > 0 && chance(50);
    if (!sys && p_.env_bits == 0) sys = p_.sys_bits > 0;
    int n = sys ? p_.sys_bits : p_.env_bits;
    if (n == 0) return "TRUE";
    std::string name = (sys ? "y" : "x") + std::to_string(pick(n));
    std::string ref = nxt ? "next(" + name + ")" : name;
    return chance(50) ? ref : "!" + ref;
  }

  bool chance(int pct) { return static_cast<int>(rng_() % 100) < pct; }
  int pick(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }

  std::mt19937_64& rng_;
  const RandomGameParams& p_;
};

}  // namespace detail

/// Draws per-game sizes from a game seed: at most six state bits, small
/// formula counts. The differential-test profile.
inline RandomGameParams draw_random_params(std::uint64_t game_seed) {
  std::mt19937_64 rng(game_seed * 0x9E3779B97F4A7C15ull + 1);
  RandomGameParams p;
  p.seed = game_seed;
  p.env_bits = 1 + static_cast<int>(rng() % 3);
  p.sys_bits = 1 + static_cast<int>(rng() % std::min<std::uint64_t>(3, 6 - p.env_bits));
  p.assumptions = 1 + static_cast<int>(rng() % 3);
  p.guarantees = 1 + static_cast<int>(rng() % 3);
  p.weight_entries = static_cast<int>(rng() % 5);
  p.formula_depth = 2 + static_cast<int>(rng() % 2);
  p.random_initials = rng() % 4 != 0;
  return p;
}

inline RandomGame make_random_game(const RandomGameParams& p) {
  std::mt19937_64 rng(p.seed);
  detail::RandomFormula f(rng, p);
  std::ostringstream spec, weights;
  spec << "# random reactive game, seed " << p.seed << "\n";
  spec << "VARENV\n";
  for (int i = 0; i < p.env_bits; ++i) spec << "  x" << i << " : boolean;\n";
  spec << "VAR\n";
  for (int i = 0; i < p.sys_bits; ++i) spec << "  y" << i << " : boolean;\n";
  if (p.random_initials) {
    spec << "ASSUMPTION " << f.gen(2, 0) << ";\n";
    spec << "GUARANTEE " << f.gen(2, 1) << ";\n";
  }
  for (int i = 0; i < p.assumptions; ++i)
    spec << "ASSUMPTION G(" << f.gen(p.formula_depth, 2) << ");\n";
  for (int i = 0; i < p.guarantees; ++i)
    spec << "GUARANTEE G(" << f.gen(p.formula_depth, 3) << ");\n";
  std::uniform_int_distribution<int> wdist(p.weight_min, p.weight_max);
  for (int i = 0; i < p.weight_entries; ++i)
    weights << "WEIGHT " << wdist(rng) << " " << f.gen(p.formula_depth, 3) << ";\n";
  RandomGame g;
  g.spec_text = spec.str();
  g.weights_text = weights.str();
  return g;
}

}  // namespace egsolve
