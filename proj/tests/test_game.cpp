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
#include <doctest.h>

#include <algorithm>
#include <random>

#include "egsolve/elevator.hpp"
#include "egsolve/pipeline.hpp"

using namespace egsolve;

namespace {

LoadedGame elevator(std::int64_t floors, ElevatorParams::Scheme scheme = ElevatorParams::Wpf,
                    std::optional<std::int64_t> reward = std::nullopt) {
  ElevatorParams p;
  p.floors = floors;
  p.scheme = scheme;
  p.reward = reward;
  return load_game(gen_elevator_spec(p), gen_elevator_weights(p));
}

}  // namespace

TEST_CASE("elevator initial constraints are validity only") {
  LoadedGame lg = elevator(5);
  DdManager& m = *lg.mgr;
  // theta_e covers every valid environment assignment: 2 * 5^3 of them
  CHECK(m.sat_count(lg.graph.theta_e, lg.enc->env_unprimed) == 250);
  CHECK(lg.graph.theta_s == lg.graph.valid_states);
  CHECK(m.sat_count(lg.graph.theta_s, lg.enc->all_unprimed) == 750);
}

TEST_CASE("guarantees forbid moving up at the top and make those states system deadlocks") {
  LoadedGame lg = elevator(5);
  DdManager& m = *lg.mgr;
  auto compile_str = [&](const std::string& text) {
    auto ws = parse_weights("WEIGHT 0 " + text + ";\n");
    return compile_expr(check_weights(lg.raw_ast, ws)[0].formula, m, *lg.enc);
  };
  Bdd top_up = compile_str("current_floor = 4 & move = UP") & lg.graph.valid_states;
  Bdd bottom_down = compile_str("current_floor = 0 & move = DOWN") & lg.graph.valid_states;
  // no successors from such states
  CHECK((lg.graph.rho_s & top_up).is_false());
  CHECK((lg.graph.rho_s & bottom_down).is_false());
  // and no transitions into them either
  CHECK((lg.graph.rho_s & lg.graph.prime(top_up)).is_false());
  // rho_e still offers environment moves there, so they are system deadlocks
  CHECK(!(lg.graph.rho_e & top_up).is_false());
}

TEST_CASE("support discipline of the transition relations") {
  LoadedGame lg = elevator(3);
  auto support = lg.mgr->support(lg.graph.rho_e);
  for (VarId v : lg.enc->sys_primed)
    CHECK(std::find(support.begin(), support.end(), v) == support.end());
  auto theta_sup = lg.mgr->support(lg.graph.theta_e);
  for (VarId v : lg.enc->sys_unprimed)
    CHECK(std::find(theta_sup.begin(), theta_sup.end(), v) == theta_sup.end());
}

TEST_CASE("empty spec sections produce validity-only relations") {
  SpecAst ast = parse_spec("VARENV p : boolean;\nVAR q : boolean;\n");
  CheckedSpec spec = expand_and_check(ast);
  DdManager mgr(manager_vars_for(ast));
  Encoding enc = build_encoding(ast, mgr);
  SymbolicGameGraph g = build_graph(spec, mgr, enc);
  CHECK(g.rho_e.is_true());   // all variables boolean: validity is TRUE
  CHECK(g.rho_s.is_true());
  CHECK(g.theta_e.is_true());
}

TEST_CASE("weight partition of the five-floor families") {
  LoadedGame wpf = elevator(5);
  std::vector<std::int64_t> values;
  for (const auto& b : wpf.partition.entries) values.push_back(b.value);
  CHECK(values == std::vector<std::int64_t>{-1, 0, 1, 2, 3, 4});
  CHECK(wpf.mgr->add_terminal_values(wpf.weight_add) ==
        std::vector<ExtInt>{ExtInt::of(-1), ExtInt::of(0), ExtInt::of(1), ExtInt::of(2),
                            ExtInt::of(3), ExtInt::of(4)});

  LoadedGame wtwo = elevator(5, ElevatorParams::WTwo, 1);
  values.clear();
  for (const auto& b : wtwo.partition.entries) values.push_back(b.value);
  CHECK(values == std::vector<std::int64_t>{-1, 0, 1});
}

TEST_CASE("overlapping entries add up; a 4-weight plus the -1 entry lands on 3") {
  LoadedGame lg = elevator(5);
  DdManager& m = *lg.mgr;
  auto compile_str = [&](const std::string& text) {
    auto ws = parse_weights("WEIGHT 0 " + text + ";\n");
    return compile_expr(check_weights(lg.raw_ast, ws)[0].formula, m, *lg.enc);
  };
  Bdd overlap = compile_str(
                    "pending & abs(src_floor - dest_floor) = 4 & !next(pending)"
                    " & !(current_floor = dest_floor)") &
                lg.graph.valid_states & lg.graph.valid_states_primed;
  REQUIRE(!overlap.is_false());
  for (const auto& b : lg.partition.entries) {
    if (b.value == 3) CHECK((overlap & !b.tset).is_false());
    else CHECK((overlap & b.tset).is_false());
  }
}

TEST_CASE("partition is disjoint, exhaustive, and order-independent") {
  LoadedGame lg = elevator(4);
  DdManager& m = *lg.mgr;
  Bdd all = lg.graph.valid_states & lg.graph.valid_states_primed;
  Bdd cover = m.bdd_false();
  for (std::size_t i = 0; i < lg.partition.entries.size(); ++i) {
    CHECK(!lg.partition.entries[i].tset.is_false());
    cover = cover | lg.partition.entries[i].tset;
    for (std::size_t j = i + 1; j < lg.partition.entries.size(); ++j)
      CHECK((lg.partition.entries[i].tset & lg.partition.entries[j].tset).is_false());
  }
  CHECK(cover == all);

  // permuting the declarative entries yields the identical partition
  ElevatorParams p;
  p.floors = 4;
  auto entries = check_weights(lg.raw_ast, parse_weights(gen_elevator_weights(p)));
  std::mt19937_64 rng(11);
  for (int round = 0; round < 5; ++round) {
    std::shuffle(entries.begin(), entries.end(), rng);
    WeightPartition perm = normalize_weights(entries, lg.graph);
    REQUIRE(perm.entries.size() == lg.partition.entries.size());
    for (std::size_t i = 0; i < perm.entries.size(); ++i) {
      CHECK(perm.entries[i].value == lg.partition.entries[i].value);
      CHECK(perm.entries[i].tset == lg.partition.entries[i].tset);
    }
  }
}

TEST_CASE("empty weight file defaults every transition to 0") {
  ElevatorParams p;
  p.floors = 3;
  LoadedGame lg = load_game(gen_elevator_spec(p), "");
  REQUIRE(lg.partition.entries.size() == 1);
  CHECK(lg.partition.entries[0].value == 0);
  CHECK(lg.partition.entries[0].tset ==
        (lg.graph.valid_states & lg.graph.valid_states_primed));
}

TEST_CASE("thresholding the weight Add reproduces each bucket") {
  LoadedGame lg = elevator(4);
  DdManager& m = *lg.mgr;
  Bdd all = lg.graph.valid_states & lg.graph.valid_states_primed;
  for (const auto& b : lg.partition.entries) {
    Bdd back = m.add_to_bdd(lg.weight_add, {TerminalPred::Eq, ExtInt::of(b.value)}) & all;
    CHECK(back == b.tset);
  }
}

TEST_CASE("weight Add agrees with partition membership pointwise (2 floors)") {
  LoadedGame lg = elevator(2);
  DdManager& m = *lg.mgr;
  Bdd all = lg.graph.valid_states & lg.graph.valid_states_primed;
  std::vector<VarId> sup;
  for (std::uint32_t v = 0; v < m.var_count(); ++v) sup.push_back(VarId{v});
  m.enumerate_sat(all, sup, [&](const std::vector<bool>& a) {
    ExtInt w = m.eval(lg.weight_add, a);
    for (const auto& b : lg.partition.entries)
      CHECK(m.eval_bool(b.tset, a) == (w == ExtInt::of(b.value)));
  });
}

TEST_CASE("realizability check") {
  LoadedGame lg = elevator(3);
  DdManager& m = *lg.mgr;
  // an empty theta_e is vacuously realizable
  SymbolicGameGraph empty_init = lg.graph;
  empty_init.theta_e = m.bdd_false();
  CHECK(check_realizable(empty_init, m.bdd_false()));
  // with win = all states the elevator is realizable
  CHECK(check_realizable(lg.graph, lg.graph.valid_states));
  // with win = nothing it is not
  CHECK(!check_realizable(lg.graph, m.bdd_false()));
  // strip one environment assignment of all its responses: unrealizable
  auto compile_str = [&](const std::string& text) {
    auto ws = parse_weights("WEIGHT 0 " + text + ";\n");
    return compile_expr(check_weights(lg.raw_ast, ws)[0].formula, m, *lg.enc);
  };
  Bdd hole = compile_str("pending & current_floor = 1 & src_floor = 0 & dest_floor = 2");
  CHECK(!check_realizable(lg.graph, lg.graph.valid_states & !hole));
}
