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

// Acceptance suite. Each test case checks one headline property of the
// artifact end to end and prints a single PASS/FAIL summary line.

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "egsolve/elevator.hpp"
#include "egsolve/pipeline.hpp"
#include "egsolve/random_game.hpp"

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

void report(int criterion, bool ok, const std::string& detail) {
  std::printf("[criterion %d] %s - %s\n", criterion, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
}

// per-state comparison of every solver and oracle on one loaded game
bool states_agree(LoadedGame& lg, std::int64_t bound, std::string* why) {
  BddSolveResult b = solve_bdd(lg.graph, lg.partition, bound);
  AddSolveResult a = solve_add(lg.graph, lg.weight_add, bound);
  if (!(antichain_to_add(*lg.mgr, b.min_eng_states) == a.min_eng)) {
    *why = "bdd antichain vs add energies";
    return false;
  }
  if (b.realizable != a.realizable) {
    *why = "realizability flags";
    return false;
  }
  ExplicitGame eg = explicate(lg.graph, lg.partition);
  CreditMap reactive = cpremin_reactive(eg, bound);
  ReducedGame rg = reduce(eg);
  CreditMap general = cpremin_general(rg, bound);
  std::vector<bool> full(lg.mgr->var_count(), false);
  for (std::uint32_t s = 0; s < eg.states.size(); ++s) {
    for (std::size_t bit = 0; bit < lg.enc->all_unprimed.size(); ++bit)
      full[lg.enc->all_unprimed[bit].index] = eg.states[s][bit];
    ExtInt v = lg.mgr->eval(a.min_eng, full);
    std::int64_t want = reactive.value[s];
    if (v.is_pos_inf() != (want == kInfiniteCredit) ||
        (v.is_finite() && v.value() != want)) {
      *why = "oracle vs add at " + eg.state_str(s);
      return false;
    }
    if (!rg.state_vertex.empty() && general.value[rg.state_vertex[s]] != want) {
      *why = "general oracle at " + eg.state_str(s);
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("criterion-1") {
  // 5 floors, WPF, maxEng=100: realizable, max finite energy 7, fixed point
  // in exactly 6 outer iterations, both engines.
  LoadedGame lg = elevator(5);
  SolveOptions opt;
  opt.engine = Engine::Both;
  opt.max_energy = 100;
  RunReport r = run_solve(lg, opt);

  bool ok_real = r.realizable;
  bool ok_max = r.max_finite_energy && *r.max_finite_energy == 7;
  bool ok_iters = r.iterations_bdd == 6 && r.iterations_add == 6;
  CHECK(ok_real);
  CHECK(ok_max);
  CHECK(*r.iterations_bdd == 6);
  CHECK(*r.iterations_add == 6);
  CHECK(*r.engines_agree);
  std::ostringstream d;
  d << "realizable=" << r.realizable << " max_finite=" << r.max_finite_energy.value_or(-1)
    << " iterations bdd/add=" << *r.iterations_bdd << "/" << *r.iterations_add
    << " (expected 6/6)";
  report(1, ok_real && ok_max && ok_iters && *r.engines_agree, d.str());
}

TEST_CASE("criterion-2") {
  // exact valid-state counts; the 50-floor count is a symbolic model count
  std::uint64_t n5 = elevator(5).valid_state_count();
  std::uint64_t n10 = elevator(10).valid_state_count();
  std::uint64_t n50 = elevator(50).valid_state_count();
  CHECK(n5 == 750);
  CHECK(n10 == 6000);
  CHECK(n50 == 750000);
  std::ostringstream d;
  d << "states 5/10/50 floors = " << n5 << "/" << n10 << "/" << n50;
  report(2, n5 == 750 && n10 == 6000 && n50 == 750000, d.str());
}

TEST_CASE("criterion-3") {
  // 20-floor realizability thresholds: WPF at 36, WTwo at 19, not one less
  bool ok = true;
  std::ostringstream d;
  {
    LoadedGame lg = elevator(20);
    SolveOptions opt;
    opt.engine = Engine::Both;
    opt.max_energy = 35;
    RunReport below = run_solve(lg, opt);
    opt.max_energy = 36;
    RunReport at = run_solve(lg, opt);
    CHECK(!below.realizable);
    CHECK(at.realizable);
    CHECK(*below.engines_agree);
    CHECK(*at.engines_agree);
    ok = ok && !below.realizable && at.realizable && *below.engines_agree && *at.engines_agree;
    d << "wpf 35->" << below.realizable << " 36->" << at.realizable;
  }
  {
    LoadedGame lg = elevator(20, ElevatorParams::WTwo);  // reward defaults to 20
    SolveOptions opt;
    opt.engine = Engine::Both;
    opt.max_energy = 18;
    RunReport below = run_solve(lg, opt);
    opt.max_energy = 19;
    RunReport at = run_solve(lg, opt);
    CHECK(!below.realizable);
    CHECK(at.realizable);
    ok = ok && !below.realizable && at.realizable;
    d << "; wtwo 18->" << below.realizable << " 19->" << at.realizable;
  }
  report(3, ok, d.str());
}

TEST_CASE("criterion-4") {
  // reward sensitivity at 5 floors: reward 1 never realizable up to 200,
  // reward 2 realizable
  bool ok = true;
  std::ostringstream d;
  LoadedGame r1 = elevator(5, ElevatorParams::WTwo, 1);
  for (std::int64_t bound : {1, 25, 100, 200}) {
    SolveOptions opt;
    opt.engine = Engine::Both;
    opt.max_energy = bound;
    RunReport r = run_solve(r1, opt);
    CHECK(!r.realizable);
    CHECK(*r.engines_agree);
    ok = ok && !r.realizable && *r.engines_agree;
  }
  d << "reward 1 unrealizable at 1/25/100/200";
  LoadedGame r2 = elevator(5, ElevatorParams::WTwo, 2);
  SolveOptions opt;
  opt.engine = Engine::Both;
  opt.max_energy = 100;
  RunReport r = run_solve(r2, opt);
  CHECK(r.realizable);
  ok = ok && r.realizable;
  d << "; reward 2 realizable=" << r.realizable;
  report(4, ok, d.str());
}

TEST_CASE("criterion-5") {
  // engine equivalence, state for state, on 100 seeded random games and the
  // 2..5-floor elevators, against both explicit oracles
  bool ok = true;
  std::string why;
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 100 && ok; ++seed) {
    RandomGameParams p = draw_random_params(seed);
    RandomGame rgame = make_random_game(p);
    LoadedGame lg = load_game(rgame.spec_text, rgame.weights_text);
    std::int64_t bound = 1 + static_cast<std::int64_t>(seed % 20);
    ok = states_agree(lg, bound, &why);
    if (!ok) why = "seed " + std::to_string(seed) + ": " + why;
    ++checked;
  }
  for (int floors = 2; floors <= 5 && ok; ++floors) {
    LoadedGame lg = elevator(floors);
    ok = states_agree(lg, 20, &why);
    if (!ok) why = "elevator " + std::to_string(floors) + ": " + why;
    ++checked;
  }
  CHECK_MESSAGE(ok, why);
  report(5, ok, ok ? std::to_string(checked) + " instances agree state-for-state" : why);
}

TEST_CASE("criterion-6") {
  // the odd-cycle worst case takes exactly N*maxEng+2 reactive iterations and
  // is unrealizable; the even cycle converges in exactly 2
  auto cycle_game = [](int n) {
    std::ostringstream spec, w;
    spec << "VARENV pos : 0.." << n - 1 << ";\nVAR tick : {T};\n";
    for (int i = 0; i < n; ++i)
      spec << "ASSUMPTION G(pos = " << i << " -> next(pos) = " << (i + 1) % n << ");\n";
    std::string odd, even;
    for (int i = 0; i < n; ++i)
      (i % 2 ? odd : even) += (i >= 2 ? " | " : "") + std::string("pos = ") + std::to_string(i);
    w << "WEIGHT 1 " << odd << ";\nWEIGHT -1 " << even << ";\n";
    return load_game(spec.str(), w.str());
  };
  bool ok = true;
  std::ostringstream d;
  for (int n : {3, 5}) {
    for (std::int64_t m : {5, 10}) {
      LoadedGame lg = cycle_game(n);
      ExplicitGame eg = explicate(lg.graph, lg.partition);
      CreditMap cm = cpremin_reactive(eg, m);
      bool all_inf = true;
      for (auto v : cm.value) all_inf = all_inf && v == kInfiniteCredit;
      bool unreal = !solve_add(lg.graph, lg.weight_add, m).realizable;
      CHECK(cm.iterations == n * m + 2);
      CHECK(all_inf);
      CHECK(unreal);
      ok = ok && cm.iterations == n * m + 2 && all_inf && unreal;
      d << "N=" << n << ",m=" << m << "->" << cm.iterations << " ";
    }
  }
  for (int n : {4}) {
    LoadedGame lg = cycle_game(n);
    ExplicitGame eg = explicate(lg.graph, lg.partition);
    CreditMap cm = cpremin_reactive(eg, 10);
    CHECK(cm.iterations == 2);
    ok = ok && cm.iterations == 2;
    d << "even N=4->" << cm.iterations;
  }
  report(6, ok, d.str());
}

TEST_CASE("criterion-7") {
  // the even general chain restricted to player-1 vertices equals the
  // composed chain at every index, on every criterion-5 instance
  bool ok = true;
  std::string why;
  for (std::uint64_t seed = 1; seed <= 100 && ok; ++seed) {
    RandomGameParams p = draw_random_params(seed);
    RandomGame rgame = make_random_game(p);
    LoadedGame lg = load_game(rgame.spec_text, rgame.weights_text);
    ReducedGame rg = reduce(explicate(lg.graph, lg.partition));
    Lemma8Result res = check_lemma8(rg, 1 + static_cast<std::int64_t>(seed % 20));
    ok = res.ok;
    if (!ok)
      why = "seed " + std::to_string(seed) + " index " + std::to_string(res.first_bad_index) +
            " vertex " + std::to_string(res.first_bad_vertex);
  }
  for (int floors = 2; floors <= 5 && ok; ++floors) {
    LoadedGame lg = elevator(floors);
    ReducedGame rg = reduce(explicate(lg.graph, lg.partition));
    Lemma8Result res = check_lemma8(rg, 20);
    ok = res.ok;
    if (!ok) why = "elevator " + std::to_string(floors);
  }
  CHECK_MESSAGE(ok, why);
  report(7, ok, ok ? "chain identity holds on all 104 instances" : why);
}

TEST_CASE("criterion-8") {
  bool ok = true;
  std::ostringstream d;

  // (a) truth-table equivalence on 10^4 random expression pairs over <= 10 vars
  {
    struct TE {
      int kind;  // 0 var, 1 not, 2 and, 3 or, 4 xor
      int var = 0;
      int a = -1, b = -1;
    };
    std::vector<TE> pool;
    std::mt19937_64 rng(20260810);
    std::function<int(int, int)> gen = [&](int vars, int depth) -> int {
      TE e;
      if (depth <= 0 || rng() % 4 == 0) {
        e.kind = 0;
        e.var = static_cast<int>(rng() % vars);
      } else {
        e.kind = 1 + static_cast<int>(rng() % 4);
        e.a = gen(vars, depth - 1);
        if (e.kind >= 2) e.b = gen(vars, depth - 1);
      }
      pool.push_back(e);
      return static_cast<int>(pool.size() - 1);
    };
    std::function<bool(int, std::uint32_t)> ev = [&](int i, std::uint32_t bits) -> bool {
      const TE& e = pool[i];
      switch (e.kind) {
        case 0: return (bits >> e.var) & 1;
        case 1: return !ev(e.a, bits);
        case 2: return ev(e.a, bits) && ev(e.b, bits);
        case 3: return ev(e.a, bits) || ev(e.b, bits);
        default: return ev(e.a, bits) != ev(e.b, bits);
      }
    };
    const int vars = 10;
    DdManager m(vars);
    std::function<Bdd(int)> build = [&](int i) -> Bdd {
      const TE& e = pool[i];
      switch (e.kind) {
        case 0: return m.var(VarId{static_cast<std::uint32_t>(e.var)});
        case 1: return !build(e.a);
        case 2: return build(e.a) & build(e.b);
        case 3: return build(e.a) | build(e.b);
        default: return build(e.a) ^ build(e.b);
      }
    };
    int bad = 0;
    for (int pair = 0; pair < 10000; ++pair) {
      pool.clear();
      int e1 = gen(vars, 4);
      int e2 = gen(vars, 4);
      Bdd f = build(e1), g = build(e2);
      bool equal_tt = true;
      for (std::uint32_t b = 0; b < (1u << vars); ++b)
        if (ev(e1, b) != ev(e2, b)) { equal_tt = false; break; }
      if (equal_tt != (f == g)) ++bad;
      // spot evaluation of f itself
      std::uint32_t probe = static_cast<std::uint32_t>(rng() % (1u << vars));
      std::vector<bool> a(vars);
      for (int i = 0; i < vars; ++i) a[i] = (probe >> i) & 1;
      if (m.eval_bool(f, a) != ev(e1, probe)) ++bad;
    }
    CHECK(bad == 0);
    ok = ok && bad == 0;
    d << "tt-pairs bad=" << bad;
  }

  // (b) antichain disjointness at every solver iteration
  {
    bool disjoint = true;
    LoadedGame lg = elevator(3);
    auto hook = [&](std::int64_t, const EnergyAntichain& a) {
      Bdd seen = lg.mgr->bdd_false();
      for (const auto& [e, s] : a.entries) {
        if (s.is_false() || !(seen & s).is_false()) disjoint = false;
        seen = seen | s;
      }
    };
    solve_bdd(lg.graph, lg.partition, 30, hook);
    CHECK(disjoint);
    ok = ok && disjoint;
    d << "; antichain disjoint=" << disjoint;
  }

  // (c) pointwise monotone chains in both solvers
  {
    bool monotone = true;
    LoadedGame lg = elevator(3);
    Add prev_b, prev_a;
    bool first_b = true, first_a = true;
    auto bdd_hook = [&](std::int64_t, const EnergyAntichain& a) {
      Add e = antichain_to_add(*lg.mgr, a);
      if (!first_b && !(lg.mgr->add_apply(AddOp::Max, prev_b, e) == e)) monotone = false;
      first_b = false;
      prev_b = e;
    };
    auto add_hook = [&](std::int64_t, const Add& a) {
      if (!first_a && !(lg.mgr->add_apply(AddOp::Max, prev_a, a) == a)) monotone = false;
      first_a = false;
      prev_a = a;
    };
    solve_bdd(lg.graph, lg.partition, 30, bdd_hook);
    solve_add(lg.graph, lg.weight_add, 30, add_hook);
    CHECK(monotone);
    ok = ok && monotone;
    d << "; monotone=" << monotone;
  }

  // (d) the bounded backward update on all 12 operand classes
  {
    DdManager m(2);
    const std::int64_t bound = 10;
    auto apply = [&](ExtInt f1, ExtInt f2) {
      return m.eval(ominus_maxeng(m, m.add_const(f1), m.add_const(f2), bound), {false, false});
    };
    ExtInt inf = ExtInt::pos_inf(), ninf = ExtInt::neg_inf();
    std::vector<ExtInt> f1s{ExtInt::of(0), ExtInt::of(bound), inf};
    std::vector<ExtInt> f2s{ninf, ExtInt::of(-2), ExtInt::of(3), inf};
    int bad = 0;
    for (ExtInt f1 : f1s)
      for (ExtInt f2 : f2s) {
        ExtInt got = apply(f1, f2);
        ExtInt want;
        if (f2.is_pos_inf()) want = ExtInt::of(0);
        else if (f1.is_pos_inf() || f2.is_neg_inf()) want = inf;
        else if (f1.value() - f2.value() > bound) want = inf;
        else want = max(ExtInt::of(0), f1 - f2);
        if (got != want) ++bad;
        CHECK(got == want);
      }
    ok = ok && bad == 0;
    d << "; ominus-classes bad=" << bad;
  }
  report(8, ok, d.str());
}

TEST_CASE("criterion-9") {
  // scaling ordering only: at 20 floors with WPF and the paper's bound, the
  // ADD engine is at most as slow as the BDD engine
  LoadedGame lg = elevator(20);
  SolveOptions opt;
  opt.engine = Engine::Both;
  opt.max_energy = 100;
  RunReport r = run_solve(lg, opt);
  bool ok = r.wall_add_ms && r.wall_bdd_ms && *r.wall_add_ms <= *r.wall_bdd_ms;
  CHECK(ok);
  std::ofstream csv("criterion9_sweep.csv");
  csv << "floors,scheme,bound,engine,realizable,iterations,wall_ms\n";
  csv << "20,wpf,100,bdd," << r.realizable << "," << *r.iterations_bdd << "," << *r.wall_bdd_ms
      << "\n";
  csv << "20,wpf,100,add," << r.realizable << "," << *r.iterations_add << "," << *r.wall_add_ms
      << "\n";
  std::ostringstream d;
  d << "add " << *r.wall_add_ms << " ms <= bdd " << *r.wall_bdd_ms
    << " ms (recorded in criterion9_sweep.csv)";
  report(9, ok, d.str());
}
