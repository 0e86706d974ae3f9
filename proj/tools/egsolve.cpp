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

// Command-line front door: solve specifications, generate elevator
// benchmark families, sweep floors/bounds grids, and differential-test the
// solvers against the explicit oracle on random games.
//
// Exit codes: 0 ok, 1 usage or parse error, 2 divergence, 3 resource limit.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "egsolve/dd_io.hpp"
#include "egsolve/elevator.hpp"
#include "egsolve/pipeline.hpp"
#include "egsolve/random_game.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDivergence = 2;
constexpr int kExitResource = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

std::vector<std::string> dd_var_names(const egsolve::Encoding& enc) {
  std::vector<std::string> names(2 * enc.total_bits);
  for (const auto& v : enc.vars)
    for (std::size_t b = 0; b < v.bits.size(); ++b) {
      names[v.bits[b].index] = v.name + "[" + std::to_string(b) + "]";
      names[v.primed_bits[b].index] = v.name + "[" + std::to_string(b) + "]'";
    }
  return names;
}

void dump_dot_dir(egsolve::LoadedGame& lg, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::vector<std::string> names = dd_var_names(*lg.enc);
  auto write = [&](const std::string& file, egsolve::detail::DdRef x) {
    std::ofstream os(fs::path(dir) / file);
    egsolve::to_dot(os, *lg.mgr, x, names);
  };
  write("theta_e.dot", lg.graph.theta_e);
  write("theta_s.dot", lg.graph.theta_s);
  write("rho_e.dot", lg.graph.rho_e);
  write("rho_s.dot", lg.graph.rho_s);
  write("weights.dot", lg.weight_add);
}

struct SweepRange {
  std::int64_t lo = 0, hi = 0, step = 1;
};

SweepRange parse_range(const std::string& text) {
  // A..B or A..B:S
  SweepRange r;
  auto dots = text.find("..");
  if (dots == std::string::npos) throw CLI::ValidationError("range", "expected A..B[:S]");
  r.lo = std::stoll(text.substr(0, dots));
  std::string rest = text.substr(dots + 2);
  auto colon = rest.find(':');
  if (colon == std::string::npos) {
    r.hi = std::stoll(rest);
  } else {
    r.hi = std::stoll(rest.substr(0, colon));
    r.step = std::stoll(rest.substr(colon + 1));
  }
  if (r.step <= 0 || r.hi < r.lo) throw CLI::ValidationError("range", "bad range bounds");
  return r;
}

egsolve::ElevatorParams elevator_params(std::int64_t floors, const std::string& scheme,
                                        std::optional<std::int64_t> reward) {
  egsolve::ElevatorParams p;
  p.floors = floors;
  p.scheme = scheme == "wtwo" ? egsolve::ElevatorParams::WTwo : egsolve::ElevatorParams::Wpf;
  p.reward = reward;
  return p;
}

// one differential run; returns a non-empty description on divergence
std::string differential_run(const egsolve::RandomGameParams& params) {
  using namespace egsolve;
  RandomGame rg = make_random_game(params);
  LoadedGame lg = load_game(rg.spec_text, rg.weights_text);
  std::int64_t bound = 1 + static_cast<std::int64_t>(params.seed % 20);

  BddSolveResult bdd = solve_bdd(lg.graph, lg.partition, bound);
  AddSolveResult add = solve_add(lg.graph, lg.weight_add, bound);
  if (!(antichain_to_add(*lg.mgr, bdd.min_eng_states) == add.min_eng))
    return "bdd antichain disagrees with add energies";
  if (bdd.realizable != add.realizable) return "realizability flags disagree";

  ExplicitGame eg = explicate(lg.graph, lg.partition);
  CreditMap reactive = cpremin_reactive(eg, bound);
  ReducedGame red = reduce(eg);
  CreditMap general = cpremin_general(red, bound);

  std::vector<bool> full(lg.mgr->var_count(), false);
  for (std::uint32_t s = 0; s < eg.states.size(); ++s) {
    for (std::size_t b = 0; b < lg.enc->all_unprimed.size(); ++b)
      full[lg.enc->all_unprimed[b].index] = eg.states[s][b];
    ExtInt from_add = lg.mgr->eval(add.min_eng, full);
    std::int64_t want = reactive.value[s];
    bool add_inf = from_add.is_pos_inf();
    if (add_inf != (want == kInfiniteCredit) ||
        (!add_inf && from_add.value() != want))
      return "oracle disagrees with add at state " + eg.state_str(s);
    if (!red.state_vertex.empty()) {
      std::int64_t gv = general.value[red.state_vertex[s]];
      if (gv != want) return "general oracle disagrees at state " + eg.state_str(s);
    }
  }
  Lemma8Result l8 = check_lemma8(red, bound);
  if (!l8.ok)
    return "optimized/general chain mismatch at index " + std::to_string(l8.first_bad_index);
  return "";
}

nlohmann::ordered_json params_to_json(const egsolve::RandomGameParams& p) {
  nlohmann::ordered_json j;
  j["seed"] = p.seed;
  j["env_bits"] = p.env_bits;
  j["sys_bits"] = p.sys_bits;
  j["assumptions"] = p.assumptions;
  j["guarantees"] = p.guarantees;
  j["weight_entries"] = p.weight_entries;
  j["weight_min"] = p.weight_min;
  j["weight_max"] = p.weight_max;
  j["formula_depth"] = p.formula_depth;
  j["random_initials"] = p.random_initials;
  return j;
}

egsolve::RandomGameParams params_from_json(const nlohmann::json& j) {
  egsolve::RandomGameParams p;
  p.seed = j.at("seed").get<std::uint64_t>();
  p.env_bits = j.at("env_bits").get<int>();
  p.sys_bits = j.at("sys_bits").get<int>();
  p.assumptions = j.at("assumptions").get<int>();
  p.guarantees = j.at("guarantees").get<int>();
  p.weight_entries = j.at("weight_entries").get<int>();
  p.weight_min = j.at("weight_min").get<int>();
  p.weight_max = j.at("weight_max").get<int>();
  p.formula_depth = j.at("formula_depth").get<int>();
  p.random_initials = j.at("random_initials").get<bool>();
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symbolic solver for reactive energy games"};
  app.require_subcommand(1);

  // solve
  std::string spec_path, weights_path, engine_str = "both", out_path, dot_dir;
  std::int64_t max_energy = 100;
  bool verbose = false;
  auto* solve = app.add_subcommand("solve", "solve one specification");
  solve->add_option("--spec", spec_path, "specification file")->required();
  solve->add_option("--weights", weights_path, "weights file")->required();
  solve->add_option("--engine", engine_str, "bdd|add|both|oracle")->default_val("both");
  solve->add_option("--max-energy", max_energy, "initial energy bound")->required();
  solve->add_option("--out", out_path, "write the JSON report here");
  solve->add_option("--dump-dot", dot_dir, "debug-dump diagrams into this directory");
  solve->add_flag("-v,--verbose", verbose, "per-iteration trace on stderr");

  // gen-elevator
  std::int64_t floors = 5;
  std::string scheme = "wpf", out_dir = ".";
  std::int64_t reward_opt = -1;
  auto* gen = app.add_subcommand("gen-elevator", "generate an elevator benchmark");
  gen->add_option("--floors", floors, "number of floors (>= 2)")->required();
  gen->add_option("--scheme", scheme, "wpf|wtwo")->default_val("wpf");
  gen->add_option("--reward", reward_opt, "wtwo serving reward (default: floors)");
  gen->add_option("--out-dir", out_dir, "output directory")->required();

  // sweep
  std::string family = "elevator", floors_range_str = "5..20:5", bounds_range_str = "1..100",
              sweep_out, engines_str = "bdd,add";
  int jobs = 1;
  auto* sweep = app.add_subcommand("sweep", "grid of runs over floors and bounds");
  sweep->add_option("--family", family, "benchmark family (elevator)")->default_val("elevator");
  sweep->add_option("--floors", floors_range_str, "floors range A..B[:S]")->required();
  sweep->add_option("--bounds", bounds_range_str, "maxEng range A..B[:S]")->required();
  sweep->add_option("--scheme", scheme, "wpf|wtwo")->default_val("wpf");
  sweep->add_option("--reward", reward_opt, "wtwo serving reward (default: floors)");
  sweep->add_option("--engines", engines_str, "comma list of bdd,add")->default_val("bdd,add");
  sweep->add_option("--out", sweep_out, "CSV output path")->required();
  sweep->add_option("--jobs", jobs, "parallel workers, one manager each")->default_val(1);

  // random
  std::uint64_t seed = 1;
  std::int64_t count = 100;
  std::string replay_path;
  auto* random = app.add_subcommand("random", "differential test on random games");
  random->add_option("--seed", seed, "master seed")->default_val(1);
  random->add_option("--count", count, "number of games")->default_val(100);
  random->add_option("--replay", replay_path, "rerun a dumped reproducer file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve) {
      auto eng = egsolve::engine_from_name(engine_str);
      if (!eng) {
        std::cerr << "unknown engine '" << engine_str << "'\n";
        return kExitUsage;
      }
      egsolve::LoadedGame lg = egsolve::load_game(slurp(spec_path), slurp(weights_path));
      for (const auto& w : lg.warnings) std::cerr << "warning: " << w << "\n";
      egsolve::SolveOptions opt;
      opt.engine = *eng;
      opt.max_energy = max_energy;
      if (verbose) opt.trace = &std::cerr;
      egsolve::RunReport rep = egsolve::run_solve(lg, opt);
      std::string json = egsolve::report_to_json(rep).dump(2);
      std::cout << json << "\n";
      if (!out_path.empty()) spill(out_path, json + "\n");
      if (!dot_dir.empty()) dump_dot_dir(lg, dot_dir);
      return kExitOk;
    }

    if (*gen) {
      egsolve::ElevatorParams p = elevator_params(
          floors, scheme, reward_opt >= 0 ? std::optional<std::int64_t>(reward_opt) : std::nullopt);
      std::filesystem::create_directories(out_dir);
      std::string base = "elevator" + std::to_string(floors);
      std::string spec_file = (std::filesystem::path(out_dir) / (base + ".spec")).string();
      std::string weights_file =
          (std::filesystem::path(out_dir) / (base + "." + scheme + ".weights")).string();
      spill(spec_file, egsolve::gen_elevator_spec(p));
      spill(weights_file, egsolve::gen_elevator_weights(p));
      std::cout << spec_file << "\n" << weights_file << "\n";
      return kExitOk;
    }

    if (*sweep) {
      if (family != "elevator") {
        std::cerr << "unknown family '" << family << "'\n";
        return kExitUsage;
      }
      SweepRange fr = parse_range(floors_range_str);
      SweepRange br = parse_range(bounds_range_str);
      std::vector<egsolve::Engine> engines;
      {
        std::stringstream ss(engines_str);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
          auto e = egsolve::engine_from_name(tok);
          if (!e || *e == egsolve::Engine::Both) {
            std::cerr << "bad engine list '" << engines_str << "'\n";
            return kExitUsage;
          }
          engines.push_back(*e);
        }
      }
      struct Cell {
        std::int64_t floors, bound;
        egsolve::Engine engine;
        std::string row;
      };
      std::vector<Cell> cells;
      for (std::int64_t f = fr.lo; f <= fr.hi; f += fr.step)
        for (std::int64_t b = br.lo; b <= br.hi; b += br.step)
          for (auto e : engines) cells.push_back({f, b, e, ""});

      std::atomic<std::size_t> next_cell{0};
      auto worker = [&]() {
        while (true) {
          std::size_t i = next_cell.fetch_add(1);
          if (i >= cells.size()) return;
          Cell& c = cells[i];
          std::ostringstream row;
          row << c.floors << "," << scheme << ","
              << (scheme == "wtwo" ? (reward_opt >= 0 ? reward_opt : c.floors) : 0) << ","
              << c.bound << "," << egsolve::engine_name(c.engine) << ",";
          try {
            egsolve::ElevatorParams p = elevator_params(
                c.floors, scheme,
                reward_opt >= 0 ? std::optional<std::int64_t>(reward_opt) : std::nullopt);
            egsolve::LoadedGame lg =
                egsolve::load_game(egsolve::gen_elevator_spec(p), egsolve::gen_elevator_weights(p));
            egsolve::SolveOptions opt;
            opt.engine = c.engine;
            opt.max_energy = c.bound;
            egsolve::RunReport rep = egsolve::run_solve(lg, opt);
            double wall = rep.wall_bdd_ms ? *rep.wall_bdd_ms
                                          : rep.wall_add_ms ? *rep.wall_add_ms : 0.0;
            std::int64_t iters = rep.iterations_bdd ? *rep.iterations_bdd
                                                    : rep.iterations_add.value_or(0);
            row << (rep.realizable ? "true" : "false") << "," << iters << ","
                << (rep.max_finite_energy ? std::to_string(*rep.max_finite_energy) : "")
                << "," << rep.valid_states << "," << wall << ",ok";
          } catch (const std::exception& e) {
            row << ",,,,," << "error:" << e.what();
          }
          c.row = row.str();
        }
      };
      std::vector<std::thread> pool;
      for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
      worker();
      for (auto& t : pool) t.join();

      std::ostringstream csv;
      csv << "floors,scheme,reward,bound,engine,realizable,iterations,max_finite_energy,"
             "valid_states,wall_ms,status\n";
      for (const auto& c : cells) csv << c.row << "\n";
      spill(sweep_out, csv.str());
      std::cout << "wrote " << cells.size() << " cells to " << sweep_out << "\n";
      return kExitOk;
    }

    if (*random) {
      if (!replay_path.empty()) {
        nlohmann::json j = nlohmann::json::parse(slurp(replay_path));
        egsolve::RandomGameParams p = params_from_json(j);
        std::string divergence = differential_run(p);
        if (!divergence.empty()) {
          std::cout << params_to_json(p).dump(2) << "\n";
          std::cerr << "divergence: " << divergence << "\n";
          return kExitDivergence;
        }
        std::cout << "replay ok: seed " << p.seed << " agrees\n";
        return kExitOk;
      }
      for (std::int64_t i = 0; i < count; ++i) {
        egsolve::RandomGameParams p = egsolve::draw_random_params(seed + static_cast<std::uint64_t>(i));
        std::string divergence = differential_run(p);
        if (!divergence.empty()) {
          std::cout << params_to_json(p).dump(2) << "\n";
          std::cerr << "divergence on game " << i << ": " << divergence << "\n";
          return kExitDivergence;
        }
      }
      std::cout << count << " games: solvers and oracle agree\n";
      return kExitOk;
    }
  } catch (const egsolve::ExplosionLimitError& e) {
    std::cerr << e.what() << "\n";
    return kExitResource;
  } catch (const egsolve::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const egsolve::SemaError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}
