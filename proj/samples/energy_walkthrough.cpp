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

// Library walkthrough: generate the 5-floor elevator, solve it with both
// engines, and print the per-energy state counts.

#include <iostream>

#include "egsolve/elevator.hpp"
#include "egsolve/pipeline.hpp"

int main() {
  using namespace egsolve;

  ElevatorParams params;
  params.floors = 5;
  params.scheme = ElevatorParams::Wpf;

  LoadedGame game = load_game(gen_elevator_spec(params), gen_elevator_weights(params));
  std::cout << "valid states: " << game.valid_state_count() << "\n";

  SolveOptions opt;
  opt.engine = Engine::Both;
  opt.max_energy = 100;
  RunReport report = run_solve(game, opt);

  std::cout << "realizable: " << (report.realizable ? "yes" : "no") << "\n";
  std::cout << "iterations: bdd " << *report.iterations_bdd << ", add " << *report.iterations_add
            << "\n";
  std::cout << "engines agree: " << (*report.engines_agree ? "yes" : "no") << "\n";
  for (const auto& [energy, states] : report.histogram)
    std::cout << "  energy " << energy << ": " << states << " states\n";
  return 0;
}
