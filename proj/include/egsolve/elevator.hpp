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
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace egsolve {

// The elevator controller family. The environment issues requests to
// destination floors and tracks the cabin position; the system commands the
// cabin. Weight schemes:
//   wpf  - reward per distance |src-dest| when a request is served,
//          punishment -1 while one is pending away from its destination
//   wtwo - flat reward (default: number of floors) on serving, same -1
struct ElevatorParams {
  std::int64_t floors = 5;  // >= 2
  enum Scheme { Wpf, WTwo } scheme = Wpf;
  std::optional<std::int64_t> reward;  // wtwo only; defaults to `floors`
};

inline std::string gen_elevator_spec(const ElevatorParams& p) {
  if (p.floors < 2) throw std::invalid_argument("gen_elevator: need at least 2 floors");
  std::int64_t top = p.floors - 1;
  std::ostringstream os;
  os << "# Elevator controller, " << p.floors << " floors\n";
  os << "VARENV\n";
  os << "  pending : boolean;\n";
  os << "  src_floor : 0.." << top << ";\n";
  os << "  dest_floor : 0.." << top << ";\n";
  os << "  current_floor : 0.." << top << ";\n";
  os << "VAR\n";
  os << "  move : {UP, STOP, DOWN};\n";
  os << "DEFINE\n";
  os << "  TOP := " << top << ";\n";
  os << "  THERE := current_floor = dest_floor;\n";
  os << "# a freshly issued request records the cabin position as its source\n";
  os << "ASSUMPTION G(!pending & next(pending) -> next(src_floor) = next(current_floor));\n";
  os << "# source and destination are stable while the request is pending\n";
  os << "ASSUMPTION G(pending & next(pending) -> next(src_floor) = src_floor"
        " & next(dest_floor) = dest_floor);\n";
  os << "# requests are served (disabled) exactly at the destination floor\n";
  os << "ASSUMPTION G(pending & THERE -> !next(pending));\n";
  os << "ASSUMPTION G(pending & !THERE -> next(pending));\n";
  os << "# the current floor follows the commanded move\n";
  os << "ASSUMPTION G(move = UP & current_floor != TOP ->"
        " next(current_floor) = current_floor + 1);\n";
  os << "ASSUMPTION G(move = STOP -> next(current_floor) = current_floor);\n";
  os << "ASSUMPTION G(move = DOWN & current_floor != 0 ->"
        " next(current_floor) = current_floor - 1);\n";
  os << "# the cabin moves neither above the top floor nor below floor 0\n";
  os << "GUARANTEE G(!(current_floor = TOP & move = UP));\n";
  os << "GUARANTEE G(!(current_floor = 0 & move = DOWN));\n";
  return os.str();
}

inline std::string gen_elevator_weights(const ElevatorParams& p) {
  std::ostringstream os;
  if (p.scheme == ElevatorParams::Wpf) {
    for (std::int64_t k = 1; k <= p.floors - 1; ++k)
      os << "WEIGHT " << k << " pending & abs(src_floor - dest_floor) = " << k
         << " & !next(pending);\n";
    os << "WEIGHT -1 pending & !(current_floor = dest_floor);\n";
  } else {
    std::int64_t r = p.reward.value_or(p.floors);
    os << "WEIGHT " << r << " pending & current_floor = dest_floor;\n";
    os << "WEIGHT -1 pending & !(current_floor = dest_floor);\n";
  }
  return os.str();
}

}  // namespace egsolve
