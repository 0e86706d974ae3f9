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

#include <ostream>
#include <vector>

#include "egsolve/dd.hpp"

namespace egsolve {

/// Debug export to DOT: variable label per node, solid high edge, dashed
/// low edge, terminals as boxes.
inline void to_dot(std::ostream& os, DdManager& mgr, detail::DdRef f,
                   const std::vector<std::string>& var_names = {}) {
  os << "digraph dd {\n";
  std::vector<NodeId> stack{f.id()};
  std::vector<bool> seen;
  auto mark = [&](NodeId n) {
    if (n >= seen.size()) seen.resize(n + 1, false);
    if (seen[n]) return false;
    seen[n] = true;
    return true;
  };
  if (mark(f.id())) {
    while (!stack.empty()) {
      NodeId n = stack.back();
      stack.pop_back();
      if (mgr.is_terminal(n)) {
        os << "  n" << n << " [shape=box,label=\"" << mgr.terminal_value(n).str() << "\"];\n";
        continue;
      }
      VarId v = mgr.var_at_level(mgr.node_level(n));
      std::string label = v.index < var_names.size() ? var_names[v.index]
                                                     : "x" + std::to_string(v.index);
      os << "  n" << n << " [shape=circle,label=\"" << label << "\"];\n";
      os << "  n" << n << " -> n" << mgr.node_hi(n) << ";\n";
      os << "  n" << n << " -> n" << mgr.node_lo(n) << " [style=dashed];\n";
      if (mark(mgr.node_lo(n))) stack.push_back(mgr.node_lo(n));
      if (mark(mgr.node_hi(n))) stack.push_back(mgr.node_hi(n));
    }
  }
  os << "}\n";
}

}  // namespace egsolve
