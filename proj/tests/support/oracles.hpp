// Copyright 2026 The m2fol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace m2fol::testing {

// Floyd-Warshall transitive closure, the independent oracle for
// subtype_order (the implementation uses per-node reachability).
inline std::set<std::pair<std::string, std::string>> floyd_warshall_closure(
    const std::vector<std::string>& nodes, const std::set<std::pair<std::string, std::string>>& edges) {
  const std::size_t n = nodes.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[nodes[i]] = i;
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (const auto& [a, b] : edges) reach[index.at(a)][index.at(b)] = true;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
      }
    }
  }
  std::set<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (reach[i][j]) out.emplace(nodes[i], nodes[j]);
    }
  }
  return out;
}

// Three-color depth-first search for cycle detection over directed edges.
inline bool dfs_has_cycle(const std::vector<std::string>& nodes,
                          const std::set<std::pair<std::string, std::string>>& edges) {
  std::map<std::string, std::vector<std::string>> succ;
  for (const auto& [a, b] : edges) succ[a].push_back(b);
  std::map<std::string, int> color;  // 0 white, 1 gray, 2 black
  struct Rec {
    std::map<std::string, std::vector<std::string>>& succ;
    std::map<std::string, int>& color;
    bool operator()(const std::string& u) {
      color[u] = 1;
      for (const auto& v : succ[u]) {
        if (color[v] == 1) return true;
        if (color[v] == 0 && (*this)(v)) return true;
      }
      color[u] = 2;
      return false;
    }
  } visit{succ, color};
  for (const auto& node : nodes) {
    if (color[node] == 0 && visit(node)) return true;
  }
  return false;
}

}  // namespace m2fol::testing
