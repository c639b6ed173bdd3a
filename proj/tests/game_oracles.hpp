// Copyright 2026 The stlcov Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <deque>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "stlcov/automaton.hpp"
#include "stlcov/predicate.hpp"

namespace stlcov::testing {

/// Locations with a graph path into `targets`.
inline std::set<std::size_t> backward_reachable(const SymbolicAutomaton& a, const std::set<std::size_t>& targets) {
  std::set<std::size_t> seen = targets;
  std::deque<std::size_t> queue(targets.begin(), targets.end());
  while (!queue.empty()) {
    std::size_t q = queue.front();
    queue.pop_front();
    for (std::size_t id : a.incoming(q)) {
      std::size_t p = a.transition(id).src;
      if (seen.insert(p).second) queue.push_back(p);
    }
  }
  return seen;
}

/// Deterministic complete automaton over inputs a, b and output c in
/// [-5, 5]; each location splits on 1-3 io-pure atoms.
inline SymbolicAutomaton random_game_automaton(std::mt19937& rng, std::size_t n) {
  VariableSet v({{"a", VarKind::input, -5, 5}, {"b", VarKind::input, -5, 5}, {"c", VarKind::output, -5, 5}});
  auto pick = [&](int k) { return std::uniform_int_distribution<int>(0, k - 1)(rng); };
  auto atom = [&]() {
    Affine f;
    switch (pick(4)) {
      case 0:
        f = Affine::variable("a");
        break;
      case 1:
        f = Affine::variable("b");
        break;
      case 2:
        f = Affine::variable("a") + Affine::variable("b");
        break;
      default:
        f = Affine::variable("c");
        break;
    }
    return Atom{f - Affine::constant(pick(5) - 2), pick(2) == 0};
  };
  std::vector<Location> locs;
  for (std::size_t q = 0; q < n; ++q) locs.push_back({q, "q" + std::to_string(q), LocationKind::active});
  std::vector<Transition> ts;
  for (std::size_t q = 0; q < n; ++q) {
    std::set<Atom> chosen;
    int k = 1 + pick(3);
    while (static_cast<int>(chosen.size()) < k) chosen.insert(atom());
    std::vector<Atom> universe(chosen.begin(), chosen.end());
    auto cells = enumerate_minterms(universe, v);
    // few successors per location keep the graph sparse
    std::vector<std::size_t> succ{static_cast<std::size_t>(pick(static_cast<int>(n)))};
    if (pick(2)) succ.push_back(static_cast<std::size_t>(pick(static_cast<int>(n))));
    std::map<std::size_t, std::vector<Minterm>> by_dst;
    for (const auto& m : cells) by_dst[succ[static_cast<std::size_t>(pick(static_cast<int>(succ.size())))]].push_back(m);
    for (const auto& [dst, on] : by_dst) ts.push_back({ts.size(), q, dst, cover_minterms(universe, on, cells)});
  }
  return SymbolicAutomaton(v, locs, {0}, {}, ts);
}

}  // namespace stlcov::testing
