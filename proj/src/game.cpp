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

#include "stlcov/game.hpp"

#include <algorithm>
#include <sstream>

namespace stlcov {

std::string to_string(const Rank& r) { return "(" + std::to_string(r.i) + "," + std::to_string(r.j) + ")"; }

std::string to_string(StrategyClass c) {
  switch (c) {
    case StrategyClass::target:
      return "target";
    case StrategyClass::force:
      return "force";
    default:
      return "coop";
  }
}

namespace {

std::optional<bool> sign_of(const Literal& l, const std::vector<Atom>& universe, const Minterm& m) {
  auto it = std::lower_bound(universe.begin(), universe.end(), l.atom);
  if (it == universe.end() || !(*it == l.atom)) return std::nullopt;
  return m.signs[static_cast<std::size_t>(it - universe.begin())] != l.neg;
}

}  // namespace

GameArena::GameArena(const SymbolicAutomaton& a) : a_(&a), cells_(a.num_locations()) {
  const VariableSet in = a.inputs(), out = a.outputs();
  for (std::size_t q = 0; q < a.num_locations(); ++q) {
    Cells& c = cells_[q];
    std::set<Atom> ia, oa;
    std::vector<std::pair<std::size_t, std::vector<SplitClause>>> guards;
    for (std::size_t id : a.outgoing(q)) {
      const Transition& t = a.transition(id);
      auto split = split_io(t.guard, in, out);
      for (const auto& s : split) {
        for (const auto& l : s.inputs) ia.insert(l.atom);
        for (const auto& l : s.outputs) oa.insert(l.atom);
      }
      guards.emplace_back(id, std::move(split));
    }
    c.in_atoms.assign(ia.begin(), ia.end());
    std::vector<Atom> out_atoms(oa.begin(), oa.end());
    c.in_cells = enumerate_minterms(c.in_atoms, in);
    c.out_cells = enumerate_minterms(out_atoms, out);
    c.fired.assign(c.in_cells.size(), std::vector<std::optional<std::size_t>>(c.out_cells.size()));
    for (std::size_t i = 0; i < c.in_cells.size(); ++i)
      for (std::size_t o = 0; o < c.out_cells.size(); ++o)
        for (const auto& [id, split] : guards) {
          bool holds = std::any_of(split.begin(), split.end(), [&](const SplitClause& s) {
            for (const auto& l : s.inputs)
              if (!*sign_of(l, c.in_atoms, c.in_cells[i])) return false;
            for (const auto& l : s.outputs)
              if (!*sign_of(l, out_atoms, c.out_cells[o])) return false;
            return true;
          });
          if (holds) {
            c.fired[i][o] = id;
            break;
          }
        }
  }
}

Predicate GameArena::ins_force(std::size_t q, const LocationSet& s) const {
  const Cells& c = cells_.at(q);
  std::vector<Minterm> on;
  for (std::size_t i = 0; i < c.in_cells.size(); ++i) {
    bool all = std::all_of(c.fired[i].begin(), c.fired[i].end(), [&](const auto& t) {
      return t && s.count(a_->transition(*t).dst);
    });
    if (all) on.push_back(c.in_cells[i]);
  }
  return cover_minterms(c.in_atoms, on, c.in_cells);
}

Predicate GameArena::ins_force_edge(std::size_t q, std::size_t id) const {
  const Cells& c = cells_.at(q);
  std::vector<Minterm> on;
  for (std::size_t i = 0; i < c.in_cells.size(); ++i)
    if (std::all_of(c.fired[i].begin(), c.fired[i].end(), [&](const auto& t) { return t == id; }))
      on.push_back(c.in_cells[i]);
  return cover_minterms(c.in_atoms, on, c.in_cells);
}

Predicate GameArena::ins_coop(std::size_t q, const LocationSet& s) const {
  // Same as projecting the satisfiable guard clauses into S onto the inputs,
  // but merged over cells so the result stays small.
  const Cells& c = cells_.at(q);
  std::vector<Minterm> on;
  for (std::size_t i = 0; i < c.in_cells.size(); ++i) {
    bool some = std::any_of(c.fired[i].begin(), c.fired[i].end(), [&](const auto& t) {
      return t && s.count(a_->transition(*t).dst);
    });
    if (some) on.push_back(c.in_cells[i]);
  }
  return cover_minterms(c.in_atoms, on, c.in_cells);
}

LocationSet GameArena::pre_force(const LocationSet& s) const {
  LocationSet out;
  for (std::size_t q = 0; q < cells_.size(); ++q)
    if (!ins_force(q, s).is_false()) out.insert(q);
  return out;
}

LocationSet GameArena::pre_coop(const LocationSet& s) const {
  LocationSet out;
  for (std::size_t q = 0; q < cells_.size(); ++q)
    if (!ins_coop(q, s).is_false()) out.insert(q);
  return out;
}

Fixpoint winning_fixpoint(const GameArena& arena, const LocationSet& targets) {
  Fixpoint f;
  LocationSet y = targets;
  for (std::size_t i = 0;; ++i) {
    std::vector<LocationSet> row{y};
    for (;;) {
      LocationSet next = y;
      LocationSet pre = arena.pre_force(y);
      next.insert(pre.begin(), pre.end());
      if (next == y) break;
      y = std::move(next);
      row.push_back(y);
    }
    for (std::size_t j = 0; j < row.size(); ++j)
      for (std::size_t q : row[j]) f.rank.emplace(q, Rank{i, j});
    f.regions.push_back(std::move(row));
    LocationSet next = y;
    LocationSet pre = arena.pre_coop(y);
    next.insert(pre.begin(), pre.end());
    if (next == y) break;
    y = std::move(next);
  }
  f.winning = y;
  return f;
}

Fixpoint winning_fixpoint(const SymbolicAutomaton& a, const LocationSet& targets) {
  return winning_fixpoint(GameArena(a), targets);
}

std::vector<Transition> StrategyAutomaton::moves(std::size_t q) const {
  std::vector<Transition> out;
  for (const auto& t : edges)
    if (t.src == q) out.push_back(t);
  std::stable_sort(out.begin(), out.end(), [&](const Transition& x, const Transition& y) {
    return std::pair(rank.at(x.dst), x.id) < std::pair(rank.at(y.dst), y.id);
  });
  return out;
}

std::optional<StrategyAutomaton> build_strategy(const SymbolicAutomaton& a, const LocationSet& targets) {
  GameArena arena(a);
  Fixpoint f = winning_fixpoint(arena, targets);
  std::size_t init = a.initial_location();
  if (!f.winning.count(init)) return std::nullopt;

  StrategyAutomaton s;
  s.variables = a.variables();
  s.initial = init;
  s.targets = targets;
  s.rank = f.rank;
  const VariableSet inputs = a.inputs();
  for (std::size_t q : f.winning) {
    s.locations.push_back(q);
    Rank r = f.rank.at(q);
    if (targets.count(q)) {
      s.klass[q] = StrategyClass::target;
      s.sigma[q] = Predicate::truth();
      continue;
    }
    const LocationSet* next;
    if (r.j > 0) {
      s.klass[q] = StrategyClass::force;
      next = &f.regions[r.i][r.j - 1];
      s.sigma[q] = arena.ins_force(q, *next);
    } else {
      s.klass[q] = StrategyClass::coop;
      next = &f.regions[r.i - 1].back();
      s.sigma[q] = arena.ins_coop(q, *next);
    }
    for (std::size_t id : a.outgoing(q)) {
      const Transition& t = a.transition(id);
      if (!next->count(t.dst)) continue;
      if (s.klass[q] == StrategyClass::force && !is_satisfiable(t.guard && s.sigma[q], a.variables())) continue;
      s.edges.push_back(t);
    }
  }
  std::sort(s.edges.begin(), s.edges.end(), [](const Transition& x, const Transition& y) { return x.id < y.id; });
  return s;
}

void to_json(nlohmann::json& j, const StrategyAutomaton& s) {
  nlohmann::json locs = nlohmann::json::array();
  for (std::size_t q : s.locations)
    locs.push_back({{"id", q},
                    {"rank", {s.rank.at(q).i, s.rank.at(q).j}},
                    {"class", to_string(s.klass.at(q))},
                    {"sigma", s.sigma.at(q)}});
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& t : s.edges) edges.push_back({{"id", t.id}, {"src", t.src}, {"dst", t.dst}, {"guard", t.guard}});
  j = {{"initial", s.initial}, {"targets", s.targets}, {"locations", locs}, {"edges", edges}};
}

std::string export_dot(const StrategyAutomaton& s, const SymbolicAutomaton& a) {
  std::ostringstream os;
  os << "digraph strategy {\n  rankdir=LR;\n";
  for (std::size_t q : s.locations) {
    std::string style;
    if (s.klass.at(q) == StrategyClass::coop) style = ", style=bold";
    if (s.klass.at(q) == StrategyClass::target) style = ", style=dashed";
    os << "  q" << q << " [label=\"" << a.location(q).name << "\\n" << to_string(s.rank.at(q)) << "\\n"
       << to_string(s.sigma.at(q)) << "\"" << style << "];\n";
  }
  for (const auto& t : s.edges)
    os << "  q" << t.src << " -> q" << t.dst << " [label=\"t" << t.id << ": " << to_string(t.guard) << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace stlcov
