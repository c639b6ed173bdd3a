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

#include "stlcov/formula.hpp"

#include <algorithm>
#include <sstream>

namespace stlcov {

Formula Formula::make(FormulaKind k, Interval i, std::vector<Formula> args) {
  return Formula(std::make_shared<const Node>(Node{k, Atom{}, i, std::move(args)}));
}

Formula Formula::truth() {
  static const Formula t = make(FormulaKind::truth, {}, {});
  return t;
}

Formula Formula::atom(Atom a) {
  return Formula(std::make_shared<const Node>(Node{FormulaKind::atom, std::move(a), {}, {}}));
}

Formula Formula::negation(Formula f) { return make(FormulaKind::negation, {}, {std::move(f)}); }
Formula Formula::disjunction(Formula a, Formula b) {
  return make(FormulaKind::disjunction, {}, {std::move(a), std::move(b)});
}
Formula Formula::conjunction(Formula a, Formula b) {
  return make(FormulaKind::conjunction, {}, {std::move(a), std::move(b)});
}
Formula Formula::implication(Formula a, Formula b) {
  return make(FormulaKind::implication, {}, {std::move(a), std::move(b)});
}
Formula Formula::until(Interval i, Formula a, Formula b) {
  return make(FormulaKind::until, i, {std::move(a), std::move(b)});
}
Formula Formula::since(Interval i, Formula a, Formula b) {
  return make(FormulaKind::since, i, {std::move(a), std::move(b)});
}
Formula Formula::always(Interval i, Formula f) { return make(FormulaKind::always, i, {std::move(f)}); }
Formula Formula::eventually(Interval i, Formula f) { return make(FormulaKind::eventually, i, {std::move(f)}); }
Formula Formula::historically(Interval i, Formula f) {
  return make(FormulaKind::historically, i, {std::move(f)});
}
Formula Formula::once(Interval i, Formula f) { return make(FormulaKind::once, i, {std::move(f)}); }

bool Formula::is_future_operator() const {
  switch (kind()) {
    case FormulaKind::until:
    case FormulaKind::always:
    case FormulaKind::eventually:
      return true;
    default:
      return false;
  }
}

bool Formula::is_past_operator() const {
  switch (kind()) {
    case FormulaKind::since:
    case FormulaKind::historically:
    case FormulaKind::once:
      return true;
    default:
      return false;
  }
}

bool Formula::is_temporal() const { return is_future_operator() || is_past_operator(); }

bool Formula::has_future() const {
  if (is_future_operator()) return true;
  return std::any_of(node_->args.begin(), node_->args.end(), [](const Formula& f) { return f.has_future(); });
}

bool Formula::has_past() const {
  if (is_past_operator()) return true;
  return std::any_of(node_->args.begin(), node_->args.end(), [](const Formula& f) { return f.has_past(); });
}

std::set<std::string> Formula::variables() const {
  if (kind() == FormulaKind::atom) return atom().f.variables();
  std::set<std::string> out;
  for (const auto& a : node_->args) {
    auto v = a.variables();
    out.insert(v.begin(), v.end());
  }
  return out;
}

std::size_t Formula::depth() const {
  std::size_t d = 0;
  for (const auto& a : node_->args) d = std::max(d, a.depth() + 1);
  return d;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.arity() != b.arity()) return false;
  if (a.kind() == FormulaKind::atom) return a.atom() == b.atom();
  if (a.is_temporal() && !(a.interval() == b.interval())) return false;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (!(a.arg(i) == b.arg(i))) return false;
  return true;
}

Formula to_core(const Formula& f) {
  using K = FormulaKind;
  const auto t = Formula::truth();
  switch (f.kind()) {
    case K::truth:
    case K::atom:
      return f;
    case K::negation:
      return Formula::negation(to_core(f.arg(0)));
    case K::disjunction:
      return Formula::disjunction(to_core(f.arg(0)), to_core(f.arg(1)));
    case K::conjunction:
      return Formula::negation(Formula::disjunction(Formula::negation(to_core(f.arg(0))),
                                                    Formula::negation(to_core(f.arg(1)))));
    case K::implication:
      return Formula::disjunction(Formula::negation(to_core(f.arg(0))), to_core(f.arg(1)));
    case K::until:
      return Formula::until(f.interval(), to_core(f.arg(0)), to_core(f.arg(1)));
    case K::since:
      return Formula::since(f.interval(), to_core(f.arg(0)), to_core(f.arg(1)));
    case K::eventually:
      return Formula::until(f.interval(), t, to_core(f.arg(0)));
    case K::always:
      return Formula::negation(Formula::until(f.interval(), t, Formula::negation(to_core(f.arg(0)))));
    case K::once:
      return Formula::since(f.interval(), t, to_core(f.arg(0)));
    case K::historically:
      return Formula::negation(Formula::since(f.interval(), t, Formula::negation(to_core(f.arg(0)))));
  }
  return f;
}

namespace {

void print_interval(std::ostream& os, const Interval& i) {
  os << '[' << i.lo << ',';
  if (i.hi)
    os << *i.hi << ']';
  else
    os << "inf)";
}

void print(std::ostream& os, const Formula& f) {
  using K = FormulaKind;
  auto paren = [&](const Formula& g) {
    os << '(';
    print(os, g);
    os << ')';
  };
  switch (f.kind()) {
    case K::truth:
      os << "true";
      return;
    case K::atom:
      os << render_atom(f.atom());
      return;
    case K::negation:
      os << "not ";
      paren(f.arg(0));
      return;
    case K::disjunction:
    case K::conjunction:
    case K::implication: {
      paren(f.arg(0));
      os << (f.kind() == K::disjunction ? " or " : f.kind() == K::conjunction ? " and " : " -> ");
      paren(f.arg(1));
      return;
    }
    case K::until:
    case K::since:
      paren(f.arg(0));
      os << (f.kind() == K::until ? " U" : " S");
      print_interval(os, f.interval());
      os << ' ';
      paren(f.arg(1));
      return;
    case K::always:
    case K::eventually:
    case K::historically:
    case K::once: {
      static constexpr char letters[] = {'G', 'F', 'H', 'P'};
      os << letters[static_cast<int>(f.kind()) - static_cast<int>(K::always)];
      print_interval(os, f.interval());
      os << ' ';
      paren(f.arg(0));
      return;
    }
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::ostringstream os;
  print(os, f);
  return os.str();
}

}  // namespace stlcov
