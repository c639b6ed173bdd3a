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

#include "stlcov/predicate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>

#include "stlcov/errors.hpp"
#include "stlcov/lp.hpp"

namespace stlcov {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Minimum margin for a strict literal to count as satisfiable. Atoms are
// scaled to unit max-coefficient, so this is an absolute tolerance.
constexpr double kStrictMargin = 1e-9;

// Sorts and dedups; false if the clause is contradictory or holds a false
// constant literal. True constant literals are dropped.
bool normalize(Clause& c) {
  std::erase_if(c, [](const Literal& l) { return l.atom.f.is_constant() && l.holds(Valuation()); });
  for (const auto& l : c)
    if (l.atom.f.is_constant()) return false;
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  for (std::size_t i = 1; i < c.size(); ++i)
    if (c[i - 1].atom == c[i].atom) return false;
  return true;
}

// The literal as `g > 0` (strict) or `g >= 0`.
std::pair<Affine, bool> constraint(const Literal& l) {
  if (l.neg) return {-l.atom.f, !l.atom.strict};
  return {l.atom.f, l.atom.strict};
}

struct Bound {
  double lo, hi;
  bool lo_open = false, hi_open = false;

  bool empty() const { return lo > hi || (lo == hi && (lo_open || hi_open)); }
};

// Variables of the clause, as indices into the box.
std::vector<std::size_t> clause_vars(const Clause& c, const VariableSet& box) {
  std::set<std::size_t> idx;
  for (const auto& l : c) {
    for (const auto& [name, k] : l.atom.f.coeffs) {
      auto i = box.index_of(name);
      if (!i) throw UnknownVariable("variable '" + name + "' is not in the domain box");
      idx.insert(*i);
    }
  }
  return {idx.begin(), idx.end()};
}

bool axis_aligned(const Clause& c) {
  return std::all_of(c.begin(), c.end(), [](const Literal& l) { return l.atom.f.coeffs.size() == 1; });
}

std::vector<Bound> axis_bounds(const Clause& c, const VariableSet& box) {
  std::vector<Bound> b;
  for (const auto& p : box) b.push_back({p.lo, p.hi});
  for (const auto& l : c) {
    auto [g, strict] = constraint(l);
    const auto& [name, k] = *g.coeffs.begin();
    Bound& x = b[*box.index_of(name)];
    double edge = -g.offset / k;
    if (k > 0) {
      if (edge > x.lo || (edge == x.lo && strict)) {
        x.lo_open = edge == x.lo ? true : strict;
        x.lo = edge;
      }
    } else {
      if (edge < x.hi || (edge == x.hi && strict)) {
        x.hi_open = edge == x.hi ? true : strict;
        x.hi = edge;
      }
    }
  }
  return b;
}

// Rows g(x) >= rhs_scale * z[extra] + floor over the clause variables.
struct ClauseLp {
  std::vector<std::size_t> vars;
  LinearProgram lp;

  ClauseLp(const Clause& c, const VariableSet& box, Eigen::Index extra)
      : vars(clause_vars(c, box)), lp(static_cast<Eigen::Index>(vars.size()) + extra) {
    for (std::size_t j = 0; j < vars.size(); ++j) {
      lp.lo(j) = box[vars[j]].lo;
      lp.hi(j) = box[vars[j]].hi;
    }
  }

  Eigen::Index col(const std::string& name, const VariableSet& box) const {
    auto i = *box.index_of(name);
    return std::lower_bound(vars.begin(), vars.end(), i) - vars.begin();
  }

  // Adds g(x) - k * z[extra_col] >= floor.
  void add_ge(const Affine& g, const VariableSet& box, Eigen::Index extra_col, double k, double floor) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(lp.c.size());
    for (const auto& [name, coef] : g.coeffs) a(col(name, box)) = -coef;
    if (extra_col >= 0) a(extra_col) = k;
    lp.add_row(a, g.offset - floor);
  }

  std::size_t n() const { return vars.size(); }
};

// Largest margin s <= 1 with which every strict literal can hold; nullopt if
// the closure is infeasible.
std::optional<std::pair<double, Eigen::VectorXd>> strict_margin(const Clause& c, const VariableSet& box) {
  ClauseLp p(c, box, 1);
  const Eigen::Index s = static_cast<Eigen::Index>(p.n());
  p.lp.hi(s) = 1.0;
  bool any_strict = false;
  for (const auto& l : c) {
    auto [g, strict] = constraint(l);
    any_strict |= strict;
    p.add_ge(g, box, strict ? s : -1, 1.0, 0.0);
  }
  if (any_strict) p.lp.c(s) = 1.0;
  LpResult r = solve(p.lp);
  if (r.status != LpStatus::optimal) return std::nullopt;
  return std::make_pair(any_strict ? r.z(s) : 1.0, Eigen::VectorXd(r.z.head(s)));
}

Valuation assemble(const VariableSet& box, const std::vector<std::size_t>& vars, const Eigen::VectorXd& x) {
  std::vector<double> vals;
  for (const auto& p : box) vals.push_back((p.lo + p.hi) / 2);
  for (std::size_t j = 0; j < vars.size(); ++j)
    vals[vars[j]] = std::clamp(x(static_cast<Eigen::Index>(j)), box[vars[j]].lo, box[vars[j]].hi);
  return Valuation(box, std::move(vals));
}

void render_clause(std::string& out, const Clause& c, bool wrap) {
  if (c.empty()) {
    out += "true";
    return;
  }
  if (wrap && c.size() > 1) out += '(';
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += " and ";
    out += render_atom(c[i].atom, c[i].neg);
  }
  if (wrap && c.size() > 1) out += ')';
}

}  // namespace

Literal Literal::make(const Atom& atom, bool neg) {
  auto [canon, flipped] = canonical_atom(atom);
  return Literal{std::move(canon), neg != flipped};
}

Predicate::Predicate(std::vector<Clause> clauses) {
  for (auto& c : clauses) {
    if (!normalize(c)) continue;
    if (c.empty()) {
      clauses_ = {Clause{}};
      return;
    }
    clauses_.push_back(std::move(c));
  }
  std::sort(clauses_.begin(), clauses_.end());
  clauses_.erase(std::unique(clauses_.begin(), clauses_.end()), clauses_.end());
}

Predicate Predicate::literal(const Atom& atom, bool neg) { return Predicate({Clause{Literal::make(atom, neg)}}); }

std::set<std::string> Predicate::variables() const {
  std::set<std::string> out;
  for (const auto& c : clauses_)
    for (const auto& l : c)
      for (const auto& [name, k] : l.atom.f.coeffs) out.insert(name);
  return out;
}

std::vector<Atom> Predicate::atoms() const {
  std::set<Atom> out;
  for (const auto& c : clauses_)
    for (const auto& l : c) out.insert(l.atom);
  return {out.begin(), out.end()};
}

Predicate operator||(const Predicate& a, const Predicate& b) {
  std::vector<Clause> all = a.clauses_;
  all.insert(all.end(), b.clauses_.begin(), b.clauses_.end());
  return Predicate(std::move(all));
}

Predicate operator&&(const Predicate& a, const Predicate& b) {
  std::vector<Clause> all;
  for (const auto& x : a.clauses_)
    for (const auto& y : b.clauses_) {
      Clause c = x;
      c.insert(c.end(), y.begin(), y.end());
      all.push_back(std::move(c));
    }
  return Predicate(std::move(all));
}

Predicate operator!(const Predicate& a) {
  Predicate acc = Predicate::truth();
  for (const auto& c : a.clauses_) {
    std::vector<Clause> alts;
    for (const auto& l : c) alts.push_back({l.complement()});
    acc = acc && Predicate(std::move(alts));
  }
  return acc;
}

std::string to_string(const Clause& c) {
  std::string out;
  render_clause(out, c, false);
  return out;
}

std::string to_string(const Predicate& p) {
  if (p.is_false()) return "false";
  std::string out;
  for (std::size_t i = 0; i < p.clauses().size(); ++i) {
    if (i) out += " or ";
    render_clause(out, p.clauses()[i], p.clauses().size() > 1);
  }
  return out;
}

bool evaluate(const Valuation& v, const Clause& c) {
  return std::all_of(c.begin(), c.end(), [&](const Literal& l) { return l.holds(v); });
}

bool evaluate(const Valuation& v, const Predicate& p) {
  return std::any_of(p.clauses().begin(), p.clauses().end(), [&](const Clause& c) { return evaluate(v, c); });
}

bool is_satisfiable(const Clause& c, const VariableSet& box) {
  Clause n = c;
  if (!normalize(n)) return false;
  if (axis_aligned(n)) {
    clause_vars(n, box);
    auto b = axis_bounds(n, box);
    return std::none_of(b.begin(), b.end(), [](const Bound& x) { return x.empty(); });
  }
  auto m = strict_margin(n, box);
  return m && m->first > kStrictMargin;
}

bool is_satisfiable(const Predicate& p, const VariableSet& box) {
  return std::any_of(p.clauses().begin(), p.clauses().end(),
                     [&](const Clause& c) { return is_satisfiable(c, box); });
}

std::optional<Valuation> find_model(const Clause& c, const VariableSet& box) {
  Clause n = c;
  if (!normalize(n)) return std::nullopt;
  if (axis_aligned(n)) {
    auto vars = clause_vars(n, box);
    auto b = axis_bounds(n, box);
    std::vector<double> vals;
    for (const auto& x : b) {
      if (x.empty()) return std::nullopt;
      vals.push_back((x.lo + x.hi) / 2);
    }
    return Valuation(box, std::move(vals));
  }
  auto margin = strict_margin(n, box);
  if (!margin || margin->first <= kStrictMargin) return std::nullopt;

  // Chebyshev centre: maximize s with g(x) >= s * |grad g| and s from every
  // box face; strict literals keep half the feasible margin as a floor.
  ClauseLp p(n, box, 1);
  const Eigen::Index s = static_cast<Eigen::Index>(p.n());
  p.lp.c(s) = 1.0;
  for (const auto& l : n) {
    auto [g, strict] = constraint(l);
    double norm = 0.0;
    for (const auto& [name, k] : g.coeffs) norm += k * k;
    p.add_ge(g, box, s, std::sqrt(norm), 0.0);
    if (strict) p.add_ge(g, box, -1, 0.0, std::min(margin->first, 1.0) / 2);
  }
  for (std::size_t j = 0; j < p.n(); ++j) {
    const auto& prof = box[p.vars[j]];
    Affine up = Affine::variable(prof.name) - Affine::constant(prof.lo);
    Affine down = Affine::constant(prof.hi) - Affine::variable(prof.name);
    p.add_ge(up, box, s, 1.0, 0.0);
    p.add_ge(down, box, s, 1.0, 0.0);
  }
  LpResult r = solve(p.lp);
  if (r.status == LpStatus::optimal) {
    Valuation v = assemble(box, p.vars, r.z.head(s));
    if (evaluate(v, n)) return v;
  }
  return assemble(box, p.vars, margin->second);
}

std::optional<Valuation> find_model(const Predicate& p, const VariableSet& box) {
  for (const auto& c : p.clauses())
    if (auto v = find_model(c, box)) return v;
  return std::nullopt;
}

double distance(const Valuation& v, const Clause& c, const VariableSet& box) {
  if (evaluate(v, c)) return 0.0;
  Clause n = c;
  if (!normalize(n) || !is_satisfiable(n, box)) return kInf;
  if (axis_aligned(n)) {
    auto b = axis_bounds(n, box);
    double d = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
      double x = v.at(box[i].name);
      d = std::max({d, b[i].lo - x, x - b[i].hi});
    }
    return d;
  }
  // minimize t with |x_j - v_j| <= t over the clause variables
  ClauseLp p(n, box, 1);
  const Eigen::Index t = static_cast<Eigen::Index>(p.n());
  p.lp.c(t) = -1.0;
  for (const auto& l : n) p.add_ge(constraint(l).first, box, -1, 0.0, 0.0);
  for (std::size_t j = 0; j < p.n(); ++j) {
    const std::string& name = box[p.vars[j]].name;
    double x = v.at(name);
    p.add_ge(Affine::variable(name) - Affine::constant(x), box, t, -1.0, 0.0);  // x_j - v_j + t >= 0
    p.add_ge(Affine::constant(x) - Affine::variable(name), box, t, -1.0, 0.0);  // v_j - x_j + t >= 0
  }
  LpResult r = solve(p.lp);
  if (r.status != LpStatus::optimal) return kInf;
  return std::max(0.0, r.z(t));
}

double distance(const Valuation& v, const Predicate& p, const VariableSet& box) {
  double best = kInf;
  for (const auto& c : p.clauses()) best = std::min(best, distance(v, c, box));
  return best;
}

std::vector<SplitClause> split_io(const Predicate& p, const VariableSet& inputs, const VariableSet& outputs) {
  std::vector<SplitClause> out;
  for (const auto& c : p.clauses()) {
    SplitClause s;
    for (const auto& l : c) {
      bool in = false, outv = false;
      for (const auto& [name, k] : l.atom.f.coeffs) {
        if (inputs.contains(name))
          in = true;
        else if (outputs.contains(name))
          outv = true;
        else
          throw UnknownVariable("variable '" + name + "' is neither input nor output");
      }
      if (in && outv) throw MixedAtom("atom '" + render_atom(l.atom) + "' mixes input and output variables");
      (outv ? s.outputs : s.inputs).push_back(l);
    }
    out.push_back(std::move(s));
  }
  return out;
}

Clause Minterm::clause(const std::vector<Atom>& universe) const {
  Clause c;
  for (std::size_t i = 0; i < universe.size(); ++i) c.push_back(Literal::make(universe[i], !signs[i]));
  std::sort(c.begin(), c.end());
  return c;
}

std::vector<Minterm> enumerate_minterms(const std::vector<Atom>& universe, const VariableSet& box, std::size_t cap) {
  if (universe.size() > cap)
    throw CapExceeded("atom universe of size " + std::to_string(universe.size()) + " exceeds the cap of " +
                      std::to_string(cap));
  std::vector<Minterm> out;
  Minterm cur;
  Clause partial;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == universe.size()) {
      out.push_back(cur);
      return;
    }
    for (bool sign : {true, false}) {
      partial.push_back(Literal::make(universe[i], !sign));
      if (is_satisfiable(partial, box)) {
        cur.signs.push_back(sign);
        self(self, i + 1);
        cur.signs.pop_back();
      }
      partial.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

void to_json(nlohmann::json& j, const Literal& l) {
  j = nlohmann::json{{"coeffs", l.atom.f.coeffs},
                     {"offset", l.atom.f.offset},
                     {"op", l.atom.strict ? ">" : ">="},
                     {"neg", l.neg}};
}

void from_json(const nlohmann::json& j, Literal& l) {
  Atom a;
  a.f.coeffs = j.at("coeffs").get<std::map<std::string, double>>();
  std::erase_if(a.f.coeffs, [](const auto& kv) { return kv.second == 0.0; });
  a.f.offset = j.at("offset").get<double>();
  std::string op = j.at("op").get<std::string>();
  if (op != ">" && op != ">=") throw SchemaError("literal op must be \">\" or \">=\", got \"" + op + "\"");
  a.strict = op == ">";
  l = Literal::make(a, j.at("neg").get<bool>());
}

void to_json(nlohmann::json& j, const Predicate& p) {
  j = nlohmann::json::array();
  for (const auto& c : p.clauses()) j.push_back(c);
}

void from_json(const nlohmann::json& j, Predicate& p) {
  if (!j.is_array()) throw SchemaError("predicate must be an array of clauses");
  std::vector<Clause> clauses;
  for (const auto& c : j) {
    if (!c.is_array()) throw SchemaError("clause must be an array of literals");
    clauses.push_back(c.get<Clause>());
  }
  p = Predicate(std::move(clauses));
}

namespace {

// A cube over k atoms: bit i is cared about iff set in `care`; its sign is
// the matching bit of `value`.
struct Cube {
  std::uint32_t care = 0, value = 0;
  auto operator<=>(const Cube&) const = default;
};

std::uint32_t encode(const Minterm& m) {
  std::uint32_t x = 0;
  for (std::size_t i = 0; i < m.signs.size(); ++i)
    if (m.signs[i]) x |= 1u << i;
  return x;
}

// Small DNF covering `on` using unsatisfiable cells as don't-cares.
std::vector<Cube> merge_cells(const std::set<std::uint32_t>& on, const std::set<std::uint32_t>& sat, std::size_t k) {
  const std::uint32_t full = k == 32 ? ~0u : (1u << k) - 1;
  if (on.size() == sat.size()) return {Cube{0, 0}};
  std::set<Cube> level;
  for (std::uint32_t x = 0; x <= full; ++x)
    if (on.count(x) || !sat.count(x)) level.insert(Cube{full, x});
  std::vector<Cube> primes;
  while (!level.empty()) {
    std::set<Cube> next, used;
    for (const Cube& c : level) {
      for (std::size_t b = 0; b < k; ++b) {
        std::uint32_t bit = 1u << b;
        if (!(c.care & bit) || (c.value & bit)) continue;
        Cube partner{c.care, c.value | bit};
        if (!level.count(partner)) continue;
        next.insert(Cube{c.care & ~bit, c.value & ~bit});
        used.insert(c);
        used.insert(partner);
      }
    }
    for (const Cube& c : level)
      if (!used.count(c)) primes.push_back(c);
    level = std::move(next);
  }
  auto covers = [](const Cube& c, std::uint32_t x) { return (x & c.care) == c.value; };
  std::set<std::uint32_t> left = on;
  std::vector<Cube> chosen;
  while (!left.empty()) {
    const Cube* best = nullptr;
    std::size_t best_n = 0;
    for (const Cube& c : primes) {
      std::size_t n = 0;
      for (auto x : left) n += covers(c, x);
      if (n == 0) continue;
      int lits = __builtin_popcount(c.care), best_lits = best ? __builtin_popcount(best->care) : 0;
      if (!best || n > best_n || (n == best_n && lits < best_lits)) {
        best = &c;
        best_n = n;
      }
    }
    chosen.push_back(*best);
    std::erase_if(left, [&](std::uint32_t x) { return covers(*best, x); });
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

Predicate cubes_to_guard(const std::vector<Cube>& cubes, const std::vector<Atom>& atoms) {
  std::vector<Clause> clauses;
  for (const Cube& c : cubes) {
    Clause cl;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (c.care & (1u << i)) cl.push_back(Literal::make(atoms[i], !(c.value & (1u << i))));
    clauses.push_back(std::move(cl));
  }
  return Predicate(std::move(clauses));
}

}  // namespace

Predicate cover_minterms(const std::vector<Atom>& universe, const std::vector<Minterm>& on,
                         const std::vector<Minterm>& satisfiable) {
  if (universe.size() > 31) throw CapExceeded("too many atoms to merge cells");
  std::set<std::uint32_t> on_bits, sat_bits;
  for (const auto& m : on) on_bits.insert(encode(m));
  for (const auto& m : satisfiable) sat_bits.insert(encode(m));
  if (on_bits.empty()) return Predicate::falsity();
  return cubes_to_guard(merge_cells(on_bits, sat_bits, universe.size()), universe);
}

}  // namespace stlcov
