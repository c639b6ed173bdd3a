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

#include "stlcov/compiler.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>

#include "stlcov/errors.hpp"

namespace stlcov {
namespace {

constexpr unsigned kUnbounded = std::numeric_limits<unsigned>::max();

unsigned dec(unsigned x) { return x == kUnbounded ? x : x - 1; }

enum class Op : std::uint8_t { truth, falsity, lit, past, conj, disj, until, release };

// until:   ∃ t' ∈ [s+lo, s+hi]: φ2(t') ∧ φ1 on (s, t')   (open)
//                                        φ1 on [s, t')   (closed)
// release: ∀ t' ∈ [s+lo, s+hi]: ψ2(t') ∨ ψ1 somewhere in (s, t') / [s, t')
struct Node {
  Op op = Op::truth;
  bool closed = false;
  bool pol = true;
  std::uint32_t ref = 0;
  unsigned lo = 0, hi = 0;
  std::vector<std::uint32_t> kids;

  auto key() const { return std::tie(op, closed, pol, ref, lo, hi, kids); }
  friend bool operator<(const Node& a, const Node& b) { return a.key() < b.key(); }
};

// φ1 S[lo,hi] φ2 with pure-past operands compiled to Boolean nodes.
struct PastNode {
  Formula source = Formula::truth();
  std::uint32_t phi1 = 0, phi2 = 0;
  unsigned lo = 0, hi = 0;  // hi == kUnbounded for [lo, inf)
  std::size_t offset = 0;   // first register
  std::size_t width = 0;
  std::vector<std::uint32_t> nested;  // past nodes its operands read
};

}  // namespace

struct Progression::Impl {
  VariableSet vars;
  std::vector<Atom> atoms;
  std::vector<Minterm> alphabet;
  std::vector<Node> nodes;
  std::map<Node, std::uint32_t> index;
  std::vector<PastNode> past;
  std::size_t num_registers = 0;
  std::uint32_t root = 0;
  std::vector<std::optional<std::vector<std::uint32_t>>> live_memo;

  std::uint32_t T = 0, F = 0;

  std::uint32_t intern(Node n) {
    auto it = index.find(n);
    if (it != index.end()) return it->second;
    auto id = static_cast<std::uint32_t>(nodes.size());
    nodes.push_back(n);
    index.emplace(std::move(n), id);
    return id;
  }

  const Node& at(std::uint32_t id) const { return nodes[id]; }

  bool final(std::uint32_t id) const {
    const Node& n = at(id);
    switch (n.op) {
      case Op::truth:
      case Op::release:
        return true;
      case Op::conj:
        return std::all_of(n.kids.begin(), n.kids.end(), [&](auto k) { return final(k); });
      case Op::disj:
        return std::any_of(n.kids.begin(), n.kids.end(), [&](auto k) { return final(k); });
      default:
        return false;
    }
  }

  std::uint32_t mk_lit(Op op, std::uint32_t ref, bool pol) {
    Node n;
    n.op = op;
    n.ref = ref;
    n.pol = pol;
    return intern(n);
  }

  // Flattened, sorted, deduplicated n-ary connective with unit absorption and
  // complementary-literal detection.
  std::uint32_t mk_nary(Op op, std::vector<std::uint32_t> kids) {
    const std::uint32_t unit = op == Op::conj ? T : F;
    const std::uint32_t zero = op == Op::conj ? F : T;
    std::vector<std::uint32_t> flat;
    for (auto k : kids) {
      if (k == unit) continue;
      if (k == zero) return zero;
      if (at(k).op == op)
        flat.insert(flat.end(), at(k).kids.begin(), at(k).kids.end());
      else
        flat.push_back(k);
    }
    std::sort(flat.begin(), flat.end());
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
    for (std::size_t i = 0; i < flat.size(); ++i) {
      const Node& a = at(flat[i]);
      if (a.op != Op::lit && a.op != Op::past) continue;
      for (std::size_t j = i + 1; j < flat.size(); ++j) {
        const Node& b = at(flat[j]);
        if (b.op == a.op && b.ref == a.ref && b.pol != a.pol) return zero;
      }
    }
    if (flat.empty()) return unit;
    if (flat.size() == 1) return flat[0];
    Node n;
    n.op = op;
    n.kids = std::move(flat);
    return intern(n);
  }

  std::uint32_t mk_and(std::uint32_t a, std::uint32_t b) { return mk_nary(Op::conj, {a, b}); }
  std::uint32_t mk_or(std::uint32_t a, std::uint32_t b) { return mk_nary(Op::disj, {a, b}); }

  std::uint32_t mk_temporal(Op op, bool closed, unsigned lo, unsigned hi, std::uint32_t k1, std::uint32_t k2) {
    if (op == Op::until) {
      if (k2 == F) return F;
      if (k1 == T) closed = false;
      // φ1 U[0,0] φ2 is φ2 now, except at the end of the trace.
      if (lo == 0 && hi == 0 && !final(k2)) return k2;
      if (closed && k1 == F) {
        if (lo > 0) return F;
        hi = 0;  // only t' = s is possible
        if (!final(k2)) return k2;
      }
    } else {
      if (k2 == T) return T;
      if (k1 == F) closed = false;
      if (lo == 0 && hi == 0 && final(k2)) return k2;
      if (closed && k1 == T) {
        if (lo > 0) return T;
        hi = 0;
        if (final(k2)) return k2;
      }
    }
    Node n;
    n.op = op;
    n.closed = closed;
    n.lo = lo;
    n.hi = hi;
    n.kids = {k1, k2};
    return intern(n);
  }

  std::uint32_t atom_node(const Atom& a, bool pol) {
    Literal l = Literal::make(a);
    if (l.atom.f.is_constant()) return (l.holds(Valuation()) == pol) ? T : F;
    auto it = std::lower_bound(atoms.begin(), atoms.end(), l.atom);
    return mk_lit(Op::lit, static_cast<std::uint32_t>(it - atoms.begin()), pol != l.neg);
  }

  std::uint32_t past_node(const Formula& phi1, const Formula& phi2, Interval iv, bool pol) {
    if (phi1.has_future() || phi2.has_future())
      throw UnsupportedFormula("past operator with a future operand: " + stlcov::to_string(Formula::since(iv, phi1, phi2)));
    Formula key = Formula::since(iv, phi1, phi2);
    for (std::uint32_t i = 0; i < past.size(); ++i)
      if (past[i].source == key) return mk_lit(Op::past, i, pol);
    PastNode p;
    p.source = key;
    p.phi1 = translate(phi1, true, false);
    p.phi2 = translate(phi2, true, false);
    p.lo = iv.lo;
    p.hi = iv.hi ? *iv.hi : kUnbounded;
    p.width = iv.hi ? *iv.hi : iv.lo + 1;
    p.offset = num_registers;
    num_registers += p.width;
    std::set<std::uint32_t> nested;
    collect_past(p.phi1, nested);
    collect_past(p.phi2, nested);
    p.nested.assign(nested.begin(), nested.end());
    past.push_back(std::move(p));
    return mk_lit(Op::past, static_cast<std::uint32_t>(past.size() - 1), pol);
  }

  void collect_past(std::uint32_t id, std::set<std::uint32_t>& out) const {
    const Node& n = at(id);
    if (n.op == Op::past) {
      if (out.insert(n.ref).second)
        for (auto q : past[n.ref].nested) out.insert(q);
    }
    for (auto k : n.kids) collect_past(k, out);
  }

  // Negation normal form. `top` is true until the first temporal operator.
  std::uint32_t translate(const Formula& f, bool pol, bool top) {
    using K = FormulaKind;
    auto bounded = [&](const Interval& iv) {
      if (!iv.hi && !top)
        throw UnsupportedFormula("unbounded future operator below another temporal operator: " + stlcov::to_string(f));
      return iv.hi ? *iv.hi : kUnbounded;
    };
    switch (f.kind()) {
      case K::truth:
        return pol ? T : F;
      case K::atom:
        return atom_node(f.atom(), pol);
      case K::negation:
        return translate(f.arg(0), !pol, top);
      case K::disjunction:
      case K::conjunction: {
        bool conj = (f.kind() == K::conjunction) == pol;
        auto a = translate(f.arg(0), pol, top), b = translate(f.arg(1), pol, top);
        return conj ? mk_and(a, b) : mk_or(a, b);
      }
      case K::implication: {
        auto a = translate(f.arg(0), !pol, top), b = translate(f.arg(1), pol, top);
        return pol ? mk_or(a, b) : mk_and(a, b);
      }
      case K::until: {
        unsigned hi = bounded(f.interval());
        auto a = translate(f.arg(0), pol, false), b = translate(f.arg(1), pol, false);
        return mk_temporal(pol ? Op::until : Op::release, false, f.interval().lo, hi, a, b);
      }
      case K::eventually:
      case K::always: {
        unsigned hi = bounded(f.interval());
        bool ev = (f.kind() == K::eventually) == pol;
        auto b = translate(f.arg(0), pol, false);
        return ev ? mk_temporal(Op::until, false, f.interval().lo, hi, T, b)
                  : mk_temporal(Op::release, false, f.interval().lo, hi, F, b);
      }
      case K::since:
        return past_node(f.arg(0), f.arg(1), f.interval(), pol);
      case K::once:
        return past_node(Formula::truth(), f.arg(0), f.interval(), pol);
      case K::historically:
        return past_node(Formula::truth(), Formula::negation(f.arg(0)), f.interval(), !pol);
    }
    return T;
  }

  // Value of a Boolean node at the current step.
  bool eval_now(std::uint32_t id, const Minterm& m, const std::vector<bool>& pv) const {
    const Node& n = at(id);
    switch (n.op) {
      case Op::truth:
        return true;
      case Op::falsity:
        return false;
      case Op::lit:
        return m.signs[n.ref] == n.pol;
      case Op::past:
        return pv[n.ref] == n.pol;
      case Op::conj:
        return std::all_of(n.kids.begin(), n.kids.end(), [&](auto k) { return eval_now(k, m, pv); });
      case Op::disj:
        return std::any_of(n.kids.begin(), n.kids.end(), [&](auto k) { return eval_now(k, m, pv); });
      default:
        throw ValidationBug("temporal node inside a past operand");
    }
  }

  // Current values of the past nodes and the registers after this step.
  std::pair<std::vector<bool>, std::vector<bool>> step_past(const std::vector<bool>& regs, const Minterm& m) const {
    std::vector<bool> pv(past.size()), next(num_registers, false);
    for (std::size_t i = 0; i < past.size(); ++i) {
      const PastNode& p = past[i];
      bool x1 = eval_now(p.phi1, m, pv), x2 = eval_now(p.phi2, m, pv);
      auto reg = [&](std::size_t k) -> bool { return regs[p.offset + k]; };
      // c_0 = φ2 now; c_k = φ2 k steps ago with φ1 strictly in between.
      auto c = [&](std::size_t k) -> bool { return k == 0 ? x2 : reg(k - 1); };
      bool value = false;
      if (p.hi != kUnbounded) {
        for (std::size_t k = p.lo; k <= p.hi; ++k) value = value || c(k);
        for (std::size_t k = 0; k < p.width; ++k) next[p.offset + k] = c(k) && x1;
      } else {
        bool saturated = reg(p.lo);
        value = (p.lo == 0 ? x2 : reg(p.lo - 1)) || saturated;
        for (std::size_t k = 0; k < p.lo; ++k) next[p.offset + k] = c(k) && x1;
        next[p.offset + p.lo] = value && x1;
      }
      pv[i] = value;
    }
    return {pv, next};
  }

  std::uint32_t prog(std::uint32_t id, const Minterm& m, const std::vector<bool>& pv,
                     std::unordered_map<std::uint32_t, std::uint32_t>& memo) {
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    const Node n = at(id);
    std::uint32_t r = T;
    switch (n.op) {
      case Op::truth:
        r = T;
        break;
      case Op::falsity:
        r = F;
        break;
      case Op::lit:
      case Op::past:
        r = eval_now(id, m, pv) ? T : F;
        break;
      case Op::conj:
      case Op::disj: {
        std::vector<std::uint32_t> ks;
        for (auto k : n.kids) ks.push_back(prog(k, m, pv, memo));
        r = mk_nary(n.op, std::move(ks));
        break;
      }
      case Op::until: {
        auto a = n.kids[0], b = n.kids[1];
        auto rest = [&] { return mk_temporal(Op::until, true, n.lo == 0 ? 0 : n.lo - 1, dec(n.hi), a, b); };
        if (n.lo == 0) {
          auto later = n.hi == 0 ? F : rest();
          if (n.closed) later = mk_and(prog(a, m, pv, memo), later);
          r = mk_or(prog(b, m, pv, memo), later);
        } else {
          r = n.closed ? mk_and(prog(a, m, pv, memo), rest()) : rest();
        }
        break;
      }
      case Op::release: {
        auto a = n.kids[0], b = n.kids[1];
        auto rest = [&] { return mk_temporal(Op::release, true, n.lo == 0 ? 0 : n.lo - 1, dec(n.hi), a, b); };
        if (n.lo == 0) {
          auto later = n.hi == 0 ? T : rest();
          if (n.closed) later = mk_or(prog(a, m, pv, memo), later);
          r = mk_and(prog(b, m, pv, memo), later);
        } else {
          r = n.closed ? mk_or(prog(a, m, pv, memo), rest()) : rest();
        }
        break;
      }
    }
    memo.emplace(id, r);
    return r;
  }

  const std::vector<std::uint32_t>& live_past(std::uint32_t id) {
    if (live_memo.size() <= id) live_memo.resize(nodes.size());
    if (!live_memo[id]) {
      std::set<std::uint32_t> s;
      collect_past(id, s);
      live_memo[id] = std::vector<std::uint32_t>(s.begin(), s.end());
    }
    return *live_memo[id];
  }

  Obligation progress(const Obligation& ob, const Minterm& m) {
    auto [pv, next] = step_past(ob.registers, m);
    std::unordered_map<std::uint32_t, std::uint32_t> memo;
    std::uint32_t r = prog(ob.node, m, pv, memo);
    // zero the registers of past nodes the residual no longer reads
    std::vector<bool> regs(num_registers, false);
    for (auto p : live_past(r))
      for (std::size_t k = 0; k < past[p].width; ++k) regs[past[p].offset + k] = next[past[p].offset + k];
    return Obligation{r, std::move(regs)};
  }

  void print(std::ostream& os, std::uint32_t id) const {
    const Node& n = at(id);
    auto iv = [&] {
      os << '[' << n.lo << ',';
      if (n.hi == kUnbounded)
        os << "inf)";
      else
        os << n.hi << ']';
    };
    switch (n.op) {
      case Op::truth:
        os << "true";
        return;
      case Op::falsity:
        os << "false";
        return;
      case Op::lit:
        os << render_atom(atoms[n.ref], !n.pol);
        return;
      case Op::past:
        os << (n.pol ? "" : "not ") << '(' << stlcov::to_string(past[n.ref].source) << ')';
        return;
      case Op::conj:
      case Op::disj:
        for (std::size_t i = 0; i < n.kids.size(); ++i) {
          if (i) os << (n.op == Op::conj ? " and " : " or ");
          os << '(';
          print(os, n.kids[i]);
          os << ')';
        }
        return;
      case Op::until:
      case Op::release:
        os << '(';
        print(os, n.kids[0]);
        os << ") " << (n.op == Op::until ? 'U' : 'R') << (n.closed ? "~" : "");
        iv();
        os << " (";
        print(os, n.kids[1]);
        os << ')';
        return;
    }
  }
};

namespace {

void collect_atoms(const Formula& f, std::set<Atom>& out) {
  if (f.kind() == FormulaKind::atom) {
    Literal l = Literal::make(f.atom());
    if (!l.atom.f.is_constant()) out.insert(l.atom);
  }
  for (std::size_t i = 0; i < f.arity(); ++i) collect_atoms(f.arg(i), out);
}

}  // namespace

Progression::Progression(const IaStlSpec& spec, std::size_t atom_cap) : impl_(std::make_unique<Impl>()) {
  Impl& s = *impl_;
  s.vars = spec.variables;
  std::set<Atom> atoms;
  collect_atoms(spec.formula, atoms);
  s.atoms.assign(atoms.begin(), atoms.end());
  for (const auto& a : s.atoms) {
    bool in = false, out = false;
    for (const auto& [name, k] : a.f.coeffs) {
      if (!s.vars.contains(name)) throw UnknownVariable("undeclared variable '" + name + "'");
      (s.vars.at(name).kind == VarKind::input ? in : out) = true;
    }
    if (in && out) throw MixedAtom("atom '" + render_atom(a) + "' mixes input and output variables");
  }
  s.alphabet = enumerate_minterms(s.atoms, s.vars, atom_cap);
  Node t, f;
  t.op = Op::truth;
  f.op = Op::falsity;
  s.T = s.intern(t);
  s.F = s.intern(f);
  s.root = s.translate(spec.formula, true, true);
}

Progression::~Progression() = default;
Progression::Progression(Progression&&) noexcept = default;
Progression& Progression::operator=(Progression&&) noexcept = default;

const std::vector<Atom>& Progression::atoms() const { return impl_->atoms; }
const std::vector<Minterm>& Progression::alphabet() const { return impl_->alphabet; }

Minterm Progression::classify(const Valuation& v) const {
  Minterm m;
  for (const auto& a : impl_->atoms) m.signs.push_back(a.holds(v));
  return m;
}

Obligation Progression::initial() const {
  return Obligation{impl_->root, std::vector<bool>(impl_->num_registers, false)};
}

Obligation Progression::obligation(const Formula& f) {
  std::uint32_t id = impl_->translate(f, true, true);
  return Obligation{id, std::vector<bool>(impl_->num_registers, false)};
}

Obligation Progression::progress(const Obligation& ob, const Minterm& m) {
  Obligation o = ob;
  o.registers.resize(impl_->num_registers, false);
  return impl_->progress(o, m);
}

bool Progression::accepting(const Obligation& ob) const { return impl_->final(ob.node); }
bool Progression::is_false(const Obligation& ob) const { return ob.node == impl_->F; }
bool Progression::is_true(const Obligation& ob) const { return ob.node == impl_->T; }

std::string Progression::to_string(const Obligation& ob) const {
  std::ostringstream os;
  impl_->print(os, ob.node);
  bool any = std::find(ob.registers.begin(), ob.registers.end(), true) != ob.registers.end();
  if (any) {
    os << " | ";
    for (bool b : ob.registers) os << (b ? '1' : '0');
  }
  return os.str();
}

namespace {

// Deterministic complete transition table over the satisfiable minterms.
struct Table {
  std::vector<LocationKind> kinds;
  std::vector<std::vector<std::size_t>> next;  // [state][letter]
  std::size_t initial = 0;
};

SymbolicAutomaton reduce(const VariableSet& vars, const std::vector<Atom>& atoms,
                         const std::vector<Minterm>& alphabet, const Table& table) {
  const std::size_t n = table.kinds.size();
  // Moore partition refinement.
  std::vector<std::size_t> block(n);
  for (std::size_t q = 0; q < n; ++q) block[q] = static_cast<std::size_t>(table.kinds[q]);
  for (;;) {
    std::map<std::vector<std::size_t>, std::size_t> sig;
    std::vector<std::size_t> refined(n);
    for (std::size_t q = 0; q < n; ++q) {
      std::vector<std::size_t> s{block[q]};
      for (auto d : table.next[q]) s.push_back(block[d]);
      refined[q] = sig.emplace(std::move(s), sig.size()).first->second;
    }
    std::size_t before = std::set<std::size_t>(block.begin(), block.end()).size();
    block = std::move(refined);
    if (sig.size() == before) break;
  }
  // Renumber blocks in BFS order from the initial state over letters.
  std::map<std::size_t, std::size_t> rep;  // block -> a representative state
  for (std::size_t q = 0; q < n; ++q) rep.emplace(block[q], q);
  std::map<std::size_t, std::size_t> id;
  std::deque<std::size_t> queue{block[table.initial]};
  id[block[table.initial]] = 0;
  while (!queue.empty()) {
    std::size_t b = queue.front();
    queue.pop_front();
    for (auto d : table.next[rep[b]])
      if (id.emplace(block[d], id.size()).second) queue.push_back(block[d]);
  }
  std::vector<Location> locs(id.size());
  std::vector<std::size_t> final;
  for (const auto& [b, i] : id) locs[i] = Location{i, "s" + std::to_string(i), table.kinds[rep[b]]};
  for (const auto& l : locs)
    if (l.kind == LocationKind::accepting) final.push_back(l.id);

  std::vector<Transition> ts;
  for (std::size_t i = 0; i < locs.size(); ++i) {
    std::size_t b = std::find_if(id.begin(), id.end(), [&](const auto& kv) { return kv.second == i; })->first;
    std::map<std::size_t, std::vector<Minterm>> cells;
    for (std::size_t l = 0; l < alphabet.size(); ++l) cells[id.at(block[table.next[rep[b]][l]])].push_back(alphabet[l]);
    for (const auto& [dst, on] : cells)
      ts.push_back(Transition{ts.size(), i, dst, cover_minterms(atoms, on, alphabet)});
  }
  return SymbolicAutomaton(vars, std::move(locs), {0}, std::move(final), std::move(ts));
}

}  // namespace

SymbolicAutomaton compile(const IaStlSpec& spec, std::size_t atom_cap) {
  Progression p(spec, atom_cap);
  const auto& alphabet = p.alphabet();
  std::map<Obligation, std::size_t> ids;
  std::vector<Obligation> states;
  Table table;
  auto add = [&](const Obligation& ob) {
    auto [it, fresh] = ids.emplace(ob, states.size());
    if (fresh) states.push_back(ob);
    return it->second;
  };
  add(p.initial());
  for (std::size_t q = 0; q < states.size(); ++q) {
    std::vector<std::size_t> row;
    for (const auto& m : alphabet) row.push_back(add(p.progress(states[q], m)));
    table.next.push_back(std::move(row));
  }
  // States that cannot reach an accepting one are irrecoverable.
  const std::size_t n = states.size();
  std::vector<std::vector<std::size_t>> preds(n);
  for (std::size_t q = 0; q < n; ++q)
    for (auto d : table.next[q]) preds[d].push_back(q);
  std::vector<bool> alive(n, false);
  std::deque<std::size_t> queue;
  for (std::size_t q = 0; q < n; ++q)
    if (p.accepting(states[q])) {
      alive[q] = true;
      queue.push_back(q);
    }
  while (!queue.empty()) {
    auto q = queue.front();
    queue.pop_front();
    for (auto s : preds[q])
      if (!alive[s]) {
        alive[s] = true;
        queue.push_back(s);
      }
  }
  for (std::size_t q = 0; q < n; ++q)
    table.kinds.push_back(!alive[q]                  ? LocationKind::error_sink
                          : p.accepting(states[q]) ? LocationKind::accepting
                                                   : LocationKind::active);
  SymbolicAutomaton a = reduce(spec.variables, p.atoms(), alphabet, table);
  a.set_spec_hash(spec_hash(spec));
  return a;
}

SymbolicAutomaton minimize(const SymbolicAutomaton& a) {
  std::set<Atom> atom_set;
  for (const auto& t : a.transitions())
    for (const auto& at : t.guard.atoms()) atom_set.insert(at);
  std::vector<Atom> atoms(atom_set.begin(), atom_set.end());
  auto alphabet = enumerate_minterms(atoms, a.variables(), std::max(kDefaultAtomCap, atoms.size()));
  Table table;
  table.initial = a.initial_location();
  for (const auto& loc : a.locations()) {
    table.kinds.push_back(loc.kind);
    std::vector<std::size_t> row;
    for (const auto& m : alphabet) {
      Clause cell = m.clause(atoms);
      std::optional<std::size_t> dst;
      for (auto id : a.outgoing(loc.id))
        for (const auto& c : a.transition(id).guard.clauses())
          if (std::includes(cell.begin(), cell.end(), c.begin(), c.end())) dst = a.transition(id).dst;
      if (!dst) throw ValidationBug("minimize needs a complete automaton; location " + loc.name + " has no move for " +
                                    to_string(cell));
      row.push_back(*dst);
    }
    table.next.push_back(std::move(row));
  }
  SymbolicAutomaton out = reduce(a.variables(), atoms, alphabet, table);
  out.set_spec_hash(a.spec_hash());
  return out;
}

std::string spec_hash(const IaStlSpec& spec) {
  std::ostringstream os;
  for (const auto& v : spec.variables) os << to_string(v.kind) << ' ' << v.name << ' ' << v.lo << ' ' << v.hi << ';';
  os << to_string(spec.formula);
  return fnv1a_hex(os.str());
}

}  // namespace stlcov
