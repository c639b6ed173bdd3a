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

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "stlcov/automaton.hpp"
#include "stlcov/formula.hpp"
#include "stlcov/predicate.hpp"

namespace stlcov {

/// A residual requirement: a hash-consed obligation node plus the shift
/// registers of the past subformulas.
struct Obligation {
  std::uint32_t node = 0;
  std::vector<bool> registers;

  friend bool operator==(const Obligation&, const Obligation&) = default;
  friend auto operator<=>(const Obligation&, const Obligation&) = default;
};

/// Formula progression over the minterms of a spec's atoms. Future operators
/// must be bounded unless no temporal operator encloses them; past operands
/// must be free of future operators.
class Progression {
 public:
  explicit Progression(const IaStlSpec& spec, std::size_t atom_cap = kDefaultAtomCap);
  ~Progression();
  Progression(Progression&&) noexcept;
  Progression& operator=(Progression&&) noexcept;

  /// Canonical atom universe, sorted.
  const std::vector<Atom>& atoms() const;
  /// Satisfiable minterms of the universe over the spec's domains.
  const std::vector<Minterm>& alphabet() const;
  /// The minterm a valuation falls in.
  Minterm classify(const Valuation& v) const;

  Obligation initial() const;
  /// Obligation for an arbitrary formula over the spec's atoms, with empty history.
  Obligation obligation(const Formula& f);
  Obligation progress(const Obligation& ob, const Minterm& m);
  /// Truth of the obligation if the trace ends here.
  bool accepting(const Obligation& ob) const;
  bool is_false(const Obligation& ob) const;
  bool is_true(const Obligation& ob) const;
  std::string to_string(const Obligation& ob) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Deterministic, complete automaton for the spec: one location per
/// bisimulation class of reachable obligations, a single error-sink for
/// irrecoverable prefixes, and one merged guard per location pair.
SymbolicAutomaton compile(const IaStlSpec& spec, std::size_t atom_cap = kDefaultAtomCap);

/// Bisimulation reduction by partition refinement followed by guard merging;
/// language-preserving on deterministic complete inputs.
SymbolicAutomaton minimize(const SymbolicAutomaton& a);

/// Text hash used to tie automata to their source spec.
std::string spec_hash(const IaStlSpec& spec);

}  // namespace stlcov
