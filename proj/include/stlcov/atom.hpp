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

#include <compare>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "stlcov/signal.hpp"

namespace stlcov {

/// Σ coeffs[x]·x + offset. Zero coefficients are never stored.
struct Affine {
  std::map<std::string, double> coeffs;
  double offset = 0.0;

  static Affine constant(double c) { return Affine{{}, c}; }
  static Affine variable(const std::string& name, double coeff = 1.0);

  double eval(const Valuation& v) const;
  std::set<std::string> variables() const;
  bool is_constant() const { return coeffs.empty(); }

  Affine operator+(const Affine& o) const;
  Affine operator-(const Affine& o) const;
  Affine operator*(double k) const;
  Affine operator-() const { return *this * -1.0; }

  friend bool operator==(const Affine&, const Affine&) = default;
  friend auto operator<=>(const Affine&, const Affine&) = default;
};

/// The constraint `f > 0` (strict) or `f >= 0`. Its robustness on a valuation is f(v).
struct Atom {
  Affine f;
  bool strict = false;

  bool holds(const Valuation& v) const {
    double x = f.eval(v);
    return strict ? x > 0.0 : x >= 0.0;
  }

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

/// Canonical non-strict form: `atom` ≡ `canonical.first` xor `canonical.second`
/// (second = true means negated). `f > 0` becomes ¬(-f >= 0), and f is scaled
/// so that its largest absolute coefficient is 1.
std::pair<Atom, bool> canonical_atom(const Atom& atom);

/// Human-readable `lhs op rhs` rendering of a (possibly negated) atom.
std::string render_atom(const Atom& atom, bool negated = false);

}  // namespace stlcov
