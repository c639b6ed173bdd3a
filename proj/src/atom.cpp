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

#include "stlcov/atom.hpp"

#include <cmath>
#include <sstream>

namespace stlcov {

Affine Affine::variable(const std::string& name, double coeff) {
  Affine a;
  if (coeff != 0.0) a.coeffs[name] = coeff;
  return a;
}

double Affine::eval(const Valuation& v) const {
  double sum = offset;
  for (const auto& [name, c] : coeffs) sum += c * v.at(name);
  return sum;
}

std::set<std::string> Affine::variables() const {
  std::set<std::string> out;
  for (const auto& [name, c] : coeffs) out.insert(name);
  return out;
}

Affine Affine::operator+(const Affine& o) const {
  Affine r = *this;
  r.offset += o.offset;
  for (const auto& [name, c] : o.coeffs) {
    double s = (r.coeffs[name] += c);
    if (s == 0.0) r.coeffs.erase(name);
  }
  return r;
}

Affine Affine::operator-(const Affine& o) const { return *this + o * -1.0; }

Affine Affine::operator*(double k) const {
  Affine r;
  r.offset = offset * k;
  if (k != 0.0)
    for (const auto& [name, c] : coeffs) r.coeffs[name] = c * k;
  return r;
}

std::pair<Atom, bool> canonical_atom(const Atom& atom) {
  Affine f = atom.strict ? -atom.f : atom.f;
  bool negated = atom.strict;
  double scale = 0.0;
  for (const auto& [name, c] : f.coeffs) scale = std::max(scale, std::abs(c));
  if (scale > 0.0 && scale != 1.0) {
    for (auto& [name, c] : f.coeffs) c /= scale;
    f.offset /= scale;
  }
  if (f.offset == 0.0) f.offset = 0.0;  // no negative zero
  return {Atom{std::move(f), false}, negated};
}

namespace {

void print_number(std::ostream& os, double x) {
  if (x == std::floor(x) && std::abs(x) < 1e15)
    os << static_cast<long long>(x);
  else
    os << x;
}

}  // namespace

std::string render_atom(const Atom& atom, bool negated) {
  // negation of `f >= 0` is `f < 0`; of `f > 0` is `f <= 0`.
  Affine f = atom.f;
  bool strict = atom.strict;
  bool greater = true;
  if (negated) {
    strict = !strict;
    greater = false;
  }
  if (!f.coeffs.empty() && f.coeffs.begin()->second < 0) {
    f = -f;
    greater = !greater;
  }
  std::ostringstream os;
  bool first = true;
  for (const auto& [name, c] : f.coeffs) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << '-';
    double m = std::abs(c);
    if (m != 1.0) {
      print_number(os, m);
      os << '*';
    }
    os << name;
    first = false;
  }
  if (first) os << '0';
  os << ' ' << (greater ? ">" : "<") << (strict ? "" : "=") << ' ';
  print_number(os, f.offset == 0.0 ? 0.0 : -f.offset);
  return os.str();
}

}  // namespace stlcov
