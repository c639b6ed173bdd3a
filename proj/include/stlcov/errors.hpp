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
#include <stdexcept>
#include <string>

namespace stlcov {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DisjointnessViolation : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class UnknownVariable : public Error {
 public:
  using Error::Error;
};

/// A value lies outside the declared domain of its variable.
class DomainViolation : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// An atom mentions both input and output variables.
class MixedAtom : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Raised when an automaton that passed validation misbehaves; indicates a bug.
class ValidationBug : public Error {
 public:
  using Error::Error;
};

class DegenerateCriterion : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

/// The formula lies outside the fragment the compiler accepts.
class UnsupportedFormula : public Error {
 public:
  using Error::Error;
};

class ProtocolError : public Error {
 public:
  using Error::Error;
};

class UnknownModel : public Error {
 public:
  using Error::Error;
};

}  // namespace stlcov
