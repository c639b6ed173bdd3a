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

#include <atomic>
#include <chrono>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "stlcov/optimizer.hpp"
#include "stlcov/signal.hpp"

namespace stlcov {

/// A discrete-time system under test. Every call to `run` starts from the
/// initial internal state and maps a whole input prefix to outputs.
class SystemModel {
 public:
  virtual ~SystemModel() = default;
  virtual const VariableSet& inputs() const = 0;
  virtual const VariableSet& outputs() const = 0;
  /// Raw simulation, without budget accounting.
  virtual Signal run(const Signal& inputs) const = 0;
};

/// One budgeted simulation: runs `s` on `tau` and consumes one unit.
Signal simulate(const SystemModel& s, const Signal& tau, SimulationBudget& budget);

/// "s1", "s2" (variables a, b -> c, d) or "leaky_integrator" (u -> y, with
/// params {"alpha": ...}).
std::unique_ptr<SystemModel> builtin(const std::string& name, const nlohmann::json& params = nlohmann::json::object());

/// A child process speaking newline-delimited JSON on stdin/stdout.
std::unique_ptr<SystemModel> external(std::vector<std::string> argv, VariableSet inputs, VariableSet outputs,
                                      std::chrono::milliseconds timeout = std::chrono::seconds(10));

/// Counts raw simulations of a wrapped model.
class CountingModel : public SystemModel {
 public:
  explicit CountingModel(const SystemModel& inner) : inner_(inner) {}
  const VariableSet& inputs() const override { return inner_.inputs(); }
  const VariableSet& outputs() const override { return inner_.outputs(); }
  Signal run(const Signal& inputs) const override {
    ++calls_;
    return inner_.run(inputs);
  }
  long long calls() const { return calls_.load(); }

 private:
  const SystemModel& inner_;
  mutable std::atomic<long long> calls_{0};
};

}  // namespace stlcov
