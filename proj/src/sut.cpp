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

#include "stlcov/sut.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <functional>
#include <mutex>
#include <optional>

#include "stlcov/errors.hpp"

namespace stlcov {

Signal simulate(const SystemModel& s, const Signal& tau, SimulationBudget& budget) {
  Signal out = s.run(tau);
  budget.consume();
  if (out.size() != tau.size())
    throw LengthMismatch("system produced " + std::to_string(out.size()) + " steps for " +
                         std::to_string(tau.size()) + " inputs");
  return out;
}

namespace {

// Step function over (state, inputs) producing outputs.
using StepFn = std::function<std::vector<double>(std::vector<double>&, const std::vector<double>&)>;

class DifferenceModel : public SystemModel {
 public:
  DifferenceModel(VariableSet in, VariableSet out, std::size_t state_size, StepFn step)
      : in_(std::move(in)), out_(std::move(out)), state_size_(state_size), step_(std::move(step)) {}

  const VariableSet& inputs() const override { return in_; }
  const VariableSet& outputs() const override { return out_; }

  Signal run(const Signal& tau) const override {
    std::vector<double> state(state_size_, 0.0);
    Signal out(out_);
    for (const auto& v : tau) {
      std::vector<double> u;
      for (const auto& p : in_) u.push_back(v.at(p.name));
      out.push_back(Valuation(out_, step_(state, u)));
    }
    return out;
  }

 private:
  VariableSet in_, out_;
  std::size_t state_size_;
  StepFn step_;
};

VariableSet ab() { return VariableSet({{"a", VarKind::input, -10, 10}, {"b", VarKind::input, -10, 10}}); }
VariableSet cd() { return VariableSet({{"c", VarKind::output, -50, 50}, {"d", VarKind::output, -50, 50}}); }

}  // namespace

std::unique_ptr<SystemModel> builtin(const std::string& name, const nlohmann::json& params) {
  if (name == "s1")
    return std::make_unique<DifferenceModel>(ab(), cd(), 0, [](auto&, const std::vector<double>& u) {
      return std::vector<double>{u[0], u[0] + u[1] + 2};
    });
  if (name == "s2")
    return std::make_unique<DifferenceModel>(ab(), cd(), 0, [](auto&, const std::vector<double>& u) {
      return std::vector<double>{2 * u[0] + u[1], u[0] + 10 - u[1]};
    });
  if (name == "leaky_integrator") {
    double alpha = params.value("alpha", 0.5);
    return std::make_unique<DifferenceModel>(
        VariableSet({{"u", VarKind::input, -10, 10}}), VariableSet({{"y", VarKind::output, -100, 100}}), 1,
        [alpha](std::vector<double>& y, const std::vector<double>& u) {
          y[0] = alpha * y[0] + u[0];
          return std::vector<double>{y[0]};
        });
  }
  throw UnknownModel("unknown builtin system '" + name + "'");
}

namespace {

class ExternalModel : public SystemModel {
 public:
  ExternalModel(std::vector<std::string> argv, VariableSet in, VariableSet out, std::chrono::milliseconds timeout)
      : argv_(std::move(argv)), in_(std::move(in)), out_(std::move(out)), timeout_(timeout) {
    if (argv_.empty()) throw UnknownModel("empty external command");
    ::signal(SIGPIPE, SIG_IGN);
  }
  ~ExternalModel() override { stop(); }

  const VariableSet& inputs() const override { return in_; }
  const VariableSet& outputs() const override { return out_; }

  Signal run(const Signal& tau) const override {
    std::lock_guard<std::mutex> lock(mu_);
    try {
      return exchange(tau);
    } catch (...) {
      stop();
      throw;
    }
  }

 private:
  Signal exchange(const Signal& tau) const {
    if (pid_ < 0) start();
    auto deadline = std::chrono::steady_clock::now() + timeout_;
    send({{"cmd", "reset"}});
    Signal out(out_);
    for (std::size_t t = 0; t < tau.size(); ++t) {
      nlohmann::json in = nlohmann::json::object();
      for (const auto& p : in_) in[p.name] = tau[t].at(p.name);
      send({{"cmd", "step"}, {"inputs", in}});
      auto line = read_line(deadline);
      if (!line)
        throw LengthMismatch("external system answered " + std::to_string(t) + " of " + std::to_string(tau.size()) +
                             " steps");
      out.push_back(parse_reply(*line));
    }
    send({{"cmd", "end"}});
    return out;
  }

  Valuation parse_reply(const std::string& line) const {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception&) {
      throw ProtocolError("malformed reply: " + line);
    }
    if (!j.is_object() || j.size() != 1 || !j.contains("outputs") || !j["outputs"].is_object())
      throw ProtocolError("expected {\"outputs\": {...}} but got " + line);
    std::vector<double> vals;
    for (const auto& p : out_) {
      const auto& o = j["outputs"];
      if (!o.contains(p.name) || !o[p.name].is_number()) throw ProtocolError("reply lacks output '" + p.name + "'");
      vals.push_back(o[p.name].get<double>());
    }
    return Valuation(out_, vals);
  }

  void start() const {
    int to_child[2], from_child[2], exec_err[2];
    if (::pipe(to_child) != 0 || ::pipe(from_child) != 0 || ::pipe2(exec_err, O_CLOEXEC) != 0)
      throw ProtocolError(std::string("pipe: ") + std::strerror(errno));
    pid_t pid = ::fork();
    if (pid < 0) throw ProtocolError(std::string("fork: ") + std::strerror(errno));
    if (pid == 0) {
      ::dup2(to_child[0], STDIN_FILENO);
      ::dup2(from_child[1], STDOUT_FILENO);
      ::close(to_child[0]);
      ::close(to_child[1]);
      ::close(from_child[0]);
      ::close(from_child[1]);
      std::vector<char*> args;
      for (const auto& a : argv_) args.push_back(const_cast<char*>(a.c_str()));
      args.push_back(nullptr);
      ::close(exec_err[0]);
      ::execvp(args[0], args.data());
      int e = errno;
      [[maybe_unused]] auto n = ::write(exec_err[1], &e, sizeof e);
      ::_exit(127);
    }
    ::close(to_child[0]);
    ::close(from_child[1]);
    ::close(exec_err[1]);
    int e = 0;
    ssize_t got = ::read(exec_err[0], &e, sizeof e);
    ::close(exec_err[0]);
    if (got == static_cast<ssize_t>(sizeof e)) {
      ::close(to_child[1]);
      ::close(from_child[0]);
      ::waitpid(pid, nullptr, 0);
      throw UnknownModel("cannot start '" + argv_[0] + "': " + std::strerror(e));
    }
    pid_ = pid;
    write_fd_ = to_child[1];
    read_fd_ = from_child[0];
    buffer_.clear();
  }

  void stop() const {
    if (pid_ < 0) return;
    ::close(write_fd_);
    ::close(read_fd_);
    int status = 0;
    // give the child a moment to exit on EOF before killing it
    for (int k = 0; k < 20 && ::waitpid(pid_, &status, WNOHANG) == 0; ++k) ::usleep(5000);
    if (::waitpid(pid_, &status, WNOHANG) == 0) {
      ::kill(pid_, SIGKILL);
      ::waitpid(pid_, &status, 0);
    }
    pid_ = -1;
  }

  void send(const nlohmann::json& msg) const {
    std::string line = msg.dump() + "\n";
    std::size_t off = 0;
    while (off < line.size()) {
      ssize_t n = ::write(write_fd_, line.data() + off, line.size() - off);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw ProtocolError("external system closed its input");
      }
      off += static_cast<std::size_t>(n);
    }
  }

  // Next line from the child, or none on end of stream.
  std::optional<std::string> read_line(std::chrono::steady_clock::time_point deadline) const {
    for (;;) {
      auto nl = buffer_.find('\n');
      if (nl != std::string::npos) {
        std::string line = buffer_.substr(0, nl);
        buffer_.erase(0, nl + 1);
        return line;
      }
      auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
      if (left.count() <= 0) throw ProtocolError("external system timed out");
      pollfd pfd{read_fd_, POLLIN, 0};
      int r = ::poll(&pfd, 1, static_cast<int>(left.count()));
      if (r < 0 && errno == EINTR) continue;
      if (r == 0) throw ProtocolError("external system timed out");
      char chunk[4096];
      ssize_t n = ::read(read_fd_, chunk, sizeof chunk);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) return std::nullopt;
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

  std::vector<std::string> argv_;
  VariableSet in_, out_;
  std::chrono::milliseconds timeout_;
  mutable std::mutex mu_;
  mutable pid_t pid_ = -1;
  mutable int write_fd_ = -1;
  mutable int read_fd_ = -1;
  mutable std::string buffer_;
};

}  // namespace

std::unique_ptr<SystemModel> external(std::vector<std::string> argv, VariableSet inputs, VariableSet outputs,
                                      std::chrono::milliseconds timeout) {
  return std::make_unique<ExternalModel>(std::move(argv), std::move(inputs), std::move(outputs), timeout);
}

}  // namespace stlcov
