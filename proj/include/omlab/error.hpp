// Copyright 2026 The omlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace omlab {

// Process exit codes double as C API status codes.
enum class Status : int {
  ok = 0,
  argument = 2,
  numerical = 3,
  strategy = 4,
  property = 5,
  internal = 6,
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual Status status() const noexcept { return Status::internal; }
};

class ArgumentError : public Error {
 public:
  using Error::Error;
  Status status() const noexcept override { return Status::argument; }
};

class DomainError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

class RangeError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

class PreconditionError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

class NonConformalError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class SubordinationError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class BudgetExceeded : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

class NumericalError : public Error {
 public:
  using Error::Error;
  Status status() const noexcept override { return Status::numerical; }
};

class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoSignChange : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Raised by the simulator when a strategy hands back matrices that break
// conformality of H or the subordination ledger.
class StrategyViolation : public Error {
 public:
  StrategyViolation(const std::string& what, std::uint64_t path, std::uint64_t step)
      : Error(what + " (path " + std::to_string(path) + ", step " + std::to_string(step) + ")"),
        path_(path),
        step_(step) {}
  Status status() const noexcept override { return Status::strategy; }
  std::uint64_t path() const noexcept { return path_; }
  std::uint64_t step() const noexcept { return step_; }

 private:
  std::uint64_t path_;
  std::uint64_t step_;
};

}  // namespace omlab
