// Copyright 2026 The chkpt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace chkpt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A producer was driven out of order (e.g. asked for an action after it
/// terminated, or given feedback it cannot accept).
class ProtocolError : public Error {
 public:
  using Error::Error;
};

/// A configuration value lies outside the domain of the requested operation.
class InvalidConfig : public Error {
 public:
  using Error::Error;
};

/// Malformed schedule text. `line()` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// The brute-force search exceeded its node budget.
class SearchBudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Raised while executing a schedule against a model. Carries the index of
/// the failing action when known.
class ExecutionError : public Error {
 public:
  ExecutionError(const std::string& message, std::optional<std::size_t> action_index)
      : Error(action_index ? "action " + std::to_string(*action_index) + ": " + message
                           : message),
        action_index_(action_index) {}

  std::optional<std::size_t> action_index() const noexcept { return action_index_; }

 private:
  std::optional<std::size_t> action_index_;
};

/// The model state is not at the step a forward segment starts from.
class PositionError : public ExecutionError {
 public:
  using ExecutionError::ExecutionError;
};

/// An adjoint step ran without the non-linear dependency record it needs.
class MissingDependency : public ExecutionError {
 public:
  using ExecutionError::ExecutionError;
};

}  // namespace chkpt
