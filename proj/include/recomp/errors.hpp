/*
 * Copyright 2026 The recomp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace recomp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed specification text. Carries a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// A well-parsed specification that violates a structural rule
/// (undeclared identifier, overlapping variables, invalid map, ...).
class SpecError : public Error {
 public:
  using Error::Error;
};

/// Runtime failure while evaluating an expression.
class EvalError : public Error {
 public:
  using Error::Error;
};

/// Exploration produced more states than the configured bound.
class StateBoundExceeded : public Error {
 public:
  explicit StateBoundExceeded(std::size_t bound);
  std::size_t bound() const { return bound_; }

 private:
  std::size_t bound_;
};

enum class StopReason { kCancelled, kTimeout };

/// Cooperative cancellation was observed at a poll point.
class Stopped : public Error {
 public:
  explicit Stopped(StopReason reason);
  StopReason reason() const { return reason_; }

 private:
  StopReason reason_;
};

}  // namespace recomp
