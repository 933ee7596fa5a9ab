// Copyright 2026 The Introspect Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace introspect {

// Root of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroMassError : public Error {
 public:
  using Error::Error;
};

class NegativeEntryError : public Error {
 public:
  using Error::Error;
};

class NonFiniteInputError : public Error {
 public:
  using Error::Error;
};

// A vector or matrix column that is not a probability distribution.
class InvalidDistributionError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

class UnknownActionError : public Error {
 public:
  using Error::Error;
};

class EmptyPolicySetError : public Error {
 public:
  using Error::Error;
};

class UninitializedAgentError : public Error {
 public:
  using Error::Error;
};

class SequenceError : public Error {
 public:
  using Error::Error;
};

class StepNotFoundError : public Error {
 public:
  using Error::Error;
};

class NoPlanningAtStepError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text. `offset` is the byte position where parsing failed,
/// or std::nullopt when the failure is structural (then `path` names the
/// JSON pointer of the offending value).
class ParseError : public Error {
 public:
  ParseError(std::optional<std::size_t> offset, std::string path, std::string reason);

  std::optional<std::size_t> offset() const { return offset_; }
  const std::string& path() const { return path_; }
  const std::string& reason() const { return reason_; }

 private:
  std::optional<std::size_t> offset_;
  std::string path_;
  std::string reason_;
};

/// Where in a model spec a validation rule was violated. Levels are
/// 1-based (level 1 is the overt, lowest level); `index` is free text such
/// as "column 2" or "action 1, column 0" using 0-based array positions.
struct Location {
  std::optional<std::size_t> level;
  std::string field;
  std::string index;

  std::string str() const;
};

class ValidationError : public Error {
 public:
  ValidationError(Location where, std::string problem);

  const Location& where() const { return where_; }
  const std::string& problem() const { return problem_; }

 private:
  Location where_;
  std::string problem_;
};

/// Wraps a failure raised while running an episode with the step it hit.
class EpisodeError : public Error {
 public:
  EpisodeError(std::size_t step, const std::string& what);

  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

}  // namespace introspect
