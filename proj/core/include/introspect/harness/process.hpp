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

// Ground-truth generative process used to drive agents in simulation. It
// may differ from the agent's own model.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "introspect/categorical.hpp"
#include "introspect/harness/rng.hpp"
#include "introspect/inference.hpp"

namespace introspect {

/// A stretch of steps during which the true state is pinned.
struct PhaseSegment {
  std::string label;
  std::size_t state = 0;
  std::size_t steps = 1;

  bool operator==(const PhaseSegment&) const = default;
};

/// File-level description of a process (see parse_process_spec).
struct ProcessSpec {
  std::vector<std::string> state_labels;
  std::vector<std::vector<std::vector<double>>> transitions;  // [action][to][from]
  std::vector<std::vector<double>> emission;                  // [outcome][state]
  std::optional<std::size_t> initial_state;
  std::optional<std::vector<double>> initial_distribution;
  std::vector<PhaseSegment> schedule;

  bool operator==(const ProcessSpec&) const = default;
};

/// Throws ParseError on malformed JSON and ValidationError (field "process")
/// on rule violations.
ProcessSpec parse_process_spec(std::string_view text);

/// Canonical compact JSON (sorted keys).
std::string dump_process_spec(const ProcessSpec& spec);

class GenerativeProcess {
 public:
  /// The true state starts at `initial_state` when given, otherwise it is
  /// drawn from `initial`. A non-empty schedule pins the state instead,
  /// cycling through its segments; transitions are then ignored.
  GenerativeProcess(TransitionModel transitions, StochasticMatrix emission, Categorical initial,
                    std::optional<std::size_t> initial_state = std::nullopt, std::vector<PhaseSegment> schedule = {},
                    std::uint64_t seed = 0);

  static GenerativeProcess from_spec(const ProcessSpec& spec, std::uint64_t seed = 0);

  /// Reseeds and returns to the initial state.
  void reset(std::uint64_t seed);

  /// One-hot outcome sampled from the emission column of the true state.
  Observation emit();

  /// Samples the next true state from the action's transition column.
  /// Throws UnknownActionError.
  void advance(std::size_t action);

  /// advance(action) followed by emit().
  Observation simulate(std::size_t action);

  std::size_t state() const { return state_; }
  /// Label of the current schedule segment, empty without a schedule.
  const std::string& phase() const;

  std::size_t num_states() const { return emission_.cols(); }
  std::size_t num_outcomes() const { return emission_.rows(); }
  std::size_t num_actions() const { return transitions_.num_actions(); }

 private:
  const PhaseSegment& segment_at(std::size_t k) const;

  TransitionModel transitions_;
  StochasticMatrix emission_;
  Categorical initial_;
  std::optional<std::size_t> initial_state_;
  std::vector<PhaseSegment> schedule_;
  Rng rng_;
  std::size_t state_ = 0;
  std::size_t clock_ = 0;
};

}  // namespace introspect
