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

// Hierarchical agent. Each level's posterior ascends to the level above as
// soft data; each level's belief descends as the precision applied to the
// likelihood of the level below. Only level 1 plans and acts overtly.

#include <cstddef>
#include <optional>
#include <vector>

#include "introspect/audit/trace.hpp"
#include "introspect/categorical.hpp"
#include "introspect/generative_model.hpp"
#include "introspect/inference.hpp"
#include "introspect/planning.hpp"

namespace introspect {

/// Default cap on hierarchy depth.
inline constexpr std::size_t kDefaultMaxLevels = 3;

/// Precision the level below receives for each state of the level above.
class PrecisionMap {
 public:
  /// Throws NonFiniteInputError on non-positive values,
  /// InvalidDistributionError when empty.
  explicit PrecisionMap(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double min() const;
  double max() const;

  bool operator==(const PrecisionMap&) const = default;

 private:
  std::vector<double> values_;
};

struct AgentConfig {
  /// The level above steps once per `tick_ratio` steps of the level below.
  std::size_t tick_ratio = 1;
  /// Likelihood precision of the top level, which has nothing above it.
  double top_gamma = 1.0;
  std::size_t max_levels = kDefaultMaxLevels;
  std::size_t horizon_cap = kDefaultHorizonCap;

  bool operator==(const AgentConfig&) const = default;
};

/// A precision selection made by a higher level for the level below it.
struct CovertActionRecord {
  std::size_t level = 1;  // level whose likelihood was weighted
  Categorical attentional_posterior;
  Precision effective_gamma;
  std::size_t step = 0;
};

class HierarchicalAgent;

struct StepResult {
  std::size_t action = 0;
  std::vector<TraceEvent> events;
  std::vector<CovertActionRecord> covert_actions;
  Belief overt_posterior;
};

class HierarchicalAgent {
 public:
  /// An empty agent; step_agent on it throws UninitializedAgentError.
  HierarchicalAgent() = default;

  /// `couplings[i]` maps the states of level i+2 to the precision of level
  /// i+1 (1-based levels). Throws DimensionMismatchError when level n's state
  /// count differs from level n+1's outcome count, or any coupling is sized
  /// wrongly. Missing labels default to s0/o0/a0 names.
  HierarchicalAgent(std::vector<GenerativeModel> levels, std::vector<PrecisionMap> couplings,
                    AgentConfig config = {}, std::vector<LevelLabels> labels = {});

  bool initialized() const { return !levels_.empty(); }

  /// Beliefs back to each level's D; step counter to 0.
  void reset();

  /// Whether 0-based level `level` runs on (1-based) step `step`.
  bool due(std::size_t level, std::size_t step) const;

  const std::vector<GenerativeModel>& levels() const { return levels_; }
  const std::vector<PrecisionMap>& couplings() const { return couplings_; }
  const AgentConfig& config() const { return config_; }
  const std::vector<LevelLabels>& labels() const { return labels_; }
  const std::vector<Belief>& beliefs() const { return beliefs_; }
  const std::vector<Policy>& policies() const { return policies_; }
  std::size_t step_count() const { return step_; }

 private:
  friend StepResult step_agent(HierarchicalAgent& agent, const Observation& obs);

  std::vector<GenerativeModel> levels_;
  std::vector<PrecisionMap> couplings_;
  AgentConfig config_;
  std::vector<LevelLabels> labels_;
  std::vector<Policy> policies_;
  std::vector<Belief> beliefs_;
  std::size_t step_ = 0;
};

/// The posterior, verbatim, as soft data for the level above.
Observation ascend(const Belief& posterior);

/// Expected precision sum_j q(j) * map[j]. Throws DimensionMismatchError.
Precision descend(const Belief& attention, const PrecisionMap& map);

/// One perception-action cycle: top-down precision pass, bottom-up
/// inference over every level due a tick, planning at level 1, then belief
/// prediction. Every intermediate quantity is returned as a trace event.
StepResult step_agent(HierarchicalAgent& agent, const Observation& obs);

}  // namespace introspect
