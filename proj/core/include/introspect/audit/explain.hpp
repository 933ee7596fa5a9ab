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
#include <string>
#include <vector>

#include "introspect/audit/trace.hpp"

namespace introspect {

struct PolicySummary {
  std::size_t policy_index = 0;
  std::vector<std::size_t> actions;
  double G = 0.0;
  double risk = 0.0;
  double ambiguity = 0.0;
  double posterior = 0.0;

  bool operator==(const PolicySummary&) const = default;
};

/// Precision in force at one level: the belief of the level above (empty at
/// the top) and the resulting likelihood precision.
struct PrecisionState {
  std::size_t level = 1;
  std::vector<double> attention;
  double gamma = 1.0;

  bool operator==(const PrecisionState&) const = default;
};

/// Why the agent did what it did at one step. Every number is copied from
/// a trace event; nothing is recomputed.
struct Explanation {
  std::size_t step = 0;
  std::size_t chosen_action = 0;
  std::string chosen_action_label;
  std::vector<double> action_marginals;
  /// All evaluated policies, ascending by G (policy index breaks ties).
  std::vector<PolicySummary> top_policies;
  std::size_t selected_policy = 0;
  double confidence = 0.0;
  double posterior_entropy = 0.0;
  std::vector<PrecisionState> precision;

  bool operator==(const Explanation&) const = default;
};

/// Throws StepNotFoundError when the step has no events and
/// NoPlanningAtStepError when it has no policy posterior or action.
Explanation explain_step(const AuditTrace& trace, std::size_t step);

}  // namespace introspect
