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
#include <string>
#include <vector>

#include "introspect/categorical.hpp"

namespace introspect {

/// Longest policy the planner will enumerate unless configured otherwise.
inline constexpr std::size_t kDefaultHorizonCap = 4;

/// Human-readable names for one level's states, outcomes and actions.
struct LevelLabels {
  std::vector<std::string> states;
  std::vector<std::string> outcomes;
  std::vector<std::string> actions;

  bool operator==(const LevelLabels&) const = default;

  /// Labels "s0", "o0", "a0", ... for any dimension left unnamed.
  static LevelLabels defaults(std::size_t states, std::size_t outcomes, std::size_t actions);
};

/// One level's parameters: likelihood A, transitions B, preferences C,
/// initial-state prior D, policy prior E, policy precision and horizon.
class GenerativeModel {
 public:
  /// `e` defaults to uniform over the num_actions^horizon enumerated
  /// policies. Throws DimensionMismatchError on inconsistent shapes.
  GenerativeModel(LikelihoodMatrix a, TransitionModel b, PreferenceVector c, Categorical d,
                  std::optional<Categorical> e = std::nullopt, Precision gamma_g = Precision(1.0),
                  std::size_t horizon = 1, std::size_t horizon_cap = kDefaultHorizonCap);

  const LikelihoodMatrix& a() const { return a_; }
  const TransitionModel& b() const { return b_; }
  const PreferenceVector& c() const { return c_; }
  const Categorical& d() const { return d_; }
  const Categorical& e() const { return e_; }
  Precision gamma_g() const { return gamma_g_; }
  std::size_t horizon() const { return horizon_; }

  std::size_t num_states() const { return a_.cols(); }
  std::size_t num_outcomes() const { return a_.rows(); }
  std::size_t num_actions() const { return b_.num_actions(); }
  std::size_t num_policies() const { return e_.size(); }

  bool operator==(const GenerativeModel&) const = default;

 private:
  LikelihoodMatrix a_;
  TransitionModel b_;
  PreferenceVector c_;
  Categorical d_;
  Categorical e_;
  Precision gamma_g_;
  std::size_t horizon_;
};

/// num_actions^horizon, throwing DimensionMismatchError past `limit`.
std::size_t policy_count(std::size_t num_actions, std::size_t horizon, std::size_t limit = 1u << 20);

}  // namespace introspect
