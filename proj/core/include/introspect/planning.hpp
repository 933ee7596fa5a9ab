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

// Policy evaluation and action selection: expected free energy split into
// risk and ambiguity, the policy posterior, and the overt action choice.

#include <cstddef>
#include <span>
#include <vector>

#include "introspect/categorical.hpp"
#include "introspect/generative_model.hpp"
#include "introspect/inference.hpp"

namespace introspect {

/// pi: a fixed-length sequence of action indices.
class Policy {
 public:
  /// Throws DimensionMismatchError unless 1 <= length <= horizon_cap.
  explicit Policy(std::vector<std::size_t> actions, std::size_t horizon_cap = kDefaultHorizonCap);

  const std::vector<std::size_t>& actions() const { return actions_; }
  std::size_t size() const { return actions_.size(); }
  std::size_t first_action() const { return actions_.front(); }

  bool operator==(const Policy&) const = default;

 private:
  std::vector<std::size_t> actions_;
};

struct PolicyEvaluation {
  Policy policy;
  double G = 0.0;
  std::vector<double> risk_per_step;
  std::vector<double> ambiguity_per_step;
  double total_risk = 0.0;
  double total_ambiguity = 0.0;
  double F = 0.0;
  double posterior_prob = 0.0;
};

/// All num_actions^horizon sequences in lexicographic order (the first
/// action varies slowest).
std::vector<Policy> enumerate_policies(std::size_t num_actions, std::size_t horizon,
                                       std::size_t horizon_cap = kDefaultHorizonCap);

/// Q(o) = A_eff * s_pred.
Categorical expected_observations(const LikelihoodMatrix& a_eff, const Belief& s_pred);

/// Rolls `belief` through B along the policy. Per step:
///   risk      = KL(Q(o_t) || C)
///   ambiguity = sum_s Q(s_t) H(A_eff[:, s])
/// and G is the sum of both over the horizon. F is left at zero.
PolicyEvaluation expected_free_energy(const GenerativeModel& model, const LikelihoodMatrix& a_eff,
                                      const Belief& belief, const Policy& policy);

/// Same, with the model's unweighted likelihood.
PolicyEvaluation expected_free_energy(const GenerativeModel& model, const Belief& belief, const Policy& policy);

/// softmax(ln E - F - gamma_G * G).
Categorical policy_posterior(const Categorical& e, std::span<const double> f, std::span<const double> g,
                             Precision gamma_g);

struct ActionChoice {
  std::size_t action = 0;
  /// Highest-posterior policy among those starting with `action`.
  std::size_t policy = 0;
  /// P(first action = a), one entry per action.
  std::vector<double> marginals;
};

/// Marginalizes the policy posterior onto first actions and takes the
/// argmax, lowest index winning ties. `num_actions` of 0 sizes the marginal
/// vector from the largest first action present.
ActionChoice select_action(const Categorical& posterior, std::span<const Policy> policies,
                           std::size_t num_actions = 0);

}  // namespace introspect
