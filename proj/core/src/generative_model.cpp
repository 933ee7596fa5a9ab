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

#include "introspect/generative_model.hpp"

#include "introspect/error.hpp"

namespace introspect {

LevelLabels LevelLabels::defaults(std::size_t states, std::size_t outcomes, std::size_t actions) {
  LevelLabels out;
  for (std::size_t i = 0; i < states; ++i) out.states.push_back("s" + std::to_string(i));
  for (std::size_t i = 0; i < outcomes; ++i) out.outcomes.push_back("o" + std::to_string(i));
  for (std::size_t i = 0; i < actions; ++i) out.actions.push_back("a" + std::to_string(i));
  return out;
}

std::size_t policy_count(std::size_t num_actions, std::size_t horizon, std::size_t limit) {
  std::size_t n = 1;
  for (std::size_t t = 0; t < horizon; ++t) {
    n *= num_actions;
    if (n > limit) throw DimensionMismatchError("policy space exceeds " + std::to_string(limit) + " policies");
  }
  return n;
}

GenerativeModel::GenerativeModel(LikelihoodMatrix a, TransitionModel b, PreferenceVector c, Categorical d,
                                 std::optional<Categorical> e, Precision gamma_g, std::size_t horizon,
                                 std::size_t horizon_cap)
    : a_(std::move(a)),
      b_(std::move(b)),
      c_(std::move(c)),
      d_(std::move(d)),
      e_(Categorical::uniform(1)),
      gamma_g_(gamma_g),
      horizon_(horizon) {
  if (horizon_ < 1 || horizon_ > horizon_cap) {
    throw DimensionMismatchError("horizon " + std::to_string(horizon_) + " outside [1, " +
                                 std::to_string(horizon_cap) + "]");
  }
  if (b_.num_states() != a_.cols()) throw DimensionMismatchError("B state count differs from A");
  if (d_.size() != a_.cols()) throw DimensionMismatchError("D dimension differs from A state count");
  if (c_.size() != a_.rows()) throw DimensionMismatchError("C dimension differs from A outcome count");
  const std::size_t n_policies = policy_count(b_.num_actions(), horizon_);
  if (e) {
    if (e->size() != n_policies) {
      throw DimensionMismatchError("E has " + std::to_string(e->size()) + " entries, expected " +
                                   std::to_string(n_policies) + " policies");
    }
    e_ = std::move(*e);
  } else {
    e_ = Categorical::uniform(n_policies);
  }
}

}  // namespace introspect
