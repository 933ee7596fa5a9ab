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

// Single-level perceptual inference: closed-form posterior over latent
// states, the variational free energy that scores a belief, and one-step
// state prediction through the transition model.

#include <cstddef>

#include "introspect/categorical.hpp"

namespace introspect {

/// o: a distribution over outcomes. One-hot for sensory data; soft when it
/// is a posterior ascended from the level below.
struct Observation {
  Categorical dist;

  bool operator==(const Observation&) const = default;
};

/// s: a distribution over latent states, stamped with the step it refers to.
struct Belief {
  Categorical dist;
  std::size_t timestamp = 0;

  bool operator==(const Belief&) const = default;
};

/// softmax(ln prior + ln(A_eff)^T obs). For one-hot obs this is exact Bayes.
/// States the prior or the observed rows rule out get exactly zero; only an
/// observation impossible under every state falls back to floored logs.
/// A_eff must already be precision weighted.
Belief infer_states(const LikelihoodMatrix& a_eff, const Belief& prior, const Observation& obs);

/// F = KL(q || prior) - E_q[sum_o obs(o) ln A_eff[o, s]]. Upper-bounds
/// -ln p(obs); tight when q is the exact posterior.
double variational_free_energy(const Belief& q, const Belief& prior, const LikelihoodMatrix& a_eff,
                               const Observation& obs);

/// B[action] * belief, with the timestamp advanced by one.
Belief predict_states(const TransitionModel& b, const Belief& belief, std::size_t action);

}  // namespace introspect
