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

#include "introspect/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "introspect/error.hpp"

namespace introspect {

namespace {

void check_dims(const LikelihoodMatrix& a, std::size_t states, std::size_t outcomes) {
  if (a.cols() != states) {
    throw DimensionMismatchError("likelihood has " + std::to_string(a.cols()) + " states, belief has " +
                                 std::to_string(states));
  }
  if (a.rows() != outcomes) {
    throw DimensionMismatchError("likelihood has " + std::to_string(a.rows()) + " outcomes, observation has " +
                                 std::to_string(outcomes));
  }
}

// sum_o obs(o) ln A[o, s] for every state s. Outcomes with zero weight are
// skipped so unobserved rows never enter the result.
std::vector<double> expected_log_likelihood(const LikelihoodMatrix& a, const Observation& obs) {
  std::vector<double> out(a.cols(), 0.0);
  for (std::size_t s = 0; s < a.cols(); ++s) {
    for (std::size_t o = 0; o < a.rows(); ++o) {
      const double w = obs.dist[o];
      if (w > 0.0) out[s] += w * safe_log(a(o, s));
    }
  }
  return out;
}

}  // namespace

Belief infer_states(const LikelihoodMatrix& a_eff, const Belief& prior, const Observation& obs) {
  check_dims(a_eff, prior.dist.size(), obs.dist.size());
  const std::size_t n = prior.dist.size();

  // States with zero prior, or zero likelihood for any outcome the
  // observation puts weight on, are impossible and get exactly zero. Only
  // when that rules out every state does the floored version take over.
  std::vector<double> logits(n, 0.0);
  std::vector<bool> possible(n, true);
  bool any = false;
  for (std::size_t s = 0; s < n; ++s) {
    possible[s] = prior.dist[s] > 0.0;
    for (std::size_t o = 0; o < a_eff.rows() && possible[s]; ++o) {
      const double w = obs.dist[o];
      if (w > 0.0) {
        possible[s] = a_eff(o, s) > 0.0;
        logits[s] += w * std::log(a_eff(o, s));
      }
    }
    if (possible[s]) logits[s] += std::log(prior.dist[s]);
    any = any || possible[s];
  }
  if (!any) {
    logits = expected_log_likelihood(a_eff, obs);
    for (std::size_t s = 0; s < n; ++s) logits[s] += safe_log(prior.dist[s]);
    return Belief{softmax(logits), prior.timestamp};
  }

  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < n; ++s) {
    if (possible[s]) top = std::max(top, logits[s]);
  }
  std::vector<double> post(n, 0.0);
  double total = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    if (possible[s]) total += post[s] = std::exp(logits[s] - top);
  }
  for (auto& x : post) x /= total;
  return Belief{Categorical(std::move(post)), prior.timestamp};
}

double variational_free_energy(const Belief& q, const Belief& prior, const LikelihoodMatrix& a_eff,
                               const Observation& obs) {
  if (q.dist.size() != prior.dist.size()) {
    throw DimensionMismatchError("posterior and prior differ in dimension");
  }
  check_dims(a_eff, prior.dist.size(), obs.dist.size());
  const std::vector<double> ll = expected_log_likelihood(a_eff, obs);
  double accuracy = 0.0;
  for (std::size_t s = 0; s < ll.size(); ++s) accuracy += q.dist[s] * ll[s];
  return kl_divergence(q.dist, prior.dist) - accuracy;
}

Belief predict_states(const TransitionModel& b, const Belief& belief, std::size_t action) {
  const StochasticMatrix& slice = b.at(action);
  if (slice.cols() != belief.dist.size()) {
    throw DimensionMismatchError("transition model has " + std::to_string(slice.cols()) +
                                 " states, belief has " + std::to_string(belief.dist.size()));
  }
  return Belief{Categorical(slice.apply(belief.dist.probs())), belief.timestamp + 1};
}

}  // namespace introspect
