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

#include "introspect/planning.hpp"

#include <algorithm>
#include <string>

#include "introspect/error.hpp"

namespace introspect {

Policy::Policy(std::vector<std::size_t> actions, std::size_t horizon_cap) : actions_(std::move(actions)) {
  if (actions_.empty() || actions_.size() > horizon_cap) {
    throw DimensionMismatchError("policy length " + std::to_string(actions_.size()) + " outside [1, " +
                                 std::to_string(horizon_cap) + "]");
  }
}

std::vector<Policy> enumerate_policies(std::size_t num_actions, std::size_t horizon, std::size_t horizon_cap) {
  if (num_actions == 0) throw EmptyPolicySetError("no actions to enumerate");
  const std::size_t n = policy_count(num_actions, horizon);
  std::vector<Policy> out;
  out.reserve(n);
  std::vector<std::size_t> seq(horizon, 0);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t rest = k;
    for (std::size_t t = horizon; t-- > 0;) {
      seq[t] = rest % num_actions;
      rest /= num_actions;
    }
    out.emplace_back(seq, horizon_cap);
  }
  return out;
}

Categorical expected_observations(const LikelihoodMatrix& a_eff, const Belief& s_pred) {
  return Categorical(a_eff.apply(s_pred.dist.probs()));
}

PolicyEvaluation expected_free_energy(const GenerativeModel& model, const LikelihoodMatrix& a_eff,
                                      const Belief& belief, const Policy& policy) {
  if (belief.dist.size() != model.num_states()) {
    throw DimensionMismatchError("belief has " + std::to_string(belief.dist.size()) + " states, model has " +
                                 std::to_string(model.num_states()));
  }
  if (a_eff.cols() != model.num_states() || a_eff.rows() != model.num_outcomes()) {
    throw DimensionMismatchError("effective likelihood shape differs from the model");
  }
  std::vector<double> column_entropy(a_eff.cols());
  for (std::size_t s = 0; s < a_eff.cols(); ++s) column_entropy[s] = entropy(a_eff.column(s));

  PolicyEvaluation eval{policy, 0.0, {}, {}, 0.0, 0.0, 0.0, 0.0};
  eval.risk_per_step.reserve(policy.size());
  eval.ambiguity_per_step.reserve(policy.size());
  Belief s_pred = belief;
  for (std::size_t action : policy.actions()) {
    s_pred = predict_states(model.b(), s_pred, action);
    const Categorical q_o = expected_observations(a_eff, s_pred);
    eval.risk_per_step.push_back(kl_divergence(q_o, model.c().dist()));
    double ambiguity = 0.0;
    for (std::size_t s = 0; s < column_entropy.size(); ++s) ambiguity += s_pred.dist[s] * column_entropy[s];
    eval.ambiguity_per_step.push_back(ambiguity);
  }
  for (double r : eval.risk_per_step) eval.total_risk += r;
  for (double a : eval.ambiguity_per_step) eval.total_ambiguity += a;
  eval.G = eval.total_risk + eval.total_ambiguity;
  return eval;
}

PolicyEvaluation expected_free_energy(const GenerativeModel& model, const Belief& belief, const Policy& policy) {
  return expected_free_energy(model, model.a(), belief, policy);
}

Categorical policy_posterior(const Categorical& e, std::span<const double> f, std::span<const double> g,
                             Precision gamma_g) {
  if (f.size() != e.size() || g.size() != e.size()) {
    throw DimensionMismatchError("E, F and G must have one entry per policy");
  }
  std::vector<double> logits(e.size());
  for (std::size_t k = 0; k < e.size(); ++k) {
    logits[k] = safe_log(e[k]) - f[k] - gamma_g.value() * g[k];
  }
  return softmax(logits);
}

ActionChoice select_action(const Categorical& posterior, std::span<const Policy> policies, std::size_t num_actions) {
  if (policies.empty()) throw EmptyPolicySetError("no policies to choose from");
  if (posterior.size() != policies.size()) {
    throw DimensionMismatchError("policy posterior has " + std::to_string(posterior.size()) + " entries for " +
                                 std::to_string(policies.size()) + " policies");
  }
  std::size_t width = num_actions;
  for (const auto& p : policies) width = std::max(width, p.first_action() + 1);
  if (num_actions != 0 && width > num_actions) {
    throw UnknownActionError("policy starts with an action outside [0, " + std::to_string(num_actions) + ")");
  }

  ActionChoice choice;
  choice.marginals.assign(width, 0.0);
  for (std::size_t k = 0; k < policies.size(); ++k) choice.marginals[policies[k].first_action()] += posterior[k];
  choice.action = static_cast<std::size_t>(
      std::max_element(choice.marginals.begin(), choice.marginals.end()) - choice.marginals.begin());

  bool found = false;
  for (std::size_t k = 0; k < policies.size(); ++k) {
    if (policies[k].first_action() != choice.action) continue;
    if (!found || posterior[k] > posterior[choice.policy]) {
      choice.policy = k;
      found = true;
    }
  }
  return choice;
}

}  // namespace introspect
