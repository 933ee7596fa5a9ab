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

#include "introspect/hierarchy.hpp"

#include <algorithm>
#include <string>

#include "introspect/error.hpp"

namespace introspect {

PrecisionMap::PrecisionMap(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw InvalidDistributionError("precision map is empty");
  for (double v : values_) static_cast<void>(Precision{v});
}

double PrecisionMap::min() const { return *std::min_element(values_.begin(), values_.end()); }
double PrecisionMap::max() const { return *std::max_element(values_.begin(), values_.end()); }

HierarchicalAgent::HierarchicalAgent(std::vector<GenerativeModel> levels, std::vector<PrecisionMap> couplings,
                                     AgentConfig config, std::vector<LevelLabels> labels)
    : levels_(std::move(levels)), couplings_(std::move(couplings)), config_(config), labels_(std::move(labels)) {
  if (levels_.empty() || levels_.size() > config_.max_levels) {
    throw DimensionMismatchError("agent needs between 1 and " + std::to_string(config_.max_levels) + " levels");
  }
  if (config_.tick_ratio < 1) throw DimensionMismatchError("tick ratio must be at least 1");
  static_cast<void>(Precision{config_.top_gamma});
  if (couplings_.size() != levels_.size() - 1) {
    throw DimensionMismatchError("need one precision map per adjacent pair of levels");
  }
  for (std::size_t l = 0; l + 1 < levels_.size(); ++l) {
    if (levels_[l].num_states() != levels_[l + 1].num_outcomes()) {
      throw DimensionMismatchError("level " + std::to_string(l + 1) + " has " +
                                   std::to_string(levels_[l].num_states()) + " states but level " +
                                   std::to_string(l + 2) + " expects " +
                                   std::to_string(levels_[l + 1].num_outcomes()) + " outcomes");
    }
    if (couplings_[l].size() != levels_[l + 1].num_states()) {
      throw DimensionMismatchError("precision map for level " + std::to_string(l + 1) + " needs one value per level " +
                                   std::to_string(l + 2) + " state");
    }
  }
  if (labels_.empty()) {
    for (const auto& m : levels_) {
      labels_.push_back(LevelLabels::defaults(m.num_states(), m.num_outcomes(), m.num_actions()));
    }
  }
  if (labels_.size() != levels_.size()) throw DimensionMismatchError("need one label set per level");
  for (std::size_t l = 0; l < levels_.size(); ++l) {
    const auto& m = levels_[l];
    const auto& lab = labels_[l];
    if (lab.states.size() != m.num_states() || lab.outcomes.size() != m.num_outcomes() ||
        lab.actions.size() != m.num_actions()) {
      throw DimensionMismatchError("labels for level " + std::to_string(l + 1) + " do not match its dimensions");
    }
  }
  const auto& overt = levels_.front();
  policies_ = enumerate_policies(overt.num_actions(), overt.horizon(), config_.horizon_cap);
  reset();
}

void HierarchicalAgent::reset() {
  beliefs_.clear();
  for (const auto& m : levels_) beliefs_.push_back(Belief{m.d(), 0});
  step_ = 0;
}

bool HierarchicalAgent::due(std::size_t level, std::size_t step) const {
  std::size_t period = 1;
  for (std::size_t l = 0; l < level; ++l) period *= config_.tick_ratio;
  return step % period == 0;
}

Observation ascend(const Belief& posterior) { return Observation{posterior.dist}; }

Precision descend(const Belief& attention, const PrecisionMap& map) {
  if (attention.dist.size() != map.size()) {
    throw DimensionMismatchError("attentional belief has " + std::to_string(attention.dist.size()) +
                                 " states, precision map has " + std::to_string(map.size()));
  }
  double gamma = 0.0;
  for (std::size_t j = 0; j < map.size(); ++j) gamma += attention.dist[j] * map.values()[j];
  // Keep the convex combination inside [min, max] despite rounding.
  return Precision(std::clamp(gamma, map.min(), map.max()));
}

StepResult step_agent(HierarchicalAgent& agent, const Observation& obs) {
  if (!agent.initialized()) throw UninitializedAgentError("agent has no levels");
  const auto& levels = agent.levels_;
  const std::size_t n_levels = levels.size();
  if (agent.beliefs_.size() != n_levels) throw UninitializedAgentError("agent beliefs are not initialized");
  if (obs.dist.size() != levels.front().num_outcomes()) {
    throw DimensionMismatchError("observation has " + std::to_string(obs.dist.size()) + " outcomes, level 1 expects " +
                                 std::to_string(levels.front().num_outcomes()));
  }

  const std::size_t t = agent.step_ + 1;
  StepResult result{0, {}, {}, agent.beliefs_.front()};
  auto emit = [&](std::size_t level, EventKind kind, Payload payload) {
    result.events.push_back(TraceEvent{t, level, kind, std::move(payload), 0});
  };

  emit(1, EventKind::observation, DistributionPayload{obs.dist.values()});

  // Top-down: each level's precision comes from the current belief above it.
  std::vector<Precision> gammas(n_levels, Precision(agent.config_.top_gamma));
  for (std::size_t l = n_levels; l-- > 0;) {
    if (!agent.due(l, t)) continue;
    if (l + 1 == n_levels) {
      emit(l + 1, EventKind::precision_descend, PrecisionPayload{{}, gammas[l].value()});
      continue;
    }
    const Belief& above = agent.beliefs_[l + 1];
    gammas[l] = descend(above, agent.couplings_[l]);
    result.covert_actions.push_back(CovertActionRecord{l + 1, above.dist, gammas[l], t});
    emit(l + 1, EventKind::precision_descend, PrecisionPayload{above.dist.values(), gammas[l].value()});
  }

  // Bottom-up: infer, then pass the posterior up as data.
  std::vector<std::optional<Belief>> posteriors(n_levels);
  std::optional<LikelihoodMatrix> overt_likelihood;
  Observation data = obs;
  for (std::size_t l = 0; l < n_levels && agent.due(l, t); ++l) {
    const Belief& prior = agent.beliefs_[l];
    emit(l + 1, EventKind::prior, DistributionPayload{prior.dist.values()});
    LikelihoodMatrix a_eff = precision_weight(levels[l].a(), gammas[l]);
    Belief post = infer_states(a_eff, prior, data);
    emit(l + 1, EventKind::posterior, DistributionPayload{post.dist.values()});
    emit(l + 1, EventKind::vfe, ScalarPayload{variational_free_energy(post, prior, a_eff, data)});
    if (l + 1 < n_levels && agent.due(l + 1, t)) {
      data = ascend(post);
      emit(l + 2, EventKind::ascend, DistributionPayload{data.dist.values()});
    }
    if (l == 0) overt_likelihood = std::move(a_eff);
    posteriors[l] = std::move(post);
  }

  // Planning at level 1.
  const GenerativeModel& overt = levels.front();
  const Belief& current = *posteriors.front();
  const auto& policies = agent.policies_;
  std::vector<double> g(policies.size());
  std::vector<double> f(policies.size(), 0.0);
  std::vector<PolicyEvaluation> evals;
  evals.reserve(policies.size());
  for (std::size_t k = 0; k < policies.size(); ++k) {
    evals.push_back(expected_free_energy(overt, *overt_likelihood, current, policies[k]));
    g[k] = evals.back().G;
  }
  const Categorical q_pi = policy_posterior(overt.e(), f, g, overt.gamma_g());
  const ActionChoice choice = select_action(q_pi, policies, overt.num_actions());
  for (std::size_t k = 0; k < evals.size(); ++k) {
    const auto& ev = evals[k];
    emit(1, EventKind::policy_eval,
         PolicyEvalPayload{k, ev.policy.actions(), ev.G, f[k], ev.risk_per_step, ev.ambiguity_per_step,
                           ev.total_risk, ev.total_ambiguity});
  }
  emit(1, EventKind::policy_posterior,
       PolicyPosteriorPayload{q_pi.values(), choice.policy, q_pi[choice.policy], entropy(q_pi)});
  emit(1, EventKind::action, ActionPayload{choice.action, choice.policy, choice.marginals});

  // Commit: roll every updated level forward. Higher levels use action 0.
  std::vector<Belief> next = agent.beliefs_;
  for (std::size_t l = 0; l < n_levels; ++l) {
    if (!posteriors[l]) continue;
    next[l] = predict_states(levels[l].b(), *posteriors[l], l == 0 ? choice.action : 0);
  }
  agent.beliefs_ = std::move(next);
  agent.step_ = t;

  result.action = choice.action;
  result.overt_posterior = current;
  return result;
}

}  // namespace introspect
