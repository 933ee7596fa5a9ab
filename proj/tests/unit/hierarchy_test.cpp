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

#include <doctest.h>

#include <algorithm>
#include <vector>

#include "approx.hpp"
#include "fuzz.hpp"
#include "introspect/error.hpp"
#include "introspect/hierarchy.hpp"

using namespace introspect;
using introspect::testing::Fuzz;
using introspect::testing::max_abs_diff;
using introspect::testing::near;

namespace {

GenerativeModel lower(std::size_t actions = 2) {
  std::vector<StochasticMatrix> b;
  for (std::size_t a = 0; a < actions; ++a) b.push_back(StochasticMatrix::from_rows({{0.8, 0.3}, {0.2, 0.7}}));
  return GenerativeModel(StochasticMatrix::from_rows({{0.9, 0.1}, {0.1, 0.9}}), TransitionModel(std::move(b)),
                         PreferenceVector(Categorical({0.8, 0.2})), Categorical::uniform(2));
}

GenerativeModel upper(Categorical d, std::size_t outcomes = 2) {
  auto a = outcomes == 2 ? StochasticMatrix::from_rows({{0.8, 0.2}, {0.2, 0.8}})
                         : StochasticMatrix::from_rows({{0.6, 0.1}, {0.3, 0.2}, {0.1, 0.7}});
  return GenerativeModel(std::move(a), TransitionModel({StochasticMatrix::from_rows({{0.9, 0.1}, {0.1, 0.9}})}),
                         PreferenceVector(Categorical::uniform(outcomes)), std::move(d));
}

HierarchicalAgent two_level(Categorical d2, AgentConfig config = {}) {
  return HierarchicalAgent({lower(), upper(std::move(d2))}, {PrecisionMap({2.0, 0.25})}, config);
}

HierarchicalAgent three_level(AgentConfig config) {
  return HierarchicalAgent({lower(), upper(Categorical::uniform(2)), upper(Categorical::uniform(2))},
                           {PrecisionMap({2.0, 0.25}), PrecisionMap({1.5, 0.5})}, config);
}

std::size_t count(const StepResult& r, std::size_t level) {
  return std::count_if(r.events.begin(), r.events.end(), [&](const TraceEvent& e) { return e.level == level; });
}

const Observation kSeeCue{Categorical::one_hot(2, 0)};

}  // namespace

TEST_CASE("ascend passes the posterior through") {
  for (const auto& p : {Categorical({1, 0}), Categorical({0.7, 0.3}), Categorical::uniform(4)}) {
    CHECK(ascend(Belief{p, 3}).dist == p);
  }
}

TEST_CASE("descend examples") {
  const PrecisionMap map({2.0, 0.5});
  CHECK(descend(Belief{Categorical::one_hot(2, 1), 0}, map).value() == 0.5);
  CHECK(near(descend(Belief{Categorical::uniform(2), 0}, map).value(), 1.25, 1e-15));
  CHECK(near(descend(Belief{Categorical({0.8, 0.2}), 0}, map).value(), 1.7, 1e-15));
  CHECK_THROWS_AS(descend(Belief{Categorical::uniform(3), 0}, map), DimensionMismatchError);
  CHECK_THROWS_AS(PrecisionMap({}), InvalidDistributionError);
  CHECK_THROWS_AS(PrecisionMap({1.0, 0.0}), NonFiniteInputError);
}

TEST_CASE("descend stays inside the map's range") {
  Fuzz fz(41);
  for (int i = 0; i < 2000; ++i) {
    const auto n = fz.index(1, 6);
    std::vector<double> values(n);
    for (auto& v : values) v = fz.uniform(0.01, 10);
    const PrecisionMap map(values);
    const auto att = fz.categorical(n, 0.3);
    const double g = descend(Belief{att, 0}, map).value();
    CHECK(g >= map.min());
    CHECK(g <= map.max());
  }
}

TEST_CASE("agent construction checks the level chain") {
  CHECK_THROWS_AS(HierarchicalAgent({lower(), upper(Categorical::uniform(2), 3)}, {PrecisionMap({2.0, 0.25})}),
                  DimensionMismatchError);
  CHECK_THROWS_AS(HierarchicalAgent({lower(), upper(Categorical::uniform(2))}, {}), DimensionMismatchError);
  CHECK_THROWS_AS(HierarchicalAgent({lower(), upper(Categorical::uniform(2))}, {PrecisionMap({2.0, 1.0, 0.25})}),
                  DimensionMismatchError);
  AgentConfig one_level;
  one_level.max_levels = 1;
  CHECK_THROWS_AS(two_level(Categorical::uniform(2), one_level), DimensionMismatchError);
  AgentConfig frozen;
  frozen.tick_ratio = 0;
  CHECK_THROWS_AS(two_level(Categorical::uniform(2), frozen), DimensionMismatchError);
  CHECK_THROWS_AS(HierarchicalAgent({lower()}, {}, {}, {LevelLabels::defaults(3, 2, 2)}), DimensionMismatchError);

  HierarchicalAgent empty;
  CHECK_THROWS_AS(step_agent(empty, kSeeCue), UninitializedAgentError);
  auto agent = two_level(Categorical::uniform(2));
  CHECK_THROWS_AS(step_agent(agent, Observation{Categorical::uniform(3)}), DimensionMismatchError);
}

TEST_CASE("single-level agent equals the composed pipeline") {
  Fuzz fz(42);
  for (int episode = 0; episode < 30; ++episode) {
    const auto model = fz.model(fz.index(1, 5), fz.index(1, 5), fz.index(1, 3), fz.index(1, 2), 0.2);
    AgentConfig config;
    config.top_gamma = fz.uniform(0.3, 3.0);
    HierarchicalAgent agent({model}, {}, config);
    const auto policies = enumerate_policies(model.num_actions(), model.horizon());
    Belief prior{model.d(), 0};
    const auto a_eff = precision_weight(model.a(), Precision(config.top_gamma));
    for (int t = 0; t < 6; ++t) {
      const Observation obs{Categorical::one_hot(model.num_outcomes(), fz.index(0, model.num_outcomes() - 1))};
      const auto result = step_agent(agent, obs);

      const auto post = infer_states(a_eff, prior, obs);
      std::vector<double> g, f(policies.size(), 0.0);
      for (const auto& pi : policies) g.push_back(expected_free_energy(model, a_eff, post, pi).G);
      const auto q = policy_posterior(model.e(), f, g, model.gamma_g());
      const auto choice = select_action(q, policies, model.num_actions());

      CHECK(result.action == choice.action);
      CHECK(max_abs_diff(result.overt_posterior.dist.probs(), post.dist.probs()) <= 1e-12);
      prior = predict_states(model.b(), post, choice.action);
      CHECK(max_abs_diff(agent.beliefs().front().dist.probs(), prior.dist.probs()) <= 1e-12);
    }
  }
}

TEST_CASE("identity likelihood picks the policy posterior's best action") {
  const GenerativeModel m(StochasticMatrix::identity(3),
                          TransitionModel({StochasticMatrix::identity(3),
                                           StochasticMatrix::from_rows({{0, 0, 0}, {0, 0, 0}, {1, 1, 1}})}),
                          PreferenceVector(Categorical({0.1, 0.1, 0.8})), Categorical::uniform(3));
  HierarchicalAgent agent({m}, {});
  const auto r = step_agent(agent, Observation{Categorical::one_hot(3, 0)});
  CHECK(r.action == 1);
  const auto& post = std::get<PolicyPosteriorPayload>(
      std::find_if(r.events.begin(), r.events.end(),
                   [](const TraceEvent& e) { return e.kind == EventKind::policy_posterior; })
          ->payload);
  CHECK(post.selected_policy == 1);
  CHECK(post.probs[1] > post.probs[0]);
}

TEST_CASE("lapsed attention flattens the level-1 posterior") {
  auto agent = two_level(Categorical::one_hot(2, 1));
  const auto r = step_agent(agent, kSeeCue);
  REQUIRE(r.covert_actions.size() == 1);
  CHECK(r.covert_actions[0].effective_gamma.value() == 0.25);
  CHECK(r.covert_actions[0].level == 1);

  const auto focused = infer_states(precision_weight(lower().a(), Precision(2.0)), Belief{lower().d(), 0}, kSeeCue);
  CHECK(entropy(r.overt_posterior.dist) >= entropy(focused.dist));
  const auto lapsed = infer_states(precision_weight(lower().a(), Precision(0.25)), Belief{lower().d(), 0}, kSeeCue);
  CHECK(r.overt_posterior.dist == lapsed.dist);
}

TEST_CASE("more precision never raises level-1 posterior entropy") {
  Fuzz fz(43);
  for (int i = 0; i < 100; ++i) {
    const auto obs = Observation{Categorical::one_hot(2, fz.index(0, 1))};
    double last_gamma = 0.0, last_h = 1e9;
    for (double p = 0.0; p <= 1.0; p += 0.05) {
      auto agent = two_level(Categorical({p, 1.0 - p}));
      const auto r = step_agent(agent, obs);
      const double g = r.covert_actions.at(0).effective_gamma.value();
      const double h = entropy(r.overt_posterior.dist);
      CHECK(g >= last_gamma - 1e-15);
      CHECK(h <= last_h + 1e-12);
      last_gamma = g;
      last_h = h;
    }
  }
}

TEST_CASE("event count per step follows the schedule") {
  // 1 observation + per due level (precision, prior, posterior, vfe)
  // + one ascent per due pair + one eval per policy + posterior + action.
  auto expected = [](std::size_t due, std::size_t policies) { return 5 * due + policies + 2; };
  for (std::size_t k : {1u, 2u, 3u}) {
    AgentConfig config;
    config.tick_ratio = k;
    auto agent = three_level(config);
    for (std::size_t t = 1; t <= 12; ++t) {
      const auto r = step_agent(agent, kSeeCue);
      const std::size_t due = 1 + (t % k == 0) + (t % (k * k) == 0);
      CHECK(r.events.size() == expected(due, agent.policies().size()));
      // The top level has nothing above it to weight its likelihood.
      CHECK(r.covert_actions.size() == std::min<std::size_t>(due, 2));
    }
  }
}

TEST_CASE("tick ratio two updates level 2 on even steps only") {
  AgentConfig config;
  config.tick_ratio = 2;
  auto agent = two_level(Categorical({0.6, 0.4}), config);
  for (std::size_t t = 1; t <= 6; ++t) {
    const auto before = agent.beliefs()[1];
    const auto r = step_agent(agent, kSeeCue);
    if (t % 2 == 1) {
      CHECK(count(r, 2) == 0);
      CHECK(agent.beliefs()[1] == before);
      // Level 1 still takes its precision from level 2's standing belief.
      CHECK(r.covert_actions.size() == 1);
    } else {
      CHECK(count(r, 2) == 5);  // precision, ascend, prior, posterior, vfe
      CHECK(!(agent.beliefs()[1] == before));
    }
  }
}

TEST_CASE("reset restores every level's prior") {
  auto agent = two_level(Categorical({0.6, 0.4}));
  const auto initial = agent.beliefs();
  for (int t = 0; t < 4; ++t) step_agent(agent, kSeeCue);
  CHECK(agent.step_count() == 4);
  agent.reset();
  CHECK(agent.step_count() == 0);
  CHECK(agent.beliefs() == initial);
}
