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

#include "introspect/harness/episode.hpp"

#include <algorithm>

#include "introspect/error.hpp"

namespace introspect {

TraceHeader make_header(const HierarchicalAgent& agent, const GenerativeProcess& process, std::uint64_t seed,
                        std::size_t steps, const EpisodeProvenance& provenance) {
  if (!agent.initialized()) throw UninitializedAgentError("agent has no levels");
  TraceHeader h;
  h.model_name = provenance.model_name;
  h.model_spec = provenance.model_spec;
  h.process_spec = provenance.process_spec;
  h.spec_hash = fnv1a_hex(provenance.model_spec + "\n" + provenance.process_spec);
  h.seed = seed;
  h.steps = steps;
  h.tick_ratio = agent.config().tick_ratio;
  h.top_gamma = agent.config().top_gamma;
  h.horizon = agent.levels().front().horizon();
  h.num_policies = agent.policies().size();
  h.process_states = process.num_states();
  for (std::size_t l = 0; l < agent.levels().size(); ++l) {
    const auto& m = agent.levels()[l];
    h.levels.push_back(LevelInfo{m.num_states(), m.num_outcomes(), m.num_actions(), agent.labels()[l]});
  }
  return h;
}

AuditTrace run_episode(HierarchicalAgent& agent, GenerativeProcess& process, std::size_t steps, std::uint64_t seed,
                       const EpisodeProvenance& provenance) {
  if (steps < 1) throw DimensionMismatchError("an episode needs at least one step");
  AuditTrace trace(make_header(agent, process, seed, steps, provenance));
  const auto& overt = agent.levels().front();
  if (process.num_outcomes() != overt.num_outcomes()) {
    throw DimensionMismatchError("process emits " + std::to_string(process.num_outcomes()) +
                                 " outcomes, level 1 expects " + std::to_string(overt.num_outcomes()));
  }
  agent.reset();
  process.reset(seed);
  for (std::size_t t = 1; t <= steps; ++t) {
    try {
      const Observation obs = process.emit();
      trace.record(TraceEvent{t, 1, EventKind::process_truth, TruthPayload{process.state(), process.phase()}, 0});
      StepResult result = step_agent(agent, obs);
      for (auto& e : result.events) trace.record(std::move(e));
      process.advance(result.action);
    } catch (const EpisodeError&) {
      throw;
    } catch (const std::exception& e) {
      throw EpisodeError(t, e.what());
    }
  }
  trace.seal();
  return trace;
}

AuditTrace run_scenario(const ModelSpec& model, const ProcessSpec& process, std::size_t steps, std::uint64_t seed) {
  HierarchicalAgent agent = build_agent(model);
  GenerativeProcess world = GenerativeProcess::from_spec(process, seed);
  const EpisodeProvenance provenance{model.name, dump_model_spec(model), dump_process_spec(process)};
  return run_episode(agent, world, steps, seed, provenance);
}

AuditTrace run_scenario(const ModelSpec& model, std::size_t steps, std::uint64_t seed) {
  return run_scenario(model, process_from_model(model), steps, seed);
}

AuditTrace replay(const TraceHeader& header) {
  if (header.model_spec.empty() || header.process_spec.empty()) {
    throw Error("trace header carries no embedded specs to replay from");
  }
  const ModelSpec model = parse_model_spec(header.model_spec);
  const ProcessSpec process = parse_process_spec(header.process_spec);
  return run_scenario(model, process, header.steps, header.seed);
}

std::optional<std::size_t> first_divergence(const AuditTrace& a, const AuditTrace& b) {
  const auto& ea = a.events();
  const auto& eb = b.events();
  const std::size_t n = std::min(ea.size(), eb.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (!(ea[i] == eb[i])) return i;
  }
  if (ea.size() != eb.size()) return n;
  return std::nullopt;
}

}  // namespace introspect
