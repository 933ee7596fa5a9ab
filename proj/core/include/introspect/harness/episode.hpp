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

// Agent-environment loop: process.emit -> step_agent -> process.advance,
// recorded into an audit trace, plus replay of a trace from its header.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "introspect/audit/trace.hpp"
#include "introspect/harness/model_spec.hpp"
#include "introspect/harness/process.hpp"
#include "introspect/hierarchy.hpp"

namespace introspect {

/// Where the agent and process came from; copied into the trace header so
/// the episode can be replayed.
struct EpisodeProvenance {
  std::string model_name;
  std::string model_spec;    // canonical JSON, may be empty
  std::string process_spec;  // canonical JSON, may be empty
};

TraceHeader make_header(const HierarchicalAgent& agent, const GenerativeProcess& process, std::uint64_t seed,
                        std::size_t steps, const EpisodeProvenance& provenance = {});

/// Resets the agent and reseeds the process, then runs `steps` cycles. Each
/// step records a process_truth event followed by the agent's events. The
/// returned trace is sealed. Errors inside a step are rethrown as
/// EpisodeError carrying the step index.
AuditTrace run_episode(HierarchicalAgent& agent, GenerativeProcess& process, std::size_t steps, std::uint64_t seed,
                       const EpisodeProvenance& provenance = {});

/// Builds agent and process from specs and runs them with full provenance.
AuditTrace run_scenario(const ModelSpec& model, const ProcessSpec& process, std::size_t steps, std::uint64_t seed);

/// As above, with the process implied by the model itself.
AuditTrace run_scenario(const ModelSpec& model, std::size_t steps, std::uint64_t seed);

/// Re-runs the episode described by a trace header. Throws Error when the
/// header carries no embedded specs.
AuditTrace replay(const TraceHeader& header);

/// Sequence number of the first event that differs (or where one trace
/// ends early), std::nullopt when the event streams are identical.
std::optional<std::size_t> first_divergence(const AuditTrace& a, const AuditTrace& b);

}  // namespace introspect
