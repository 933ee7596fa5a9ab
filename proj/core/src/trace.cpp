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

#include "introspect/audit/trace.hpp"

#include <array>
#include <cstdio>
#include <string>

#include "introspect/error.hpp"

namespace introspect {

namespace {

constexpr std::array<std::string_view, 10> kKindNames = {
    "observation", "prior", "posterior", "vfe", "precision_descend",
    "ascend", "policy_eval", "policy_posterior", "action", "process_truth",
};

[[noreturn]] void mismatch(const TraceEvent& e, const std::string& what) {
  throw DimensionMismatchError(std::string(to_string(e.kind)) + " event at step " + std::to_string(e.step) +
                               ", level " + std::to_string(e.level) + ": " + what);
}

void expect_len(const TraceEvent& e, const char* field, std::size_t got, std::size_t want) {
  if (got != want) {
    mismatch(e, std::string(field) + " has " + std::to_string(got) + " entries, header says " +
                    std::to_string(want));
  }
}

template <typename T>
const T& payload_as(const TraceEvent& e) {
  const T* p = std::get_if<T>(&e.payload);
  if (p == nullptr) mismatch(e, "payload type does not match event kind");
  return *p;
}

}  // namespace

std::string_view to_string(EventKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

std::optional<EventKind> event_kind_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == name) return static_cast<EventKind>(i);
  }
  return std::nullopt;
}

void validate_event(const TraceHeader& header, const TraceEvent& e) {
  if (e.level < 1 || e.level > header.levels.size()) {
    mismatch(e, "level outside [1, " + std::to_string(header.levels.size()) + "]");
  }
  const LevelInfo& info = header.levels[e.level - 1];
  const LevelInfo& overt = header.levels.front();
  const bool top = e.level == header.levels.size();

  switch (e.kind) {
    case EventKind::observation:
      expect_len(e, "probs", payload_as<DistributionPayload>(e).probs.size(), info.outcomes);
      break;
    case EventKind::prior:
    case EventKind::posterior:
      expect_len(e, "probs", payload_as<DistributionPayload>(e).probs.size(), info.states);
      break;
    case EventKind::ascend:
      if (e.level < 2) mismatch(e, "ascended data must target level 2 or above");
      expect_len(e, "probs", payload_as<DistributionPayload>(e).probs.size(), info.outcomes);
      break;
    case EventKind::vfe:
      payload_as<ScalarPayload>(e);
      break;
    case EventKind::precision_descend: {
      const auto& p = payload_as<PrecisionPayload>(e);
      expect_len(e, "attention", p.attention.size(), top ? 0 : header.levels[e.level].states);
      if (!(p.gamma > 0.0)) mismatch(e, "precision must be positive");
      break;
    }
    case EventKind::policy_eval: {
      const auto& p = payload_as<PolicyEvalPayload>(e);
      if (e.level != 1) mismatch(e, "planning happens at level 1 only");
      if (p.policy_index >= header.num_policies) mismatch(e, "policy index out of range");
      expect_len(e, "actions", p.actions.size(), header.horizon);
      expect_len(e, "risk", p.risk.size(), header.horizon);
      expect_len(e, "ambiguity", p.ambiguity.size(), header.horizon);
      for (std::size_t a : p.actions) {
        if (a >= overt.actions) mismatch(e, "action index out of range");
      }
      break;
    }
    case EventKind::policy_posterior: {
      const auto& p = payload_as<PolicyPosteriorPayload>(e);
      if (e.level != 1) mismatch(e, "planning happens at level 1 only");
      expect_len(e, "probs", p.probs.size(), header.num_policies);
      if (p.selected_policy >= header.num_policies) mismatch(e, "selected policy out of range");
      break;
    }
    case EventKind::action: {
      const auto& p = payload_as<ActionPayload>(e);
      if (e.level != 1) mismatch(e, "overt actions happen at level 1 only");
      expect_len(e, "marginals", p.marginals.size(), overt.actions);
      if (p.action >= overt.actions) mismatch(e, "action index out of range");
      if (p.policy_index >= header.num_policies) mismatch(e, "policy index out of range");
      break;
    }
    case EventKind::process_truth: {
      const auto& p = payload_as<TruthPayload>(e);
      if (header.process_states != 0 && p.state >= header.process_states) mismatch(e, "true state out of range");
      break;
    }
  }
}

const TraceEvent& AuditTrace::record(TraceEvent event) {
  if (sealed_) throw SequenceError("trace is sealed");
  if (!events_.empty() && event.step < events_.back().step) {
    throw SequenceError("event step " + std::to_string(event.step) + " precedes step " +
                        std::to_string(events_.back().step));
  }
  validate_event(header_, event);
  event.sequence_no = events_.size();
  events_.push_back(std::move(event));
  return events_.back();
}

std::vector<const TraceEvent*> AuditTrace::events_at(std::size_t step) const {
  std::vector<const TraceEvent*> out;
  for (const auto& e : events_) {
    if (e.step == step) out.push_back(&e);
  }
  return out;
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace introspect
