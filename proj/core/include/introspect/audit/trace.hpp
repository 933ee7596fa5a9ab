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

// Append-only audit trace: a header describing the agent and episode, and
// one event per belief update, precision value, policy evaluation and
// action taken.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "introspect/generative_model.hpp"

namespace introspect {

enum class EventKind {
  observation,
  prior,
  posterior,
  vfe,
  precision_descend,
  ascend,
  policy_eval,
  policy_posterior,
  action,
  process_truth,
};

std::string_view to_string(EventKind kind);
std::optional<EventKind> event_kind_from_string(std::string_view name);

/// observation, prior, posterior, ascend.
struct DistributionPayload {
  std::vector<double> probs;
  bool operator==(const DistributionPayload&) const = default;
};

/// vfe.
struct ScalarPayload {
  double value = 0.0;
  bool operator==(const ScalarPayload&) const = default;
};

/// precision_descend. `attention` is the controlling level's belief, empty
/// for the top level whose precision is fixed.
struct PrecisionPayload {
  std::vector<double> attention;
  double gamma = 1.0;
  bool operator==(const PrecisionPayload&) const = default;
};

struct PolicyEvalPayload {
  std::size_t policy_index = 0;
  std::vector<std::size_t> actions;
  double G = 0.0;
  double F = 0.0;
  std::vector<double> risk;
  std::vector<double> ambiguity;
  double risk_total = 0.0;
  double ambiguity_total = 0.0;
  bool operator==(const PolicyEvalPayload&) const = default;
};

struct PolicyPosteriorPayload {
  std::vector<double> probs;
  std::size_t selected_policy = 0;
  double confidence = 0.0;
  double entropy = 0.0;
  bool operator==(const PolicyPosteriorPayload&) const = default;
};

struct ActionPayload {
  std::size_t action = 0;
  std::size_t policy_index = 0;
  std::vector<double> marginals;
  bool operator==(const ActionPayload&) const = default;
};

/// Ground truth from the simulator. Real deployments never emit these.
struct TruthPayload {
  std::size_t state = 0;
  std::string phase;
  bool operator==(const TruthPayload&) const = default;
};

using Payload = std::variant<DistributionPayload, ScalarPayload, PrecisionPayload, PolicyEvalPayload,
                             PolicyPosteriorPayload, ActionPayload, TruthPayload>;

struct TraceEvent {
  std::size_t step = 0;
  /// 1-based; level 1 is the overt level.
  std::size_t level = 1;
  EventKind kind = EventKind::observation;
  Payload payload;
  /// Assigned by AuditTrace::record.
  std::size_t sequence_no = 0;

  bool operator==(const TraceEvent&) const = default;
};

struct LevelInfo {
  std::size_t states = 0;
  std::size_t outcomes = 0;
  std::size_t actions = 0;
  LevelLabels labels;
  bool operator==(const LevelInfo&) const = default;
};

struct TraceHeader {
  std::string format = "introspect-trace/1";
  std::string model_name;
  std::string spec_hash;
  std::uint64_t seed = 0;
  std::size_t steps = 0;
  std::size_t tick_ratio = 1;
  double top_gamma = 1.0;
  std::size_t horizon = 1;
  std::size_t num_policies = 1;
  std::vector<LevelInfo> levels;
  std::size_t process_states = 0;
  /// Canonical JSON of the model and process specs, enough to replay.
  std::string model_spec;
  std::string process_spec;

  bool operator==(const TraceHeader&) const = default;
};

class AuditTrace {
 public:
  AuditTrace() = default;
  explicit AuditTrace(TraceHeader header) : header_(std::move(header)) {}

  const TraceHeader& header() const { return header_; }
  TraceHeader& mutable_header() { return header_; }
  const std::vector<TraceEvent>& events() const { return events_; }
  std::size_t size() const { return events_.size(); }

  /// Appends with the next sequence number. Throws DimensionMismatchError if
  /// the payload disagrees with the header, SequenceError if the trace is
  /// sealed or the step goes backwards.
  const TraceEvent& record(TraceEvent event);

  void seal() { sealed_ = true; }
  bool sealed() const { return sealed_; }

  /// Events with the given step, in sequence order.
  std::vector<const TraceEvent*> events_at(std::size_t step) const;

  /// Highest step present, or 0 for an empty trace.
  std::size_t last_step() const { return events_.empty() ? 0 : events_.back().step; }

  bool operator==(const AuditTrace& other) const {
    return header_ == other.header_ && events_ == other.events_;
  }

 private:
  TraceHeader header_;
  std::vector<TraceEvent> events_;
  bool sealed_ = false;
};

/// Checks an event's payload type and dimensions against the header.
/// Throws DimensionMismatchError.
void validate_event(const TraceHeader& header, const TraceEvent& event);

/// 64-bit FNV-1a of `text`, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view text);

}  // namespace introspect
