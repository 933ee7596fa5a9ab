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

#include "introspect/harness/process.hpp"

#include "introspect/error.hpp"
#include "spec_reader.hpp"

namespace introspect {

using detail::Json;

namespace {

Location process_field(const char* field) { return Location{std::nullopt, std::string("process.") + field, ""}; }

TransitionModel build_transitions(const std::vector<std::vector<std::vector<double>>>& slices) {
  std::vector<StochasticMatrix> out;
  for (const auto& s : slices) out.push_back(StochasticMatrix::from_rows(s));
  return TransitionModel(std::move(out));
}

}  // namespace

ProcessSpec parse_process_spec(std::string_view text) {
  const Json doc = detail::parse_json(text);
  detail::require_object(doc, Location{std::nullopt, "process", ""});
  detail::reject_unknown(doc, {"states", "transitions", "emission", "initial_state", "initial_distribution", "schedule"},
                         Location{std::nullopt, "process", ""});

  ProcessSpec spec;
  const Json* emission = detail::find(doc, "emission");
  if (emission == nullptr) detail::invalid(process_field("emission"), "missing required field");
  spec.emission = detail::read_stochastic(*emission, process_field("emission"), 0, 0, "", "");
  const std::size_t n_states = spec.emission.front().size();

  const Json* transitions = detail::find(doc, "transitions");
  if (transitions == nullptr) detail::invalid(process_field("transitions"), "missing required field");
  if (!transitions->is_array() || transitions->empty()) {
    detail::invalid(process_field("transitions"), "expected a non-empty array of per-action matrices");
  }
  for (std::size_t a = 0; a < transitions->size(); ++a) {
    Location where = process_field("transitions");
    where.index = "action " + std::to_string(a);
    spec.transitions.push_back(detail::read_stochastic((*transitions)[a], where, n_states, n_states,
                                                       "emission states", "emission states"));
  }

  spec.state_labels = detail::read_labels(detail::find(doc, "states"), process_field("states"), n_states, 's');

  if (const Json* init = detail::find(doc, "initial_state")) {
    const std::size_t s = detail::read_count(*init, process_field("initial_state"), 0);
    if (s >= n_states) detail::invalid(process_field("initial_state"), "state " + std::to_string(s) + " out of range");
    spec.initial_state = s;
  }
  if (const Json* dist = detail::find(doc, "initial_distribution")) {
    spec.initial_distribution =
        detail::read_distribution(*dist, process_field("initial_distribution"), n_states, "one per state");
  }
  if (const Json* schedule = detail::find(doc, "schedule")) {
    if (!schedule->is_array()) detail::invalid(process_field("schedule"), "expected an array of phases");
    for (std::size_t i = 0; i < schedule->size(); ++i) {
      Location where = process_field("schedule");
      where.index = "phase " + std::to_string(i);
      const Json& phase = detail::require_object((*schedule)[i], where);
      detail::reject_unknown(phase, {"label", "state", "steps"}, where);
      PhaseSegment seg;
      const Json* label = detail::find(phase, "label");
      if (label == nullptr || !label->is_string()) detail::invalid(where, "needs a string \"label\"");
      seg.label = label->get<std::string>();
      const Json* state = detail::find(phase, "state");
      if (state == nullptr) detail::invalid(where, "needs a \"state\"");
      seg.state = detail::read_count(*state, where, 0);
      if (seg.state >= n_states) detail::invalid(where, "state " + std::to_string(seg.state) + " out of range");
      const Json* steps = detail::find(phase, "steps");
      if (steps == nullptr) detail::invalid(where, "needs \"steps\"");
      seg.steps = detail::read_count(*steps, where, 1);
      spec.schedule.push_back(std::move(seg));
    }
  }
  return spec;
}

std::string dump_process_spec(const ProcessSpec& spec) {
  Json doc{{"states", spec.state_labels}, {"transitions", spec.transitions}, {"emission", spec.emission}};
  if (spec.initial_state) doc["initial_state"] = *spec.initial_state;
  if (spec.initial_distribution) doc["initial_distribution"] = *spec.initial_distribution;
  if (!spec.schedule.empty()) {
    Json phases = Json::array();
    for (const auto& seg : spec.schedule) {
      phases.push_back(Json{{"label", seg.label}, {"state", seg.state}, {"steps", seg.steps}});
    }
    doc["schedule"] = std::move(phases);
  }
  return doc.dump();
}

GenerativeProcess::GenerativeProcess(TransitionModel transitions, StochasticMatrix emission, Categorical initial,
                                     std::optional<std::size_t> initial_state, std::vector<PhaseSegment> schedule,
                                     std::uint64_t seed)
    : transitions_(std::move(transitions)),
      emission_(std::move(emission)),
      initial_(std::move(initial)),
      initial_state_(initial_state),
      schedule_(std::move(schedule)) {
  if (transitions_.num_states() != emission_.cols()) {
    throw DimensionMismatchError("process transitions and emission disagree on the state count");
  }
  if (initial_.size() != emission_.cols()) throw DimensionMismatchError("initial distribution has the wrong size");
  if (initial_state_ && *initial_state_ >= emission_.cols()) throw DimensionMismatchError("initial state out of range");
  for (const auto& seg : schedule_) {
    if (seg.state >= emission_.cols() || seg.steps == 0) throw DimensionMismatchError("invalid schedule segment");
  }
  reset(seed);
}

GenerativeProcess GenerativeProcess::from_spec(const ProcessSpec& spec, std::uint64_t seed) {
  const std::size_t n = spec.emission.front().size();
  Categorical initial = spec.initial_distribution ? Categorical(*spec.initial_distribution) : Categorical::uniform(n);
  return GenerativeProcess(build_transitions(spec.transitions), StochasticMatrix::from_rows(spec.emission),
                           std::move(initial), spec.initial_state, spec.schedule, seed);
}

void GenerativeProcess::reset(std::uint64_t seed) {
  rng_ = Rng(seed);
  clock_ = 0;
  if (!schedule_.empty()) {
    state_ = schedule_.front().state;
  } else if (initial_state_) {
    state_ = *initial_state_;
  } else {
    state_ = rng_.sample(initial_.probs());
  }
}

const PhaseSegment& GenerativeProcess::segment_at(std::size_t k) const {
  std::size_t cycle = 0;
  for (const auto& seg : schedule_) cycle += seg.steps;
  k %= cycle;
  for (const auto& seg : schedule_) {
    if (k < seg.steps) return seg;
    k -= seg.steps;
  }
  return schedule_.back();
}

const std::string& GenerativeProcess::phase() const {
  static const std::string kNone;
  return schedule_.empty() ? kNone : segment_at(clock_).label;
}

Observation GenerativeProcess::emit() {
  const std::size_t o = rng_.sample(emission_.column(state_).probs());
  return Observation{Categorical::one_hot(emission_.rows(), o)};
}

void GenerativeProcess::advance(std::size_t action) {
  const StochasticMatrix& slice = transitions_.at(action);
  ++clock_;
  if (!schedule_.empty()) {
    state_ = segment_at(clock_).state;
    return;
  }
  state_ = rng_.sample(slice.column(state_).probs());
}

Observation GenerativeProcess::simulate(std::size_t action) {
  advance(action);
  return emit();
}

}  // namespace introspect
