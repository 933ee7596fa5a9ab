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

#include "introspect/audit/report.hpp"

#include <cstdio>
#include <sstream>
#include <vector>

#include "introspect/error.hpp"

namespace introspect {

namespace {

constexpr std::size_t kDecisionPolicies = 3;

std::string label_or_index(const std::vector<std::string>& labels, std::size_t i, char prefix) {
  return i < labels.size() ? labels[i] : std::string(1, prefix) + std::to_string(i);
}

std::string labeled(const std::vector<double>& probs, const std::vector<std::string>& labels, char prefix) {
  std::string out;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (i) out += ", ";
    out += label_or_index(labels, i, prefix) + " " + format_number(probs[i]);
  }
  return out;
}

std::string action_sequence(const std::vector<std::size_t>& actions, const std::vector<std::string>& labels) {
  std::string out = "[";
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (i) out += ", ";
    out += label_or_index(labels, actions[i], 'a');
  }
  return out + "]";
}

void write_header(std::ostringstream& out, const TraceHeader& h) {
  out << "introspect audit report\n";
  out << "model: " << (h.model_name.empty() ? "(unnamed)" : h.model_name) << "  spec " << h.spec_hash << "  seed "
      << h.seed << "  steps " << h.steps << "\n";
  out << "levels: " << h.levels.size() << "  tick ratio " << h.tick_ratio << "  top precision "
      << format_number(h.top_gamma) << "  horizon " << h.horizon << "  policies " << h.num_policies << "\n";
  for (std::size_t l = 0; l < h.levels.size(); ++l) {
    const auto& lv = h.levels[l];
    out << "level " << l + 1 << ": " << lv.states << " states, " << lv.outcomes << " outcomes, " << lv.actions
        << " actions\n";
  }
}

void write_step_line(std::ostringstream& out, std::size_t step, const Explanation* ex) {
  out << "step " << step << ": ";
  if (ex == nullptr) {
    out << "no overt decision\n";
    return;
  }
  out << "action " << ex->chosen_action_label << ", confidence " << format_number(ex->confidence)
      << ", policy entropy " << format_number(ex->posterior_entropy) << " nats\n";
}

void write_perception(std::ostringstream& out, const TraceHeader& h, const std::vector<const TraceEvent*>& events) {
  for (const TraceEvent* e : events) {
    const LevelInfo* lv = e->level >= 1 && e->level <= h.levels.size() ? &h.levels[e->level - 1] : nullptr;
    static const std::vector<std::string> kNone;
    const auto& states = lv ? lv->labels.states : kNone;
    const auto& outcomes = lv ? lv->labels.outcomes : kNone;
    switch (e->kind) {
      case EventKind::process_truth: {
        const auto& p = std::get<TruthPayload>(e->payload);
        out << "  truth: state " << label_or_index(states, p.state, 's');
        if (!p.phase.empty()) out << " (phase " << p.phase << ")";
        out << "\n";
        break;
      }
      case EventKind::observation:
        out << "  level " << e->level << " observation: "
            << labeled(std::get<DistributionPayload>(e->payload).probs, outcomes, 'o') << "\n";
        break;
      case EventKind::prior:
        out << "  level " << e->level << " prior: " << labeled(std::get<DistributionPayload>(e->payload).probs, states, 's')
            << "\n";
        break;
      case EventKind::posterior:
        out << "  level " << e->level
            << " posterior: " << labeled(std::get<DistributionPayload>(e->payload).probs, states, 's') << "\n";
        break;
      case EventKind::vfe:
        out << "  level " << e->level << " free energy: " << format_number(std::get<ScalarPayload>(e->payload).value)
            << " nats\n";
        break;
      case EventKind::ascend:
        out << "  level " << e->level << " received from below: "
            << labeled(std::get<DistributionPayload>(e->payload).probs, outcomes, 'o') << "\n";
        break;
      default:
        break;
    }
  }
}

}  // namespace

std::optional<Verbosity> parse_verbosity(std::string_view name) {
  if (name == "summary") return Verbosity::summary;
  if (name == "decision") return Verbosity::decision;
  if (name == "full") return Verbosity::full;
  return std::nullopt;
}

std::string_view to_string(Verbosity v) {
  switch (v) {
    case Verbosity::summary:
      return "summary";
    case Verbosity::decision:
      return "decision";
    case Verbosity::full:
      return "full";
  }
  return "summary";
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.7g", x);
  return buf;
}

std::string render_explanation(const TraceHeader& header, const Explanation& ex, std::size_t max_policies) {
  std::ostringstream out;
  static const std::vector<std::string> kNone;
  const auto& action_labels = header.levels.empty() ? kNone : header.levels.front().labels.actions;

  for (const auto& ps : ex.precision) {
    out << "  level " << ps.level << ": ";
    if (ps.attention.empty()) {
      out << "likelihood precision " << format_number(ps.gamma) << " (top level, fixed)\n";
      continue;
    }
    const auto& above = ps.level < header.levels.size() ? header.levels[ps.level].labels.states : kNone;
    std::size_t best = 0;
    for (std::size_t j = 1; j < ps.attention.size(); ++j) {
      if (ps.attention[j] > ps.attention[best]) best = j;
    }
    out << "attention was " << label_or_index(above, best, 's') << " (" << format_number(ps.attention[best])
        << "), likelihood precision " << format_number(ps.gamma) << "\n";
  }
  out << "  chosen action: " << ex.chosen_action_label << " via policy " << ex.selected_policy << ", confidence "
      << format_number(ex.confidence) << ", policy entropy " << format_number(ex.posterior_entropy) << " nats\n";
  out << "  action marginals: " << labeled(ex.action_marginals, action_labels, 'a') << "\n";
  const std::size_t n = max_policies == 0 ? ex.top_policies.size() : std::min(max_policies, ex.top_policies.size());
  out << "  policies by expected free energy (" << n << " of " << ex.top_policies.size() << "):\n";
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = ex.top_policies[i];
    out << "    #" << p.policy_index << " " << action_sequence(p.actions, action_labels) << " G "
        << format_number(p.G) << " = risk " << format_number(p.risk) << " + ambiguity "
        << format_number(p.ambiguity) << ", posterior " << format_number(p.posterior) << "\n";
  }
  return out.str();
}

std::string render_report(const AuditTrace& trace, Verbosity verbosity) {
  std::ostringstream out;
  const TraceHeader& h = trace.header();
  write_header(out, h);

  std::vector<std::size_t> steps;
  for (const auto& e : trace.events()) {
    if (steps.empty() || steps.back() != e.step) steps.push_back(e.step);
  }
  for (std::size_t step : steps) {
    std::optional<Explanation> ex;
    try {
      ex = explain_step(trace, step);
    } catch (const NoPlanningAtStepError&) {
    }
    write_step_line(out, step, ex ? &*ex : nullptr);
    if (verbosity == Verbosity::summary) continue;
    if (verbosity == Verbosity::full) write_perception(out, h, trace.events_at(step));
    if (ex) out << render_explanation(h, *ex, verbosity == Verbosity::full ? 0 : kDecisionPolicies);
  }
  return out.str();
}

}  // namespace introspect
