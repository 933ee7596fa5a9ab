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

#include "introspect/audit/explain.hpp"

#include <algorithm>

#include "introspect/error.hpp"

namespace introspect {

Explanation explain_step(const AuditTrace& trace, std::size_t step) {
  const auto events = trace.events_at(step);
  if (events.empty()) throw StepNotFoundError("no events at step " + std::to_string(step));

  const PolicyPosteriorPayload* posterior = nullptr;
  const ActionPayload* action = nullptr;
  std::vector<const PolicyEvalPayload*> evals;
  Explanation out;
  out.step = step;
  for (const TraceEvent* e : events) {
    switch (e->kind) {
      case EventKind::policy_posterior:
        posterior = &std::get<PolicyPosteriorPayload>(e->payload);
        break;
      case EventKind::action:
        action = &std::get<ActionPayload>(e->payload);
        break;
      case EventKind::policy_eval:
        evals.push_back(&std::get<PolicyEvalPayload>(e->payload));
        break;
      case EventKind::precision_descend: {
        const auto& p = std::get<PrecisionPayload>(e->payload);
        out.precision.push_back(PrecisionState{e->level, p.attention, p.gamma});
        break;
      }
      default:
        break;
    }
  }
  if (posterior == nullptr || action == nullptr) {
    throw NoPlanningAtStepError("no overt decision was made at step " + std::to_string(step));
  }

  out.chosen_action = action->action;
  const auto& action_labels = trace.header().levels.front().labels.actions;
  out.chosen_action_label =
      out.chosen_action < action_labels.size() ? action_labels[out.chosen_action] : "a" + std::to_string(out.chosen_action);
  out.action_marginals = action->marginals;
  out.selected_policy = posterior->selected_policy;
  out.confidence = posterior->confidence;
  out.posterior_entropy = posterior->entropy;

  for (const PolicyEvalPayload* ev : evals) {
    const double p = ev->policy_index < posterior->probs.size() ? posterior->probs[ev->policy_index] : 0.0;
    out.top_policies.push_back(
        PolicySummary{ev->policy_index, ev->actions, ev->G, ev->risk_total, ev->ambiguity_total, p});
  }
  std::sort(out.top_policies.begin(), out.top_policies.end(), [](const PolicySummary& a, const PolicySummary& b) {
    return a.G < b.G || (a.G == b.G && a.policy_index < b.policy_index);
  });
  std::sort(out.precision.begin(), out.precision.end(),
            [](const PrecisionState& a, const PrecisionState& b) { return a.level < b.level; });
  return out;
}

}  // namespace introspect
