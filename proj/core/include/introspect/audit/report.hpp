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

// Deterministic plain-text self-reports rendered from a sealed trace.
// Numbers are printed with 7 significant digits ("%.7g").

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "introspect/audit/explain.hpp"
#include "introspect/audit/trace.hpp"

namespace introspect {

enum class Verbosity { summary, decision, full };

std::optional<Verbosity> parse_verbosity(std::string_view name);
std::string_view to_string(Verbosity v);

/// "%.7g" formatting used everywhere in reports.
std::string format_number(double x);

/// summary: one line per step (action, confidence).
/// decision: adds precision state, action marginals and the lowest-G
///   policies with their risk/ambiguity split.
/// full: adds every policy and every observation, belief and free energy.
std::string render_report(const AuditTrace& trace, Verbosity verbosity);

/// The decision block for a single step. `max_policies` of 0 lists all.
std::string render_explanation(const TraceHeader& header, const Explanation& explanation,
                               std::size_t max_policies = 3);

}  // namespace introspect
