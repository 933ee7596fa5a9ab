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

// JSON trace files: {"header": {...}, "events": [...]}. Doubles are written
// in shortest round-trip form so import(export(t)) == t exactly.

#include <filesystem>
#include <string>
#include <string_view>

#include "introspect/audit/trace.hpp"

namespace introspect {

std::string export_trace(const AuditTrace& trace);

/// Throws ParseError (byte offset for syntax errors, JSON pointer for
/// schema errors). The returned trace is sealed.
AuditTrace import_trace(std::string_view text);

void write_trace_file(const AuditTrace& trace, const std::filesystem::path& path);
AuditTrace read_trace_file(const std::filesystem::path& path);

/// Whole file as bytes. Throws Error when it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace introspect
