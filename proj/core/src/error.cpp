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

#include "introspect/error.hpp"

#include <sstream>

namespace introspect {

namespace {

std::string parse_message(const std::optional<std::size_t>& offset, const std::string& path,
                          const std::string& reason) {
  std::ostringstream out;
  out << "parse error";
  if (offset) out << " at byte " << *offset;
  if (!path.empty()) out << " at " << path;
  out << ": " << reason;
  return out.str();
}

}  // namespace

ParseError::ParseError(std::optional<std::size_t> offset, std::string path, std::string reason)
    : Error(parse_message(offset, path, reason)),
      offset_(offset),
      path_(std::move(path)),
      reason_(std::move(reason)) {}

std::string Location::str() const {
  std::string out;
  if (level) out += "level " + std::to_string(*level) + ", ";
  out += field;
  if (!index.empty()) out += ", " + index;
  return out;
}

ValidationError::ValidationError(Location where, std::string problem)
    : Error(where.str() + ": " + problem), where_(std::move(where)), problem_(std::move(problem)) {}

EpisodeError::EpisodeError(std::size_t step, const std::string& what)
    : Error("step " + std::to_string(step) + ": " + what), step_(step) {}

}  // namespace introspect
