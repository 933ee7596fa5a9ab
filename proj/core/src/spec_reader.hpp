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

// Located readers for JSON spec files. Every failure becomes a
// ValidationError naming (level, field, index).

#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "introspect/categorical.hpp"
#include "introspect/error.hpp"
#include "json.hpp"

namespace introspect::detail {

using Json = nlohmann::json;

inline Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.byte, "", e.what());
  }
}

[[noreturn]] inline void invalid(Location where, std::string problem) {
  throw ValidationError(std::move(where), std::move(problem));
}

inline Location at_index(Location base, std::string index) {
  base.index = base.index.empty() ? std::move(index) : base.index + ", " + index;
  return base;
}

inline std::string show(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

inline void reject_unknown(const Json& obj, std::initializer_list<std::string_view> allowed, const Location& base) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (auto name : allowed) known = known || it.key() == name;
    if (!known) invalid(Location{base.level, it.key(), base.index}, "unknown field");
  }
}

inline const Json& require_object(const Json& node, const Location& where) {
  if (!node.is_object()) invalid(where, "expected an object");
  return node;
}

inline double read_number(const Json& node, const Location& where) {
  if (!node.is_number()) invalid(where, "not a number");
  const double x = node.get<double>();
  if (!std::isfinite(x)) invalid(where, "not finite");
  return x;
}

inline double read_positive(const Json& node, const Location& where) {
  const double x = read_number(node, where);
  if (!(x > 0.0)) invalid(where, "must be positive, got " + show(x));
  return x;
}

inline std::size_t read_count(const Json& node, const Location& where, std::size_t min_value) {
  if (!node.is_number_unsigned()) {
    invalid(where, "expected a non-negative integer");
  }
  const auto v = node.get<std::size_t>();
  if (v < min_value) invalid(where, "must be at least " + std::to_string(min_value) + ", got " + std::to_string(v));
  return v;
}

inline void check_sum(double total, const Location& where) {
  if (std::abs(total - 1.0) > kNormTolerance) invalid(where, "sums to " + show(total));
}

/// A probability vector; `expected` of 0 accepts any non-zero length.
inline std::vector<double> read_distribution(const Json& node, const Location& where, std::size_t expected,
                                             const std::string& what) {
  if (!node.is_array() || node.empty()) invalid(where, "expected a non-empty array of probabilities");
  if (expected != 0 && node.size() != expected) {
    invalid(where, "has " + std::to_string(node.size()) + " entries, expected " + std::to_string(expected) + " (" +
                       what + ")");
  }
  std::vector<double> out;
  double total = 0.0;
  for (std::size_t i = 0; i < node.size(); ++i) {
    const Location cell = at_index(where, "index " + std::to_string(i));
    const double x = read_number(node[i], cell);
    if (x < 0.0) invalid(cell, "negative probability " + show(x));
    out.push_back(x);
    total += x;
  }
  check_sum(total, where);
  return out;
}

/// Row-major column-stochastic matrix. `rows`/`cols` of 0 are unconstrained.
inline std::vector<std::vector<double>> read_stochastic(const Json& node, const Location& where, std::size_t rows,
                                                        std::size_t cols, const std::string& rows_what,
                                                        const std::string& cols_what) {
  if (!node.is_array() || node.empty()) invalid(where, "expected a non-empty array of rows");
  if (rows != 0 && node.size() != rows) {
    invalid(at_index(where, "rows"),
            "has " + std::to_string(node.size()) + " rows, expected " + std::to_string(rows) + " (" + rows_what + ")");
  }
  std::vector<std::vector<double>> out;
  for (std::size_t r = 0; r < node.size(); ++r) {
    const Location row_loc = at_index(where, "row " + std::to_string(r));
    const Json& row = node[r];
    if (!row.is_array() || row.empty()) invalid(row_loc, "expected a non-empty array");
    const std::size_t want = cols != 0 ? cols : (out.empty() ? row.size() : out.front().size());
    if (row.size() != want) {
      invalid(row_loc, "has " + std::to_string(row.size()) + " columns, expected " + std::to_string(want) +
                           (cols != 0 ? " (" + cols_what + ")" : std::string()));
    }
    std::vector<double> values;
    for (std::size_t c = 0; c < row.size(); ++c) {
      const Location cell = at_index(where, "row " + std::to_string(r) + ", column " + std::to_string(c));
      const double x = read_number(row[c], cell);
      if (x < 0.0) invalid(cell, "negative probability " + show(x));
      values.push_back(x);
    }
    out.push_back(std::move(values));
  }
  for (std::size_t c = 0; c < out.front().size(); ++c) {
    double total = 0.0;
    for (const auto& row : out) total += row[c];
    check_sum(total, at_index(where, "column " + std::to_string(c)));
  }
  return out;
}

/// Names for `expected` items; absent means default names.
inline std::vector<std::string> read_labels(const Json* node, const Location& where, std::size_t expected,
                                            char prefix) {
  std::vector<std::string> out;
  if (node == nullptr) {
    for (std::size_t i = 0; i < expected; ++i) out.push_back(std::string(1, prefix) + std::to_string(i));
    return out;
  }
  if (!node->is_array()) invalid(where, "expected an array of names");
  if (node->size() != expected) {
    invalid(where, "has " + std::to_string(node->size()) + " names for " + std::to_string(expected) + " entries");
  }
  for (std::size_t i = 0; i < node->size(); ++i) {
    const Location cell = at_index(where, "index " + std::to_string(i));
    const Json& name = (*node)[i];
    if (!name.is_string() || name.get<std::string>().empty()) invalid(cell, "expected a non-empty string");
    for (const auto& prev : out) {
      if (prev == name.get<std::string>()) invalid(cell, "duplicate name \"" + prev + "\"");
    }
    out.push_back(name.get<std::string>());
  }
  return out;
}

inline const Json* find(const Json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

}  // namespace introspect::detail
