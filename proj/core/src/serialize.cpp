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

#include "introspect/audit/serialize.hpp"

#include <fstream>
#include <sstream>

#include "introspect/error.hpp"
#include "json.hpp"

namespace introspect {

namespace {

using Json = nlohmann::ordered_json;

Json payload_to_json(const Payload& payload) {
  return std::visit(
      [](const auto& p) -> Json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, DistributionPayload>) {
          return Json{{"probs", p.probs}};
        } else if constexpr (std::is_same_v<T, ScalarPayload>) {
          return Json{{"value", p.value}};
        } else if constexpr (std::is_same_v<T, PrecisionPayload>) {
          return Json{{"attention", p.attention}, {"gamma", p.gamma}};
        } else if constexpr (std::is_same_v<T, PolicyEvalPayload>) {
          return Json{{"policy", p.policy_index}, {"actions", p.actions},     {"G", p.G},
                      {"F", p.F},                 {"risk", p.risk},           {"ambiguity", p.ambiguity},
                      {"risk_total", p.risk_total}, {"ambiguity_total", p.ambiguity_total}};
        } else if constexpr (std::is_same_v<T, PolicyPosteriorPayload>) {
          return Json{{"probs", p.probs},
                      {"selected_policy", p.selected_policy},
                      {"confidence", p.confidence},
                      {"entropy", p.entropy}};
        } else if constexpr (std::is_same_v<T, ActionPayload>) {
          return Json{{"action", p.action}, {"policy", p.policy_index}, {"marginals", p.marginals}};
        } else {
          return Json{{"state", p.state}, {"phase", p.phase}};
        }
      },
      payload);
}

Json embedded(const std::string& canonical) {
  if (canonical.empty()) return nullptr;
  return Json::parse(canonical);
}

Json header_to_json(const TraceHeader& h) {
  Json levels = Json::array();
  for (const auto& lv : h.levels) {
    levels.push_back(Json{{"states", lv.states},
                          {"outcomes", lv.outcomes},
                          {"actions", lv.actions},
                          {"labels",
                           Json{{"states", lv.labels.states},
                                {"outcomes", lv.labels.outcomes},
                                {"actions", lv.labels.actions}}}});
  }
  return Json{{"format", h.format},
              {"model_name", h.model_name},
              {"spec_hash", h.spec_hash},
              {"seed", h.seed},
              {"steps", h.steps},
              {"tick_ratio", h.tick_ratio},
              {"top_gamma", h.top_gamma},
              {"horizon", h.horizon},
              {"num_policies", h.num_policies},
              {"process_states", h.process_states},
              {"levels", std::move(levels)},
              {"model_spec", embedded(h.model_spec)},
              {"process_spec", embedded(h.process_spec)}};
}

// Schema reader: every failure names the JSON pointer of the bad value.
class Reader {
 public:
  Reader(const Json& node, std::string path) : node_(node), path_(std::move(path)) {}

  Reader at(const char* key) const {
    if (!node_.is_object()) fail("expected an object");
    auto it = node_.find(key);
    if (it == node_.end()) fail(std::string("missing field \"") + key + "\"");
    return Reader(*it, path_ + "/" + key);
  }
  Reader at(std::size_t i) const { return Reader(node_.at(i), path_ + "/" + std::to_string(i)); }
  std::size_t size() const {
    if (!node_.is_array()) fail("expected an array");
    return node_.size();
  }
  const Json& raw() const { return node_; }

  template <typename T>
  T get() const {
    try {
      if constexpr (std::is_floating_point_v<T>) {
        if (!node_.is_number()) fail("expected a number");
      } else if constexpr (std::is_integral_v<T>) {
        if (!node_.is_number_unsigned()) fail("expected a non-negative integer");
      }
      return node_.get<T>();
    } catch (const nlohmann::json::exception& e) {
      fail(e.what());
    }
  }

  template <typename T>
  std::vector<T> vec() const {
    std::vector<T> out;
    const std::size_t n = size();
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(at(i).template get<T>());
    return out;
  }

  [[noreturn]] void fail(const std::string& reason) const { throw ParseError(std::nullopt, path_, reason); }

 private:
  const Json& node_;
  std::string path_;
};

Payload payload_from_json(EventKind kind, const Reader& r) {
  switch (kind) {
    case EventKind::observation:
    case EventKind::prior:
    case EventKind::posterior:
    case EventKind::ascend:
      return DistributionPayload{r.at("probs").vec<double>()};
    case EventKind::vfe:
      return ScalarPayload{r.at("value").get<double>()};
    case EventKind::precision_descend:
      return PrecisionPayload{r.at("attention").vec<double>(), r.at("gamma").get<double>()};
    case EventKind::policy_eval:
      return PolicyEvalPayload{r.at("policy").get<std::size_t>(),  r.at("actions").vec<std::size_t>(),
                               r.at("G").get<double>(),            r.at("F").get<double>(),
                               r.at("risk").vec<double>(),         r.at("ambiguity").vec<double>(),
                               r.at("risk_total").get<double>(),   r.at("ambiguity_total").get<double>()};
    case EventKind::policy_posterior:
      return PolicyPosteriorPayload{r.at("probs").vec<double>(), r.at("selected_policy").get<std::size_t>(),
                                    r.at("confidence").get<double>(), r.at("entropy").get<double>()};
    case EventKind::action:
      return ActionPayload{r.at("action").get<std::size_t>(), r.at("policy").get<std::size_t>(),
                           r.at("marginals").vec<double>()};
    case EventKind::process_truth:
      return TruthPayload{r.at("state").get<std::size_t>(), r.at("phase").get<std::string>()};
  }
  r.fail("unknown event kind");
}

std::string canonical(const Reader& r) {
  if (r.raw().is_null()) return {};
  if (!r.raw().is_object()) r.fail("expected an object or null");
  return nlohmann::json(r.raw()).dump();
}

TraceHeader header_from_json(const Reader& r) {
  TraceHeader h;
  h.format = r.at("format").get<std::string>();
  if (h.format != TraceHeader{}.format) r.at("format").fail("unsupported trace format \"" + h.format + "\"");
  h.model_name = r.at("model_name").get<std::string>();
  h.spec_hash = r.at("spec_hash").get<std::string>();
  h.seed = r.at("seed").get<std::uint64_t>();
  h.steps = r.at("steps").get<std::size_t>();
  h.tick_ratio = r.at("tick_ratio").get<std::size_t>();
  h.top_gamma = r.at("top_gamma").get<double>();
  h.horizon = r.at("horizon").get<std::size_t>();
  h.num_policies = r.at("num_policies").get<std::size_t>();
  h.process_states = r.at("process_states").get<std::size_t>();
  const Reader levels = r.at("levels");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const Reader lv = levels.at(i);
    const Reader labels = lv.at("labels");
    h.levels.push_back(LevelInfo{lv.at("states").get<std::size_t>(), lv.at("outcomes").get<std::size_t>(),
                                 lv.at("actions").get<std::size_t>(),
                                 LevelLabels{labels.at("states").vec<std::string>(),
                                             labels.at("outcomes").vec<std::string>(),
                                             labels.at("actions").vec<std::string>()}});
  }
  h.model_spec = canonical(r.at("model_spec"));
  h.process_spec = canonical(r.at("process_spec"));
  return h;
}

}  // namespace

std::string export_trace(const AuditTrace& trace) {
  std::string out = "{\n\"header\": ";
  out += header_to_json(trace.header()).dump(2);
  out += ",\n\"events\": [";
  bool first = true;
  for (const auto& e : trace.events()) {
    out += first ? "\n" : ",\n";
    first = false;
    Json ev{{"seq", e.sequence_no},
            {"step", e.step},
            {"level", e.level},
            {"kind", std::string(to_string(e.kind))},
            {"payload", payload_to_json(e.payload)}};
    out += ev.dump();
  }
  out += "\n]\n}\n";
  return out;
}

AuditTrace import_trace(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.byte, "", e.what());
  }
  const Reader root(doc, "");
  AuditTrace trace(header_from_json(root.at("header")));
  const Reader events = root.at("events");
  for (std::size_t i = 0; i < events.size(); ++i) {
    const Reader ev = events.at(i);
    const auto kind_name = ev.at("kind").get<std::string>();
    const auto kind = event_kind_from_string(kind_name);
    if (!kind) ev.at("kind").fail("unknown event kind \"" + kind_name + "\"");
    if (ev.at("seq").get<std::size_t>() != i) ev.at("seq").fail("sequence number out of order");
    TraceEvent e{ev.at("step").get<std::size_t>(), ev.at("level").get<std::size_t>(), *kind,
                 payload_from_json(*kind, ev.at("payload")), 0};
    try {
      trace.record(std::move(e));
    } catch (const Error& err) {
      ev.fail(err.what());
    }
  }
  trace.seal();
  return trace;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_trace_file(const AuditTrace& trace, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << export_trace(trace);
  if (!out) throw Error("failed writing " + path.string());
}

AuditTrace read_trace_file(const std::filesystem::path& path) { return import_trace(read_text_file(path)); }

}  // namespace introspect
