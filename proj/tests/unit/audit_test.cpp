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

#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <string>

#include "approx.hpp"
#include "fuzz.hpp"
#include "introspect/audit/explain.hpp"
#include "introspect/audit/report.hpp"
#include "introspect/audit/serialize.hpp"
#include "introspect/error.hpp"
#include "introspect/harness/episode.hpp"
#include "introspect/planning.hpp"
#include "scenario.hpp"

using namespace introspect;
using introspect::testing::Fuzz;
using introspect::testing::near;

namespace {

TraceHeader small_header(std::size_t policies = 2) {
  TraceHeader h;
  h.model_name = "hand";
  h.num_policies = policies;
  h.process_states = 2;
  h.levels.push_back(LevelInfo{2, 2, 2, LevelLabels{{"left", "right"}, {"dim", "bright"}, {"stay", "move"}}});
  return h;
}

// One planning block with G = [1, 2], F = 0, E uniform and gamma_G = 1.
AuditTrace hand_trace() {
  AuditTrace t(small_header());
  t.record({1, 1, EventKind::process_truth, TruthPayload{0, ""}});
  t.record({1, 1, EventKind::observation, DistributionPayload{{1.0, 0.0}}});
  t.record({1, 1, EventKind::precision_descend, PrecisionPayload{{}, 1.0}});
  t.record({1, 1, EventKind::prior, DistributionPayload{{0.5, 0.5}}});
  t.record({1, 1, EventKind::posterior, DistributionPayload{{0.9, 0.1}}});
  t.record({1, 1, EventKind::vfe, ScalarPayload{0.6}});
  t.record({1, 1, EventKind::policy_eval, PolicyEvalPayload{0, {0}, 1.0, 0.0, {0.75}, {0.25}, 0.75, 0.25}});
  t.record({1, 1, EventKind::policy_eval, PolicyEvalPayload{1, {1}, 2.0, 0.0, {1.5}, {0.5}, 1.5, 0.5}});
  const std::vector<double> f{0, 0}, g{1, 2};
  const auto q = policy_posterior(Categorical::uniform(2), f, g, Precision(1.0));
  t.record({1, 1, EventKind::policy_posterior, PolicyPosteriorPayload{q.values(), 0, q[0], entropy(q)}});
  t.record({1, 1, EventKind::action, ActionPayload{0, 0, q.values()}});
  t.record({2, 1, EventKind::process_truth, TruthPayload{1, ""}});
  t.seal();
  return t;
}

std::size_t count_lines_starting(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) n += line.rfind(prefix, 0) == 0;
  return n;
}

}  // namespace

TEST_CASE("record assigns sequence numbers and validates") {
  AuditTrace t(small_header());
  const auto& first = t.record({1, 1, EventKind::observation, DistributionPayload{{1.0, 0.0}}, 77});
  CHECK(first.sequence_no == 0);
  CHECK(t.size() == 1);
  for (int i = 0; i < 9; ++i) t.record({1, 1, EventKind::prior, DistributionPayload{{0.5, 0.5}}});
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(t.events()[i].sequence_no == i);

  CHECK_THROWS_AS(t.record({1, 1, EventKind::posterior, DistributionPayload{{0.2, 0.3, 0.5}}}),
                  DimensionMismatchError);
  CHECK_THROWS_AS(t.record({1, 2, EventKind::posterior, DistributionPayload{{0.5, 0.5}}}), DimensionMismatchError);
  CHECK_THROWS_AS(t.record({1, 1, EventKind::posterior, ScalarPayload{1.0}}), DimensionMismatchError);
  CHECK_THROWS_AS(t.record({1, 1, EventKind::action, ActionPayload{2, 0, {0.5, 0.5}}}), DimensionMismatchError);
  CHECK(t.size() == 10);

  t.record({3, 1, EventKind::vfe, ScalarPayload{1.0}});
  CHECK_THROWS_AS(t.record({2, 1, EventKind::vfe, ScalarPayload{1.0}}), SequenceError);
  t.seal();
  CHECK_THROWS_AS(t.record({3, 1, EventKind::vfe, ScalarPayload{1.0}}), SequenceError);
}

TEST_CASE("explanation is a lookup of the planning block") {
  const auto t = hand_trace();
  const auto ex = explain_step(t, 1);
  CHECK(ex.step == 1);
  CHECK(ex.chosen_action == 0);
  CHECK(ex.chosen_action_label == "stay");
  REQUIRE(ex.top_policies.size() == 2);
  CHECK(ex.top_policies[0].policy_index == 0);
  CHECK(ex.top_policies[0].G == 1.0);
  CHECK(ex.top_policies[0].risk == 0.75);
  CHECK(ex.top_policies[0].ambiguity == 0.25);
  const auto& traced = std::get<PolicyPosteriorPayload>(t.events()[8].payload);
  CHECK(ex.top_policies[0].posterior == traced.probs[0]);
  CHECK(ex.confidence == traced.confidence);
  CHECK(near(ex.confidence, 0.7310585786300049, 1e-15));
  CHECK(ex.posterior_entropy == traced.entropy);
  CHECK(ex.action_marginals == traced.probs);
  REQUIRE(ex.precision.size() == 1);
  CHECK(ex.precision[0].gamma == 1.0);

  CHECK_THROWS_AS(explain_step(t, 2), NoPlanningAtStepError);
  CHECK_THROWS_AS(explain_step(t, 3), StepNotFoundError);
}

TEST_CASE("explanation follows the trace when the trace changes") {
  auto text = export_trace(hand_trace());
  const auto original = explain_step(import_trace(text), 1);
  const std::string from = "\"G\":2.0", to = "\"G\":0.5";
  const auto at = text.find(from);
  REQUIRE(at != std::string::npos);
  text.replace(at, from.size(), to);
  const auto changed = explain_step(import_trace(text), 1);
  CHECK(changed.top_policies[0].policy_index == 1);
  CHECK(changed.top_policies[0].G == 0.5);
  CHECK(original.top_policies[0].policy_index == 0);
}

TEST_CASE("single-policy agent explains with full confidence") {
  ModelSpec spec;
  spec.name = "single";
  LevelSpec lv;
  lv.labels = LevelLabels{{"s0", "s1"}, {"o0", "o1"}, {"only"}};
  lv.A = {{0.9, 0.1}, {0.1, 0.9}};
  lv.B = {{{1, 0}, {0, 1}}};
  lv.C = {0.5, 0.5};
  lv.D = {0.5, 0.5};
  spec.levels.push_back(lv);
  const auto t = run_scenario(spec, 3, 1);
  const auto ex = explain_step(t, 2);
  CHECK(ex.top_policies.size() == 1);
  CHECK(ex.confidence == 1.0);
  CHECK(ex.action_marginals == std::vector<double>{1.0});
  CHECK(ex.chosen_action_label == "only");
}

TEST_CASE("reports") {
  const auto t = hand_trace();
  for (auto v : {Verbosity::summary, Verbosity::decision, Verbosity::full}) {
    CHECK(render_report(t, v) == render_report(t, v));
  }
  const auto summary = render_report(t, Verbosity::summary);
  CHECK(count_lines_starting(summary, "step ") == 2);
  CHECK(summary.find("step 1: action stay, confidence 0.7310586") != std::string::npos);
  CHECK(summary.find("step 2: no overt decision") != std::string::npos);

  const auto decision = render_report(t, Verbosity::decision);
  CHECK(decision.find("G 2 = risk 1.5 + ambiguity 0.5") != std::string::npos);
  CHECK(decision.find("likelihood precision 1 (top level, fixed)") != std::string::npos);

  AuditTrace empty(small_header());
  const auto bare = render_report(empty, Verbosity::full);
  CHECK(count_lines_starting(bare, "step ") == 0);
  CHECK(bare.rfind("introspect audit report", 0) == 0);

  CHECK(parse_verbosity("decision") == Verbosity::decision);
  CHECK(!parse_verbosity("loud"));
  CHECK(format_number(0.7310585786300049) == "0.7310586");
  CHECK(format_number(2.0) == "2");
}

TEST_CASE("attention wording names the attentional state") {
  TraceHeader h = small_header();
  h.levels.push_back(LevelInfo{2, 2, 1, LevelLabels{{"focused", "lapsed"}, {"left", "right"}, {"drift"}}});
  AuditTrace t(h);
  t.record({1, 2, EventKind::precision_descend, PrecisionPayload{{}, 1.0}});
  t.record({1, 1, EventKind::precision_descend, PrecisionPayload{{1.0, 0.0}, 2.0}});
  t.record({1, 1, EventKind::policy_eval, PolicyEvalPayload{0, {0}, 1.0, 0.0, {0.75}, {0.25}, 0.75, 0.25}});
  t.record({1, 1, EventKind::policy_eval, PolicyEvalPayload{1, {1}, 2.0, 0.0, {1.5}, {0.5}, 1.5, 0.5}});
  t.record({1, 1, EventKind::policy_posterior, PolicyPosteriorPayload{{0.6, 0.4}, 0, 0.6, 0.5}});
  t.record({1, 1, EventKind::action, ActionPayload{0, 0, {0.6, 0.4}}});
  const auto text = render_report(t, Verbosity::decision);
  CHECK(text.find("level 1: attention was focused (1), likelihood precision 2") != std::string::npos);
}

TEST_CASE("trace round trip is exact") {
  Fuzz fz(51);
  for (int i = 0; i < 25; ++i) {
    const auto spec = introspect::testing::random_spec(fz);
    const auto t = run_scenario(spec, fz.index(1, 8), fz.index(0, 1u << 30));
    const auto text = export_trace(t);
    const auto back = import_trace(text);
    CHECK(back == t);
    CHECK(back.sealed());
    CHECK(export_trace(back) == text);
  }
  const auto hand = hand_trace();
  CHECK(import_trace(export_trace(hand)) == hand);
}

TEST_CASE("truncated or malformed streams raise located parse errors") {
  const auto text = export_trace(hand_trace());
  try {
    import_trace(text.substr(0, text.size() / 2));
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    REQUIRE(e.offset().has_value());
    CHECK(*e.offset() <= text.size() / 2 + 1);
  }
  CHECK_THROWS_AS(import_trace(""), ParseError);

  auto bad_kind = text;
  bad_kind.replace(bad_kind.find("\"vfe\""), 5, "\"xyz\"");
  try {
    import_trace(bad_kind);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.path() == "/events/5/kind");
  }

  auto bad_dims = text;
  bad_dims.replace(bad_dims.find("[0.9,0.1]"), 9, "[0.9,0.05,0.05]");
  CHECK_THROWS_AS(import_trace(bad_dims), ParseError);
}

TEST_CASE("hand-written minimal trace file") {
  const auto t = read_trace_file(INTROSPECT_TEST_FIXTURES "/minimal_trace.json");
  CHECK(t.header().model_name == "minimal");
  CHECK(t.header().seed == 9);
  CHECK(t.header().steps == 1);
  CHECK(t.header().levels.size() == 1);
  CHECK(t.header().levels[0].labels.outcomes == std::vector<std::string>{"dim", "bright"});
  CHECK(t.header().model_spec.empty());
  REQUIRE(t.size() == 1);
  const auto& e = t.events()[0];
  CHECK(e.sequence_no == 0);
  CHECK(e.step == 1);
  CHECK(e.level == 1);
  CHECK(e.kind == EventKind::observation);
  CHECK(std::get<DistributionPayload>(e.payload).probs == std::vector<double>{0.0, 1.0});
  CHECK_THROWS_AS(replay(t.header()), Error);
}

TEST_CASE("replay reproduces episodes and exposes tampering") {
  Fuzz fz(52);
  for (int i = 0; i < 15; ++i) {
    const auto spec = introspect::testing::random_spec(fz);
    const auto t = import_trace(export_trace(run_scenario(spec, fz.index(2, 8), fz.index(0, 1000))));
    const auto again = replay(t.header());
    CHECK(export_trace(again) == export_trace(t));
    CHECK(!first_divergence(t, again));

    // Flip the leading digit of the first traced posterior.
    auto text = export_trace(t);
    const auto at = text.find("\"kind\":\"posterior\"");
    REQUIRE(at != std::string::npos);
    const auto digit = text.find_first_of("0123456789", text.find("\"probs\":[", at));
    text[digit] = text[digit] == '1' ? '0' : '1';
    const auto tampered = import_trace(text);
    const auto d = first_divergence(tampered, again);
    REQUIRE(d.has_value());
    CHECK(tampered.events()[*d].kind == EventKind::posterior);
  }
}
