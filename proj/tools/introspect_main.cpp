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

// introspect: validate model specs, run audited episodes, and render
// explanations and reports from trace files.
//
// Exit codes: 0 success, 1 validation or parse error, 2 runtime error.

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "introspect/audit/explain.hpp"
#include "introspect/audit/report.hpp"
#include "introspect/audit/serialize.hpp"
#include "introspect/error.hpp"
#include "introspect/harness/episode.hpp"
#include "introspect/harness/model_spec.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kRuntime = 2;

introspect::Verbosity verbosity_or_throw(const std::string& name) {
  auto v = introspect::parse_verbosity(name);
  if (!v) throw CLI::ValidationError("--verbosity", "expected summary, decision or full");
  return *v;
}

int cmd_validate(const std::string& spec_path) {
  const auto spec = introspect::load_model_spec(spec_path);
  const auto agent = introspect::build_agent(spec);
  std::cout << spec_path << ": ok (" << spec.levels.size() << " level" << (spec.levels.size() == 1 ? "" : "s")
            << ", " << agent.policies().size() << " policies)\n";
  return kOk;
}

int cmd_run(const std::string& spec_path, const std::string& process_path, std::size_t steps, std::uint64_t seed,
            const std::string& trace_path, const std::string& verbosity) {
  const auto v = verbosity_or_throw(verbosity);
  const auto spec = introspect::load_model_spec(spec_path);
  const auto process =
      process_path.empty() ? introspect::process_from_model(spec) : introspect::load_process_spec(process_path);
  const auto trace = introspect::run_scenario(spec, process, steps, seed);
  introspect::write_trace_file(trace, trace_path);
  std::cout << introspect::render_report(trace, v);
  return kOk;
}

int cmd_explain(const std::string& trace_path, std::size_t step, const std::string& verbosity) {
  const auto v = verbosity_or_throw(verbosity);
  const auto trace = introspect::read_trace_file(trace_path);
  const auto ex = introspect::explain_step(trace, step);
  std::cout << "step " << ex.step << ": action " << ex.chosen_action_label << ", confidence "
            << introspect::format_number(ex.confidence) << "\n";
  if (v != introspect::Verbosity::summary) {
    std::cout << introspect::render_explanation(trace.header(), ex, v == introspect::Verbosity::full ? 0 : 3);
  }
  return kOk;
}

int cmd_report(const std::string& trace_path, const std::string& verbosity) {
  const auto v = verbosity_or_throw(verbosity);
  const auto trace = introspect::read_trace_file(trace_path);
  std::cout << introspect::render_report(trace, v);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Audited hierarchical active-inference agents"};
  app.require_subcommand(1);

  std::string spec_path;
  std::string process_path;
  std::string trace_path;
  std::string verbosity = "summary";
  std::size_t steps = 10;
  std::size_t step = 1;
  std::uint64_t seed = 0;

  auto* validate = app.add_subcommand("validate", "Check a model spec and report located errors");
  validate->add_option("spec", spec_path, "Model spec (JSON)")->required();

  auto* run = app.add_subcommand("run", "Run an episode, write its trace and print a report");
  run->add_option("spec", spec_path, "Model spec (JSON)")->required();
  run->add_option("--steps", steps, "Number of steps")->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "Seed for the generative process");
  run->add_option("--trace", trace_path, "Output trace file")->required();
  run->add_option("--process", process_path, "Generative process spec; defaults to the agent's own level-1 model");
  run->add_option("--verbosity", verbosity, "summary, decision or full");

  std::string explain_verbosity = "decision";
  auto* explain = app.add_subcommand("explain", "Explain the decision taken at one step");
  explain->add_option("trace", trace_path, "Trace file")->required();
  explain->add_option("--step", step, "Step to explain")->required();
  explain->add_option("--verbosity", explain_verbosity, "summary, decision or full");

  std::string report_verbosity = "full";
  auto* report = app.add_subcommand("report", "Render a whole trace as text");
  report->add_option("trace", trace_path, "Trace file")->required();
  report->add_option("--verbosity", report_verbosity, "summary, decision or full");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    if (*validate) return cmd_validate(spec_path);
    if (*run) return cmd_run(spec_path, process_path, steps, seed, trace_path, verbosity);
    if (*explain) return cmd_explain(trace_path, step, explain_verbosity);
    if (*report) return cmd_report(trace_path, report_verbosity);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const introspect::ValidationError& e) {
    std::cerr << "invalid: " << e.what() << "\n";
    return kInvalid;
  } catch (const introspect::ParseError& e) {
    std::cerr << "invalid: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kRuntime;
}
