// Copyright 2026 The chkpt Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>

#include "chkpt/error.hpp"
#include "chkpt/executor.hpp"
#include "chkpt/mixed.hpp"
#include "chkpt/oracle.hpp"
#include "chkpt/registry.hpp"
#include "chkpt/schedule_format.hpp"
#include "chkpt/simulator.hpp"

namespace chkpt::cli {
namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

/// Raised for flag combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string shortest(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return {buf, res.ptr};
}

std::string trace_to_json(const ScheduleTrace& trace, const StrategySpec& spec) {
  using nlohmann::ordered_json;
  ordered_json entries = ordered_json::array();
  std::size_t index = 0;
  for (const auto& entry : trace.entries) {
    if (const auto* a = std::get_if<Action>(&entry)) {
      entries.push_back({{"index", index++}, {"action", to_string(*a)}});
    } else {
      entries.push_back({{"feedback", to_string(std::get<FeedbackEvent>(entry))}});
    }
  }
  ordered_json doc = {{"strategy", std::string(to_string(spec.kind))},
                      {"max_n", trace.max_n},
                      {"entries", entries}};
  return doc.dump(2) + '\n';
}

std::vector<Action> actions_from_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  std::vector<Action> actions;
  std::size_t entry_no = 0;
  for (const auto& entry : doc.at("entries")) {
    ++entry_no;
    if (!entry.contains("action")) continue;
    actions.push_back(parse_action(entry.at("action").get<std::string>(), entry_no));
  }
  return actions;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot open output file '" + path + "'");
  file << text;
}

struct Options {
  std::string strategy;
  StepIndex steps = 0;
  StepIndex units = 1;
  StepIndex period = 1;
  std::string storage = "disk";
  std::string format = "records";
  std::string out_path;
  std::string file;
  std::optional<StepIndex> unit_limit;
  bool no_exclusion = false;
  std::string report_format = "text";
  StepIndex units_min = 1;
  std::optional<StepIndex> units_max;
  std::int64_t max_nodes = OracleOptions{}.max_nodes;
  double u0 = 1.0, h = 0.1, theta = 1.0;
};

StrategySpec spec_from(const Options& o) {
  StrategySpec spec;
  spec.kind = *strategy_kind_from_string(o.strategy);
  spec.steps = o.steps;
  spec.units = o.units;
  spec.period = o.period;
  spec.storage = *storage_kind_from_string(o.storage);
  return spec;
}

int cmd_generate(const Options& o, std::ostream& out) {
  const StrategySpec spec = spec_from(o);
  auto producer = make_producer(spec);
  const ScheduleTrace trace = generate_schedule(*producer, o.steps);
  std::string text;
  if (o.format == "table") {
    text = render_table(trace);
  } else if (o.format == "records") {
    text = serialize_schedule(trace.actions());
  } else {
    text = trace_to_json(trace, spec);
  }
  emit(text, o.out_path, out);
  return kOk;
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  std::ifstream file(o.file, std::ios::binary);
  if (!file) {
    err << "error: cannot read '" << o.file << "'\n";
    return kUsage;
  }
  std::stringstream buffer;
  buffer << file.rdbuf();
  std::vector<Action> actions;
  try {
    actions = o.format == "records" ? parse_schedule(buffer.str()) : actions_from_json(buffer.str());
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsage;
  }

  ReplayOptions options;
  if (o.unit_limit) options.unit_limits[*storage_kind_from_string(o.storage)] = *o.unit_limit;
  options.check_exclusion = !o.no_exclusion;
  const ReplayResult result = replay(actions, o.steps, options);

  if (o.report_format == "json") {
    out << result_to_json(result);
  } else if (result.ok()) {
    out << "ok\n" << report_to_text(result.report);
  } else {
    out << violations_to_text(result.violations);
    out << result.violations.size() << " violation(s)\n";
  }
  return result.ok() ? kOk : kFailed;
}

int cmd_compare(const Options& o, std::ostream& out) {
  const StepIndex units_max = o.units_max.value_or(o.steps - 1);
  if (o.units_min < 1 || o.units_min > units_max || units_max >= o.steps) {
    throw UsageError("unit range must satisfy 1 <= units-min <= units-max < steps");
  }
  emit(compare_costs(o.steps, o.units_min, units_max).to_csv(), o.out_path, out);
  return kOk;
}

int cmd_oracle(const Options& o, std::ostream& out, std::ostream& err) {
  try {
    const auto optimum = brute_force_optimum(o.steps, o.units, {o.max_nodes});
    out << "steps " << o.steps << '\n'
        << "units " << o.units << '\n'
        << "brute_force_optimum " << optimum << '\n'
        << "mixed_cost " << mixed_cost(o.steps, o.units) << '\n';
    return kOk;
  } catch (const SearchBudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  }
}

int cmd_run_demo(const Options& o, std::ostream& out, std::ostream& err) {
  const StrategySpec spec = spec_from(o);
  const ToyModel model{o.steps, o.u0, o.h, o.theta};
  auto producer = make_producer(spec);
  try {
    const ScheduledRun run = run_under_schedule(model, *producer);
    out << "strategy " << to_string(spec.kind) << '\n'
        << "steps " << o.steps << '\n'
        << "J " << shortest(run.gradient.J) << '\n'
        << "dJ/du0 " << shortest(run.gradient.dJ_du0) << '\n'
        << "dJ/dtheta " << shortest(run.gradient.dJ_dtheta) << '\n'
        << "f_evaluations " << run.f_evaluations << '\n'
        << "predicted_forward_steps " << predicted_forward_steps(spec) << '\n';
    return kOk;
  } catch (const ExecutionError& e) {
    err << "execution error: " << e.what() << '\n';
    return kFailed;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Checkpointing schedules for adjoint calculations", "chkpt"};
  app.require_subcommand(1);
  Options o;

  const auto add_strategy = [&](CLI::App* cmd, bool with_format) {
    cmd->add_option("--strategy", o.strategy, "store-everything, periodic, revolve or mixed")
        ->required()
        ->check(CLI::IsMember({"store-everything", "periodic", "revolve", "mixed"}));
    cmd->add_option("--steps", o.steps, "number of forward steps")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--units", o.units, "revolve snapshots or mixed checkpointing units")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--period", o.period, "periodic checkpoint spacing")->check(CLI::PositiveNumber);
    cmd->add_option("--storage", o.storage, "checkpoint storage: ram or disk")
        ->check(CLI::IsMember({"ram", "disk"}));
    if (with_format) {
      cmd->add_option("--format", o.format, "table, records or json")
          ->check(CLI::IsMember({"table", "records", "json", "json-like"}));
      cmd->add_option("--out", o.out_path, "write to this file instead of standard output");
    }
  };

  auto* generate = app.add_subcommand("generate", "print a schedule");
  add_strategy(generate, true);

  auto* validate = app.add_subcommand("validate", "replay a schedule file and report its cost");
  validate->add_option("file", o.file, "schedule file")->required();
  validate->add_option("--steps", o.steps, "number of forward steps")->required()->check(CLI::PositiveNumber);
  validate->add_option("--units", o.unit_limit, "checkpointing unit limit for --storage")
      ->check(CLI::NonNegativeNumber);
  validate->add_option("--storage", o.storage, "storage kind the unit limit applies to")
      ->check(CLI::IsMember({"ram", "disk"}));
  validate->add_option("--format", o.format, "input format: records or json")
      ->check(CLI::IsMember({"records", "json", "json-like"}));
  validate->add_option("--report", o.report_format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  validate->add_flag("--no-exclusion", o.no_exclusion, "skip the same-step exclusion check");

  auto* compare = app.add_subcommand("compare", "revolve versus mixed cost curve as CSV");
  compare->add_option("--steps", o.steps, "number of forward steps")->required()->check(CLI::PositiveNumber);
  compare->add_option("--units-min", o.units_min, "smallest unit count");
  compare->add_option("--units-max", o.units_max, "largest unit count (default steps - 1)");
  compare->add_option("--out", o.out_path, "write to this file instead of standard output");

  auto* oracle = app.add_subcommand("oracle", "exhaustive optimum for a tiny instance");
  oracle->add_option("--steps", o.steps, "number of forward steps")->required()->check(CLI::PositiveNumber);
  oracle->add_option("--units", o.units, "checkpointing units")->required()->check(CLI::PositiveNumber);
  oracle->add_option("--max-nodes", o.max_nodes, "search budget")->check(CLI::PositiveNumber);

  auto* demo = app.add_subcommand("run-demo", "differentiate the toy model under a schedule");
  add_strategy(demo, false);
  demo->add_option("--u0", o.u0, "initial condition");
  demo->add_option("--step-size", o.h, "step size h");
  demo->add_option("--theta", o.theta, "parameter");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    const auto* failing = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << failing->help();
    return kUsage;
  }

  try {
    if (generate->parsed()) return cmd_generate(o, out);
    if (validate->parsed()) return cmd_validate(o, out, err);
    if (compare->parsed()) return cmd_compare(o, out);
    if (oracle->parsed()) return cmd_oracle(o, out, err);
    return cmd_run_demo(o, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidConfig& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  }
}

}  // namespace chkpt::cli
