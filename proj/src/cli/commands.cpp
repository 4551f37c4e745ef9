#include "scoopw/cli/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "scoopw/bench/benchmarks.hpp"
#include "scoopw/frontend/compiler.hpp"
#include "scoopw/models/models.hpp"
#include "scoopw/props/compare.hpp"
#include "scoopw/props/trace_check.hpp"
#include "scoopw/report/report.hpp"

namespace scoopw {

namespace {

struct RunConfig {
  std::string model = "qoq";
  std::string models = "rq,qoq,dscoop";
  std::string rules;
  std::uint64_t max_states = 0;
  std::uint32_t depth = 0;
  unsigned workers = 1;
  std::string strategy = "bfs";
  std::uint64_t time_budget_ms = 0;
  std::string format = "text";
  std::string program;
  // test hooks
  bool serve_newest = false;
  std::string prelock_order = "ascending";
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void check_model(const std::string& id) {
  const auto& ids = model_ids();
  if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
    throw InputError("unknown model '" + id + "' (expected rq, qoq or dscoop)");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string load_source(const std::string& arg) {
  if (arg.starts_with("bench:")) {
    const bench::Benchmark* b = bench::find(arg.substr(6));
    if (!b) throw InputError("unknown benchmark '" + arg.substr(6) + "' (see list-benchmarks)");
    return b->source;
  }
  return read_file(arg);
}

std::shared_ptr<const CompiledProgram> load_program(const RunConfig& c, std::ostream& err) {
  frontend::BuildResult r = frontend::build(load_source(c.program));
  for (const auto& w : r.warnings) err << c.program << ":" << frontend::format(w) << ": warning\n";
  if (!r.ok()) {
    for (const auto& e : r.errors) err << c.program << ":" << frontend::format(e) << "\n";
    return nullptr;
  }
  return r.program;
}

std::vector<ErrorRule> load_rules(const std::string& spec) {
  if (spec.empty()) return {};
  try {
    if (spec.ends_with(".json")) return parse_rule_file(read_file(spec));
    return parse_builtin_rules(spec);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

ModelOptions model_options(const RunConfig& c) {
  ModelOptions o;
  o.serve_newest = c.serve_newest;
  if (c.prelock_order == "ascending") {
    o.prelock_order = PrelockOrder::Ascending;
  } else if (c.prelock_order == "descending") {
    o.prelock_order = PrelockOrder::Descending;
  } else if (c.prelock_order == "argument") {
    o.prelock_order = PrelockOrder::Argument;
  } else {
    throw InputError("unknown prelock order '" + c.prelock_order + "'");
  }
  return o;
}

ExploreOptions explore_options(const RunConfig& c, bool transitions) {
  ExploreOptions o;
  o.limits.max_states = c.max_states;
  o.limits.max_depth = c.depth;
  o.limits.time_budget = std::chrono::milliseconds(c.time_budget_ms);
  o.rules = load_rules(c.rules);
  o.workers = c.workers;
  if (c.strategy == "bfs") {
    o.strategy = c.workers > 1 ? Strategy::Parallel : Strategy::Bfs;
  } else if (c.strategy == "dfs") {
    o.strategy = Strategy::Dfs;
  } else if (c.strategy == "parallel") {
    o.strategy = Strategy::Parallel;
  } else {
    throw InputError("unknown strategy '" + c.strategy + "'");
  }
  o.record_transitions = transitions;
  return o;
}

void check_format(const std::string& f, bool dot_ok) {
  if (f == "text" || f == "json" || (dot_ok && f == "dot")) return;
  throw InputError("unsupported format '" + f + "'");
}

int cmd_explore(const RunConfig& c, std::ostream& out, std::ostream& err) {
  check_model(c.model);
  check_format(c.format, true);
  ExploreOptions opt = explore_options(c, true);
  ModelOptions mopt = model_options(c);
  auto program = load_program(c, err);
  if (!program) return kExitInput;
  Engine engine(program, make_model(c.model, mopt));
  StateSpace space = explore(engine, opt);
  if (c.format == "json") {
    nlohmann::json rep = explore_json(c.program, c.model, space, opt.rules, *program);
    if (!space.truncated) {
      nlohmann::json sccs = nlohmann::json::array();
      for (const SccSummary& s : terminal_scc_report(space)) {
        nlohmann::json rules = nlohmann::json::array();
        for (Rule r : s.rules) rules.push_back(rule_name(r));
        sccs.push_back({{"states", s.states.size()}, {"first", s.states.front()}, {"rules", rules},
                        {"witness", labels_json(space.witness(s.states.front()), *program)}});
      }
      rep["livelocks"] = std::move(sccs);
    }
    out << rep.dump(2) << "\n";
  } else if (c.format == "dot") {
    try {
      out << to_dot(space, *program);
    } catch (const std::length_error& e) {
      err << e.what() << "\n";
      return kExitInput;
    }
  } else {
    out << explore_text(c.program, c.model, space, opt.rules, *program);
    if (!space.truncated) {
      for (const SccSummary& s : terminal_scc_report(space)) {
        out << "  livelock candidate: " << s.states.size() << " states from state " << s.states.front() << " (";
        for (std::size_t i = 0; i < s.rules.size(); ++i) out << (i ? ", " : "") << rule_name(s.rules[i]);
        out << ")\n";
      }
    }
  }
  bool violated = !space.error_states.empty();
  if (violated) return kExitViolation;
  return space.truncated ? kExitTruncated : kExitOk;
}

int cmd_compare(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::vector<std::string> models = split(c.models);
  for (const auto& m : models) check_model(m);
  if (models.size() < 2) throw InputError("compare needs at least two models");
  check_format(c.format, false);
  ExploreOptions opt = explore_options(c, false);
  ModelOptions mopt = model_options(c);
  auto program = load_program(c, err);
  if (!program) return kExitInput;
  ComparisonReport rep = compare_semantics(program, models, opt, mopt);
  if (c.format == "json") {
    out << compare_json(c.program, rep, *program).dump(2) << "\n";
  } else {
    out << compare_text(rep);
  }
  if (!rep.discrepancies().empty()) return kExitViolation;
  return rep.unknown() ? kExitTruncated : kExitOk;
}

int cmd_trace_check(const RunConfig& c, std::ostream& out, std::ostream& err) {
  check_model(c.model);
  check_format(c.format, false);
  ModelOptions mopt = model_options(c);
  auto program = load_program(c, err);
  if (!program) return kExitInput;
  TraceCheckOptions opt;
  opt.depth = c.depth == 0 ? 500 : c.depth;
  opt.max_states = c.max_states;
  opt.time_budget = std::chrono::milliseconds(c.time_budget_ms);
  Engine engine(program, make_model(c.model, mopt));
  TraceCheckResult res = trace_check(engine, opt);
  if (c.format == "json") {
    out << trace_check_json(c.program, c.model, res, opt.depth, *program).dump(2) << "\n";
  } else {
    out << trace_check_text(c.model, res, *program);
  }
  if (res.violation) return kExitViolation;
  return res.truncated ? kExitTruncated : kExitOk;
}

int cmd_compile(const RunConfig& c, std::ostream& out, std::ostream& err) {
  check_format(c.format, false);
  auto program = load_program(c, err);
  if (!program) return kExitInput;
  if (c.format == "json") {
    nlohmann::json methods = nlohmann::json::array();
    for (MethodId m = 0; m < program->methods.size(); ++m) {
      const MethodInfo& info = program->method(m);
      const Cfg& g = info.cfg;
      nlohmann::json edges = nlohmann::json::array();
      for (const Edge& e : g.edges) edges.push_back({{"from", e.from}, {"to", e.to}, {"action", describe(*program, m, e.action)}});
      methods.push_back({{"name", program->qualified_name(m)},
                         {"query", info.is_query()},
                         {"getter", info.is_getter},
                         {"states", g.state_count},
                         {"initial", g.initial},
                         {"final", g.final},
                         {"edges", std::move(edges)}});
    }
    out << nlohmann::json{{"schema", kReportSchemaVersion}, {"command", "compile"}, {"program", c.program},
                          {"methods", std::move(methods)}}
               .dump(2)
        << "\n";
  } else {
    for (MethodId m = 0; m < program->methods.size(); ++m) out << dump_cfg(*program, m) << "\n";
  }
  return kExitOk;
}

int cmd_list(std::ostream& out) {
  for (const bench::Benchmark& b : bench::all()) out << b.id << "\t" << b.description << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"scoopw: explore and compare SCOOP execution models"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every command");
  RunConfig c;
  bool list_flag = false;
  app.add_flag("--list-benchmarks", list_flag, "List the built-in benchmarks and exit");

  auto add_program = [&](CLI::App* sub) {
    sub->add_option("program", c.program, "Source file or bench:<id>")->required();
  };
  auto add_limits = [&](CLI::App* sub) {
    sub->add_option("--max-states", c.max_states, "Stop after this many configurations (0: no limit)");
    sub->add_option("--time-budget", c.time_budget_ms, "Stop after this many milliseconds (0: no limit)");
  };
  auto add_hooks = [&](CLI::App* sub) {
    sub->add_flag("--fault-serve-newest", c.serve_newest, "Test hook: serve the newest pending request first")
        ->group("");
    sub->add_option("--prelock-order", c.prelock_order, "Test hook: ascending, descending or argument")->group("");
  };

  CLI::App* explore_cmd = app.add_subcommand("explore", "Explore the full state space under one model");
  explore_cmd->add_option("--model", c.model, "rq, qoq or dscoop")->capture_default_str();
  explore_cmd->add_option("--rules", c.rules, "Rule file (.json) or list such as deadlock,stuck,mutex:eat");
  explore_cmd->add_option("--depth", c.depth, "Maximum depth (0: no limit)");
  explore_cmd->add_option("--workers", c.workers, "Worker threads")->capture_default_str();
  explore_cmd->add_option("--strategy", c.strategy, "bfs, dfs or parallel")->capture_default_str();
  explore_cmd->add_option("--format", c.format, "text, json or dot")->capture_default_str();
  add_limits(explore_cmd);
  add_hooks(explore_cmd);
  add_program(explore_cmd);

  CLI::App* compare_cmd = app.add_subcommand("compare", "Explore under several models and compare verdicts");
  compare_cmd->add_option("--models", c.models, "Comma-separated model ids")->capture_default_str();
  compare_cmd->add_option("--rules", c.rules, "Rule file (.json) or list such as deadlock,stuck,mutex:eat");
  compare_cmd->add_option("--depth", c.depth, "Maximum depth (0: no limit)");
  compare_cmd->add_option("--workers", c.workers, "Worker threads")->capture_default_str();
  compare_cmd->add_option("--strategy", c.strategy, "bfs, dfs or parallel")->capture_default_str();
  compare_cmd->add_option("--format", c.format, "text or json")->capture_default_str();
  add_limits(compare_cmd);
  add_hooks(compare_cmd);
  add_program(compare_cmd);

  CLI::App* trace_cmd = app.add_subcommand("trace-check", "Check the request order guarantee along every trace");
  trace_cmd->add_option("--model", c.model, "rq, qoq or dscoop")->capture_default_str();
  trace_cmd->add_option("--depth", c.depth, "Trace length bound (default 500)");
  trace_cmd->add_option("--format", c.format, "text or json")->capture_default_str();
  add_limits(trace_cmd);
  add_hooks(trace_cmd);
  add_program(trace_cmd);

  CLI::App* compile_cmd = app.add_subcommand("compile", "Check a program and print its control-flow graphs");
  compile_cmd->add_option("--format", c.format, "text or json")->capture_default_str();
  add_program(compile_cmd);

  CLI::App* list_cmd = app.add_subcommand("list-benchmarks", "List the built-in benchmarks");

  for (int i = 1; i < argc; ++i) {
    if (std::string_view(argv[i]) == "--list-benchmarks") return cmd_list(out);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (list_cmd->parsed()) return cmd_list(out);
    if (explore_cmd->parsed()) return cmd_explore(c, out, err);
    if (compare_cmd->parsed()) return cmd_compare(c, out, err);
    if (trace_cmd->parsed()) return cmd_trace_check(c, out, err);
    if (compile_cmd->parsed()) return cmd_compile(c, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace scoopw
