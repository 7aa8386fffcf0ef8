#include "ctd/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "ctd/constraint.hpp"
#include "ctd/coverage.hpp"
#include "ctd/cycles.hpp"
#include "ctd/generator.hpp"
#include "ctd/instantiate.hpp"
#include "ctd/plan_io.hpp"
#include "ctd/space.hpp"

namespace ctd::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string percent_text(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", p);
  return buf;
}

/// Output format: the flag, else $CTD_FORMAT, else `fallback`.
std::string resolve_format(const std::string& flag, const std::string& fallback,
                           std::initializer_list<const char*> allowed) {
  std::string format = flag;
  if (format.empty()) {
    const char* env = std::getenv("CTD_FORMAT");
    format = env ? env : fallback;
  }
  for (const char* a : allowed) {
    if (format == a) return format;
  }
  // An environment default that does not apply to this command is ignored.
  if (flag.empty()) return fallback;
  throw UsageError("unsupported format '" + format + "'");
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
  return in;
}

/// Writes through `body` to `path`, or to `out` when path is empty.
void emit(const std::string& path, std::ostream& out,
          const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    body(out);
    return;
  }
  std::ofstream file(path);
  if (!file) throw std::ios_base::failure("cannot write '" + path + "'");
  body(file);
  if (!file) throw std::ios_base::failure("failed writing '" + path + "'");
}

std::vector<Test> read_plan(const std::string& path, const Model& model) {
  auto in = open_input(path);
  return io::read_plan_csv(in, model);
}

int cmd_validate(const std::string& model_path, std::ostream& out) {
  const Model model = load_model(model_path);
  const ValidationReport report = validate_model(model);
  for (const auto& e : report.errors) out << "error: " << e << '\n';
  for (const auto& w : report.warnings) out << "warning: " << w << '\n';
  if (report.ok()) out << "OK: " << model.attribute_count() << " attributes\n";
  return report.ok() ? kExitOk : kExitDomain;
}

int cmd_count(const std::string& model_path, const std::string& format_flag, std::ostream& out) {
  const std::string format = resolve_format(format_flag, "text", {"text", "json"});
  const CompiledModel space(load_model(model_path));
  const Model& model = space.model();

  nlohmann::json doc = {{"schema_version", io::kSchemaVersion},
                        {"cartesian", cartesian_count(model).str()},
                        {"legal", space.legal_count().str()}};
  std::ostringstream text;
  text << "cartesian: " << cartesian_count(model) << '\n'
       << "legal: " << space.legal_count() << '\n';
  for (int t = 2; t <= 3; ++t) {
    if (static_cast<std::size_t>(t) > model.attribute_count()) break;
    const RequirementSet reqs = filter_feasible(generate_requirements(model, t), space);
    const std::size_t feasible = feasible_only(reqs).size();
    text << "t=" << t << " requirements: " << reqs.size() << '\n'
         << "t=" << t << " feasible: " << feasible << '\n';
    doc["t" + std::to_string(t)] = {{"requirements", reqs.size()}, {"feasible", feasible}};
  }
  if (format == "json") {
    out << doc.dump(2) << '\n';
  } else {
    out << text.str();
  }
  return kExitOk;
}

struct GenerateArgs {
  std::string model;
  int t = 2;
  std::optional<std::size_t> budget;
  std::uint64_t seed = 0;
  bool random_ties = false;
  std::string format;
  std::string output;
};

int cmd_generate(const GenerateArgs& args, std::ostream& out, std::ostream& err) {
  const std::string format = resolve_format(args.format, "csv", {"csv", "json"});
  const CompiledModel space(load_model(args.model));
  GenerateOptions options;
  options.t = args.t;
  options.budget = args.budget;
  options.seed = args.seed;
  options.randomized_ties = args.random_ties;
  const TestPlan plan = generate_plan(space, options);

  emit(args.output, out, [&](std::ostream& o) {
    if (format == "json") {
      o << io::plan_to_json(space.model(), plan).dump(2) << '\n';
    } else {
      io::write_plan_csv(o, space.model(), plan.tests);
    }
  });

  std::ostream& summary = args.output.empty() ? err : out;
  summary << "tests: " << plan.size() << '\n'
          << "coverage: " << percent_text(plan.percent()) << " (" << plan.covered << '/'
          << plan.total_feasible << ")\n"
          << "partial: " << (plan.partial ? "true" : "false") << '\n';
  if (plan.partial) summary << "warning: budget reached before full coverage\n";
  return kExitOk;
}

int cmd_analyze(const std::string& model_path, const std::string& plan_path, int t,
                std::optional<std::size_t> max_missing, const std::string& format_flag,
                std::ostream& out) {
  const std::string format = resolve_format(format_flag, "text", {"text", "json"});
  const CompiledModel space(load_model(model_path));
  const std::vector<Test> tests = read_plan(plan_path, space.model());
  const CoverageReport report = coverage_of(space, tests, t);
  if (format == "json") {
    out << io::report_to_json(space.model(), report, max_missing).dump(2) << '\n';
  } else {
    io::write_report_text(out, space.model(), report, max_missing);
  }
  return kExitOk;
}

struct AugmentArgs {
  std::string model;
  std::string plan;
  std::string results;
  int t = 2;
  std::size_t n = 1;
  std::uint64_t seed = 0;
  std::string format;
  std::string output;
};

int cmd_augment(const AugmentArgs& args, std::ostream& out, std::ostream& err) {
  const std::string format = resolve_format(args.format, "csv", {"csv", "json"});
  const CompiledModel space(load_model(args.model));
  const Model& model = space.model();
  const std::vector<Test> plan_tests = read_plan(args.plan, model);

  std::vector<std::vector<std::string>> plan_labels;
  for (const Test& t : plan_tests) plan_labels.push_back(model.labels(t));
  auto results_in = open_input(args.results);
  const auto verdicts = io::read_results_csv(results_in, plan_labels);

  // A row passes when its last recorded verdict is PASS.
  std::vector<std::optional<io::Verdict>> last(plan_tests.size());
  for (const auto& v : verdicts) last[v.row] = v.verdict;
  std::vector<Test> passed;
  for (std::size_t i = 0; i < plan_tests.size(); ++i) {
    if (last[i] == io::Verdict::Pass) passed.push_back(plan_tests[i]);
  }

  const AugmentResult result = augment_plan(space, args.t, passed, args.n, args.seed);

  emit(args.output, out, [&](std::ostream& o) {
    if (format == "json") {
      o << io::plan_to_json(model, result.plan).dump(2) << '\n';
    } else {
      io::write_plan_csv(o, model, result.plan.tests);
    }
  });

  std::ostream& summary = args.output.empty() ? err : out;
  summary << "passed: " << passed.size() << '\n'
          << "residual before: " << result.residual_before << '\n'
          << "new tests: " << result.plan.size() << '\n'
          << "residual after: " << result.residual_after << '\n'
          << "coverage: " << percent_text(result.plan.percent()) << " (" << result.plan.covered
          << '/' << result.plan.total_feasible << ")\n";
  if (!result.illegal_passed.empty()) {
    summary << "warning: " << result.illegal_passed.size()
            << " passed tests are outside the legal space and earned no credit\n";
  }
  return kExitOk;
}

int cmd_project(const std::string& model_path, const std::vector<std::string>& fixes,
                std::optional<std::size_t> limit, std::ostream& out) {
  const CompiledModel space(load_model(model_path));
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& fix : fixes) {
    const auto eq = fix.find('=');
    if (eq == std::string::npos) throw UsageError("--fix expects Attr=Value, got '" + fix + "'");
    pairs.emplace_back(fix.substr(0, eq), fix.substr(eq + 1));
  }
  const Bdd projected = space.project(pairs);
  io::write_plan_csv(out, space.model(), space.enumerate(projected, limit));
  return kExitOk;
}

int cmd_instantiate(const std::string& model_path, const std::string& plan_path,
                    std::uint64_t seed, const std::vector<std::string>& free_specs,
                    const std::string& format_flag, const std::string& output, std::ostream& out) {
  const std::string format = resolve_format(format_flag, "csv", {"csv", "json"});
  const Model model = load_model(model_path);
  const ValidationReport report = validate_model(model);
  if (!report.ok()) throw ModelError("invalid model: " + report.errors.front());
  const std::vector<Test> tests = read_plan(plan_path, model);

  std::vector<FreeAttribute> free_attrs;
  for (const auto& spec : free_specs) {
    // name=lo:hi
    const auto eq = spec.find('=');
    const auto colon = spec.find(':', eq == std::string::npos ? 0 : eq);
    if (eq == std::string::npos || colon == std::string::npos) {
      throw UsageError("--free expects name=lo:hi, got '" + spec + "'");
    }
    try {
      free_attrs.push_back({spec.substr(0, eq),
                            {std::stoll(spec.substr(eq + 1, colon - eq - 1)),
                             std::stoll(spec.substr(colon + 1))}});
    } catch (const std::logic_error&) {
      throw UsageError("--free bounds must be integers in '" + spec + "'");
    }
  }

  ConcretePlan plan = instantiate(model, tests, seed);
  // Free columns draw from their own stream so model columns do not shift.
  plan = randomize_free(model, std::move(plan), free_attrs, seed ^ 0x9E3779B97F4A7C15ull);
  emit(output, out, [&](std::ostream& o) {
    if (format == "json") {
      o << io::concrete_to_json(plan).dump(2) << '\n';
    } else {
      io::write_concrete_csv(o, plan);
    }
  });
  return kExitOk;
}

int cmd_dump(const std::string& model_path, std::ostream& out) {
  const CompiledModel space(load_model(model_path));
  out << "# root " << space.legal().id() << " (0=false, 1=true)\n";
  space.manager().dump(space.legal(), out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Combinatorial test design: model validation, coverage analysis, plan generation",
               "ctd"};
  app.require_subcommand(1);

  std::string model_path;
  std::string plan_path;
  std::string results_path;
  std::string format;
  std::string output;
  int t = 2;
  std::uint64_t seed = 0;

  auto* validate = app.add_subcommand("validate", "Check a model and report errors/warnings");
  validate->add_option("model", model_path, "Model JSON file")->required();

  auto* count = app.add_subcommand("count", "Cartesian, legal and requirement counts");
  count->add_option("model", model_path, "Model JSON file")->required();
  count->add_option("--format", format, "text|json");

  GenerateArgs gen;
  std::size_t budget = 0;
  auto* generate = app.add_subcommand("generate", "Generate a covering test plan");
  generate->add_option("model", gen.model, "Model JSON file")->required();
  generate->add_option("--t", gen.t, "Interaction strength")->default_val(2);
  auto* budget_opt = generate->add_option("--budget", budget, "Maximum number of tests")
                         ->check(CLI::PositiveNumber);
  generate->add_option("--seed", gen.seed, "Seed for randomized tie-breaking")->default_val(0);
  generate->add_flag("--random-ties", gen.random_ties, "Break score ties randomly");
  generate->add_option("--format", gen.format, "csv|json (default $CTD_FORMAT or csv)");
  generate->add_option("-o,--output", gen.output, "Output file (default stdout)");

  std::optional<std::size_t> max_missing;
  auto* analyze = app.add_subcommand("analyze", "Measure coverage of an existing plan");
  analyze->add_option("model", model_path, "Model JSON file")->required();
  analyze->add_option("plan", plan_path, "Plan CSV")->required();
  analyze->add_option("--t", t, "Interaction strength")->default_val(2);
  analyze->add_option("--max-missing", max_missing, "Cap on listed missing requirements");
  analyze->add_option("--format", format, "text|json");

  AugmentArgs aug;
  auto* augment = app.add_subcommand("augment", "Add at most n tests after a test cycle");
  augment->add_option("model", aug.model, "Model JSON file")->required();
  augment->add_option("plan", aug.plan, "Executed plan CSV")->required();
  augment->add_option("results", aug.results, "Results CSV (test,verdict)")->required();
  augment->add_option("--t", aug.t, "Interaction strength")->default_val(2);
  augment->add_option("--n", aug.n, "Maximum number of new tests")
      ->required()
      ->check(CLI::PositiveNumber);
  augment->add_option("--seed", aug.seed, "Seed")->default_val(0);
  augment->add_option("--format", aug.format, "csv|json");
  augment->add_option("-o,--output", aug.output, "Output file (default stdout)");

  std::vector<std::string> fixes;
  std::optional<std::size_t> limit;
  auto* project = app.add_subcommand("project", "Enumerate legal tests with fixed values");
  project->add_option("model", model_path, "Model JSON file")->required();
  project->add_option("--fix", fixes, "Attr=Value (repeatable)");
  project->add_option("--limit", limit, "Maximum number of rows");

  std::vector<std::string> free_specs;
  auto* inst = app.add_subcommand("instantiate", "Replace subdomain values by concrete values");
  inst->add_option("model", model_path, "Model JSON file")->required();
  inst->add_option("plan", plan_path, "Plan CSV")->required();
  inst->add_option("--seed", seed, "Seed")->default_val(0);
  inst->add_option("--free", free_specs, "Extra random column name=lo:hi (repeatable)");
  inst->add_option("--format", format, "csv|json");
  inst->add_option("-o,--output", output, "Output file (default stdout)");

  auto* dump = app.add_subcommand("dump", "Print the legal-space BDD as an adjacency list");
  dump->add_option("model", model_path, "Model JSON file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "ctd: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(model_path, out);
    if (*count) return cmd_count(model_path, format, out);
    if (*generate) {
      if (*budget_opt) gen.budget = budget;
      return cmd_generate(gen, out, err);
    }
    if (*analyze) return cmd_analyze(model_path, plan_path, t, max_missing, format, out);
    if (*augment) return cmd_augment(aug, out, err);
    if (*project) return cmd_project(model_path, fixes, limit, out);
    if (*inst) return cmd_instantiate(model_path, plan_path, seed, free_specs, format, output, out);
    if (*dump) return cmd_dump(model_path, out);
  } catch (const UsageError& e) {
    err << "ctd: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    err << "ctd: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ModelError& e) {
    err << "ctd: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "ctd: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace ctd::cli
