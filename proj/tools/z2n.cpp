#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "z2n/tasks.hpp"

using namespace z2n::io;

int main(int argc, char** argv) {
  CLI::App app{"Checkers and constructions for representations of Z2^n-graded Harish-Chandra pairs"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<double> tol;
  std::optional<int> level_cap;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> format;
  std::optional<std::string> config_path;
  bool skip_validate = false;
  app.add_option("--tol", tol, "Tolerance override")->check(CLI::PositiveNumber);
  app.add_option("--level-cap", level_cap, "PBW level cap")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", seed, "Random seed");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--config", config_path, "Config file (default: $Z2N_CONFIG)");
  app.add_flag("--skip-validate", skip_validate, "Do not axiom-check loaded algebras");

  TaskSpec task;
  std::string file;
  auto with_file = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("file", file, "Input file")->required()->check(CLI::ExistingFile);
    return sub;
  };
  auto add_param = [&](CLI::App* sub, const std::string& flag, const std::string& key, const std::string& help) {
    sub->add_option_function<std::string>(flag, [&task, key](const std::string& v) { task.params[key] = v; }, help);
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("-o,--output", task.output, "Output file")->required();
  };

  auto* grading = app.add_subcommand("check-grading", "Verify the alpha cocycle and lifting identities");
  add_param(grading, "--n", "n", "Rank n");
  add_param(grading, "--twist-mask", "twist_mask", "Character mask for alpha' = chi alpha");

  with_file("check-algebra", "Check the color Lie algebra axioms");
  with_file("check-perfect", "Check the perfectness condition");
  with_file("check-rep", "Check a unitary representation");
  with_file("check-prerep", "Check a pre-representation");
  add_output(with_file("stability-extend", "Extend a pre-representation to the even-like sectors"));
  add_param(with_file("check-pd", "Check positive definiteness of a matrix coefficient or table"), "--level",
            "level", "PBW level of the sample set");
  add_output(with_file("gns-construct", "Reconstruct a cyclic representation"));
  with_file("gns-roundtrip", "Matrix coefficient, reconstruction and equivalence");
  auto* tw = with_file("twist-rep", "Apply the alpha-twist by a character");
  add_param(tw, "--mask", "mask", "Character mask");
  add_output(tw);

  auto* gen = app.add_subcommand("generate", "Write a bundled example");
  gen->add_option("name", file, "Example name")->required()->check(CLI::IsMember(example_names()));
  add_output(gen);
  add_param(gen, "--dims", "dims", "Comma-separated dimensions per degree");
  add_param(gen, "--n", "n", "Rank n (random-rep)");
  add_param(gen, "--kind", "kind", "algebra or prerep (counterexample-n2)");
  add_param(gen, "--extras", "extras", "Extra group generators (random-rep)");
  add_param(gen, "--max-dim", "max_dim", "Maximum total dimension (random-rep)");
  add_param(gen, "--perfect", "perfect", "Require a perfect algebra (random-rep)");
  add_param(gen, "--plus-trivial", "plus_trivial", "Add the trivial summand (random-rep)");

  auto* batch = with_file("batch", "Run a batch file of tasks");
  bool sequential = false;
  batch->add_flag("--sequential", sequential, "Run tasks one at a time");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  SessionConfig config;
  try {
    if (!config_path) {
      if (const char* env = std::getenv("Z2N_CONFIG"); env && *env) config_path = env;
    }
    if (config_path) config = load_config(*config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  if (tol) config.tol = tol;
  if (level_cap) config.level_cap = *level_cap;
  if (seed) config.seed = *seed;
  if (format) config.format = *format == "json" ? Format::Json : Format::Text;
  if (skip_validate) config.skip_validate = true;

  task.command = app.get_subcommands().front()->get_name();
  if (!file.empty()) task.inputs.push_back(file);
  if (task.command == "batch" && sequential) task.params["parallel"] = "0";

  const TaskResult result = run_task(config, task);
  std::cout << format_result(result, config.format);
  if (!result.error.empty()) std::cerr << "error: " << result.error << "\n";
  return result.exit_code;
}
