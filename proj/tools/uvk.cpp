// uvk: checker and evaluator for a small univalent-foundations language.
//
//   uvk check [files... | manifest.mf] [--universe-check strict|off] ...
//   uvk eval "expr" [--lib tier2] [--strategy compute|lazy] ...
//   uvk canonicity [--seed N] [--count N] [--inject-axiom]

#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uvk/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"uvk - minimal univalent type theory checker"};
  app.require_subcommand(1);

  uvk::CliConfig cfg;
  std::string universe_check;
  std::string strategy;
  std::vector<std::string> load_path_specs;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--universe-check", universe_check,
                    "strict (default) or off");
    cmd->add_option("--fuel", cfg.fuel, "evaluation step budget");
    cmd->add_option("--load-path", load_path_specs,
                    "PREFIX=DIR, repeatable, ordered");
    cmd->add_option("--lib", cfg.lib, "tier1 | tier2 | tier3");
    cmd->add_option("--manifest-dir", cfg.manifest_dir,
                    "directory holding tier manifests");
    cmd->add_flag("--json", cfg.json, "machine-readable output");
    cmd->add_flag("--transparent-all", cfg.transparent_all,
                  "unfold opaque constants during evaluation");
  };

  auto* check = app.add_subcommand("check", "check .uv files or a manifest");
  std::vector<std::string> files;
  check->add_option("files", files, "files or manifests to check");
  add_common(check);

  auto* eval = app.add_subcommand("eval", "normalize an expression");
  std::string expr;
  eval->add_option("expr", expr, "expression to evaluate")->required();
  eval->add_option("--strategy", strategy, "compute (default) or lazy");
  add_common(eval);

  auto* canon = app.add_subcommand("canonicity", "run the canonicity harness");
  uint64_t seed = 42;
  int count = 500;
  bool inject = false;
  canon->add_option("--seed", seed, "generator seed");
  canon->add_option("--count", count, "number of generated terms");
  canon->add_flag("--inject-axiom", inject,
                  "add one axiom-containing term to the corpus");
  add_common(canon);

  CLI11_PARSE(app, argc, argv);

  if (!universe_check.empty()) {
    cfg.mode_explicit = true;
    if (universe_check == "off")
      cfg.mode = uvk::UniverseMode::Off;
    else if (universe_check == "strict")
      cfg.mode = uvk::UniverseMode::Strict;
    else {
      std::cerr << "unknown --universe-check value: " << universe_check
                << "\n";
      return uvk::kIoError;
    }
  }
  if (!strategy.empty()) {
    if (strategy == "lazy")
      cfg.strategy = uvk::Strategy::Lazy;
    else if (strategy == "compute")
      cfg.strategy = uvk::Strategy::Compute;
    else {
      std::cerr << "unknown --strategy value: " << strategy << "\n";
      return uvk::kIoError;
    }
  }
  for (auto& spec : load_path_specs) {
    auto eq = spec.find('=');
    if (eq == std::string::npos) {
      std::cerr << "--load-path expects PREFIX=DIR\n";
      return uvk::kIoError;
    }
    cfg.load_paths.emplace_back(spec.substr(0, eq), spec.substr(eq + 1));
  }

  if (*check) return uvk::run_check(files, cfg);
  if (*eval) return uvk::run_eval(expr, cfg);
  if (*canon) return uvk::run_canonicity(seed, count, inject, cfg);
  return uvk::kIoError;
}
