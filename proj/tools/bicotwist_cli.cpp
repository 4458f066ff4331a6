#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "bicotwist/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"bicotwist: exact verification of bicovariant bimodules, Woronowicz braidings,\n"
               "invariant pseudo-Riemannian metrics and their 2-cocycle deformations"};
  app.require_subcommand(1);

  std::string target;
  bicotwist::RunOptions options;
  if (const char* seed_env = std::getenv("BICOTWIST_SEED"))
    options.seed = std::strtoul(seed_env, nullptr, 10);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("target", target,
                    "builtin fixture (FIX-TRIV, FIX-Z4, FIX-Z4-1dim, FIX-Z2xZ2, FIX-S3, "
                    "FIX-FS3) or path to an instance JSON file")
        ->required();
    sub->add_option("--format", options.format, "report format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--out", options.out_path, "also write the report to this file");
    sub->add_flag("--timings", options.timings,
                  "append wall-clock timings (excluded from deterministic output)");
  };

  add_common(app.add_subcommand("verify", "Hopf + Yetter-Drinfeld + bicovariance + cocycle"));
  add_common(app.add_subcommand("braiding", "construct and verify the braiding, print sigma"));
  add_common(app.add_subcommand("metrics", "metric checks and bi-invariant solution space"));
  add_common(app.add_subcommand("twist", "full cocycle-deformation suite"));
  add_common(app.add_subcommand("all", "every suite in order"));

  CLI11_PARSE(app, argc, argv);

  std::string command = app.get_subcommands().front()->get_name();
  std::string output;
  int code = bicotwist::run_command(command, target, options, &output);
  std::cout << output;
  return code;
}
