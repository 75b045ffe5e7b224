#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "isac_mi/cli.hpp"

int main(int argc, char** argv) {
  namespace cli = isac_mi::cli;
  CLI::App app{"Mutual-information evaluation of ISAC and FDSAC systems"};
  app.set_version_flag("--version", std::string(cli::version()));
  app.require_subcommand(1);

  std::string config, out_dir = ".", mode = "both", fault;

  auto* region = app.add_subcommand("region", "Trace rate regions");
  region->add_option("--config", config, "Scenario JSON")->required();
  region->add_option("--out", out_dir, "Output directory");
  region->add_option("--mode", mode, "isac, fdsac or both")->check(CLI::IsMember({"isac", "fdsac", "both"}));

  auto* curves = app.add_subcommand("curves", "Rates over the power sweep");
  curves->add_option("--config", config, "Scenario JSON")->required();
  curves->add_option("--out", out_dir, "Output directory");

  auto* slopes = app.add_subcommand("slopes", "High-SNR slopes");
  slopes->add_option("--config", config, "Scenario JSON")->required();
  slopes->add_option("--out", out_dir, "Output directory");

  auto* validate = app.add_subcommand("validate", "Run the oracle and property suite");
  validate->add_option("--inject-fault", fault)->check(CLI::IsMember({"water-fill-sign"}))->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitConfig;
  }

  if (*region) return cli::cmd_region(config, mode, out_dir, std::cout, std::cerr);
  if (*curves) return cli::cmd_curves(config, out_dir, std::cout, std::cerr);
  if (*slopes) return cli::cmd_slopes(config, out_dir, std::cout, std::cerr);
  isac_mi::ValidationOptions opts;
  opts.inject_water_fill_sign_error = fault == "water-fill-sign";
  return cli::cmd_validate(opts, std::cout, std::cerr);
}
