#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bresse/app.hpp"
#include "bresse/errors.hpp"

int main(int argc, char** argv) {
  CLI::App cli{"Bresse beam lab: simulate, spectrum, sweep, certify, verify"};
  cli.require_subcommand(1, 1);

  std::string config_path;
  std::vector<std::string> sets;
  std::string out_dir;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "flat JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--set", sets, "override key=value (repeatable)");
    sub->add_option("--out", out_dir, "output directory (default $BRESSE_OUT or ./bresse_out)");
  };
  for (const char* name : {"simulate", "spectrum", "sweep", "certify", "verify"}) {
    add_common(cli.add_subcommand(name, std::string(name) + " run"));
  }
  CLI11_PARSE(cli, argc, argv);

  try {
    const bresse::Command cmd = bresse::parse_command(cli.get_subcommands().front()->get_name());
    std::optional<std::string> path;
    if (!config_path.empty()) path = config_path;
    bresse::RunConfig cfg = bresse::load_config(path, sets);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    const bresse::RunResult res = bresse::run(cmd, cfg);
    std::cout << res.headline << "\n";
    for (const auto& f : res.files) std::cout << "  wrote " << f << "\n";
    return res.exit_code;
  } catch (const bresse::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
