#pragma once

#include <string>
#include <vector>

#include "bresse/config.hpp"

namespace bresse {

enum class Command { simulate, spectrum, sweep, certify, verify };

/// Throws ConfigError("command") for unknown names.
Command parse_command(const std::string& name);
std::string command_name(Command c);

struct RunResult {
  int exit_code = 0;               // 0 ok, 1 a certify/verify check failed
  std::string summary;             // path of the JSON summary
  std::vector<std::string> files;  // every file written, summary included
  std::string headline;            // one-line human summary
};

/// Runs a subcommand and writes its reports into cfg.out_dir:
///   simulate  energy.csv, energy.svg, simulate.json
///   spectrum  spectrum.csv, spectrum.svg, spectrum.json
///   sweep     sweep.csv, sweep.svg, sweep.json
///   certify   certificate.json
///   verify    verify.json
RunResult run(Command cmd, const RunConfig& cfg);

}  // namespace bresse
