// Copyright 2026 The Ridechain Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ridechain/cli.hpp"
#include "ridechain/log.hpp"

int main(int argc, char** argv) {
  namespace cli = ridechain::cli;

  CLI::App app{"Decentralized ride-sharing protocol simulator"};
  app.require_subcommand(1);
  app.footer("Log verbosity: RIDECHAIN_LOG=trace|debug|info|warn|error|off (default warn).");

  std::string scenario_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  auto* run = app.add_subcommand("run", "Run a scenario and write report.json, trace.jsonl and timing.json");
  run->add_option("--scenario", scenario_path, "Scenario file (JSON)")->required();
  run->add_option("--seed", seed, "Seed; overrides the scenario's own seed");
  run->add_option("--out", out_dir, "Output directory")->required();

  std::vector<std::size_t> ks{4, 8, 16, 32};
  std::size_t reps = 20;
  std::uint64_t bench_seed = 1;
  bool as_json = false;
  auto* bench = app.add_subcommand("bench-zksm", "Time set-membership setup, audit, prove and verify");
  bench->add_option("--k", ks, "Set sizes, comma separated")->delimiter(',');
  bench->add_option("--reps", reps, "Repetitions per set size");
  bench->add_option("--seed", bench_seed, "Seed for the random sets");
  bench->add_flag("--json", as_json, "Print JSON instead of a table");

  std::string trace_path;
  auto* verify = app.add_subcommand("verify-trace", "Re-check a trace written by run");
  verify->add_option("trace", trace_path, "trace.jsonl path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitUsage;
  }

  ridechain::log::logger();
  try {
    if (*run) return cli::cmd_run(scenario_path, seed, out_dir, std::cout, std::cerr);
    if (*bench) return cli::cmd_bench_zksm(ks, reps, bench_seed, as_json, std::cout, std::cerr);
    if (*verify) return cli::cmd_verify_trace(trace_path, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitEngine;
  }
  return cli::kExitUsage;
}
