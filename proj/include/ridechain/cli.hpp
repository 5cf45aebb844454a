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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ridechain/agents.hpp"

namespace ridechain::cli {

using json = nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitSchema = 2;
inline constexpr int kExitEngine = 3;

inline constexpr int kScenarioVersion = 1;
inline constexpr int kReportVersion = 1;
inline constexpr int kTraceVersion = 1;

struct ScenarioFile {
  std::string name;
  std::optional<std::uint64_t> seed;
  agents::Scenario scenario;
};

// Strict parse: unknown or mistyped fields throw Error(kScenarioError) with
// the JSON path of the offending value. The result is also validated.
ScenarioFile parse_scenario(const json& doc);
ScenarioFile load_scenario(const std::string& path);

json scenario_to_json(const ScenarioFile& file);

// Deterministic: no wall-clock values.
json build_report(const agents::SimulationResult& result, const std::string& name,
                  std::uint64_t seed);
// One JSON object per line: header, genesis, every event, final.
std::string build_trace(const agents::SimulationResult& result, std::uint64_t seed);
json build_timing(const agents::RunStats& stats);

struct TraceCheck {
  bool ok = true;
  std::string check;  // conservation, exclusivity, proof or format
  std::string message;
  std::size_t events = 0;
  std::size_t proofs = 0;
};

TraceCheck verify_trace(std::istream& in);

struct PhaseTiming {
  double mean_ms = 0;
  double stddev_ms = 0;
};

struct BenchRow {
  std::size_t k = 0;
  std::size_t reps = 0;
  PhaseTiming setup;
  PhaseTiming audit;
  PhaseTiming prove;
  PhaseTiming verify;
  std::size_t proof_bytes = 0;
  bool all_verified = true;
};

std::vector<BenchRow> bench_zksm(const std::vector<std::size_t>& ks, std::size_t reps,
                                 std::uint64_t seed);
void print_bench(std::ostream& out, const std::vector<BenchRow>& rows);
json bench_to_json(const std::vector<BenchRow>& rows);

// Command bodies; return process exit codes and write diagnostics to `err`.
int cmd_run(const std::string& scenario_path, std::optional<std::uint64_t> seed,
            const std::string& out_dir, std::ostream& out, std::ostream& err);
int cmd_verify_trace(const std::string& trace_path, std::ostream& out, std::ostream& err);
int cmd_bench_zksm(const std::vector<std::size_t>& ks, std::size_t reps, std::uint64_t seed,
                   bool as_json, std::ostream& out, std::ostream& err);

}  // namespace ridechain::cli
