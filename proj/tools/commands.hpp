#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "manifest.hpp"

namespace pfsa::cli {

// Each command's configuration doubles as its `--config` document and as the
// `config` field of its run manifest. Keys are the long flag names with
// dashes replaced by underscores.

struct GenTracesConfig {
  std::size_t n_vars = 5;
  std::size_t commands = 8;
  std::size_t spacing = 1;
  std::string kind = "full";
  std::size_t count = 100;
  std::uint64_t seed = 0;
  bool curriculum = false;
  std::size_t stage_samples = 15000;
  std::string output = "traces.jsonl";
};

struct DecayConfig {
  std::string scenario = "joint-absorbing";
  std::size_t cycles = 20;
  std::size_t steps = 100;
  std::size_t reset_every = 8;
  int significand_bits = 53;
  int min_exponent = -1022;
  std::uint64_t seed = 0;
  std::string output = "decay.csv";
};

struct SimulateConfig {
  std::string automaton;
  std::size_t steps = 20;
  std::uint64_t seed = 0;
  // Comma-separated symbol names. When set, the log filters this fixed
  // observation sequence instead of sampling a trajectory.
  std::string symbols;
  std::string output = "simulation.jsonl";
};

struct VerifyConfig {
  std::size_t max_n = 5;
  std::size_t steps = 40;
  std::size_t samples = 1000;
  std::size_t traces = 10000;
  std::uint64_t seed = 20240;
  bool inject_fault = false;
  std::string report = "verify_report.json";
};

Json to_json(const GenTracesConfig& c);
Json to_json(const DecayConfig& c);
Json to_json(const SimulateConfig& c);
Json to_json(const VerifyConfig& c);

// Strict readers: unknown keys and wrongly typed values throw
// std::invalid_argument; missing keys keep the defaults above.
void from_json(const Json& doc, GenTracesConfig& c);
void from_json(const Json& doc, DecayConfig& c);
void from_json(const Json& doc, SimulateConfig& c);
void from_json(const Json& doc, VerifyConfig& c);

// Runs a command, writes its outputs and manifest, and returns the exit code
// (0 on success, 1 when verification fails). Progress goes to `log`.
int gen_traces(const GenTracesConfig& c, std::ostream& log);
int decay(const DecayConfig& c, std::ostream& log);
int simulate(const SimulateConfig& c, std::ostream& log);
int verify(const VerifyConfig& c, std::ostream& log);

// Dispatches on the manifest command name.
int run_command(const std::string& command, const Json& config, std::ostream& log);

// Reruns the manifest's command (optionally writing to `output` instead of
// the recorded path) and compares output digests. Returns 0 when every digest
// matches and 1 otherwise.
int replay(const std::string& manifest_path, const std::string& output, std::ostream& log);

}  // namespace pfsa::cli
