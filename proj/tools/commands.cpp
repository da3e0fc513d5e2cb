#include "commands.hpp"

#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "pfsa/automaton_io.hpp"
#include "pfsa/dataset.hpp"
#include "pfsa/decay.hpp"
#include "pfsa/errors.hpp"
#include "pfsa/joint_tracker.hpp"
#include "pfsa/repl_trace.hpp"
#include "pfsa/verify/acceptance.hpp"

namespace pfsa::cli {

namespace {

// Reads known keys from a config document and rejects everything else.
class Reader {
 public:
  explicit Reader(const Json& doc) : doc_(doc) {
    if (!doc_.is_object()) {
      throw std::invalid_argument("config must be a JSON object");
    }
  }

  template <class T>
  Reader& field(const char* key, T& value) {
    known_.insert(key);
    if (const auto it = doc_.find(key); it != doc_.end()) {
      try {
        value = it->template get<T>();
      } catch (const Json::exception&) {
        throw std::invalid_argument(fmt::format("config key '{}' has the wrong type", key));
      }
    }
    return *this;
  }

  void finish() const {
    for (auto it = doc_.begin(); it != doc_.end(); ++it) {
      if (!known_.contains(it.key())) {
        throw std::invalid_argument(fmt::format("unknown config key '{}'", it.key()));
      }
    }
  }

 private:
  const Json& doc_;
  std::set<std::string> known_;
};

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  return out;
}

void close_output(std::ofstream& out, const std::string& path) {
  out.close();
  if (!out) {
    throw std::runtime_error("failed writing '" + path + "'");
  }
}

void finish_run(const std::string& command, const Json& config, std::uint64_t seed,
                const std::string& output, std::ostream& log) {
  RunManifest manifest;
  manifest.command = command;
  manifest.config = config;
  manifest.seed = seed;
  manifest.outputs.push_back({output, sha256_file(output)});
  const std::string path = manifest_path_for(output);
  write_manifest(path, manifest);
  log << "manifest: " << path << '\n';
}

std::vector<std::string> split_names(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) {
      throw std::invalid_argument("empty symbol name in '" + list + "'");
    }
    out.push_back(item);
  }
  return out;
}

Json belief_json(const Belief& b) {
  Json out = Json::array();
  for (std::size_t i = 0; i < b.size(); ++i) {
    out.push_back(b[i]);
  }
  return out;
}

}  // namespace

Json to_json(const GenTracesConfig& c) {
  return {{"n_vars", c.n_vars},       {"commands", c.commands}, {"spacing", c.spacing},
          {"kind", c.kind},           {"count", c.count},       {"seed", c.seed},
          {"curriculum", c.curriculum}, {"stage_samples", c.stage_samples},
          {"output", c.output}};
}

Json to_json(const DecayConfig& c) {
  return {{"scenario", c.scenario},
          {"cycles", c.cycles},
          {"steps", c.steps},
          {"reset_every", c.reset_every},
          {"significand_bits", c.significand_bits},
          {"min_exponent", c.min_exponent},
          {"seed", c.seed},
          {"output", c.output}};
}

Json to_json(const SimulateConfig& c) {
  return {{"automaton", c.automaton}, {"steps", c.steps},   {"seed", c.seed},
          {"symbols", c.symbols},     {"output", c.output}};
}

Json to_json(const VerifyConfig& c) {
  return {{"max_n", c.max_n},     {"steps", c.steps}, {"samples", c.samples},
          {"traces", c.traces},   {"seed", c.seed},   {"inject_fault", c.inject_fault},
          {"report", c.report}};
}

void from_json(const Json& doc, GenTracesConfig& c) {
  Reader(doc)
      .field("n_vars", c.n_vars)
      .field("commands", c.commands)
      .field("spacing", c.spacing)
      .field("kind", c.kind)
      .field("count", c.count)
      .field("seed", c.seed)
      .field("curriculum", c.curriculum)
      .field("stage_samples", c.stage_samples)
      .field("output", c.output)
      .finish();
}

void from_json(const Json& doc, DecayConfig& c) {
  Reader(doc)
      .field("scenario", c.scenario)
      .field("cycles", c.cycles)
      .field("steps", c.steps)
      .field("reset_every", c.reset_every)
      .field("significand_bits", c.significand_bits)
      .field("min_exponent", c.min_exponent)
      .field("seed", c.seed)
      .field("output", c.output)
      .finish();
}

void from_json(const Json& doc, SimulateConfig& c) {
  Reader(doc)
      .field("automaton", c.automaton)
      .field("steps", c.steps)
      .field("seed", c.seed)
      .field("symbols", c.symbols)
      .field("output", c.output)
      .finish();
}

void from_json(const Json& doc, VerifyConfig& c) {
  Reader(doc)
      .field("max_n", c.max_n)
      .field("steps", c.steps)
      .field("samples", c.samples)
      .field("traces", c.traces)
      .field("seed", c.seed)
      .field("inject_fault", c.inject_fault)
      .field("report", c.report)
      .finish();
}

int gen_traces(const GenTracesConfig& c, std::ostream& log) {
  std::vector<TraceConfig> configs;
  if (c.curriculum) {
    for (auto& stage : curriculum(c.stage_samples, c.seed)) {
      configs.insert(configs.end(), stage.configs.begin(), stage.configs.end());
    }
  } else {
    if (c.count == 0) {
      throw std::invalid_argument("--count must be at least 1");
    }
    TraceConfig base;
    base.n_vars = c.n_vars;
    base.n_commands = c.commands;
    base.reveal_spacing = c.spacing;
    base.command_kind = parse_command_kind(c.kind);
    validate(base);
    for (std::size_t i = 0; i < c.count; ++i) {
      configs.push_back(indexed_config(base, c.seed, i));
    }
  }
  std::ofstream out = open_output(c.output);
  std::size_t written = 0;
  // Generate and write one at a time so large curricula stay small in memory.
  for (const auto& config : configs) {
    const Trace trace = generate(config);
    written += export_dataset(std::span<const Trace>(&trace, 1), out);
  }
  close_output(out, c.output);
  log << fmt::format("wrote {} traces to {}\n", written, c.output);
  finish_run("gen-traces", to_json(c), c.seed, c.output, log);
  return 0;
}

int decay(const DecayConfig& c, std::ostream& log) {
  ScenarioRequest request;
  request.kind = parse_scenario_kind(c.scenario);
  request.cycles = c.cycles;
  request.steps = c.steps;
  request.reset_every = c.reset_every;
  request.seed = c.seed;
  if (c.significand_bits < 1 || c.significand_bits > 53) {
    throw std::invalid_argument("--significand-bits must lie in [1, 53]");
  }
  if (c.min_exponent < -1022 || c.min_exponent > 0) {
    throw std::invalid_argument("--min-exponent must lie in [-1022, 0]");
  }
  const PrecisionModel precision{c.significand_bits, c.min_exponent};
  const DecayReport report = run_and_report(request, precision);
  std::ofstream out = open_output(c.output);
  write_decay_csv(out, report);
  close_output(out, c.output);
  log << fmt::format("wrote {} rows to {}\n", report.records.size(), c.output);
  if (report.first_underflow_step) {
    log << fmt::format("first underflow at step {} (cycle {})\n", *report.first_underflow_step,
                       *report.first_underflow_cycle);
  } else {
    log << "no underflow\n";
  }
  finish_run("decay", to_json(c), c.seed, c.output, log);
  return 0;
}

int simulate(const SimulateConfig& c, std::ostream& log) {
  if (c.automaton.empty()) {
    throw std::invalid_argument("--automaton is required");
  }
  const Pfsa automaton = read_automaton_file(c.automaton);
  Belief belief = Belief::one_hot(automaton.states(), automaton.initial_state());

  std::vector<std::size_t> symbols;
  std::vector<std::size_t> states;
  if (!c.symbols.empty()) {
    for (const auto& name : split_names(c.symbols)) {
      symbols.push_back(automaton.symbol_index(name));
    }
  } else {
    Rng rng(c.seed);
    const Trajectory path = sample_trajectory(automaton, c.steps, rng);
    symbols = path.symbols;
    states = path.states;
  }

  std::ofstream out = open_output(c.output);
  auto write = [&](Json row) {
    out << row.dump() << '\n';
  };
  Json first;
  first["step"] = 0;
  first["symbol"] = nullptr;
  first["state"] = states.empty() ? Json(nullptr) : Json(states[0]);
  first["belief"] = belief_json(belief);
  // The environment's symbol choice is part of the experiment; say which.
  first["policy"] = c.symbols.empty() ? "uniform" : "fixed";
  write(first);
  for (std::size_t t = 0; t < symbols.size(); ++t) {
    const double s = survival(automaton, belief, symbols[t]);
    belief = belief_update(automaton, belief, symbols[t]);
    Json row;
    row["step"] = t + 1;
    row["symbol"] = automaton.symbol(symbols[t]).name;
    row["state"] = states.empty() ? Json(nullptr) : Json(states[t + 1]);
    row["survival"] = s;
    row["belief"] = belief_json(belief);
    write(row);
  }
  close_output(out, c.output);
  log << fmt::format("wrote {} belief rows to {}\n", symbols.size() + 1, c.output);
  finish_run("simulate", to_json(c), c.seed, c.output, log);
  return 0;
}

int verify(const VerifyConfig& c, std::ostream& log) {
  verify::VerifyOptions options;
  options.max_n = c.max_n;
  options.steps = c.steps;
  options.samples = c.samples;
  options.traces = c.traces;
  options.seed = c.seed;
  options.inject_fault = c.inject_fault;
  if (options.max_n < 2 || options.max_n > 8) {
    throw std::invalid_argument("--max-n must lie in [2, 8]");
  }
  const auto results = verify::run_acceptance(options);
  Json report = Json::array();
  bool all = true;
  for (const auto& r : results) {
    log << verify::format_result(r) << '\n';
    // Timings are left out of the report so reruns are byte-identical.
    report.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    all = all && r.passed;
  }
  std::ofstream out = open_output(c.report);
  out << report.dump(2) << '\n';
  close_output(out, c.report);
  finish_run("verify", to_json(c), c.seed, c.report, log);
  return all ? 0 : 1;
}

int run_command(const std::string& command, const Json& config, std::ostream& log) {
  if (command == "gen-traces") {
    GenTracesConfig c;
    from_json(config, c);
    return gen_traces(c, log);
  }
  if (command == "decay") {
    DecayConfig c;
    from_json(config, c);
    return decay(c, log);
  }
  if (command == "simulate") {
    SimulateConfig c;
    from_json(config, c);
    return simulate(c, log);
  }
  if (command == "verify") {
    VerifyConfig c;
    from_json(config, c);
    return verify(c, log);
  }
  throw std::invalid_argument("manifest names unknown command '" + command + "'");
}

int replay(const std::string& manifest_path, const std::string& output, std::ostream& log) {
  const RunManifest manifest = read_manifest(manifest_path);
  if (manifest.version != kVersion) {
    log << fmt::format("warning: manifest version {} differs from tool version {}\n",
                       manifest.version, kVersion);
  }
  Json config = manifest.config;
  const char* output_key = manifest.command == "verify" ? "report" : "output";
  std::string target = config.value(output_key, std::string());
  if (!output.empty()) {
    config[output_key] = output;
    target = output;
  }
  const int status = run_command(manifest.command, config, log);
  if (manifest.outputs.empty()) {
    throw std::runtime_error("manifest lists no outputs");
  }
  const std::string digest = sha256_file(target);
  const bool same = digest == manifest.outputs.front().sha256;
  log << fmt::format("{}: {} ({})\n", same ? "match" : "MISMATCH", target, digest);
  if (!same) {
    return 1;
  }
  return manifest.command == "verify" ? status : 0;
}

}  // namespace pfsa::cli
