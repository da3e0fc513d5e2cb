// pfsa: dataset generation, automaton simulation, tracker decay experiments
// and verification suites.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using pfsa::cli::Json;

// Applies a `--config` document under the flags: a key is taken from the
// document unless its flag was given on the command line.
template <class Config>
Config merge_config(const CLI::App& sub, const std::string& config_path, const Config& from_flags) {
  if (config_path.empty()) {
    return from_flags;
  }
  std::ifstream in(config_path);
  if (!in) {
    throw std::runtime_error("cannot read config '" + config_path + "'");
  }
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::exception& e) {
    throw std::invalid_argument("config '" + config_path + "' is not valid JSON: " + e.what());
  }
  // Validate the document on its own first so unknown keys are reported.
  Config checked;
  pfsa::cli::from_json(doc, checked);

  Json merged = pfsa::cli::to_json(from_flags);
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    std::string flag = "--" + it.key();
    for (char& ch : flag) {
      ch = ch == '_' ? '-' : ch;
    }
    const CLI::Option* opt = sub.get_option_no_throw(flag);
    if (opt == nullptr || opt->count() == 0) {
      merged[it.key()] = it.value();
    }
  }
  Config out;
  pfsa::cli::from_json(merged, out);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probabilistic state tracking: traces, automata, trackers and checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(pfsa::cli::kVersion));

  pfsa::cli::GenTracesConfig gen;
  std::string gen_config;
  auto* gen_cmd = app.add_subcommand("gen-traces", "Generate an interpreter-trace dataset (JSONL)");
  gen_cmd->add_option("--n-vars", gen.n_vars, "Variables per trace (2..26)")->capture_default_str();
  gen_cmd->add_option("--commands", gen.commands, "Commands per trace")->capture_default_str();
  gen_cmd->add_option("--spacing", gen.spacing, "Reveal after every S-th command")->capture_default_str();
  gen_cmd->add_option("--kind", gen.kind, "Command kind")
      ->check(CLI::IsMember({"swap", "full", "elementary_swap", "full_permutation"}))
      ->capture_default_str();
  gen_cmd->add_option("--count", gen.count, "Number of traces")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Root seed")->capture_default_str();
  gen_cmd->add_flag("--curriculum", gen.curriculum, "Emit the four-stage curriculum instead");
  gen_cmd->add_option("--stage-samples", gen.stage_samples, "Traces per curriculum stage")
      ->capture_default_str();
  gen_cmd->add_option("--config", gen_config, "JSON document with the same keys as the flags");
  gen_cmd->add_option("--output", gen.output, "Dataset path")->capture_default_str();

  pfsa::cli::DecayConfig dec;
  std::string dec_config;
  auto* dec_cmd = app.add_subcommand("decay", "Run a tracker decay scenario and write a CSV table");
  dec_cmd->add_option("--scenario", dec.scenario, "Scenario")
      ->check(CLI::IsMember({"joint-absorbing", "marginal-swap-reveal", "dfa", "full-reveal-every-k"}))
      ->capture_default_str();
  dec_cmd->add_option("--cycles", dec.cycles, "Cycles (joint-absorbing, marginal, full-reveal)")
      ->capture_default_str();
  dec_cmd->add_option("--steps", dec.steps, "Steps (dfa)")->capture_default_str();
  dec_cmd->add_option("--reset-every", dec.reset_every, "Cycles between full reveals")
      ->capture_default_str();
  dec_cmd->add_option("--significand-bits", dec.significand_bits, "Emulated significand bits")
      ->capture_default_str();
  dec_cmd->add_option("--min-exponent", dec.min_exponent, "Emulated minimum normal exponent")
      ->capture_default_str();
  dec_cmd->add_option("--seed", dec.seed, "Seed (dfa symbol sequence)")->capture_default_str();
  dec_cmd->add_option("--config", dec_config, "JSON document with the same keys as the flags");
  dec_cmd->add_option("--output", dec.output, "CSV path")->capture_default_str();

  pfsa::cli::SimulateConfig sim;
  std::string sim_config;
  auto* sim_cmd = app.add_subcommand("simulate", "Sample a trajectory and log exact beliefs (JSONL)");
  sim_cmd->add_option("--automaton", sim.automaton, "Automaton JSON file");
  sim_cmd->add_option("--steps", sim.steps, "Trajectory length")->capture_default_str();
  sim_cmd->add_option("--seed", sim.seed, "Seed")->capture_default_str();
  sim_cmd->add_option("--symbols", sim.symbols,
                      "Comma-separated symbol names to filter instead of sampling");
  sim_cmd->add_option("--config", sim_config, "JSON document with the same keys as the flags");
  sim_cmd->add_option("--output", sim.output, "Belief log path")->capture_default_str();

  pfsa::cli::VerifyConfig ver;
  std::string ver_config;
  auto* ver_cmd = app.add_subcommand("verify", "Run the acceptance checks");
  ver_cmd->add_option("--max-n", ver.max_n, "Largest automaton / list size")->capture_default_str();
  ver_cmd->add_option("--steps", ver.steps, "Sequence length for the oracle comparison")
      ->capture_default_str();
  ver_cmd->add_option("--samples", ver.samples, "Random instances per property")->capture_default_str();
  ver_cmd->add_option("--traces", ver.traces, "Traces for the round-trip check")->capture_default_str();
  ver_cmd->add_option("--seed", ver.seed, "Root seed")->capture_default_str();
  ver_cmd->add_flag("--inject-fault", ver.inject_fault, "Corrupt one trace (the run must fail)");
  ver_cmd->add_option("--config", ver_config, "JSON document with the same keys as the flags");
  ver_cmd->add_option("--report", ver.report, "JSON report path")->capture_default_str();

  std::string manifest;
  std::string replay_output;
  auto* rep_cmd = app.add_subcommand("replay", "Rerun a manifest and compare output digests");
  rep_cmd->add_option("--manifest", manifest, "Manifest path")->required();
  rep_cmd->add_option("--output", replay_output, "Write to this path instead of the recorded one");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (gen_cmd->parsed()) {
      return pfsa::cli::gen_traces(merge_config(*gen_cmd, gen_config, gen), std::cout);
    }
    if (dec_cmd->parsed()) {
      return pfsa::cli::decay(merge_config(*dec_cmd, dec_config, dec), std::cout);
    }
    if (sim_cmd->parsed()) {
      return pfsa::cli::simulate(merge_config(*sim_cmd, sim_config, sim), std::cout);
    }
    if (ver_cmd->parsed()) {
      return pfsa::cli::verify(merge_config(*ver_cmd, ver_config, ver), std::cout);
    }
    if (rep_cmd->parsed()) {
      return pfsa::cli::replay(manifest, replay_output, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
