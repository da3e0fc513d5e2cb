#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pfsa/automaton.hpp"
#include "pfsa/mix.hpp"
#include "pfsa/precision.hpp"

namespace pfsa {

// Input to the joint tracker: a symbol of the automaton or a gated reset.
struct ResetInput {
  Belief prior;
};
using JointInput = std::variant<std::size_t, ResetInput>;

struct JointScenario {
  Pfsa automaton;
  Belief initial;
  std::vector<JointInput> inputs;
  // Inputs per cycle, used to label report rows with their cycle number.
  std::size_t inputs_per_cycle = 1;
};

using MarginalInput = std::variant<MixSpec, RevealSpec>;

struct MarginalScenario {
  std::size_t n = 0;
  std::vector<MarginalInput> inputs;
  std::size_t inputs_per_cycle = 1;
};

// Three states; "mix" sends states 2 and 3 to the absorbing state 1 with
// probability 1/2 each (otherwise they stay), "reveal" keeps {2, 3}. Starts
// from h = [0, 1/2, 1/2] and alternates mix/reveal for `cycles` cycles. The
// unnormalized mass halves every cycle while the exact belief returns to
// [0, 1/2, 1/2] after every reveal.
JointScenario adversarial_joint_scenario(std::size_t cycles);

// Same automaton, with a full reveal of state 2 (a one-hot gated reset)
// after every `reset_every` cycles.
JointScenario full_reveal_scenario(std::size_t cycles, std::size_t reset_every);

// Deterministic automaton on the 6 configurations of S_3: the three
// transpositions act as transition-only permutation symbols with vacuous
// reveals, driven by a seeded uniform symbol sequence from the identity.
JointScenario dfa_scenario(std::size_t steps, std::uint64_t seed);

// n = 3 starting at I: alternately mixes elements at positions 2 and 3 with
// probability 1/2, then reveals "position 2 holds element 2". The smallest
// nonzero entry after t cycles is 2^-t.
MarginalScenario adversarial_marginal_scenario(std::size_t cycles);

struct DecayRecord {
  std::size_t step = 0;   // 1-based input index
  std::size_t cycle = 0;  // 1-based cycle the input belongs to
  std::string op;
  double l1_norm = 0.0;             // of the stored (rounded) state
  std::optional<double> survival;   // exact s_t for symbol inputs of joint runs
  double min_nonzero = 0.0;         // smallest positive stored entry, 0 if none
  double log2_norm = 0.0;           // see run_* below
};

struct DecayReport {
  std::vector<DecayRecord> records;
  PrecisionModel precision;
  // First input after which rounding flushed a nonzero entry to zero.
  std::optional<std::size_t> first_underflow_step;
  std::optional<std::size_t> first_underflow_cycle;
};

// Runs the joint linear tracker, rounding h to `precision` after every input.
// survival and log2_norm come from an exactly normalized belief carried in
// parallel: log2_norm = sum of log2(s_k) since the last reset, so it stays
// finite after the stored state has vanished.
DecayReport run_joint(const JointScenario& scenario, const PrecisionModel& precision = {});

// Runs the marginal tracker, rounding H after every input. survival is not
// recorded; log2_norm is log2 of the entrywise sum of the stored H.
DecayReport run_marginal(const MarginalScenario& scenario, const PrecisionModel& precision = {});

enum class ScenarioKind { joint_absorbing, marginal_swap_reveal, dfa, full_reveal_every_k };

// Names used on the command line: joint-absorbing, marginal-swap-reveal, dfa,
// full-reveal-every-k.
ScenarioKind parse_scenario_kind(const std::string& name);
std::string to_string(ScenarioKind kind);

struct ScenarioRequest {
  ScenarioKind kind = ScenarioKind::joint_absorbing;
  std::size_t cycles = 20;      // joint-absorbing, marginal, full-reveal
  std::size_t steps = 100;      // dfa
  std::size_t reset_every = 8;  // full-reveal
  std::uint64_t seed = 0;       // dfa
};

DecayReport run_and_report(const ScenarioRequest& request, const PrecisionModel& precision = {});

// Header `step,op,l1_norm,survival,min_nonzero,log2_norm`, one row per input.
// Numbers use 17 significant digits; a missing survival is an empty field.
void write_decay_csv(std::ostream& out, const DecayReport& report);

}  // namespace pfsa
