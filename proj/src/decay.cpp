#include "pfsa/decay.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

#include "pfsa/configuration_space.hpp"
#include "pfsa/joint_tracker.hpp"
#include "pfsa/marginal_tracker.hpp"

namespace pfsa {

namespace {

Pfsa absorbing_automaton() {
  Eigen::MatrixXd mix(3, 3);
  // clang-format off
  mix << 1.0, 0.5, 0.5,
         0.0, 0.5, 0.0,
         0.0, 0.0, 0.5;
  // clang-format on
  AutomatonSpec spec;
  spec.states = 3;
  spec.initial_state = 1;
  spec.symbols.push_back(transition_only(mix, "mix"));
  spec.symbols.push_back(reveal_only(3, {false, true, true}, "reveal"));
  return Pfsa(std::move(spec));
}

Belief absorbing_start() { return Belief(Eigen::Vector3d(0.0, 0.5, 0.5)); }

double min_positive(const Eigen::VectorXd& v) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) > 0.0 && (best == 0.0 || v(i) < best)) {
      best = v(i);
    }
  }
  return best;
}

std::size_t cycle_of(std::size_t step, std::size_t per_cycle) {
  return (step + per_cycle - 1) / per_cycle;
}

std::string format_double(double v) {
  if (std::isinf(v)) {
    return v < 0 ? "-inf" : "inf";
  }
  return fmt::format("{:.17g}", v);
}

}  // namespace

JointScenario adversarial_joint_scenario(std::size_t cycles) {
  JointScenario scenario{absorbing_automaton(), absorbing_start(), {}, 2};
  for (std::size_t c = 0; c < cycles; ++c) {
    scenario.inputs.emplace_back(std::size_t{0});
    scenario.inputs.emplace_back(std::size_t{1});
  }
  return scenario;
}

JointScenario full_reveal_scenario(std::size_t cycles, std::size_t reset_every) {
  if (reset_every == 0) {
    throw std::invalid_argument("full_reveal_scenario: reset interval must be positive");
  }
  JointScenario scenario{absorbing_automaton(), absorbing_start(), {}, 2};
  for (std::size_t c = 1; c <= cycles; ++c) {
    scenario.inputs.emplace_back(std::size_t{0});
    scenario.inputs.emplace_back(std::size_t{1});
    if (c % reset_every == 0) {
      scenario.inputs.emplace_back(ResetInput{Belief::one_hot(3, 1)});
    }
  }
  // Resets make cycles uneven, so label rows by mix/reveal pairs instead.
  scenario.inputs_per_cycle = 0;
  return scenario;
}

JointScenario dfa_scenario(std::size_t steps, std::uint64_t seed) {
  const ConfigurationSpace space(3);
  AutomatonSpec spec;
  spec.states = space.size();
  spec.initial_state = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      spec.symbols.push_back(joint_mix_symbol(
          space, MixSpec::certain(Permutation::transposition(3, i, j)), fmt::format("swap{}{}", i, j)));
    }
  }
  JointScenario scenario{Pfsa(std::move(spec)), Belief::one_hot(space.size(), 0), {}, 1};
  Rng rng(seed);
  for (std::size_t t = 0; t < steps; ++t) {
    scenario.inputs.emplace_back(rng.uniform_index(3));
  }
  return scenario;
}

MarginalScenario adversarial_marginal_scenario(std::size_t cycles) {
  MarginalScenario scenario{3, {}, 2};
  for (std::size_t c = 0; c < cycles; ++c) {
    scenario.inputs.emplace_back(MixSpec::maybe_swap(3, 1, 2, 0.5));
    scenario.inputs.emplace_back(RevealSpec{1, 1});
  }
  return scenario;
}

DecayReport run_joint(const JointScenario& scenario, const PrecisionModel& precision) {
  DecayReport report;
  report.precision = precision;
  JointLinearState state = JointLinearState::from_belief(scenario.initial);
  precision.round_in_place(state.h);
  Belief exact = scenario.initial;
  double log2_mass = 0.0;
  std::size_t cycle = 0;
  std::size_t symbols_seen = 0;

  for (std::size_t k = 0; k < scenario.inputs.size(); ++k) {
    DecayRecord rec;
    rec.step = k + 1;
    if (const auto* symbol = std::get_if<std::size_t>(&scenario.inputs[k])) {
      const double s = survival(scenario.automaton, exact, *symbol);
      rec.op = scenario.automaton.symbol(*symbol).name;
      rec.survival = s;
      log2_mass += std::log2(s);
      exact = belief_update(scenario.automaton, exact, *symbol);
      state = joint_step(state, scenario.automaton, *symbol);
      ++symbols_seen;
    } else {
      const auto& reset = std::get<ResetInput>(scenario.inputs[k]);
      rec.op = "reset";
      state = gated_reset(state, reset.prior);
      exact = reset.prior;
      log2_mass = 0.0;
    }
    if (scenario.inputs_per_cycle > 0) {
      cycle = cycle_of(rec.step, scenario.inputs_per_cycle);
    } else {
      cycle = (symbols_seen + 1) / 2;
    }
    rec.cycle = cycle;
    const std::size_t flushed = precision.round_in_place(state.h);
    if (flushed > 0 && !report.first_underflow_step) {
      report.first_underflow_step = rec.step;
      report.first_underflow_cycle = rec.cycle;
    }
    rec.l1_norm = state.h.sum();
    rec.min_nonzero = min_positive(state.h);
    rec.log2_norm = log2_mass;
    report.records.push_back(std::move(rec));
  }
  return report;
}

DecayReport run_marginal(const MarginalScenario& scenario, const PrecisionModel& precision) {
  DecayReport report;
  report.precision = precision;
  MarginalState state = MarginalState::identity(scenario.n);
  const std::size_t per_cycle = scenario.inputs_per_cycle == 0 ? 1 : scenario.inputs_per_cycle;
  for (std::size_t k = 0; k < scenario.inputs.size(); ++k) {
    DecayRecord rec;
    rec.step = k + 1;
    rec.cycle = cycle_of(rec.step, per_cycle);
    if (const auto* mix = std::get_if<MixSpec>(&scenario.inputs[k])) {
      rec.op = "mix";
      state = marginal_mix(state, *mix);
    } else {
      rec.op = "reveal";
      state = marginal_reveal(state, std::get<RevealSpec>(scenario.inputs[k]));
    }
    const std::size_t flushed = precision.round_in_place(state.H);
    if (flushed > 0 && !report.first_underflow_step) {
      report.first_underflow_step = rec.step;
      report.first_underflow_cycle = rec.cycle;
    }
    rec.l1_norm = state.H.sum();
    rec.min_nonzero = min_nonzero(state.H);
    rec.log2_norm = rec.l1_norm > 0.0 ? std::log2(rec.l1_norm)
                                      : -std::numeric_limits<double>::infinity();
    report.records.push_back(std::move(rec));
  }
  return report;
}

ScenarioKind parse_scenario_kind(const std::string& name) {
  if (name == "joint-absorbing") return ScenarioKind::joint_absorbing;
  if (name == "marginal-swap-reveal") return ScenarioKind::marginal_swap_reveal;
  if (name == "dfa") return ScenarioKind::dfa;
  if (name == "full-reveal-every-k") return ScenarioKind::full_reveal_every_k;
  throw std::invalid_argument("unknown scenario '" + name + "'");
}

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::joint_absorbing:
      return "joint-absorbing";
    case ScenarioKind::marginal_swap_reveal:
      return "marginal-swap-reveal";
    case ScenarioKind::dfa:
      return "dfa";
    case ScenarioKind::full_reveal_every_k:
      return "full-reveal-every-k";
  }
  return "unknown";
}

DecayReport run_and_report(const ScenarioRequest& request, const PrecisionModel& precision) {
  switch (request.kind) {
    case ScenarioKind::joint_absorbing:
      return run_joint(adversarial_joint_scenario(request.cycles), precision);
    case ScenarioKind::marginal_swap_reveal:
      return run_marginal(adversarial_marginal_scenario(request.cycles), precision);
    case ScenarioKind::dfa:
      return run_joint(dfa_scenario(request.steps, request.seed), precision);
    case ScenarioKind::full_reveal_every_k:
      return run_joint(full_reveal_scenario(request.cycles, request.reset_every), precision);
  }
  throw std::invalid_argument("unknown scenario kind");
}

void write_decay_csv(std::ostream& out, const DecayReport& report) {
  out << "step,op,l1_norm,survival,min_nonzero,log2_norm\n";
  for (const auto& rec : report.records) {
    out << rec.step << ',' << rec.op << ',' << format_double(rec.l1_norm) << ','
        << (rec.survival ? format_double(*rec.survival) : std::string()) << ','
        << format_double(rec.min_nonzero) << ',' << format_double(rec.log2_norm) << '\n';
  }
}

}  // namespace pfsa
