#include "pfsa/automaton.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

#include "pfsa/errors.hpp"

namespace pfsa {

namespace {

constexpr double kColumnTolerance = 1e-12;

}  // namespace

std::vector<std::string> validate(const AutomatonSpec& spec) {
  std::vector<std::string> violations;
  if (spec.states == 0) {
    violations.emplace_back("automaton must have at least one state");
    return violations;
  }
  if (spec.initial_state >= spec.states) {
    violations.push_back(fmt::format("initial state {} is not a state (m = {})",
                                     spec.initial_state, spec.states));
  }
  if (spec.symbols.empty()) {
    violations.emplace_back("alphabet is empty");
  }
  const auto m = static_cast<Eigen::Index>(spec.states);
  for (std::size_t s = 0; s < spec.symbols.size(); ++s) {
    const Symbol& sym = spec.symbols[s];
    const std::string label = sym.name.empty() ? fmt::format("#{}", s) : sym.name;
    for (std::size_t t = 0; t < s; ++t) {
      if (!sym.name.empty() && spec.symbols[t].name == sym.name) {
        violations.push_back(fmt::format("symbol name '{}' is used twice", sym.name));
      }
    }
    if (sym.transition.rows() != m || sym.transition.cols() != m) {
      violations.push_back(fmt::format("symbol '{}': transition is {}x{}, expected {}x{}", label,
                                       sym.transition.rows(), sym.transition.cols(), m, m));
    } else {
      for (Eigen::Index j = 0; j < m; ++j) {
        double sum = 0.0;
        for (Eigen::Index i = 0; i < m; ++i) {
          const double v = sym.transition(i, j);
          if (!std::isfinite(v) || v < 0.0) {
            violations.push_back(fmt::format("symbol '{}': entry ({}, {}) = {} is not a probability",
                                             label, i, j, v));
          }
          sum += v;
        }
        if (std::abs(sum - 1.0) > kColumnTolerance) {
          violations.push_back(
              fmt::format("symbol '{}': column {} sums to {:.17g}, expected 1", label, j, sum));
        }
      }
    }
    if (sym.reveal.size() != spec.states) {
      violations.push_back(fmt::format("symbol '{}': reveal set covers {} states, expected {}",
                                       label, sym.reveal.size(), spec.states));
    } else {
      bool any = false;
      for (bool b : sym.reveal) {
        any = any || b;
      }
      if (!any) {
        violations.push_back(fmt::format("symbol '{}': reveal set is empty", label));
      }
    }
  }
  return violations;
}

Pfsa::Pfsa(AutomatonSpec spec) : spec_(std::move(spec)) {
  const auto violations = validate(spec_);
  if (!violations.empty()) {
    std::string message = "invalid automaton:";
    for (const auto& v : violations) {
      message += "\n  " + v;
    }
    throw std::invalid_argument(message);
  }
}

std::size_t Pfsa::symbol_index(const std::string& name) const {
  for (std::size_t s = 0; s < spec_.symbols.size(); ++s) {
    if (spec_.symbols[s].name == name) {
      return s;
    }
  }
  throw std::out_of_range("unknown symbol '" + name + "'");
}

std::vector<std::size_t> Pfsa::consistent_symbols(std::size_t state) const {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < spec_.symbols.size(); ++s) {
    if (spec_.symbols[s].reveal[state]) {
      out.push_back(s);
    }
  }
  return out;
}

Symbol reveal_only(std::size_t states, RevealSet subset, std::string name) {
  if (subset.size() != states) {
    throw std::invalid_argument("reveal_only: subset size does not match state count");
  }
  bool any = false;
  for (bool b : subset) {
    any = any || b;
  }
  if (!any) {
    throw std::invalid_argument("reveal_only: reveal set must be nonempty");
  }
  const auto m = static_cast<Eigen::Index>(states);
  return Symbol{std::move(name), Eigen::MatrixXd::Identity(m, m), std::move(subset)};
}

Symbol transition_only(Eigen::MatrixXd transition, std::string name) {
  if (transition.rows() != transition.cols() || transition.rows() == 0) {
    throw std::invalid_argument("transition_only: transition must be square and nonempty");
  }
  const auto m = static_cast<std::size_t>(transition.rows());
  Symbol sym{std::move(name), std::move(transition), RevealSet(m, true)};
  AutomatonSpec probe{m, {sym}, 0};
  const auto violations = validate(probe);
  if (!violations.empty()) {
    throw std::invalid_argument("transition_only: " + violations.front());
  }
  return sym;
}

Eigen::VectorXd reveal_mask(const RevealSet& reveal) {
  Eigen::VectorXd mask(static_cast<Eigen::Index>(reveal.size()));
  for (std::size_t i = 0; i < reveal.size(); ++i) {
    mask(static_cast<Eigen::Index>(i)) = reveal[i] ? 1.0 : 0.0;
  }
  return mask;
}

Eigen::MatrixXd reveal_matrix(const RevealSet& reveal) {
  return reveal_mask(reveal).asDiagonal();
}

Belief::Belief(Eigen::VectorXd probs) : probs_(std::move(probs)) {
  if (probs_.size() == 0) {
    throw std::invalid_argument("belief must cover at least one state");
  }
  double sum = 0.0;
  for (Eigen::Index i = 0; i < probs_.size(); ++i) {
    if (!std::isfinite(probs_(i)) || probs_(i) < 0.0) {
      throw std::invalid_argument(fmt::format("belief entry {} = {} is not a probability", i,
                                              probs_(i)));
    }
    sum += probs_(i);
  }
  if (std::abs(sum - 1.0) > kTolerance) {
    throw std::invalid_argument(fmt::format("belief sums to {:.17g}, expected 1", sum));
  }
}

Belief Belief::one_hot(std::size_t states, std::size_t state) {
  if (state >= states) {
    throw std::invalid_argument("one_hot: state out of range");
  }
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(states));
  v(static_cast<Eigen::Index>(state)) = 1.0;
  return Belief(std::move(v));
}

Belief Belief::uniform(std::size_t states) {
  if (states == 0) {
    throw std::invalid_argument("uniform: at least one state required");
  }
  const auto m = static_cast<Eigen::Index>(states);
  return Belief(Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(states)));
}

Belief Belief::normalized(const Eigen::VectorXd& weights) {
  const double mass = weights.sum();
  if (!(mass > 0.0)) {
    throw MassUnderflow("cannot normalize a vector with zero mass");
  }
  Eigen::VectorXd probs = weights / mass;
  // One more pass absorbs the rounding of the first division.
  probs /= probs.sum();
  return Belief(std::move(probs));
}

Belief belief_update(const Pfsa& automaton, const Belief& belief, std::size_t symbol) {
  if (belief.size() != automaton.states()) {
    throw std::invalid_argument("belief_update: belief size does not match the automaton");
  }
  const Symbol& sym = automaton.symbol(symbol);
  const Eigen::VectorXd revealed = reveal_mask(sym.reveal).cwiseProduct(belief.probs());
  const double surviving = revealed.sum();
  if (!(surviving > 0.0)) {
    throw ImpossibleObservation("symbol '" + sym.name +
                                "' is inconsistent with every state in the belief support");
  }
  return Belief::normalized(sym.transition * (revealed / surviving));
}

std::size_t uniform_policy(const Pfsa&, std::size_t, std::span<const std::size_t> consistent,
                           Rng& rng) {
  return consistent[rng.uniform_index(consistent.size())];
}

Trajectory sample_trajectory(const Pfsa& automaton, std::size_t steps, Rng& rng,
                             const SymbolPolicy& policy) {
  Trajectory traj;
  traj.states.reserve(steps + 1);
  traj.symbols.reserve(steps);
  std::size_t state = automaton.initial_state();
  traj.states.push_back(state);
  const auto m = static_cast<Eigen::Index>(automaton.states());
  for (std::size_t t = 0; t < steps; ++t) {
    const auto candidates = automaton.consistent_symbols(state);
    if (candidates.empty()) {
      throw DeadEnd(fmt::format("no symbol is consistent with state {} at step {}", state, t));
    }
    const std::size_t symbol = policy(automaton, state, candidates, rng);
    if (!automaton.symbol(symbol).reveal[state]) {
      throw std::logic_error("policy chose a symbol that violates the consistency constraint");
    }
    const auto& column = automaton.symbol(symbol).transition.col(static_cast<Eigen::Index>(state));
    const double u = rng.uniform_unit();
    double cumulative = 0.0;
    Eigen::Index next = -1;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (column(i) <= 0.0) {
        continue;
      }
      next = i;  // last state with positive mass absorbs rounding in the tail
      cumulative += column(i);
      if (u < cumulative) {
        break;
      }
    }
    state = static_cast<std::size_t>(next);
    traj.symbols.push_back(symbol);
    traj.states.push_back(state);
  }
  return traj;
}

BigInt joint_discretization_count(unsigned n) {
  if (n == 0) {
    throw std::invalid_argument("joint_discretization_count: n must be at least 1");
  }
  if (n > 12) {
    throw std::length_error("joint_discretization_count: 2^(n!) is too large for n > 12");
  }
  unsigned long factorial = 1;
  for (unsigned i = 2; i <= n; ++i) {
    factorial *= i;
  }
  BigInt result = 1;
  result <<= factorial;
  return result;
}

BigInt marginal_discretization_count(unsigned n, unsigned k) {
  if (n == 0) {
    throw std::invalid_argument("marginal_discretization_count: n must be at least 1");
  }
  if (k < 2) {
    throw std::invalid_argument("marginal_discretization_count: k must be at least 2");
  }
  const unsigned exponent = (n - 1) * (n - 1);
  return boost::multiprecision::pow(BigInt(k), exponent);
}

}  // namespace pfsa
