#include "pfsa/joint_tracker.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "pfsa/errors.hpp"

namespace pfsa {

JointLinearState JointLinearState::from_belief(const Belief& belief) {
  return JointLinearState{belief.probs(), 0.0};
}

JointLinearState joint_step(const JointLinearState& state, const Pfsa& automaton,
                            std::size_t symbol) {
  if (static_cast<std::size_t>(state.h.size()) != automaton.states()) {
    throw std::invalid_argument("joint_step: state size does not match the automaton");
  }
  const Symbol& sym = automaton.symbol(symbol);
  const Eigen::VectorXd revealed = reveal_mask(sym.reveal).cwiseProduct(state.h);

  JointLinearState next;
  next.h = sym.transition * revealed;
  const double before = state.h.sum();
  const double kept = revealed.sum();
  if (before > 0.0 && kept > 0.0) {
    next.log_mass = state.log_mass + std::log(kept / before);
  } else {
    next.log_mass = -std::numeric_limits<double>::infinity();
  }
  return next;
}

Belief joint_decode(const JointLinearState& state) {
  if (!(state.h.sum() > 0.0)) {
    throw MassUnderflow("joint state has no mass left to decode");
  }
  return Belief::normalized(state.h);
}

double survival(const Pfsa& automaton, const Belief& belief, std::size_t symbol) {
  if (belief.size() != automaton.states()) {
    throw std::invalid_argument("survival: belief size does not match the automaton");
  }
  return reveal_mask(automaton.symbol(symbol).reveal).dot(belief.probs());
}

JointLinearState gated_reset(const JointLinearState& state, const Belief& prior) {
  if (static_cast<std::size_t>(state.h.size()) != prior.size()) {
    throw std::invalid_argument("gated_reset: prior size does not match the state");
  }
  JointLinearState next;
  next.h = 0.0 * state.h + prior.probs();
  next.log_mass = 0.0;
  return next;
}

}  // namespace pfsa
