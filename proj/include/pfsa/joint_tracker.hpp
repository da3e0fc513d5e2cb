#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "pfsa/automaton.hpp"

namespace pfsa {

// Unnormalized message of the joint linear tracker, h_{t+1} = T Z h_t.
// The decoded belief is h / |h|_1.
struct JointLinearState {
  Eigen::VectorXd h;
  // Natural log of |h|_1, accumulated from per-step survival ratios.
  double log_mass = 0.0;

  static JointLinearState from_belief(const Belief& belief);
};

// One linear step with no renormalization. A zero vector is a legal result.
JointLinearState joint_step(const JointLinearState& state, const Pfsa& automaton,
                            std::size_t symbol);

// h / |h|_1; throws MassUnderflow when |h|_1 == 0.
Belief joint_decode(const JointLinearState& state);

// Mass of `belief` consistent with the symbol's reveal, s = |Z b|_1.
// Zero means the symbol is impossible under the belief.
double survival(const Pfsa& automaton, const Belief& belief, std::size_t symbol);

// Linear hard reset: h <- 0 * h + prior. With a one-hot prior this is a full
// state reveal.
JointLinearState gated_reset(const JointLinearState& state, const Belief& prior);

}  // namespace pfsa
