#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pfsa/automaton.hpp"
#include "pfsa/mix.hpp"
#include "pfsa/permutation.hpp"

namespace pfsa {

// The n! configurations of a list of n distinct elements, used as the state
// space of the joint representation.
//
// A configuration c is stored as a permutation in one-line notation where
// c[i] is the element held at position i. Configurations are indexed in
// lexicographic order of their one-line notation, so index 0 is the
// identity and index n!-1 the reversal.
class ConfigurationSpace {
 public:
  // n in [1, 8]; larger spaces are not materialized.
  explicit ConfigurationSpace(std::size_t n);

  std::size_t n() const { return n_; }
  std::size_t size() const { return configs_.size(); }
  const Permutation& config(std::size_t index) const { return configs_.at(index); }
  const std::vector<Permutation>& configs() const { return configs_; }

  // Lexicographic rank (Lehmer code); throws on size mismatch.
  std::size_t index_of(const Permutation& config) const;

 private:
  std::size_t n_;
  std::vector<Permutation> configs_;
};

// How a shuffle acts on a configuration.
enum class ShuffleAction {
  // Shuffles contents of positions: c' = p.apply(c), i.e. c'[i] = c[p[i]].
  positions,
  // Relabels elements: c'[i] = p[c[i]].
  elements,
};

// Column-stochastic transition of a probabilistic shuffle over the joint
// space: T(index(c'), index(c)) accumulates w_k for each component.
Eigen::MatrixXd joint_transition(const ConfigurationSpace& space, const MixSpec& mix,
                                 ShuffleAction action = ShuffleAction::positions);

// Configurations consistent with "position i holds element j".
RevealSet joint_reveal(const ConfigurationSpace& space, const RevealSpec& reveal);

// Transition-only symbol for a shuffle / reveal-only symbol for an observation.
Symbol joint_mix_symbol(const ConfigurationSpace& space, const MixSpec& mix, std::string name,
                        ShuffleAction action = ShuffleAction::positions);
Symbol joint_reveal_symbol(const ConfigurationSpace& space, const RevealSpec& reveal,
                           std::string name);

// Marginal H(i, j) = sum of the weights of configurations placing element j at
// position i. `weights` is indexed like `space`; an unnormalized vector gives
// the same-scaled marginal. Throws std::invalid_argument when the length is
// not n!.
Eigen::MatrixXd joint_to_marginal(const ConfigurationSpace& space, const Eigen::VectorXd& weights);

}  // namespace pfsa
