#include "pfsa/configuration_space.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace pfsa {

ConfigurationSpace::ConfigurationSpace(std::size_t n) : n_(n) {
  if (n == 0 || n > 8) {
    throw std::invalid_argument("configuration space supports 1 <= n <= 8");
  }
  std::vector<std::size_t> mapping(n);
  std::iota(mapping.begin(), mapping.end(), std::size_t{0});
  do {
    configs_.emplace_back(mapping);
  } while (std::next_permutation(mapping.begin(), mapping.end()));
}

std::size_t ConfigurationSpace::index_of(const Permutation& config) const {
  if (config.size() != n_) {
    throw std::invalid_argument("configuration has the wrong size");
  }
  std::size_t rank = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    std::size_t smaller_later = 0;
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (config[j] < config[i]) {
        ++smaller_later;
      }
    }
    rank = rank * (n_ - i) + smaller_later;
  }
  return rank;
}

Eigen::MatrixXd joint_transition(const ConfigurationSpace& space, const MixSpec& mix,
                                 ShuffleAction action) {
  if (mix.size() != space.n()) {
    throw std::invalid_argument("mix size does not match the configuration space");
  }
  const auto m = static_cast<Eigen::Index>(space.size());
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
  for (std::size_t from = 0; from < space.size(); ++from) {
    const Permutation& c = space.config(from);
    for (const auto& component : mix.components()) {
      const Permutation next = action == ShuffleAction::positions
                                   ? compose(c, component.permutation)
                                   : compose(component.permutation, c);
      t(static_cast<Eigen::Index>(space.index_of(next)), static_cast<Eigen::Index>(from)) +=
          component.weight;
    }
  }
  return t;
}

RevealSet joint_reveal(const ConfigurationSpace& space, const RevealSpec& reveal) {
  if (reveal.position >= space.n() || reveal.element >= space.n()) {
    throw std::invalid_argument("reveal index out of range");
  }
  RevealSet out(space.size(), false);
  for (std::size_t k = 0; k < space.size(); ++k) {
    out[k] = space.config(k)[reveal.position] == reveal.element;
  }
  return out;
}

Symbol joint_mix_symbol(const ConfigurationSpace& space, const MixSpec& mix, std::string name,
                        ShuffleAction action) {
  return transition_only(joint_transition(space, mix, action), std::move(name));
}

Symbol joint_reveal_symbol(const ConfigurationSpace& space, const RevealSpec& reveal,
                           std::string name) {
  return reveal_only(space.size(), joint_reveal(space, reveal), std::move(name));
}

Eigen::MatrixXd joint_to_marginal(const ConfigurationSpace& space, const Eigen::VectorXd& weights) {
  if (static_cast<std::size_t>(weights.size()) != space.size()) {
    throw std::invalid_argument("joint vector length is not n! for the declared n");
  }
  const auto n = static_cast<Eigen::Index>(space.n());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t k = 0; k < space.size(); ++k) {
    const Permutation& c = space.config(k);
    for (Eigen::Index i = 0; i < n; ++i) {
      h(i, static_cast<Eigen::Index>(c[static_cast<std::size_t>(i)])) +=
          weights(static_cast<Eigen::Index>(k));
    }
  }
  return h;
}

}  // namespace pfsa
