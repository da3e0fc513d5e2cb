#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "pfsa/permutation.hpp"

namespace pfsa {

struct MixComponent {
  Permutation permutation;
  double weight;
};

// A probabilistic shuffle: permutation i happens with probability weight i.
// The realized matrix P_s = sum_i w_i to_matrix(p_i) is doubly stochastic.
class MixSpec {
 public:
  static constexpr double kTolerance = 1e-12;

  // Throws std::invalid_argument on empty input, mixed sizes, negative
  // weights, or weights not summing to 1 within kTolerance.
  explicit MixSpec(std::vector<MixComponent> components);

  // Single deterministic permutation.
  static MixSpec certain(const Permutation& p);

  // (1 - p) * identity + p * swap(i, j).
  static MixSpec maybe_swap(std::size_t n, std::size_t i, std::size_t j, double p = 0.5);

  std::size_t size() const { return components_.front().permutation.size(); }
  const std::vector<MixComponent>& components() const { return components_; }

  Eigen::MatrixXd matrix() const;

 private:
  std::vector<MixComponent> components_;
};

// Observation "position `position` holds element `element`".
struct RevealSpec {
  std::size_t position;
  std::size_t element;
};

}  // namespace pfsa
