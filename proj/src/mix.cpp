#include "pfsa/mix.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace pfsa {

MixSpec::MixSpec(std::vector<MixComponent> components) : components_(std::move(components)) {
  if (components_.empty()) {
    throw std::invalid_argument("mix needs at least one component");
  }
  const std::size_t n = components_.front().permutation.size();
  double total = 0.0;
  for (const auto& c : components_) {
    if (c.permutation.size() != n) {
      throw std::invalid_argument("mix components act on different sizes");
    }
    if (!std::isfinite(c.weight) || c.weight < 0.0) {
      throw std::invalid_argument("mix weights must be nonnegative");
    }
    total += c.weight;
  }
  if (std::abs(total - 1.0) > kTolerance) {
    throw std::invalid_argument("mix weights must sum to 1");
  }
}

MixSpec MixSpec::certain(const Permutation& p) { return MixSpec({{p, 1.0}}); }

MixSpec MixSpec::maybe_swap(std::size_t n, std::size_t i, std::size_t j, double p) {
  return MixSpec({{Permutation::identity(n), 1.0 - p}, {Permutation::transposition(n, i, j), p}});
}

Eigen::MatrixXd MixSpec::matrix() const {
  const auto n = static_cast<Eigen::Index>(size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (const auto& c : components_) {
    for (Eigen::Index i = 0; i < n; ++i) {
      out(i, static_cast<Eigen::Index>(c.permutation[static_cast<std::size_t>(i)])) += c.weight;
    }
  }
  return out;
}

}  // namespace pfsa
