#include "pfsa/householder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pfsa {

void validate(const HouseholderStep& step) {
  if (step.key.size() == 0) {
    throw std::invalid_argument("householder key must be nonempty");
  }
  if (std::abs(step.key.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("householder key must have unit norm");
  }
  if (!(step.beta >= 0.0 && step.beta <= 2.0)) {
    throw std::invalid_argument("householder beta must lie in [0, 2]");
  }
}

Eigen::MatrixXd householder_matrix(const HouseholderStep& step) {
  validate(step);
  const auto n = step.key.size();
  return Eigen::MatrixXd::Identity(n, n) - step.beta * step.key * step.key.transpose();
}

HouseholderStep swap_head(std::size_t n, std::size_t i, std::size_t j) {
  if (i >= n || j >= n) {
    throw std::invalid_argument("swap_head: index out of range");
  }
  if (i == j) {
    throw std::invalid_argument("swap_head: indices must differ");
  }
  Eigen::VectorXd key = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  key(static_cast<Eigen::Index>(i)) = 1.0 / std::sqrt(2.0);
  key(static_cast<Eigen::Index>(j)) = -1.0 / std::sqrt(2.0);
  return HouseholderStep{2.0, std::move(key)};
}

RecurrentState run_recurrence(const std::vector<HouseholderStep>& steps, const Eigen::MatrixXd& h0) {
  RecurrentState state{h0};
  for (const auto& step : steps) {
    validate(step);
    if (step.key.size() != state.H.rows()) {
      throw std::invalid_argument("run_recurrence: key dimension does not match the state");
    }
    // (I - beta k k^T) H without forming A.
    const Eigen::RowVectorXd projected = step.key.transpose() * state.H;
    state.H.noalias() -= step.beta * step.key * projected;
  }
  return state;
}

EigenRange eigenrange_check(const std::vector<HouseholderStep>& steps) {
  EigenRange range;
  for (const auto& step : steps) {
    validate(step);
    const double eig = 1.0 - step.beta;
    range.min_eig = std::min(range.min_eig, eig);
    range.max_eig = std::max(range.max_eig, eig);
  }
  range.has_negative = range.min_eig < 0.0;
  return range;
}

SpectrumCheck check_spectrum(const HouseholderStep& step, Rng& rng) {
  const Eigen::MatrixXd a = householder_matrix(step);
  SpectrumCheck check;
  check.key_residual = (a * step.key - (1.0 - step.beta) * step.key).norm();
  if (step.key.size() < 2) {
    return check;
  }
  Eigen::VectorXd u(step.key.size());
  do {
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      u(i) = 2.0 * rng.uniform_unit() - 1.0;
    }
    u -= step.key.dot(u) * step.key;
  } while (u.norm() < 1e-6);
  u.normalize();
  check.complement_residual = (a * u - u).norm();
  return check;
}

}  // namespace pfsa
