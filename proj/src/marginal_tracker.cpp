#include "pfsa/marginal_tracker.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pfsa {

MarginalState MarginalState::identity(std::size_t n) {
  if (n == 0) {
    throw std::invalid_argument("marginal state needs at least one element");
  }
  const auto size = static_cast<Eigen::Index>(n);
  return MarginalState{Eigen::MatrixXd::Identity(size, size)};
}

MarginalState marginal_mix(const MarginalState& state, const MixSpec& mix) {
  if (static_cast<std::size_t>(state.H.rows()) != mix.size()) {
    throw std::invalid_argument("marginal_mix: mix size does not match the state");
  }
  return MarginalState{mix.matrix() * state.H};
}

MarginalState marginal_reveal(const MarginalState& state, const RevealSpec& reveal) {
  const auto n = static_cast<std::size_t>(state.H.rows());
  if (reveal.position >= n || reveal.element >= n ||
      static_cast<std::size_t>(state.H.cols()) != n) {
    throw std::invalid_argument("marginal_reveal: index out of range");
  }
  const auto i = static_cast<Eigen::Index>(reveal.position);
  const auto j = static_cast<Eigen::Index>(reveal.element);
  MarginalState next = state;
  next.H.row(i).setZero();
  next.H.col(j).setZero();
  next.H(i, j) = 1.0;
  return next;
}

AffineMarginalStep AffineMarginalStep::from_mix(const MixSpec& mix) {
  const auto n = static_cast<Eigen::Index>(mix.size());
  return {mix.matrix(), Eigen::MatrixXd::Identity(n, n), Eigen::MatrixXd::Zero(n, n)};
}

AffineMarginalStep AffineMarginalStep::from_reveal(std::size_t n, const RevealSpec& reveal) {
  if (reveal.position >= n || reveal.element >= n) {
    throw std::invalid_argument("reveal index out of range");
  }
  const auto size = static_cast<Eigen::Index>(n);
  const auto i = static_cast<Eigen::Index>(reveal.position);
  const auto j = static_cast<Eigen::Index>(reveal.element);
  AffineMarginalStep step{Eigen::MatrixXd::Identity(size, size),
                          Eigen::MatrixXd::Identity(size, size),
                          Eigen::MatrixXd::Zero(size, size)};
  step.left(i, i) = 0.0;
  step.right(j, j) = 0.0;
  step.bias(i, j) = 1.0;
  return step;
}

namespace {

void check_dimensions(const MarginalState& state, const AffineMarginalStep& step) {
  const Eigen::Index rows = state.H.rows();
  const Eigen::Index cols = state.H.cols();
  if (step.left.rows() != rows || step.left.cols() != rows || step.right.rows() != cols ||
      step.right.cols() != cols || step.bias.rows() != rows || step.bias.cols() != cols) {
    throw std::invalid_argument("marginal step dimensions do not match the state");
  }
}

}  // namespace

MarginalState bilinear_marginal_step(const MarginalState& state, const AffineMarginalStep& step) {
  check_dimensions(state, step);
  return MarginalState{step.left * state.H * step.right + step.bias};
}

MarginalState vectorized_marginal_step(const MarginalState& state, const AffineMarginalStep& step) {
  check_dimensions(state, step);
  const Eigen::Index rows = state.H.rows();
  const Eigen::Index cols = state.H.cols();
  const Eigen::MatrixXd op = kronecker(step.right.transpose(), step.left);
  const Eigen::VectorXd vec_h = Eigen::Map<const Eigen::VectorXd>(state.H.data(), rows * cols);
  const Eigen::VectorXd vec_b = Eigen::Map<const Eigen::VectorXd>(step.bias.data(), rows * cols);
  const Eigen::VectorXd vec_next = op * vec_h + vec_b;
  return MarginalState{Eigen::Map<const Eigen::MatrixXd>(vec_next.data(), rows, cols)};
}

Eigen::MatrixXd kronecker(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double birkhoff_residual(const Eigen::MatrixXd& h) {
  const double rows = (h.rowwise().sum().array() - 1.0).abs().maxCoeff();
  const double cols = (h.colwise().sum().array() - 1.0).abs().maxCoeff();
  return std::max(rows, cols);
}

double min_nonzero(const Eigen::MatrixXd& h) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < h.cols(); ++j) {
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
      const double v = h(i, j);
      if (v > 0.0 && (best == 0.0 || v < best)) {
        best = v;
      }
    }
  }
  return best;
}

}  // namespace pfsa
