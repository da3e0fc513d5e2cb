#pragma once

#include <cstddef>

#include <Eigen/Dense>

namespace pfsa {

struct SinkhornConfig {
  std::size_t max_iters = 1000;
  double tol = 1e-9;
};

struct SinkhornResult {
  Eigen::MatrixXd matrix;
  std::size_t iterations = 0;  // row+column sweeps performed
  double residual = 0.0;       // max |row or column sum - 1| of `matrix`
  bool converged = false;
};

// Sinkhorn-Knopp: alternately rescales rows and then columns to unit sum until
// the Birkhoff residual is at most cfg.tol or cfg.max_iters sweeps have run.
// Input already within tolerance is returned unchanged with zero sweeps.
// Non-convergence is not an error; the last iterate and its residual are
// returned with converged = false.
//
// Throws std::invalid_argument for non-square or negative input, and
// NoSupport when some row or column has no positive entry.
SinkhornResult sinkhorn_project(const Eigen::MatrixXd& h, const SinkhornConfig& cfg = {});

}  // namespace pfsa
