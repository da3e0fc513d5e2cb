#include "pfsa/sinkhorn.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pfsa/errors.hpp"
#include "pfsa/marginal_tracker.hpp"

namespace pfsa {

SinkhornResult sinkhorn_project(const Eigen::MatrixXd& h, const SinkhornConfig& cfg) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    throw std::invalid_argument("sinkhorn_project: matrix must be square and nonempty");
  }
  if (!h.allFinite() || (h.array() < 0.0).any()) {
    throw std::invalid_argument("sinkhorn_project: entries must be finite and nonnegative");
  }
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    if (!(h.row(i).sum() > 0.0)) {
      throw NoSupport("sinkhorn_project: row " + std::to_string(i) + " has no support");
    }
    if (!(h.col(i).sum() > 0.0)) {
      throw NoSupport("sinkhorn_project: column " + std::to_string(i) + " has no support");
    }
  }

  SinkhornResult result{h, 0, birkhoff_residual(h), false};
  while (result.residual > cfg.tol && result.iterations < cfg.max_iters) {
    Eigen::MatrixXd& m = result.matrix;
    m.array().colwise() /= m.rowwise().sum().array();
    m.array().rowwise() /= m.colwise().sum().array();
    ++result.iterations;
    result.residual = birkhoff_residual(m);
  }
  result.converged = result.residual <= cfg.tol;
  return result;
}

}  // namespace pfsa
