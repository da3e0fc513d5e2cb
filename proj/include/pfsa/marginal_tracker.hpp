#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "pfsa/mix.hpp"

namespace pfsa {

// Marginal belief over a shuffled list: H(i, j) is the probability that
// position i holds element j. Rows are positions, columns are elements.
//
// Only the mixing update keeps H exactly doubly stochastic. After reveals the
// tracked matrix generally leaves the Birkhoff polytope; it is a linear
// surrogate for the true marginal whose support contains the true support,
// and sinkhorn_project recovers a doubly stochastic matrix for decoding.
struct MarginalState {
  Eigen::MatrixXd H;

  static MarginalState identity(std::size_t n);
};

// H <- P_s H.
MarginalState marginal_mix(const MarginalState& state, const MixSpec& mix);

// H <- D_l H D_r + B with D_l = I - e_i e_i^T, D_r = I - e_j e_j^T and
// B = e_i e_j^T: row i becomes e_j^T, column j becomes e_i, everything else is
// left untouched.
MarginalState marginal_reveal(const MarginalState& state, const RevealSpec& reveal);

// General step H' = A_l H A_r + B of the bilinear recurrence.
struct AffineMarginalStep {
  Eigen::MatrixXd left;   // A_l = P_s D_l
  Eigen::MatrixXd right;  // A_r = D_r
  Eigen::MatrixXd bias;   // B

  static AffineMarginalStep from_mix(const MixSpec& mix);
  static AffineMarginalStep from_reveal(std::size_t n, const RevealSpec& reveal);
};

// Direct evaluation A_l H A_r + B.
MarginalState bilinear_marginal_step(const MarginalState& state, const AffineMarginalStep& step);

// The same step through the vectorized form
//   vec(H') = (A_r^T kron A_l) vec(H) + vec(B)
// with column-major vec. Exists to check the Kronecker identity, not for speed
// (it materializes an n^2 x n^2 matrix). Throws on dimension mismatch.
MarginalState vectorized_marginal_step(const MarginalState& state, const AffineMarginalStep& step);

Eigen::MatrixXd kronecker(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

// Max deviation of any row or column sum from 1.
double birkhoff_residual(const Eigen::MatrixXd& h);

// Smallest strictly positive entry, or 0 if there is none.
double min_nonzero(const Eigen::MatrixXd& h);

}  // namespace pfsa
