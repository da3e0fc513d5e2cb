#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "pfsa/rng.hpp"

namespace pfsa {

// Generalized Householder transition A = I - beta k k^T with unit key k.
// Eigenvalue 1 - beta on span{k}, 1 on its orthogonal complement.
struct HouseholderStep {
  double beta = 0.0;
  Eigen::VectorXd key;
};

// Throws std::invalid_argument unless |key|_2 = 1 within 1e-12 and
// 0 <= beta <= 2.
void validate(const HouseholderStep& step);

Eigen::MatrixXd householder_matrix(const HouseholderStep& step);

// beta = 2, k = (e_i - e_j) / sqrt(2): the reflection that swaps rows i and j,
// equal to to_matrix(Permutation::transposition(n, i, j)).
HouseholderStep swap_head(std::size_t n, std::size_t i, std::size_t j);

// H_t = A_t H_{t-1} with no input injection, applied in sequence order.
struct RecurrentState {
  Eigen::MatrixXd H;
};

// Throws std::invalid_argument when a key's dimension differs from H0's rows.
RecurrentState run_recurrence(const std::vector<HouseholderStep>& steps, const Eigen::MatrixXd& h0);

struct EigenRange {
  double min_eig = 1.0;
  double max_eig = 1.0;
  bool has_negative = false;
};

// Extremes of the transition spectrum over the sequence. Every step has
// eigenvalues {1 - beta, 1}; an empty sequence reports the identity's {1}.
EigenRange eigenrange_check(const std::vector<HouseholderStep>& steps);

// Largest deviation of the computed action from the predicted eigenvalues:
// |A k - (1 - beta) k| and |A u - u| for a random unit u orthogonal to k.
struct SpectrumCheck {
  double key_residual = 0.0;
  double complement_residual = 0.0;
};

SpectrumCheck check_spectrum(const HouseholderStep& step, Rng& rng);

}  // namespace pfsa
