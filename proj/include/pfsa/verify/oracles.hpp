#pragma once

// Reference computations used by the test suites and `pfsa verify`. They
// deliberately avoid the library's update paths (no Eigen products, no
// Belief type) so that agreement with the library is evidence rather than
// tautology.

#include <cstddef>
#include <vector>

#include "pfsa/automaton.hpp"
#include "pfsa/rng.hpp"

namespace pfsa::verify {

// Forward recursion for p(q_t | sigma_1..sigma_t), written directly from the
// reveal function and transition kernel, renormalized after every step so
// the oracle cannot underflow on long sequences. Returns t+1 distributions (including the
// initial one). An impossible symbol yields an all-zero row and stops the
// recursion.
std::vector<std::vector<double>> forward_posteriors(const Pfsa& automaton,
                                                    const std::vector<double>& initial,
                                                    const std::vector<std::size_t>& symbols);

// Posterior over the final state by enumerating every state path
// q_0..q_T, weighting it by initial(q_0) * prod [q_t in reveal] * T(q_{t+1}, q_t).
// Cost m^(T+1); intended for m^(T+1) up to a few hundred thousand.
std::vector<double> enumerated_posterior(const Pfsa& automaton, const std::vector<double>& initial,
                                         const std::vector<std::size_t>& symbols);

// Unnormalized path mass sum over paths (the same enumeration without the
// final normalization); equals the product of survival probabilities.
double enumerated_mass(const Pfsa& automaton, const std::vector<double>& initial,
                       const std::vector<std::size_t>& symbols);

struct RandomAutomatonOptions {
  std::size_t states = 4;
  std::size_t symbols = 3;
  // Probability that a transition entry is forced to zero before normalizing.
  double sparsity = 0.3;
};

// Random valid PFSA-SR in which every state is consistent with at least one
// symbol, so environment runs never dead-end.
Pfsa random_automaton(const RandomAutomatonOptions& options, Rng& rng);

}  // namespace pfsa::verify
