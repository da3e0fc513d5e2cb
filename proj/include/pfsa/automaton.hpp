#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "pfsa/rng.hpp"

namespace pfsa {

// Membership mask over states; reveal[i] is true iff state i is consistent
// with the symbol.
using RevealSet = std::vector<bool>;

// One input symbol of a PFSA-SR.
//
// `transition` is column-stochastic: transition(i, j) is the probability of
// moving to state i from state j.
struct Symbol {
  std::string name;
  Eigen::MatrixXd transition;
  RevealSet reveal;
};

// Unvalidated automaton description, as read from a file or built in code.
struct AutomatonSpec {
  std::size_t states = 0;
  std::vector<Symbol> symbols;
  std::size_t initial_state = 0;
};

// Every invariant violated by `spec`; empty means valid. Never throws.
std::vector<std::string> validate(const AutomatonSpec& spec);

// A validated Probabilistic Finite-State Automaton with State Reveals.
// Immutable after construction.
class Pfsa {
 public:
  // Throws std::invalid_argument listing every violation.
  explicit Pfsa(AutomatonSpec spec);

  std::size_t states() const { return spec_.states; }
  std::size_t alphabet_size() const { return spec_.symbols.size(); }
  std::size_t initial_state() const { return spec_.initial_state; }
  const Symbol& symbol(std::size_t s) const { return spec_.symbols.at(s); }
  const std::vector<Symbol>& symbols() const { return spec_.symbols; }
  const AutomatonSpec& spec() const { return spec_; }

  // Index of the symbol with the given name; throws std::out_of_range.
  std::size_t symbol_index(const std::string& name) const;

  // Symbols whose reveal set contains `state`.
  std::vector<std::size_t> consistent_symbols(std::size_t state) const;

 private:
  AutomatonSpec spec_;
};

// Symbol with identity transition and the given reveal set.
Symbol reveal_only(std::size_t states, RevealSet subset, std::string name = "reveal");

// Symbol with a vacuous reveal (every state consistent).
Symbol transition_only(Eigen::MatrixXd transition, std::string name = "transition");

// Diagonal of the reveal matrix Z: 1.0 for consistent states, 0.0 otherwise.
Eigen::VectorXd reveal_mask(const RevealSet& reveal);
Eigen::MatrixXd reveal_matrix(const RevealSet& reveal);

// A probability vector over automaton states.
class Belief {
 public:
  static constexpr double kTolerance = 1e-12;

  // Throws std::invalid_argument unless entries are >= 0 and sum to 1 within
  // kTolerance.
  explicit Belief(Eigen::VectorXd probs);

  static Belief one_hot(std::size_t states, std::size_t state);
  static Belief uniform(std::size_t states);

  // Divides by the l1 norm; throws MassUnderflow on zero mass.
  static Belief normalized(const Eigen::VectorXd& weights);

  const Eigen::VectorXd& probs() const { return probs_; }
  std::size_t size() const { return static_cast<std::size_t>(probs_.size()); }
  double operator[](std::size_t i) const { return probs_(static_cast<Eigen::Index>(i)); }

 private:
  Eigen::VectorXd probs_;
};

// Reveal-then-transition update b' = f(T Z b) with f(x) = x / |x|_1.
// Throws ImpossibleObservation when Z b has zero mass.
Belief belief_update(const Pfsa& automaton, const Belief& belief, std::size_t symbol);

// Chooses the next symbol given the true state and the consistent candidates
// (never empty when called).
using SymbolPolicy = std::function<std::size_t(
    const Pfsa&, std::size_t state, std::span<const std::size_t> consistent, Rng&)>;

// Picks uniformly among the consistent symbols.
std::size_t uniform_policy(const Pfsa&, std::size_t state, std::span<const std::size_t> consistent,
                           Rng& rng);

struct Trajectory {
  std::vector<std::size_t> states;   // q_0 .. q_T
  std::vector<std::size_t> symbols;  // sigma_1 .. sigma_T
};

// Runs the environment for `steps` steps from the initial state. Each symbol
// satisfies the consistency constraint for the state it is emitted in; the
// successor is drawn from that state's column of the symbol's transition.
// Throws DeadEnd if a state has no consistent symbol.
Trajectory sample_trajectory(const Pfsa& automaton, std::size_t steps, Rng& rng,
                             const SymbolPolicy& policy = uniform_policy);

using BigInt = boost::multiprecision::cpp_int;

// 2^(n!): binary discretization of the joint belief over S_n.
// n is limited to 12 (the result has n! bits).
BigInt joint_discretization_count(unsigned n);

// k^((n-1)^2): k bins per coordinate of the Birkhoff polytope of S_n.
BigInt marginal_discretization_count(unsigned n, unsigned k);

}  // namespace pfsa
