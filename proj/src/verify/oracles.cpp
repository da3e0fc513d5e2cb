#include "pfsa/verify/oracles.hpp"

#include <stdexcept>

namespace pfsa::verify {

namespace {

double kernel(const Pfsa& a, std::size_t symbol, std::size_t to, std::size_t from) {
  return a.symbol(symbol).transition(static_cast<Eigen::Index>(to), static_cast<Eigen::Index>(from));
}

}  // namespace

std::vector<std::vector<double>> forward_posteriors(const Pfsa& automaton,
                                                    const std::vector<double>& initial,
                                                    const std::vector<std::size_t>& symbols) {
  const std::size_t m = automaton.states();
  if (initial.size() != m) {
    throw std::invalid_argument("forward_posteriors: initial distribution has the wrong size");
  }
  std::vector<std::vector<double>> out;
  std::vector<double> alpha(initial.begin(), initial.end());
  out.push_back(alpha);
  for (std::size_t symbol : symbols) {
    const RevealSet& reveal = automaton.symbol(symbol).reveal;
    std::vector<double> next(m, 0.0);
    for (std::size_t from = 0; from < m; ++from) {
      if (!reveal[from] || alpha[from] == 0.0) {
        continue;
      }
      for (std::size_t to = 0; to < m; ++to) {
        next[to] += alpha[from] * kernel(automaton, symbol, to, from);
      }
    }
    double total = 0.0;
    for (double v : next) {
      total += v;
    }
    if (total == 0.0) {
      out.push_back(std::vector<double>(m, 0.0));
      return out;
    }
    for (double& v : next) {
      v /= total;
    }
    alpha = next;
    out.push_back(alpha);
  }
  return out;
}

namespace {

void enumerate_paths(const Pfsa& a, const std::vector<std::size_t>& symbols, std::size_t t,
                     std::size_t state, double weight, std::vector<double>& final_mass) {
  if (weight == 0.0) {
    return;
  }
  if (t == symbols.size()) {
    final_mass[state] += weight;
    return;
  }
  const std::size_t symbol = symbols[t];
  if (!a.symbol(symbol).reveal[state]) {
    return;
  }
  for (std::size_t next = 0; next < a.states(); ++next) {
    enumerate_paths(a, symbols, t + 1, next, weight * kernel(a, symbol, next, state), final_mass);
  }
}

std::vector<double> final_masses(const Pfsa& automaton, const std::vector<double>& initial,
                                      const std::vector<std::size_t>& symbols) {
  if (initial.size() != automaton.states()) {
    throw std::invalid_argument("enumeration: initial distribution has the wrong size");
  }
  std::vector<double> mass(automaton.states(), 0.0);
  for (std::size_t q0 = 0; q0 < automaton.states(); ++q0) {
    enumerate_paths(automaton, symbols, 0, q0, initial[q0], mass);
  }
  return mass;
}

}  // namespace

std::vector<double> enumerated_posterior(const Pfsa& automaton, const std::vector<double>& initial,
                                         const std::vector<std::size_t>& symbols) {
  std::vector<double> mass = final_masses(automaton, initial, symbols);
  double total = 0.0;
  for (double v : mass) {
    total += v;
  }
  if (total > 0.0) {
    for (double& v : mass) {
      v /= total;
    }
  }
  return mass;
}

double enumerated_mass(const Pfsa& automaton, const std::vector<double>& initial,
                       const std::vector<std::size_t>& symbols) {
  double total = 0.0;
  for (double v : final_masses(automaton, initial, symbols)) {
    total += v;
  }
  return total;
}

Pfsa random_automaton(const RandomAutomatonOptions& options, Rng& rng) {
  const std::size_t m = options.states;
  const auto mi = static_cast<Eigen::Index>(m);
  AutomatonSpec spec;
  spec.states = m;
  spec.initial_state = rng.uniform_index(m);
  for (std::size_t s = 0; s < options.symbols; ++s) {
    Symbol sym;
    sym.name = "s" + std::to_string(s);
    sym.transition = Eigen::MatrixXd::Zero(mi, mi);
    for (Eigen::Index j = 0; j < mi; ++j) {
      double total = 0.0;
      for (Eigen::Index i = 0; i < mi; ++i) {
        const double v = rng.uniform_unit() < options.sparsity ? 0.0 : rng.uniform_unit();
        sym.transition(i, j) = v;
        total += v;
      }
      if (total == 0.0) {
        sym.transition(static_cast<Eigen::Index>(rng.uniform_index(m)), j) = 1.0;
      } else {
        sym.transition.col(j) /= total;
      }
      // Put the normalization residue on the largest entry so the column sums
      // to 1 up to a single rounding.
      Eigen::Index arg = 0;
      sym.transition.col(j).maxCoeff(&arg);
      sym.transition(arg, j) += 1.0 - sym.transition.col(j).sum();
    }
    sym.reveal.assign(m, false);
    bool any = false;
    for (std::size_t i = 0; i < m; ++i) {
      sym.reveal[i] = rng.uniform_unit() < 0.6;
      any = any || sym.reveal[i];
    }
    if (!any) {
      sym.reveal[rng.uniform_index(m)] = true;
    }
    spec.symbols.push_back(std::move(sym));
  }
  for (std::size_t q = 0; q < m; ++q) {
    bool covered = false;
    for (const auto& sym : spec.symbols) {
      covered = covered || sym.reveal[q];
    }
    if (!covered) {
      spec.symbols[rng.uniform_index(spec.symbols.size())].reveal[q] = true;
    }
  }
  return Pfsa(std::move(spec));
}

}  // namespace pfsa::verify
