#include "pfsa/verify/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "pfsa/automaton.hpp"
#include "pfsa/configuration_space.hpp"
#include "pfsa/dataset.hpp"
#include "pfsa/decay.hpp"
#include "pfsa/householder.hpp"
#include "pfsa/joint_tracker.hpp"
#include "pfsa/marginal_tracker.hpp"
#include "pfsa/precision.hpp"
#include "pfsa/repl_trace.hpp"
#include "pfsa/sinkhorn.hpp"
#include "pfsa/verify/oracles.hpp"

namespace pfsa::verify {

namespace {

constexpr double kDecodeTol = 1e-15;
constexpr double kOracleTol = 1e-9;
constexpr double kBridgeTol = 1e-9;
constexpr double kSinkhornTol = 1e-9;
constexpr double kKroneckerTol = 1e-12;
constexpr double kHouseholderTol = 1e-12;
constexpr double kSpectrumTol = 1e-10;

constexpr double kDecayBudget = 1.0;
constexpr double kOracleBudget = 30.0;
constexpr double kTraceBudget = 60.0;

// Accumulates the first few failure messages of a check.
class Failures {
 public:
  template <class... Args>
  void add(fmt::format_string<Args...> format, Args&&... args) {
    if (count_++ < kKept) {
      messages_.push_back(fmt::format(format, std::forward<Args>(args)...));
    }
  }
  bool empty() const { return count_ == 0; }
  std::string summary() const {
    std::string out = fmt::format("{} failure(s)", count_);
    for (const auto& m : messages_) {
      out += "; " + m;
    }
    return out;
  }

 private:
  static constexpr std::size_t kKept = 3;
  std::size_t count_ = 0;
  std::vector<std::string> messages_;
};

CheckResult timed(int id, std::string name, double budget,
                  const std::function<std::string(Failures&)>& body) {
  CheckResult result;
  result.id = id;
  result.name = std::move(name);
  result.time_limit = budget;
  Failures failures;
  const auto start = std::chrono::steady_clock::now();
  std::string detail;
  try {
    detail = body(failures);
  } catch (const std::exception& e) {
    failures.add("unexpected exception: {}", e.what());
  }
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.passed = failures.empty();
  result.detail = result.passed ? detail : failures.summary();
  if (budget > 0.0 && result.seconds >= budget) {
    result.passed = false;
    result.detail += fmt::format("; took {:.3f} s, budget {:.0f} s", result.seconds, budget);
  }
  return result;
}

double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    return INFINITY;
  }
  return (a - b).cwiseAbs().maxCoeff();
}

Eigen::MatrixXd matrix3(std::initializer_list<double> values) {
  Eigen::MatrixXd m(3, 3);
  auto it = values.begin();
  for (Eigen::Index i = 0; i < 3; ++i) {
    for (Eigen::Index j = 0; j < 3; ++j) {
      m(i, j) = *it++;
    }
  }
  return m;
}

MixSpec random_mix(std::size_t n, Rng& rng) {
  const std::size_t k = 1 + rng.uniform_index(3);
  std::vector<double> weights(k);
  double total = 0.0;
  for (double& w : weights) {
    w = 0.05 + rng.uniform_unit();
    total += w;
  }
  std::vector<MixComponent> components;
  double used = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    const double w = c + 1 == k ? 1.0 - used : weights[c] / total;
    used += w;
    components.push_back({sample_uniform(n, rng), w});
  }
  return MixSpec(std::move(components));
}

}  // namespace

CheckResult check_joint_decay(const VerifyOptions&) {
  return timed(1, "joint absorbing decay", kDecayBudget, [](Failures& failures) {
    constexpr std::size_t cycles = 20;
    const DecayReport report = run_and_report({ScenarioKind::joint_absorbing, cycles});
    if (report.records.size() != 2 * cycles) {
      failures.add("expected {} rows, got {}", 2 * cycles, report.records.size());
      return std::string();
    }
    for (std::size_t t = 1; t <= cycles; ++t) {
      const auto& reveal = report.records[2 * t - 1];
      const double expected = std::ldexp(1.0, -static_cast<int>(t));
      if (reveal.l1_norm != expected) {
        failures.add("cycle {}: |h|_1 = {:.17g}, expected 2^-{}", t, reveal.l1_norm, t);
      }
    }
    const JointScenario scenario = adversarial_joint_scenario(cycles);
    JointLinearState state = JointLinearState::from_belief(scenario.initial);
    const Eigen::Vector3d target(0.0, 0.5, 0.5);
    for (std::size_t k = 0; k < scenario.inputs.size(); ++k) {
      const std::size_t symbol = std::get<std::size_t>(scenario.inputs[k]);
      state = joint_step(state, scenario.automaton, symbol);
      if (symbol == 1) {
        const double err = max_abs_diff(joint_decode(state).probs(), target);
        if (err > kDecodeTol) {
          failures.add("decode after reveal {} off by {:.3g}", (k + 1) / 2, err);
        }
      }
    }
    return fmt::format("|h|_1 = 2^-t for t = 1..{}, decode = [0, .5, .5]", cycles);
  });
}

CheckResult check_marginal_decay(const VerifyOptions&) {
  return timed(2, "marginal swap-reveal decay", kDecayBudget, [](Failures& failures) {
    const std::vector<Eigen::MatrixXd> expected = {
        matrix3({1, 0, 0, 0, .5, .5, 0, .5, .5}),
        matrix3({1, 0, 0, 0, 1, 0, 0, 0, .5}),
        matrix3({1, 0, 0, 0, .5, .25, 0, .5, .25}),
        matrix3({1, 0, 0, 0, 1, 0, 0, 0, .25}),
        matrix3({1, 0, 0, 0, .5, .125, 0, .5, .125}),
    };
    const MarginalScenario scenario = adversarial_marginal_scenario(3);
    MarginalState state = MarginalState::identity(3);
    for (std::size_t k = 0; k < expected.size(); ++k) {
      if (const auto* mix = std::get_if<MixSpec>(&scenario.inputs[k])) {
        state = marginal_mix(state, *mix);
      } else {
        state = marginal_reveal(state, std::get<RevealSpec>(scenario.inputs[k]));
      }
      if (state.H != expected[k]) {
        failures.add("H_{} differs by {:.3g}", k + 1, max_abs_diff(state.H, expected[k]));
      }
    }
    const DecayReport report = run_and_report({ScenarioKind::marginal_swap_reveal, 3});
    const double minima[] = {0.5, 0.25, 0.125};
    for (std::size_t c = 0; c < 3; ++c) {
      const double got = report.records[2 * c + 1].min_nonzero;
      if (got != minima[c]) {
        failures.add("cycle {}: min nonzero {:.17g}, expected {}", c + 1, got, minima[c]);
      }
    }
    return std::string("H_1..H_5 exact, min nonzero .5, .25, .125");
  });
}

CheckResult check_s3_worked_example(const VerifyOptions&) {
  return timed(3, "S3 joint worked example", 0.0, [](Failures& failures) {
    const ConfigurationSpace space(3);
    // Universe numbering of the worked example, as one-line arrays.
    const std::vector<std::vector<std::size_t>> universes = {
        {0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
    std::vector<std::size_t> index;
    for (const auto& u : universes) {
      index.push_back(space.index_of(Permutation(u)));
    }
    const MixSpec fuzzy({{Permutation::transposition(3, 0, 1), 0.5},
                         {Permutation::transposition(3, 0, 2), 0.5}});
    AutomatonSpec spec;
    spec.states = space.size();
    spec.symbols.push_back(joint_mix_symbol(space, fuzzy, "fuzzy"));
    spec.symbols.push_back(joint_reveal_symbol(space, RevealSpec{0, 2}, "reveal"));
    const Pfsa automaton(std::move(spec));

    auto in_universe_order = [&](const Eigen::VectorXd& h) {
      Eigen::VectorXd out(6);
      for (std::size_t u = 0; u < 6; ++u) {
        out(static_cast<Eigen::Index>(u)) = h(static_cast<Eigen::Index>(index[u]));
      }
      return out;
    };
    Eigen::VectorXd h1_expected(6), h2_expected(6);
    h1_expected << 0, .5, .5, 0, 0, 0;
    h2_expected << 0, 0, .5, 0, 0, 0;

    JointLinearState state = JointLinearState::from_belief(Belief::one_hot(6, index[0]));
    state = joint_step(state, automaton, 0);
    if (in_universe_order(state.h) != h1_expected) {
      failures.add("h1 mismatch");
    }
    state = joint_step(state, automaton, 1);
    if (in_universe_order(state.h) != h2_expected) {
      failures.add("h2 mismatch");
    }
    state = gated_reset(state, Belief::uniform(6));
    const double err = (state.h.array() - 1.0 / 6.0).abs().maxCoeff();
    if (err > kDecodeTol) {
      failures.add("uniform reset off by {:.3g}", err);
    }
    return std::string("h1, h2 exact, reset uniform");
  });
}

CheckResult check_conditional_swap(const VerifyOptions&) {
  return timed(4, "conditional swap belief", 0.0, [](Failures& failures) {
    AutomatonSpec spec;
    spec.states = 2;
    Eigen::MatrixXd half = Eigen::MatrixXd::Constant(2, 2, 0.5);
    spec.symbols.push_back(transition_only(half, "maybe_swap"));
    spec.symbols.push_back(reveal_only(2, {true, false}, "print_a"));
    const Pfsa automaton(std::move(spec));
    Belief b = Belief::one_hot(2, 0);
    b = belief_update(automaton, b, 0);
    if (b.probs() != Eigen::Vector2d(0.5, 0.5)) {
      failures.add("after the swap: [{}, {}]", b[0], b[1]);
    }
    b = belief_update(automaton, b, 1);
    if (b.probs() != Eigen::Vector2d(1.0, 0.0)) {
      failures.add("after the reveal: [{}, {}]", b[0], b[1]);
    }
    return std::string("[1, 0] -> [.5, .5] -> [1, 0]");
  });
}

CheckResult check_oracle_equivalence(const VerifyOptions& options) {
  return timed(5, "joint tracker vs forward oracle", kOracleBudget, [&](Failures& failures) {
    Rng rng(derive_seed(options.seed, 5));
    const std::size_t max_states = std::max<std::size_t>(2, options.max_n);
    double worst_decode = 0.0;
    double worst_mass = 0.0;
    for (std::size_t a = 0; a < options.samples; ++a) {
      RandomAutomatonOptions ro;
      ro.states = 2 + rng.uniform_index(max_states - 1);
      ro.symbols = 1 + rng.uniform_index(4);
      const Pfsa automaton = random_automaton(ro, rng);
      const Trajectory path = sample_trajectory(automaton, options.steps, rng);
      std::vector<double> initial(automaton.states(), 0.0);
      initial[automaton.initial_state()] = 1.0;
      const auto oracle = forward_posteriors(automaton, initial, path.symbols);

      JointLinearState state =
          JointLinearState::from_belief(Belief::one_hot(automaton.states(), automaton.initial_state()));
      double mass = 1.0;
      for (std::size_t t = 0; t < path.symbols.size(); ++t) {
        const std::size_t symbol = path.symbols[t];
        double s = 0.0;
        for (std::size_t q = 0; q < automaton.states(); ++q) {
          if (automaton.symbol(symbol).reveal[q]) {
            s += oracle[t][q];
          }
        }
        mass *= s;
        state = joint_step(state, automaton, symbol);
        const Belief decoded = joint_decode(state);
        for (std::size_t q = 0; q < automaton.states(); ++q) {
          const double err = std::abs(decoded[q] - oracle[t + 1][q]);
          worst_decode = std::max(worst_decode, err);
          if (err > kOracleTol) {
            failures.add("automaton {} step {} state {}: error {:.3g}", a, t + 1, q, err);
          }
        }
        const double norm = state.h.cwiseAbs().sum();
        const double rel = std::abs(norm - mass) / mass;
        worst_mass = std::max(worst_mass, rel);
        if (rel > kOracleTol) {
          failures.add("automaton {} step {}: telescoping error {:.3g}", a, t + 1, rel);
        }
      }
    }
    return fmt::format("{} automata x {} steps, max decode error {:.2g}, max mass error {:.2g}",
                       options.samples, options.steps, worst_decode, worst_mass);
  });
}

namespace {

// Exhaustive support check on n = 3: every operation sequence up to `depth`
// over maybe-swaps, certain transpositions and all reveals.
void support_walk(const ConfigurationSpace& space, const std::vector<MixSpec>& mixes,
                  const MarginalState& tracker, const Eigen::VectorXd& posterior,
                  std::size_t depth, std::size_t& nodes, Failures& failures) {
  if (depth == 0) {
    return;
  }
  const std::size_t n = space.n();
  for (const auto& mix : mixes) {
    const MarginalState next = marginal_mix(tracker, mix);
    const Eigen::VectorXd post = joint_transition(space, mix) * posterior;
    ++nodes;
    support_walk(space, mixes, next, post, depth - 1, nodes, failures);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const RevealSpec reveal{i, j};
      const RevealSet keep = joint_reveal(space, reveal);
      Eigen::VectorXd post = posterior;
      for (std::size_t c = 0; c < space.size(); ++c) {
        if (!keep[c]) {
          post(static_cast<Eigen::Index>(c)) = 0.0;
        }
      }
      const double total = post.sum();
      if (total == 0.0) {
        continue;  // impossible observation
      }
      post /= total;
      const MarginalState next = marginal_reveal(tracker, reveal);
      const Eigen::MatrixXd truth = joint_to_marginal(space, post);
      ++nodes;
      for (Eigen::Index r = 0; r < next.H.rows(); ++r) {
        for (Eigen::Index c = 0; c < next.H.cols(); ++c) {
          if (next.H(r, c) == 0.0 && truth(r, c) != 0.0) {
            failures.add("tracker zero at ({}, {}) where the posterior has {:.3g}", r, c, truth(r, c));
          }
        }
      }
      support_walk(space, mixes, next, post, depth - 1, nodes, failures);
    }
  }
}

}  // namespace

CheckResult check_marginal_bridge(const VerifyOptions& options) {
  return timed(6, "marginal vs joint bridge", 0.0, [&](Failures& failures) {
    constexpr std::size_t kSteps = 20;
    constexpr std::size_t kSequences = 200;
    Rng rng(derive_seed(options.seed, 6));
    const std::size_t top = std::min<std::size_t>(4, std::max<std::size_t>(2, options.max_n));
    double worst = 0.0;
    for (std::size_t n = 2; n <= top; ++n) {
      const ConfigurationSpace space(n);
      for (std::size_t s = 0; s < kSequences; ++s) {
        Eigen::VectorXd joint = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(space.size()));
        if (s % 2 == 0) {
          joint(0) = 1.0;
        } else {
          for (Eigen::Index c = 0; c < joint.size(); ++c) {
            joint(c) = rng.uniform_unit();
          }
          joint /= joint.sum();
        }
        MarginalState tracker{joint_to_marginal(space, joint)};
        for (std::size_t t = 0; t < kSteps; ++t) {
          const MixSpec mix = random_mix(n, rng);
          tracker = marginal_mix(tracker, mix);
          joint = joint_transition(space, mix) * joint;
          const double err = max_abs_diff(tracker.H, joint_to_marginal(space, joint));
          worst = std::max(worst, err);
          if (err > kBridgeTol) {
            failures.add("n = {} sequence {} step {}: error {:.3g}", n, s, t + 1, err);
          }
        }
      }
    }

    const ConfigurationSpace s3(3);
    std::vector<MixSpec> mixes;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = i + 1; j < 3; ++j) {
        mixes.push_back(MixSpec::maybe_swap(3, i, j, 0.5));
        mixes.push_back(MixSpec::certain(Permutation::transposition(3, i, j)));
      }
    }
    constexpr std::size_t kDepth = 4;
    std::size_t nodes = 0;
    Eigen::VectorXd start = Eigen::VectorXd::Zero(6);
    start(0) = 1.0;
    support_walk(s3, mixes, MarginalState::identity(3), start, kDepth, nodes, failures);
    return fmt::format("mixing error {:.2g} for n = 2..{}; support sound on {} n = 3 sequences",
                       worst, top, nodes);
  });
}

CheckResult check_sinkhorn(const VerifyOptions& options) {
  return timed(7, "sinkhorn projection", 0.0, [&](Failures& failures) {
    Rng rng(derive_seed(options.seed, 7));
    std::size_t max_sweeps = 0;
    for (std::size_t k = 0; k < options.samples; ++k) {
      Eigen::MatrixXd m(5, 5);
      for (Eigen::Index i = 0; i < 5; ++i) {
        for (Eigen::Index j = 0; j < 5; ++j) {
          // Entries spread over three orders of magnitude, all positive.
          m(i, j) = std::exp(7.0 * rng.uniform_unit() - 3.5);
        }
      }
      const SinkhornResult r = sinkhorn_project(m);
      max_sweeps = std::max(max_sweeps, r.iterations);
      const double rows = (r.matrix.rowwise().sum().array() - 1.0).abs().maxCoeff();
      const double cols = (r.matrix.colwise().sum().array() - 1.0).abs().maxCoeff();
      if (!r.converged || rows > kSinkhornTol || cols > kSinkhornTol) {
        failures.add("matrix {}: row error {:.3g}, column error {:.3g}", k, rows, cols);
      }
    }
    Eigen::MatrixXd diag = Eigen::Vector3d(1.0, 1.0, 0.5).asDiagonal();
    const SinkhornResult r = sinkhorn_project(diag);
    const double err = max_abs_diff(r.matrix, Eigen::MatrixXd::Identity(3, 3));
    if (err > kSinkhornTol) {
      failures.add("diag(1, 1, .5) projects {:.3g} away from I", err);
    }
    return fmt::format("{} matrices, at most {} sweeps; diag(1, 1, .5) -> I", options.samples,
                       max_sweeps);
  });
}

CheckResult check_vectorization(const VerifyOptions& options) {
  return timed(8, "vectorized vs bilinear step", 0.0, [&](Failures& failures) {
    Rng rng(derive_seed(options.seed, 8));
    auto random_matrix = [&](Eigen::Index n) {
      Eigen::MatrixXd m(n, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
          m(i, j) = 2.0 * rng.uniform_unit() - 1.0;
        }
      }
      return m;
    };
    double worst = 0.0;
    for (std::size_t k = 0; k < options.samples; ++k) {
      const std::size_t n = 2 + rng.uniform_index(5);
      const auto ni = static_cast<Eigen::Index>(n);
      AffineMarginalStep step;
      switch (k % 3) {
        case 0:
          step = AffineMarginalStep::from_mix(random_mix(n, rng));
          break;
        case 1:
          step = AffineMarginalStep::from_reveal(n, {rng.uniform_index(n), rng.uniform_index(n)});
          break;
        default:
          step = {random_matrix(ni), random_matrix(ni), random_matrix(ni)};
      }
      const MarginalState h{random_matrix(ni)};
      const double err =
          max_abs_diff(vectorized_marginal_step(h, step).H, bilinear_marginal_step(h, step).H);
      worst = std::max(worst, err);
      if (err > kKroneckerTol) {
        failures.add("instance {} (n = {}): error {:.3g}", k, n, err);
      }
    }
    return fmt::format("{} instances, max error {:.2g}", options.samples, worst);
  });
}

CheckResult check_householder(const VerifyOptions& options) {
  return timed(9, "householder transposition tracking", 0.0, [&](Failures& failures) {
    constexpr std::size_t kN = 8;
    constexpr std::size_t kSteps = 256;
    constexpr std::size_t kSequences = 32;
    Rng rng(derive_seed(options.seed, 9));
    double worst = 0.0;
    for (std::size_t s = 0; s < kSequences; ++s) {
      std::vector<HouseholderStep> steps;
      Permutation composed = Permutation::identity(kN);
      for (std::size_t t = 0; t < kSteps; ++t) {
        const std::size_t i = rng.uniform_index(kN);
        std::size_t j = rng.uniform_index(kN - 1);
        j += j >= i ? 1 : 0;
        steps.push_back(swap_head(kN, i, j));
        composed = compose(composed, Permutation::transposition(kN, i, j));
      }
      const RecurrentState out =
          run_recurrence(steps, Eigen::MatrixXd::Identity(kN, kN));
      const double err = max_abs_diff(out.H, to_matrix(composed));
      worst = std::max(worst, err);
      if (err > kHouseholderTol) {
        failures.add("sequence {}: deviation {:.3g}", s, err);
      }
      const EigenRange range = eigenrange_check(steps);
      if (range.min_eig != -1.0 || !range.has_negative) {
        failures.add("sequence {}: min eigenvalue {} at beta = 2", s, range.min_eig);
      }
      for (std::size_t t = 0; t < 4; ++t) {
        const SpectrumCheck sc = check_spectrum(steps[t], rng);
        if (sc.key_residual > kSpectrumTol || sc.complement_residual > kSpectrumTol) {
          failures.add("sequence {} step {}: spectrum residual {:.3g} / {:.3g}", s, t,
                       sc.key_residual, sc.complement_residual);
        }
      }
    }
    for (std::size_t s = 0; s < kSequences; ++s) {
      std::vector<HouseholderStep> steps;
      for (std::size_t t = 0; t < kSteps; ++t) {
        HouseholderStep step = swap_head(kN, 0, 1 + rng.uniform_index(kN - 1));
        step.beta = rng.uniform_unit();
        steps.push_back(std::move(step));
      }
      const EigenRange range = eigenrange_check(steps);
      if (range.min_eig < 0.0 || range.has_negative) {
        failures.add("beta <= 1 sequence {}: min eigenvalue {}", s, range.min_eig);
      }
    }
    return fmt::format("{} sequences of {} swaps in S_{}, max deviation {:.2g}", kSequences,
                       kSteps, kN, worst);
  });
}

CheckResult check_state_counts(const VerifyOptions&) {
  return timed(10, "discretization counts", 0.0, [](Failures& failures) {
    const BigInt expected("1" + std::string(81, '0'));
    const BigInt marginal = marginal_discretization_count(10, 10);
    if (marginal != expected) {
      failures.add("marginal(10, 10) = {}", marginal.str());
    }
    const BigInt joint = joint_discretization_count(3);
    if (joint != 64) {
      failures.add("joint(3) = {}", joint.str());
    }
    return std::string("marginal(10, 10) = 10^81, joint(3) = 64");
  });
}

CheckResult check_trace_pipeline(const VerifyOptions& options) {
  return timed(11, "trace round trip", kTraceBudget, [&](Failures& failures) {
    Rng rng(derive_seed(options.seed, 11));
    std::vector<TraceConfig> configs;
    for (std::size_t k = 0; k < options.traces; ++k) {
      TraceConfig c;
      c.n_vars = 2 + rng.uniform_index(7);
      c.n_commands = 1 + rng.uniform_index(64);
      c.reveal_spacing = std::size_t{1} << rng.uniform_index(4);
      c.command_kind = rng.uniform_index(2) == 0 ? CommandKind::elementary_swap
                                                 : CommandKind::full_permutation;
      configs.push_back(indexed_config(c, options.seed, k));
    }
    std::vector<Trace> traces;
    traces.reserve(configs.size());
    std::size_t reveals = 0;
    for (std::size_t k = 0; k < configs.size(); ++k) {
      Trace trace = generate(configs[k]);
      std::string text = trace.text;
      if (options.inject_fault && k == 0 && !trace.reveal_spans.empty()) {
        const Span span = trace.reveal_spans.front();
        text.replace(span.start, span.end - span.start, "999");
      }
      const Trace parsed = parse(text);
      if (parsed.events != trace.events && !(options.inject_fault && k == 0)) {
        failures.add("trace {}: parsed events differ", k);
      }
      if (parsed.config.n_vars != trace.config.n_vars ||
          parsed.config.n_commands != trace.config.n_commands) {
        failures.add("trace {}: parsed shape differs", k);
      }
      if (render(parsed) != text) {
        failures.add("trace {}: re-render differs", k);
      }
      const ExecutionReport report = execute(parsed.events);
      reveals += report.reveals_checked;
      if (!report.disagreements.empty()) {
        failures.add("trace {}: {} reveal disagreement(s)", k, report.disagreements.size());
      }
      if (report.final_state != trace.final_state) {
        failures.add("trace {}: final state differs", k);
      }
      traces.push_back(std::move(trace));
    }

    std::ostringstream first, second;
    export_dataset(traces, first);
    std::vector<Trace> again;
    again.reserve(configs.size());
    for (const auto& c : configs) {
      again.push_back(generate(c));
    }
    export_dataset(again, second);
    if (first.str() != second.str()) {
      failures.add("regenerated dataset differs");
    }

    const std::pair<std::size_t, std::size_t> schedule[] = {{8, 1}, {16, 2}, {32, 4}, {64, 8}};
    const auto stages = curriculum(3, options.seed);
    if (stages.size() != 4) {
      failures.add("curriculum has {} stages", stages.size());
    } else {
      for (std::size_t s = 0; s < 4; ++s) {
        if (stages[s].trace_length != schedule[s].first ||
            stages[s].reveal_spacing != schedule[s].second) {
          failures.add("stage {} is ({}, {})", s + 1, stages[s].trace_length,
                       stages[s].reveal_spacing);
        }
        for (const auto& c : stages[s].configs) {
          if (c.n_commands != schedule[s].first || c.reveal_spacing != schedule[s].second ||
              c.n_vars != 5 || c.command_kind != CommandKind::full_permutation) {
            failures.add("stage {} has a mismatched config", s + 1);
          }
        }
      }
    }
    return fmt::format("{} traces, {} reveals checked, regeneration identical, curriculum "
                       "(8,1) (16,2) (32,4) (64,8)",
                       traces.size(), reveals);
  });
}

CheckResult check_underflow_threshold(const VerifyOptions&) {
  return timed(12, "underflow threshold", 0.0, [](Failures& failures) {
    const PrecisionModel fp32 = PrecisionModel::binary32();
    const DecayReport absorbing = run_and_report({ScenarioKind::joint_absorbing, 200}, fp32);
    if (!absorbing.first_underflow_cycle) {
      failures.add("joint-absorbing never underflowed in 200 cycles");
    } else if (*absorbing.first_underflow_cycle != 127) {
      failures.add("joint-absorbing first underflows at cycle {}, expected 127",
                   *absorbing.first_underflow_cycle);
    }
    ScenarioRequest reset{ScenarioKind::full_reveal_every_k, 10000};
    reset.reset_every = 8;
    const DecayReport guarded = run_and_report(reset, fp32);
    if (guarded.first_underflow_step) {
      failures.add("reset every 8 cycles underflowed at step {}", *guarded.first_underflow_step);
    }
    return std::string("first underflow at cycle 127; none over 10^4 cycles with k = 8");
  });
}

std::vector<CheckResult> run_acceptance(const VerifyOptions& options) {
  using Check = CheckResult (*)(const VerifyOptions&);
  const Check checks[] = {check_joint_decay,        check_marginal_decay,  check_s3_worked_example,
                          check_conditional_swap,   check_oracle_equivalence,
                          check_marginal_bridge,    check_sinkhorn,        check_vectorization,
                          check_householder,        check_state_counts,    check_trace_pipeline,
                          check_underflow_threshold};
  std::vector<CheckResult> results;
  for (Check check : checks) {
    results.push_back(check(options));
  }
  return results;
}

std::string format_result(const CheckResult& result) {
  std::string line = fmt::format("{}  {:>2}  {} ({:.3f} s)", result.passed ? "PASS" : "FAIL",
                                 result.id, result.name, result.seconds);
  if (!result.detail.empty()) {
    line += ": " + result.detail;
  }
  return line;
}

}  // namespace pfsa::verify
