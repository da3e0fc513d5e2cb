#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "pfsa/configuration_space.hpp"
#include "pfsa/decay.hpp"
#include "pfsa/errors.hpp"
#include "pfsa/joint_tracker.hpp"
#include "pfsa/verify/oracles.hpp"

using pfsa::Belief;
using pfsa::ConfigurationSpace;
using pfsa::JointLinearState;
using pfsa::MixSpec;
using pfsa::Permutation;
using pfsa::RevealSpec;

namespace {

std::size_t factorial(std::size_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// Universe numbering of the worked S3 example (one-line arrays, 0-based).
const std::vector<std::vector<std::size_t>> kUniverses = {
    {0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};

MixSpec fuzzy_swap() {
  return MixSpec({{Permutation::transposition(3, 0, 1), 0.5},
                  {Permutation::transposition(3, 0, 2), 0.5}});
}

}  // namespace

TEST_CASE("configuration space is lexicographic") {
  for (std::size_t n = 1; n <= 6; ++n) {
    const ConfigurationSpace space(n);
    REQUIRE(space.size() == factorial(n));
    CHECK(space.config(0).is_identity());
    for (std::size_t k = 0; k < space.size(); ++k) {
      CHECK(space.index_of(space.config(k)) == k);
      if (k > 0) CHECK(space.config(k - 1) < space.config(k));
    }
  }
  CHECK_THROWS_AS(ConfigurationSpace(0), std::invalid_argument);
  CHECK_THROWS_AS(ConfigurationSpace(9), std::invalid_argument);
  CHECK_THROWS_AS(ConfigurationSpace(3).index_of(Permutation::identity(4)), std::invalid_argument);
}

TEST_CASE("joint transitions are column-stochastic and reveals keep (n-1)! configurations") {
  pfsa::Rng rng(4);
  for (std::size_t n = 2; n <= 4; ++n) {
    const ConfigurationSpace space(n);
    const MixSpec mix({{pfsa::sample_uniform(n, rng), 0.25}, {pfsa::sample_uniform(n, rng), 0.75}});
    for (auto action : {pfsa::ShuffleAction::positions, pfsa::ShuffleAction::elements}) {
      const Eigen::MatrixXd t = pfsa::joint_transition(space, mix, action);
      CHECK((t.colwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-15);
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const auto keep = pfsa::joint_reveal(space, RevealSpec{i, j});
        std::size_t count = 0;
        for (std::size_t c = 0; c < space.size(); ++c) {
          if (keep[c]) {
            ++count;
            CHECK(space.config(c)[i] == j);
          }
        }
        CHECK(count == factorial(n - 1));
      }
    }
  }
}

TEST_CASE("worked S3 example") {
  const ConfigurationSpace space(3);
  std::vector<Eigen::Index> idx;
  for (const auto& u : kUniverses) idx.push_back(static_cast<Eigen::Index>(space.index_of(Permutation(u))));

  pfsa::AutomatonSpec spec;
  spec.states = 6;
  spec.symbols.push_back(pfsa::joint_mix_symbol(space, fuzzy_swap(), "fuzzy"));
  spec.symbols.push_back(pfsa::joint_reveal_symbol(space, RevealSpec{0, 2}, "obs"));
  const pfsa::Pfsa a(std::move(spec));

  JointLinearState s = JointLinearState::from_belief(Belief::one_hot(6, static_cast<std::size_t>(idx[0])));
  s = pfsa::joint_step(s, a, 0);
  const double h1[] = {0, .5, .5, 0, 0, 0};
  for (std::size_t u = 0; u < 6; ++u) CHECK(s.h(idx[u]) == h1[u]);
  s = pfsa::joint_step(s, a, 1);
  const double h2[] = {0, 0, .5, 0, 0, 0};
  for (std::size_t u = 0; u < 6; ++u) CHECK(s.h(idx[u]) == h2[u]);
  CHECK(std::exp(s.log_mass) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(pfsa::joint_decode(s).probs()(idx[2]) == 1.0);

  const JointLinearState reset = pfsa::gated_reset(s, Belief::uniform(6));
  for (Eigen::Index k = 0; k < 6; ++k) CHECK(std::abs(reset.h(k) - 1.0 / 6.0) <= 1e-15);
  CHECK(reset.log_mass == 0.0);

  // The observation keeps exactly universes 3 and 6.
  const auto keep = pfsa::joint_reveal(space, RevealSpec{0, 2});
  for (std::size_t u = 0; u < 6; ++u) CHECK(keep[static_cast<std::size_t>(idx[u])] == (u == 2 || u == 5));
}

TEST_CASE("worked S3 fuzzy matrix acts on element labels") {
  const ConfigurationSpace space(3);
  std::vector<Eigen::Index> idx;
  for (const auto& u : kUniverses) idx.push_back(static_cast<Eigen::Index>(space.index_of(Permutation(u))));
  Eigen::MatrixXd expected(6, 6);
  // clang-format off
  expected << 0,  .5, .5, 0,  0,  0,
              .5, 0,  0,  0,  .5, 0,
              .5, 0,  0,  0,  0,  .5,
              0,  0,  0,  0,  .5, .5,
              0,  .5, 0,  .5, 0,  0,
              0,  0,  .5, .5, 0,  0;
  // clang-format on
  auto reorder = [&](const Eigen::MatrixXd& t) {
    Eigen::MatrixXd out(6, 6);
    for (Eigen::Index r = 0; r < 6; ++r)
      for (Eigen::Index c = 0; c < 6; ++c) out(r, c) = t(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]);
    return out;
  };
  const Eigen::MatrixXd by_elements =
      reorder(pfsa::joint_transition(space, fuzzy_swap(), pfsa::ShuffleAction::elements));
  CHECK(by_elements == expected);
  // Shuffling positions agrees on the first column (from the identity) only.
  const Eigen::MatrixXd by_positions =
      reorder(pfsa::joint_transition(space, fuzzy_swap(), pfsa::ShuffleAction::positions));
  CHECK(by_positions.col(0) == expected.col(0));
  CHECK(by_positions != expected);
}

TEST_CASE("joint tracker matches the forward oracle and telescopes") {
  pfsa::Rng rng(2718);
  for (int k = 0; k < 200; ++k) {
    pfsa::verify::RandomAutomatonOptions opts;
    opts.states = 2 + rng.uniform_index(4);
    opts.symbols = 1 + rng.uniform_index(3);
    const pfsa::Pfsa a = pfsa::verify::random_automaton(opts, rng);
    const auto path = pfsa::sample_trajectory(a, 25, rng);
    std::vector<double> init(a.states(), 0.0);
    init[a.initial_state()] = 1.0;
    const auto oracle = pfsa::verify::forward_posteriors(a, init, path.symbols);
    JointLinearState s = JointLinearState::from_belief(Belief::one_hot(a.states(), a.initial_state()));
    Belief exact = Belief::one_hot(a.states(), a.initial_state());
    double log_product = 0.0;
    for (std::size_t t = 0; t < path.symbols.size(); ++t) {
      log_product += std::log(pfsa::survival(a, exact, path.symbols[t]));
      exact = pfsa::belief_update(a, exact, path.symbols[t]);
      s = pfsa::joint_step(s, a, path.symbols[t]);
      const Belief decoded = pfsa::joint_decode(s);
      for (std::size_t q = 0; q < a.states(); ++q) {
        CHECK(std::abs(decoded[q] - oracle[t + 1][q]) <= 1e-9);
        CHECK(std::abs(exact[q] - oracle[t + 1][q]) <= 1e-9);
      }
      CHECK(std::abs(s.h.sum() - std::exp(log_product)) <= 1e-9 * std::exp(log_product));
      CHECK(std::abs(s.log_mass - log_product) <= 1e-9);
    }
  }
}

TEST_CASE("exhausted mass is reported, not hidden") {
  pfsa::AutomatonSpec spec;
  spec.states = 2;
  spec.symbols.push_back(pfsa::reveal_only(2, {false, true}, "only_b"));
  const pfsa::Pfsa a(std::move(spec));
  JointLinearState s = JointLinearState::from_belief(Belief::one_hot(2, 0));
  CHECK(pfsa::survival(a, Belief::one_hot(2, 0), 0) == 0.0);
  s = pfsa::joint_step(s, a, 0);
  CHECK(s.h.sum() == 0.0);
  CHECK(std::isinf(s.log_mass));
  CHECK_THROWS_AS(pfsa::joint_decode(s), pfsa::MassUnderflow);
  const JointLinearState revived = pfsa::gated_reset(s, Belief::one_hot(2, 1));
  CHECK(pfsa::joint_decode(revived).probs() == Eigen::Vector2d(0.0, 1.0));
}

TEST_CASE("joint_to_marginal sums configurations") {
  const ConfigurationSpace space(3);
  Eigen::VectorXd w = Eigen::VectorXd::Constant(6, 1.0 / 6.0);
  const Eigen::MatrixXd h = pfsa::joint_to_marginal(space, w);
  CHECK((h.array() - 1.0 / 3.0).abs().maxCoeff() <= 1e-15);
  Eigen::VectorXd one = Eigen::VectorXd::Zero(6);
  one(static_cast<Eigen::Index>(space.index_of(Permutation({2, 0, 1})))) = 1.0;
  CHECK(pfsa::joint_to_marginal(space, one) == pfsa::to_matrix(Permutation({2, 0, 1})));
  CHECK_THROWS_AS(pfsa::joint_to_marginal(space, Eigen::VectorXd::Zero(5)), std::invalid_argument);
}

TEST_CASE("joint absorbing decay halves each cycle") {
  const auto report = pfsa::run_and_report({pfsa::ScenarioKind::joint_absorbing, 10});
  REQUIRE(report.records.size() == 20);
  for (std::size_t t = 1; t <= 10; ++t) {
    const auto& mix = report.records[2 * t - 2];
    const auto& reveal = report.records[2 * t - 1];
    CHECK(mix.op == "mix");
    CHECK(reveal.op == "reveal");
    CHECK(mix.l1_norm == std::ldexp(1.0, 1 - static_cast<int>(t)));
    CHECK(reveal.l1_norm == std::ldexp(1.0, -static_cast<int>(t)));
    CHECK(*reveal.survival == 0.5);
    CHECK(*mix.survival == 1.0);
    CHECK(reveal.log2_norm == -static_cast<double>(t));
    CHECK(reveal.cycle == t);
  }
  CHECK_FALSE(report.first_underflow_step);
}

TEST_CASE("deterministic transitions never lose mass") {
  const auto report = pfsa::run_and_report({pfsa::ScenarioKind::dfa, 20, 100, 8, 5});
  REQUIRE(report.records.size() == 100);
  for (const auto& r : report.records) {
    CHECK(r.l1_norm == 1.0);
    CHECK(r.min_nonzero == 1.0);
    CHECK(*r.survival == 1.0);
  }
}

TEST_CASE("full reveals reset the norm") {
  pfsa::ScenarioRequest req{pfsa::ScenarioKind::full_reveal_every_k, 24};
  req.reset_every = 8;
  const auto report = pfsa::run_and_report(req);
  REQUIRE(report.records.size() == 24 * 2 + 3);
  double smallest = 1.0;
  for (const auto& r : report.records) {
    smallest = std::min(smallest, r.l1_norm);
    if (r.op == "reset") {
      CHECK(r.l1_norm == 1.0);
      CHECK(r.log2_norm == 0.0);
      CHECK_FALSE(r.survival);
    }
  }
  CHECK(smallest == std::ldexp(1.0, -8));
}

TEST_CASE("single precision flushes the absorbing scenario") {
  const pfsa::PrecisionModel fp32 = pfsa::PrecisionModel::binary32();
  const auto joint = pfsa::run_and_report({pfsa::ScenarioKind::joint_absorbing, 200}, fp32);
  REQUIRE(joint.first_underflow_cycle);
  // After the mix of cycle t the two live entries hold 2^-(t+1); the first
  // flush is the first cycle where that drops below 2^-126.
  std::size_t predicted = 1;
  while (std::ldexp(1.0, -static_cast<int>(predicted) - 1) >= std::ldexp(1.0, -126)) ++predicted;
  CHECK(*joint.first_underflow_cycle == predicted);
  CHECK(joint.records[*joint.first_underflow_step - 1].op == "mix");
  // The exact bookkeeping keeps going after the stored state vanished.
  CHECK(joint.records.back().log2_norm == -200.0);
  CHECK(joint.records.back().l1_norm == 0.0);

  const auto marginal = pfsa::run_and_report({pfsa::ScenarioKind::marginal_swap_reveal, 200}, fp32);
  REQUIRE(marginal.first_underflow_cycle);
  CHECK(*marginal.first_underflow_cycle == 127);

  pfsa::ScenarioRequest guarded{pfsa::ScenarioKind::full_reveal_every_k, 10000};
  guarded.reset_every = 8;
  CHECK_FALSE(pfsa::run_and_report(guarded, fp32).first_underflow_step);
}

TEST_CASE("decay csv layout") {
  const auto report = pfsa::run_and_report({pfsa::ScenarioKind::joint_absorbing, 2});
  std::ostringstream out;
  pfsa::write_decay_csv(out, report);
  CHECK(out.str() ==
        "step,op,l1_norm,survival,min_nonzero,log2_norm\n"
        "1,mix,1,1,0.25,0\n"
        "2,reveal,0.5,0.5,0.25,-1\n"
        "3,mix,0.5,1,0.125,-1\n"
        "4,reveal,0.25,0.5,0.125,-2\n");

  const auto marginal = pfsa::run_and_report({pfsa::ScenarioKind::marginal_swap_reveal, 1});
  std::ostringstream mout;
  pfsa::write_decay_csv(mout, marginal);
  CHECK(mout.str() ==
        "step,op,l1_norm,survival,min_nonzero,log2_norm\n"
        "1,mix,3,,0.5,1.5849625007211561\n"
        "2,reveal,2.5,,0.5,1.3219280948873624\n");
  CHECK_THROWS_AS(pfsa::parse_scenario_kind("nope"), std::invalid_argument);
  CHECK(pfsa::to_string(pfsa::parse_scenario_kind("full-reveal-every-k")) == "full-reveal-every-k");
}
