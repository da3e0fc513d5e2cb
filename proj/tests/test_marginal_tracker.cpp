#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "pfsa/configuration_space.hpp"
#include "pfsa/errors.hpp"
#include "pfsa/marginal_tracker.hpp"
#include "pfsa/precision.hpp"
#include "pfsa/sinkhorn.hpp"

using pfsa::AffineMarginalStep;
using pfsa::MarginalState;
using pfsa::MixSpec;
using pfsa::Permutation;
using pfsa::RevealSpec;

namespace {

Eigen::MatrixXd m3(std::initializer_list<double> v) {
  Eigen::MatrixXd m(3, 3);
  auto it = v.begin();
  for (Eigen::Index i = 0; i < 3; ++i)
    for (Eigen::Index j = 0; j < 3; ++j) m(i, j) = *it++;
  return m;
}

Eigen::MatrixXd random_matrix(Eigen::Index n, pfsa::Rng& rng, double lo, double hi) {
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = lo + (hi - lo) * rng.uniform_unit();
  return m;
}

MixSpec random_mix(std::size_t n, pfsa::Rng& rng) {
  const double w = rng.uniform_unit();
  return MixSpec({{pfsa::sample_uniform(n, rng), w}, {pfsa::sample_uniform(n, rng), 1.0 - w}});
}

}  // namespace

TEST_CASE("swap-reveal cycle") {
  MarginalState h = MarginalState::identity(3);
  const MixSpec mix = MixSpec::maybe_swap(3, 1, 2, 0.5);
  h = pfsa::marginal_mix(h, mix);
  CHECK(h.H == m3({1, 0, 0, 0, .5, .5, 0, .5, .5}));
  h = pfsa::marginal_reveal(h, RevealSpec{1, 1});
  CHECK(h.H == m3({1, 0, 0, 0, 1, 0, 0, 0, .5}));
  h = pfsa::marginal_mix(h, mix);
  h = pfsa::marginal_reveal(h, RevealSpec{1, 1});
  CHECK(h.H == m3({1, 0, 0, 0, 1, 0, 0, 0, .25}));
  CHECK(pfsa::min_nonzero(h.H) == 0.25);
  CHECK(pfsa::birkhoff_residual(h.H) == 0.75);
}

TEST_CASE("affine steps reproduce the direct updates") {
  pfsa::Rng rng(11);
  for (int k = 0; k < 2000; ++k) {
    const std::size_t n = 2 + rng.uniform_index(4);
    const MarginalState h{random_matrix(static_cast<Eigen::Index>(n), rng, 0.0, 1.0)};
    const MixSpec mix = random_mix(n, rng);
    const RevealSpec rev{rng.uniform_index(n), rng.uniform_index(n)};
    CHECK((pfsa::bilinear_marginal_step(h, AffineMarginalStep::from_mix(mix)).H -
           pfsa::marginal_mix(h, mix).H).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(pfsa::bilinear_marginal_step(h, AffineMarginalStep::from_reveal(n, rev)).H ==
          pfsa::marginal_reveal(h, rev).H);
  }
}

TEST_CASE("swap-reveal through the vectorized path") {
  MarginalState h{m3({1, 0, 0, 0, .5, .5, 0, .5, .5})};
  const auto out = pfsa::vectorized_marginal_step(h, AffineMarginalStep::from_reveal(3, {1, 1}));
  CHECK(out.H == m3({1, 0, 0, 0, 1, 0, 0, 0, .5}));
}

TEST_CASE("vectorized and bilinear steps agree") {
  pfsa::Rng rng(12);
  for (int k = 0; k < 10000; ++k) {
    const auto n = static_cast<Eigen::Index>(1 + rng.uniform_index(5));
    const AffineMarginalStep step{random_matrix(n, rng, -1, 1), random_matrix(n, rng, -1, 1),
                                  random_matrix(n, rng, -1, 1)};
    const MarginalState h{random_matrix(n, rng, -1, 1)};
    CHECK((pfsa::vectorized_marginal_step(h, step).H - pfsa::bilinear_marginal_step(h, step).H)
              .cwiseAbs()
              .maxCoeff() <= 1e-12);
  }
  const AffineMarginalStep wrong{Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Identity(3, 3),
                                 Eigen::MatrixXd::Zero(3, 3)};
  CHECK_THROWS_AS(pfsa::vectorized_marginal_step(MarginalState::identity(3), wrong),
                  std::invalid_argument);
}

TEST_CASE("kronecker product layout") {
  Eigen::MatrixXd a(2, 2), b(2, 3);
  a << 1, 2, 3, 4;
  b << 0, 1, 2, 3, 4, 5;
  const Eigen::MatrixXd k = pfsa::kronecker(a, b);
  REQUIRE(k.rows() == 4);
  REQUIRE(k.cols() == 6);
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 6; ++j) CHECK(k(i, j) == a(i / 2, j / 3) * b(i % 2, j % 3));
}

TEST_CASE("mixing keeps H doubly stochastic") {
  pfsa::Rng rng(13);
  for (int k = 0; k < 10000; ++k) {
    const std::size_t n = 2 + rng.uniform_index(5);
    MarginalState h = MarginalState::identity(n);
    for (int t = 0; t < 3; ++t) h = pfsa::marginal_mix(h, random_mix(n, rng));
    CHECK(pfsa::birkhoff_residual(h.H) <= 1e-12);
    CHECK(h.H.minCoeff() >= 0.0);
  }
}

TEST_CASE("marginal mixing matches the joint marginal") {
  pfsa::Rng rng(14);
  for (std::size_t n = 2; n <= 4; ++n) {
    const pfsa::ConfigurationSpace space(n);
    for (int s = 0; s < 50; ++s) {
      Eigen::VectorXd joint = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(space.size()));
      joint(0) = 1.0;
      MarginalState h = MarginalState::identity(n);
      for (int t = 0; t < 20; ++t) {
        const MixSpec mix = random_mix(n, rng);
        h = pfsa::marginal_mix(h, mix);
        joint = pfsa::joint_transition(space, mix) * joint;
        CHECK((h.H - pfsa::joint_to_marginal(space, joint)).cwiseAbs().maxCoeff() <= 1e-9);
      }
    }
  }
}

TEST_CASE("invalid marginal inputs") {
  CHECK_THROWS_AS(MarginalState::identity(0), std::invalid_argument);
  CHECK_THROWS_AS(pfsa::marginal_reveal(MarginalState::identity(3), {3, 0}), std::invalid_argument);
  CHECK_THROWS_AS(pfsa::marginal_mix(MarginalState::identity(3), MixSpec::certain(Permutation::identity(4))),
                  std::invalid_argument);
  CHECK_THROWS_AS(MixSpec({{Permutation::identity(3), 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(MixSpec({{Permutation::identity(3), 1.5}, {Permutation::identity(3), -0.5}}),
                  std::invalid_argument);
  CHECK(pfsa::min_nonzero(Eigen::MatrixXd::Zero(2, 2)) == 0.0);
}

TEST_CASE("sinkhorn projects positive matrices") {
  pfsa::Rng rng(15);
  for (int k = 0; k < 10000; ++k) {
    const auto n = static_cast<Eigen::Index>(1 + rng.uniform_index(6));
    Eigen::MatrixXd m = random_matrix(n, rng, 0.01, 1.0);
    const auto r = pfsa::sinkhorn_project(m);
    CHECK(r.converged);
    CHECK((r.matrix.rowwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-9);
    CHECK((r.matrix.colwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-9);
    CHECK(r.residual <= 1e-9);
    CHECK(r.iterations <= 1000);
  }
}

TEST_CASE("sinkhorn edge cases") {
  const Eigen::MatrixXd d = Eigen::Vector3d(1.0, 1.0, 0.5).asDiagonal();
  CHECK(pfsa::sinkhorn_project(d).matrix == Eigen::MatrixXd::Identity(3, 3));

  const Eigen::MatrixXd already = Eigen::MatrixXd::Constant(4, 4, 0.25);
  const auto same = pfsa::sinkhorn_project(already);
  CHECK(same.iterations == 0);
  CHECK(same.matrix == already);

  Eigen::MatrixXd zero_row = Eigen::MatrixXd::Constant(3, 3, 1.0);
  zero_row.row(1).setZero();
  CHECK_THROWS_AS(pfsa::sinkhorn_project(zero_row), pfsa::NoSupport);
  Eigen::MatrixXd negative = Eigen::MatrixXd::Constant(2, 2, 1.0);
  negative(0, 1) = -1.0;
  CHECK_THROWS_AS(pfsa::sinkhorn_project(negative), std::invalid_argument);
  CHECK_THROWS_AS(pfsa::sinkhorn_project(Eigen::MatrixXd::Ones(2, 3)), std::invalid_argument);

  // Support without a perfect matching converges only slowly; the last
  // iterate is returned rather than thrown.
  Eigen::MatrixXd slow(2, 2);
  slow << 1, 1, 0, 1;
  const auto r = pfsa::sinkhorn_project(slow, {5, 1e-12});
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 5);
  CHECK(r.residual > 1e-12);
}

TEST_CASE("precision rounding") {
  const auto fp32 = pfsa::PrecisionModel::binary32();
  CHECK(fp32.round(1.0 + std::ldexp(1.0, -24)) == 1.0);
  CHECK(fp32.round(1.0 + 3 * std::ldexp(1.0, -24)) == 1.0 + std::ldexp(1.0, -22));
  CHECK(fp32.round(1.0 / 3.0) == static_cast<double>(1.0f / 3.0f));
  CHECK(fp32.round(std::ldexp(1.0, -126)) == std::ldexp(1.0, -126));
  CHECK(fp32.round(std::ldexp(1.0, -127)) == 0.0);
  CHECK(fp32.round(-std::ldexp(1.0, -127)) == 0.0);
  CHECK(fp32.round(0.0) == 0.0);
  const auto fp64 = pfsa::PrecisionModel::binary64();
  CHECK(fp64.round(0.1) == 0.1);
  const auto bf16 = pfsa::PrecisionModel::bfloat16();
  CHECK(bf16.round(1.0 + std::ldexp(1.0, -9)) == 1.0);

  pfsa::Rng rng(16);
  for (int k = 0; k < 10000; ++k) {
    const double x = std::ldexp(rng.uniform_unit() + 0.5, static_cast<int>(rng.uniform_index(200)) - 100);
    CHECK(fp32.round(x) == static_cast<double>(static_cast<float>(x)));
  }

  Eigen::VectorXd v(3);
  v << 1.0, std::ldexp(1.0, -130), 0.0;
  CHECK(fp32.round_in_place(v) == 1);
  CHECK(v(1) == 0.0);
}

TEST_CASE("reveals touch only the revealed cross") {
  pfsa::Rng rng(17);
  for (int k = 0; k < 2000; ++k) {
    const std::size_t n = 2 + rng.uniform_index(5);
    const auto ni = static_cast<Eigen::Index>(n);
    const MarginalState h{random_matrix(ni, rng, 0.0, 1.0)};
    const RevealSpec rev{rng.uniform_index(n), rng.uniform_index(n)};
    const auto out = pfsa::marginal_reveal(h, rev);
    const auto i = static_cast<Eigen::Index>(rev.position);
    const auto j = static_cast<Eigen::Index>(rev.element);
    for (Eigen::Index r = 0; r < ni; ++r) {
      for (Eigen::Index c = 0; c < ni; ++c) {
        if (r == i || c == j) {
          CHECK(out.H(r, c) == (r == i && c == j ? 1.0 : 0.0));
        } else {
          CHECK(out.H(r, c) == h.H(r, c));
        }
      }
    }
  }
}
