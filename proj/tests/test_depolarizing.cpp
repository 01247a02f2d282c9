#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <utility>

#include "helpers.hpp"
#include "sqkd/depolarizing.hpp"
#include "sqkd/key_rate.hpp"

using namespace sqkd;

TEST_CASE("closed-form statistics", "[depol]") {
  SECTION("no noise, no bias") {
    const ChannelStatistics s = closed_form_statistics(DepolScenario{0.0, 0.0});
    REQUIRE(s.qz0 == 0.0);
    REQUIRE(s.qz1 == 0.0);
    REQUIRE(s.pe1 == 0.5);
    REQUIRE(s.peminus == 0.0);
  }
  SECTION("q = 0.1 at zero bias") {
    const ChannelStatistics s = closed_form_statistics(DepolScenario{0.1, 0.0});
    REQUIRE(std::abs(s.qz0 - 0.05) < 1e-15);
    REQUIRE(std::abs(s.peminus - 0.05) < 1e-15);
    REQUIRE(std::abs(s.pe1 - 0.5) < 1e-15);
  }
  SECTION("negative bias raises pe1") {
    const ChannelStatistics s = closed_form_statistics(DepolScenario{0.1, -0.1});
    REQUIRE(std::abs(s.pe1 - 0.59) < 1e-15);
  }
  SECTION("parameter validation") {
    REQUIRE_THROWS_AS(closed_form_statistics(DepolScenario{-0.1, 0.0}), std::invalid_argument);
    REQUIRE_THROWS_AS(closed_form_statistics(DepolScenario{1.1, 0.0}), std::invalid_argument);
    REQUIRE_THROWS_AS(closed_form_statistics(DepolScenario{0.5, 0.49999999}),
                      std::invalid_argument);
  }
}

TEST_CASE("closed-form acceptance weights", "[depol]") {
  SECTION("no noise") {
    const JointKeyDistribution d = closed_form_qij(DepolScenario{0.0, 0.0});
    REQUIRE(std::abs(d.q00 - 0.25) < 1e-15);
    REQUIRE(d.q01 == 0.0);
    REQUIRE(d.q10 == 0.0);
    REQUIRE(std::abs(d.q11 - 0.25) < 1e-15);
    REQUIRE(std::abs(d.normalization - 0.5) < 1e-15);
  }
  SECTION("q = 0.1") {
    const JointKeyDistribution d = closed_form_qij(DepolScenario{0.1, 0.0});
    REQUIRE(std::abs(d.q00 - 0.25) < 1e-15);
    REQUIRE(std::abs(d.q01 - 0.025) < 1e-15);
    REQUIRE(std::abs(d.q10 - 0.025) < 1e-15);
    REQUIRE(std::abs(d.q11 - 0.25) < 1e-15);
    REQUIRE(std::abs(d.normalization - 0.55) < 1e-15);
  }
  SECTION("matches the dilation route everywhere") {
    for (double q : {0.0, 0.05, 0.3, 0.8, 1.0}) {
      for (double b : {-0.4, -0.1, 0.0, 0.25}) {
        const DepolScenario scenario{q, b};
        const JointKeyDistribution closed = closed_form_qij(scenario);
        const JointKeyDistribution dilated = joint_distribution(dilation(scenario));
        REQUIRE(std::abs(closed.q00 - dilated.q00) < 1e-12);
        REQUIRE(std::abs(closed.q01 - dilated.q01) < 1e-12);
        REQUIRE(std::abs(closed.q10 - dilated.q10) < 1e-12);
        REQUIRE(std::abs(closed.q11 - dilated.q11) < 1e-12);
      }
    }
  }
}

TEST_CASE("dilation realizes the channel", "[depol]") {
  SECTION("q = 0 embeds the identity") {
    const AttackSpec a = dilation(DepolScenario{0.0, 0.0});
    REQUIRE(validate(a).pass());
    const ChannelStatistics s = exact_statistics(a);
    REQUIRE(s.qz0 == 0.0);
    REQUIRE(std::abs(s.peminus) < 1e-30);
  }
  SECTION("full depolarization") {
    const ChannelStatistics s = exact_statistics(dilation(DepolScenario{1.0, 0.0}));
    REQUIRE(std::abs(s.qz0 - 0.5) < 1e-15);
    REQUIRE(std::abs(s.peminus - 0.5) < 1e-15);
  }
  SECTION("Kraus set reproduces (1-q) rho + (q/2) I on random states") {
    std::mt19937_64 rng(61);
    for (double q : {0.1, 0.45, 0.9}) {
      const auto kraus = test::kraus_operators(dilation(DepolScenario{q, 0.0}));
      for (int trial = 0; trial < 50; ++trial) {
        const HermitianMatrix rho_h = test::random_density(2, rng);
        test::CMat rho = test::zeros(2, 2);
        for (std::size_t i = 0; i < 2; ++i) {
          for (std::size_t j = 0; j < 2; ++j) rho[i][j] = rho_h.at(i, j);
        }
        const test::CMat mixed = test::add(test::scale_m(Complex{1.0 - q, 0.0}, rho),
                                           test::scale_m(Complex{q / 2.0, 0.0}, test::identity_m(2)));
        REQUIRE(test::max_abs_diff(test::apply_kraus(kraus, rho), mixed) < 1e-12);
      }
    }
  }
  SECTION("reflection branch") {
    const double q = 0.2;
    const double b = -0.15;
    const auto kraus = test::kraus_operators(dilation(DepolScenario{q, b}));
    const std::vector<Complex> forward{Complex{std::sqrt(0.5 + b), 0.0},
                                       Complex{std::sqrt(0.5 - b), 0.0}};
    const test::CMat rho = test::outer_m(forward);
    const test::CMat mixed = test::add(test::scale_m(Complex{1.0 - q, 0.0}, rho),
                                       test::scale_m(Complex{q / 2.0, 0.0}, test::identity_m(2)));
    REQUIRE(test::max_abs_diff(test::apply_kraus(kraus, rho), mixed) < 1e-12);
  }
}

TEST_CASE("any dilation of the channel gives the same statistics", "[depol]") {
  // Mixing the Kraus operators with a unitary yields a second, different
  // dilation of the same channel; the observable statistics cannot move.
  std::mt19937_64 rng(62);
  const DepolScenario scenario{0.15, 0.1};
  const AttackSpec base = dilation(scenario);
  const auto mix = random_unitary_columns(4, rng);

  AttackSpec mixed = base;
  for (auto pair : {std::pair{&mixed.e0, &base.e0}, std::pair{&mixed.e1, &base.e1},
                    std::pair{&mixed.e2, &base.e2}, std::pair{&mixed.e3, &base.e3}}) {
    ComplexVec& out = *pair.first;
    const ComplexVec& in = *pair.second;
    for (std::size_t j = 0; j < 4; ++j) {
      Complex acc{0.0, 0.0};
      for (std::size_t k = 0; k < 4; ++k) acc += mix[k][j] * in[k];
      out[j] = acc;
    }
  }

  REQUIRE(validate(mixed).pass());
  const ChannelStatistics s_base = exact_statistics(base);
  const ChannelStatistics s_mixed = exact_statistics(mixed);
  REQUIRE(std::abs(s_base.qz0 - s_mixed.qz0) < 1e-12);
  REQUIRE(std::abs(s_base.qz1 - s_mixed.qz1) < 1e-12);
  REQUIRE(std::abs(s_base.p0plus - s_mixed.p0plus) < 1e-12);
  REQUIRE(std::abs(s_base.p1plus - s_mixed.p1plus) < 1e-12);
  REQUIRE(std::abs(s_base.pe1 - s_mixed.pe1) < 1e-12);
  REQUIRE(std::abs(s_base.peminus - s_mixed.peminus) < 1e-12);

  const JointKeyDistribution d_base = joint_distribution(base);
  const JointKeyDistribution d_mixed = joint_distribution(mixed);
  REQUIRE(std::abs(d_base.q00 - d_mixed.q00) < 1e-12);
  REQUIRE(std::abs(d_base.q11 - d_mixed.q11) < 1e-12);
}

TEST_CASE("bound engine sees eta = 1 - 2q through the scenario", "[depol]") {
  for (double q : {0.0, 0.02, 0.1, 0.25}) {
    const KeyRateReport report = key_rate(closed_form_statistics(DepolScenario{q, 0.0}));
    REQUIRE(std::abs(report.eta - (1.0 - 2.0 * q)) < 1e-12);
  }
}
