#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "sqkd/entropy.hpp"

using namespace sqkd;

TEST_CASE("shannon entropy anchors", "[entropy]") {
  REQUIRE(shannon_entropy(std::vector<double>{0.5, 0.5}) == 1.0);
  REQUIRE(shannon_entropy(std::vector<double>{1.0, 0.0, 0.0}) == 0.0);
  REQUIRE(shannon_entropy(std::vector<double>{0.25, 0.25, 0.25, 0.25}) == 2.0);
}

TEST_CASE("shannon entropy validation", "[entropy]") {
  REQUIRE_THROWS_AS(shannon_entropy(std::vector<double>{1.1, -0.1}), std::invalid_argument);
  REQUIRE_THROWS_AS(shannon_entropy(std::vector<double>{0.7, 0.2}), std::invalid_argument);
  // Rounding-level negatives are clamped, not rejected.
  REQUIRE(shannon_entropy(std::vector<double>{1.0, -1e-13, 0.0}) == 0.0);
}

TEST_CASE("binary entropy anchors", "[entropy]") {
  REQUIRE(binary_entropy(0.5) == 1.0);
  REQUIRE(binary_entropy(0.0) == 0.0);
  REQUIRE(binary_entropy(1.0) == 0.0);
  const double x = 0.9;
  REQUIRE(binary_entropy(x) == shannon_entropy(std::vector<double>{x, 1.0 - x}));
  REQUIRE_THROWS_AS(binary_entropy(1.5), std::invalid_argument);
  REQUIRE_THROWS_AS(binary_entropy(-0.2), std::invalid_argument);
}

TEST_CASE("binary entropy symmetry and concavity", "[entropy]") {
  for (int i = 0; i <= 20; ++i) {
    const double x = i / 20.0;
    REQUIRE(std::abs(binary_entropy(x) - binary_entropy(1.0 - x)) < 1e-12);
  }
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      const double x = i / 20.0, y = j / 20.0;
      REQUIRE(binary_entropy(0.5 * (x + y)) >=
              0.5 * (binary_entropy(x) + binary_entropy(y)) - 1e-12);
    }
  }
}

TEST_CASE("von Neumann entropy anchors", "[entropy]") {
  REQUIRE(von_neumann_entropy(0.5 * HermitianMatrix::identity(2)) == 1.0);

  std::mt19937_64 rng(31);
  const ComplexVec v = test::random_vector(3, rng);
  const HermitianMatrix projector = HermitianMatrix::outer(v, 1.0 / norm_squared(v));
  REQUIRE(std::abs(von_neumann_entropy(projector)) < 1e-12);
}

TEST_CASE("von Neumann entropy of the two-level conditional state", "[entropy]") {
  std::mt19937_64 rng(32);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Complex x{gauss(rng), gauss(rng)};
    const Complex y{gauss(rng), gauss(rng)};
    const Complex z{gauss(rng), gauss(rng)};
    const double x2 = std::norm(x), y2 = std::norm(y), z2 = std::norm(z);
    const double total = x2 + y2 + z2;

    HermitianMatrix sigma(2);
    sigma.at(0, 0) = Complex{(x2 + y2) / total, 0.0};
    sigma.at(0, 1) = y * std::conj(z) / total;
    sigma.at(1, 0) = std::conj(y) * z / total;
    sigma.at(1, 1) = Complex{z2 / total, 0.0};

    const double lambda_plus =
        0.5 + std::sqrt((x2 + y2 - z2) * (x2 + y2 - z2) + 4.0 * y2 * z2) / (2.0 * total);
    REQUIRE(std::abs(von_neumann_entropy(sigma) - binary_entropy(lambda_plus)) < 1e-10);
  }
}

TEST_CASE("von Neumann entropy is unitarily invariant", "[entropy]") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    const HermitianMatrix rho = test::random_density(4, rng);
    const auto u = random_unitary_columns(4, rng);
    const HermitianMatrix rotated = test::conjugate_by_unitary(rho, u);
    REQUIRE(std::abs(von_neumann_entropy(rotated) - von_neumann_entropy(rho)) <= 1e-9);
  }
}

TEST_CASE("von Neumann entropy rejects indefinite operators", "[entropy]") {
  HermitianMatrix m(2);
  m.at(0, 0) = Complex{1.5, 0.0};
  m.at(1, 1) = Complex{-0.5, 0.0};
  REQUIRE_THROWS_AS(von_neumann_entropy(m), std::invalid_argument);
}
