#include "sqkd/entropy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sqkd {

namespace {

constexpr double kProbabilityTolerance = 1e-12;
constexpr double kSumTolerance = 1e-9;
constexpr double kSpectrumTolerance = 1e-10;

double plogp_bits(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

}  // namespace

double shannon_entropy(std::span<const double> probabilities) {
  double sum = 0.0;
  double entropy = 0.0;
  for (double p : probabilities) {
    if (p < -kProbabilityTolerance) {
      throw std::invalid_argument("shannon_entropy: negative probability " + std::to_string(p));
    }
    if (p < 0.0) p = 0.0;
    sum += p;
    entropy += plogp_bits(p);
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw std::invalid_argument("shannon_entropy: probabilities sum to " + std::to_string(sum));
  }
  return entropy;
}

double binary_entropy(double x) {
  if (x < -kProbabilityTolerance || x > 1.0 + kProbabilityTolerance) {
    throw std::invalid_argument("binary_entropy: argument " + std::to_string(x) +
                                " outside [0, 1]");
  }
  if (x < 0.0) x = 0.0;
  if (x > 1.0) x = 1.0;
  return plogp_bits(x) + plogp_bits(1.0 - x);
}

double entropy_of_spectrum(std::span<const double> eigenvalues) {
  double entropy = 0.0;
  for (double lambda : eigenvalues) {
    if (lambda < -kSpectrumTolerance) {
      throw std::invalid_argument("entropy_of_spectrum: eigenvalue " + std::to_string(lambda) +
                                  " below -1e-10");
    }
    entropy += plogp_bits(lambda);
  }
  return entropy;
}

double von_neumann_entropy(const HermitianMatrix& m) {
  const std::vector<double> eigs = eigenvalues_hermitian(m);
  double trace = 0.0;
  for (double lambda : eigs) {
    if (lambda < -kSpectrumTolerance) {
      throw std::invalid_argument("von_neumann_entropy: eigenvalue " + std::to_string(lambda) +
                                  " below -1e-10");
    }
    trace += lambda;
  }
  if (trace <= kProbabilityTolerance) {
    throw std::invalid_argument("von_neumann_entropy: trace is not positive");
  }
  double entropy = 0.0;
  for (double lambda : eigs) entropy += plogp_bits(lambda / trace);
  return entropy;
}

}  // namespace sqkd
