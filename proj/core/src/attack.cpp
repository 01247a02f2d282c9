#include "sqkd/attack.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sqkd/entropy.hpp"

namespace sqkd {

namespace {

void require_matching_dims(const AttackSpec& a) {
  if (a.e1.dim() != a.e0.dim() || a.e2.dim() != a.e0.dim() || a.e3.dim() != a.e0.dim()) {
    throw std::invalid_argument("AttackSpec: ancilla vectors must share one dimension");
  }
  if (a.e0.dim() == 0) {
    throw std::invalid_argument("AttackSpec: ancilla dimension must be at least 1");
  }
}

}  // namespace

AttackSpec identity_attack() {
  AttackSpec a;
  a.bias = 0.0;
  a.e0 = ComplexVec{Complex{1.0, 0.0}};
  a.e1 = ComplexVec{Complex{0.0, 0.0}};
  a.e2 = ComplexVec{Complex{0.0, 0.0}};
  a.e3 = ComplexVec{Complex{1.0, 0.0}};
  return a;
}

UnitarityReport validate(const AttackSpec& attack) {
  require_matching_dims(attack);
  UnitarityReport report;
  report.send0_norm_residual =
      std::abs(inner(attack.e0, attack.e0) + inner(attack.e1, attack.e1) - Complex{1.0, 0.0});
  report.send1_norm_residual =
      std::abs(inner(attack.e2, attack.e2) + inner(attack.e3, attack.e3) - Complex{1.0, 0.0});
  report.orthogonality_residual =
      std::abs(inner(attack.e0, attack.e2) + inner(attack.e1, attack.e3));
  report.bias_in_range = std::abs(attack.bias) <= kMaxBias;
  return report;
}

void require_valid(const AttackSpec& attack) {
  const UnitarityReport report = validate(attack);
  if (!report.pass()) {
    throw std::invalid_argument(
        "AttackSpec: unitarity/bias check failed (residuals " +
        std::to_string(report.send0_norm_residual) + ", " +
        std::to_string(report.send1_norm_residual) + ", " +
        std::to_string(report.orthogonality_residual) +
        (report.bias_in_range ? ")" : "; bias out of range)"));
  }
}

DerivedStates derive_states(const AttackSpec& attack) {
  require_valid(attack);
  const double x = std::sqrt(0.5 + attack.bias);
  const double y = std::sqrt(0.5 - attack.bias);
  const Complex alpha{(x + y) / std::sqrt(2.0), 0.0};
  const Complex beta{(x - y) / std::sqrt(2.0), 0.0};
  const Complex half{0.5, 0.0};

  ComplexVec f0 = half * (attack.e0 + attack.e1 + attack.e2 + attack.e3);
  ComplexVec f1 = half * (attack.e0 - attack.e1 + attack.e2 - attack.e3);
  ComplexVec f2 = half * (attack.e0 + attack.e1 - attack.e2 - attack.e3);
  ComplexVec f3 = half * (attack.e0 - attack.e1 - attack.e2 + attack.e3);
  ComplexVec g0 = alpha * f0 + beta * f2;
  ComplexVec g1 = alpha * f1 + beta * f3;
  ComplexVec h0 = g0 - g1;
  ComplexVec h1 = attack.e0 - attack.e1;
  return DerivedStates{std::move(f0), std::move(f1), std::move(f2), std::move(f3),
                       std::move(g0), std::move(g1), std::move(h0), std::move(h1)};
}

ComplexVec g1_from_e_vectors(const AttackSpec& attack) {
  require_matching_dims(attack);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const Complex cx{std::sqrt(0.5 + attack.bias) * inv_sqrt2, 0.0};
  const Complex cy{std::sqrt(0.5 - attack.bias) * inv_sqrt2, 0.0};
  return cx * attack.e0 - cx * attack.e1 + cy * attack.e2 - cy * attack.e3;
}

JointKeyDistribution JointKeyDistribution::from_weights(double q00, double q01, double q10,
                                                        double q11) {
  for (double q : {q00, q01, q10, q11}) {
    if (!(q >= -1e-12)) {
      throw std::invalid_argument("JointKeyDistribution: negative weight " + std::to_string(q));
    }
  }
  JointKeyDistribution d;
  d.q00 = std::max(q00, 0.0);
  d.q01 = std::max(q01, 0.0);
  d.q10 = std::max(q10, 0.0);
  d.q11 = std::max(q11, 0.0);
  d.normalization = d.q00 + d.q01 + d.q10 + d.q11;
  if (d.normalization <= 1e-12) {
    throw std::runtime_error("JointKeyDistribution: degenerate attack, total weight is zero");
  }
  d.p00 = d.q00 / d.normalization;
  d.p01 = d.q01 / d.normalization;
  d.p10 = d.q10 / d.normalization;
  d.p11 = d.q11 / d.normalization;
  return d;
}

JointKeyDistribution joint_distribution(const AttackSpec& attack) {
  require_valid(attack);
  const DerivedStates d = derive_states(attack);
  const double q00 = 0.25 * (1.0 - 2.0 * inner(d.g0, d.g1).real());
  const double q11 = 0.25 * (1.0 - 2.0 * inner(attack.e0, attack.e1).real());
  const double q01 = 0.5 * norm_squared(attack.e1);
  const double q10 = 0.5 * norm_squared(d.g1);
  return JointKeyDistribution::from_weights(q00, q01, q10, q11);
}

ChannelStatistics exact_statistics(const AttackSpec& attack) {
  require_valid(attack);
  const double x = std::sqrt(0.5 + attack.bias);
  const double y = std::sqrt(0.5 - attack.bias);
  ChannelStatistics s;
  s.bias = attack.bias;
  s.qz0 = norm_squared(attack.e1);
  s.qz1 = norm_squared(attack.e2);
  s.p0plus = 0.5 * (1.0 + 2.0 * inner(attack.e0, attack.e1).real());
  s.p1plus = 0.5 * (1.0 + 2.0 * inner(attack.e2, attack.e3).real());
  s.pe1 = x * x * norm_squared(attack.e1) + y * y * norm_squared(attack.e3) +
          2.0 * x * y * inner(attack.e1, attack.e3).real();
  s.peminus = norm_squared(g1_from_e_vectors(attack));
  return s;
}

double exact_conditional_entropy(const AttackSpec& attack) {
  require_valid(attack);
  if (attack.dim() > kMaxEntropyOracleDim) {
    throw std::invalid_argument("exact_conditional_entropy: ancilla dimension " +
                                std::to_string(attack.dim()) + " exceeds the dense-solver cap of " +
                                std::to_string(kMaxEntropyOracleDim));
  }
  const DerivedStates d = derive_states(attack);
  const JointKeyDistribution joint = joint_distribution(attack);
  const double inv_n = 1.0 / joint.normalization;

  // Blocks of rho_BE for B = 0 and B = 1; the joint state is block diagonal
  // in B, so S(BE) is the entropy of the two spectra pooled together.
  HermitianMatrix block0(attack.dim());
  block0.add_outer(d.h0, 0.25 * inv_n);
  block0.add_outer(d.g1, 0.5 * inv_n);
  HermitianMatrix block1(attack.dim());
  block1.add_outer(d.h1, 0.25 * inv_n);
  block1.add_outer(attack.e1, 0.5 * inv_n);

  std::vector<double> joint_spectrum = eigenvalues_hermitian(block0);
  const std::vector<double> spectrum1 = eigenvalues_hermitian(block1);
  joint_spectrum.insert(joint_spectrum.end(), spectrum1.begin(), spectrum1.end());
  const double s_be = entropy_of_spectrum(joint_spectrum);

  const HermitianMatrix rho_e = block0 + block1;
  const double s_e = entropy_of_spectrum(eigenvalues_hermitian(rho_e));
  return s_be - s_e;
}

AttackSpec random_attack(std::size_t dim, std::mt19937_64& rng) {
  if (dim == 0) {
    throw std::invalid_argument("random_attack: dimension must be at least 1");
  }
  const std::vector<ComplexVec> columns = random_unitary_columns(2 * dim, rng);
  // Layout (t*dim + k) on the qubit x ancilla space: column 0 is the image of
  // |0, chi_0>, column dim is the image of |1, chi_0>.
  AttackSpec a;
  a.e0 = ComplexVec(dim);
  a.e1 = ComplexVec(dim);
  a.e2 = ComplexVec(dim);
  a.e3 = ComplexVec(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    a.e0[k] = columns[0][k];
    a.e1[k] = columns[0][dim + k];
    a.e2[k] = columns[dim][k];
    a.e3[k] = columns[dim][dim + k];
  }
  std::uniform_real_distribution<double> bias_dist(-0.45, 0.45);
  a.bias = bias_dist(rng);
  return a;
}

}  // namespace sqkd
