#pragma once

#include <cstddef>
#include <random>
#include <string>

#include "sqkd/linalg.hpp"

namespace sqkd {

/// A restricted collective attack on the two-way channel. Eve replaces the
/// forward qubit with |e> = sqrt(1/2+bias)|0> + sqrt(1/2-bias)|1> and probes
/// the returning qubit with a unitary whose action is captured by four
/// ancilla vectors of common dimension:
///   U|0> = |0,e0> + |1,e1>        U|1> = |0,e2> + |1,e3>
struct AttackSpec {
  double bias = 0.0;
  ComplexVec e0 = ComplexVec(1);
  ComplexVec e1 = ComplexVec(1);
  ComplexVec e2 = ComplexVec(1);
  ComplexVec e3 = ComplexVec(1);

  std::size_t dim() const { return e0.dim(); }
};

/// Maximum |bias|; the engine needs sqrt(1/4 - bias^2) bounded away from 0.
inline constexpr double kMaxBias = 0.5 - 1e-6;

/// The noiseless channel: dimension-1 ancilla, unit overlaps, zero bias.
AttackSpec identity_attack();

/// Unitarity residuals of an attack. The three conditions are
/// <e0|e0>+<e1|e1> = 1, <e2|e2>+<e3|e3> = 1, <e0|e2>+<e1|e3> = 0.
struct UnitarityReport {
  double send0_norm_residual = 0.0;
  double send1_norm_residual = 0.0;
  double orthogonality_residual = 0.0;
  bool bias_in_range = false;

  static constexpr double kTolerance = 1e-9;

  bool pass() const {
    return bias_in_range && send0_norm_residual <= kTolerance &&
           send1_norm_residual <= kTolerance && orthogonality_residual <= kTolerance;
  }
};

/// Checks the unitarity conditions and the bias range. Throws only on
/// mismatched ancilla dimensions; all other failures are reported.
UnitarityReport validate(const AttackSpec& attack);

/// Throws std::invalid_argument when validate(attack) does not pass.
void require_valid(const AttackSpec& attack);

/// States derived from the ancilla vectors:
///   f_i from the X-basis action of the unitary,
///   g0/g1 from its action on the forward state |e>,
///   h0 = g0 - g1 and h1 = e0 - e1, the "correct outcome" difference vectors.
struct DerivedStates {
  ComplexVec f0, f1, f2, f3;
  ComplexVec g0, g1;
  ComplexVec h0, h1;
};

DerivedStates derive_states(const AttackSpec& attack);

/// g1 expressed directly in the e-vectors,
/// (X e0 - X e1 + Y e2 - Y e3)/sqrt(2) with X = sqrt(1/2+b), Y = sqrt(1/2-b).
/// Algebraically identical to the g-state route in derive_states; kept as a
/// second, independent formula.
ComplexVec g1_from_e_vectors(const AttackSpec& attack);

/// Acceptance weights q_ij and normalized joint probabilities p_ij of the raw
/// key pair (k_A, k_B) over accepted iterations.
struct JointKeyDistribution {
  double q00 = 0.0, q01 = 0.0, q10 = 0.0, q11 = 0.0;
  double normalization = 0.0;
  double p00 = 0.0, p01 = 0.0, p10 = 0.0, p11 = 0.0;

  /// Normalizes the four weights. Throws std::runtime_error when the total
  /// weight is degenerate (<= 1e-12).
  static JointKeyDistribution from_weights(double q00, double q01, double q10, double q11);
};

JointKeyDistribution joint_distribution(const AttackSpec& attack);

/// The observable statistics that determine the key-rate bound.
struct ChannelStatistics {
  double bias = 0.0;
  double qz0 = 0.0;      // P(A reads |1>)  when B resends |0>
  double qz1 = 0.0;      // P(A reads |0>)  when B resends |1>
  double p0plus = 0.0;   // P(A reads |+>)  when B resends |0>
  double p1plus = 0.0;   // P(A reads |+>)  when B resends |1>
  double pe1 = 0.0;      // P(A reads |1>)  when B reflects
  double peminus = 0.0;  // P(A reads |->)  when B reflects (Q_e)
};

ChannelStatistics exact_statistics(const AttackSpec& attack);

/// Exact S(B|E) in bits for a known attack, from the eigendecompositions of
/// the joint and reduced states of the accepted-iteration system. Serves as
/// the oracle the bound engine is checked against. Ancilla dimension is
/// capped at 8.
double exact_conditional_entropy(const AttackSpec& attack);

inline constexpr std::size_t kMaxEntropyOracleDim = 8;

/// A uniformly random valid attack: e-vectors read off two columns of a
/// Haar-like random unitary on the qubit x ancilla space, bias uniform in
/// [-0.45, 0.45].
AttackSpec random_attack(std::size_t dim, std::mt19937_64& rng);

}  // namespace sqkd
