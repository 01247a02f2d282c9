#pragma once

#include "sqkd/attack.hpp"

namespace sqkd {

/// Reverse channel modeled as a depolarization channel with parameter q,
/// E_q(rho) = (1-q) rho + (q/2) I, combined with forward bias b.
struct DepolScenario {
  double q = 0.0;
  double bias = 0.0;
};

/// Throws std::invalid_argument unless q is in [0,1] and |bias| <= kMaxBias.
void require_valid(const DepolScenario& scenario);

/// Closed forms: Q_Z = q/2, p0plus = p1plus = 1/2, pe1 = 1/2 - b(1-q),
/// Q_e = (1-q)(1/2 - sqrt(1/4 - b^2)) + q/2.
ChannelStatistics closed_form_statistics(const DepolScenario& scenario);

/// Closed forms: q00 = (1/2 - b(1-q))/2, q11 = 1/4, q01 = q/4, q10 = Q_e/2.
JointKeyDistribution closed_form_qij(const DepolScenario& scenario);

/// A dimension-4 attack realizing the channel exactly: the unitary dilation
/// of the Kraus set {sqrt(1-3q/4) I, sqrt(q/4) X, sqrt(q/4) Y, sqrt(q/4) Z}
/// with the ancilla basis ordered (I, X, Y, Z). exact_statistics of the
/// result reproduces closed_form_statistics to machine precision.
AttackSpec dilation(const DepolScenario& scenario);

}  // namespace sqkd
