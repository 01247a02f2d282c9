#pragma once

#include <string>

#include "sqkd/attack.hpp"

namespace sqkd {

/// Key-rate lower bound with its diagnostic breakdown. All entropies are in
/// bits; r is bits of secret key per accepted iteration.
struct KeyRateReport {
  double eta = 0.0;         // lower bound on Re<h1|h0>
  double cap_b = 0.0;       // lower bound on |<h0|h1>|^2, max(eta,0)^2
  double lambda = 0.5;      // dominant-eigenvalue bound, clamped to [1/2, 1]
  double h_b_given_a = 0.0; // H(B|A)
  double s_bec = 0.0;       // H({p_ij})
  double s_ec_upper = 0.0;  // upper bound on S(EC)
  double r = 0.0;
  bool aborted = false;
  std::string abort_reason;
  bool lambda_clamped = false;  // raw lambda exceeded 1 + 1e-9: inconsistent inputs
};

/// Lower bound eta on Re<h1|h0> from the observable statistics. Exact inner
/// products Re<e0|e1>, Re<e2|e3>, Re<e1|e3> are recovered from p0plus,
/// p1plus, pe1; Re<e0|e3> is lower-bounded from peminus with the
/// Cauchy-Schwarz step Re<e1|e2> <= sqrt(qz0*qz1).
double eta_lower_bound(const ChannelStatistics& stats);

struct LambdaBound {
  double lambda = 0.5;  // clamped into [1/2, 1]
  double raw = 0.5;
  bool clamped_high = false;
};

/// lambda = 1/2 + sqrt(4(q00-q11)^2 + cap_b) / (4(q00+q11)).
/// Throws std::runtime_error when q00 + q11 <= 1e-12 (abort condition: both
/// correct-outcome weights must be positive).
LambdaBound lambda_from(double q00, double q01, double q10, double q11, double cap_b);

/// Acceptance weights reconstructed from observables alone:
/// q00 = pe1/2, q01 = qz0/2, q10 = peminus/2, q11 = (1 - p0plus)/2.
JointKeyDistribution distribution_from_statistics(const ChannelStatistics& stats);

/// H(B|A) = H({p_ij}) - h(p00 + p01).
double conditional_entropy_b_given_a(const JointKeyDistribution& dist);

/// The full pipeline: reconstruct the joint distribution, bound eta, form
/// lambda, and assemble r. A report is always returned; abort conditions
/// (q00 or q11 <= 1e-9) set the flag instead of failing.
KeyRateReport key_rate(const ChannelStatistics& stats);

}  // namespace sqkd
