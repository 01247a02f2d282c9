#include "sqkd/key_rate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "sqkd/entropy.hpp"

namespace sqkd {

namespace {

constexpr double kAbortWeight = 1e-9;
constexpr double kDegenerateWeight = 1e-12;

void require_bias_in_range(double bias) {
  if (std::abs(bias) > kMaxBias) {
    throw std::invalid_argument("bias " + std::to_string(bias) +
                                " too close to +-1/2; sqrt(1/4 - b^2) degenerates");
  }
}

void require_probability(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " = " + std::to_string(value) +
                                " is not a probability");
  }
}

void require_statistics(const ChannelStatistics& s) {
  require_bias_in_range(s.bias);
  require_probability(s.qz0, "qz0");
  require_probability(s.qz1, "qz1");
  require_probability(s.p0plus, "p0plus");
  require_probability(s.p1plus, "p1plus");
  require_probability(s.pe1, "pe1");
  require_probability(s.peminus, "peminus");
}

}  // namespace

double eta_lower_bound(const ChannelStatistics& stats) {
  require_statistics(stats);
  const double b = stats.bias;
  const double x = std::sqrt(0.5 + b);
  const double y = std::sqrt(0.5 - b);
  const double xy = x * y;  // sqrt(1/4 - b^2)
  const double gamma = std::sqrt(1.0 + 2.0 * b);
  const double delta = std::sqrt(1.0 - 2.0 * b);

  const double re_e0e1 = stats.p0plus - 0.5;
  const double re_e2e3 = stats.p1plus - 0.5;
  // pe1 = X^2 <e1|e1> + Y^2 <e3|e3> + 2XY Re<e1|e3>, with <e1|e1> = qz0 and
  // <e3|e3> = 1 - qz1 by unitarity.
  const double re_e1e3 =
      (stats.pe1 - x * x * stats.qz0 - y * y * (1.0 - stats.qz1)) / (2.0 * xy);
  // peminus = 1/2 - Re(X^2 <e0|e1> + XY <e0|e3> + XY <e1|e2> + Y^2 <e2|e3>);
  // Re<e1|e2> is capped by Cauchy-Schwarz at sqrt(qz0*qz1).
  const double re_e0e3_lower =
      (0.5 - stats.peminus - x * x * re_e0e1 - y * y * re_e2e3) / xy -
      std::sqrt(stats.qz0 * stats.qz1);

  return gamma * re_e0e1 - gamma * stats.qz0 + delta * re_e0e3_lower - delta * re_e1e3;
}

LambdaBound lambda_from(double q00, double q01, double q10, double q11, double cap_b) {
  (void)q01;
  (void)q10;
  if (cap_b < 0.0) {
    throw std::invalid_argument("lambda_from: cap_b must be non-negative");
  }
  if (q00 + q11 <= kDegenerateWeight) {
    throw std::runtime_error(
        "lambda_from: q00 + q11 is zero; too much noise, the protocol must abort");
  }
  LambdaBound result;
  const double delta = q00 - q11;
  result.raw = 0.5 + std::sqrt(4.0 * delta * delta + cap_b) / (4.0 * (q00 + q11));
  result.clamped_high = result.raw > 1.0 + 1e-9;
  result.lambda = std::min(std::max(result.raw, 0.5), 1.0);
  return result;
}

JointKeyDistribution distribution_from_statistics(const ChannelStatistics& stats) {
  require_statistics(stats);
  return JointKeyDistribution::from_weights(0.5 * stats.pe1, 0.5 * stats.qz0,
                                            0.5 * stats.peminus, 0.5 * (1.0 - stats.p0plus));
}

double conditional_entropy_b_given_a(const JointKeyDistribution& dist) {
  const double joint[4] = {dist.p00, dist.p01, dist.p10, dist.p11};
  return shannon_entropy(joint) - binary_entropy(dist.p00 + dist.p01);
}

KeyRateReport key_rate(const ChannelStatistics& stats) {
  const JointKeyDistribution dist = distribution_from_statistics(stats);

  KeyRateReport report;
  report.eta = eta_lower_bound(stats);
  report.cap_b = report.eta > 0.0 ? report.eta * report.eta : 0.0;

  const double joint[4] = {dist.p00, dist.p01, dist.p10, dist.p11};
  report.s_bec = shannon_entropy(joint);
  report.h_b_given_a = report.s_bec - binary_entropy(dist.p00 + dist.p01);

  if (dist.q00 <= kAbortWeight || dist.q11 <= kAbortWeight) {
    report.aborted = true;
    report.abort_reason = dist.q00 <= kAbortWeight
                              ? "q00 is zero: reflected iterations never yield a correct bit"
                              : "q11 is zero: resent iterations never yield a correct bit";
  }

  if (dist.q00 + dist.q11 <= kDegenerateWeight) {
    report.lambda = std::numeric_limits<double>::quiet_NaN();
    report.s_ec_upper = std::numeric_limits<double>::quiet_NaN();
    report.r = std::numeric_limits<double>::quiet_NaN();
    return report;
  }

  const LambdaBound lambda = lambda_from(dist.q00, dist.q01, dist.q10, dist.q11, report.cap_b);
  report.lambda = lambda.lambda;
  report.lambda_clamped = lambda.clamped_high;

  const double p_correct = dist.p00 + dist.p11;
  const double p_wrong = dist.p01 + dist.p10;
  report.s_ec_upper = binary_entropy(p_correct) + p_wrong + p_correct * binary_entropy(report.lambda);
  report.r = binary_entropy(dist.p00 + dist.p01) - binary_entropy(p_correct) - p_wrong -
             p_correct * binary_entropy(report.lambda);
  return report;
}

}  // namespace sqkd
