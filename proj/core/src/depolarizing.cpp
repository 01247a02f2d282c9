#include "sqkd/depolarizing.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sqkd {

void require_valid(const DepolScenario& scenario) {
  if (!(scenario.q >= 0.0 && scenario.q <= 1.0)) {
    throw std::invalid_argument("DepolScenario: q = " + std::to_string(scenario.q) +
                                " outside [0, 1]");
  }
  if (std::abs(scenario.bias) > kMaxBias) {
    throw std::invalid_argument("DepolScenario: |bias| = " + std::to_string(scenario.bias) +
                                " too close to 1/2");
  }
}

ChannelStatistics closed_form_statistics(const DepolScenario& scenario) {
  require_valid(scenario);
  const double q = scenario.q;
  const double b = scenario.bias;
  ChannelStatistics s;
  s.bias = b;
  s.qz0 = q / 2.0;
  s.qz1 = q / 2.0;
  s.p0plus = 0.5;
  s.p1plus = 0.5;
  s.pe1 = 0.5 - b * (1.0 - q);
  s.peminus = (1.0 - q) * (0.5 - std::sqrt(0.25 - b * b)) + q / 2.0;
  return s;
}

JointKeyDistribution closed_form_qij(const DepolScenario& scenario) {
  require_valid(scenario);
  const double q = scenario.q;
  const double b = scenario.bias;
  const double q_e = (1.0 - q) * (0.5 - std::sqrt(0.25 - b * b)) + q / 2.0;
  return JointKeyDistribution::from_weights(0.5 * (0.5 - b * (1.0 - q)), q / 4.0, 0.5 * q_e,
                                            0.25);
}

AttackSpec dilation(const DepolScenario& scenario) {
  require_valid(scenario);
  const double q = scenario.q;
  const double w_i = std::sqrt(1.0 - 0.75 * q);
  const double w_p = std::sqrt(0.25 * q);

  // e_i[k] = <out| K_k |in> over the Kraus set, ancilla index k in (I,X,Y,Z)
  // order. Y|0> = i|1>, Y|1> = -i|0>.
  AttackSpec a;
  a.bias = scenario.bias;
  a.e0 = ComplexVec{Complex{w_i, 0.0}, Complex{0.0, 0.0}, Complex{0.0, 0.0}, Complex{w_p, 0.0}};
  a.e1 = ComplexVec{Complex{0.0, 0.0}, Complex{w_p, 0.0}, Complex{0.0, w_p}, Complex{0.0, 0.0}};
  a.e2 = ComplexVec{Complex{0.0, 0.0}, Complex{w_p, 0.0}, Complex{0.0, -w_p}, Complex{0.0, 0.0}};
  a.e3 = ComplexVec{Complex{w_i, 0.0}, Complex{0.0, 0.0}, Complex{0.0, 0.0}, Complex{-w_p, 0.0}};
  return a;
}

}  // namespace sqkd
