#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sqkd/key_rate.hpp"

namespace sqkd {

/// Grid of (bias, q) points evaluated through the depolarization closed
/// forms. q runs from q_min to q_max inclusive in steps of q_step.
struct SweepGrid {
  std::vector<double> bias_values;
  double q_min = 0.0;
  double q_max = 0.0;
  double q_step = 0.0;

  std::vector<double> q_values() const;
};

struct SweepRow {
  double bias = 0.0;
  double q = 0.0;
  double r = 0.0;
  double eta = 0.0;
  double lambda = 0.0;
  double p_wrong = 0.0;      // p01 + p10, the raw-key error rate
  double h_p_correct = 0.0;  // h(p00 + p11)
  bool aborted = false;
};

/// One row per (bias, q) in grid order: bias values outer, q inner.
std::vector<SweepRow> sweep_keyrate(const SweepGrid& grid);

/// Smallest q at which the key-rate bound stops being positive for the given
/// bias: scans q upward at step 1e-3 for the first sign change, then bisects
/// the bracketing interval to width 1e-6. Returns nullopt when the bound is
/// already non-positive at q = 0.
std::optional<double> threshold(double bias);

struct ThresholdRow {
  double bias = 0.0;
  std::optional<double> tau_q;
};

/// CSV with header `b,q,r,eta,lambda,p_wrong,h_pcorrect,aborted`, %.12g.
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// CSV with header `b,tau_q`; tau_q at 4 decimals, empty when none.
std::string threshold_csv(const std::vector<ThresholdRow>& rows);

}  // namespace sqkd
