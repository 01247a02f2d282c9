#include "sqkd/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "sqkd/depolarizing.hpp"
#include "sqkd/entropy.hpp"

namespace sqkd {

namespace {

constexpr double kScanStep = 1e-3;
constexpr double kBisectWidth = 1e-6;

double rate_at(double q, double bias) {
  return key_rate(closed_form_statistics(DepolScenario{q, bias})).r;
}

// Aborted/undefined points count as non-positive.
bool positive(double r) { return std::isfinite(r) && r > 0.0; }

void append_formatted(std::string& out, const char* format, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), format, value);
  out += buffer;
}

}  // namespace

std::vector<double> SweepGrid::q_values() const {
  if (!(q_step > 0.0)) {
    throw std::invalid_argument("SweepGrid: q_step must be positive");
  }
  if (q_max < q_min) {
    throw std::invalid_argument("SweepGrid: q_max must be at least q_min");
  }
  const auto count = static_cast<std::size_t>(std::floor((q_max - q_min) / q_step + 1e-9)) + 1;
  std::vector<double> values;
  values.reserve(count);
  for (std::size_t i = 0; i < count; ++i) values.push_back(q_min + static_cast<double>(i) * q_step);
  return values;
}

std::vector<SweepRow> sweep_keyrate(const SweepGrid& grid) {
  if (grid.bias_values.empty()) {
    throw std::invalid_argument("SweepGrid: at least one bias value is required");
  }
  const std::vector<double> qs = grid.q_values();
  std::vector<SweepRow> rows;
  rows.reserve(grid.bias_values.size() * qs.size());
  for (double bias : grid.bias_values) {
    for (double q : qs) {
      const DepolScenario scenario{q, bias};
      const KeyRateReport report = key_rate(closed_form_statistics(scenario));
      const JointKeyDistribution dist = closed_form_qij(scenario);
      rows.push_back(SweepRow{
          .bias = bias,
          .q = q,
          .r = report.r,
          .eta = report.eta,
          .lambda = report.lambda,
          .p_wrong = dist.p01 + dist.p10,
          .h_p_correct = binary_entropy(dist.p00 + dist.p11),
          .aborted = report.aborted,
      });
    }
  }
  return rows;
}

std::optional<double> threshold(double bias) {
  if (std::abs(bias) > kMaxBias) {
    throw std::invalid_argument("threshold: |bias| too close to 1/2");
  }
  if (!positive(rate_at(0.0, bias))) return std::nullopt;

  // Scan for the first crossing, then bisect. r(q) is not assumed monotone;
  // the scan finds the first non-positive point.
  double below = 0.0;
  for (int step = 1; step <= 1000; ++step) {
    const double qq = std::min(static_cast<double>(step) * kScanStep, 1.0);
    if (!positive(rate_at(qq, bias))) {
      double lo = below;
      double hi = qq;
      while (hi - lo > kBisectWidth) {
        const double mid = 0.5 * (lo + hi);
        if (positive(rate_at(mid, bias))) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      return 0.5 * (lo + hi);
    }
    below = qq;
  }
  return std::nullopt;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "b,q,r,eta,lambda,p_wrong,h_pcorrect,aborted\n";
  for (const SweepRow& row : rows) {
    append_formatted(out, "%.12g", row.bias);
    out += ',';
    append_formatted(out, "%.12g", row.q);
    out += ',';
    append_formatted(out, "%.12g", row.r);
    out += ',';
    append_formatted(out, "%.12g", row.eta);
    out += ',';
    append_formatted(out, "%.12g", row.lambda);
    out += ',';
    append_formatted(out, "%.12g", row.p_wrong);
    out += ',';
    append_formatted(out, "%.12g", row.h_p_correct);
    out += ',';
    out += row.aborted ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::string threshold_csv(const std::vector<ThresholdRow>& rows) {
  std::string out = "b,tau_q\n";
  for (const ThresholdRow& row : rows) {
    append_formatted(out, "%.12g", row.bias);
    out += ',';
    if (row.tau_q.has_value()) append_formatted(out, "%.4f", *row.tau_q);
    out += '\n';
  }
  return out;
}

}  // namespace sqkd
