#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "sqkd/attack.hpp"
#include "sqkd/key_rate.hpp"
#include "sqkd/simulation.hpp"

namespace sqkd {

/// Minimal JSON emitter with pinned number formatting: doubles print as
/// %.17g (null when not finite), so serialized output is bit-stable.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view name);
  JsonWriter& value(double v);
  JsonWriter& value(bool v);
  JsonWriter& value(std::uint64_t v);
  JsonWriter& value(std::string_view v);
  JsonWriter& null();
  /// Splices an already-serialized JSON value.
  JsonWriter& raw(std::string_view json);

  const std::string& str() const { return out_; }

 private:
  void separate();
  std::string out_;
  bool need_comma_ = false;
};

/// Attack file format:
/// { "b": number, "dim": n, "e0": [[re, im], ...], "e1": ..., "e2": ...,
///   "e3": ... } with each array of length dim.
std::string attack_to_json(const AttackSpec& attack);

/// Parses the attack file format. Errors name the offending field.
AttackSpec attack_from_json(const std::string& text);

std::string statistics_to_json(const ChannelStatistics& stats);
ChannelStatistics statistics_from_json(const std::string& text);

std::string report_to_json(const KeyRateReport& report);

std::string tally_to_json(const SimulationTally& tally);
std::string estimate_to_json(const SimulationEstimate& estimate);

}  // namespace sqkd
