#include "sqkd/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace sqkd {

namespace {

std::string format_double(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

}  // namespace

void JsonWriter::separate() {
  if (need_comma_) out_ += ',';
  need_comma_ = false;
}

JsonWriter& JsonWriter::begin_object() {
  separate();
  out_ += '{';
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  out_ += '}';
  need_comma_ = true;
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  separate();
  out_ += '[';
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  out_ += ']';
  need_comma_ = true;
  return *this;
}

JsonWriter& JsonWriter::key(std::string_view name) {
  separate();
  out_ += '"';
  out_ += name;
  out_ += "\":";
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  separate();
  if (std::isfinite(v)) {
    out_ += format_double(v);
  } else {
    out_ += "null";
  }
  need_comma_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  separate();
  out_ += v ? "true" : "false";
  need_comma_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t v) {
  separate();
  out_ += std::to_string(v);
  need_comma_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(std::string_view v) {
  separate();
  out_ += '"';
  for (char c : v) {
    if (c == '"' || c == '\\') out_ += '\\';
    out_ += c;
  }
  out_ += '"';
  need_comma_ = true;
  return *this;
}

JsonWriter& JsonWriter::null() {
  separate();
  out_ += "null";
  need_comma_ = true;
  return *this;
}

JsonWriter& JsonWriter::raw(std::string_view json) {
  separate();
  out_ += json;
  need_comma_ = true;
  return *this;
}

namespace {

void write_vector(JsonWriter& w, const ComplexVec& v) {
  w.begin_array();
  for (std::size_t i = 0; i < v.dim(); ++i) {
    w.begin_array();
    w.value(v[i].real());
    w.value(v[i].imag());
    w.end_array();
  }
  w.end_array();
}

double require_number(const nlohmann::json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_number()) {
    throw std::invalid_argument(std::string("field '") + field + "': expected a number");
  }
  return j[field].get<double>();
}

ComplexVec require_complex_vector(const nlohmann::json& j, const char* field,
                                  std::size_t expected_dim) {
  if (!j.contains(field) || !j[field].is_array()) {
    throw std::invalid_argument(std::string("field '") + field +
                                "': expected an array of [re, im] pairs");
  }
  const auto& arr = j[field];
  if (arr.size() != expected_dim) {
    throw std::invalid_argument(std::string("field '") + field + "': expected " +
                                std::to_string(expected_dim) + " entries, got " +
                                std::to_string(arr.size()));
  }
  ComplexVec v(expected_dim);
  for (std::size_t i = 0; i < expected_dim; ++i) {
    const auto& pair = arr[i];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      throw std::invalid_argument(std::string("field '") + field + "': entry " +
                                  std::to_string(i) + " is not a [re, im] pair");
    }
    v[i] = Complex{pair[0].get<double>(), pair[1].get<double>()};
  }
  return v;
}

nlohmann::json parse_or_throw(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw std::invalid_argument("malformed JSON");
  }
  if (!j.is_object()) {
    throw std::invalid_argument("expected a JSON object");
  }
  return j;
}

void write_field_estimate(JsonWriter& w, const char* name, const FieldEstimate& f) {
  w.key(name).begin_object();
  w.key("available").value(f.available);
  if (f.available) {
    w.key("value").value(f.value);
    w.key("std_error").value(f.std_error);
  } else {
    w.key("value").null();
    w.key("std_error").null();
  }
  w.key("samples").value(f.samples);
  w.end_object();
}

}  // namespace

std::string attack_to_json(const AttackSpec& attack) {
  JsonWriter w;
  w.begin_object();
  w.key("b").value(attack.bias);
  w.key("dim").value(static_cast<std::uint64_t>(attack.dim()));
  w.key("e0");
  write_vector(w, attack.e0);
  w.key("e1");
  write_vector(w, attack.e1);
  w.key("e2");
  write_vector(w, attack.e2);
  w.key("e3");
  write_vector(w, attack.e3);
  w.end_object();
  return w.str();
}

AttackSpec attack_from_json(const std::string& text) {
  const nlohmann::json j = parse_or_throw(text);
  AttackSpec attack;
  attack.bias = require_number(j, "b");
  if (!j.contains("dim") || !j["dim"].is_number_unsigned() || j["dim"].get<std::uint64_t>() < 1) {
    throw std::invalid_argument("field 'dim': expected a positive integer");
  }
  const auto dim = j["dim"].get<std::size_t>();
  attack.e0 = require_complex_vector(j, "e0", dim);
  attack.e1 = require_complex_vector(j, "e1", dim);
  attack.e2 = require_complex_vector(j, "e2", dim);
  attack.e3 = require_complex_vector(j, "e3", dim);
  return attack;
}

std::string statistics_to_json(const ChannelStatistics& stats) {
  JsonWriter w;
  w.begin_object();
  w.key("b").value(stats.bias);
  w.key("qz0").value(stats.qz0);
  w.key("qz1").value(stats.qz1);
  w.key("p0plus").value(stats.p0plus);
  w.key("p1plus").value(stats.p1plus);
  w.key("pe1").value(stats.pe1);
  w.key("peminus").value(stats.peminus);
  w.end_object();
  return w.str();
}

ChannelStatistics statistics_from_json(const std::string& text) {
  const nlohmann::json j = parse_or_throw(text);
  ChannelStatistics s;
  s.bias = require_number(j, "b");
  s.qz0 = require_number(j, "qz0");
  s.qz1 = require_number(j, "qz1");
  s.p0plus = require_number(j, "p0plus");
  s.p1plus = require_number(j, "p1plus");
  s.pe1 = require_number(j, "pe1");
  s.peminus = require_number(j, "peminus");
  return s;
}

std::string report_to_json(const KeyRateReport& report) {
  JsonWriter w;
  w.begin_object();
  w.key("eta").value(report.eta);
  w.key("cap_b").value(report.cap_b);
  w.key("lambda").value(report.lambda);
  w.key("h_b_given_a").value(report.h_b_given_a);
  w.key("s_bec").value(report.s_bec);
  w.key("s_ec_upper").value(report.s_ec_upper);
  w.key("r").value(report.r);
  w.key("aborted").value(report.aborted);
  w.key("abort_reason").value(std::string_view{report.abort_reason});
  w.key("lambda_clamped").value(report.lambda_clamped);
  w.end_object();
  return w.str();
}

namespace {

const char* kActionNames[] = {"reflect", "measure_resend"};
const char* kBasisNames[] = {"Z", "X"};
const char* kDispositionNames[] = {"discarded_measure_one", "discarded_balance", "a_rejected",
                                   "kept"};

}  // namespace

std::string tally_to_json(const SimulationTally& tally) {
  JsonWriter w;
  w.begin_object();
  w.key("iterations").value(tally.iterations);
  w.key("balanced").value(tally.balanced_total());
  w.key("kept_pairs").begin_object();
  w.key("k00").value(tally.kept_pairs(0, 0));
  w.key("k01").value(tally.kept_pairs(0, 1));
  w.key("k10").value(tally.kept_pairs(1, 0));
  w.key("k11").value(tally.kept_pairs(1, 1));
  w.end_object();
  w.key("counters").begin_array();
  for (int action = 0; action < 2; ++action) {
    for (int b_out = 0; b_out < 2; ++b_out) {
      for (int basis = 0; basis < 2; ++basis) {
        for (int a_out = 0; a_out < 2; ++a_out) {
          for (int d = 0; d < kDispositionCount; ++d) {
            const std::uint64_t n =
                tally.count(action, b_out, basis, a_out, static_cast<Disposition>(d));
            if (n == 0) continue;
            w.begin_object();
            w.key("action").value(std::string_view{kActionNames[action]});
            w.key("b_out").value(static_cast<std::uint64_t>(b_out));
            w.key("a_basis").value(std::string_view{kBasisNames[basis]});
            w.key("a_out").value(static_cast<std::uint64_t>(a_out));
            w.key("disposition").value(std::string_view{kDispositionNames[d]});
            w.key("count").value(n);
            w.end_object();
          }
        }
      }
    }
  }
  w.end_array();
  w.end_object();
  return w.str();
}

std::string estimate_to_json(const SimulationEstimate& estimate) {
  JsonWriter w;
  w.begin_object();
  write_field_estimate(w, "b", estimate.bias);
  write_field_estimate(w, "qz0", estimate.qz0);
  write_field_estimate(w, "qz1", estimate.qz1);
  write_field_estimate(w, "p0plus", estimate.p0plus);
  write_field_estimate(w, "p1plus", estimate.p1plus);
  write_field_estimate(w, "pe1", estimate.pe1);
  write_field_estimate(w, "peminus", estimate.peminus);
  w.key("empirical_qij");
  if (estimate.joint_available) {
    const JointKeyDistribution joint = estimate.empirical_joint();
    w.begin_object();
    w.key("q00").value(joint.q00);
    w.key("q01").value(joint.q01);
    w.key("q10").value(joint.q10);
    w.key("q11").value(joint.q11);
    w.key("normalization").value(joint.normalization);
    w.key("p00").value(joint.p00);
    w.key("p01").value(joint.p01);
    w.key("p10").value(joint.p10);
    w.key("p11").value(joint.p11);
    w.key("kept_total").value(estimate.kept_total);
    w.key("balanced").value(estimate.balanced);
    w.end_object();
  } else {
    w.null();
  }
  w.end_object();
  return w.str();
}

}  // namespace sqkd
