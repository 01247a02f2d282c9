// Command line front end: key-rate bounds, protocol simulation, parameter
// sweeps, noise thresholds, and attack-file validation.
//
// Exit codes: 0 success, 1 tool error (bad flags, malformed files),
// 2 analysis says abort (non-positive weights, failed validation, incomplete
// estimates).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sqkd/depolarizing.hpp"
#include "sqkd/json_io.hpp"
#include "sqkd/key_rate.hpp"
#include "sqkd/simulation.hpp"
#include "sqkd/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitAbort = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write '" + path + "'");
  }
  out << content << '\n';
}

unsigned env_thread_cap() {
  const char* value = std::getenv("SQKD_THREADS");
  if (value == nullptr || *value == '\0') return 0;
  const long parsed = std::strtol(value, nullptr, 10);
  return parsed > 0 ? static_cast<unsigned>(parsed) : 0;
}

struct InputSource {
  bool has_scenario = false;
  double q = 0.0;
  double bias = 0.0;
  std::string stats_path;
  std::string attack_path;
};

sqkd::ChannelStatistics load_statistics(const InputSource& source) {
  if (source.has_scenario) {
    return sqkd::closed_form_statistics(sqkd::DepolScenario{source.q, source.bias});
  }
  if (!source.attack_path.empty()) {
    return sqkd::exact_statistics(sqkd::attack_from_json(read_file(source.attack_path)));
  }
  return sqkd::statistics_from_json(read_file(source.stats_path));
}

sqkd::AttackSpec load_attack(const InputSource& source) {
  if (source.has_scenario) {
    return sqkd::dilation(sqkd::DepolScenario{source.q, source.bias});
  }
  return sqkd::attack_from_json(read_file(source.attack_path));
}

int run_keyrate(const InputSource& source, const std::string& output) {
  const sqkd::KeyRateReport report = sqkd::key_rate(load_statistics(source));
  write_output(output, sqkd::report_to_json(report));
  return report.aborted ? kExitAbort : kExitOk;
}

const char* balance_name(sqkd::BalanceMode mode) {
  return mode == sqkd::BalanceMode::Empirical ? "empirical" : "analytic";
}

int run_simulate(const InputSource& source, std::uint64_t iterations, std::uint64_t seed,
                 unsigned shards, sqkd::BalanceMode balance, const std::string& output) {
  sqkd::SimulationConfig config;
  config.attack = load_attack(source);
  config.iterations = iterations;
  config.seed = seed;
  config.shards = shards;
  config.balance = balance;
  config.max_parallelism = env_thread_cap();

  const sqkd::SimulationTally tally = sqkd::run(config);
  const sqkd::SimulationEstimate estimates = sqkd::estimate(tally);

  bool aborted = false;
  std::string report_json;
  if (estimates.complete()) {
    const sqkd::KeyRateReport report = sqkd::key_rate(estimates.as_statistics());
    report_json = sqkd::report_to_json(report);
    aborted = report.aborted;
  } else {
    aborted = true;  // empty conditioning cells: nothing to certify
  }

  sqkd::JsonWriter w;
  w.begin_object();
  w.key("generator").value(sqkd::kGeneratorName);
  w.key("seed").value(seed);
  w.key("iterations").value(iterations);
  w.key("shards").value(static_cast<std::uint64_t>(shards));
  w.key("balance_mode").value(std::string_view{balance_name(balance)});
  w.key("tally").raw(sqkd::tally_to_json(tally));
  w.key("estimates").raw(sqkd::estimate_to_json(estimates));
  w.key("report");
  if (report_json.empty()) {
    w.null();
  } else {
    w.raw(report_json);
  }
  w.end_object();
  write_output(output, w.str());
  return aborted ? kExitAbort : kExitOk;
}

int run_sweep(const sqkd::SweepGrid& grid, const std::string& output) {
  write_output(output, sqkd::sweep_csv(sqkd::sweep_keyrate(grid)));
  return kExitOk;
}

int run_threshold(const std::vector<double>& bias_values, const std::string& output) {
  std::vector<sqkd::ThresholdRow> rows;
  rows.reserve(bias_values.size());
  for (double bias : bias_values) {
    rows.push_back(sqkd::ThresholdRow{bias, sqkd::threshold(bias)});
  }
  write_output(output, sqkd::threshold_csv(rows));
  return kExitOk;
}

int run_validate(const std::string& attack_path, const std::string& output) {
  const sqkd::AttackSpec attack = sqkd::attack_from_json(read_file(attack_path));
  const sqkd::UnitarityReport report = sqkd::validate(attack);
  sqkd::JsonWriter w;
  w.begin_object();
  w.key("send0_norm_residual").value(report.send0_norm_residual);
  w.key("send1_norm_residual").value(report.send1_norm_residual);
  w.key("orthogonality_residual").value(report.orthogonality_residual);
  w.key("bias_in_range").value(report.bias_in_range);
  w.key("tolerance").value(sqkd::UnitarityReport::kTolerance);
  w.key("pass").value(report.pass());
  w.end_object();
  write_output(output, w.str());
  return report.pass() ? kExitOk : kExitAbort;
}

std::vector<double> range_values(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo) {
    throw std::runtime_error("invalid range: need step > 0 and max >= min");
  }
  std::vector<double> values;
  const auto count = static_cast<std::size_t>((hi - lo) / step + 1e-9) + 1;
  values.reserve(count);
  for (std::size_t i = 0; i < count; ++i) values.push_back(lo + static_cast<double>(i) * step);
  return values;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Key-rate security analysis of a single-state semi-quantum key distribution protocol"};
  app.require_subcommand(1);

  // keyrate
  InputSource kr_source;
  std::string kr_output;
  auto* keyrate = app.add_subcommand(
      "keyrate", "Key-rate lower bound from a (q, b) scenario, a statistics file, or an attack file");
  auto* kr_q = keyrate->add_option("--q", kr_source.q, "Depolarization parameter q in [0, 1]");
  auto* kr_b = keyrate->add_option("--b", kr_source.bias, "Forward bias b (default 0)");
  auto* kr_stats =
      keyrate->add_option("--stats", kr_source.stats_path, "JSON file with channel statistics");
  auto* kr_attack = keyrate->add_option("--attack", kr_source.attack_path, "JSON attack file");
  kr_q->excludes(kr_stats)->excludes(kr_attack);
  kr_stats->excludes(kr_attack);
  kr_b->needs(kr_q);
  keyrate->add_option("--output", kr_output, "Write the report to a file instead of stdout");

  // simulate
  InputSource sim_source;
  std::string sim_output;
  std::uint64_t sim_iterations = 0;
  std::uint64_t sim_seed = 0;
  unsigned sim_shards = 1;
  std::string sim_balance = "empirical";
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo run of the protocol under an attack");
  auto* sim_q = simulate->add_option("--q", sim_source.q, "Depolarization parameter q in [0, 1]");
  auto* sim_b = simulate->add_option("--b", sim_source.bias, "Forward bias b (default 0)");
  auto* sim_attack = simulate->add_option("--attack", sim_source.attack_path, "JSON attack file");
  sim_q->excludes(sim_attack);
  sim_b->needs(sim_q);
  simulate->add_option("--iterations", sim_iterations, "Number of protocol iterations")
      ->required()
      ->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim_seed, "Master RNG seed (default 0)");
  simulate->add_option("--shards", sim_shards, "Independent shards to split the run into")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--balance", sim_balance, "Key balancing mode")
      ->check(CLI::IsMember({"empirical", "analytic"}));
  simulate->add_option("--output", sim_output, "Write the JSON result to a file instead of stdout");

  // sweep
  sqkd::SweepGrid grid;
  std::string sweep_output;
  auto* sweep = app.add_subcommand("sweep", "Key-rate table over a (b, q) grid, CSV output");
  sweep->add_option("--b-list", grid.bias_values, "Comma-separated bias values")
      ->required()
      ->delimiter(',');
  sweep->add_option("--q-min", grid.q_min, "Smallest q")->required();
  sweep->add_option("--q-max", grid.q_max, "Largest q")->required();
  sweep->add_option("--q-step", grid.q_step, "q increment")->required();
  sweep->add_option("--output", sweep_output, "Write the CSV to a file instead of stdout");

  // threshold
  std::vector<double> th_bias_list;
  double th_b_min = 0.0, th_b_max = 0.0, th_b_step = 0.0;
  std::string th_output;
  auto* thresh = app.add_subcommand("threshold", "Noise threshold tau_Q(b), CSV output");
  auto* th_list =
      thresh->add_option("--b-list", th_bias_list, "Comma-separated bias values")->delimiter(',');
  auto* th_min = thresh->add_option("--b-min", th_b_min, "Smallest bias");
  auto* th_max = thresh->add_option("--b-max", th_b_max, "Largest bias");
  auto* th_step = thresh->add_option("--b-step", th_b_step, "Bias increment");
  th_list->excludes(th_min)->excludes(th_max)->excludes(th_step);
  th_min->needs(th_max)->needs(th_step);
  thresh->add_option("--output", th_output, "Write the CSV to a file instead of stdout");

  // validate
  std::string val_attack;
  std::string val_output;
  auto* validate = app.add_subcommand("validate", "Check the unitarity conditions of an attack file");
  validate->add_option("--attack", val_attack, "JSON attack file")->required();
  validate->add_option("--output", val_output, "Write the report to a file instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (keyrate->parsed()) {
      kr_source.has_scenario = kr_q->count() > 0;
      if (!kr_source.has_scenario && kr_source.stats_path.empty() &&
          kr_source.attack_path.empty()) {
        std::cerr << "error: keyrate needs one of --q, --stats, or --attack\n";
        return kExitError;
      }
      return run_keyrate(kr_source, kr_output);
    }
    if (simulate->parsed()) {
      sim_source.has_scenario = sim_q->count() > 0;
      if (!sim_source.has_scenario && sim_source.attack_path.empty()) {
        std::cerr << "error: simulate needs one of --q or --attack\n";
        return kExitError;
      }
      const sqkd::BalanceMode mode = sim_balance == "analytic" ? sqkd::BalanceMode::Analytic
                                                               : sqkd::BalanceMode::Empirical;
      return run_simulate(sim_source, sim_iterations, sim_seed, sim_shards, mode, sim_output);
    }
    if (sweep->parsed()) {
      return run_sweep(grid, sweep_output);
    }
    if (thresh->parsed()) {
      std::vector<double> bias_values = th_bias_list;
      if (bias_values.empty()) {
        if (th_min->count() == 0) {
          std::cerr << "error: threshold needs --b-list or --b-min/--b-max/--b-step\n";
          return kExitError;
        }
        bias_values = range_values(th_b_min, th_b_max, th_b_step);
      }
      return run_threshold(bias_values, th_output);
    }
    if (validate->parsed()) {
      return run_validate(val_attack, val_output);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
