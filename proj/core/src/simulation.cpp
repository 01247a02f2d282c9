#include "sqkd/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

namespace sqkd {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// 53-bit uniform in [0, 1); bit-identical across standard libraries.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Unbiased integer in [0, n) by rejection.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0ULL - n) % n;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % n;
  }
}

double clamp01(double p) { return std::min(std::max(p, 0.0), 1.0); }

struct OutcomeProbabilities {
  double z_one;    // P(|1>) in the Z basis
  double x_minus;  // P(|->) in the X basis
};

// Record bit layout, one byte per iteration.
constexpr std::uint8_t kBitMeasure = 1u << 0;
constexpr std::uint8_t kBitBOut = 1u << 1;
constexpr std::uint8_t kBitBasisX = 1u << 2;
constexpr std::uint8_t kBitAOut = 1u << 3;

FieldEstimate make_estimate(std::uint64_t hits, std::uint64_t samples, double shift = 0.0) {
  FieldEstimate f;
  f.samples = samples;
  if (samples == 0) return f;
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  f.value = p + shift;
  f.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  f.available = true;
  return f;
}

}  // namespace

std::uint64_t shard_seed(std::uint64_t master_seed, unsigned index) {
  return splitmix64(master_seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(index) + 1));
}

std::uint64_t SimulationTally::total(int action, int b_out, int a_basis, int a_out) const {
  std::uint64_t sum = 0;
  for (int d = 0; d < kDispositionCount; ++d) {
    sum += counts[index(action, b_out, a_basis, a_out, static_cast<Disposition>(d))];
  }
  return sum;
}

std::uint64_t SimulationTally::kept_pairs(int k_a, int k_b) const {
  // k_a comes from A's basis (Z accept -> 0, X accept -> 1), k_b from B's
  // action (reflect -> 0, measure-resend -> 1). Kept resends always have
  // b_out = 0.
  const int action = k_b == 0 ? kActionReflect : kActionMeasure;
  const int basis = k_a == 0 ? kBasisZ : kBasisX;
  return count(action, 0, basis, 1, Disposition::Kept);
}

std::uint64_t SimulationTally::balanced_total() const {
  std::uint64_t sum = 0;
  for (int action = 0; action < 2; ++action) {
    for (int b_out = 0; b_out < 2; ++b_out) {
      for (int basis = 0; basis < 2; ++basis) {
        for (int a_out = 0; a_out < 2; ++a_out) {
          sum += count(action, b_out, basis, a_out, Disposition::ARejected) +
                 count(action, b_out, basis, a_out, Disposition::Kept);
        }
      }
    }
  }
  return sum;
}

SimulationTally& SimulationTally::merge(const SimulationTally& other) {
  iterations += other.iterations;
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
  return *this;
}

SimulationTally run_shard(const AttackSpec& attack, std::uint64_t iterations, std::uint64_t seed,
                          BalanceMode balance) {
  require_valid(attack);
  if (iterations == 0) {
    throw std::invalid_argument("run_shard: iterations must be at least 1");
  }

  // The three states leaving Eve's probe are fixed per attack; precompute
  // A's outcome probabilities for each.
  const double x = std::sqrt(0.5 + attack.bias);
  const double y = std::sqrt(0.5 - attack.bias);
  const OutcomeProbabilities resend0{
      clamp01(norm_squared(attack.e1)),
      clamp01(0.5 * (1.0 - 2.0 * inner(attack.e0, attack.e1).real()))};
  const OutcomeProbabilities resend1{
      clamp01(norm_squared(attack.e3)),
      clamp01(0.5 * (1.0 - 2.0 * inner(attack.e2, attack.e3).real()))};
  const ComplexVec returned_one = Complex{x, 0.0} * attack.e1 + Complex{y, 0.0} * attack.e3;
  const OutcomeProbabilities reflect{clamp01(norm_squared(returned_one)),
                                     clamp01(norm_squared(g1_from_e_vectors(attack)))};
  const double p_resend_zero = 0.5 + attack.bias;

  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> records;
  records.reserve(iterations);
  std::uint64_t measure_total = 0;
  std::uint64_t measure_zero = 0;

  for (std::uint64_t i = 0; i < iterations; ++i) {
    std::uint8_t rec = 0;
    const OutcomeProbabilities* out;
    if (uniform01(rng) < 0.5) {  // k_B = 1: measure and resend
      rec |= kBitMeasure;
      ++measure_total;
      if (uniform01(rng) < p_resend_zero) {
        ++measure_zero;
        out = &resend0;
      } else {
        rec |= kBitBOut;
        out = &resend1;
      }
    } else {  // k_B = 0: reflect
      out = &reflect;
    }
    const bool basis_x = uniform01(rng) < 0.5;
    if (basis_x) rec |= kBitBasisX;
    const double p_accept_outcome = basis_x ? out->x_minus : out->z_one;
    if (uniform01(rng) < p_accept_outcome) rec |= kBitAOut;
    records.push_back(rec);
  }

  // B's key balancing: drop reflections until P(k_B=0) matches P(k_B=1)
  // among iterations he keeps.
  std::vector<std::uint8_t> balance_discarded(records.size(), 0);
  std::vector<std::uint64_t> reflections;
  reflections.reserve(records.size() - measure_total);
  for (std::uint64_t i = 0; i < records.size(); ++i) {
    if (!(records[i] & kBitMeasure)) reflections.push_back(i);
  }
  if (balance == BalanceMode::Empirical) {
    if (reflections.size() > measure_zero) {
      // Keep a uniform subset of size measure_zero (partial Fisher-Yates).
      for (std::uint64_t k = 0; k < measure_zero; ++k) {
        const std::uint64_t j = k + bounded(rng, reflections.size() - k);
        std::swap(reflections[k], reflections[j]);
      }
      for (std::uint64_t k = measure_zero; k < reflections.size(); ++k) {
        balance_discarded[reflections[k]] = 1;
      }
    }
  } else {
    const double b_hat =
        measure_total == 0
            ? 0.0
            : static_cast<double>(measure_zero) / static_cast<double>(measure_total) - 0.5;
    const double keep_probability = clamp01(0.5 + b_hat);
    for (std::uint64_t idx : reflections) {
      if (uniform01(rng) >= keep_probability) balance_discarded[idx] = 1;
    }
  }

  SimulationTally tally;
  tally.iterations = iterations;
  for (std::uint64_t i = 0; i < records.size(); ++i) {
    const std::uint8_t rec = records[i];
    const int action = (rec & kBitMeasure) ? kActionMeasure : kActionReflect;
    const int b_out = (rec & kBitBOut) ? 1 : 0;
    const int basis = (rec & kBitBasisX) ? kBasisX : kBasisZ;
    const int a_out = (rec & kBitAOut) ? 1 : 0;
    Disposition d;
    if (action == kActionMeasure && b_out == 1) {
      d = Disposition::DiscardedMeasureOne;
    } else if (balance_discarded[i]) {
      d = Disposition::DiscardedBalance;
    } else {
      d = a_out == 1 ? Disposition::Kept : Disposition::ARejected;
    }
    ++tally.counts[SimulationTally::index(action, b_out, basis, a_out, d)];
  }
  return tally;
}

SimulationTally run(const SimulationConfig& config) {
  require_valid(config.attack);
  if (config.iterations == 0) {
    throw std::invalid_argument("SimulationConfig: iterations must be at least 1");
  }
  if (config.shards == 0) {
    throw std::invalid_argument("SimulationConfig: shards must be at least 1");
  }
  const unsigned shards = static_cast<unsigned>(
      std::min<std::uint64_t>(config.shards, config.iterations));

  std::vector<std::uint64_t> shard_iterations(shards, config.iterations / shards);
  for (unsigned i = 0; i < config.iterations % shards; ++i) ++shard_iterations[i];

  std::vector<SimulationTally> partials(shards);
  unsigned parallelism = config.max_parallelism;
  if (parallelism == 0) parallelism = std::max(1u, std::thread::hardware_concurrency());
  parallelism = std::min(parallelism, shards);

  if (parallelism <= 1) {
    for (unsigned i = 0; i < shards; ++i) {
      partials[i] =
          run_shard(config.attack, shard_iterations[i], shard_seed(config.seed, i), config.balance);
    }
  } else {
    std::vector<std::thread> workers;
    workers.reserve(parallelism);
    for (unsigned w = 0; w < parallelism; ++w) {
      workers.emplace_back([&, w] {
        for (unsigned i = w; i < shards; i += parallelism) {
          partials[i] = run_shard(config.attack, shard_iterations[i], shard_seed(config.seed, i),
                                  config.balance);
        }
      });
    }
    for (auto& t : workers) t.join();
  }

  SimulationTally result;
  for (const SimulationTally& partial : partials) result.merge(partial);
  return result;
}

SimulationEstimate estimate(const SimulationTally& tally) {
  SimulationEstimate e;

  std::uint64_t measure_total = 0;
  std::uint64_t measure_zero = 0;
  for (int b_out = 0; b_out < 2; ++b_out) {
    for (int basis = 0; basis < 2; ++basis) {
      for (int a_out = 0; a_out < 2; ++a_out) {
        const std::uint64_t n = tally.total(kActionMeasure, b_out, basis, a_out);
        measure_total += n;
        if (b_out == 0) measure_zero += n;
      }
    }
  }
  e.bias = make_estimate(measure_zero, measure_total, -0.5);

  const auto conditional = [&tally](int action, int b_out, int basis, int hit_out) {
    const std::uint64_t n =
        tally.total(action, b_out, basis, 0) + tally.total(action, b_out, basis, 1);
    return make_estimate(tally.total(action, b_out, basis, hit_out), n);
  };
  e.qz0 = conditional(kActionMeasure, 0, kBasisZ, 1);
  e.qz1 = conditional(kActionMeasure, 1, kBasisZ, 0);
  e.p0plus = conditional(kActionMeasure, 0, kBasisX, 0);
  e.p1plus = conditional(kActionMeasure, 1, kBasisX, 0);
  e.pe1 = conditional(kActionReflect, 0, kBasisZ, 1);
  e.peminus = conditional(kActionReflect, 0, kBasisX, 1);

  for (std::size_t k_a = 0; k_a < 2; ++k_a) {
    for (std::size_t k_b = 0; k_b < 2; ++k_b) {
      e.kept[k_a * 2 + k_b] = tally.kept_pairs(static_cast<int>(k_a), static_cast<int>(k_b));
    }
  }
  e.balanced = tally.balanced_total();
  e.kept_total = e.kept[0] + e.kept[1] + e.kept[2] + e.kept[3];
  e.joint_available = e.balanced > 0 && e.kept_total > 0;
  return e;
}

ChannelStatistics SimulationEstimate::as_statistics() const {
  if (!complete()) {
    const char* missing = !bias.available      ? "bias"
                          : !qz0.available     ? "qz0"
                          : !qz1.available     ? "qz1"
                          : !p0plus.available  ? "p0plus"
                          : !p1plus.available  ? "p1plus"
                          : !pe1.available     ? "pe1"
                                               : "peminus";
    throw std::runtime_error(std::string("SimulationEstimate: field '") + missing +
                             "' has an empty conditioning cell");
  }
  ChannelStatistics s;
  s.bias = bias.value;
  s.qz0 = qz0.value;
  s.qz1 = qz1.value;
  s.p0plus = p0plus.value;
  s.p1plus = p1plus.value;
  s.pe1 = pe1.value;
  s.peminus = peminus.value;
  return s;
}

JointKeyDistribution SimulationEstimate::empirical_joint() const {
  if (!joint_available) {
    throw std::runtime_error("SimulationEstimate: no kept iterations to estimate q_ij from");
  }
  const double scale = 2.0 / static_cast<double>(balanced);
  return JointKeyDistribution::from_weights(
      scale * static_cast<double>(kept[0]), scale * static_cast<double>(kept[1]),
      scale * static_cast<double>(kept[2]), scale * static_cast<double>(kept[3]));
}

}  // namespace sqkd
