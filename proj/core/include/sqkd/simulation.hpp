#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "sqkd/attack.hpp"

namespace sqkd {

/// How B discards reflected iterations to balance his raw key.
///   Analytic:  keep each reflection with probability 1/2 + b_hat, where
///              b_hat is estimated from this run's own resend outcomes.
///   Empirical: after the run, subsample the reflections down to the number
///              of kept resend-|0> iterations.
enum class BalanceMode { Analytic, Empirical };

struct SimulationConfig {
  AttackSpec attack;
  std::uint64_t iterations = 1;
  std::uint64_t seed = 0;
  BalanceMode balance = BalanceMode::Empirical;
  unsigned shards = 1;             // shard count is part of the result contract
  unsigned max_parallelism = 0;    // thread cap; 0 = hardware concurrency
};

/// Name of the generator behind run(), recorded in outputs so a run can be
/// reproduced bit for bit.
inline constexpr std::string_view kGeneratorName = "mt19937_64";

/// Seed for shard `index` of a run with the given master seed (splitmix64).
std::uint64_t shard_seed(std::uint64_t master_seed, unsigned index);

/// Per-iteration attributes. a_out = 1 is the outcome A accepts on
/// (|1> in the Z basis, |-> in the X basis).
enum : int { kActionReflect = 0, kActionMeasure = 1 };
enum : int { kBasisZ = 0, kBasisX = 1 };

/// What happened to an iteration during sifting.
enum class Disposition : int {
  DiscardedMeasureOne = 0,  // B measured |1> and announced the discard
  DiscardedBalance = 1,     // reflection dropped by B's key balancing
  ARejected = 2,            // survived B, but A measured |0> or |+>
  Kept = 3,                 // contributes a raw key pair (k_A, k_B)
};
inline constexpr int kDispositionCount = 4;

/// Event counters for every (action, B outcome, A basis, A outcome,
/// disposition) combination. Counters from independent shards add exactly.
struct SimulationTally {
  std::uint64_t iterations = 0;
  std::array<std::uint64_t, 2 * 2 * 2 * 2 * kDispositionCount> counts{};

  static constexpr std::size_t index(int action, int b_out, int a_basis, int a_out,
                                     Disposition d) {
    return static_cast<std::size_t>(
        (((action * 2 + b_out) * 2 + a_basis) * 2 + a_out) * kDispositionCount +
        static_cast<int>(d));
  }

  std::uint64_t count(int action, int b_out, int a_basis, int a_out, Disposition d) const {
    return counts[index(action, b_out, a_basis, a_out, d)];
  }

  /// Sum over dispositions.
  std::uint64_t total(int action, int b_out, int a_basis, int a_out) const;

  /// Raw-key pair counter; k_a and k_b in {0, 1}.
  std::uint64_t kept_pairs(int k_a, int k_b) const;

  /// Iterations surviving B's discards (measured-|1> and balancing),
  /// regardless of A's acceptance.
  std::uint64_t balanced_total() const;

  SimulationTally& merge(const SimulationTally& other);
};

/// One shard of the protocol simulation; the building block of run().
SimulationTally run_shard(const AttackSpec& attack, std::uint64_t iterations, std::uint64_t seed,
                          BalanceMode balance);

/// Full run: iterations are split across config.shards (earlier shards take
/// the remainder), each shard draws from shard_seed(seed, i) and balances its
/// own sub-run, and tallies merge in shard order. The result depends only on
/// (seed, iterations, shards, balance); a single shard is the reference.
SimulationTally run(const SimulationConfig& config);

struct FieldEstimate {
  double value = 0.0;
  double std_error = 0.0;      // binomial sqrt(p(1-p)/n)
  std::uint64_t samples = 0;   // size of the conditioning cell
  bool available = false;      // false when the conditioning cell is empty
};

struct SimulationEstimate {
  FieldEstimate bias, qz0, qz1, p0plus, p1plus, pe1, peminus;
  std::array<std::uint64_t, 4> kept{};  // index k_a * 2 + k_b
  std::uint64_t balanced = 0;
  std::uint64_t kept_total = 0;
  bool joint_available = false;

  bool complete() const {
    return bias.available && qz0.available && qz1.available && p0plus.available &&
           p1plus.available && pe1.available && peminus.available;
  }

  /// Throws std::runtime_error when a field is unavailable.
  ChannelStatistics as_statistics() const;

  /// Empirical acceptance weights q_ij = 2 * kept_ij / balanced.
  JointKeyDistribution empirical_joint() const;
};

SimulationEstimate estimate(const SimulationTally& tally);

}  // namespace sqkd
