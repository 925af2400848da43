#pragma once

// Seeded randomized checks of the sum-rate bounds, the mixed/low interference
// statements, the strong-interference transform and the sufficient message
// sets. Failures are recorded in the report, never thrown.

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ginsum/model.hpp"
#include "ginsum/optimizer.hpp"

namespace ginsum {

struct Instance {
  ChannelParams params;
  std::optional<PowerSplit> split;
  std::string note;  // which assertion / sub-case produced the value
};

/// One named assertion inside a property check. A trial fails it when its
/// raw violation exceeds `tolerance`.
struct AssertionStat {
  std::string name;
  double tolerance = 0.0;
  std::int64_t evaluated = 0;
  std::int64_t failures = 0;
  double max_violation = -std::numeric_limits<double>::infinity();
};

struct PropertyReport {
  std::string property_id;
  std::int64_t trials = 0;
  std::int64_t failures = 0;
  /// Largest (raw violation - tolerance) over all assertions and trials;
  /// negative when every assertion held with slack.
  double max_violation = -std::numeric_limits<double>::infinity();
  /// Instance attaining max_violation (present whenever anything was checked).
  std::optional<Instance> worst_instance;
  /// Up to kMaxCounterexamples failing instances, in trial order.
  std::vector<Instance> counterexamples;
  std::vector<AssertionStat> assertions;
  /// Informational measurements (never asserted), in a fixed order.
  std::vector<std::pair<std::string, double>> metrics;
  std::chrono::duration<double> elapsed{0.0};

  bool passed() const { return failures == 0; }
};

inline constexpr std::size_t kMaxCounterexamples = 10;

struct VerifyOptions {
  std::int64_t trials = 1000;
  std::uint64_t seed = 1;
  int workers = 1;  // 0 = hardware concurrency
  /// Instances for optimizer-mediated assertions; -1 = min(trials, 25).
  std::int64_t optimizer_trials = -1;
  /// Very-strong two-message instances in the duality check; -1 =
  /// max(1, optimizer instances / 5).
  std::int64_t subregion_trials = -1;
  /// Search settings used by optimizer-mediated assertions.
  OptimizeOptions search;
};

inline constexpr double kFormulaTol = 1e-12;
inline constexpr double kLpTol = 1e-9;
inline constexpr double kSearchTol = 1e-4;

/// Pairing oracle equals min{T1..T4}; LP maximum does not exceed it.
PropertyReport check_theorem1(const VerifyOptions& opts);
/// Mixed interference: T1 (resp. T2) never exceeds the MAC sum capacity and
/// the optimizer attains it.
PropertyReport check_theorem2(const VerifyOptions& opts);
/// Low interference: folding gamma into beta never lowers any T_i.
PropertyReport check_theorem3(const VerifyOptions& opts);
/// Strong / very strong interference via the low-interference transform.
PropertyReport check_strong_duality(const VerifyOptions& opts);
/// Restricting to each regime's message set loses nothing.
PropertyReport check_table1(const VerifyOptions& opts);
/// The very-strong two-message condition equals the low-interference
/// noise-treating condition of the transformed network.
PropertyReport check_transform_identity(const VerifyOptions& opts);

/// Suite names accepted by run_suite: t1, t2, t3, duality, table1, all.
bool is_known_suite(const std::string& suite);
std::vector<PropertyReport> run_suite(const std::string& suite,
                                      const VerifyOptions& opts);

// Sampling helpers, exposed for tests.
namespace sampling {

/// Deterministic per-trial generator derived from (seed, trial).
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t trial);
double uniform(std::mt19937_64& rng, double lo, double hi);
/// Power uniform on (0, 20].
double power(std::mt19937_64& rng);
/// Uniform split on each transmitter's simplex; a third of the rows are
/// drawn on a random face instead.
PowerSplit split(std::mt19937_64& rng);
/// Rejection sample within the regime's box (gains in [0, 10]).
ChannelParams params_in(std::mt19937_64& rng, Regime regime);
/// As params_in, additionally requiring the LI noise-treating condition or the
/// VSI two-message condition.
ChannelParams params_li_tin(std::mt19937_64& rng);
ChannelParams params_vsi_two_message(std::mt19937_64& rng);
/// Any regime: gains in [0, 10], powers in (0, 20].
ChannelParams params_any(std::mt19937_64& rng);

}  // namespace sampling

}  // namespace ginsum
