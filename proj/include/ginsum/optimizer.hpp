#pragma once

// Maximizes the achievable sum rate min{T1..T4} over both transmitters'
// power-split simplices.

#include <cstdint>
#include <optional>

#include "ginsum/model.hpp"

namespace ginsum {

inline constexpr double kActivePowerEps = 1e-6;

struct OptimizeOptions {
  /// Messages allowed to carry power; nullopt means all six.
  std::optional<MessageSet> restrict_to;
  double grid_step = 0.05;
  int refine_iters = 200;
  /// Worker threads for the grid and face refinements; 0 = hardware concurrency.
  int workers = 1;
};

struct OptimizeResult {
  PowerSplit best_split;
  double best_value = 0.0;
  MessageSet active_messages;
  std::int64_t evaluations = 0;
};

/// Coarse grid over each transmitter's simplex, then pattern refinement run
/// separately inside every face (support pattern) of the product of simplices
/// that the restriction allows. Because the faces of a restriction are a
/// subset of the unrestricted faces, a restricted optimum never exceeds the
/// unrestricted one. Results are independent of `workers`.
///
/// A transmitter with no allowed message is kept silent (all-zero row).
/// Throws EmptyRestriction if no message is allowed at all, InvalidArgument
/// for a grid step outside (0, 1] or a negative iteration count.
OptimizeResult maximize_sum_rate(const ChannelParams& params,
                                 const OptimizeOptions& opts = {});

MessageSet active_messages(const PowerSplit& split, double eps = kActivePowerEps);

/// Folds each cross-private fraction into the common one (gamma_i -> beta_i).
PowerSplit gamma_merge(const PowerSplit& split);

/// Folds each direct-private fraction into the common one (alpha_i -> beta_i).
PowerSplit alpha_merge(const PowerSplit& split);

}  // namespace ginsum
