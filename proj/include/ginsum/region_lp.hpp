#pragma once

// Independent routes to the maximum sum rate over the 30-constraint polytope:
// a dense simplex solver and an exhaustive constraint-pairing enumerator.

#include <array>
#include <span>
#include <vector>

#include "ginsum/model.hpp"

namespace ginsum {

/// max c.x  s.t.  A x <= b, x >= 0, with b >= 0 (the origin is feasible).
struct LinearProgram {
  std::array<double, 6> objective{};
  struct Row {
    std::array<double, 6> coeff{};
    double rhs = 0.0;
  };
  std::vector<Row> rows;

  static LinearProgram sum_rate(std::span<const RateConstraint> constraints);
};

struct LpSolution {
  double value = 0.0;
  RateTuple argmax;
  int iterations = 0;
};

struct SimplexOptions {
  double pivot_tol = 1e-11;
  int max_iterations = 10000;
};

/// Same form with any number of variables.
struct DenseLp {
  std::vector<double> objective;
  struct Row {
    std::vector<double> coeff;
    double rhs = 0.0;
  };
  std::vector<Row> rows;
};

struct DenseLpSolution {
  double value = 0.0;
  std::vector<double> x;
  int iterations = 0;
};

/// Dense single-phase tableau simplex with Bland's rule. Throws
/// NumericalInstability on iteration overflow or an unbounded direction.
DenseLpSolution solve_dense(const DenseLp& lp, const SimplexOptions& opts = {});
LpSolution solve(const LinearProgram& lp, const SimplexOptions& opts = {});

LpSolution max_sum_rate_lp(std::span<const RateConstraint> constraints,
                           const SimplexOptions& opts = {});

struct PairingBound {
  MessageSet rx1_subset;
  MessageSet rx2_subset;
  double value = 0.0;
};

/// Minimum of rhs(Rx1, S1) + rhs(Rx2, S2) over every pair whose subsets
/// together cover all six messages.
struct PairingResult {
  double value = 0.0;
  PairingBound best;
  int covers_examined = 0;
};

PairingResult pairing_oracle(std::span<const RateConstraint> constraints);

/// All covering pairs (rx1 subset, rx2 subset) that pairing_oracle enumerates.
std::vector<std::pair<MessageSet, MessageSet>> covering_pairs();

}  // namespace ginsum
