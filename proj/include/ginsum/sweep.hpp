#pragma once

// Regime / sum-rate map over a grid of cross gains.

#include <string>
#include <vector>

#include "ginsum/model.hpp"
#include "ginsum/optimizer.hpp"

namespace ginsum {

struct SweepRange {
  double min = 0.0;
  double max = 1.0;
  int steps = 2;

  double at(int k) const;
};

struct SweepSpec {
  SweepRange h1;
  SweepRange h2;
  double p1 = 1.0;
  double p2 = 1.0;
  OptimizeOptions search;
};

/// Throws InvalidArgument for steps < 2, min >= max, or points that are not
/// valid channel parameters.
void validate_sweep(const SweepSpec& spec);

struct SweepPoint {
  RegimeReport report;
  OptimizeResult optimum;
};

/// Rows in h1-major order.
std::vector<SweepPoint> run_sweep(const SweepSpec& spec);

}  // namespace ginsum
