#include "ginsum/sweep.hpp"

#include <cmath>

#include "ginsum/regimes.hpp"

namespace ginsum {

double SweepRange::at(int k) const {
  if (k == steps - 1) return max;
  return min + (max - min) * static_cast<double>(k) / static_cast<double>(steps - 1);
}

void validate_sweep(const SweepSpec& spec) {
  for (const auto* r : {&spec.h1, &spec.h2}) {
    if (r->steps < 2) throw Error(ErrorCode::InvalidArgument, "sweep needs steps >= 2");
    if (!(r->min < r->max)) {
      throw Error(ErrorCode::InvalidArgument, "sweep range needs min < max");
    }
  }
  // Endpoints cover every sampled point.
  validate_params(spec.h1.min, spec.h2.min, spec.p1, spec.p2);
  validate_params(spec.h1.max, spec.h2.max, spec.p1, spec.p2);
}

std::vector<SweepPoint> run_sweep(const SweepSpec& spec) {
  validate_sweep(spec);
  std::vector<SweepPoint> out;
  out.reserve(static_cast<std::size_t>(spec.h1.steps) *
              static_cast<std::size_t>(spec.h2.steps));
  for (int i = 0; i < spec.h1.steps; ++i) {
    for (int j = 0; j < spec.h2.steps; ++j) {
      const auto p = validate_params(spec.h1.at(i), spec.h2.at(j), spec.p1, spec.p2);
      out.push_back({regime_report(p), maximize_sum_rate(p, spec.search)});
    }
  }
  return out;
}

}  // namespace ginsum
