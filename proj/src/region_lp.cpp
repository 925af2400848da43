#include "ginsum/region_lp.hpp"

#include <cmath>
#include <limits>

namespace ginsum {

LinearProgram LinearProgram::sum_rate(std::span<const RateConstraint> constraints) {
  LinearProgram lp;
  lp.objective.fill(1.0);
  lp.rows.reserve(constraints.size());
  for (const auto& c : constraints) {
    Row row;
    for (auto id : kAllMessages) {
      row.coeff[static_cast<int>(id)] = c.subset.contains(id) ? 1.0 : 0.0;
    }
    row.rhs = c.rhs;
    lp.rows.push_back(row);
  }
  return lp;
}

DenseLpSolution solve_dense(const DenseLp& lp, const SimplexOptions& opts) {
  const int n = static_cast<int>(lp.objective.size());
  const int m = static_cast<int>(lp.rows.size());
  const int cols = n + m + 1;  // structural, slack, rhs
  // Row m is the objective row holding reduced costs -c; minimizing it.
  std::vector<double> tab(static_cast<std::size_t>((m + 1) * cols), 0.0);
  auto at = [&](int r, int c) -> double& {
    return tab[static_cast<std::size_t>(r * cols + c)];
  };
  std::vector<int> basis(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const auto& row = lp.rows[static_cast<std::size_t>(i)];
    if (!(row.rhs >= 0.0) || !std::isfinite(row.rhs)) {
      throw Error(ErrorCode::InvalidArgument,
                  "LP requires finite nonnegative right-hand sides");
    }
    if (static_cast<int>(row.coeff.size()) != n) {
      throw Error(ErrorCode::InvalidArgument, "LP row width does not match the objective");
    }
    for (int j = 0; j < n; ++j) at(i, j) = row.coeff[static_cast<std::size_t>(j)];
    at(i, n + i) = 1.0;
    at(i, cols - 1) = row.rhs;
    basis[static_cast<std::size_t>(i)] = n + i;
  }
  for (int j = 0; j < n; ++j) at(m, j) = -lp.objective[static_cast<std::size_t>(j)];

  DenseLpSolution sol;
  for (;;) {
    // Bland: lowest-index column with negative reduced cost.
    int enter = -1;
    for (int j = 0; j < cols - 1; ++j) {
      if (at(m, j) < -opts.pivot_tol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    if (sol.iterations >= opts.max_iterations) {
      throw Error(ErrorCode::NumericalInstability, "simplex exceeded the iteration cap");
    }
    // Ratio test; ties broken by the lowest basic variable index.
    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      const double a = at(i, enter);
      if (a <= opts.pivot_tol) continue;
      const double ratio = at(i, cols - 1) / a;
      if (ratio < best_ratio ||
          (ratio == best_ratio &&
           basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
        best_ratio = ratio;
        leave = i;
      }
    }
    if (leave < 0) {
      throw Error(ErrorCode::NumericalInstability, "LP is unbounded");
    }
    const double piv = at(leave, enter);
    for (int c = 0; c < cols; ++c) at(leave, c) /= piv;
    at(leave, enter) = 1.0;
    for (int r = 0; r <= m; ++r) {
      if (r == leave) continue;
      const double f = at(r, enter);
      if (f == 0.0) continue;
      for (int c = 0; c < cols; ++c) at(r, c) -= f * at(leave, c);
      at(r, enter) = 0.0;
    }
    // Guard the basic solution against drift below zero.
    for (int r = 0; r < m; ++r) {
      if (at(r, cols - 1) < 0.0) at(r, cols - 1) = 0.0;
    }
    basis[static_cast<std::size_t>(leave)] = enter;
    ++sol.iterations;
  }

  sol.x.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < m; ++i) {
    const int b = basis[static_cast<std::size_t>(i)];
    if (b < n) sol.x[static_cast<std::size_t>(b)] = at(i, cols - 1);
  }
  sol.value = 0.0;
  for (int j = 0; j < n; ++j) {
    sol.value += lp.objective[static_cast<std::size_t>(j)] * sol.x[static_cast<std::size_t>(j)];
  }
  return sol;
}

LpSolution solve(const LinearProgram& lp, const SimplexOptions& opts) {
  DenseLp dense;
  dense.objective.assign(lp.objective.begin(), lp.objective.end());
  dense.rows.reserve(lp.rows.size());
  for (const auto& r : lp.rows) {
    dense.rows.push_back({std::vector<double>(r.coeff.begin(), r.coeff.end()), r.rhs});
  }
  const auto d = solve_dense(dense, opts);
  LpSolution sol;
  sol.value = d.value;
  sol.iterations = d.iterations;
  for (std::size_t j = 0; j < 6; ++j) sol.argmax.rate[j] = d.x[j];
  return sol;
}

LpSolution max_sum_rate_lp(std::span<const RateConstraint> constraints,
                           const SimplexOptions& opts) {
  return solve(LinearProgram::sum_rate(constraints), opts);
}

std::vector<std::pair<MessageSet, MessageSet>> covering_pairs() {
  std::vector<std::pair<MessageSet, MessageSet>> out;
  const auto& o1 = decode_order(Receiver::Rx1);
  const auto& o2 = decode_order(Receiver::Rx2);
  for (unsigned m1 = 1; m1 <= 15; ++m1) {
    MessageSet s1;
    for (unsigned k = 0; k < 4; ++k)
      if (m1 & (1u << k)) s1.insert(o1[k]);
    for (unsigned m2 = 1; m2 <= 15; ++m2) {
      MessageSet s2;
      for (unsigned k = 0; k < 4; ++k)
        if (m2 & (1u << k)) s2.insert(o2[k]);
      if ((s1 | s2) == MessageSet::all()) out.emplace_back(s1, s2);
    }
  }
  return out;
}

PairingResult pairing_oracle(std::span<const RateConstraint> constraints) {
  // Look up rhs by (receiver, subset) so the result does not depend on the
  // order of the input list.
  std::array<double, 64> rhs1{}, rhs2{};
  std::array<bool, 64> seen1{}, seen2{};
  for (const auto& c : constraints) {
    auto& table = c.receiver == Receiver::Rx1 ? rhs1 : rhs2;
    auto& seen = c.receiver == Receiver::Rx1 ? seen1 : seen2;
    table[c.subset.mask()] = c.rhs;
    seen[c.subset.mask()] = true;
  }
  PairingResult res;
  res.value = std::numeric_limits<double>::infinity();
  for (const auto& [s1, s2] : covering_pairs()) {
    if (!seen1[s1.mask()] || !seen2[s2.mask()]) {
      throw Error(ErrorCode::InvalidArgument,
                  "constraint list is missing a covering subset");
    }
    ++res.covers_examined;
    const double v = rhs1[s1.mask()] + rhs2[s2.mask()];
    if (v < res.value) {
      res.value = v;
      res.best = {s1, s2, v};
    }
  }
  return res;
}

}  // namespace ginsum
