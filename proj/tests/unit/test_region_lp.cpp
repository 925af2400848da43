#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "ginsum/rates.hpp"
#include "ginsum/region_lp.hpp"
#include "ginsum/verifier.hpp"

using namespace ginsum;
using enum MessageId;

TEST_CASE("LP on the decoupled instance") {
  const auto cs = region_constraints({0, 0, 1, 1}, validate_split(1, 0, 0, 1, 0, 0));
  const auto sol = max_sum_rate_lp(cs);
  CHECK(sol.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sol.argmax[U1] == doctest::Approx(0.5));
  CHECK(sol.argmax[U2] == doctest::Approx(0.5));
  CHECK(sol.argmax[V1] == 0.0);
  CHECK(sol.argmax[W2] == 0.0);
}

TEST_CASE("LP with a single powered message") {
  // Tx2 silent: only U1 carries power.
  const ChannelParams p{0.6, 0.9, 4, 2};
  PowerSplit s{{1, 0, 0}, {0, 0, 0}};
  const auto sol = max_sum_rate_lp(region_constraints(p, s));
  CHECK(sol.value == doctest::Approx(cap(4)).epsilon(1e-14));
}

TEST_CASE("LP value is feasible and below the pairing bound") {
  for (std::uint64_t trial = 0; trial < 1000; ++trial) {
    auto rng = sampling::trial_rng(77, 0, trial);
    const auto p = sampling::params_any(rng);
    const auto s = sampling::split(rng);
    const auto cs = region_constraints(p, s);
    const auto lp = max_sum_rate_lp(cs);
    const auto pair = pairing_oracle(cs);
    CHECK(lp.value <= pair.value + 1e-9);
    for (const auto& c : cs) {
      double lhs = 0.0;
      for (auto id : kAllMessages)
        if (c.subset.contains(id)) lhs += lp.argmax[id];
      CHECK(lhs <= c.rhs + 1e-9);
    }
    for (double r : lp.argmax.rate) CHECK(r >= 0.0);
  }
}

TEST_CASE("pairing oracle equals the closed-form minimum") {
  for (std::uint64_t trial = 0; trial < 2000; ++trial) {
    auto rng = sampling::trial_rng(78, 0, trial);
    const auto p = sampling::params_any(rng);
    const auto s = sampling::split(rng);
    const auto pair = pairing_oracle(region_constraints(p, s));
    CHECK(std::abs(pair.value - sum_rate_bounds(p, s).min_bound) <= 1e-12);
  }
}

TEST_CASE("pairing oracle ignores input order and enumerates every cover") {
  auto rng = sampling::trial_rng(5, 0, 0);
  const auto p = sampling::params_any(rng);
  const auto s = validate_split(0, 1, 0, 0, 1, 0);  // degenerate all-common
  auto cs = region_constraints(p, s);
  const auto a = pairing_oracle(cs);
  std::mt19937_64 shuffle_rng(9);
  std::shuffle(cs.begin(), cs.end(), shuffle_rng);
  const auto b = pairing_oracle(cs);
  CHECK(a.value == b.value);
  CHECK(a.covers_examined == static_cast<int>(covering_pairs().size()));
  for (const auto& [s1, s2] : covering_pairs()) CHECK((s1 | s2) == MessageSet::all());
  CHECK_THROWS_AS(pairing_oracle(std::span<const RateConstraint>(cs.data(), 10)), Error);
}

TEST_CASE("generic simplex") {
  // max x + y s.t. x + 2y <= 4, 3x + y <= 6  -> (1.6, 1.2), value 2.8
  DenseLp lp;
  lp.objective = {1, 1};
  lp.rows.push_back({{1, 2}, 4});
  lp.rows.push_back({{3, 1}, 6});
  const auto sol = solve_dense(lp);
  CHECK(sol.value == doctest::Approx(2.8));
  CHECK(sol.x[0] == doctest::Approx(1.6));
  CHECK(sol.x[1] == doctest::Approx(1.2));

  DenseLp unbounded;
  unbounded.objective = {1, 0};
  unbounded.rows.push_back({{0, 1}, 1});
  CHECK_THROWS_AS(solve_dense(unbounded), Error);

  DenseLp negative;
  negative.objective = {1};
  negative.rows.push_back({{1}, -1});
  CHECK_THROWS_AS(solve_dense(negative), Error);
}
