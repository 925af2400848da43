#include <doctest.h>

#include <cmath>

#include "ginsum/rates.hpp"
#include "ginsum/region_lp.hpp"
#include "ginsum/verifier.hpp"

using namespace ginsum;
using enum MessageId;

TEST_CASE("cap") {
  CHECK(cap(0) == 0.0);
  CHECK(cap(3) == 1.0);
  CHECK(cap(5) == doctest::Approx(1.2924812503605781).epsilon(1e-15));
  CHECK_THROWS_AS(cap(-1e-9), Error);
  CHECK(cap(1e300) > 400);
}

TEST_CASE("received powers") {
  const ChannelParams p{0, 0.5, 1, 1};
  const auto priv = validate_split(1, 0, 0, 1, 0, 0);
  const auto rx1 = received_powers(p, priv, Receiver::Rx1);
  CHECK(rx1.at(U1) == 1.0);
  CHECK(rx1.at(V1) == 0.0);
  CHECK(rx1.at(V2) == 0.0);
  CHECK(rx1.at(W2) == 0.0);
  CHECK(rx1.at(U2) == 0.0);  // not decoded at Rx1

  const auto common2 = validate_split(1, 0, 0, 0, 1, 0);
  CHECK(received_powers(p, common2, Receiver::Rx1).at(V2) == 0.25);

  const ChannelParams q{2, 0, 1, 1};
  const auto cross1 = validate_split(0, 0, 1, 1, 0, 0);
  CHECK(received_powers(q, cross1, Receiver::Rx2).at(W1) == 4.0);
}

TEST_CASE("effective noise") {
  const auto priv = validate_split(1, 0, 0, 1, 0, 0);
  CHECK(effective_noise({0, 0.5, 1, 1}, priv).i1 == 1.25);
  const auto common = validate_split(0, 1, 0, 0, 1, 0);
  const auto n = effective_noise({3, 3, 5, 5}, common);
  CHECK(n.i1 == 1.0);
  CHECK(n.i2 == 1.0);
  const auto s = validate_split(0, 0, 1, 0, 1, 0);
  CHECK(effective_noise({0.3, 0.7, 2, 1}, s).i1 == 3.0);
}

TEST_CASE("region constraints: layout and values") {
  const ChannelParams p{0, 0.5, 1, 1};
  const auto priv = validate_split(1, 0, 0, 1, 0, 0);
  const auto cs = region_constraints(p, priv);
  REQUIRE(cs.size() == kConstraintCount);
  for (int i = 0; i < kConstraintCount; ++i) {
    const auto& c = cs[static_cast<std::size_t>(i)];
    CHECK(constraint_index(c.receiver, c.subset) == i);
    CHECK(c.subset.is_subset_of(decode_set(c.receiver)));
    CHECK(c.rhs >= 0.0);
  }
  const int full = constraint_index(Receiver::Rx1, decode_set(Receiver::Rx1));
  CHECK(cs[full].rhs == doctest::Approx(0.5 * std::log2(1.8)).epsilon(1e-14));
  // Zero-power message has a zero singleton constraint.
  CHECK(cs[constraint_index(Receiver::Rx1, MessageSet{V2})].rhs == 0.0);
  CHECK(constraint_index(Receiver::Rx1, MessageSet{U2}) == -1);
  CHECK(constraint_index(Receiver::Rx2, MessageSet{}) == -1);

  const auto common = validate_split(0, 1, 0, 0, 1, 0);
  const auto cc = region_constraints({1, 1, 1, 1}, common);
  CHECK(cc[constraint_index(Receiver::Rx1, MessageSet{V1, V2})].rhs ==
        doctest::Approx(cap(2)).epsilon(1e-14));
}

TEST_CASE("sum-rate bounds") {
  SUBCASE("all common, unit gains") {
    const auto b = sum_rate_bounds({1, 1, 1, 1}, validate_split(0, 1, 0, 0, 1, 0));
    CHECK(b.t[0] == doctest::Approx(cap(2)).epsilon(1e-14));
  }
  SUBCASE("decoupled") {
    const auto b = sum_rate_bounds({0, 0, 3, 7}, validate_split(1, 0, 0, 1, 0, 0));
    for (double t : b.t) CHECK(t == doctest::Approx(cap(3) + cap(7)).epsilon(1e-14));
    CHECK(b.min_bound == *std::min_element(b.t.begin(), b.t.end()));
  }
  SUBCASE("silent transmitter row") {
    PowerSplit s{{1, 0, 0}, {0, 0, 0}};
    const auto b = sum_rate_bounds({0.7, 0.4, 2, 5}, s);
    for (double t : b.t) CHECK(t == doctest::Approx(cap(2)).epsilon(1e-14));
  }
}

TEST_CASE("each bound is the sum of its constraint pair") {
  for (std::uint64_t trial = 0; trial < 500; ++trial) {
    auto rng = sampling::trial_rng(123, 0, trial);
    const auto p = sampling::params_any(rng);
    const auto s = sampling::split(rng);
    const auto cs = region_constraints(p, s);
    const auto b = sum_rate_bounds(p, s);
    for (std::size_t k = 0; k < 4; ++k) {
      const auto& pair = bound_pairings()[k];
      const double v = cs[constraint_index(Receiver::Rx1, pair.rx1)].rhs +
                       cs[constraint_index(Receiver::Rx2, pair.rx2)].rhs;
      CHECK(std::abs(v - b.t[k]) <= 1e-12);
    }
  }
}

TEST_CASE("region constraints are monotone in the subset") {
  // Adding a message to a decoded subset never lowers the rhs.
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    auto rng = sampling::trial_rng(321, 0, trial);
    const auto p = sampling::params_any(rng);
    const auto cs = region_constraints(p, sampling::split(rng));
    for (const auto& a : cs) {
      for (const auto& b : cs) {
        if (a.receiver == b.receiver && a.subset.is_subset_of(b.subset)) {
          CHECK(a.rhs <= b.rhs + 1e-15);
        }
      }
    }
  }
}

TEST_CASE("MAC and noise-treating rates") {
  CHECK(mac_sum_capacity({2, 0, 1, 1}, Receiver::Rx2) == doctest::Approx(cap(5)));
  CHECK(mac_sum_capacity({0.3, 0, 1, 1}, Receiver::Rx1) == cap(1));
  CHECK(mac_sum_capacity({1, 0.2, 1, 1}, Receiver::Rx2) == doctest::Approx(cap(2)));
  CHECK(tin_sum_rate({0, 0, 1, 1}) == 1.0);
  CHECK(tin_sum_rate({0.1, 0.1, 1, 1}) == doctest::Approx(2 * cap(1 / 1.01)).epsilon(1e-14));
  CHECK(tin_sum_rate({0.1, 0.1, 1, 1}) == doctest::Approx(0.99285).epsilon(1e-5));
  CHECK(tin_sum_rate({1, 1, 1, 1}) == doctest::Approx(2 * cap(0.5)));
}
