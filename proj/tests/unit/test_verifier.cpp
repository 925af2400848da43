#include <doctest.h>

#include "ginsum/regimes.hpp"
#include "ginsum/verifier.hpp"

using namespace ginsum;

namespace {

VerifyOptions small(std::int64_t trials, std::uint64_t seed) {
  VerifyOptions o;
  o.trials = trials;
  o.seed = seed;
  o.optimizer_trials = 4;
  o.subregion_trials = 2;
  return o;
}

void expect_same(const PropertyReport& a, const PropertyReport& b) {
  CHECK(a.property_id == b.property_id);
  CHECK(a.failures == b.failures);
  CHECK(a.max_violation == b.max_violation);
  REQUIRE(a.worst_instance.has_value() == b.worst_instance.has_value());
  if (a.worst_instance) CHECK(a.worst_instance->params == b.worst_instance->params);
  REQUIRE(a.assertions.size() == b.assertions.size());
  for (std::size_t i = 0; i < a.assertions.size(); ++i) {
    CHECK(a.assertions[i].max_violation == b.assertions[i].max_violation);
    CHECK(a.assertions[i].evaluated == b.assertions[i].evaluated);
  }
  CHECK(a.metrics == b.metrics);
}

}  // namespace

TEST_CASE("property checks pass on seeded runs") {
  CHECK(check_theorem1(small(1000, 42)).passed());
  CHECK(check_theorem2(small(1000, 42)).passed());
  CHECK(check_theorem3(small(5000, 42)).passed());
  CHECK(check_strong_duality(small(200, 42)).passed());
  CHECK(check_table1(small(4, 42)).passed());
  CHECK(check_transform_identity(small(2000, 42)).passed());
}

TEST_CASE("report bookkeeping") {
  const auto r = check_theorem1(small(300, 1));
  CHECK(r.trials == 300);
  CHECK(r.failures == 0);
  CHECK(r.counterexamples.empty());
  REQUIRE(r.worst_instance);
  CHECK(r.worst_instance->split.has_value());
  CHECK(r.max_violation <= 0.0);
  for (const auto& a : r.assertions) {
    CHECK(a.evaluated == 300);
    CHECK(a.failures == 0);
  }
}

TEST_CASE("reports are reproducible and independent of the worker count") {
  auto a = small(400, 9);
  auto b = a;
  b.workers = 3;
  expect_same(check_theorem1(a), check_theorem1(b));
  expect_same(check_theorem2(a), check_theorem2(b));
  expect_same(check_strong_duality(a), check_strong_duality(b));
  expect_same(check_theorem3(a), check_theorem3(a));
}

TEST_CASE("different seeds draw different instances") {
  const auto a = check_theorem1(small(50, 1));
  const auto b = check_theorem1(small(50, 2));
  REQUIRE(a.worst_instance);
  REQUIRE(b.worst_instance);
  CHECK_FALSE(a.worst_instance->params == b.worst_instance->params);
}

TEST_CASE("suites") {
  CHECK(is_known_suite("all"));
  CHECK(is_known_suite("duality"));
  CHECK_FALSE(is_known_suite("bogus"));
  CHECK_THROWS_AS(run_suite("bogus", small(1, 1)), Error);
  const auto all = run_suite("all", small(20, 1));
  CHECK(all.size() == 5);
  CHECK(run_suite("t3", small(20, 1)).size() == 1);
}

TEST_CASE("sampling stays inside the documented boxes") {
  for (std::uint64_t t = 0; t < 2000; ++t) {
    auto rng = sampling::trial_rng(11, 0, t);
    const auto p = sampling::params_any(rng);
    CHECK(p.h1 >= 0.0);
    CHECK(p.h1 <= 10.0);
    CHECK(p.p1 > 0.0);
    CHECK(p.p1 <= 20.0);
    const auto s = sampling::split(rng);
    CHECK(std::abs(s.tx1.total() - 1.0) <= 1e-12);
    CHECK(std::abs(s.tx2.total() - 1.0) <= 1e-12);
    for (double v : s.as_array()) CHECK(v >= 0.0);
  }
  for (auto regime : {Regime::LowInterference, Regime::MixedInterferenceCase1,
                      Regime::MixedInterferenceCase2, Regime::StrongInterference,
                      Regime::VeryStrongInterference}) {
    for (std::uint64_t t = 0; t < 200; ++t) {
      auto rng = sampling::trial_rng(12, 0, t);
      CHECK(classify(sampling::params_in(rng, regime)) == regime);
    }
  }
  for (std::uint64_t t = 0; t < 100; ++t) {
    auto rng = sampling::trial_rng(13, 0, t);
    CHECK(li_tin_condition(sampling::params_li_tin(rng)));
    const auto v = sampling::params_vsi_two_message(rng);
    CHECK(classify(v) == Regime::VeryStrongInterference);
    CHECK(vsi_two_message_condition(v));
  }
}

TEST_CASE("trial generators are stable") {
  auto a = sampling::trial_rng(1, 2, 3);
  auto b = sampling::trial_rng(1, 2, 3);
  auto c = sampling::trial_rng(1, 2, 4);
  const double x = sampling::uniform(a, 0, 1);
  CHECK(x == sampling::uniform(b, 0, 1));
  CHECK(x != sampling::uniform(c, 0, 1));
  CHECK(x >= 0.0);
  CHECK(x < 1.0);
}
