#include "ginsum/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "ginsum/rates.hpp"
#include "ginsum/region_lp.hpp"
#include "ginsum/regimes.hpp"
#include "parallel.hpp"

namespace ginsum {

namespace sampling {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

constexpr int kMaxRejections = 1000000;

}  // namespace

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t trial) {
  return std::mt19937_64(splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ trial));
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  // 53 random bits -> [0, 1); avoids the implementation-defined
  // std::uniform_real_distribution so streams match across standard libraries.
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

double power(std::mt19937_64& rng) { return 20.0 - uniform(rng, 0.0, 20.0); }

namespace {

TxSplit random_row(std::mt19937_64& rng) {
  std::array<double, 3> e{};
  unsigned support = 7;
  if (uniform(rng, 0.0, 1.0) < 1.0 / 3.0) {
    support = 1u + static_cast<unsigned>(rng() % 7u);
  }
  double total = 0.0;
  for (unsigned k = 0; k < 3; ++k) {
    if (support & (1u << k)) {
      e[k] = -std::log(1.0 - uniform(rng, 0.0, 1.0)) + 1e-300;
      total += e[k];
    }
  }
  return {e[0] / total, e[1] / total, e[2] / total};
}

}  // namespace

PowerSplit split(std::mt19937_64& rng) {
  const TxSplit r1 = random_row(rng);
  const TxSplit r2 = random_row(rng);
  return validate_split(r1.direct, r1.common, r1.cross, r2.direct, r2.common, r2.cross);
}

ChannelParams params_any(std::mt19937_64& rng) {
  const double h1 = uniform(rng, 0.0, 10.0);
  const double h2 = uniform(rng, 0.0, 10.0);
  return validate_params(h1, h2, power(rng), power(rng));
}

namespace {

ChannelParams reject_until(std::mt19937_64& rng, double h1lo, double h1hi,
                           double h2lo, double h2hi,
                           const std::function<bool(const ChannelParams&)>& accept) {
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    const double h1 = uniform(rng, h1lo, h1hi);
    const double h2 = uniform(rng, h2lo, h2hi);
    const ChannelParams p = validate_params(h1, h2, power(rng), power(rng));
    if (accept(p)) return p;
  }
  throw Error(ErrorCode::NumericalInstability, "rejection sampler did not converge");
}

}  // namespace

ChannelParams params_in(std::mt19937_64& rng, Regime regime) {
  auto is = [regime](const ChannelParams& p) { return classify(p) == regime; };
  switch (regime) {
    case Regime::LowInterference:
      return reject_until(rng, 0.0, 1.0, 0.0, 1.0, is);
    case Regime::MixedInterferenceCase1:
      return reject_until(rng, 1.0, 10.0, 0.0, 1.0, is);
    case Regime::MixedInterferenceCase2:
      return reject_until(rng, 0.0, 1.0, 1.0, 10.0, is);
    case Regime::StrongInterference:
    case Regime::VeryStrongInterference:
      return reject_until(rng, 1.0, 10.0, 1.0, 10.0, is);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown regime");
}

ChannelParams params_li_tin(std::mt19937_64& rng) {
  return reject_until(rng, 0.0, 1.0, 0.0, 1.0,
                      [](const ChannelParams& p) { return li_tin_condition(p); });
}

ChannelParams params_vsi_two_message(std::mt19937_64& rng) {
  return reject_until(rng, 1.0, 10.0, 1.0, 10.0, [](const ChannelParams& p) {
    return classify(p) == Regime::VeryStrongInterference && vsi_two_message_condition(p);
  });
}

}  // namespace sampling

namespace {

using Clock = std::chrono::steady_clock;

struct Observation {
  int assertion;
  double violation;
  int instance;  // index into TrialOutcome::instances
};

struct TrialOutcome {
  std::vector<Instance> instances;
  std::vector<Observation> obs;
  std::vector<double> metrics;  // per-check meaning; NaN = not measured

  int add_instance(const ChannelParams& p, std::optional<PowerSplit> s, std::string note) {
    instances.push_back({p, s, std::move(note)});
    return static_cast<int>(instances.size()) - 1;
  }
  void observe(int assertion, double violation, int instance) {
    obs.push_back({assertion, violation, instance});
  }
};

std::int64_t optimizer_count(const VerifyOptions& o) {
  if (o.optimizer_trials >= 0) return o.optimizer_trials;
  return std::min<std::int64_t>(o.trials, 25);
}

std::int64_t subregion_count(const VerifyOptions& o) {
  if (o.subregion_trials >= 0) return o.subregion_trials;
  return std::max<std::int64_t>(1, optimizer_count(o) / 5);
}

OptimizeOptions search_options(const VerifyOptions& o) {
  OptimizeOptions s = o.search;
  s.workers = 1;  // parallelism lives at the trial level
  s.restrict_to.reset();
  return s;
}

OptimizeOptions restricted(OptimizeOptions s, MessageSet set) {
  s.restrict_to = set;
  return s;
}

std::vector<TrialOutcome> run_trials(std::int64_t count, int workers,
                                     const std::function<TrialOutcome(std::int64_t)>& fn) {
  std::vector<TrialOutcome> out(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)));
  parallel_for(resolve_workers(workers), out.size(),
               [&](int, std::size_t i) { out[i] = fn(static_cast<std::int64_t>(i)); });
  return out;
}

// Folds trial outcomes in trial order, so the report does not depend on the
// worker count.
PropertyReport reduce(std::string id, std::int64_t trials,
                      std::vector<AssertionStat> assertions,
                      const std::vector<TrialOutcome>& outcomes) {
  PropertyReport rep;
  rep.property_id = std::move(id);
  rep.trials = trials;
  rep.assertions = std::move(assertions);
  for (const auto& t : outcomes) {
    bool trial_failed = false;
    for (const auto& o : t.obs) {
      auto& a = rep.assertions[static_cast<std::size_t>(o.assertion)];
      ++a.evaluated;
      a.max_violation = std::max(a.max_violation, o.violation);
      const double excess = o.violation - a.tolerance;
      const bool failed = !(excess <= 0.0);  // NaN counts as a failure
      Instance inst = t.instances[static_cast<std::size_t>(o.instance)];
      if (inst.note.empty()) inst.note = a.name;
      else inst.note = a.name + " (" + inst.note + ")";
      if (failed) {
        ++a.failures;
        trial_failed = true;
        if (rep.counterexamples.size() < kMaxCounterexamples) {
          rep.counterexamples.push_back(inst);
        }
      }
      if (!rep.worst_instance || excess > rep.max_violation ||
          (std::isnan(excess) && !std::isnan(rep.max_violation))) {
        rep.max_violation = excess;
        rep.worst_instance = std::move(inst);
      }
    }
    if (trial_failed) ++rep.failures;
  }
  return rep;
}

// Max / mean / count helpers over one metric column.
struct Column {
  double max = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  std::int64_t n = 0;
  void add(double v) {
    if (std::isnan(v)) return;
    max = std::max(max, v);
    sum += v;
    ++n;
  }
  double mean() const { return n > 0 ? sum / static_cast<double>(n) : 0.0; }
  double max_or_zero() const { return n > 0 ? max : 0.0; }
};

Column column(const std::vector<TrialOutcome>& outcomes, std::size_t k) {
  Column c;
  for (const auto& t : outcomes) {
    if (k < t.metrics.size()) c.add(t.metrics[k]);
  }
  return c;
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

PropertyReport check_theorem1(const VerifyOptions& opts) {
  const auto start = Clock::now();
  enum { kPairing, kLpBelow, kComposition, kLpFeasible };
  auto outcomes = run_trials(opts.trials, opts.workers, [&](std::int64_t trial) {
    auto rng = sampling::trial_rng(opts.seed, 1, static_cast<std::uint64_t>(trial));
    const auto p = sampling::params_any(rng);
    const auto s = sampling::split(rng);
    TrialOutcome t;
    const int inst = t.add_instance(p, s, {});
    const auto constraints = region_constraints(p, s);
    const auto bounds = sum_rate_bounds(p, s);
    const auto pairing = pairing_oracle(constraints);
    const auto lp = max_sum_rate_lp(constraints);

    t.observe(kPairing, std::abs(pairing.value - bounds.min_bound), inst);
    t.observe(kLpBelow, lp.value - bounds.min_bound, inst);
    double composition = 0.0;
    const auto& pairs = bound_pairings();
    for (std::size_t k = 0; k < 4; ++k) {
      const double sum =
          constraints[static_cast<std::size_t>(constraint_index(Receiver::Rx1, pairs[k].rx1))].rhs +
          constraints[static_cast<std::size_t>(constraint_index(Receiver::Rx2, pairs[k].rx2))].rhs;
      composition = std::max(composition, std::abs(sum - bounds.t[k]));
    }
    t.observe(kComposition, composition, inst);
    double slack = 0.0;
    for (const auto& c : constraints) {
      double lhs = 0.0;
      for (auto id : kAllMessages)
        if (c.subset.contains(id)) lhs += lp.argmax[id];
      slack = std::max(slack, lhs - c.rhs);
    }
    for (double r : lp.argmax.rate) slack = std::max(slack, -r);
    t.observe(kLpFeasible, slack, inst);
    t.metrics = {bounds.min_bound - lp.value, static_cast<double>(lp.iterations)};
    return t;
  });
  auto rep = reduce("pairing_bound", opts.trials,
                    {{"pairing_equals_min_bound", kFormulaTol},
                     {"lp_not_above_min_bound", kLpTol},
                     {"bounds_match_constraint_pairs", kFormulaTol},
                     {"lp_argmax_feasible", kLpTol}},
                    outcomes);
  const auto gap = column(outcomes, 0);
  const auto iters = column(outcomes, 1);
  std::int64_t positive_gap = 0;
  for (const auto& t : outcomes)
    if (t.metrics[0] > kLpTol) ++positive_gap;
  rep.metrics = {{"lp_gap_max", gap.max_or_zero()},
                 {"lp_gap_mean", gap.mean()},
                 {"lp_gap_above_1e-9", static_cast<double>(positive_gap)},
                 {"lp_iterations_max", iters.max_or_zero()}};
  rep.elapsed = Clock::now() - start;
  return rep;
}

PropertyReport check_theorem2(const VerifyOptions& opts) {
  const auto start = Clock::now();
  enum { kBound1, kBound2, kCanonical1, kCanonical2, kSearch1, kSearch2 };
  const std::int64_t n_opt = optimizer_count(opts);
  const auto search = search_options(opts);
  auto outcomes = run_trials(opts.trials, opts.workers, [&](std::int64_t trial) {
    auto rng = sampling::trial_rng(opts.seed, 2, static_cast<std::uint64_t>(trial));
    TrialOutcome t;
    t.metrics.assign(2, kNaN);
    const auto p1 = sampling::params_in(rng, Regime::MixedInterferenceCase1);
    const auto s1 = sampling::split(rng);
    const auto p2 = sampling::params_in(rng, Regime::MixedInterferenceCase2);
    const auto s2 = sampling::split(rng);
    const double cap_rx2 = mac_sum_capacity(p1, Receiver::Rx2);
    const double cap_rx1 = mac_sum_capacity(p2, Receiver::Rx1);
    const auto b1 = sum_rate_bounds(p1, s1);
    const auto b2 = sum_rate_bounds(p2, s2);
    const int i1 = t.add_instance(p1, s1, "case 1");
    const int i2 = t.add_instance(p2, s2, "case 2");
    t.observe(kBound1, b1.t[0] - cap_rx2, i1);
    t.observe(kBound2, b2.t[1] - cap_rx1, i2);
    // The other bounds are measured, not asserted.
    t.metrics[0] = std::max({b1.t[1], b1.t[2], b1.t[3]}) - cap_rx2;
    t.metrics[1] = std::max({b2.t[0], b2.t[2], b2.t[3]}) - cap_rx1;

    if (trial < n_opt) {
      const PowerSplit canon1{{0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}};
      const PowerSplit canon2{{1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}};
      const int c1 = t.add_instance(p1, canon1, "case 1 canonical split");
      const int c2 = t.add_instance(p2, canon2, "case 2 canonical split");
      t.observe(kCanonical1, std::abs(sum_rate_bounds(p1, canon1).min_bound - cap_rx2), c1);
      t.observe(kCanonical2, std::abs(sum_rate_bounds(p2, canon2).min_bound - cap_rx1), c2);
      const auto r1 = maximize_sum_rate(p1, search);
      const auto r2 = maximize_sum_rate(p2, search);
      t.observe(kSearch1, std::abs(r1.best_value - cap_rx2),
                t.add_instance(p1, r1.best_split, "case 1 optimizer"));
      t.observe(kSearch2, std::abs(r2.best_value - cap_rx1),
                t.add_instance(p2, r2.best_split, "case 2 optimizer"));
    }
    return t;
  });
  auto rep = reduce("mixed_mac_capacity", opts.trials,
                    {{"t1_not_above_mac_rx2", kFormulaTol},
                     {"t2_not_above_mac_rx1", kFormulaTol},
                     {"canonical_split_case1", kFormulaTol},
                     {"canonical_split_case2", kFormulaTol},
                     {"optimizer_reaches_mac_case1", kSearchTol},
                     {"optimizer_reaches_mac_case2", kSearchTol}},
                    outcomes);
  rep.metrics = {{"optimizer_instances", static_cast<double>(std::min(n_opt, opts.trials))},
                 {"case1_other_bounds_max_excess", column(outcomes, 0).max_or_zero()},
                 {"case2_other_bounds_max_excess", column(outcomes, 1).max_or_zero()}};
  rep.elapsed = Clock::now() - start;
  return rep;
}

PropertyReport check_theorem3(const VerifyOptions& opts) {
  const auto start = Clock::now();
  auto outcomes = run_trials(opts.trials, opts.workers, [&](std::int64_t trial) {
    auto rng = sampling::trial_rng(opts.seed, 3, static_cast<std::uint64_t>(trial));
    const auto p = sampling::params_in(rng, Regime::LowInterference);
    const auto s = sampling::split(rng);
    TrialOutcome t;
    const int inst = t.add_instance(p, s, {});
    const auto before = sum_rate_bounds(p, s);
    const auto after = sum_rate_bounds(p, gamma_merge(s));
    for (int k = 0; k < 4; ++k) {
      t.observe(k, before.t[static_cast<std::size_t>(k)] - after.t[static_cast<std::size_t>(k)],
                inst);
    }
    t.metrics = {after.min_bound - before.min_bound};
    return t;
  });
  auto rep = reduce("gamma_merge", opts.trials,
                    {{"t1_not_decreased", kFormulaTol},
                     {"t2_not_decreased", kFormulaTol},
                     {"t3_not_decreased", kFormulaTol},
                     {"t4_not_decreased", kFormulaTol}},
                    outcomes);
  const auto gain = column(outcomes, 0);
  rep.metrics = {{"min_bound_gain_max", gain.max_or_zero()},
                 {"min_bound_gain_mean", gain.mean()}};
  rep.elapsed = Clock::now() - start;
  return rep;
}

PropertyReport check_strong_duality(const VerifyOptions& opts) {
  const auto start = Clock::now();
  enum { kTransformLi, kZeroAlpha, kTwoMessage };
  using enum MessageId;
  const std::int64_t n_opt = optimizer_count(opts);
  const std::int64_t n_sub = subregion_count(opts);
  const auto search = search_options(opts);
  const std::int64_t total = std::max(opts.trials, n_sub);
  auto outcomes = run_trials(total, opts.workers, [&](std::int64_t trial) {
    TrialOutcome t;
    if (trial < opts.trials) {
      auto rng = sampling::trial_rng(opts.seed, 4, static_cast<std::uint64_t>(trial));
      const Regime r = trial % 2 == 0 ? Regime::StrongInterference
                                      : Regime::VeryStrongInterference;
      const auto p = sampling::params_in(rng, r);
      const int inst = t.add_instance(p, std::nullopt, std::string(to_string(r)));
      const auto tp = transform(p).params;
      t.observe(kTransformLi, classify(tp) == Regime::LowInterference ? 0.0 : 1.0, inst);
      if (trial < n_opt) {
        const auto full = maximize_sum_rate(p, search);
        const auto zero_alpha = maximize_sum_rate(p, restricted(search, {V1, W1, V2, W2}));
        t.observe(kZeroAlpha, std::abs(full.best_value - zero_alpha.best_value),
                  t.add_instance(p, full.best_split, std::string(to_string(r))));
      }
    }
    if (trial < n_sub) {
      auto rng = sampling::trial_rng(opts.seed, 5, static_cast<std::uint64_t>(trial));
      const auto p = sampling::params_vsi_two_message(rng);
      const auto full = maximize_sum_rate(p, search);
      const auto two = maximize_sum_rate(p, restricted(search, {W1, W2}));
      t.observe(kTwoMessage, std::abs(full.best_value - two.best_value),
                t.add_instance(p, full.best_split, "VSI two-message sub-region"));
    }
    return t;
  });
  auto rep = reduce("strong_interference_duality", opts.trials,
                    {{"transform_is_low_interference", 0.0},
                     {"zero_alpha_matches_unrestricted", kSearchTol},
                     {"w1_w2_match_unrestricted", kSearchTol}},
                    outcomes);
  rep.metrics = {{"optimizer_instances", static_cast<double>(std::min(n_opt, opts.trials))},
                 {"two_message_instances", static_cast<double>(n_sub)}};
  rep.elapsed = Clock::now() - start;
  return rep;
}

namespace {

struct TableRow {
  const char* name;
  MessageSet messages;
  std::function<ChannelParams(std::mt19937_64&)> sample;
  bool compare_tin;
};

std::vector<TableRow> table_rows() {
  using enum MessageId;
  auto in = [](Regime r) {
    return [r](std::mt19937_64& rng) { return sampling::params_in(rng, r); };
  };
  return {
      {"LI", {U1, V1, U2, V2}, in(Regime::LowInterference), false},
      {"LI_tin", {U1, U2}, sampling::params_li_tin, true},
      {"MI1", {U2, W1}, in(Regime::MixedInterferenceCase1), false},
      {"MI2", {U1, W2}, in(Regime::MixedInterferenceCase2), false},
      {"SI", {W1, V1, W2, V2}, in(Regime::StrongInterference), false},
      {"VSI", {W1, V1, W2, V2}, in(Regime::VeryStrongInterference), false},
      {"VSI_two_message", {W1, W2}, sampling::params_vsi_two_message, false},
  };
}

}  // namespace

PropertyReport check_table1(const VerifyOptions& opts) {
  const auto start = Clock::now();
  const auto rows = table_rows();
  const std::int64_t per_row = optimizer_count(opts);
  const auto search = search_options(opts);
  const int n_rows = static_cast<int>(rows.size());
  // Assertions 0..6: one per row; 7: noise-treating rate.
  const std::int64_t total = per_row * n_rows;
  auto outcomes = run_trials(total, opts.workers, [&](std::int64_t k) {
    const int row = static_cast<int>(k % n_rows);
    const std::int64_t trial = k / n_rows;
    const auto& spec = rows[static_cast<std::size_t>(row)];
    auto rng = sampling::trial_rng(opts.seed, 10 + static_cast<std::uint64_t>(row),
                                   static_cast<std::uint64_t>(trial));
    const auto p = spec.sample(rng);
    const auto full = maximize_sum_rate(p, search);
    const auto part = maximize_sum_rate(p, restricted(search, spec.messages));
    TrialOutcome t;
    t.metrics.assign(static_cast<std::size_t>(n_rows), kNaN);
    const int inst = t.add_instance(p, part.best_split, spec.name);
    const double gap = full.best_value - part.best_value;
    t.observe(row, std::abs(gap), inst);
    t.metrics[static_cast<std::size_t>(row)] = gap;
    if (spec.compare_tin) {
      t.observe(n_rows, std::abs(part.best_value - tin_sum_rate(p)), inst);
    }
    return t;
  });
  std::vector<AssertionStat> assertions;
  for (const auto& r : rows) {
    assertions.push_back({std::string("row_") + r.name + "_matches_unrestricted", kSearchTol});
  }
  assertions.push_back({"row_LI_tin_equals_tin_sum_rate", kSearchTol});
  auto rep = reduce("sufficient_message_sets", per_row, std::move(assertions), outcomes);
  for (int r = 0; r < n_rows; ++r) {
    rep.metrics.emplace_back(std::string("row_") + rows[static_cast<std::size_t>(r)].name +
                                 "_gap_max",
                             column(outcomes, static_cast<std::size_t>(r)).max_or_zero());
  }
  rep.elapsed = Clock::now() - start;
  return rep;
}

PropertyReport check_transform_identity(const VerifyOptions& opts) {
  const auto start = Clock::now();
  enum { kMargin, kDecision };
  auto outcomes = run_trials(opts.trials, opts.workers, [&](std::int64_t trial) {
    auto rng = sampling::trial_rng(opts.seed, 6, static_cast<std::uint64_t>(trial));
    const double h1 = 10.0 - sampling::uniform(rng, 0.0, 10.0);
    const double h2 = 10.0 - sampling::uniform(rng, 0.0, 10.0);
    const auto p = validate_params(h1, h2, sampling::power(rng), sampling::power(rng));
    const auto tp = transform(p).params;
    const double direct = vsi_two_message_margin(p);
    const double via = li_tin_margin(tp);
    TrialOutcome t;
    const int inst = t.add_instance(p, std::nullopt, {});
    t.observe(kMargin, std::abs(direct - via) / std::max(1.0, std::abs(direct)), inst);
    // Decisions may legitimately differ only when the margin sits on 1.
    const bool borderline = std::abs(direct - 1.0) <= kFormulaTol;
    const bool agree = vsi_two_message_condition(p) == li_tin_condition(tp);
    t.observe(kDecision, (agree || borderline) ? 0.0 : 1.0, inst);
    t.metrics = {borderline ? 1.0 : 0.0, direct <= 1.0 ? 1.0 : 0.0};
    return t;
  });
  auto rep = reduce("transform_condition_identity", opts.trials,
                    {{"margins_agree_relative", kFormulaTol}, {"decisions_agree", 0.0}},
                    outcomes);
  rep.metrics = {{"borderline_instances", column(outcomes, 0).sum},
                 {"condition_true_instances", column(outcomes, 1).sum}};
  rep.elapsed = Clock::now() - start;
  return rep;
}

bool is_known_suite(const std::string& suite) {
  return suite == "all" || suite == "t1" || suite == "t2" || suite == "t3" ||
         suite == "duality" || suite == "table1";
}

std::vector<PropertyReport> run_suite(const std::string& suite, const VerifyOptions& opts) {
  if (!is_known_suite(suite)) {
    throw Error(ErrorCode::InvalidArgument, "unknown verification suite '" + suite + "'");
  }
  std::vector<PropertyReport> out;
  const bool all = suite == "all";
  if (all || suite == "t1") out.push_back(check_theorem1(opts));
  if (all || suite == "t2") out.push_back(check_theorem2(opts));
  if (all || suite == "t3") out.push_back(check_theorem3(opts));
  if (all || suite == "duality") out.push_back(check_strong_duality(opts));
  if (all || suite == "table1") out.push_back(check_table1(opts));
  return out;
}

}  // namespace ginsum
