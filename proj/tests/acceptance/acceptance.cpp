// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "ginsum/optimizer.hpp"
#include "ginsum/rates.hpp"
#include "ginsum/region_lp.hpp"
#include "ginsum/verifier.hpp"

#ifndef GINSUM_CLI_PATH
#error "GINSUM_CLI_PATH must name the CLI executable"
#endif

using namespace ginsum;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const AssertionStat* find(const PropertyReport& r, const std::string& name) {
  for (const auto& a : r.assertions)
    if (a.name == name) return &a;
  return nullptr;
}

// Passes when the assertion ran at least `min_count` times without failures.
bool held(const PropertyReport& r, const std::string& name, std::int64_t min_count,
          std::string& detail) {
  const auto* a = find(r, name);
  if (a == nullptr) {
    detail += " [" + name + " missing]";
    return false;
  }
  detail += fmt(" %s=%lld/%lld", name.c_str(), static_cast<long long>(a->evaluated - a->failures),
                static_cast<long long>(a->evaluated));
  return a->evaluated >= min_count && a->failures == 0;
}

VerifyOptions opts(std::int64_t trials, std::uint64_t seed, std::int64_t optimizer_trials = -1,
                   std::int64_t subregion_trials = -1) {
  VerifyOptions o;
  o.trials = trials;
  o.seed = seed;
  o.workers = 0;
  o.optimizer_trials = optimizer_trials;
  o.subregion_trials = subregion_trials;
  return o;
}

Outcome criterion1() {
  const auto r = check_theorem1(opts(10000, 2024));
  Outcome o;
  o.pass = held(r, "pairing_equals_min_bound", 10000, o.detail) &
           held(r, "lp_not_above_min_bound", 10000, o.detail);
  return o;
}

Outcome criterion2() {
  const auto r = check_theorem2(opts(10000, 2024, 200));
  Outcome o;
  o.pass = held(r, "t1_not_above_mac_rx2", 10000, o.detail) &
           held(r, "t2_not_above_mac_rx1", 10000, o.detail) &
           held(r, "optimizer_reaches_mac_case1", 100, o.detail) &
           held(r, "optimizer_reaches_mac_case2", 100, o.detail) &
           held(r, "canonical_split_case1", 100, o.detail) &
           held(r, "canonical_split_case2", 100, o.detail);
  return o;
}

Outcome criterion3() {
  const auto r = check_theorem3(opts(100000, 2024));
  Outcome o;
  o.pass = true;
  for (const char* name :
       {"t1_not_decreased", "t2_not_decreased", "t3_not_decreased", "t4_not_decreased"}) {
    o.pass &= held(r, name, 100000, o.detail);
  }
  return o;
}

Outcome criterion4() {
  const auto r = check_strong_duality(opts(1000, 2024, 300, 60));
  Outcome o;
  o.pass = held(r, "transform_is_low_interference", 100, o.detail) &
           held(r, "zero_alpha_matches_unrestricted", 100, o.detail) &
           held(r, "w1_w2_match_unrestricted", 20, o.detail);
  return o;
}

Outcome criterion5() {
  const auto r = check_table1(opts(100, 2024, 100));
  Outcome o;
  o.pass = true;
  for (const char* row : {"LI", "LI_tin", "MI1", "MI2", "SI", "VSI", "VSI_two_message"}) {
    o.pass &= held(r, std::string("row_") + row + "_matches_unrestricted", 50, o.detail);
  }
  o.pass &= held(r, "row_LI_tin_equals_tin_sum_rate", 50, o.detail);
  return o;
}

Outcome criterion6() {
  const auto r = check_transform_identity(opts(10000, 2024));
  Outcome o;
  o.pass = held(r, "margins_agree_relative", 10000, o.detail) &
           held(r, "decisions_agree", 10000, o.detail);
  return o;
}

struct Captured {
  int code = -1;
  std::string out;
};

Captured capture(const std::string& args) {
  const std::string cmd = std::string("\"") + GINSUM_CLI_PATH + "\" " + args;
  Captured c;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return c;
  char buf[1 << 14];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) c.out.append(buf, n);
  const int status = pclose(pipe);
  c.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return c;
}

Outcome criterion7() {
  Outcome o;
  const std::string verify = "verify --suite all --trials 1000 --seed 1";
  const auto v1 = capture(verify + " --workers 1");
  const auto v2 = capture(verify + " --workers 0");
  const std::string sweep =
      "sweep --h1-min 0.25 --h1-max 3 --h1-steps 6 --h2-min 0.25 --h2-max 3 --h2-steps 6 "
      "--p1 2 --p2 5";
  const auto s1 = capture(sweep);
  const auto s2 = capture(sweep);
  const bool verify_same = v1.code == 0 && v2.code == 0 && !v1.out.empty() && v1.out == v2.out;
  const bool sweep_same = s1.code == 0 && s2.code == 0 && !s1.out.empty() && s1.out == s2.out;
  o.detail = fmt(" verify: exit %d/%d, %zu bytes, identical=%s; sweep: exit %d/%d, %zu bytes, "
                 "identical=%s",
                 v1.code, v2.code, v1.out.size(), verify_same ? "yes" : "no", s1.code, s2.code,
                 s1.out.size(), sweep_same ? "yes" : "no");
  o.pass = verify_same && sweep_same;
  return o;
}

Outcome criterion8() {
  Outcome o;
  const double c3 = cap(3);
  const double c5 = cap(5);
  const ChannelParams p{0, 0, 1, 1};
  const auto s = validate_split(1, 0, 0, 1, 0, 0);
  const auto cs = region_constraints(p, s);
  const double lp = max_sum_rate_lp(cs).value;
  const double tmin = sum_rate_bounds(p, s).min_bound;
  const double opt = maximize_sum_rate(p).best_value;
  const bool c5_ok = std::abs(c5 - 1.292481250) < 5e-10;
  o.detail = fmt(" cap(3)=%.17g cap(5)=%.12f lp=%.15f minT=%.15f optimizer=%.15f", c3, c5, lp,
                 tmin, opt);
  o.pass = c3 == 1.0 && c5_ok && std::abs(lp - 1.0) <= 1e-12 && std::abs(tmin - 1.0) <= 1e-12 &&
           std::abs(opt - 1.0) <= 1e-12;
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* what;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "pairing oracle = min T within 1e-12, LP <= min T + 1e-9 (10000 instances)", criterion1},
      {2, "mixed interference: T1/T2 <= MAC + 1e-12 (10000), optimizer and canonical split "
          "reach MAC (200 per case)",
       criterion2},
      {3, "low interference: gamma merge never lowers T1..T4 (100000 instances)", criterion3},
      {4, "strong interference: transform is LI, zero-alpha and {W1,W2} restrictions match "
          "within 1e-4",
       criterion4},
      {5, "sufficient message sets: 7 rows x 100 instances within 1e-4, noise-treating rate",
       criterion5},
      {6, "two-message condition = transformed noise-treating condition (10000 instances)",
       criterion6},
      {7, "byte-identical verify JSON and sweep CSV across runs", criterion7},
      {8, "spot values: cap(3), cap(5), decoupled instance", criterion8},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto o = c.run();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %d: %s (%.1f s)%s\n", o.pass ? "PASS" : "FAIL", c.id, c.what, secs,
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
