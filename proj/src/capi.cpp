#include "ginsum/ginsum.h"

#include <exception>
#include <new>
#include <string>

#include "ginsum/io.hpp"
#include "ginsum/model.hpp"
#include "ginsum/optimizer.hpp"
#include "ginsum/rates.hpp"
#include "ginsum/regimes.hpp"
#include "ginsum/region_lp.hpp"
#include "ginsum/sweep.hpp"
#include "ginsum/verifier.hpp"

struct ginsum_network {
  ginsum::ChannelParams params;
};

struct ginsum_buffer {
  std::string text;
};

namespace {

thread_local std::string last_error;

ginsum_status to_status(ginsum::ErrorCode code) {
  using ginsum::ErrorCode;
  switch (code) {
    case ErrorCode::NonPositivePower: return GINSUM_ERR_NON_POSITIVE_POWER;
    case ErrorCode::NegativeGain: return GINSUM_ERR_NEGATIVE_GAIN;
    case ErrorCode::NonFiniteInput: return GINSUM_ERR_NON_FINITE_INPUT;
    case ErrorCode::SimplexViolation: return GINSUM_ERR_SIMPLEX_VIOLATION;
    case ErrorCode::RangeViolation: return GINSUM_ERR_RANGE_VIOLATION;
    case ErrorCode::NegativeArgument: return GINSUM_ERR_NEGATIVE_ARGUMENT;
    case ErrorCode::ZeroGain: return GINSUM_ERR_ZERO_GAIN;
    case ErrorCode::NumericalInstability: return GINSUM_ERR_NUMERICAL_INSTABILITY;
    case ErrorCode::EmptyRestriction: return GINSUM_ERR_EMPTY_RESTRICTION;
    case ErrorCode::InvalidArgument: return GINSUM_ERR_INVALID_ARGUMENT;
    case ErrorCode::IoFailure: return GINSUM_ERR_IO_FAILURE;
  }
  return GINSUM_ERR_INTERNAL;
}

template <class F>
ginsum_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return GINSUM_OK;
  } catch (const ginsum::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return GINSUM_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return GINSUM_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return GINSUM_ERR_INTERNAL;
  }
}

void require(bool cond, const char* what) {
  if (!cond) throw ginsum::Error(ginsum::ErrorCode::InvalidArgument, what);
}

ginsum::PowerSplit checked_split(const ginsum_split* s) {
  require(s != nullptr, "split is null");
  return ginsum::validate_split(s->a1, s->b1, s->g1, s->a2, s->b2, s->g2);
}

ginsum_split to_c(const ginsum::PowerSplit& s) {
  return {s.tx1.direct, s.tx1.common, s.tx1.cross, s.tx2.direct, s.tx2.common, s.tx2.cross};
}

ginsum::Receiver receiver_of(int rx) {
  require(rx == 1 || rx == 2, "receiver must be 1 or 2");
  return rx == 1 ? ginsum::Receiver::Rx1 : ginsum::Receiver::Rx2;
}

ginsum::OptimizeOptions to_cpp(const ginsum_optimize_options* o) {
  ginsum::OptimizeOptions opts;
  if (o == nullptr) return opts;
  if (o->restrict_mask != 0) {
    require((o->restrict_mask & ~GINSUM_MSG_ALL) == 0, "unknown message bits in restriction");
    opts.restrict_to = ginsum::MessageSet::from_mask(static_cast<std::uint8_t>(o->restrict_mask));
  }
  opts.grid_step = o->grid_step;
  opts.refine_iters = o->refine_iters;
  opts.workers = o->workers;
  return opts;
}

ginsum_buffer* make_buffer(std::string text) { return new ginsum_buffer{std::move(text)}; }

}  // namespace

extern "C" {

const char* ginsum_version(void) { return "1.0.0"; }

const char* ginsum_last_error(void) { return last_error.c_str(); }

const char* ginsum_status_name(ginsum_status status) {
  switch (status) {
    case GINSUM_OK: return "OK";
    case GINSUM_ERR_NON_POSITIVE_POWER: return "NonPositivePower";
    case GINSUM_ERR_NEGATIVE_GAIN: return "NegativeGain";
    case GINSUM_ERR_NON_FINITE_INPUT: return "NonFiniteInput";
    case GINSUM_ERR_SIMPLEX_VIOLATION: return "SimplexViolation";
    case GINSUM_ERR_RANGE_VIOLATION: return "RangeViolation";
    case GINSUM_ERR_NEGATIVE_ARGUMENT: return "NegativeArgument";
    case GINSUM_ERR_ZERO_GAIN: return "ZeroGain";
    case GINSUM_ERR_NUMERICAL_INSTABILITY: return "NumericalInstability";
    case GINSUM_ERR_EMPTY_RESTRICTION: return "EmptyRestriction";
    case GINSUM_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case GINSUM_ERR_IO_FAILURE: return "IoFailure";
    case GINSUM_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

void ginsum_optimize_options_init(ginsum_optimize_options* opts) {
  if (opts == nullptr) return;
  const ginsum::OptimizeOptions d;
  *opts = {0u, d.grid_step, d.refine_iters, 0};
}

void ginsum_verify_options_init(ginsum_verify_options* opts) {
  if (opts == nullptr) return;
  const ginsum::VerifyOptions d;
  *opts = {d.trials, d.seed, 0, -1, -1, 0};
}

const char* ginsum_buffer_data(const ginsum_buffer* buf) {
  return buf ? buf->text.c_str() : "";
}

size_t ginsum_buffer_size(const ginsum_buffer* buf) { return buf ? buf->text.size() : 0; }

void ginsum_buffer_free(ginsum_buffer* buf) { delete buf; }

ginsum_status ginsum_network_create(double h1, double h2, double p1, double p2,
                                    ginsum_network** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    *out = nullptr;
    *out = new ginsum_network{ginsum::validate_params(h1, h2, p1, p2)};
  });
}

void ginsum_network_destroy(ginsum_network* net) { delete net; }

ginsum_status ginsum_network_params(const ginsum_network* net, ginsum_params* out) {
  return guarded([&] {
    require(net && out, "null argument");
    *out = {net->params.h1, net->params.h2, net->params.p1, net->params.p2};
  });
}

ginsum_status ginsum_split_validate(const double raw[6], ginsum_split* out) {
  return guarded([&] {
    require(raw && out, "null argument");
    *out = to_c(ginsum::validate_split(raw[0], raw[1], raw[2], raw[3], raw[4], raw[5]));
  });
}

ginsum_status ginsum_cap(double x, double* out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    *out = ginsum::cap(x);
  });
}

ginsum_status ginsum_region_constraints(const ginsum_network* net, const ginsum_split* split,
                                        ginsum_constraint out[30]) {
  return guarded([&] {
    require(net && out, "null argument");
    const auto cs = ginsum::region_constraints(net->params, checked_split(split));
    for (std::size_t k = 0; k < cs.size(); ++k) {
      out[k] = {static_cast<int>(cs[k].receiver), cs[k].subset.mask(), cs[k].rhs};
    }
  });
}

ginsum_status ginsum_sum_rate_bounds(const ginsum_network* net, const ginsum_split* split,
                                     ginsum_bounds* out) {
  return guarded([&] {
    require(net && out, "null argument");
    const auto b = ginsum::sum_rate_bounds(net->params, checked_split(split));
    for (int k = 0; k < 4; ++k) out->t[k] = b.t[static_cast<std::size_t>(k)];
    out->min_bound = b.min_bound;
  });
}

ginsum_status ginsum_mac_sum_capacity(const ginsum_network* net, int receiver, double* out) {
  return guarded([&] {
    require(net && out, "null argument");
    *out = ginsum::mac_sum_capacity(net->params, receiver_of(receiver));
  });
}

ginsum_status ginsum_tin_sum_rate(const ginsum_network* net, double* out) {
  return guarded([&] {
    require(net && out, "null argument");
    *out = ginsum::tin_sum_rate(net->params);
  });
}

ginsum_status ginsum_max_sum_rate_lp(const ginsum_network* net, const ginsum_split* split,
                                     double* value, double argmax[6]) {
  return guarded([&] {
    require(net && value, "null argument");
    const auto cs = ginsum::region_constraints(net->params, checked_split(split));
    const auto sol = ginsum::max_sum_rate_lp(cs);
    *value = sol.value;
    if (argmax) {
      for (std::size_t k = 0; k < 6; ++k) argmax[k] = sol.argmax.rate[k];
    }
  });
}

ginsum_status ginsum_pairing_oracle(const ginsum_network* net, const ginsum_split* split,
                                    double* value, uint32_t* rx1_subset,
                                    uint32_t* rx2_subset) {
  return guarded([&] {
    require(net && value, "null argument");
    const auto cs = ginsum::region_constraints(net->params, checked_split(split));
    const auto res = ginsum::pairing_oracle(cs);
    *value = res.value;
    if (rx1_subset) *rx1_subset = res.best.rx1_subset.mask();
    if (rx2_subset) *rx2_subset = res.best.rx2_subset.mask();
  });
}

ginsum_status ginsum_classify(const ginsum_network* net, ginsum_regime* out) {
  return guarded([&] {
    require(net && out, "null argument");
    *out = static_cast<ginsum_regime>(ginsum::classify(net->params));
  });
}

ginsum_status ginsum_transform(const ginsum_network* net, ginsum_network** out) {
  return guarded([&] {
    require(net && out, "null argument");
    *out = nullptr;
    *out = new ginsum_network{ginsum::transform(net->params).params};
  });
}

ginsum_status ginsum_optimize(const ginsum_network* net, const ginsum_optimize_options* opts,
                              ginsum_optimize_result* out) {
  return guarded([&] {
    require(net && out, "null argument");
    const auto r = ginsum::maximize_sum_rate(net->params, to_cpp(opts));
    out->best_split = to_c(r.best_split);
    out->best_value = r.best_value;
    out->active_messages = r.active_messages.mask();
    out->evaluations = r.evaluations;
  });
}

ginsum_status ginsum_classify_json(const ginsum_network* net, ginsum_buffer** out) {
  return guarded([&] {
    require(net && out, "null argument");
    *out = make_buffer(ginsum::io::dump(ginsum::io::to_json(ginsum::regime_report(net->params))));
  });
}

ginsum_status ginsum_optimize_json(const ginsum_network* net,
                                   const ginsum_optimize_options* opts, ginsum_buffer** out) {
  return guarded([&] {
    require(net && out, "null argument");
    const auto o = to_cpp(opts);
    const auto r = ginsum::maximize_sum_rate(net->params, o);
    *out = make_buffer(ginsum::io::dump(ginsum::io::optimize_document(net->params, o, r)));
  });
}

ginsum_status ginsum_constraints_json(const ginsum_network* net, const ginsum_split* split,
                                      ginsum_buffer** out) {
  return guarded([&] {
    require(net && out, "null argument");
    *out = make_buffer(ginsum::io::dump(
        ginsum::io::constraints_document(net->params, checked_split(split))));
  });
}

ginsum_status ginsum_constraints_csv(const ginsum_network* net, const ginsum_split* split,
                                     ginsum_buffer** out) {
  return guarded([&] {
    require(net && out, "null argument");
    *out = make_buffer(ginsum::io::constraints_csv(net->params, checked_split(split)));
  });
}

ginsum_status ginsum_verify_json(const char* suite, const ginsum_verify_options* opts,
                                 int64_t* failures, ginsum_buffer** out) {
  return guarded([&] {
    require(suite && opts && out, "null argument");
    require(opts->trials >= 1, "trials must be >= 1");
    ginsum::VerifyOptions v;
    v.trials = opts->trials;
    v.seed = opts->seed;
    v.workers = opts->workers;
    v.optimizer_trials = opts->optimizer_trials;
    v.subregion_trials = opts->subregion_trials;
    const auto reports = ginsum::run_suite(suite, v);
    std::int64_t total = 0;
    for (const auto& r : reports) total += r.failures;
    if (failures) *failures = total;
    *out = make_buffer(ginsum::io::dump(
        ginsum::io::verify_document(suite, v, reports, opts->include_timing != 0)));
  });
}

ginsum_status ginsum_sweep(const ginsum_sweep_spec* spec, ginsum_buffer** csv,
                           ginsum_buffer** json, ginsum_buffer** svg) {
  return guarded([&] {
    require(spec != nullptr, "null argument");
    ginsum::SweepSpec s;
    s.h1 = {spec->h1_min, spec->h1_max, spec->h1_steps};
    s.h2 = {spec->h2_min, spec->h2_max, spec->h2_steps};
    s.p1 = spec->p1;
    s.p2 = spec->p2;
    s.search = to_cpp(&spec->search);
    const auto points = ginsum::run_sweep(s);
    std::string csv_text, json_text, svg_text;
    if (csv) csv_text = ginsum::io::sweep_csv(points);
    if (json) json_text = ginsum::io::dump(ginsum::io::sweep_document(s, points));
    if (svg) svg_text = ginsum::io::sweep_svg(s, points);
    if (csv) *csv = make_buffer(std::move(csv_text));
    if (json) *json = make_buffer(std::move(json_text));
    if (svg) *svg = make_buffer(std::move(svg_text));
  });
}

}  // extern "C"
