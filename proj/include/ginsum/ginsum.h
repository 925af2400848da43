/* C interface to the ginsum library.
 *
 * Every function returns a ginsum_status. On failure, ginsum_last_error()
 * returns a message describing the most recent error on the calling thread.
 * Objects handed out through pointer-to-pointer arguments are owned by the
 * caller and released with the matching *_destroy / *_free function.
 */
#ifndef GINSUM_GINSUM_H
#define GINSUM_GINSUM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(GINSUM_BUILDING_LIBRARY)
#    define GINSUM_API __declspec(dllexport)
#  else
#    define GINSUM_API __declspec(dllimport)
#  endif
#else
#  define GINSUM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ginsum_status {
  GINSUM_OK = 0,
  GINSUM_ERR_NON_POSITIVE_POWER = 1,
  GINSUM_ERR_NEGATIVE_GAIN = 2,
  GINSUM_ERR_NON_FINITE_INPUT = 3,
  GINSUM_ERR_SIMPLEX_VIOLATION = 4,
  GINSUM_ERR_RANGE_VIOLATION = 5,
  GINSUM_ERR_NEGATIVE_ARGUMENT = 6,
  GINSUM_ERR_ZERO_GAIN = 7,
  GINSUM_ERR_NUMERICAL_INSTABILITY = 8,
  GINSUM_ERR_EMPTY_RESTRICTION = 9,
  GINSUM_ERR_INVALID_ARGUMENT = 10,
  GINSUM_ERR_IO_FAILURE = 11,
  GINSUM_ERR_INTERNAL = 99
} ginsum_status;

/* Message bits, matching the order U1, V1, W1, U2, V2, W2. */
enum {
  GINSUM_MSG_U1 = 1u << 0,
  GINSUM_MSG_V1 = 1u << 1,
  GINSUM_MSG_W1 = 1u << 2,
  GINSUM_MSG_U2 = 1u << 3,
  GINSUM_MSG_V2 = 1u << 4,
  GINSUM_MSG_W2 = 1u << 5,
  GINSUM_MSG_ALL = 0x3Fu
};

typedef enum ginsum_regime {
  GINSUM_REGIME_LI = 0,
  GINSUM_REGIME_MI1 = 1,
  GINSUM_REGIME_MI2 = 2,
  GINSUM_REGIME_SI = 3,
  GINSUM_REGIME_VSI = 4
} ginsum_regime;

typedef struct ginsum_params {
  double h1, h2, p1, p2;
} ginsum_params;

/* a = direct (U), b = common (V), g = cross (W) power fractions. */
typedef struct ginsum_split {
  double a1, b1, g1, a2, b2, g2;
} ginsum_split;

typedef struct ginsum_constraint {
  int receiver;      /* 1 or 2 */
  uint32_t subset;   /* GINSUM_MSG_* bits */
  double rhs;
} ginsum_constraint;

typedef struct ginsum_bounds {
  double t[4];
  double min_bound;
} ginsum_bounds;

typedef struct ginsum_optimize_options {
  uint32_t restrict_mask; /* 0 = no restriction */
  double grid_step;       /* default 0.05 */
  int refine_iters;       /* default 200 */
  int workers;            /* 0 = hardware concurrency */
} ginsum_optimize_options;

typedef struct ginsum_optimize_result {
  ginsum_split best_split;
  double best_value;
  uint32_t active_messages;
  int64_t evaluations;
} ginsum_optimize_result;

typedef struct ginsum_verify_options {
  int64_t trials;
  uint64_t seed;
  int workers;              /* 0 = hardware concurrency */
  int64_t optimizer_trials; /* -1 = default */
  int64_t subregion_trials; /* -1 = default */
  int include_timing;       /* nonzero adds elapsed seconds to the JSON */
} ginsum_verify_options;

typedef struct ginsum_sweep_spec {
  double h1_min, h1_max;
  int h1_steps;
  double h2_min, h2_max;
  int h2_steps;
  double p1, p2;
  ginsum_optimize_options search;
} ginsum_sweep_spec;

/* Opaque handles. */
typedef struct ginsum_network ginsum_network;
typedef struct ginsum_buffer ginsum_buffer;

GINSUM_API const char* ginsum_version(void);
GINSUM_API const char* ginsum_last_error(void);
GINSUM_API const char* ginsum_status_name(ginsum_status status);

GINSUM_API void ginsum_optimize_options_init(ginsum_optimize_options* opts);
GINSUM_API void ginsum_verify_options_init(ginsum_verify_options* opts);

/* Text buffers returned by the *_json / *_csv / *_svg functions. */
GINSUM_API const char* ginsum_buffer_data(const ginsum_buffer* buf);
GINSUM_API size_t ginsum_buffer_size(const ginsum_buffer* buf);
GINSUM_API void ginsum_buffer_free(ginsum_buffer* buf);

/* Validated channel parameters. */
GINSUM_API ginsum_status ginsum_network_create(double h1, double h2, double p1, double p2,
                                               ginsum_network** out);
GINSUM_API void ginsum_network_destroy(ginsum_network* net);
GINSUM_API ginsum_status ginsum_network_params(const ginsum_network* net, ginsum_params* out);

GINSUM_API ginsum_status ginsum_split_validate(const double raw[6], ginsum_split* out);

GINSUM_API ginsum_status ginsum_cap(double x, double* out);
GINSUM_API ginsum_status ginsum_region_constraints(const ginsum_network* net,
                                                   const ginsum_split* split,
                                                   ginsum_constraint out[30]);
GINSUM_API ginsum_status ginsum_sum_rate_bounds(const ginsum_network* net,
                                                const ginsum_split* split,
                                                ginsum_bounds* out);
GINSUM_API ginsum_status ginsum_mac_sum_capacity(const ginsum_network* net, int receiver,
                                                 double* out);
GINSUM_API ginsum_status ginsum_tin_sum_rate(const ginsum_network* net, double* out);

GINSUM_API ginsum_status ginsum_max_sum_rate_lp(const ginsum_network* net,
                                                const ginsum_split* split, double* value,
                                                double argmax[6]);
GINSUM_API ginsum_status ginsum_pairing_oracle(const ginsum_network* net,
                                               const ginsum_split* split, double* value,
                                               uint32_t* rx1_subset, uint32_t* rx2_subset);

GINSUM_API ginsum_status ginsum_classify(const ginsum_network* net, ginsum_regime* out);
GINSUM_API ginsum_status ginsum_transform(const ginsum_network* net, ginsum_network** out);

GINSUM_API ginsum_status ginsum_optimize(const ginsum_network* net,
                                         const ginsum_optimize_options* opts,
                                         ginsum_optimize_result* out);

/* JSON / CSV / SVG documents. */
GINSUM_API ginsum_status ginsum_classify_json(const ginsum_network* net, ginsum_buffer** out);
GINSUM_API ginsum_status ginsum_optimize_json(const ginsum_network* net,
                                              const ginsum_optimize_options* opts,
                                              ginsum_buffer** out);
GINSUM_API ginsum_status ginsum_constraints_json(const ginsum_network* net,
                                                 const ginsum_split* split,
                                                 ginsum_buffer** out);
GINSUM_API ginsum_status ginsum_constraints_csv(const ginsum_network* net,
                                                const ginsum_split* split,
                                                ginsum_buffer** out);
/* suite: all, t1, t2, t3, duality, table1. *failures receives the number of
 * failing trials summed over the reports. */
GINSUM_API ginsum_status ginsum_verify_json(const char* suite,
                                            const ginsum_verify_options* opts,
                                            int64_t* failures, ginsum_buffer** out);
/* Any of csv/json/svg may be NULL to skip that rendering. */
GINSUM_API ginsum_status ginsum_sweep(const ginsum_sweep_spec* spec, ginsum_buffer** csv,
                                      ginsum_buffer** json, ginsum_buffer** svg);

#ifdef __cplusplus
}
#endif

#endif /* GINSUM_GINSUM_H */
