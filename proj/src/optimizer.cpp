#include "ginsum/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>
#include <vector>

#include "ginsum/rates.hpp"
#include "ginsum/region_lp.hpp"
#include "parallel.hpp"

namespace ginsum {

MessageSet active_messages(const PowerSplit& split, double eps) {
  MessageSet s;
  for (auto id : kAllMessages) {
    if (split.fraction(id) > eps) s.insert(id);
  }
  return s;
}

PowerSplit gamma_merge(const PowerSplit& split) {
  PowerSplit out = split;
  out.tx1.common += out.tx1.cross;
  out.tx1.cross = 0.0;
  out.tx2.common += out.tx2.cross;
  out.tx2.cross = 0.0;
  return out;
}

PowerSplit alpha_merge(const PowerSplit& split) {
  PowerSplit out = split;
  out.tx1.common += out.tx1.direct;
  out.tx1.direct = 0.0;
  out.tx2.common += out.tx2.direct;
  out.tx2.direct = 0.0;
  return out;
}

namespace {

using Vec6 = std::array<double, 6>;

// Support bits of one transmitter row: 1 = direct, 2 = common, 4 = cross.
using Support = unsigned;

struct GridPoint {
  std::array<double, 3> f;
  Support support;
};

// Uniform grid of resolution 1/n, plus points whose smaller coordinates sit
// at fixed fractions of one grid step. Optima often put a few percent of the
// power on a message near a vertex or an edge, well inside a single grid cell.
std::vector<GridPoint> simplex_grid(int n, Support allowed) {
  std::vector<GridPoint> pts;
  if (allowed == 0) {
    pts.push_back({{0.0, 0.0, 0.0}, 0});
    return pts;
  }
  auto add = [&](std::array<double, 3> f) {
    Support s = 0;
    for (int i = 0; i < 3; ++i)
      if (f[i] > 0.0) s |= 1u << i;
    if ((s & ~allowed) != 0) return;
    pts.push_back({f, s});
  };
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n - i; ++j) {
      const int k = n - i - j;
      add({static_cast<double>(i) / n, static_cast<double>(j) / n, static_cast<double>(k) / n});
    }
  }
  const double h = 1.0 / n;
  constexpr std::array<double, 6> kNear = {0.02, 0.05, 0.1, 0.2, 0.4, 0.7};
  if (n >= 2) {
    // Edges: one small coordinate against a large one.
    for (int big = 0; big < 3; ++big) {
      for (int small = 0; small < 3; ++small) {
        if (small == big) continue;
        for (double e : kNear) {
          std::array<double, 3> f{};
          f[small] = e * h;
          f[big] = 1.0 - e * h;
          add(f);
        }
      }
    }
    // Near each vertex: two small coordinates.
    for (int big = 0; big < 3; ++big) {
      const int s1 = (big + 1) % 3, s2 = (big + 2) % 3;
      for (double e1 : kNear) {
        for (double e2 : kNear) {
          std::array<double, 3> f{};
          f[s1] = e1 * h;
          f[s2] = e2 * h;
          f[big] = 1.0 - (e1 + e2) * h;
          add(f);
        }
      }
    }
  }
  return pts;
}

// Each T_k is 0.5 log2 of (A_k / I1) (B_k / I2) with A_k, B_k, I1, I2 affine
// in the six fractions, which gives closed-form values and gradients.
struct Affine {
  double c0 = 0.0;
  Vec6 c{};
  double operator()(const Vec6& x) const {
    double v = c0;
    for (int i = 0; i < 6; ++i) v += c[i] * x[i];
    return v;
  }
};

class Objective {
 public:
  explicit Objective(const ChannelParams& p) {
    const double p1 = p.p1, p2 = p.p2, g1 = p.h1 * p.h1, g2 = p.h2 * p.h2;
    // x = (a1, b1, c1, a2, b2, c2)
    i1_ = {1.0, {0, 0, p1, g2 * p2, 0, 0}};
    i2_ = {1.0, {g1 * p1, 0, 0, 0, 0, p2}};
    auto plus = [](Affine base, Vec6 extra) {
      for (int i = 0; i < 6; ++i) base.c[i] += extra[i];
      return base;
    };
    const Vec6 d1 = {p1, 0, 0, 0, 0, 0};             // U1 at Rx1
    const Vec6 dc1 = {p1, p1, 0, 0, 0, 0};           // U1 + V1 at Rx1
    const Vec6 w2 = {0, 0, 0, 0, 0, g2 * p2};        // W2 at Rx1
    const Vec6 vw2 = {0, 0, 0, 0, g2 * p2, g2 * p2};  // V2 + W2 at Rx1
    const Vec6 d2 = {0, 0, 0, p2, 0, 0};
    const Vec6 dc2 = {0, 0, 0, p2, p2, 0};
    const Vec6 w1 = {0, 0, g1 * p1, 0, 0, 0};
    const Vec6 vw1 = {0, g1 * p1, g1 * p1, 0, 0, 0};
    auto sum = [](Vec6 a, const Vec6& b) {
      for (int i = 0; i < 6; ++i) a[i] += b[i];
      return a;
    };
    a_[0] = plus(i1_, sum(d1, w2));
    b_[0] = plus(i2_, sum(dc2, vw1));
    a_[1] = plus(i1_, sum(dc1, vw2));
    b_[1] = plus(i2_, sum(d2, w1));
    a_[2] = plus(i1_, sum(d1, vw2));
    b_[2] = plus(i2_, sum(d2, vw1));
    a_[3] = plus(i1_, sum(dc1, w2));
    b_[3] = plus(i2_, sum(dc2, w1));
  }

  /// min{T1..T4}, using a single logarithm.
  double operator()(const Vec6& x) const {
    const double i1 = i1_(x), i2 = i2_(x);
    double m = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 4; ++k) m = std::min(m, a_[k](x) * b_[k](x));
    return 0.5 * std::log2(m / (i1 * i2));
  }

  void bounds(const Vec6& x, std::array<double, 4>& t,
              std::array<Vec6, 4>& grad) const {
    constexpr double kScale = 0.5 / std::numbers::ln2;
    const double i1 = i1_(x), i2 = i2_(x);
    for (int k = 0; k < 4; ++k) {
      const double a = a_[k](x), b = b_[k](x);
      t[k] = 0.5 * std::log2((a / i1) * (b / i2));
      for (int i = 0; i < 6; ++i) {
        grad[k][i] = kScale * (a_[k].c[i] / a + b_[k].c[i] / b - i1_.c[i] / i1 -
                               i2_.c[i] / i2);
      }
    }
  }

 private:
  Affine i1_, i2_;
  std::array<Affine, 4> a_, b_;
};

struct Candidate {
  double value = -std::numeric_limits<double>::infinity();
  std::int64_t order = std::numeric_limits<std::int64_t>::max();
  Vec6 x{};

  // Higher value wins; equal values go to the earlier grid point.
  bool beats(const Candidate& o) const {
    return value > o.value || (value == o.value && order < o.order);
  }
};

constexpr std::size_t kStartsPerSupport = 3;

// Keeps `slot` sorted best-first.
template <std::size_t K>
void keep_best(std::array<Candidate, K>& slot, const Candidate& c) {
  if (!c.beats(slot[K - 1])) return;
  std::size_t pos = K - 1;
  while (pos > 0 && c.beats(slot[pos - 1])) {
    slot[pos] = slot[pos - 1];
    --pos;
  }
  slot[pos] = c;
}

std::vector<Support> faces_of(Support allowed) {
  if (allowed == 0) return {0};
  std::vector<Support> out;
  for (Support s = 1; s < 8; ++s) {
    if ((s & ~allowed) == 0) out.push_back(s);
  }
  return out;
}

struct RefineOutcome {
  Vec6 x;
  double value;
  std::int64_t evaluations;
};

// Trust-region sequential LP for max min{T_k} inside the closed face: each
// step maximizes the linearized minimum over a box of radius `radius` and is
// accepted when the true minimum improves enough. Linearizing every bound at
// once lets the iterate slide along ridges where several bounds are equal.
RefineOutcome refine(const Objective& f, Vec6 x, double value, Support face1,
                     Support face2, double radius, int iterations) {
  // Free coordinates move against the row's pivot (its last face coordinate).
  struct Free {
    int index;
    int pivot;
  };
  std::vector<Free> free;
  std::vector<int> pivots;
  auto collect = [&](Support face, int offset) {
    int pivot = -1;
    for (int i = 2; i >= 0; --i) {
      if (!(face & (1u << i))) continue;
      if (pivot < 0) {
        pivot = offset + i;
        pivots.push_back(pivot);
      } else {
        free.push_back({offset + i, pivot});
      }
    }
  };
  collect(face1, 0);
  collect(face2, 3);

  std::int64_t evals = 0;
  const int nf = static_cast<int>(free.size());
  if (nf == 0) return {x, value, evals};

  const int nvars = 2 * nf + 1;  // d+ and d- per free coordinate, then t
  std::array<double, 4> t{};
  std::array<Vec6, 4> grad{};
  for (int it = 0; it < iterations && radius > 1e-12; ++it) {
    f.bounds(x, t, grad);
    ++evals;
    DenseLp lp;
    lp.objective.assign(static_cast<std::size_t>(nvars), 0.0);
    lp.objective.back() = 1.0;
    for (int k = 0; k < 4; ++k) {
      DenseLp::Row row{std::vector<double>(static_cast<std::size_t>(nvars), 0.0),
                       std::max(0.0, t[k])};
      for (int j = 0; j < nf; ++j) {
        const double g = grad[k][free[j].index] - grad[k][free[j].pivot];
        row.coeff[2 * j] = -g;
        row.coeff[2 * j + 1] = g;
      }
      row.coeff.back() = 1.0;
      lp.rows.push_back(std::move(row));
    }
    for (int j = 0; j < nf; ++j) {
      const double xi = x[free[j].index];
      DenseLp::Row up{std::vector<double>(static_cast<std::size_t>(nvars), 0.0),
                      std::max(0.0, std::min(radius, 1.0 - xi))};
      up.coeff[2 * j] = 1.0;
      DenseLp::Row down{std::vector<double>(static_cast<std::size_t>(nvars), 0.0),
                        std::max(0.0, std::min(radius, xi))};
      down.coeff[2 * j + 1] = 1.0;
      lp.rows.push_back(std::move(up));
      lp.rows.push_back(std::move(down));
    }
    for (int p : pivots) {
      // The pivot changes by minus the sum of its row's free steps.
      DenseLp::Row shrink{std::vector<double>(static_cast<std::size_t>(nvars), 0.0),
                          std::max(0.0, std::min(radius, x[p]))};
      DenseLp::Row grow{std::vector<double>(static_cast<std::size_t>(nvars), 0.0),
                        std::max(0.0, std::min(radius, 1.0 - x[p]))};
      bool any = false;
      for (int j = 0; j < nf; ++j) {
        if (free[j].pivot != p) continue;
        any = true;
        shrink.coeff[2 * j] = 1.0;
        shrink.coeff[2 * j + 1] = -1.0;
        grow.coeff[2 * j] = -1.0;
        grow.coeff[2 * j + 1] = 1.0;
      }
      if (!any) continue;
      lp.rows.push_back(std::move(shrink));
      lp.rows.push_back(std::move(grow));
    }
    DenseLpSolution sol;
    try {
      sol = solve_dense(lp);
    } catch (const Error&) {
      break;
    }
    const double model_min = *std::min_element(t.begin(), t.end());
    const double predicted = sol.value - model_min;
    if (!(predicted > 1e-15)) break;

    Vec6 y = x;
    for (int j = 0; j < nf; ++j) {
      const double d = sol.x[2 * j] - sol.x[2 * j + 1];
      y[free[j].index] = std::clamp(x[free[j].index] + d, 0.0, 1.0);
    }
    for (int p : pivots) {
      double rest = 0.0;
      for (const auto& fr : free)
        if (fr.pivot == p) rest += y[fr.index];
      if (rest > 1.0) {
        for (const auto& fr : free)
          if (fr.pivot == p) y[fr.index] /= rest;
        rest = 1.0;
      }
      y[p] = std::max(0.0, 1.0 - rest);
    }
    const double v = f(y);
    ++evals;
    const double actual = v - value;
    if (actual >= 0.1 * predicted && actual > 0.0) {
      x = y;
      value = v;
      if (actual >= 0.75 * predicted) radius = std::min(1.0, 2.0 * radius);
    } else {
      radius *= 0.5;
    }
  }
  return {x, value, evals};
}

Support allowed_row(const MessageSet& allowed, MessageId u, MessageId v, MessageId w) {
  return (allowed.contains(u) ? 1u : 0u) | (allowed.contains(v) ? 2u : 0u) |
         (allowed.contains(w) ? 4u : 0u);
}

bool lex_less(const Vec6& a, const Vec6& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

OptimizeResult maximize_sum_rate(const ChannelParams& params,
                                 const OptimizeOptions& opts) {
  if (!(opts.grid_step > 0.0 && opts.grid_step <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "grid step must lie in (0, 1]");
  }
  if (opts.refine_iters < 0) {
    throw Error(ErrorCode::InvalidArgument, "refinement count must be >= 0");
  }
  const MessageSet allowed = opts.restrict_to.value_or(MessageSet::all());
  if (allowed.empty()) {
    throw Error(ErrorCode::EmptyRestriction,
                "message restriction excludes every message");
  }
  using enum MessageId;
  const Support allow1 = allowed_row(allowed, U1, V1, W1);
  const Support allow2 = allowed_row(allowed, U2, V2, W2);

  const int n = std::max(1, static_cast<int>(std::lround(1.0 / opts.grid_step)));
  const auto grid1 = simplex_grid(n, allow1);
  const auto grid2 = simplex_grid(n, allow2);
  const Objective f(params);
  const int workers = resolve_workers(opts.workers);

  // Best few grid points per exact support pattern (8 x 8 table).
  using Slot = std::array<Candidate, kStartsPerSupport>;
  using Table = std::array<Slot, 64>;
  std::vector<Table> partial(static_cast<std::size_t>(workers));
  parallel_for(workers, grid1.size(), [&](int w, std::size_t i) {
    auto& table = partial[static_cast<std::size_t>(w)];
    const auto& p = grid1[i];
    for (std::size_t j = 0; j < grid2.size(); ++j) {
      const auto& q = grid2[j];
      Candidate c;
      c.x = {p.f[0], p.f[1], p.f[2], q.f[0], q.f[1], q.f[2]};
      c.value = f(c.x);
      c.order = static_cast<std::int64_t>(i * grid2.size() + j);
      keep_best(table[p.support * 8 + q.support], c);
    }
  });
  Table exact;
  for (const auto& t : partial)
    for (std::size_t k = 0; k < exact.size(); ++k)
      for (const auto& c : t[k]) keep_best(exact[k], c);

  std::int64_t evaluations = static_cast<std::int64_t>(grid1.size() * grid2.size());

  // Each face is refined from its best closed-face grid point and from the
  // best points with exactly its support; the objective is not concave, so
  // a vertex optimum can hide a better interior one.
  struct Start {
    Support s1, s2;
    Candidate at;
  };
  std::vector<Start> starts;
  for (Support f1 : faces_of(allow1)) {
    for (Support f2 : faces_of(allow2)) {
      Candidate closed;
      for (Support e1 = 0; e1 < 8; ++e1) {
        if ((e1 & ~f1) != 0) continue;
        for (Support e2 = 0; e2 < 8; ++e2) {
          if ((e2 & ~f2) != 0) continue;
          const auto& c = exact[e1 * 8 + e2][0];
          if (c.beats(closed)) closed = c;
        }
      }
      if (std::isfinite(closed.value)) starts.push_back({f1, f2, closed});
      for (const auto& c : exact[f1 * 8 + f2]) {
        if (std::isfinite(c.value) && c.order != closed.order) starts.push_back({f1, f2, c});
      }
    }
  }

  const double radius0 = 1.0 / n;
  std::vector<RefineOutcome> refined(starts.size());
  parallel_for(workers, starts.size(), [&](int, std::size_t k) {
    const auto& st = starts[k];
    refined[k] = refine(f, st.at.x, st.at.value, st.s1, st.s2, radius0, opts.refine_iters);
  });

  // Score every refined point with the closed-form bounds, then pick the best
  // value; near-ties go to fewer active messages, then the smaller vector.
  constexpr double kTieTol = 1e-12;
  std::vector<OptimizeResult> results;
  results.reserve(refined.size());
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& r : refined) {
    evaluations += r.evaluations;
    OptimizeResult res;
    res.best_split = PowerSplit::from_array(r.x);
    res.best_value = sum_rate_bounds(params, res.best_split).min_bound;
    res.active_messages = active_messages(res.best_split);
    top = std::max(top, res.best_value);
    results.push_back(res);
  }
  const OptimizeResult* pick = nullptr;
  for (const auto& res : results) {
    if (res.best_value < top - kTieTol) continue;
    if (pick == nullptr) {
      pick = &res;
      continue;
    }
    const int a = res.active_messages.size(), b = pick->active_messages.size();
    if (a < b || (a == b && lex_less(res.best_split.as_array(),
                                     pick->best_split.as_array()))) {
      pick = &res;
    }
  }
  OptimizeResult out = *pick;
  out.evaluations = evaluations;
  return out;
}

}  // namespace ginsum
