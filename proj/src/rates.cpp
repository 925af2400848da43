#include "ginsum/rates.hpp"

#include <algorithm>
#include <cmath>

namespace ginsum {

double cap(double x) {
  if (std::isnan(x) || x < 0.0) {
    throw Error(ErrorCode::NegativeArgument, "C(x) requires x >= 0");
  }
  return 0.5 * std::log2(1.0 + x);
}

namespace {

// Same as cap() without the argument check, for the hot paths where the
// argument is a ratio of nonnegative powers.
inline double cap_unchecked(double x) { return 0.5 * std::log2(1.0 + x); }

}  // namespace

double ReceivedPowers::at(MessageId id) const {
  const auto& order = decode_order(receiver);
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (order[k] == id) return power[k];
  }
  return 0.0;
}

ReceivedPowers received_powers(const ChannelParams& params, const PowerSplit& split,
                               Receiver rx) {
  ReceivedPowers out;
  out.receiver = rx;
  if (rx == Receiver::Rx1) {
    const double g = params.h2 * params.h2;
    out.power = {split.tx1.direct * params.p1, split.tx1.common * params.p1,
                 g * split.tx2.common * params.p2, g * split.tx2.cross * params.p2};
  } else {
    const double g = params.h1 * params.h1;
    out.power = {split.tx2.direct * params.p2, g * split.tx1.common * params.p1,
                 split.tx2.common * params.p2, g * split.tx1.cross * params.p1};
  }
  return out;
}

EffectiveNoise effective_noise(const ChannelParams& params, const PowerSplit& split) {
  return {1.0 + params.h2 * params.h2 * split.tx2.direct * params.p2 +
              split.tx1.cross * params.p1,
          1.0 + params.h1 * params.h1 * split.tx1.direct * params.p1 +
              split.tx2.cross * params.p2};
}

std::vector<RateConstraint> region_constraints(const ChannelParams& params,
                                               const PowerSplit& split) {
  const auto noise = effective_noise(params, split);
  std::vector<RateConstraint> out;
  out.reserve(kConstraintCount);
  for (Receiver rx : {Receiver::Rx1, Receiver::Rx2}) {
    const auto rp = received_powers(params, split, rx);
    const auto& order = decode_order(rx);
    const double noise_rx = rx == Receiver::Rx1 ? noise.i1 : noise.i2;
    for (unsigned m = 1; m <= 15; ++m) {
      MessageSet subset;
      double p = 0.0;
      for (unsigned k = 0; k < 4; ++k) {
        if (m & (1u << k)) {
          subset.insert(order[k]);
          p += rp.power[k];
        }
      }
      out.push_back({rx, subset, cap(p / noise_rx)});
    }
  }
  return out;
}

int constraint_index(Receiver rx, MessageSet subset) {
  if (subset.empty() || !subset.is_subset_of(decode_set(rx))) return -1;
  const auto& order = decode_order(rx);
  unsigned m = 0;
  for (unsigned k = 0; k < 4; ++k) {
    if (subset.contains(order[k])) m |= 1u << k;
  }
  const int base = rx == Receiver::Rx1 ? 0 : kConstraintsPerReceiver;
  return base + static_cast<int>(m) - 1;
}

SumRateBounds sum_rate_bounds(const ChannelParams& params, const PowerSplit& split) {
  const double P1 = params.p1, P2 = params.p2;
  const double g1sq = params.h1 * params.h1, g2sq = params.h2 * params.h2;
  const double a1 = split.tx1.direct, c1 = split.tx1.cross;
  const double a2 = split.tx2.direct, c2 = split.tx2.cross;
  // Complements 1 - alpha_i and 1 - gamma_i, written as sums of the other two
  // fractions so a silent (all-zero) transmitter contributes nothing.
  const double abar1 = split.tx1.common + split.tx1.cross;
  const double abar2 = split.tx2.common + split.tx2.cross;
  const double cbar1 = split.tx1.direct + split.tx1.common;
  const double cbar2 = split.tx2.direct + split.tx2.common;

  const double i1 = 1.0 + g2sq * a2 * P2 + c1 * P1;
  const double i2 = 1.0 + g1sq * a1 * P1 + c2 * P2;

  SumRateBounds b;
  b.t[0] = cap_unchecked((a1 * P1 + g2sq * c2 * P2) / i1) +
           cap_unchecked((cbar2 * P2 + g1sq * abar1 * P1) / i2);
  b.t[1] = cap_unchecked((cbar1 * P1 + g2sq * abar2 * P2) / i1) +
           cap_unchecked((a2 * P2 + g1sq * c1 * P1) / i2);
  b.t[2] = cap_unchecked((a1 * P1 + g2sq * abar2 * P2) / i1) +
           cap_unchecked((a2 * P2 + g1sq * abar1 * P1) / i2);
  b.t[3] = cap_unchecked((cbar1 * P1 + g2sq * c2 * P2) / i1) +
           cap_unchecked((cbar2 * P2 + g1sq * c1 * P1) / i2);
  b.min_bound = *std::min_element(b.t.begin(), b.t.end());
  return b;
}

const std::array<BoundPairing, 4>& bound_pairings() {
  using enum MessageId;
  static const std::array<BoundPairing, 4> pairs = {{
      {MessageSet{U1, W2}, MessageSet{U2, V1, V2, W1}},
      {MessageSet{U1, V1, V2, W2}, MessageSet{U2, W1}},
      {MessageSet{U1, V2, W2}, MessageSet{U2, V1, W1}},
      {MessageSet{U1, V1, W2}, MessageSet{U2, V2, W1}},
  }};
  return pairs;
}

double mac_sum_capacity(const ChannelParams& params, Receiver rx) {
  if (rx == Receiver::Rx2) return cap(params.h1 * params.h1 * params.p1 + params.p2);
  return cap(params.h2 * params.h2 * params.p2 + params.p1);
}

double tin_sum_rate(const ChannelParams& params) {
  return cap(params.p1 / (1.0 + params.h2 * params.h2 * params.p2)) +
         cap(params.p2 / (1.0 + params.h1 * params.h1 * params.p1));
}

}  // namespace ginsum
