#pragma once

// Closed-form Gaussian rate expressions for the six-message network.

#include <array>
#include <vector>

#include "ginsum/model.hpp"

namespace ginsum {

/// C(x) = 0.5 log2(1 + x). Throws NegativeArgument for x < 0.
double cap(double x);

/// Received powers of the four messages decoded at one receiver, in
/// decode_order(rx).
struct ReceivedPowers {
  Receiver receiver = Receiver::Rx1;
  std::array<double, 4> power{};

  /// Power of `id` at this receiver; 0 for messages it does not decode.
  double at(MessageId id) const;
};

ReceivedPowers received_powers(const ChannelParams& params, const PowerSplit& split,
                               Receiver rx);

/// Unit noise plus the undecoded interference at each receiver:
///   i1 = 1 + h2^2 a2 P2 + g1 P1,   i2 = 1 + h1^2 a1 P1 + g2 P2.
struct EffectiveNoise {
  double i1 = 1.0;
  double i2 = 1.0;
};

EffectiveNoise effective_noise(const ChannelParams& params, const PowerSplit& split);

/// The 30 region inequalities. Receiver 1 first, then receiver 2; within a
/// receiver, subset mask m = 1..15 where bit k selects decode_order(rx)[k].
std::vector<RateConstraint> region_constraints(const ChannelParams& params,
                                               const PowerSplit& split);

inline constexpr int kConstraintsPerReceiver = 15;
inline constexpr int kConstraintCount = 2 * kConstraintsPerReceiver;

/// Index of (rx, subset) in the canonical region_constraints ordering, or -1
/// if the subset is empty or not decodable at rx.
int constraint_index(Receiver rx, MessageSet subset);

struct SumRateBounds {
  std::array<double, 4> t{};
  double min_bound = 0.0;
};

/// The four sum-rate bounds T1..T4 and their minimum, evaluated from their
/// closed forms.
SumRateBounds sum_rate_bounds(const ChannelParams& params, const PowerSplit& split);

/// The (Rx1 subset, Rx2 subset) constraint pair whose rhs values add up to T_k
/// (k = 0..3).
struct BoundPairing {
  MessageSet rx1;
  MessageSet rx2;
};
const std::array<BoundPairing, 4>& bound_pairings();

/// Sum capacity of the multiple-access channel seen at `rx`:
/// Rx2 -> C(h1^2 P1 + P2), Rx1 -> C(h2^2 P2 + P1).
double mac_sum_capacity(const ChannelParams& params, Receiver rx);

/// Sum rate of U1, U2 alone with interference treated as noise.
double tin_sum_rate(const ChannelParams& params);

}  // namespace ginsum
