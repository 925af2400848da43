#pragma once

// Interference regime classification, sub-region predicates, sufficient
// message sets and sum-capacity certificates.
//
// Boundary tie-breaks (the regime inequalities overlap on their edges):
//   * h1 <= 1 and h2 <= 1 is LI, so h = 1 resolves toward LI / away from MI.
//   * Exactly one gain above 1 is MI (case 1 if it is h1, case 2 if h2).
//   * Both gains above 1: VSI when h1^2 >= P2 + 1 and h2^2 >= P1 + 1
//     (equality counts as VSI), otherwise SI. This includes the asymmetric
//     case where only one gain clears its very-strong threshold.

#include <optional>
#include <string>
#include <vector>

#include "ginsum/model.hpp"

namespace ginsum {

Regime classify(const ChannelParams& params);

/// h1 (1 + h2^2 P2) + h2 (1 + h1^2 P1) <= 1.
bool li_tin_condition(const ChannelParams& params);
double li_tin_margin(const ChannelParams& params);

/// (1 + P2) / h1 + (1 + P1) / h2 <= 1. Throws ZeroGain when a gain is 0.
bool vsi_two_message_condition(const ChannelParams& params);
double vsi_two_message_margin(const ChannelParams& params);

inline constexpr double kUnityProductTol = 1e-12;

struct CapacityCertificate {
  double value = 0.0;
  /// Every satisfied sub-region label, e.g. "h1h2_unity", "very_high_direct",
  /// "weak_cross" and their "_mirror" forms for the second mixed case.
  std::vector<std::string> subregions;
};

std::optional<CapacityCertificate> mixed_capacity_certificate(const ChannelParams& params);

struct TransformedNetwork {
  ChannelParams params;
  bool role_swap = true;  // U_i and W_i exchange roles
};

/// (h1, h2, P1, P2) -> (1/h1, 1/h2, h1^2 P1, h2^2 P2). Throws ZeroGain.
TransformedNetwork transform(const ChannelParams& params);

/// Message sets sufficient for the maximum achievable sum rate.
MessageSet table_message_set(Regime regime, const SubregionFlags& flags);

RegimeReport regime_report(const ChannelParams& params);

}  // namespace ginsum
