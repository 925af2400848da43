#include "ginsum/regimes.hpp"

#include <cmath>

#include "ginsum/rates.hpp"

namespace ginsum {

Regime classify(const ChannelParams& p) {
  const bool weak1 = p.h1 <= 1.0;
  const bool weak2 = p.h2 <= 1.0;
  if (weak1 && weak2) return Regime::LowInterference;
  if (!weak1 && weak2) return Regime::MixedInterferenceCase1;
  if (weak1 && !weak2) return Regime::MixedInterferenceCase2;
  if (p.h1 * p.h1 >= p.p2 + 1.0 && p.h2 * p.h2 >= p.p1 + 1.0) {
    return Regime::VeryStrongInterference;
  }
  return Regime::StrongInterference;
}

double li_tin_margin(const ChannelParams& p) {
  return p.h1 * (1.0 + p.h2 * p.h2 * p.p2) + p.h2 * (1.0 + p.h1 * p.h1 * p.p1);
}

bool li_tin_condition(const ChannelParams& p) { return li_tin_margin(p) <= 1.0; }

double vsi_two_message_margin(const ChannelParams& p) {
  if (p.h1 <= 0.0 || p.h2 <= 0.0) {
    throw Error(ErrorCode::ZeroGain,
                "very-strong sub-region condition needs h1 > 0 and h2 > 0");
  }
  return (1.0 + p.p2) / p.h1 + (1.0 + p.p1) / p.h2;
}

bool vsi_two_message_condition(const ChannelParams& p) {
  return vsi_two_message_margin(p) <= 1.0;
}

namespace {

struct MixedFlags {
  bool case1 = false, case2 = false;
  bool unity = false;
  bool very_high = false, weak = false;
  bool very_high_mirror = false, weak_mirror = false;
};

MixedFlags mixed_flags(const ChannelParams& p) {
  MixedFlags f;
  const double g1 = p.h1 * p.h1, g2 = p.h2 * p.h2;
  f.case1 = p.h1 >= 1.0 && p.h2 <= 1.0;
  f.case2 = p.h2 >= 1.0 && p.h1 <= 1.0;
  const bool unity = std::abs(p.h1 * p.h2 - 1.0) <= kUnityProductTol;
  f.unity = (f.case1 || f.case2) && unity;
  f.very_high = f.case1 && g1 >= 1.0 + p.p2;
  f.weak = f.case1 && g2 <= 1.0 / (1.0 + g1 * p.p1);
  f.very_high_mirror = f.case2 && g2 >= 1.0 + p.p1;
  f.weak_mirror = f.case2 && g1 <= 1.0 / (1.0 + g2 * p.p2);
  return f;
}

}  // namespace

std::optional<CapacityCertificate> mixed_capacity_certificate(const ChannelParams& p) {
  const auto f = mixed_flags(p);
  CapacityCertificate cert;
  if (f.unity) cert.subregions.emplace_back("h1h2_unity");
  if (f.very_high) cert.subregions.emplace_back("very_high_direct");
  if (f.weak) cert.subregions.emplace_back("weak_cross");
  if (f.very_high_mirror) cert.subregions.emplace_back("very_high_direct_mirror");
  if (f.weak_mirror) cert.subregions.emplace_back("weak_cross_mirror");
  if (cert.subregions.empty()) return std::nullopt;
  // Case 1 is a MAC at Rx2, case 2 a MAC at Rx1. Both hold only at
  // h1 = h2 = 1, where the two capacities coincide.
  const bool case1 = f.case1 && (f.unity || f.very_high || f.weak);
  cert.value = mac_sum_capacity(p, case1 ? Receiver::Rx2 : Receiver::Rx1);
  return cert;
}

TransformedNetwork transform(const ChannelParams& p) {
  if (p.h1 <= 0.0 || p.h2 <= 0.0) {
    throw Error(ErrorCode::ZeroGain, "transform needs h1 > 0 and h2 > 0");
  }
  TransformedNetwork t;
  t.params = ChannelParams{1.0 / p.h1, 1.0 / p.h2, p.h1 * p.h1 * p.p1,
                           p.h2 * p.h2 * p.p2};
  t.role_swap = true;
  return t;
}

MessageSet table_message_set(Regime regime, const SubregionFlags& flags) {
  using enum MessageId;
  switch (regime) {
    case Regime::LowInterference:
      return flags.li_tin_optimal ? MessageSet{U1, U2} : MessageSet{U1, V1, U2, V2};
    case Regime::MixedInterferenceCase1:
      return MessageSet{U2, W1};
    case Regime::MixedInterferenceCase2:
      return MessageSet{U1, W2};
    case Regime::StrongInterference:
      return MessageSet{W1, V1, W2, V2};
    case Regime::VeryStrongInterference:
      return flags.vsi_two_message ? MessageSet{W1, W2} : MessageSet{W1, V1, W2, V2};
  }
  return MessageSet::all();
}

RegimeReport regime_report(const ChannelParams& p) {
  RegimeReport r;
  r.params = p;
  r.regime = classify(p);
  r.flags.li_tin_optimal = li_tin_condition(p);
  r.flags.vsi_two_message = p.h1 > 0.0 && p.h2 > 0.0 && vsi_two_message_condition(p);
  const auto mf = mixed_flags(p);
  r.flags.mi_h1h2_unity = mf.unity;
  r.flags.mi_very_high_direct = mf.very_high;
  r.flags.mi_weak_cross = mf.weak;
  r.flags.mi_very_high_direct_mirror = mf.very_high_mirror;
  r.flags.mi_weak_cross_mirror = mf.weak_mirror;
  r.sufficient_messages = table_message_set(r.regime, r.flags);
  if (auto cert = mixed_capacity_certificate(p)) r.sum_capacity = cert->value;

  if (r.regime == Regime::StrongInterference) {
    const bool vs1 = p.h1 * p.h1 >= p.p2 + 1.0;
    const bool vs2 = p.h2 * p.h2 >= p.p1 + 1.0;
    if (vs1 != vs2) {
      r.notes.emplace_back(
          "only one cross gain reaches its very-strong threshold; classified as SI");
    }
  }
  if (r.regime == Regime::LowInterference && r.sum_capacity) {
    r.notes.emplace_back(
        "a unit cross gain sits on the mixed-interference boundary; certificate applies");
  }
  return r;
}

}  // namespace ginsum
