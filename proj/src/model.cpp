#include "ginsum/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace ginsum {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositivePower: return "NonPositivePower";
    case ErrorCode::NegativeGain: return "NegativeGain";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::SimplexViolation: return "SimplexViolation";
    case ErrorCode::RangeViolation: return "RangeViolation";
    case ErrorCode::NegativeArgument: return "NegativeArgument";
    case ErrorCode::ZeroGain: return "ZeroGain";
    case ErrorCode::NumericalInstability: return "NumericalInstability";
    case ErrorCode::EmptyRestriction: return "EmptyRestriction";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

ChannelParams validate_params(double h1, double h2, double p1, double p2) {
  for (double v : {h1, h2, p1, p2}) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::NonFiniteInput, "channel parameters must be finite");
    }
  }
  if (h1 < 0.0 || h2 < 0.0) {
    throw Error(ErrorCode::NegativeGain, "cross gains h1, h2 must be >= 0");
  }
  if (p1 <= 0.0 || p2 <= 0.0) {
    throw Error(ErrorCode::NonPositivePower, "powers P1, P2 must be > 0");
  }
  return ChannelParams{h1, h2, p1, p2};
}

std::string_view to_string(MessageId id) {
  switch (id) {
    case MessageId::U1: return "U1";
    case MessageId::V1: return "V1";
    case MessageId::W1: return "W1";
    case MessageId::U2: return "U2";
    case MessageId::V2: return "V2";
    case MessageId::W2: return "W2";
  }
  return "?";
}

std::optional<MessageId> parse_message_id(std::string_view name) {
  for (auto id : kAllMessages) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

int MessageSet::size() const { return std::popcount(mask_); }

std::string MessageSet::to_string(char sep) const {
  std::string out;
  for (auto id : kAllMessages) {
    if (!contains(id)) continue;
    if (!out.empty()) out += sep;
    out += ginsum::to_string(id);
  }
  return out;
}

MessageSet parse_message_set(std::string_view list) {
  MessageSet set;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    auto end = list.find(',', pos);
    if (end == std::string_view::npos) end = list.size();
    auto token = list.substr(pos, end - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    if (!token.empty()) {
      auto id = parse_message_id(token);
      if (!id) {
        throw Error(ErrorCode::InvalidArgument,
                    "unknown message '" + std::string(token) + "'");
      }
      set.insert(*id);
    }
    pos = end + 1;
  }
  return set;
}

const std::array<MessageId, 4>& decode_order(Receiver rx) {
  static constexpr std::array<MessageId, 4> rx1 = {MessageId::U1, MessageId::V1,
                                                   MessageId::V2, MessageId::W2};
  static constexpr std::array<MessageId, 4> rx2 = {MessageId::U2, MessageId::V1,
                                                   MessageId::V2, MessageId::W1};
  return rx == Receiver::Rx1 ? rx1 : rx2;
}

MessageSet decode_set(Receiver rx) {
  MessageSet s;
  for (auto id : decode_order(rx)) s.insert(id);
  return s;
}

double PowerSplit::fraction(MessageId id) const {
  switch (id) {
    case MessageId::U1: return tx1.direct;
    case MessageId::V1: return tx1.common;
    case MessageId::W1: return tx1.cross;
    case MessageId::U2: return tx2.direct;
    case MessageId::V2: return tx2.common;
    case MessageId::W2: return tx2.cross;
  }
  return 0.0;
}

std::array<double, 6> PowerSplit::as_array() const {
  return {tx1.direct, tx1.common, tx1.cross, tx2.direct, tx2.common, tx2.cross};
}

PowerSplit PowerSplit::from_array(std::span<const double, 6> v) {
  return PowerSplit{{v[0], v[1], v[2]}, {v[3], v[4], v[5]}};
}

namespace {

TxSplit normalize_row(double a, double b, double g, int index) {
  for (double v : {a, b, g}) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::NonFiniteInput, "power fractions must be finite");
    }
    if (v < 0.0 || v > 1.0) {
      throw Error(ErrorCode::RangeViolation,
                  "power fractions of transmitter " + std::to_string(index) +
                      " must lie in [0, 1]");
    }
  }
  const double sum = a + b + g;
  if (std::abs(sum - 1.0) > kSimplexRejectTol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "power fractions of transmitter " << index << " sum to " << sum
        << ", expected 1";
    throw Error(ErrorCode::SimplexViolation, msg.str());
  }
  if (sum == 1.0) return {a, b, g};
  // Rescale, then put the residual rounding on the largest entry.
  TxSplit row{a / sum, b / sum, g / sum};
  double* largest = &row.direct;
  if (row.common > *largest) largest = &row.common;
  if (row.cross > *largest) largest = &row.cross;
  *largest = 0.0;
  *largest = std::max(0.0, 1.0 - row.total());
  return row;
}

}  // namespace

PowerSplit validate_split(double a1, double b1, double g1, double a2, double b2,
                          double g2) {
  return PowerSplit{normalize_row(a1, b1, g1, 1), normalize_row(a2, b2, g2, 2)};
}

PowerSplit validate_split(std::span<const double, 6> raw) {
  return validate_split(raw[0], raw[1], raw[2], raw[3], raw[4], raw[5]);
}

double RateTuple::sum() const {
  double s = 0.0;
  for (double r : rate) s += r;
  return s;
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::LowInterference: return "LI";
    case Regime::MixedInterferenceCase1: return "MI1";
    case Regime::MixedInterferenceCase2: return "MI2";
    case Regime::StrongInterference: return "SI";
    case Regime::VeryStrongInterference: return "VSI";
  }
  return "?";
}

}  // namespace ginsum
