#pragma once

// Domain types for the 2x2 Gaussian interference network in standard form:
//
//   Y1 = X1 + h2 X2 + Z1
//   Y2 = X2 + h1 X1 + Z2,      Z1, Z2 ~ N(0, 1)
//
// Each transmitter i carries three messages: U_i (direct private), V_i
// (common, decoded by both receivers) and W_i (cross private).

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ginsum {

enum class ErrorCode {
  NonPositivePower,
  NegativeGain,
  NonFiniteInput,
  SimplexViolation,
  RangeViolation,
  NegativeArgument,
  ZeroGain,
  NumericalInstability,
  EmptyRestriction,
  InvalidArgument,
  IoFailure,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct ChannelParams {
  double h1 = 0.0;  // cross gain Tx1 -> Rx2
  double h2 = 0.0;  // cross gain Tx2 -> Rx1
  double p1 = 1.0;
  double p2 = 1.0;

  friend bool operator==(const ChannelParams&, const ChannelParams&) = default;
};

ChannelParams validate_params(double h1, double h2, double p1, double p2);

enum class Receiver : int { Rx1 = 1, Rx2 = 2 };

/// Message identifiers; the underlying value is the slot in a RateTuple and
/// the bit position in a MessageSet.
enum class MessageId : std::uint8_t { U1 = 0, V1, W1, U2, V2, W2 };

inline constexpr std::array<MessageId, 6> kAllMessages = {
    MessageId::U1, MessageId::V1, MessageId::W1,
    MessageId::U2, MessageId::V2, MessageId::W2};

std::string_view to_string(MessageId id);
std::optional<MessageId> parse_message_id(std::string_view name);

class MessageSet {
 public:
  constexpr MessageSet() = default;
  constexpr MessageSet(std::initializer_list<MessageId> ids) {
    for (auto id : ids) insert(id);
  }
  static constexpr MessageSet from_mask(std::uint8_t mask) {
    MessageSet s;
    s.mask_ = mask & 0x3F;
    return s;
  }
  static constexpr MessageSet all() { return from_mask(0x3F); }

  constexpr void insert(MessageId id) { mask_ |= bit(id); }
  constexpr void erase(MessageId id) { mask_ &= static_cast<std::uint8_t>(~bit(id)); }
  constexpr bool contains(MessageId id) const { return (mask_ & bit(id)) != 0; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr bool is_subset_of(MessageSet other) const {
    return (mask_ & ~other.mask_) == 0;
  }
  constexpr std::uint8_t mask() const { return mask_; }
  int size() const;

  constexpr MessageSet operator|(MessageSet o) const { return from_mask(mask_ | o.mask_); }
  constexpr MessageSet operator&(MessageSet o) const { return from_mask(mask_ & o.mask_); }
  friend constexpr bool operator==(MessageSet, MessageSet) = default;

  /// Names in canonical U1,V1,W1,U2,V2,W2 order.
  std::string to_string(char sep = ',') const;

 private:
  static constexpr std::uint8_t bit(MessageId id) {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(id));
  }
  std::uint8_t mask_ = 0;
};

/// Parses "U1,V2" style lists. Throws InvalidArgument on unknown names.
MessageSet parse_message_set(std::string_view list);

/// Messages decoded at a receiver, in the fixed order used for subset masks:
/// Rx1 -> (U1, V1, V2, W2), Rx2 -> (U2, V1, V2, W1).
const std::array<MessageId, 4>& decode_order(Receiver rx);
MessageSet decode_set(Receiver rx);

/// Power fractions of one transmitter over its (U, V, W) messages.
struct TxSplit {
  double direct = 1.0;  // alpha
  double common = 0.0;  // beta
  double cross = 0.0;   // gamma

  double total() const { return direct + common + cross; }
  friend bool operator==(const TxSplit&, const TxSplit&) = default;
};

/// Both transmitters' fractions. Rows produced by validate_split sum to one;
/// the optimizer may additionally emit an all-zero row for a transmitter it
/// keeps silent under a message restriction.
struct PowerSplit {
  TxSplit tx1;
  TxSplit tx2;

  double fraction(MessageId id) const;
  std::array<double, 6> as_array() const;
  static PowerSplit from_array(std::span<const double, 6> v);

  friend bool operator==(const PowerSplit&, const PowerSplit&) = default;
};

inline constexpr double kSimplexRenormTol = 1e-12;
inline constexpr double kSimplexRejectTol = 1e-9;

PowerSplit validate_split(double a1, double b1, double g1, double a2, double b2,
                          double g2);
PowerSplit validate_split(std::span<const double, 6> raw);

/// Achievable rates (bits per channel use), indexed by MessageId.
struct RateTuple {
  std::array<double, 6> rate{};

  double& operator[](MessageId id) { return rate[static_cast<int>(id)]; }
  double operator[](MessageId id) const { return rate[static_cast<int>(id)]; }
  double sum() const;
};

struct RateConstraint {
  Receiver receiver = Receiver::Rx1;
  MessageSet subset;
  double rhs = 0.0;
};

enum class Regime {
  LowInterference,
  MixedInterferenceCase1,  // h1 >= 1, h2 <= 1
  MixedInterferenceCase2,  // h2 >= 1, h1 <= 1
  StrongInterference,
  VeryStrongInterference,
};

/// Short labels: LI, MI1, MI2, SI, VSI.
std::string_view to_string(Regime r);

struct SubregionFlags {
  bool li_tin_optimal = false;
  bool vsi_two_message = false;
  bool mi_h1h2_unity = false;
  bool mi_very_high_direct = false;         // h1^2 >= 1 + P2, h2 <= 1
  bool mi_weak_cross = false;               // h2^2 <= 1 / (1 + h1^2 P1), h1 >= 1
  bool mi_very_high_direct_mirror = false;  // h2^2 >= 1 + P1, h1 <= 1
  bool mi_weak_cross_mirror = false;        // h1^2 <= 1 / (1 + h2^2 P2), h2 >= 1

  bool any_mixed() const {
    return mi_h1h2_unity || mi_very_high_direct || mi_weak_cross ||
           mi_very_high_direct_mirror || mi_weak_cross_mirror;
  }
  friend bool operator==(const SubregionFlags&, const SubregionFlags&) = default;
};

struct RegimeReport {
  ChannelParams params;
  Regime regime = Regime::LowInterference;
  SubregionFlags flags;
  MessageSet sufficient_messages;
  std::optional<double> sum_capacity;
  std::vector<std::string> notes;
};

}  // namespace ginsum
