#pragma once

// Machine-readable renderings: JSON documents, CSV tables, SVG heatmap.

#include <string>
#include <vector>

#include <json.hpp>

#include "ginsum/model.hpp"
#include "ginsum/optimizer.hpp"
#include "ginsum/rates.hpp"
#include "ginsum/region_lp.hpp"
#include "ginsum/sweep.hpp"
#include "ginsum/verifier.hpp"

namespace ginsum::io {

using nlohmann::ordered_json;

/// Locale-independent shortest form with at most `digits` significant digits.
std::string format_number(double v, int digits = 12);

ordered_json to_json(const ChannelParams& p);
ordered_json to_json(const PowerSplit& s);
ordered_json to_json(MessageSet s);
ordered_json to_json(const SubregionFlags& f);
ordered_json to_json(const RegimeReport& r);
ordered_json to_json(const Instance& i);
ordered_json to_json(const PropertyReport& r, bool include_timing = false);

/// Optimizer output plus, for transparency, the LP maximum at the optimal split.
ordered_json optimize_document(const ChannelParams& p, const OptimizeOptions& opts,
                               const OptimizeResult& r);

/// The 30 constraints with bounds, pairing oracle and LP value.
ordered_json constraints_document(const ChannelParams& p, const PowerSplit& s);
std::string constraints_csv(const ChannelParams& p, const PowerSplit& s);

ordered_json verify_document(const std::string& suite, const VerifyOptions& opts,
                             const std::vector<PropertyReport>& reports,
                             bool include_timing = false);

inline constexpr const char* kSweepCsvHeader =
    "h1,h2,regime,max_sum_rate,active_messages,subregions,capacity_known";

std::string sweep_csv(const std::vector<SweepPoint>& points);
ordered_json sweep_document(const SweepSpec& spec, const std::vector<SweepPoint>& points);
std::string sweep_svg(const SweepSpec& spec, const std::vector<SweepPoint>& points);

/// Serialized JSON text (two-space indent, trailing newline).
std::string dump(const ordered_json& j);

}  // namespace ginsum::io
