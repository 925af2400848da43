#include "ginsum/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "ginsum/regimes.hpp"

namespace ginsum::io {

std::string format_number(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // also folds -0
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

ordered_json to_json(const ChannelParams& p) {
  return ordered_json{{"h1", p.h1}, {"h2", p.h2}, {"p1", p.p1}, {"p2", p.p2}};
}

ordered_json to_json(const PowerSplit& s) {
  return ordered_json{{"a1", s.tx1.direct}, {"b1", s.tx1.common}, {"g1", s.tx1.cross},
                      {"a2", s.tx2.direct}, {"b2", s.tx2.common}, {"g2", s.tx2.cross}};
}

ordered_json to_json(MessageSet s) {
  ordered_json arr = ordered_json::array();
  for (auto id : kAllMessages)
    if (s.contains(id)) arr.push_back(std::string(to_string(id)));
  return arr;
}

ordered_json to_json(const SubregionFlags& f) {
  return ordered_json{{"li_tin_optimal", f.li_tin_optimal},
                      {"vsi_two_message", f.vsi_two_message},
                      {"mi_h1h2_unity", f.mi_h1h2_unity},
                      {"mi_very_high_direct", f.mi_very_high_direct},
                      {"mi_weak_cross", f.mi_weak_cross},
                      {"mi_very_high_direct_mirror", f.mi_very_high_direct_mirror},
                      {"mi_weak_cross_mirror", f.mi_weak_cross_mirror}};
}

namespace {

std::vector<std::string> flag_names(const SubregionFlags& f) {
  std::vector<std::string> out;
  const auto j = to_json(f);
  for (const auto& [k, v] : j.items())
    if (v.get<bool>()) out.push_back(k);
  return out;
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += sep;
    out += p;
  }
  return out;
}

}  // namespace

ordered_json to_json(const RegimeReport& r) {
  ordered_json j;
  j["params"] = to_json(r.params);
  j["regime"] = std::string(to_string(r.regime));
  j["subregions"] = to_json(r.flags);
  j["messages"] = to_json(r.sufficient_messages);
  if (r.sum_capacity) {
    j["sum_capacity"] = *r.sum_capacity;
    if (auto cert = mixed_capacity_certificate(r.params)) {
      j["capacity_subregions"] = cert->subregions;
    }
  } else {
    j["sum_capacity"] = nullptr;
  }
  j["notes"] = r.notes;
  return j;
}

ordered_json to_json(const Instance& i) {
  ordered_json j;
  j["params"] = to_json(i.params);
  j["split"] = i.split ? to_json(*i.split) : ordered_json(nullptr);
  j["note"] = i.note;
  return j;
}

ordered_json to_json(const PropertyReport& r, bool include_timing) {
  ordered_json j;
  j["property_id"] = r.property_id;
  j["passed"] = r.passed();
  j["trials"] = r.trials;
  j["failures"] = r.failures;
  j["max_violation"] = r.max_violation;
  j["worst_instance"] = r.worst_instance ? to_json(*r.worst_instance) : ordered_json(nullptr);
  ordered_json asserts = ordered_json::array();
  for (const auto& a : r.assertions) {
    asserts.push_back({{"name", a.name},
                       {"tolerance", a.tolerance},
                       {"evaluated", a.evaluated},
                       {"failures", a.failures},
                       {"max_violation", a.evaluated > 0 ? ordered_json(a.max_violation)
                                                         : ordered_json(nullptr)}});
  }
  j["assertions"] = asserts;
  ordered_json metrics = ordered_json::object();
  for (const auto& [k, v] : r.metrics) metrics[k] = v;
  j["metrics"] = metrics;
  ordered_json ce = ordered_json::array();
  for (const auto& c : r.counterexamples) ce.push_back(to_json(c));
  j["counterexamples"] = ce;
  if (include_timing) j["elapsed_seconds"] = r.elapsed.count();
  return j;
}

ordered_json optimize_document(const ChannelParams& p, const OptimizeOptions& opts,
                               const OptimizeResult& r) {
  ordered_json j;
  j["params"] = to_json(p);
  j["restrict"] = opts.restrict_to ? to_json(*opts.restrict_to) : ordered_json(nullptr);
  j["grid_step"] = opts.grid_step;
  j["refine_iters"] = opts.refine_iters;
  j["best_value"] = r.best_value;
  j["best_split"] = to_json(r.best_split);
  j["active_messages"] = to_json(r.active_messages);
  j["evaluations"] = r.evaluations;
  const auto constraints = region_constraints(p, r.best_split);
  const auto bounds = sum_rate_bounds(p, r.best_split);
  j["bounds"] = {{"t1", bounds.t[0]}, {"t2", bounds.t[1]}, {"t3", bounds.t[2]},
                 {"t4", bounds.t[3]}, {"min", bounds.min_bound}};
  j["lp_value"] = max_sum_rate_lp(constraints).value;
  return j;
}

ordered_json constraints_document(const ChannelParams& p, const PowerSplit& s) {
  const auto constraints = region_constraints(p, s);
  const auto bounds = sum_rate_bounds(p, s);
  const auto noise = effective_noise(p, s);
  const auto lp = max_sum_rate_lp(constraints);
  const auto pairing = pairing_oracle(constraints);
  ordered_json j;
  j["ordering"] =
      "receiver 1 then receiver 2; subset mask 1..15 over (U1,V1,V2,W2) at Rx1 and "
      "(U2,V1,V2,W1) at Rx2, bit 0 = first message";
  j["params"] = to_json(p);
  j["split"] = to_json(s);
  j["effective_noise"] = {{"i1", noise.i1}, {"i2", noise.i2}};
  ordered_json rows = ordered_json::array();
  for (std::size_t k = 0; k < constraints.size(); ++k) {
    const auto& c = constraints[k];
    rows.push_back({{"index", k},
                    {"receiver", static_cast<int>(c.receiver)},
                    {"subset", to_json(c.subset)},
                    {"rhs", c.rhs}});
  }
  j["constraints"] = rows;
  j["bounds"] = {{"t1", bounds.t[0]}, {"t2", bounds.t[1]}, {"t3", bounds.t[2]},
                 {"t4", bounds.t[3]}, {"min", bounds.min_bound}};
  j["pairing"] = {{"value", pairing.value},
                  {"rx1_subset", to_json(pairing.best.rx1_subset)},
                  {"rx2_subset", to_json(pairing.best.rx2_subset)}};
  ordered_json argmax;
  for (auto id : kAllMessages) argmax[std::string(to_string(id))] = lp.argmax[id];
  j["lp"] = {{"value", lp.value}, {"argmax", argmax}};
  return j;
}

std::string constraints_csv(const ChannelParams& p, const PowerSplit& s) {
  const auto constraints = region_constraints(p, s);
  const auto bounds = sum_rate_bounds(p, s);
  const auto lp = max_sum_rate_lp(constraints);
  std::ostringstream out;
  out << "# ordering: receiver 1 then 2; subset mask 1..15 over (U1,V1,V2,W2) at Rx1, "
         "(U2,V1,V2,W1) at Rx2\n";
  out << "index,receiver,subset,rhs\n";
  for (std::size_t k = 0; k < constraints.size(); ++k) {
    const auto& c = constraints[k];
    out << k << ',' << static_cast<int>(c.receiver) << ',' << c.subset.to_string(';') << ','
        << format_number(c.rhs) << '\n';
  }
  out << "# t1=" << format_number(bounds.t[0]) << " t2=" << format_number(bounds.t[1])
      << " t3=" << format_number(bounds.t[2]) << " t4=" << format_number(bounds.t[3])
      << " min=" << format_number(bounds.min_bound) << " lp=" << format_number(lp.value)
      << '\n';
  return out.str();
}

ordered_json verify_document(const std::string& suite, const VerifyOptions& opts,
                             const std::vector<PropertyReport>& reports,
                             bool include_timing) {
  ordered_json j;
  j["suite"] = suite;
  j["trials"] = opts.trials;
  j["seed"] = opts.seed;
  bool ok = true;
  ordered_json arr = ordered_json::array();
  for (const auto& r : reports) {
    ok = ok && r.passed();
    arr.push_back(to_json(r, include_timing));
  }
  j["passed"] = ok;
  j["reports"] = arr;
  return j;
}

std::string sweep_csv(const std::vector<SweepPoint>& points) {
  std::ostringstream out;
  out << kSweepCsvHeader << '\n';
  for (const auto& pt : points) {
    const auto& r = pt.report;
    out << format_number(r.params.h1) << ',' << format_number(r.params.h2) << ','
        << to_string(r.regime) << ',' << format_number(pt.optimum.best_value) << ','
        << pt.optimum.active_messages.to_string(';') << ','
        << join(flag_names(r.flags), ';') << ',' << (r.sum_capacity ? "true" : "false")
        << '\n';
  }
  return out.str();
}

ordered_json sweep_document(const SweepSpec& spec, const std::vector<SweepPoint>& points) {
  ordered_json j;
  j["h1_range"] = {{"min", spec.h1.min}, {"max", spec.h1.max}, {"steps", spec.h1.steps}};
  j["h2_range"] = {{"min", spec.h2.min}, {"max", spec.h2.max}, {"steps", spec.h2.steps}};
  j["p1"] = spec.p1;
  j["p2"] = spec.p2;
  ordered_json rows = ordered_json::array();
  for (const auto& pt : points) {
    ordered_json row;
    row["h1"] = pt.report.params.h1;
    row["h2"] = pt.report.params.h2;
    row["regime"] = std::string(to_string(pt.report.regime));
    row["max_sum_rate"] = pt.optimum.best_value;
    row["active_messages"] = to_json(pt.optimum.active_messages);
    row["subregions"] = flag_names(pt.report.flags);
    row["capacity_known"] = pt.report.sum_capacity.has_value();
    rows.push_back(row);
  }
  j["points"] = rows;
  return j;
}

namespace {

// 256-step ramp from dark gray to orange.
std::string ramp_color(double t) {
  const int k = std::clamp(static_cast<int>(std::floor(t * 255.0 + 0.5)), 0, 255);
  const double u = k / 255.0;
  auto mix = [u](int a, int b) { return static_cast<int>(std::lround(a + (b - a) * u)); };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", mix(48, 255), mix(48, 140), mix(48, 0));
  return buf;
}

}  // namespace

std::string sweep_svg(const SweepSpec& spec, const std::vector<SweepPoint>& points) {
  constexpr double left = 70, top = 30, plot = 400, legend_w = 20;
  const int nx = spec.h1.steps, ny = spec.h2.steps;
  const double cw = plot / nx, ch = plot / ny;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& pt : points) {
    lo = std::min(lo, pt.optimum.best_value);
    hi = std::max(hi, pt.optimum.best_value);
  }
  const double span = hi > lo ? hi - lo : 1.0;
  auto fmt = [](double v) { return format_number(v, 6); };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << fmt(left + plot + 130) << "\" height=\"" << fmt(top + plot + 60) << "\">\n"
      << "<title>max sum rate over (h1, h2), P1=" << fmt(spec.p1) << " P2=" << fmt(spec.p2)
      << "</title>\n";
  for (std::size_t k = 0; k < points.size(); ++k) {
    const int i = static_cast<int>(k) / ny, j = static_cast<int>(k) % ny;
    const double v = points[k].optimum.best_value;
    svg << "<rect x=\"" << fmt(left + i * cw) << "\" y=\"" << fmt(top + plot - (j + 1) * ch)
        << "\" width=\"" << fmt(cw) << "\" height=\"" << fmt(ch) << "\" fill=\""
        << ramp_color((v - lo) / span) << "\"/>\n";
  }
  // Regime boundaries, placed between the cell centres they separate.
  auto xpos = [&](double h) {
    return left + 0.5 * cw + (h - spec.h1.min) / (spec.h1.max - spec.h1.min) * (nx - 1) * cw;
  };
  auto ypos = [&](double h) {
    return top + plot - 0.5 * ch -
           (h - spec.h2.min) / (spec.h2.max - spec.h2.min) * (ny - 1) * ch;
  };
  auto vline = [&](double h, const char* dash) {
    if (h < spec.h1.min || h > spec.h1.max) return;
    svg << "<line x1=\"" << fmt(xpos(h)) << "\" y1=\"" << fmt(top) << "\" x2=\""
        << fmt(xpos(h)) << "\" y2=\"" << fmt(top + plot)
        << "\" stroke=\"white\" stroke-width=\"1.5\"" << dash << "/>\n";
  };
  auto hline = [&](double h, const char* dash) {
    if (h < spec.h2.min || h > spec.h2.max) return;
    svg << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(ypos(h)) << "\" x2=\""
        << fmt(left + plot) << "\" y2=\"" << fmt(ypos(h))
        << "\" stroke=\"white\" stroke-width=\"1.5\"" << dash << "/>\n";
  };
  vline(1.0, "");
  hline(1.0, "");
  vline(std::sqrt(spec.p2 + 1.0), " stroke-dasharray=\"4 3\"");
  hline(std::sqrt(spec.p1 + 1.0), " stroke-dasharray=\"4 3\"");

  svg << "<rect x=\"" << fmt(left) << "\" y=\"" << fmt(top) << "\" width=\"" << fmt(plot)
      << "\" height=\"" << fmt(plot) << "\" fill=\"none\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << fmt(left + plot / 2) << "\" y=\"" << fmt(top + plot + 35)
      << "\" text-anchor=\"middle\" font-size=\"14\">h1 [" << fmt(spec.h1.min) << ", "
      << fmt(spec.h1.max) << "]</text>\n";
  svg << "<text x=\"20\" y=\"" << fmt(top + plot / 2) << "\" font-size=\"14\" transform=\"rotate(-90 20 "
      << fmt(top + plot / 2) << ")\" text-anchor=\"middle\">h2 [" << fmt(spec.h2.min) << ", "
      << fmt(spec.h2.max) << "]</text>\n";

  const double lx = left + plot + 30;
  for (int k = 0; k < 256; ++k) {
    svg << "<rect x=\"" << fmt(lx) << "\" y=\"" << fmt(top + plot - (k + 1) * plot / 256.0)
        << "\" width=\"" << fmt(legend_w) << "\" height=\"" << fmt(plot / 256.0 + 0.5)
        << "\" fill=\"" << ramp_color(k / 255.0) << "\"/>\n";
  }
  svg << "<text x=\"" << fmt(lx + legend_w + 5) << "\" y=\"" << fmt(top + 10)
      << "\" font-size=\"12\">max " << fmt(hi) << "</text>\n";
  svg << "<text x=\"" << fmt(lx + legend_w + 5) << "\" y=\"" << fmt(top + plot)
      << "\" font-size=\"12\">min " << fmt(lo) << "</text>\n";
  svg << "<text x=\"" << fmt(lx) << "\" y=\"" << fmt(top + plot + 35)
      << "\" font-size=\"11\">bits/use</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace ginsum::io
