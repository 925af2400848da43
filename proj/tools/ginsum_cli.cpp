// ginsum: command-line front end over the C API.
//
// Exit codes: 0 success, 1 verification property failure, 2 usage or input
// error (including I/O failures).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ginsum/ginsum.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitUsage = 2;

struct BufferDeleter {
  void operator()(ginsum_buffer* b) const { ginsum_buffer_free(b); }
};
using Buffer = std::unique_ptr<ginsum_buffer, BufferDeleter>;

struct NetworkDeleter {
  void operator()(ginsum_network* n) const { ginsum_network_destroy(n); }
};
using Network = std::unique_ptr<ginsum_network, NetworkDeleter>;

struct Failure {
  int exit_code;
  std::string message;
};

void check(ginsum_status st) {
  if (st != GINSUM_OK) {
    throw Failure{kExitUsage, std::string(ginsum_status_name(st)) + ": " + ginsum_last_error()};
  }
}

Network make_network(double h1, double h2, double p1, double p2) {
  ginsum_network* raw = nullptr;
  check(ginsum_network_create(h1, h2, p1, p2, &raw));
  return Network(raw);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    while (!item.empty() && item.front() == ' ') item.erase(item.begin());
    while (!item.empty() && item.back() == ' ') item.pop_back();
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

uint32_t parse_restriction(const std::string& list) {
  static const std::pair<const char*, uint32_t> names[] = {
      {"U1", GINSUM_MSG_U1}, {"V1", GINSUM_MSG_V1}, {"W1", GINSUM_MSG_W1},
      {"U2", GINSUM_MSG_U2}, {"V2", GINSUM_MSG_V2}, {"W2", GINSUM_MSG_W2}};
  uint32_t mask = 0;
  for (const auto& item : split_list(list)) {
    bool found = false;
    for (const auto& [name, bit] : names) {
      if (item == name) {
        mask |= bit;
        found = true;
      }
    }
    if (!found) throw Failure{kExitUsage, "unknown message '" + item + "' in --restrict"};
  }
  if (mask == 0) throw Failure{kExitUsage, "--restrict needs at least one message"};
  return mask;
}

ginsum_split parse_split(const std::string& text) {
  const auto items = split_list(text);
  if (items.size() != 6) {
    throw Failure{kExitUsage, "--split needs six comma-separated fractions a1,b1,g1,a2,b2,g2"};
  }
  double raw[6];
  for (std::size_t k = 0; k < 6; ++k) {
    try {
      std::size_t used = 0;
      raw[k] = std::stod(items[k], &used);
      if (used != items[k].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Failure{kExitUsage, "cannot parse split fraction '" + items[k] + "'"};
    }
  }
  ginsum_split split{};
  check(ginsum_split_validate(raw, &split));
  return split;
}

// Writes via a temporary sibling so a failed write leaves no partial file.
void write_output(const std::string& path, const ginsum_buffer* buf) {
  if (path.empty() || path == "-") {
    std::cout.write(ginsum_buffer_data(buf), static_cast<std::streamsize>(ginsum_buffer_size(buf)));
    std::cout.flush();
    return;
  }
  const std::string tmp = path + ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (out) {
      out.write(ginsum_buffer_data(buf), static_cast<std::streamsize>(ginsum_buffer_size(buf)));
      out.close();
    }
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw Failure{kExitUsage, "IoFailure: cannot write '" + path + "'"};
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Failure{kExitUsage, "IoFailure: cannot write '" + path + "'"};
  }
}

struct ChannelFlags {
  double h1 = 0, h2 = 0, p1 = 1, p2 = 1;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--h1", h1, "cross gain Tx1 -> Rx2")->required();
    cmd->add_option("--h2", h2, "cross gain Tx2 -> Rx1")->required();
    cmd->add_option("--p1", p1, "power constraint at Tx1")->required();
    cmd->add_option("--p2", p2, "power constraint at Tx2")->required();
  }
};

struct SearchFlags {
  double grid_step = 0.05;
  int refine_iters = 200;
  int workers = 0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--grid-step", grid_step, "coarse grid resolution per simplex")
        ->capture_default_str();
    cmd->add_option("--refine-iters", refine_iters, "refinement passes per face")
        ->capture_default_str();
    cmd->add_option("--workers", workers, "worker threads (0 = all cores)")->capture_default_str();
  }

  ginsum_optimize_options options() const {
    ginsum_optimize_options o;
    ginsum_optimize_options_init(&o);
    o.grid_step = grid_step;
    o.refine_iters = refine_iters;
    o.workers = workers;
    return o;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sum rates and interference regimes of the 2x2 Gaussian interference network"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ginsum_version()));

  // classify
  auto* classify = app.add_subcommand("classify", "regime, sub-regions, message set (JSON)");
  ChannelFlags classify_ch;
  classify_ch.add_to(classify);

  // optimize
  auto* optimize = app.add_subcommand("optimize", "maximize the achievable sum rate (JSON)");
  ChannelFlags optimize_ch;
  SearchFlags optimize_search;
  std::string restrict_list;
  optimize_ch.add_to(optimize);
  optimize_search.add_to(optimize);
  optimize->add_option("--restrict", restrict_list, "allowed messages, e.g. U1,U2");

  // constraints
  auto* constraints = app.add_subcommand("constraints", "the 30 rate constraints of a split");
  ChannelFlags constraints_ch;
  std::string split_text;
  std::string constraints_format = "json";
  constraints_ch.add_to(constraints);
  constraints->add_option("--split", split_text, "a1,b1,g1,a2,b2,g2")->required();
  constraints->add_option("--format", constraints_format)
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  // sweep
  auto* sweep = app.add_subcommand("sweep", "regime / sum-rate map over (h1, h2)");
  ginsum_sweep_spec sweep_spec{};
  SearchFlags sweep_search;
  std::string sweep_format = "csv";
  std::string sweep_out;
  std::string sweep_svg;
  sweep->add_option("--h1-min", sweep_spec.h1_min)->required();
  sweep->add_option("--h1-max", sweep_spec.h1_max)->required();
  sweep->add_option("--h1-steps", sweep_spec.h1_steps)->required();
  sweep->add_option("--h2-min", sweep_spec.h2_min)->required();
  sweep->add_option("--h2-max", sweep_spec.h2_max)->required();
  sweep->add_option("--h2-steps", sweep_spec.h2_steps)->required();
  sweep->add_option("--p1", sweep_spec.p1)->required();
  sweep->add_option("--p2", sweep_spec.p2)->required();
  sweep->add_option("--format", sweep_format)
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sweep->add_option("--out", sweep_out, "output file (default stdout)");
  sweep->add_option("--svg", sweep_svg, "also write an SVG heatmap to this file");
  sweep_search.add_to(sweep);

  // verify
  auto* verify = app.add_subcommand("verify", "randomized property checks (JSON)");
  std::string suite = "all";
  ginsum_verify_options vopts;
  ginsum_verify_options_init(&vopts);
  bool timing = false;
  std::string verify_out;
  verify->add_option("--suite", suite, "all, t1, t2, t3, duality, table1")->capture_default_str();
  verify->add_option("--trials", vopts.trials)->capture_default_str();
  verify->add_option("--seed", vopts.seed)->capture_default_str();
  verify->add_option("--workers", vopts.workers, "worker threads (0 = all cores)")
      ->capture_default_str();
  verify->add_option("--opt-trials", vopts.optimizer_trials,
                     "instances for optimizer-based checks (-1 = min(trials, 25))")
      ->capture_default_str();
  verify->add_option("--subregion-trials", vopts.subregion_trials,
                     "very-strong two-message instances (-1 = opt-trials / 5)")
      ->capture_default_str();
  verify->add_flag("--timing", timing, "include elapsed seconds (output no longer reproducible)");
  verify->add_option("--out", verify_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*classify) {
      auto net = make_network(classify_ch.h1, classify_ch.h2, classify_ch.p1, classify_ch.p2);
      ginsum_buffer* out = nullptr;
      check(ginsum_classify_json(net.get(), &out));
      Buffer buf(out);
      write_output("", buf.get());
    } else if (*optimize) {
      auto net = make_network(optimize_ch.h1, optimize_ch.h2, optimize_ch.p1, optimize_ch.p2);
      auto o = optimize_search.options();
      if (!restrict_list.empty()) o.restrict_mask = parse_restriction(restrict_list);
      ginsum_buffer* out = nullptr;
      check(ginsum_optimize_json(net.get(), &o, &out));
      Buffer buf(out);
      write_output("", buf.get());
    } else if (*constraints) {
      auto net = make_network(constraints_ch.h1, constraints_ch.h2, constraints_ch.p1,
                              constraints_ch.p2);
      const auto split = parse_split(split_text);
      ginsum_buffer* out = nullptr;
      if (constraints_format == "csv") {
        check(ginsum_constraints_csv(net.get(), &split, &out));
      } else {
        check(ginsum_constraints_json(net.get(), &split, &out));
      }
      Buffer buf(out);
      write_output("", buf.get());
    } else if (*sweep) {
      sweep_spec.search = sweep_search.options();
      ginsum_buffer* csv = nullptr;
      ginsum_buffer* json = nullptr;
      ginsum_buffer* svg = nullptr;
      check(ginsum_sweep(&sweep_spec, sweep_format == "csv" ? &csv : nullptr,
                         sweep_format == "json" ? &json : nullptr,
                         sweep_svg.empty() ? nullptr : &svg));
      Buffer csv_buf(csv), json_buf(json), svg_buf(svg);
      write_output(sweep_out, sweep_format == "csv" ? csv_buf.get() : json_buf.get());
      if (svg_buf) {
        try {
          write_output(sweep_svg, svg_buf.get());
        } catch (const Failure&) {
          std::error_code ec;
          if (!sweep_out.empty() && sweep_out != "-") std::filesystem::remove(sweep_out, ec);
          throw;
        }
      }
    } else if (*verify) {
      vopts.include_timing = timing ? 1 : 0;
      ginsum_buffer* out = nullptr;
      int64_t failures = 0;
      check(ginsum_verify_json(suite.c_str(), &vopts, &failures, &out));
      Buffer buf(out);
      write_output(verify_out, buf.get());
      return failures == 0 ? kExitOk : kExitPropertyFailure;
    }
  } catch (const Failure& f) {
    std::cerr << "ginsum: " << f.message << '\n';
    return f.exit_code;
  }
  return kExitOk;
}
