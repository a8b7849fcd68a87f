// Command-line surface: subcommand parsing, stream plumbing, and the exit
// code contract (0 ok, 1 usage, 2 bad data, 3 budget exceeded).
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "panelcross/analysis.hpp"
#include "panelcross/crossings.hpp"
#include "panelcross/io.hpp"
#include "panelcross/model.hpp"
#include "panelcross/sigma.hpp"

namespace panelcross {

namespace detail {

inline InstanceFormat pick_format(const std::string& path, const std::string& format) {
  if (format == "csv") return InstanceFormat::Csv;
  if (format == "json") return InstanceFormat::Json;
  return guess_format(path);
}

inline OpdInstance read_instance(const std::string& path, const std::string& format) {
  const InstanceFormat fmt = pick_format(path, format);
  if (path == "-") return load_instance(std::cin, fmt);
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return load_instance(in, fmt);
}

inline void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  out << text;
}

inline std::string fmt_double(double v, const char* spec = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

// Minimum over every category ordering by plain enumeration; the layout
// engine prices each candidate. Ties go to the lexicographically smallest
// bottom-to-top order, matching the branch-and-bound search.
inline SigmaSearchResult oracle_sigma(const OpdInstance& inst, long long budget) {
  long long orderings = 1;
  for (int i = 2; i <= inst.k(); ++i) {
    orderings *= i;
    if (orderings > budget) throw BudgetError("too many orderings for oracle");
  }
  std::vector<int> order(static_cast<std::size_t>(inst.k()));
  for (int c = 0; c < inst.k(); ++c) order[static_cast<std::size_t>(c)] = c;
  SigmaSearchResult best;
  best.objective = -1;
  do {
    const SigmaOrdering sigma = SigmaOrdering::from_order(order);
    const long long value = pcr(inst.with_sigma(sigma));
    if (best.objective < 0 || value < best.objective) {
      best.objective = value;
      best.sigma = sigma;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

inline std::vector<std::string> sigma_labels(const OpdInstance& inst, const SigmaOrdering& sigma) {
  std::vector<std::string> labels;
  for (int c : sigma.order()) labels.push_back(inst.categories.labels[static_cast<std::size_t>(c)]);
  return labels;
}

inline std::string join_labels(const std::vector<std::string>& labels, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += sep;
    out += labels[i];
  }
  return out;
}

}  // namespace detail

inline int cli_dispatch(int argc, const char* const* argv) {
  CLI::App app{"minimum-crossing layouts and analysis for ordinal panel data"};
  app.require_subcommand(1);

  std::string input = "-", format, out = "-", layout_path, svg_path = "-", lp_path;
  bool json_out = false, exact = false;
  int n = 0, k = 0, m = 0, width = 900, height = 600;
  bool equal_bands = false, smooth = false, no_markers = false;
  std::uint64_t seed = 1;
  long long samples = 100000, budget = 10'000'000;

  auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("--input", input, "instance file, - for stdin")->required();
    cmd->add_option("--format", format, "input format")->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_nkm = [&](CLI::App* cmd) {
    cmd->add_option("--n", n, "number of subjects")->required();
    cmd->add_option("--k", k, "number of categories")->required();
    cmd->add_option("--m", m, "number of intervals")->required();
  };

  CLI::App* cmd_layout = app.add_subcommand("layout", "compute a minimum-crossing layout");
  add_input(cmd_layout);
  cmd_layout->add_option("--out", out, "layout file, - for stdout");
  cmd_layout->callback([&] {
    const OpdInstance inst = detail::read_instance(input, format);
    const CombinatorialLayout layout = optimal_layout(inst);
    std::ostringstream buf;
    save_layout_json(layout, count_layout_crossings(inst, layout), buf);
    detail::write_text(out, buf.str());
  });

  CLI::App* cmd_pcr = app.add_subcommand("pcr", "panel crossing number and its decomposition");
  add_input(cmd_pcr);
  cmd_pcr->add_flag("--json", json_out, "machine-readable output");
  cmd_pcr->callback([&] {
    const OpdInstance inst = detail::read_instance(input, format);
    const CrossingReport report = count_layout_crossings(inst, optimal_layout(inst));
    if (json_out) {
      nlohmann::ordered_json doc{{"pcr", report.total}, {"strong", report.strong}, {"weak", report.weak}, {"per_interval", report.per_interval}};
      std::cout << doc.dump() << "\n";
      return;
    }
    std::string per;
    for (std::size_t i = 0; i < report.per_interval.size(); ++i) per += (i ? " " : "") + std::to_string(report.per_interval[i]);
    std::cout << "pcr: " << report.total << "\nstrong: " << report.strong << "\nweak: " << report.weak << "\nper-interval: " << per << "\n";
  });

  CLI::App* cmd_draw = app.add_subcommand("draw", "render a layout as SVG");
  add_input(cmd_draw);
  cmd_draw->add_option("--layout", layout_path, "layout file; omitted means the optimal layout");
  cmd_draw->add_option("--svg", svg_path, "output file, - for stdout");
  cmd_draw->add_option("--width", width, "image width");
  cmd_draw->add_option("--height", height, "image height");
  cmd_draw->add_flag("--equal-bands", equal_bands, "same height for every category band");
  cmd_draw->add_flag("--smooth", smooth, "cubic subject curves");
  cmd_draw->add_flag("--no-markers", no_markers, "hide test markers");
  cmd_draw->callback([&] {
    const OpdInstance inst = detail::read_instance(input, format);
    CombinatorialLayout layout;
    if (layout_path.empty()) {
      layout = optimal_layout(inst);
    } else if (layout_path == "-") {
      layout = load_layout_json(std::cin);
    } else {
      std::ifstream in(layout_path);
      if (!in) throw DataError("cannot open '" + layout_path + "'");
      layout = load_layout_json(in);
    }
    DrawingSpec spec;
    spec.width = width;
    spec.height = height;
    spec.equal_bands = equal_bands;
    spec.smooth = smooth;
    spec.markers = !no_markers;
    detail::write_text(svg_path, render_svg(inst, layout, spec));
  });

  CLI::App* cmd_sigma = app.add_subcommand("optimize-sigma", "category ordering minimizing the crossing number");
  add_input(cmd_sigma);
  CLI::Option* opt_exact = cmd_sigma->add_flag("--exact", exact, "branch-and-bound search (default)");
  CLI::Option* opt_lp = cmd_sigma->add_option("--export-lp", lp_path, "write the integer program instead, - for stdout");
  opt_exact->excludes(opt_lp);
  cmd_sigma->add_option("--budget", budget, "search node budget");
  cmd_sigma->add_flag("--json", json_out, "machine-readable output");
  cmd_sigma->callback([&] {
    const OpdInstance inst = detail::read_instance(input, format);
    const ResponsibilityTables tables = compute_tables(inst);
    if (!lp_path.empty()) {
      detail::write_text(lp_path, export_ilp(tables, inst.k()));
      return;
    }
    const SigmaSearchResult result = optimal_sigma_exact(inst, budget);
    const std::vector<std::string> labels = detail::sigma_labels(inst, result.sigma);
    if (json_out) {
      nlohmann::ordered_json doc{{"sigma", labels}, {"objective", result.objective}};
      std::cout << doc.dump() << "\n";
    } else {
      std::cout << "sigma: " << detail::join_labels(labels, " < ") << "\nobjective: " << result.objective << "\n";
    }
  });

  CLI::App* cmd_gen = app.add_subcommand("gen", "generate instances");
  cmd_gen->require_subcommand(1);
  auto add_gen_common = [&](CLI::App* cmd) {
    add_nkm(cmd);
    cmd->add_option("--out", out, "output file, - for stdout");
    cmd->add_option("--format", format, "output format (default csv)")->check(CLI::IsMember({"csv", "json"}));
  };
  auto emit_instance = [&](const OpdInstance& inst) {
    std::ostringstream buf;
    save_instance(inst, buf, format == "json" ? InstanceFormat::Json : InstanceFormat::Csv);
    detail::write_text(out, buf.str());
  };
  CLI::App* cmd_gen_random = cmd_gen->add_subcommand("random", "uniform random tests");
  add_gen_common(cmd_gen_random);
  cmd_gen_random->add_option("--seed", seed, "generator seed");
  cmd_gen_random->callback([&] { emit_instance(random_instance(n, k, m, seed)); });
  CLI::App* cmd_gen_extremal = cmd_gen->add_subcommand("extremal", "order-reversing worst case");
  add_gen_common(cmd_gen_extremal);
  cmd_gen_extremal->callback([&] { emit_instance(extremal_instance_general(n, k, m)); });
  CLI::App* cmd_gen_consistent = cmd_gen->add_subcommand("extremal-consistent", "monotone worst case");
  add_gen_common(cmd_gen_consistent);
  cmd_gen_consistent->callback([&] { emit_instance(consistent_extremal_instance(n, k, m)); });

  CLI::App* cmd_expected = app.add_subcommand("expected", "expected crossing number of a uniform random instance");
  add_nkm(cmd_expected);
  cmd_expected->add_flag("--json", json_out, "machine-readable output");
  cmd_expected->callback([&] {
    const Rational value = expected_pcr(n, k, m);
    if (json_out) {
      nlohmann::ordered_json doc{{"value", value.to_double()}, {"rational", value.to_string()}};
      std::cout << doc.dump() << "\n";
    } else {
      std::cout << detail::fmt_double(value.to_double(), "%.10g") << " (" << value.to_string() << ")\n";
    }
  });

  CLI::App* cmd_estimate = app.add_subcommand("estimate", "Monte Carlo mean crossing number");
  add_nkm(cmd_estimate);
  cmd_estimate->add_option("--samples", samples, "sample count");
  cmd_estimate->add_option("--seed", seed, "generator seed");
  cmd_estimate->add_flag("--json", json_out, "machine-readable output");
  cmd_estimate->callback([&] {
    const MonteCarloEstimate est = monte_carlo_expected_pcr(n, k, m, samples, seed);
    if (json_out) {
      nlohmann::ordered_json doc;
      doc["mean"] = est.mean;
      if (std::isfinite(est.stderr_of_mean))
        doc["stderr"] = est.stderr_of_mean;
      else
        doc["stderr"] = nullptr;
      doc["samples"] = est.samples;
      std::cout << doc.dump() << "\n";
    } else {
      std::cout << "mean: " << detail::fmt_double(est.mean) << "\nstderr: " << detail::fmt_double(est.stderr_of_mean) << "\nsamples: " << est.samples << "\n";
    }
  });

  CLI::App* cmd_bounds = app.add_subcommand("bounds-consistent", "crossing bounds for consistent instances");
  add_nkm(cmd_bounds);
  cmd_bounds->add_flag("--json", json_out, "machine-readable output");
  cmd_bounds->callback([&] {
    const auto [lower, upper] = consistent_bounds(n, k, m);
    if (json_out) {
      nlohmann::ordered_json doc{{"lower", lower}, {"upper", upper}};
      std::cout << doc.dump() << "\n";
    } else {
      std::cout << "lower: " << lower << "\nupper: " << upper << "\n";
    }
  });

  CLI::App* cmd_oracle = app.add_subcommand("oracle", "brute-force reference values");
  cmd_oracle->require_subcommand(1);
  CLI::App* cmd_oracle_pcr = cmd_oracle->add_subcommand("pcr", "crossing number by layout enumeration");
  add_input(cmd_oracle_pcr);
  cmd_oracle_pcr->add_option("--budget", budget, "layout count budget");
  cmd_oracle_pcr->add_flag("--json", json_out, "machine-readable output");
  cmd_oracle_pcr->callback([&] {
    const OpdInstance inst = detail::read_instance(input, format);
    const long long value = brute_force_pcr(inst, budget);
    if (json_out)
      std::cout << nlohmann::ordered_json{{"pcr", value}}.dump() << "\n";
    else
      std::cout << "pcr: " << value << "\n";
  });
  CLI::App* cmd_oracle_sigma = cmd_oracle->add_subcommand("sigma", "best ordering by enumeration");
  add_input(cmd_oracle_sigma);
  cmd_oracle_sigma->add_option("--budget", budget, "ordering count budget");
  cmd_oracle_sigma->add_flag("--json", json_out, "machine-readable output");
  cmd_oracle_sigma->callback([&] {
    const OpdInstance inst = detail::read_instance(input, format);
    const SigmaSearchResult result = detail::oracle_sigma(inst, budget);
    const std::vector<std::string> labels = detail::sigma_labels(inst, result.sigma);
    if (json_out) {
      nlohmann::ordered_json doc{{"sigma", labels}, {"objective", result.objective}};
      std::cout << doc.dump() << "\n";
    } else {
      std::cout << "sigma: " << detail::join_labels(labels, " < ") << "\nobjective: " << result.objective << "\n";
    }
  });

  try {
    app.parse(argc, const_cast<char**>(argv));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace panelcross
