// Instance and layout serialization (CSV, JSON) plus SVG rendering of
// layouts as banded trajectory charts.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "panelcross/crossings.hpp"
#include "panelcross/model.hpp"

namespace panelcross {

enum class InstanceFormat { Csv, Json };

// Picks the format from a file name; "-" and unknown extensions mean CSV.
inline InstanceFormat guess_format(const std::string& path) {
  const auto dot = path.rfind('.');
  if (dot != std::string::npos && path.substr(dot) == ".json") return InstanceFormat::Json;
  return InstanceFormat::Csv;
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(cell);
      cell.clear();
    } else if (ch != '\r') {
      cell += ch;
    }
  }
  cells.push_back(cell);
  return cells;
}

inline void throw_on_violations(const std::vector<std::string>& violations) {
  if (violations.empty()) return;
  std::string msg = "invalid instance";
  for (const auto& v : violations) msg += "\n  " + v;
  throw DataError(msg);
}

// Comma-separated label list from a comment line, surrounding spaces trimmed.
inline std::vector<std::string> split_comment_list(const std::string& text) {
  std::vector<std::string> items;
  for (const std::string& raw : split_csv_line(text)) {
    const std::size_t begin = raw.find_first_not_of(' ');
    const std::size_t end = raw.find_last_not_of(' ');
    items.push_back(begin == std::string::npos ? std::string() : raw.substr(begin, end - begin + 1));
  }
  return items;
}

}  // namespace detail

// CSV layout: a header "subject,t0,...,tm" and one row per subject, cells
// are category labels. Two optional leading comment lines carry what the
// body alone cannot: "# categories: a,b,c" fixes the category list (and
// admits categories no test uses), "# sigma: a,b,c" lists labels from
// lowest rank to highest. Without them, categories are inferred in
// first-appearance order, which also fixes sigma (first seen = lowest).
// Other leading '#' lines are skipped; error positions count every line.
inline OpdInstance load_instance_csv(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
    lines.push_back(line);
  }

  std::vector<std::string> declared_categories, declared_sigma;
  bool has_declared_categories = false, has_declared_sigma = false;
  std::size_t header_at = 0;
  while (header_at < lines.size() && !lines[header_at].empty() && lines[header_at].front() == '#') {
    const std::string& comment = lines[header_at];
    if (comment.rfind("# categories:", 0) == 0) {
      declared_categories = detail::split_comment_list(comment.substr(13));
      has_declared_categories = true;
    } else if (comment.rfind("# sigma:", 0) == 0) {
      declared_sigma = detail::split_comment_list(comment.substr(8));
      has_declared_sigma = true;
    }
    ++header_at;
  }
  if (header_at >= lines.size()) throw DataError("csv: empty input");

  const std::vector<std::string> header = detail::split_csv_line(lines[header_at]);
  const std::string header_line = std::to_string(header_at + 1);
  if (header.empty() || header.front() != "subject") throw DataError("csv line " + header_line + ": header must start with 'subject'");
  if (header.size() < 3) throw DataError("csv line " + header_line + ": need at least two test columns");
  const std::size_t columns = header.size();

  OpdInstance inst;
  inst.tests.assign(columns - 1, {});
  std::map<std::string, int> category_index;
  if (has_declared_categories)
    for (const std::string& label : declared_categories) {
      if (label.empty()) throw DataError("csv categories: empty label");
      auto [it, inserted] = category_index.try_emplace(label, static_cast<int>(inst.categories.labels.size()));
      if (!inserted) throw DataError("csv categories: duplicate category '" + label + "'");
      inst.categories.labels.push_back(label);
    }
  for (std::size_t r = header_at + 1; r < lines.size(); ++r) {
    const std::vector<std::string> row = detail::split_csv_line(lines[r]);
    if (row.size() != columns)
      throw DataError("csv line " + std::to_string(r + 1) + ": expected " + std::to_string(columns) + " cells, got " + std::to_string(row.size()));
    if (row.front().empty()) throw DataError("csv line " + std::to_string(r + 1) + ": empty subject name");
    inst.subjects.push_back(row.front());
    for (std::size_t c = 1; c < columns; ++c) {
      const std::string& label = row[c];
      if (label.empty()) throw DataError("csv line " + std::to_string(r + 1) + ", column " + std::to_string(c + 1) + ": empty cell");
      auto it = category_index.find(label);
      if (it == category_index.end()) {
        if (has_declared_categories)
          throw DataError("csv line " + std::to_string(r + 1) + ", column " + std::to_string(c + 1) + ": unknown category '" + label + "'");
        it = category_index.emplace(label, static_cast<int>(inst.categories.labels.size())).first;
        inst.categories.labels.push_back(label);
      }
      inst.tests[c - 1].push_back(it->second);
    }
  }
  inst.has_sigma = true;
  if (has_declared_sigma) {
    std::vector<int> order;
    std::vector<char> seen(static_cast<std::size_t>(inst.k()), 0);
    for (const std::string& label : declared_sigma) {
      const int idx = inst.categories.index_of(label);
      if (idx < 0) throw DataError("csv sigma: unknown category '" + label + "'");
      if (seen[static_cast<std::size_t>(idx)]) throw DataError("csv sigma: must list every category exactly once");
      seen[static_cast<std::size_t>(idx)] = 1;
      order.push_back(idx);
    }
    if (order.size() != static_cast<std::size_t>(inst.k())) throw DataError("csv sigma: must list every category exactly once");
    inst.sigma = SigmaOrdering::from_order(order);
  } else {
    inst.sigma = SigmaOrdering::identity(inst.k());
  }
  detail::throw_on_violations(validate_instance(inst));
  return inst;
}

inline void save_instance_csv(const OpdInstance& inst, std::ostream& out) {
  std::vector<std::string> appearance;
  for (int s = 0; s < inst.n(); ++s)
    for (int i = 0; i <= inst.m(); ++i) {
      const std::string& label = inst.categories.labels[static_cast<std::size_t>(inst.category_at(i, s))];
      if (std::find(appearance.begin(), appearance.end(), label) == appearance.end()) appearance.push_back(label);
    }
  if (appearance != inst.categories.labels) {
    out << "# categories:";
    for (int c = 0; c < inst.k(); ++c) out << (c ? "," : " ") << inst.categories.labels[static_cast<std::size_t>(c)];
    out << "\n";
  }
  if (inst.has_sigma) {
    bool identity = true;
    for (int c = 0; c < inst.k(); ++c)
      if (inst.sigma.rank[static_cast<std::size_t>(c)] != c) identity = false;
    if (!identity) {
      out << "# sigma:";
      const std::vector<int> order = inst.sigma.order();
      for (int r = 0; r < inst.k(); ++r) out << (r ? "," : " ") << inst.categories.labels[static_cast<std::size_t>(order[r])];
      out << "\n";
    }
  }
  out << "subject";
  for (int i = 0; i <= inst.m(); ++i) out << ",t" << i;
  out << "\n";
  for (int s = 0; s < inst.n(); ++s) {
    out << inst.subjects[static_cast<std::size_t>(s)];
    for (int i = 0; i <= inst.m(); ++i) out << "," << inst.categories.labels[static_cast<std::size_t>(inst.category_at(i, s))];
    out << "\n";
  }
}

// JSON layout: {version, subjects, categories?, sigma?, tests} with tests
// listed timestamp by timestamp as label matrices. sigma lists category
// labels from lowest to highest; without it the categories order is sigma.
inline OpdInstance load_instance_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("json: ") + e.what());
  }
  try {
    if (!doc.is_object()) throw DataError("json: top level must be an object");
    if (doc.contains("version") && doc["version"].get<int>() != 1) throw DataError("json: unsupported version");
    if (!doc.contains("subjects") || !doc.contains("tests")) throw DataError("json: 'subjects' and 'tests' are required");

    OpdInstance inst;
    for (const auto& s : doc["subjects"]) inst.subjects.push_back(s.get<std::string>());

    std::map<std::string, int> category_index;
    const bool explicit_categories = doc.contains("categories");
    if (explicit_categories)
      for (const auto& c : doc["categories"]) {
        const std::string label = c.get<std::string>();
        if (!category_index.try_emplace(label, static_cast<int>(inst.categories.labels.size())).second) throw DataError("json: duplicate category '" + label + "'");
        inst.categories.labels.push_back(label);
      }

    std::size_t row_idx = 0;
    for (const auto& row : doc["tests"]) {
      std::vector<int> cats;
      std::size_t col_idx = 0;
      for (const auto& cell : row) {
        const std::string label = cell.get<std::string>();
        const auto it = category_index.find(label);
        if (it != category_index.end()) {
          cats.push_back(it->second);
        } else if (explicit_categories) {
          throw DataError("json tests[" + std::to_string(row_idx) + "][" + std::to_string(col_idx) + "]: unknown category '" + label + "'");
        } else {
          category_index.emplace(label, static_cast<int>(inst.categories.labels.size()));
          inst.categories.labels.push_back(label);
          cats.push_back(static_cast<int>(inst.categories.labels.size()) - 1);
        }
        ++col_idx;
      }
      inst.tests.push_back(std::move(cats));
      ++row_idx;
    }

    inst.has_sigma = true;
    if (doc.contains("sigma")) {
      std::vector<int> order;
      for (const auto& c : doc["sigma"]) {
        const std::string label = c.get<std::string>();
        const auto it = category_index.find(label);
        if (it == category_index.end()) throw DataError("json sigma: unknown category '" + label + "'");
        order.push_back(it->second);
      }
      if (static_cast<int>(order.size()) != inst.k()) throw DataError("json sigma: must list every category exactly once");
      inst.sigma = SigmaOrdering::from_order(order);
    } else {
      inst.sigma = SigmaOrdering::identity(inst.k());
    }
    detail::throw_on_violations(validate_instance(inst));
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("json: ") + e.what());
  }
}

inline void save_instance_json(const OpdInstance& inst, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["version"] = 1;
  doc["subjects"] = inst.subjects;
  doc["categories"] = inst.categories.labels;
  if (inst.has_sigma) {
    std::vector<std::string> sigma_labels;
    for (int c : inst.sigma.order()) sigma_labels.push_back(inst.categories.labels[static_cast<std::size_t>(c)]);
    doc["sigma"] = sigma_labels;
  }
  std::vector<std::vector<std::string>> tests;
  for (int i = 0; i <= inst.m(); ++i) {
    std::vector<std::string> row;
    for (int s = 0; s < inst.n(); ++s) row.push_back(inst.categories.labels[static_cast<std::size_t>(inst.category_at(i, s))]);
    tests.push_back(std::move(row));
  }
  doc["tests"] = tests;
  out << doc.dump(2) << "\n";
}

inline OpdInstance load_instance(std::istream& in, InstanceFormat format) {
  return format == InstanceFormat::Csv ? load_instance_csv(in) : load_instance_json(in);
}

inline void save_instance(const OpdInstance& inst, std::ostream& out, InstanceFormat format) {
  if (format == InstanceFormat::Csv)
    save_instance_csv(inst, out);
  else
    save_instance_json(inst, out);
}

inline void save_layout_json(const CombinatorialLayout& layout, const CrossingReport& report, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["version"] = 1;
  doc["pis"] = layout.pis;
  doc["report"] = {{"total", report.total}, {"strong", report.strong}, {"weak", report.weak}, {"per_interval", report.per_interval}};
  out << doc.dump(2) << "\n";
}

inline CombinatorialLayout load_layout_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
    if (!doc.is_object() || !doc.contains("pis")) throw DataError("layout json: 'pis' is required");
    CombinatorialLayout layout;
    for (const auto& row : doc["pis"]) layout.pis.push_back(row.get<std::vector<int>>());
    return layout;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("layout json: ") + e.what());
  }
}

struct DrawingSpec {
  int width = 900;
  int height = 600;
  bool equal_bands = false;
  bool smooth = false;
  bool markers = true;
};

namespace detail {

inline std::string fmt2(double v) {
  if (std::abs(v) < 0.005) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string xml_escape(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

inline const char* subject_color(int s) {
  static const char* palette[] = {"#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3",
                                  "#937860", "#da8bc3", "#8c8c8c", "#ccb974", "#64b5cd"};
  return palette[static_cast<std::size_t>(s) % 10];
}

}  // namespace detail

// Draws the layout: one horizontal band per category with the sigma-lowest
// band at the image bottom, one x-monotone curve per subject, and a caption
// with the crossing count. Output bytes depend only on the inputs.
inline std::string render_svg(const OpdInstance& inst, const CombinatorialLayout& layout, const DrawingSpec& spec = {}) {
  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(spec.width) + "\" height=\"" + std::to_string(spec.height) +
                    "\" viewBox=\"0 0 " + std::to_string(spec.width) + " " + std::to_string(spec.height) + "\">\n";
  if (inst.n() == 0) return svg + "</svg>\n";

  const CrossingReport report = count_layout_crossings(inst, layout);
  const SigmaOrdering sigma = inst.has_sigma ? inst.sigma : SigmaOrdering::identity(inst.k());
  const int n = inst.n(), k = inst.k(), m = inst.m();

  const double margin_left = 70.0, margin_right = 30.0, margin_top = 46.0, margin_bottom = 34.0;
  const double plot_w = spec.width - margin_left - margin_right;
  const double plot_h = spec.height - margin_top - margin_bottom;
  const double pad = 8.0;

  std::vector<double> units(static_cast<std::size_t>(k), 1.0);
  if (!spec.equal_bands)
    for (int c = 0; c < k; ++c) {
      int peak = 1;
      for (int i = 0; i <= m; ++i) peak = std::max(peak, static_cast<int>(subjects_in_category(inst, i, c).size()));
      units[static_cast<std::size_t>(c)] = peak;
    }
  double total_units = 0;
  for (double u : units) total_units += u;
  double unit_px = (plot_h - pad * (k - 1)) / total_units;
  if (unit_px < 1.0) unit_px = 1.0;

  // Band geometry keyed by category: bottom y and height, stacked upward in
  // sigma order.
  std::vector<double> band_bottom(static_cast<std::size_t>(k)), band_height(static_cast<std::size_t>(k));
  double cursor = spec.height - margin_bottom;
  const std::vector<int> order = sigma.order();
  for (int r = 0; r < k; ++r) {
    const int c = order[static_cast<std::size_t>(r)];
    band_bottom[static_cast<std::size_t>(c)] = cursor;
    band_height[static_cast<std::size_t>(c)] = units[static_cast<std::size_t>(c)] * unit_px;
    cursor -= band_height[static_cast<std::size_t>(c)] + pad;
  }

  for (int r = 0; r < k; ++r) {
    const int c = order[static_cast<std::size_t>(r)];
    const double top = band_bottom[static_cast<std::size_t>(c)] - band_height[static_cast<std::size_t>(c)];
    svg += "<rect x=\"" + detail::fmt2(margin_left) + "\" y=\"" + detail::fmt2(top) + "\" width=\"" + detail::fmt2(plot_w) + "\" height=\"" +
           detail::fmt2(band_height[static_cast<std::size_t>(c)]) + "\" fill=\"#ede7f6\" stroke=\"#b39ddb\"/>\n";
    svg += "<text x=\"" + detail::fmt2(margin_left - 6.0) + "\" y=\"" + detail::fmt2(top + band_height[static_cast<std::size_t>(c)] / 2.0 + 4.0) +
           "\" text-anchor=\"end\" font-size=\"12\" fill=\"#333\">" + detail::xml_escape(inst.categories.labels[static_cast<std::size_t>(c)]) + "</text>\n";
  }

  std::vector<double> column_x(static_cast<std::size_t>(m + 1));
  for (int i = 0; i <= m; ++i) {
    column_x[static_cast<std::size_t>(i)] = margin_left + (m == 0 ? plot_w / 2.0 : plot_w * i / m);
    svg += "<text x=\"" + detail::fmt2(column_x[static_cast<std::size_t>(i)]) + "\" y=\"" + detail::fmt2(spec.height - margin_bottom + 18.0) +
           "\" text-anchor=\"middle\" font-size=\"12\" fill=\"#333\">t" + std::to_string(i) + "</text>\n";
  }

  // y position of each subject at each column: even slots inside its band,
  // stacked by layout order within the category.
  std::vector<std::vector<double>> y_at(static_cast<std::size_t>(m + 1), std::vector<double>(static_cast<std::size_t>(n)));
  for (int i = 0; i <= m; ++i) {
    std::vector<int> slot(static_cast<std::size_t>(n)), bucket_size(static_cast<std::size_t>(k), 0);
    for (int s : layout.pis[static_cast<std::size_t>(i)]) slot[static_cast<std::size_t>(s)] = bucket_size[static_cast<std::size_t>(inst.category_at(i, s))]++;
    for (int s = 0; s < n; ++s) {
      const int c = inst.category_at(i, s);
      const double h = band_height[static_cast<std::size_t>(c)];
      y_at[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)] =
          band_bottom[static_cast<std::size_t>(c)] - h * (slot[static_cast<std::size_t>(s)] + 1) / (bucket_size[static_cast<std::size_t>(c)] + 1);
    }
  }

  for (int s = 0; s < n; ++s) {
    std::string d = "M " + detail::fmt2(column_x[0]) + " " + detail::fmt2(y_at[0][static_cast<std::size_t>(s)]);
    for (int i = 1; i <= m; ++i) {
      const double x0 = column_x[static_cast<std::size_t>(i - 1)], x1 = column_x[static_cast<std::size_t>(i)];
      const double y0 = y_at[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(s)], y1 = y_at[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)];
      if (spec.smooth)
        d += " C " + detail::fmt2((x0 + x1) / 2.0) + " " + detail::fmt2(y0) + ", " + detail::fmt2((x0 + x1) / 2.0) + " " + detail::fmt2(y1) + ", " + detail::fmt2(x1) + " " + detail::fmt2(y1);
      else
        d += " L " + detail::fmt2(x1) + " " + detail::fmt2(y1);
    }
    svg += "<path d=\"" + d + "\" fill=\"none\" stroke=\"" + detail::subject_color(s) + "\" stroke-width=\"1.5\"><title>" + detail::xml_escape(inst.subjects[static_cast<std::size_t>(s)]) + "</title></path>\n";
  }
  if (spec.markers)
    for (int s = 0; s < n; ++s)
      for (int i = 0; i <= m; ++i)
        svg += "<circle cx=\"" + detail::fmt2(column_x[static_cast<std::size_t>(i)]) + "\" cy=\"" + detail::fmt2(y_at[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)]) +
               "\" r=\"2.5\" fill=\"" + detail::subject_color(s) + "\"/>\n";

  svg += "<text x=\"" + detail::fmt2(spec.width / 2.0) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\" fill=\"#111\">crossings: " + std::to_string(report.total) +
         " (strong " + std::to_string(report.strong) + ", weak " + std::to_string(report.weak) + ")</text>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace panelcross
