#include "emfdose/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "emfdose/constants.hpp"
#include "emfdose/errors.hpp"

namespace emfdose::report {

std::string format_double(double x) {
  char buffer[32];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), x);
  if (ec != std::errc()) throw Error("number formatting failed");
  return std::string(buffer, ptr);
}

CsvBuilder::CsvBuilder(std::vector<std::string> columns)
    : columns_(columns.size()) {
  if (columns.empty()) throw InvalidParameter("CSV needs at least one column");
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i > 0) text_.push_back(',');
    text_ += columns[i];
  }
  text_.push_back('\n');
}

void CsvBuilder::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_)
    throw InvalidParameter("CSV row has " + std::to_string(cells.size()) +
                           " cells, expected " + std::to_string(columns_));
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) text_.push_back(',');
    text_ += cells[i];
  }
  text_.push_back('\n');
}

std::uint64_t fnv1a64_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "' for checksum");
  std::uint64_t hash = 14695981039346656037ull;
  char chunk[4096];
  while (in.read(chunk, sizeof(chunk)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      hash ^= static_cast<unsigned char>(chunk[i]);
      hash *= 1099511628211ull;
    }
  }
  return hash;
}

std::string manifest_json(const RunManifest& manifest) {
  nlohmann::json doc;
  doc["command"] = manifest.command;
  doc["tool_version"] = std::string(constants::tool_version);
  doc["constants"] = {
      {"speed_of_light_m_per_s", constants::speed_of_light_m_per_s},
      {"vacuum_permittivity_f_per_m", constants::vacuum_permittivity_f_per_m},
      {"free_space_impedance_ohm", constants::free_space_impedance_ohm},
  };
  auto inputs = nlohmann::json::array();
  for (const auto& input : manifest.inputs) {
    const auto resolved = std::filesystem::weakly_canonical(input);
    std::ostringstream digest;
    digest << std::hex << fnv1a64_file(resolved);
    inputs.push_back({{"path", resolved.string()}, {"fnv1a64", digest.str()}});
  }
  doc["inputs"] = inputs;
  auto outputs = nlohmann::json::array();
  for (const auto& output : manifest.outputs) outputs.push_back(output.string());
  doc["outputs"] = outputs;
  return doc.dump(2) + "\n";
}

void write_manifest(const RunManifest& manifest,
                    const std::filesystem::path& explicit_path) {
  const std::string text = manifest_json(manifest);
  auto write_to = [&](const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write manifest '" + path.string() + "'");
    out << text;
  };
  if (!explicit_path.empty()) {
    write_to(explicit_path);
    return;
  }
  for (const auto& output : manifest.outputs) {
    auto sidecar = output;
    sidecar += ".manifest.json";
    write_to(sidecar);
  }
}

namespace {

std::string escape_xml(const std::string& text) {
  std::string out;
  for (const char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

// Pixel coordinates are snapped to 0.01 so the markup stays byte-stable.
std::string px(double value) {
  return format_double(std::round(value * 100.0) / 100.0);
}

constexpr double canvas_w = 640.0;
constexpr double canvas_h = 400.0;
constexpr double margin_left = 70.0;
constexpr double margin_right = 20.0;
constexpr double margin_top = 40.0;
constexpr double margin_bottom = 50.0;

void open_svg(std::ostringstream& svg, const std::string& title) {
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << canvas_w
      << "\" height=\"" << canvas_h << "\" viewBox=\"0 0 " << canvas_w << " "
      << canvas_h << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << px(canvas_w / 2) << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << escape_xml(title)
      << "</text>\n";
}

}  // namespace

std::string svg_bar_chart(const std::string& title, const std::string& y_label,
                          const std::vector<BarDatum>& data) {
  if (data.empty()) throw InvalidParameter("bar chart needs data");
  for (const auto& d : data) {
    if (!std::isfinite(d.value) || d.value <= 0.0)
      throw InvalidParameter("bar chart values must be positive (log scale)");
  }
  double lo = data.front().value;
  double hi = lo;
  for (const auto& d : data) {
    lo = std::min(lo, d.value);
    hi = std::max(hi, d.value);
  }
  double log_lo = std::floor(std::log10(lo));
  double log_hi = std::ceil(std::log10(hi));
  if (log_hi <= log_lo) log_hi = log_lo + 1.0;

  const double plot_w = canvas_w - margin_left - margin_right;
  const double plot_h = canvas_h - margin_top - margin_bottom;
  const double slot = plot_w / static_cast<double>(data.size());

  std::ostringstream svg;
  open_svg(svg, title);
  svg << "<text x=\"16\" y=\"" << px(margin_top + plot_h / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
      << "transform=\"rotate(-90 16 " << px(margin_top + plot_h / 2) << ")\">"
      << escape_xml(y_label) << " (log scale)</text>\n";

  // decade gridlines
  for (double decade = log_lo; decade <= log_hi; decade += 1.0) {
    const double frac = (decade - log_lo) / (log_hi - log_lo);
    const double y = margin_top + plot_h * (1.0 - frac);
    svg << "<line x1=\"" << px(margin_left) << "\" y1=\"" << px(y) << "\" x2=\""
        << px(canvas_w - margin_right) << "\" y2=\"" << px(y)
        << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
    svg << "<text x=\"" << px(margin_left - 6) << "\" y=\"" << px(y + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">1e"
        << format_double(decade) << "</text>\n";
  }

  for (std::size_t i = 0; i < data.size(); ++i) {
    const double frac =
        (std::log10(data[i].value) - log_lo) / (log_hi - log_lo);
    const double bar_h = plot_h * frac;
    const double x = margin_left + slot * static_cast<double>(i) + slot * 0.2;
    const double y = margin_top + plot_h - bar_h;
    svg << "<rect x=\"" << px(x) << "\" y=\"" << px(y) << "\" width=\""
        << px(slot * 0.6) << "\" height=\"" << px(bar_h)
        << "\" fill=\"#4878a8\"/>\n";
    svg << "<text x=\"" << px(x + slot * 0.3) << "\" y=\"" << px(y - 6)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << format_double(data[i].value) << "</text>\n";
    svg << "<text x=\"" << px(x + slot * 0.3) << "\" y=\""
        << px(margin_top + plot_h + 18)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << escape_xml(data[i].label) << "</text>\n";
  }
  svg << "<line x1=\"" << px(margin_left) << "\" y1=\"" << px(margin_top)
      << "\" x2=\"" << px(margin_left) << "\" y2=\"" << px(margin_top + plot_h)
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg << "<line x1=\"" << px(margin_left) << "\" y1=\"" << px(margin_top + plot_h)
      << "\" x2=\"" << px(canvas_w - margin_right) << "\" y2=\""
      << px(margin_top + plot_h) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg << "</svg>\n";
  return svg.str();
}

std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::string& y_label,
                           const std::vector<XyPoint>& points) {
  if (points.size() < 2) throw InvalidParameter("line chart needs >= 2 points");
  double x_lo = points.front().x, x_hi = points.front().x;
  double y_lo = points.front().y, y_hi = points.front().y;
  for (const auto& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw InvalidParameter("line chart points must be finite");
    x_lo = std::min(x_lo, p.x);
    x_hi = std::max(x_hi, p.x);
    y_lo = std::min(y_lo, p.y);
    y_hi = std::max(y_hi, p.y);
  }
  if (x_hi == x_lo) x_hi = x_lo + 1.0;
  if (y_hi == y_lo) y_hi = y_lo + 1.0;

  const double plot_w = canvas_w - margin_left - margin_right;
  const double plot_h = canvas_h - margin_top - margin_bottom;
  auto map_x = [&](double x) {
    return margin_left + plot_w * (x - x_lo) / (x_hi - x_lo);
  };
  auto map_y = [&](double y) {
    return margin_top + plot_h * (1.0 - (y - y_lo) / (y_hi - y_lo));
  };

  std::ostringstream svg;
  open_svg(svg, title);
  svg << "<text x=\"" << px(margin_left + plot_w / 2) << "\" y=\""
      << px(canvas_h - 12)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
      << escape_xml(x_label) << "</text>\n";
  svg << "<text x=\"16\" y=\"" << px(margin_top + plot_h / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
      << "transform=\"rotate(-90 16 " << px(margin_top + plot_h / 2) << ")\">"
      << escape_xml(y_label) << "</text>\n";

  // axis ticks: min and max on both axes
  svg << "<text x=\"" << px(margin_left) << "\" y=\""
      << px(margin_top + plot_h + 18)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
      << format_double(x_lo) << "</text>\n";
  svg << "<text x=\"" << px(margin_left + plot_w) << "\" y=\""
      << px(margin_top + plot_h + 18)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
      << format_double(x_hi) << "</text>\n";
  svg << "<text x=\"" << px(margin_left - 6) << "\" y=\""
      << px(margin_top + plot_h + 4)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
      << format_double(y_lo) << "</text>\n";
  svg << "<text x=\"" << px(margin_left - 6) << "\" y=\"" << px(margin_top + 4)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
      << format_double(y_hi) << "</text>\n";

  svg << "<polyline fill=\"none\" stroke=\"#a83838\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0) svg << " ";
    svg << px(map_x(points[i].x)) << "," << px(map_y(points[i].y));
  }
  svg << "\"/>\n";
  svg << "<line x1=\"" << px(margin_left) << "\" y1=\"" << px(margin_top)
      << "\" x2=\"" << px(margin_left) << "\" y2=\"" << px(margin_top + plot_h)
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg << "<line x1=\"" << px(margin_left) << "\" y1=\"" << px(margin_top + plot_h)
      << "\" x2=\"" << px(canvas_w - margin_right) << "\" y2=\""
      << px(margin_top + plot_h) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace emfdose::report
