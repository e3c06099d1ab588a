#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace emfdose::report {

/// Shortest round-trip decimal form of x ('.' separator, no locale).
/// All CSV/SVG/console numbers go through this, which is what makes the
/// emitted bytes deterministic.
std::string format_double(double x);

/// CSV with a header row, comma separator, LF line endings.
class CsvBuilder {
 public:
  explicit CsvBuilder(std::vector<std::string> columns);

  void add_row(const std::vector<std::string>& cells);
  const std::string& str() const { return text_; }

 private:
  std::size_t columns_;
  std::string text_;
};

/// FNV-1a 64-bit digest of a file's bytes.
std::uint64_t fnv1a64_file(const std::filesystem::path& path);

/// Reproducibility sidecar emitted with every output file.
struct RunManifest {
  std::string command;
  std::vector<std::filesystem::path> inputs;   // resolved before hashing
  std::vector<std::filesystem::path> outputs;
};

std::string manifest_json(const RunManifest& manifest);

/// Writes manifest_json to `path`, or to "<output>.manifest.json" beside
/// each output when path is empty.
void write_manifest(const RunManifest& manifest,
                    const std::filesystem::path& explicit_path);

// --- direct SVG emission (no plotting dependency) ------------------------

struct BarDatum {
  std::string label;
  double value;
};

/// Log-scale bar chart; bar values are printed as text so nothing is lost
/// to the scale.
std::string svg_bar_chart(const std::string& title, const std::string& y_label,
                          const std::vector<BarDatum>& data);

struct XyPoint {
  double x;
  double y;
};

std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::string& y_label,
                           const std::vector<XyPoint>& points);

}  // namespace emfdose::report
