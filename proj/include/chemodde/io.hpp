#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace chemodde::io {

struct NamedSeries {
  std::string name;
  std::vector<double> values;
};

/// Aligned columns, optionally preceded by an integer index column.
struct SeriesBundle {
  std::string index_name = "t";
  std::vector<long> index;  // empty: no index column
  std::vector<NamedSeries> columns;
};

/// Shortest decimal string that parses back to exactly `v`; locale independent.
std::string format_double(double v);

std::string format_csv(const SeriesBundle& bundle);
void emit_csv(const SeriesBundle& bundle, const std::filesystem::path& path);
SeriesBundle read_csv(const std::filesystem::path& path);

struct SvgOptions {
  std::string title;
  std::optional<double> reference_line;  // horizontal dashed line, e.g. the threshold 1
  int width = 800;
  int height = 480;
};

/// Line chart with one polyline per column. Columns named s0, s and x follow
/// the figure convention (black dashed, blue dotted, red solid).
std::string format_svg(const SeriesBundle& bundle, const SvgOptions& opts = {});
void emit_svg(const SeriesBundle& bundle, const std::filesystem::path& path, const SvgOptions& opts = {});

}  // namespace chemodde::io
