#include "chemodde/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "chemodde/errors.hpp"

namespace chemodde::io {

namespace {

void check_bundle(const SeriesBundle& b) {
  if (b.columns.empty()) throw UsageError("cannot emit an empty series bundle");
  const std::size_t n = b.columns.front().values.size();
  if (n == 0) throw UsageError("cannot emit empty series");
  for (const auto& c : b.columns)
    if (c.values.size() != n) throw UsageError("series '" + c.name + "' is not aligned with the others");
  if (!b.index.empty() && b.index.size() != n) throw UsageError("index column is not aligned with the series");
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!line.empty() && line.back() == sep) parts.emplace_back();
  return parts;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw IoError("malformed number '" + s + "'");
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string format_csv(const SeriesBundle& bundle) {
  check_bundle(bundle);
  std::string out;
  const bool with_index = !bundle.index.empty();
  if (with_index) out += bundle.index_name;
  for (std::size_t c = 0; c < bundle.columns.size(); ++c) {
    if (with_index || c > 0) out += ',';
    out += bundle.columns[c].name;
  }
  out += '\n';
  const std::size_t n = bundle.columns.front().values.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (with_index) out += std::to_string(bundle.index[i]);
    for (std::size_t c = 0; c < bundle.columns.size(); ++c) {
      if (with_index || c > 0) out += ',';
      out += format_double(bundle.columns[c].values[i]);
    }
    out += '\n';
  }
  return out;
}

void emit_csv(const SeriesBundle& bundle, const std::filesystem::path& path) { write_file(path, format_csv(bundle)); }

SeriesBundle read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty CSV '" + path.string() + "'");
  const auto header = split(line, ',');
  SeriesBundle b;
  const bool with_index = !header.empty() && header.front() == "t";
  const std::size_t first_col = with_index ? 1 : 0;
  if (with_index) b.index_name = header.front();
  for (std::size_t c = first_col; c < header.size(); ++c) b.columns.push_back({header[c], {}});
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != header.size()) throw IoError("ragged CSV row in '" + path.string() + "'");
    if (with_index) b.index.push_back(std::stol(cells.front()));
    for (std::size_t c = first_col; c < cells.size(); ++c) b.columns[c - first_col].values.push_back(parse_double(cells[c]));
  }
  return b;
}

// ---------------------------------------------------------------------------

namespace {

struct LineStyle {
  std::string color;
  std::string dash;  // empty = solid
  double width;
};

LineStyle style_for(const std::string& name, std::size_t ordinal) {
  if (name == "s0") return {"#000000", "8,5", 1.5};
  if (name == "s") return {"#1f4fd1", "2,3", 1.8};
  if (name == "x") return {"#d11f1f", "", 1.8};
  static const std::array<const char*, 5> palette = {"#1f77b4", "#2ca02c", "#9467bd", "#8c564b", "#ff7f0e"};
  return {palette[ordinal % palette.size()], "", 1.5};
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
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

std::string fmt_coord(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.setf(std::ios::fixed);
  os.precision(2);
  os << v;
  return os.str();
}

}  // namespace

std::string format_svg(const SeriesBundle& bundle, const SvgOptions& opts) {
  check_bundle(bundle);
  const std::size_t n = bundle.columns.front().values.size();
  const double left = 70, right = 20, top = 40, bottom = 50;
  const double pw = opts.width - left - right;
  const double ph = opts.height - top - bottom;

  double x_lo = bundle.index.empty() ? 0.0 : static_cast<double>(bundle.index.front());
  double x_hi = bundle.index.empty() ? static_cast<double>(n - 1) : static_cast<double>(bundle.index.back());
  if (x_hi <= x_lo) x_hi = x_lo + 1.0;
  double y_lo = std::numeric_limits<double>::infinity();
  double y_hi = -std::numeric_limits<double>::infinity();
  for (const auto& c : bundle.columns)
    for (double v : c.values)
      if (std::isfinite(v)) {
        y_lo = std::min(y_lo, v);
        y_hi = std::max(y_hi, v);
      }
  if (opts.reference_line) {
    y_lo = std::min(y_lo, *opts.reference_line);
    y_hi = std::max(y_hi, *opts.reference_line);
  }
  if (!std::isfinite(y_lo)) y_lo = 0.0, y_hi = 1.0;
  if (y_hi <= y_lo) y_hi = y_lo + 1.0;
  const double pad = 0.05 * (y_hi - y_lo);
  y_lo -= pad;
  y_hi += pad;

  auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * pw; };
  auto py = [&](double y) { return top + (y_hi - y) / (y_hi - y_lo) * ph; };

  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width << "\" height=\"" << opts.height
     << "\" viewBox=\"0 0 " << opts.width << ' ' << opts.height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!opts.title.empty())
    os << "<text x=\"" << opts.width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       << "font-size=\"16\">" << xml_escape(opts.title) << "</text>\n";
  os << "<rect x=\"" << fmt_coord(left) << "\" y=\"" << fmt_coord(top) << "\" width=\"" << fmt_coord(pw)
     << "\" height=\"" << fmt_coord(ph) << "\" fill=\"none\" stroke=\"#444\"/>\n";

  // Axis labels: extremes only.
  os << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#222\">\n";
  os << "<text x=\"" << fmt_coord(left) << "\" y=\"" << fmt_coord(top + ph + 16) << "\" text-anchor=\"middle\">"
     << format_double(x_lo) << "</text>\n";
  os << "<text x=\"" << fmt_coord(left + pw) << "\" y=\"" << fmt_coord(top + ph + 16) << "\" text-anchor=\"middle\">"
     << format_double(x_hi) << "</text>\n";
  os << "<text x=\"" << fmt_coord(left + pw / 2) << "\" y=\"" << fmt_coord(top + ph + 36)
     << "\" text-anchor=\"middle\">" << xml_escape(bundle.index_name) << "</text>\n";
  os << "<text x=\"" << fmt_coord(left - 6) << "\" y=\"" << fmt_coord(top + 4) << "\" text-anchor=\"end\">"
     << fmt_coord(y_hi) << "</text>\n";
  os << "<text x=\"" << fmt_coord(left - 6) << "\" y=\"" << fmt_coord(top + ph) << "\" text-anchor=\"end\">"
     << fmt_coord(y_lo) << "</text>\n";
  os << "</g>\n";

  if (opts.reference_line) {
    const double y = py(*opts.reference_line);
    os << "<line x1=\"" << fmt_coord(left) << "\" y1=\"" << fmt_coord(y) << "\" x2=\"" << fmt_coord(left + pw)
       << "\" y2=\"" << fmt_coord(y) << "\" stroke=\"#d11f1f\" stroke-dasharray=\"6,4\" stroke-width=\"1.2\"/>\n";
  }

  for (std::size_t c = 0; c < bundle.columns.size(); ++c) {
    const auto& col = bundle.columns[c];
    const auto st = style_for(col.name, c);
    os << "<polyline fill=\"none\" stroke=\"" << st.color << "\" stroke-width=\"" << st.width << "\"";
    if (!st.dash.empty()) os << " stroke-dasharray=\"" << st.dash << "\"";
    os << " points=\"";
    for (std::size_t i = 0; i < n; ++i) {
      const double v = col.values[i];
      if (!std::isfinite(v)) continue;
      const double xv = bundle.index.empty() ? static_cast<double>(i) : static_cast<double>(bundle.index[i]);
      os << fmt_coord(px(xv)) << ',' << fmt_coord(py(std::clamp(v, y_lo, y_hi))) << ' ';
    }
    os << "\"/>\n";
  }

  // Legend.
  os << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t c = 0; c < bundle.columns.size(); ++c) {
    const auto st = style_for(bundle.columns[c].name, c);
    const double y = top + 14 + 16 * static_cast<double>(c);
    const double x = left + pw - 110;
    os << "<line x1=\"" << fmt_coord(x) << "\" y1=\"" << fmt_coord(y) << "\" x2=\"" << fmt_coord(x + 30)
       << "\" y2=\"" << fmt_coord(y) << "\" stroke=\"" << st.color << "\" stroke-width=\"" << st.width << "\"";
    if (!st.dash.empty()) os << " stroke-dasharray=\"" << st.dash << "\"";
    os << "/>\n<text x=\"" << fmt_coord(x + 36) << "\" y=\"" << fmt_coord(y + 4) << "\">"
       << xml_escape(bundle.columns[c].name) << "</text>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

void emit_svg(const SeriesBundle& bundle, const std::filesystem::path& path, const SvgOptions& opts) {
  write_file(path, format_svg(bundle, opts));
}

}  // namespace chemodde::io
