#include "arslie/output.hpp"

#include "arslie/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

namespace arslie {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(const std::vector<double>& row) {
  if (row.size() != header_.size())
    throw InvariantViolation("csv row has " + std::to_string(row.size()) + " cells, header has " +
                             std::to_string(header_.size()));
  rows_.push_back(row);
}

std::string CsvTable::str() const {
  std::string out;
  for (std::size_t i = 0; i < header_.size(); ++i) out += (i ? "," : "") + header_[i];
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else if (c == '&')
      out += "&amp;";
    else
      out += c;
  }
  return out;
}

}  // namespace

std::string render_svg(const std::vector<Polyline>& lines, const std::string& x_label, const std::string& y_label,
                       const std::string& title) {
  constexpr double W = 640, H = 480, M = 60;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& l : lines)
    for (const auto& [x, y] : l) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  if (!(x0 <= x1)) x0 = -1, x1 = 1, y0 = -1, y1 = 1;
  if (x1 - x0 < 1e-12) x0 -= 0.5, x1 += 0.5;
  if (y1 - y0 < 1e-12) y0 -= 0.5, y1 += 0.5;
  auto px = [&](double x) { return M + (x - x0) / (x1 - x0) * (W - 2 * M); };
  auto py = [&](double y) { return H - M - (y - y0) / (y1 - y0) * (H - 2 * M); };

  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" viewBox=\"0 0 640 480\">\n";
  s += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  s += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" + escape(title) + "</text>\n";
  s += "<rect x=\"60\" y=\"60\" width=\"520\" height=\"360\" fill=\"none\" stroke=\"black\"/>\n";
  s += "<text x=\"60\" y=\"438\" font-size=\"11\">" + num(x0) + "</text>\n";
  s += "<text x=\"580\" y=\"438\" text-anchor=\"end\" font-size=\"11\">" + num(x1) + "</text>\n";
  s += "<text x=\"54\" y=\"420\" text-anchor=\"end\" font-size=\"11\">" + num(y0) + "</text>\n";
  s += "<text x=\"54\" y=\"68\" text-anchor=\"end\" font-size=\"11\">" + num(y1) + "</text>\n";
  s += "<text x=\"320\" y=\"460\" text-anchor=\"middle\" font-size=\"12\">" + escape(x_label) + "</text>\n";
  s += "<text x=\"20\" y=\"240\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 20 240)\">" +
       escape(y_label) + "</text>\n";
  for (const auto& l : lines) {
    std::string pts;
    for (const auto& [x, y] : l) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (!pts.empty()) pts += ' ';
      pts += num(px(x)) + "," + num(py(y));
    }
    if (pts.empty()) continue;
    s += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.2\" points=\"" + pts + "\"/>\n";
  }
  s += "</svg>\n";
  return s;
}

void write_file(const std::string& path, const std::string& contents) {
  std::error_code ec;
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  if (ec) throw IoError("cannot create directory '" + p.parent_path().string() + "': " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << contents;
  out.flush();
  if (!out) throw IoError("error while writing '" + path + "'");
}

}  // namespace arslie
