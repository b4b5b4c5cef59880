#include "bresse/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

#include "bresse/errors.hpp"

namespace bresse {

std::size_t CsvTable::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw Error("csv: missing column '" + name + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, res.ptr};
}

std::string to_csv(const CsvTable& t) {
  std::string out;
  for (std::size_t j = 0; j < t.columns.size(); ++j) {
    if (j) out += ',';
    out += t.columns[j];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      out += format_number(row[j]);
    }
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_cell(const std::string& s, std::size_t line) {
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw Error("csv: line " + std::to_string(line) + ": cannot parse '" + s + "'");
  }
  return x;
}

}  // namespace

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1) {
      t.columns = split(line);
      continue;
    }
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != t.columns.size()) {
      throw Error("csv: line " + std::to_string(lineno) + " has " + std::to_string(cells.size()) +
                  " cells, expected " + std::to_string(t.columns.size()));
    }
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(parse_cell(c, lineno));
    t.rows.push_back(std::move(row));
  }
  if (lineno == 0) throw Error("csv: empty input");
  return t;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str());
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

void write_csv(const std::string& path, const CsvTable& table) { write_file_atomic(path, to_csv(table)); }

CsvTable energy_table(const EnergyTrace& trace) {
  CsvTable t{{"t", "E", "loss"}, {}};
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    t.rows.push_back({trace.times[i], trace.energies[i], trace.boundary_losses[i]});
  }
  return t;
}

CsvTable spectrum_table(const SpectrumReport& report) {
  CsvTable t{{"re", "im"}, {}};
  for (cdouble z : report.eigenvalues) t.rows.push_back({z.real(), z.imag()});
  return t;
}

CsvTable sweep_table(const ResolventSweep& sweep) {
  CsvTable t{{"lambda", "norm"}, {}};
  for (std::size_t i = 0; i < sweep.lambdas.size(); ++i) t.rows.push_back({sweep.lambdas[i], sweep.norms[i]});
  return t;
}

namespace {

constexpr double kWidth = 640.0, kHeight = 400.0;
constexpr double kLeft = 70.0, kRight = 20.0, kTop = 30.0, kBottom = 50.0;

std::string fixed(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string label(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

struct Range {
  double lo = 0.0, hi = 1.0;
  void fit(const std::vector<double>& v) {
    if (v.empty()) return;
    lo = *std::min_element(v.begin(), v.end());
    hi = *std::max_element(v.begin(), v.end());
    if (hi - lo <= 1e-300 * std::max(1.0, std::abs(lo))) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

}  // namespace

std::string render_plot(const CsvTable& table, PlotKind kind) {
  std::string xname, yname, title;
  switch (kind) {
    case PlotKind::energy: xname = "t"; yname = "E"; title = "log10 energy"; break;
    case PlotKind::spectrum: xname = "re"; yname = "im"; title = "spectrum"; break;
    case PlotKind::resolvent: xname = "lambda"; yname = "norm"; title = "resolvent norm"; break;
  }
  const std::size_t ix = table.column(xname), iy = table.column(yname);

  std::vector<double> xs, ys;
  for (const auto& row : table.rows) {
    double x = row[ix], y = row[iy];
    if (kind == PlotKind::energy) {
      if (!(y > 0.0)) continue;
      y = std::log10(y);
    }
    if (!std::isfinite(x) || !std::isfinite(y)) continue;
    xs.push_back(x);
    ys.push_back(y);
  }
  Range rx, ry;
  rx.fit(xs);
  ry.fit(ys);
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + (x - rx.lo) / (rx.hi - rx.lo) * pw; };
  const auto py = [&](double y) { return kTop + ph - (y - ry.lo) / (ry.hi - ry.lo) * ph; };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" viewBox=\"0 0 640 400\">\n";
  s += "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
  s += "<text x=\"320\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" + title + "</text>\n";
  s += "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  s += "<line x1=\"" + fixed(kLeft) + "\" y1=\"" + fixed(kTop + ph) + "\" x2=\"" + fixed(kLeft + pw) + "\" y2=\"" +
       fixed(kTop + ph) + "\"/>\n";
  s += "<line x1=\"" + fixed(kLeft) + "\" y1=\"" + fixed(kTop) + "\" x2=\"" + fixed(kLeft) + "\" y2=\"" +
       fixed(kTop + ph) + "\"/>\n";
  s += "</g>\n";
  s += "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  s += "<text x=\"" + fixed(kLeft) + "\" y=\"" + fixed(kTop + ph + 16) + "\">" + label(rx.lo) + "</text>\n";
  s += "<text x=\"" + fixed(kLeft + pw) + "\" y=\"" + fixed(kTop + ph + 16) + "\" text-anchor=\"end\">" +
       label(rx.hi) + "</text>\n";
  s += "<text x=\"" + fixed(kLeft - 6) + "\" y=\"" + fixed(kTop + ph) + "\" text-anchor=\"end\">" + label(ry.lo) +
       "</text>\n";
  s += "<text x=\"" + fixed(kLeft - 6) + "\" y=\"" + fixed(kTop + 10) + "\" text-anchor=\"end\">" + label(ry.hi) +
       "</text>\n";
  s += "<text x=\"" + fixed(kLeft + pw / 2) + "\" y=\"" + fixed(kHeight - 12) + "\" text-anchor=\"middle\">" + xname +
       "</text>\n";
  s += "</g>\n";

  if (!xs.empty()) {
    if (kind == PlotKind::spectrum) {
      s += "<g fill=\"steelblue\">\n";
      for (std::size_t i = 0; i < xs.size(); ++i) {
        s += "<circle cx=\"" + fixed(px(xs[i])) + "\" cy=\"" + fixed(py(ys[i])) + "\" r=\"2\"/>\n";
      }
      s += "</g>\n";
    } else {
      s += "<path fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" d=\"";
      for (std::size_t i = 0; i < xs.size(); ++i) {
        s += (i == 0 ? "M" : " L") + fixed(px(xs[i])) + " " + fixed(py(ys[i]));
      }
      s += "\"/>\n";
    }
  }
  s += "</svg>\n";
  return s;
}

void emit_plot(const std::string& csv_path, PlotKind kind, const std::string& svg_path) {
  write_file_atomic(svg_path, render_plot(read_csv(csv_path), kind));
}

}  // namespace bresse
