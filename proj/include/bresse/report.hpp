#pragma once

#include <string>
#include <vector>

#include "bresse/spectral.hpp"
#include "bresse/timeint.hpp"

namespace bresse {

/// Numeric table with named columns; the only CSV shape the tool writes.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Index of a column; throws Error naming it when absent.
  std::size_t column(const std::string& name) const;
};

/// Shortest decimal that parses back to the same double.
std::string format_number(double x);

std::string to_csv(const CsvTable& table);
/// Throws Error on ragged rows or unparsable cells.
CsvTable parse_csv(const std::string& text);
CsvTable read_csv(const std::string& path);

/// Writes through a temporary file in the same directory and renames it.
void write_file_atomic(const std::string& path, const std::string& content);
void write_csv(const std::string& path, const CsvTable& table);

CsvTable energy_table(const EnergyTrace& trace);       // t, E, loss
CsvTable spectrum_table(const SpectrumReport& report);  // re, im
CsvTable sweep_table(const ResolventSweep& sweep);      // lambda, norm

enum class PlotKind {
  energy,     // log10 E against t
  spectrum,   // eigenvalue cloud, Re horizontal
  resolvent,  // norm against lambda
};

/// Deterministic SVG on a fixed 640 x 400 canvas. Empty tables give the axes
/// only. Throws Error when the columns of the kind are missing.
std::string render_plot(const CsvTable& table, PlotKind kind);
void emit_plot(const std::string& csv_path, PlotKind kind, const std::string& svg_path);

}  // namespace bresse
