// output.hpp - CSV tables with a commented header block, plus plot scripts.
//
// Every table starts with '#' lines: the tool version, each resolved config
// entry and free-form notes, then one column-name line and the data rows.
// Numbers are printed with 17 significant digits so reruns are byte-identical.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shearless/config.hpp"

namespace shearless::io {

inline constexpr std::string_view kVersion = "1.0.0";

struct OutputTable {
  std::string name;  // file stem, e.g. "sos"
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> header;  // resolved config
  std::vector<std::pair<std::string, std::string>> notes;   // run results
  std::string figure;  // plot kind, empty for none

  /// Throws InvalidArgument when the row width does not match the columns.
  void add_row(std::vector<double> row);
  void note(std::string key, std::string value);
  /// Value of a note, or nullptr.
  const std::string* find_note(std::string_view key) const;
  std::string to_csv() const;
};

OutputTable make_table(std::string name, std::vector<std::string> columns,
                       const config::ExperimentConfig& cfg);

/// Writes <dir>/<name>.csv, creating dir. Throws IoError.
std::filesystem::path write_table(const OutputTable& table, const std::filesystem::path& dir);

/// Supported kinds: sos, heatmap, spectrum, concurrence, rotation, series.
bool is_figure_kind(std::string_view kind);

/// Python/matplotlib script that reads <table.name>.csv from its own
/// directory and saves <table.name>.png. Throws UnknownFigureKind.
std::string plot_script(const OutputTable& table, std::string_view figure_kind);

/// Writes <dir>/<name>.py. Throws UnknownFigureKind or IoError.
std::filesystem::path emit_plot_script(const OutputTable& table, std::string_view figure_kind,
                                       const std::filesystem::path& dir);

}  // namespace shearless::io
