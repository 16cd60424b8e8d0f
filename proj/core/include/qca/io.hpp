/**
 * Deterministic file output: atomic text writes, CSV with full-precision
 * numbers, JSON report scaffolding, gnuplot script emission, and binary field
 * snapshots with a small text header.
 */
#pragma once

#include "qca/lattice.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace qca::io {

/// Full-precision, locale-independent rendering of a double ("%.17g", "." as
/// the decimal separator); the byte-reproducibility anchor of all outputs.
std::string format_double(double x);

/// Writes content to path atomically (temp file in the same directory +
/// rename). Creates parent directories as needed.
void atomic_write_text(const std::filesystem::path& path, const std::string& content);

/// Comma-separated table with a header row; numbers rendered by format_double.
class CsvTable {
  public:
    explicit CsvTable(std::vector<std::string> header);
    void add_row(const std::vector<double>& values);
    void add_row(const std::vector<std::string>& cells);
    std::size_t rows() const { return rows_.size(); }
    std::string to_string() const;
    void write(const std::filesystem::path& path) const;

  private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Gnuplot script plotting selected CSV columns against the first column;
/// written next to the data file ("<csv>.gp").
void write_gnuplot_script(const std::filesystem::path& csv_path,
                          const std::string& title,
                          const std::vector<std::string>& y_columns,
                          const std::string& x_column);

/// Binary spinor-field snapshot: text header lines (format tag, shape, spin,
/// endianness, payload description) terminated by a blank line, followed by
/// raw interleaved re/im doubles in native little-endian order.
void write_snapshot(const std::filesystem::path& path, const lattice::SpinorField& field);
lattice::SpinorField read_snapshot(const std::filesystem::path& path);

/// Flat key = value configuration text: '#' comments, blank lines ignored,
/// later keys override earlier ones. Throws ConfigError on malformed lines.
std::map<std::string, std::string> parse_config_text(const std::string& text);
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);

}  // namespace qca::io
