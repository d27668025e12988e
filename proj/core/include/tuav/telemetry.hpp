// CSV telemetry, animation frames and metrics export.
#pragma once

#include <string>
#include <vector>

#include "tuav/catenary.hpp"
#include "tuav/metrics.hpp"
#include "tuav/sim_engine.hpp"

namespace tuav {

/// Column names of the telemetry CSV, in order.
const std::vector<std::string>& csv_columns();

/// One row of numbers per log row, matching csv_columns().
std::vector<double> csv_row(const LogRow& row);

/// Writes header plus one row per log row with 9 significant digits, comma
/// separated, LF terminated. Returns the number of data rows. Throws
/// Error(io) when the file cannot be written.
std::size_t export_csv(const SimLog& log, const std::string& path);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    /// Index of `name` in the header; throws Error(io) if absent.
    std::size_t column(const std::string& name) const;
};

/// Reads a file written by export_csv. Throws Error(io) on unreadable files
/// and on rows whose width differs from the header.
CsvTable read_csv(const std::string& path);

/// Rebuilds the parts of a log that metrics need (time, errors, Lyapunov
/// values) from a telemetry table.
SimLog log_from_csv(const CsvTable& table);

/// Writes every `stride`-th row as one JSON object per line with the UAV
/// position and an N-point tether polyline from the anchor at the origin.
/// Rows whose catenary cannot be fitted get a straight line and
/// "degenerate": true. Returns the number of frames.
std::size_t export_frames(const SimLog& log, const std::string& path, std::size_t stride,
                          int samples, const TetherMaterial& material);

/// Metrics as a JSON document.
std::string metrics_json(const Metrics& metrics, const SimLog& log, const std::string& scenario);

/// Writes `text` to `path`; throws Error(io) on failure.
void write_text_file(const std::string& path, const std::string& text);

} // namespace tuav
