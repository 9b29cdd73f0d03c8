#pragma once

#include <string>
#include <vector>

#include "mslab/constants.hpp"

namespace mslab {

// Shortest round-trip decimal form (up to 17 significant digits).
std::string format_double(double v);

// Atomic file write: temp file in the same directory, fsync, rename.
void atomic_write_file(const std::string& path, const std::string& content);

// CSV with header `x,sum,main_term,error_term,ratio`; integers in decimal,
// reals shortest round-trip. Rows must be ascending in x.
void emit_scan_csv(const std::vector<ScanRow>& rows, const std::string& path);

std::vector<ScanRow> read_scan_csv(const std::string& path);

// Self-contained SVG: log-scaled x axis, one polyline of (x, y_field),
// embedded axis labels, no external assets, deterministic bytes.
// y_field is one of sum, main_term, error_term, ratio.
void emit_svg_plot(const std::vector<ScanRow>& rows, const std::string& y_field,
                   const std::string& path);

}  // namespace mslab
