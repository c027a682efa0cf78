#pragma once

// Field and report serialization: CSV (x,p,value triples), a compact binary
// layout (magic, grid header, row-major float64), and JSON/CSV report
// bundles.

#include <filesystem>
#include <vector>

#include "phasespace/inequalities.hpp"
#include "phasespace/transforms.hpp"

namespace phasespace {

/// "x,p,value" rows (header included), 17 significant digits.
void write_field_csv(const std::filesystem::path& path, const RealField2D& f);
/// "x,p,re,im" rows for complex fields.
void write_field_csv(const std::filesystem::path& path, const Field2D& f);

/// Binary layout (little-endian):
///   magic  "PSFLD001"  (8 bytes)
///   u32    kind        (0 = real, 1 = complex interleaved)
///   u32    nx, np
///   f64    x_min, x_max, p_min, p_max, hbar
///   f64    payload, row-major in x (2 nx np values when complex)
void write_field_binary(const std::filesystem::path& path, const RealField2D& f,
                        double hbar);
void write_field_binary(const std::filesystem::path& path, const Field2D& f,
                        double hbar);

struct LoadedField {
  RealField2D field;
  double hbar;
};
LoadedField read_field_binary(const std::filesystem::path& path);

/// JSON array of report objects, in the given order.
void write_reports_json(const std::filesystem::path& path,
                        std::span<const InequalityReport> reports);
/// CSV summary with the fixed column order of InequalityReport::csv_header().
void write_reports_csv(const std::filesystem::path& path,
                       std::span<const InequalityReport> reports);

}  // namespace phasespace
