#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "maxiset/minimax.hpp"
#include "maxiset/montecarlo.hpp"
#include "maxiset/quadratic.hpp"
#include "maxiset/report.hpp"
#include "maxiset/sampling.hpp"
#include "maxiset/spectrum.hpp"

namespace maxiset {

using Cell = std::variant<std::int64_t, std::uint64_t, double, std::string, bool>;

/// Rectangular result set written as versioned CSV or JSON.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

/// Shortest round-trip decimal form ("%.17g" trimmed), so output is stable
/// across runs and platforms with IEEE doubles.
std::string format_double(double v);

/// "# schema=v1", a header line, then one line per row.
void write_csv(std::ostream& out, const Table& table);
/// {"schema": "v1", "columns": [...], "rows": [[...], ...]}
void write_json(std::ostream& out, const Table& table);
void write_table(std::ostream& out, const Table& table, const std::string& format);

nlohmann::json spectrum_to_json(const Spectrum& theta);
/// {"basis": "...", "coeffs": [...]}; complex coefficients are [re, im] pairs.
Spectrum spectrum_from_json(const nlohmann::json& doc);

nlohmann::json report_to_json(const TestReport& report);
nlohmann::json design_to_json(const Design& design);
nlohmann::json summary_to_json(const MonteCarloSummary& summary);

/// (x, value) rows of a tabulated density.
void write_density_csv(std::ostream& out, const DensityTable& table);
/// (j, kappa2) rows.
void write_coefficients_csv(std::ostream& out, const QuadraticCoefficients& coeffs);

/// One value per line; blank lines and lines starting with '#' are skipped.
Sample read_sample_csv(const std::filesystem::path& path);

nlohmann::json read_json_file(const std::filesystem::path& path);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace maxiset
