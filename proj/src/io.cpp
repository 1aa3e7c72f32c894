#include "maxiset/io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "maxiset/error.hpp"

namespace maxiset {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw InvalidInput("table row has " + std::to_string(row.size()) +
                       " cells, expected " + std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

namespace {

std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          return std::to_string(v);
        }
      },
      c);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

nlohmann::json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return format_double(v);
          return v;
        } else {
          return v;
        }
      },
      c);
}

}  // namespace

void write_csv(std::ostream& out, const Table& table) {
  out << "# schema=v1\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << csv_escape(table.columns[i]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << csv_escape(cell_text(row[i]));
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const Table& table) {
  nlohmann::json doc;
  doc["schema"] = "v1";
  doc["columns"] = table.columns;
  doc["rows"] = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& c : row) r.push_back(cell_json(c));
    doc["rows"].push_back(std::move(r));
  }
  out << doc.dump(2) << '\n';
}

void write_table(std::ostream& out, const Table& table, const std::string& format) {
  if (format == "csv") {
    write_csv(out, table);
  } else if (format == "json") {
    write_json(out, table);
  } else {
    throw InvalidInput("unknown output format '" + format + "' (csv or json)");
  }
}

nlohmann::json spectrum_to_json(const Spectrum& theta) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& v : theta.values()) {
    if (theta.basis() == Basis::complex_exponential) {
      coeffs.push_back({v.real(), v.imag()});
    } else {
      coeffs.push_back(v.real());
    }
  }
  return {{"basis", std::string(to_string(theta.basis()))}, {"coeffs", coeffs}};
}

Spectrum spectrum_from_json(const nlohmann::json& doc) {
  try {
    const Basis basis = basis_from_string(doc.at("basis").get<std::string>());
    const auto& raw = doc.at("coeffs");
    if (!raw.is_array() || raw.empty()) {
      throw InvalidInput("spectrum JSON: 'coeffs' must be a non-empty array");
    }
    std::vector<Spectrum::value_type> values;
    values.reserve(raw.size());
    for (const auto& c : raw) {
      if (c.is_array()) {
        if (c.size() != 2) throw InvalidInput("complex coefficient must be [re, im]");
        values.emplace_back(c[0].get<double>(), c[1].get<double>());
      } else {
        values.emplace_back(c.get<double>(), 0.0);
      }
    }
    return Spectrum(basis, std::move(values));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("spectrum JSON: ") + e.what());
  }
}

nlohmann::json report_to_json(const TestReport& r) {
  nlohmann::json doc = {{"family", r.family},         {"statistic", r.statistic},
                        {"centering", r.centering},   {"scale", r.scale},
                        {"standardized", r.standardized}, {"threshold", r.threshold},
                        {"reject", r.reject},         {"alpha", r.alpha}};
  doc["predicted_type2"] =
      r.predicted_type2 ? nlohmann::json(*r.predicted_type2) : nlohmann::json(nullptr);
  return doc;
}

nlohmann::json design_to_json(const Design& d) {
  nlohmann::json doc = {{"s", d.s},
                        {"P0", d.P0},
                        {"rho", d.rho},
                        {"n", d.n},
                        {"sigma", d.sigma},
                        {"k", d.k},
                        {"k_real", d.k_real},
                        {"kappa2_plateau", d.kappa2_plateau},
                        {"J", d.J()},
                        {"A_n", d.A_n},
                        {"C_n", d.C_n},
                        {"null_mean", d.null_mean},
                        {"centering", d.centering},
                        {"residual_i2", d.residual_i2},
                        {"residual_i3", d.residual_i3},
                        {"inverse", d.inverse()},
                        {"kappa2", d.kappa2}};
  if (d.inverse()) doc["lambda"] = d.lambda;
  return doc;
}

nlohmann::json summary_to_json(const MonteCarloSummary& s) {
  return {{"experiment", s.experiment}, {"reps", s.reps},   {"rejections", s.rejections},
          {"rate", s.rate},             {"std_err", s.std_err}, {"seed", s.seed}};
}

void write_density_csv(std::ostream& out, const DensityTable& table) {
  out << "x,value\n";
  for (std::size_t i = 0; i < table.x.size(); ++i) {
    out << format_double(table.x[i]) << ',' << format_double(table.value[i]) << '\n';
  }
}

void write_coefficients_csv(std::ostream& out, const QuadraticCoefficients& coeffs) {
  out << "j,kappa2\n";
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    out << j + 1 << ',' << format_double(coeffs.kappa2()[j]) << '\n';
  }
}

Sample read_sample_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open sample file " + path.string());
  std::vector<double> xs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      std::size_t used = 0;
      xs.push_back(std::stod(line.substr(first), &used));
    } catch (const std::exception&) {
      throw InvalidInput(path.string() + ":" + std::to_string(lineno) +
                         ": not a number");
    }
  }
  return Sample(std::move(xs));
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace maxiset
