#pragma once

// JSON and CSV forms of the library's reports. CSV: comma separated, one
// header row, LF endings, rationals as "num/den", floats with 17
// significant digits. Labels of extension-field classes contain commas and
// are quoted.

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "conicwalk/coupling_sim.hpp"
#include "conicwalk/hypergroup.hpp"
#include "conicwalk/walk_analysis.hpp"

namespace conicwalk {

std::string format_double(double value);
std::string csv_field(const std::string& value);

nlohmann::json field_json(const Field& field);
/// Bare integer for prime fields, coefficient array [c_0..c_{d-1}] otherwise.
nlohmann::json element_json(const Field& field, const FieldElement& x);
nlohmann::json class_json(const ClassScheme& scheme, const ClassIndex& idx);
nlohmann::json params_json(const ConicParams& params);

nlohmann::json table_json(const StructureTable& table);
void write_table_csv(std::ostream& out, const StructureTable& table);

void write_circle_csv(std::ostream& out, const ClassScheme& scheme,
                      const std::vector<std::pair<ClassIndex, std::vector<Point>>>& circles);

nlohmann::json axiom_report_json(const AxiomReport& report, const ClassScheme& scheme);
nlohmann::json errata_json(const std::vector<Erratum>& errata);

nlohmann::json kernel_json(const Kernel& k);
void write_kernel_csv(std::ostream& out, const Kernel& k);

nlohmann::json distribution_json(const ClassScheme& scheme, const Distribution& d);

nlohmann::json minorization_json(const Minorization& m);
nlohmann::json mixing_report_json(const MixingReport& report);
void write_curve_csv(std::ostream& out, const std::vector<double>& curve);

nlohmann::json coupling_stats_json(const CouplingStats& stats);
/// Columns (t, count, empirical_tail), t = 0..max T.
void write_coupling_histogram_csv(std::ostream& out, const CouplingStats& stats);

/// One row of the q sweep.
struct ScanRow {
  std::uint32_t q = 0;
  Branch branch = Branch::ThreeModFour;
  std::size_t class_count = 0;
  std::size_t tau = 0;
  std::int64_t tau_bound = 0;
  double minorization = 0.0;
  double minorization_bound = 0.0;
  double tau_over_q() const { return static_cast<double>(tau) / static_cast<double>(q); }
};

ScanRow scan_row(const MixingReport& report, std::size_t class_count);
void write_scan_header(std::ostream& out);
void write_scan_row(std::ostream& out, const ScanRow& row);

}  // namespace conicwalk
