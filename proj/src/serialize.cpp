#include "conicwalk/serialize.hpp"

#include <cstdio>

namespace conicwalk {

using nlohmann::json;

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string out = "\"";
  for (char ch : value) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

json field_json(const Field& field) {
  return {{"p", field.characteristic()},
          {"d", field.degree()},
          {"q", field.order()},
          {"modulus", field.modulus()}};
}

json element_json(const Field& field, const FieldElement& x) {
  if (field.degree() == 1) return x.code();
  return x.coefficients();
}

json class_json(const ClassScheme& scheme, const ClassIndex& idx) {
  if (idx.is_isotropic()) return "iso";
  return element_json(scheme.field(), idx.value(scheme.field()));
}

json params_json(const ConicParams& params) {
  const Field& f = params.field();
  return {{"a", element_json(f, params.a())},
          {"b", element_json(f, params.b())},
          {"c", element_json(f, params.c())}};
}

json table_json(const StructureTable& table) {
  const auto& s = table.scheme();
  json classes = json::array();
  for (std::size_t i = 0; i < table.size(); ++i) {
    classes.push_back({{"class", class_json(s, s.at(i))}, {"size", table.class_sizes()[i]}});
  }
  json rows = json::array();
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t j = 0; j < table.size(); ++j) {
      json entries = json::object();
      for (std::size_t k = 0; k < table.size(); ++k) {
        if (!table.at(i, j, k).is_zero()) entries[s.label_at(k)] = table.at(i, j, k).to_string();
      }
      rows.push_back({{"i", class_json(s, s.at(i))}, {"j", class_json(s, s.at(j))}, {"n", entries}});
    }
  }
  return {{"field", field_json(s.field())},
          {"params", params_json(table.params())},
          {"null_circle", s.mode() == NullCircle::Split ? "split" : "unsplit"},
          {"source", source_name(table.source())},
          {"classes", classes},
          {"rows", rows}};
}

void write_table_csv(std::ostream& out, const StructureTable& table) {
  const auto& s = table.scheme();
  out << "i,j,k,num,den,N_i,N_j\n";
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t j = 0; j < table.size(); ++j) {
      for (std::size_t k = 0; k < table.size(); ++k) {
        const Rational& v = table.at(i, j, k);
        out << csv_field(s.label_at(i)) << ',' << csv_field(s.label_at(j)) << ','
            << csv_field(s.label_at(k)) << ',' << v.num() << ',' << v.den() << ','
            << table.class_sizes()[i] << ',' << table.class_sizes()[j] << '\n';
      }
    }
  }
}

void write_circle_csv(std::ostream& out, const ClassScheme& scheme,
                      const std::vector<std::pair<ClassIndex, std::vector<Point>>>& circles) {
  const auto label = [&](const FieldElement& x) { return scheme.label(ClassIndex::finite(x)); };
  out << "class,x,y\n";
  for (const auto& [idx, points] : circles) {
    for (const auto& pt : points) {
      out << csv_field(scheme.label(idx)) << ',' << csv_field(label(pt.x)) << ','
          << csv_field(label(pt.y)) << '\n';
    }
  }
}

json axiom_report_json(const AxiomReport& report, const ClassScheme& scheme) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    json violations = json::array();
    for (const auto& v : c.violations) {
      json entry = {{"i", scheme.label_at(v.i)}, {"j", scheme.label_at(v.j)}};
      if (v.k) entry["k"] = scheme.label_at(*v.k);
      violations.push_back(entry);
    }
    checks.push_back({{"axiom", c.name},
                      {"passed", c.passed},
                      {"violation_count", c.violations.size()},
                      {"violations", violations}});
  }
  return {{"all_passed", report.all_passed()}, {"checks", checks}};
}

json errata_json(const std::vector<Erratum>& errata) {
  json out = json::array();
  for (const auto& e : errata) {
    out.push_back({{"location", e.location}, {"paper_value", e.paper_value}, {"oracle_value", e.oracle_value}});
  }
  return out;
}

json kernel_json(const Kernel& k) {
  const auto& s = k.scheme();
  json rows = json::array();
  for (std::size_t i = 0; i < k.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < k.size(); ++j) row.push_back(k.exact(i, j).to_string());
    rows.push_back(row);
  }
  json labels = json::array();
  for (std::size_t i = 0; i < k.size(); ++i) labels.push_back(class_json(s, s.at(i)));
  return {{"field", field_json(s.field())}, {"step", class_json(s, k.step())},
          {"classes", labels}, {"matrix", rows}};
}

void write_kernel_csv(std::ostream& out, const Kernel& k) {
  const auto& s = k.scheme();
  out << "i,j,num,den,value\n";
  for (std::size_t i = 0; i < k.size(); ++i) {
    for (std::size_t j = 0; j < k.size(); ++j) {
      const Rational& v = k.exact(i, j);
      out << csv_field(s.label_at(i)) << ',' << csv_field(s.label_at(j)) << ',' << v.num() << ','
          << v.den() << ',' << format_double(k(i, j)) << '\n';
    }
  }
}

json distribution_json(const ClassScheme& scheme, const Distribution& d) {
  json out = json::array();
  for (std::size_t i = 0; i < d.size(); ++i) {
    out.push_back({{"class", class_json(scheme, scheme.at(i))}, {"p", d[i]}});
  }
  return out;
}

json minorization_json(const Minorization& m) {
  json out = {{"steps", m.steps}, {"value", m.value}};
  out["exact"] = m.exact ? json(m.exact->to_string()) : json(nullptr);
  return out;
}

json mixing_report_json(const MixingReport& r) {
  return {{"q", r.q},
          {"branch", branch_name(r.branch)},
          {"step", r.step},
          {"eps", r.eps},
          {"tau", r.tau},
          {"tau_bound", r.tau_bound},
          {"tv_curve", r.curve},
          {"minorization", minorization_json(r.minorization)},
          {"minorization_bound", r.minorization_bound.to_string()},
          {"minorization_ratio", r.minorization.value / r.minorization_bound.to_double()}};
}

void write_curve_csv(std::ostream& out, const std::vector<double>& curve) {
  out << "t,max_tv\n";
  for (std::size_t t = 0; t < curve.size(); ++t) out << t << ',' << format_double(curve[t]) << '\n';
}

json coupling_stats_json(const CouplingStats& stats) {
  return {{"trials", stats.trials},
          {"seed", stats.seed},
          {"start", stats.start},
          {"mean_time", stats.mean_time()},
          {"max_time", stats.tail.empty() ? 0 : stats.tail.size() - 1},
          {"tail", stats.tail},
          {"times", stats.times}};
}

void write_coupling_histogram_csv(std::ostream& out, const CouplingStats& stats) {
  std::vector<std::uint64_t> hist(stats.tail.size(), 0);
  for (auto t : stats.times) ++hist[t];
  out << "t,count,empirical_tail\n";
  for (std::size_t t = 0; t < hist.size(); ++t) {
    out << t << ',' << hist[t] << ',' << format_double(stats.tail[t]) << '\n';
  }
}

ScanRow scan_row(const MixingReport& report, std::size_t class_count) {
  return ScanRow{report.q,   report.branch,         class_count,
                 report.tau, report.tau_bound,      report.minorization.value,
                 report.minorization_bound.to_double()};
}

void write_scan_header(std::ostream& out) {
  out << "q,branch,class_count,tau_measured,tau_paper_bound,minorization_measured,"
         "minorization_paper,ratio_tau_over_q\n";
}

void write_scan_row(std::ostream& out, const ScanRow& row) {
  out << row.q << ',' << branch_name(row.branch) << ',' << row.class_count << ',' << row.tau << ','
      << row.tau_bound << ',' << format_double(row.minorization) << ','
      << format_double(row.minorization_bound) << ',' << format_double(row.tau_over_q()) << '\n';
}

}  // namespace conicwalk
