#include "conicwalk/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "conicwalk/coupling_sim.hpp"
#include "conicwalk/error.hpp"
#include "conicwalk/serialize.hpp"

namespace conicwalk::cli {

namespace {

using nlohmann::json;

constexpr double kStationaryTolerance = 1e-12;
constexpr std::uint32_t kExactStationaryMaxOrder = 31;

struct RunConfig {
  std::string command;
  std::string provenance;

  std::uint32_t p = 0;
  std::uint32_t d = 1;
  std::uint32_t q = 0;
  std::string modulus;
  std::string a = "1";
  std::string b = "1";
  std::string c;
  std::string step = "1";
  std::string start = "0";
  std::string cls;
  std::string format = "csv";
  std::string out = "-";

  std::string source = "closed-form";
  bool verify_oracle = false;
  bool unsplit = false;
  std::string errata_path = "errata.json";
  std::uint32_t oracle_cap = kDefaultOracleCap;

  double eps = reference_epsilon();
  double boost_eps = 0.0;
  std::size_t decay = 0;
  std::size_t steps = 0;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 42;
  std::uint32_t qmin = 7;
  std::uint32_t qmax = 199;
  std::string branch = "both";
};

class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

std::int64_t parse_int(const std::string& s) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("not an integer: '" + s + "'");
  }
  if (used != s.size()) throw ConfigError("not an integer: '" + s + "'");
  return v;
}

Field build_field(const RunConfig& cfg) {
  if (cfg.q != 0) {
    if (cfg.p != 0) throw ConfigError("give either --q or --p/--d, not both");
    auto f = field_of_order(cfg.q);
    if (!f) throw ConfigError("q must be an odd prime power (got " + std::to_string(cfg.q) + ")");
    return *f;
  }
  if (cfg.p == 0) throw ConfigError("a field is required: --p P [--d D] or --q Q");
  if (!cfg.modulus.empty()) {
    std::vector<std::uint32_t> modulus;
    for (const auto& part : split(cfg.modulus, ',')) {
      const auto v = parse_int(part);
      if (v < 0) throw ConfigError("modulus coefficients must be non-negative");
      modulus.push_back(static_cast<std::uint32_t>(v));
    }
    if (modulus.size() != cfg.d + 1) throw ConfigError("--modulus needs d + 1 coefficients c_0..c_d");
    return make_extension_field(cfg.p, modulus);
  }
  return make_field(cfg.p, cfg.d);
}

// "5" is the integer 5 mapped into the field; "1:2" is c_0 = 1, c_1 = 2.
FieldElement parse_element(const Field& field, const std::string& text) {
  if (text.find(':') == std::string::npos) return field.from_int(parse_int(text));
  std::vector<std::int64_t> coeffs;
  for (const auto& part : split(text, ':')) coeffs.push_back(parse_int(part));
  return field.from_coefficients(coeffs);
}

ClassIndex parse_class(const Field& field, const std::string& text) {
  if (text == "iso") return ClassIndex::isotropic(field);
  return ClassIndex::finite(parse_element(field, text));
}

ConicParams build_params(const RunConfig& cfg, const Field& field) {
  const auto a = parse_element(field, cfg.a);
  const auto b = parse_element(field, cfg.b);
  if (cfg.c.empty()) return ConicParams::from_ab(field, a, b);
  return ConicParams::from_abc(field, a, b, parse_element(field, cfg.c));
}

NullCircle null_mode(const RunConfig& cfg) {
  return cfg.unsplit ? NullCircle::Unsplit : NullCircle::Split;
}

TableSource parse_source(const std::string& s) {
  if (s == "closed-form") return TableSource::ClosedForm;
  if (s == "oracle") return TableSource::Oracle;
  if (s == "as-stated") return TableSource::AsStated;
  throw ConfigError("unknown --source '" + s + "'");
}

bool csv(const RunConfig& cfg) { return cfg.format == "csv"; }

json meta(const RunConfig& cfg) { return {{"command", cfg.command}, {"args", cfg.provenance}}; }

void csv_meta(std::ostream& os, const RunConfig& cfg) { os << "# " << cfg.provenance << '\n'; }

void warn_cap(const RunConfig& cfg, std::ostream& err) {
  if (cfg.oracle_cap > kDefaultOracleCap) {
    err << "warning: oracle cap raised to " << cfg.oracle_cap
        << "; enumeration cost grows as q^4\n";
  }
}

void write_json(std::ostream& os, const json& doc) { os << doc.dump(2) << '\n'; }

// ---------------------------------------------------------------- commands

int cmd_constants(const RunConfig& cfg, std::ostream& os, std::ostream& err) {
  const Field field = build_field(cfg);
  const ConicParams params = build_params(cfg, field);
  const NullCircle mode = null_mode(cfg);
  warn_cap(cfg, err);
  const StructureTable table = build_table(params, parse_source(cfg.source), mode, cfg.oracle_cap);
  const AxiomReport axioms = verify_axioms(table);

  int status = kExitOk;
  std::optional<std::size_t> mismatches;
  if (cfg.verify_oracle) {
    const StructureTable closed = build_table(params, TableSource::ClosedForm, mode);
    const StructureTable oracle = oracle_table(params, mode, cfg.oracle_cap);
    mismatches = compare_tables(closed, oracle).size();
    auto errata = structure_errata(params, cfg.oracle_cap);
    for (auto& e : walk_errata(params)) errata.push_back(std::move(e));
    std::ofstream file(cfg.errata_path);
    if (!file) throw ConfigError("cannot write errata report to " + cfg.errata_path);
    write_json(file, errata_json(errata));
    err << "oracle verification: " << *mismatches << " mismatches over " << table.size() << "^3 entries; "
        << errata.size() << " errata written to " << cfg.errata_path << '\n';
    if (*mismatches != 0) status = kExitVerification;
  }
  for (const auto& c : axioms.checks) {
    err << "axiom " << c.name << ": " << (c.passed ? "pass" : "FAIL");
    if (!c.passed) err << " (" << c.violations.size() << " violations)";
    err << '\n';
  }

  if (csv(cfg)) {
    csv_meta(os, cfg);
    write_table_csv(os, table);
  } else {
    json doc = {{"meta", meta(cfg)}, {"table", table_json(table)},
                {"axioms", axiom_report_json(axioms, table.scheme())}};
    if (mismatches) doc["oracle_mismatches"] = *mismatches;
    write_json(os, doc);
  }
  return status;
}

int cmd_circles(const RunConfig& cfg, std::ostream& os, std::ostream& err) {
  const Field field = build_field(cfg);
  const ConicParams params = build_params(cfg, field);
  const ClassScheme scheme(field, null_mode(cfg));
  warn_cap(cfg, err);
  std::vector<std::pair<ClassIndex, std::vector<Point>>> circles;
  if (cfg.cls.empty()) {
    for (const auto& idx : scheme.indices()) {
      circles.emplace_back(idx, circle_points(idx, params, scheme.mode(), cfg.oracle_cap));
    }
  } else {
    const auto idx = parse_class(field, cfg.cls);
    circles.emplace_back(idx, circle_points(idx, params, scheme.mode(), cfg.oracle_cap));
  }
  for (const auto& [idx, pts] : circles) {
    const auto expected = class_size(idx, params, scheme.mode());
    if (static_cast<std::int64_t>(pts.size()) != expected) {
      err << "class " << scheme.label(idx) << ": enumerated " << pts.size() << " points, closed form "
          << expected << '\n';
      return kExitVerification;
    }
  }
  csv_meta(os, cfg);
  write_circle_csv(os, scheme, circles);
  return kExitOk;
}

int cmd_axioms(const RunConfig& cfg, std::ostream& os, std::ostream& err) {
  const Field field = build_field(cfg);
  const ConicParams params = build_params(cfg, field);
  warn_cap(cfg, err);
  const StructureTable table =
      build_table(params, parse_source(cfg.source), null_mode(cfg), cfg.oracle_cap);
  const AxiomReport report = verify_axioms(table);
  if (csv(cfg)) {
    csv_meta(os, cfg);
    os << "axiom,passed,violation_count\n";
    for (const auto& c : report.checks) {
      os << c.name << ',' << (c.passed ? "true" : "false") << ',' << c.violations.size() << '\n';
    }
  } else {
    write_json(os, {{"meta", meta(cfg)}, {"axioms", axiom_report_json(report, table.scheme())}});
  }
  err << "axioms: " << (report.all_passed() ? "all pass" : "FAILED") << '\n';
  return report.all_passed() ? kExitOk : kExitVerification;
}

int cmd_kernel(const RunConfig& cfg, std::ostream& os, std::ostream&) {
  const Field field = build_field(cfg);
  const ConicParams params = build_params(cfg, field);
  const Kernel k = kernel(params, parse_class(field, cfg.step));
  if (csv(cfg)) {
    csv_meta(os, cfg);
    write_kernel_csv(os, k);
  } else {
    write_json(os, {{"meta", meta(cfg)}, {"kernel", kernel_json(k)}});
  }
  return kExitOk;
}

json certificate_json(const ErgodicityCertificate& c) {
  json out = {{"ergodic", c.ergodic()},     {"irreducible", c.irreducible},
              {"aperiodic", c.aperiodic},   {"period", c.period},
              {"unreachable", c.unreachable}, {"cannot_return", c.cannot_return}};
  out["self_loop"] = c.self_loop ? json(*c.self_loop) : json(nullptr);
  return out;
}

int cmd_stationary(const RunConfig& cfg, std::ostream& os, std::ostream& err) {
  const Field field = build_field(cfg);
  const ConicParams params = build_params(cfg, field);
  const Kernel k = kernel(params, parse_class(field, cfg.step));
  const auto cert = ergodicity_check(k);
  const Distribution pi = stationary(k);
  const Distribution h = haar(params);
  double sup = 0.0;
  for (std::size_t i = 0; i < pi.size(); ++i) sup = std::max(sup, std::abs(pi[i] - h[i]));
  std::optional<bool> exact;
  if (field.order() <= kExactStationaryMaxOrder) exact = is_stationary_exact(k, haar_exact(params));

  const bool ok = sup <= kStationaryTolerance && exact.value_or(true);
  err << "stationary vs class-size distribution: sup norm " << format_double(sup)
      << (exact ? (*exact ? ", exact pi K = pi" : ", exact check FAILED") : "") << '\n';
  if (csv(cfg)) {
    csv_meta(os, cfg);
    os << "class,stationary,haar\n";
    for (std::size_t i = 0; i < pi.size(); ++i) {
      os << csv_field(k.scheme().label_at(i)) << ',' << format_double(pi[i]) << ','
         << format_double(h[i]) << '\n';
    }
  } else {
    json doc = {{"meta", meta(cfg)},
                {"stationary", distribution_json(k.scheme(), pi)},
                {"haar", distribution_json(k.scheme(), h)},
                {"sup_norm", sup},
                {"ergodicity", certificate_json(cert)}};
    doc["exact_stationary"] = exact ? json(*exact) : json(nullptr);
    write_json(os, doc);
  }
  return ok ? kExitOk : kExitVerification;
}

bool bound_hypotheses_hold(std::uint32_t q) {
  return branch_of(q) == Branch::ThreeModFour || q >= 13;
}

int cmd_mixing(const RunConfig& cfg, std::ostream& os, std::ostream& err) {
  const Field field = build_field(cfg);
  const ConicParams params = build_params(cfg, field);
  if (!(cfg.eps > 0.0 && cfg.eps < 1.0)) throw ConfigError("--eps must lie in (0, 1)");
  const ClassIndex step = parse_class(field, cfg.step);
  const MixingReport report = mixing_report(params, step, cfg.eps);
  json doc = {{"meta", meta(cfg)}, {"report", mixing_report_json(report)}};

  bool ok = report.tau <= static_cast<std::size_t>(report.tau_bound) || cfg.eps != reference_epsilon();
  const Kernel k = kernel(params, step);
  const Distribution pi = haar(params);
  if (cfg.boost_eps > 0.0) {
    const auto boost = boost_check(k, pi, cfg.boost_eps);
    doc["boost"] = {{"eps", boost.eps}, {"tau_eps", boost.tau_eps},
                    {"tau_reference", boost.tau_reference}, {"factor", boost.factor},
                    {"holds", boost.holds}};
    ok = ok && boost.holds;
  }
  if (cfg.decay > 0) {
    const auto decay = geometric_decay_check(k, pi, report.minorization.steps,
                                             report.minorization.value, cfg.decay);
    json rows = json::array();
    for (const auto& r : decay.rows) {
      rows.push_back({{"n", r.n}, {"tv", r.tv}, {"bound", r.bound}, {"passed", r.passed}});
    }
    doc["decay"] = {{"m", decay.m}, {"c", decay.c}, {"passed", decay.passed}, {"rows", rows}};
    ok = ok && decay.passed;
  }

  err << "q = " << report.q << ": tau(" << format_double(cfg.eps) << ") = " << report.tau
      << ", bound " << report.tau_bound << '\n';
  if (csv(cfg)) {
    csv_meta(os, cfg);
    write_curve_csv(os, report.curve);
  } else {
    write_json(os, doc);
  }
  return ok || !bound_hypotheses_hold(report.q) ? kExitOk : kExitVerification;
}

int cmd_minorize(const RunConfig& cfg, std::ostream& os, std::ostream& err) {
  const Field field = build_field(cfg);
  const ConicParams params = build_params(cfg, field);
  const std::uint32_t q = field.order();
  const Branch branch = branch_of(q);
  const std::size_t m = cfg.steps == 0 ? minorization_steps(branch) : cfg.steps;
  const Kernel k = kernel(params, parse_class(field, cfg.step));
  const Minorization value = minorization_constant(k, haar_exact(params), m);
  const Rational bound = minorization_bound(q, branch);
  const bool asserted = m == minorization_steps(branch) && bound_hypotheses_hold(q);
  const bool holds = value.exact ? *value.exact >= bound : value.value >= bound.to_double();

  err << "min K^" << m << "/pi = "
      << (value.exact ? value.exact->to_string() : format_double(value.value)) << " vs bound "
      << bound.to_string() << (asserted ? "" : " (not asserted: outside the bound's hypotheses)")
      << '\n';
  if (csv(cfg)) {
    csv_meta(os, cfg);
    os << "q,steps,measured,measured_exact,bound,ratio,asserted,holds\n";
    os << q << ',' << m << ',' << format_double(value.value) << ','
       << (value.exact ? value.exact->to_string() : "") << ',' << bound.to_string() << ','
       << format_double(value.value / bound.to_double()) << ',' << (asserted ? "true" : "false")
       << ',' << (holds ? "true" : "false") << '\n';
  } else {
    write_json(os, {{"meta", meta(cfg)},
                    {"q", q},
                    {"minorization", minorization_json(value)},
                    {"bound", bound.to_string()},
                    {"ratio", value.value / bound.to_double()},
                    {"asserted", asserted},
                    {"holds", holds}});
  }
  return !asserted || holds ? kExitOk : kExitVerification;
}

int cmd_couple(const RunConfig& cfg, std::ostream& os, std::ostream& err) {
  const Field field = build_field(cfg);
  const ConicParams params = build_params(cfg, field);
  if (cfg.trials == 0) throw ConfigError("--trials must be positive");
  const Kernel k = kernel(params, parse_class(field, cfg.step));
  const Distribution pi = haar(params);
  const ClassIndex start = parse_class(field, cfg.start);
  const CouplingStats stats = run_coupling(start, k, pi, cfg.trials, cfg.seed);

  // Coupling inequality: exact TV at t never exceeds P(T > t) beyond noise.
  json checks = json::array();
  bool ok = true;
  const auto n = static_cast<double>(cfg.trials);
  for (std::size_t t : {1, 2, 4, 8, 16}) {
    const double exact = tv_distance(evolve(point_mass(k.size(), k.scheme().position(start)), k, t), pi);
    const double tail = stats.tail_at(t);
    const double band = tail + 3.0 * std::sqrt(tail * (1.0 - tail) / n);
    checks.push_back({{"t", t}, {"exact_tv", exact}, {"empirical_tail", tail}, {"holds", exact <= band}});
    ok = ok && exact <= band;
  }
  err << "coupling from " << stats.start << ": " << stats.trials << " trials, mean T = "
      << format_double(stats.mean_time()) << '\n';
  if (csv(cfg)) {
    csv_meta(os, cfg);
    write_coupling_histogram_csv(os, stats);
  } else {
    write_json(os, {{"meta", meta(cfg)}, {"stats", coupling_stats_json(stats)}, {"coupling_inequality", checks}});
  }
  return ok ? kExitOk : kExitVerification;
}

int cmd_scan(const RunConfig& cfg, std::ostream& os, std::ostream& err) {
  if (cfg.qmin > cfg.qmax) throw ConfigError("--qmin exceeds --qmax");
  if (cfg.branch != "both" && cfg.branch != "1mod4" && cfg.branch != "3mod4") {
    throw ConfigError("--branch must be both, 1mod4 or 3mod4");
  }
  if (!(cfg.eps > 0.0 && cfg.eps < 1.0)) throw ConfigError("--eps must lie in (0, 1)");
  std::vector<std::uint32_t> orders;
  for (std::uint32_t q = std::max<std::uint32_t>(cfg.qmin, 3); q <= cfg.qmax; ++q) {
    if (cfg.branch != "both" && branch_name(branch_of(q)) != cfg.branch) continue;
    if (field_of_order(q, UINT16_MAX)) orders.push_back(q);
  }
  if (!orders.empty() && orders.back() > kDefaultFieldCap) {
    throw ConfigError("--qmax above the field cap " + std::to_string(kDefaultFieldCap));
  }

  bool ok = true;
  double max_ratio = 0.0;
  json rows = json::array();
  if (csv(cfg)) {
    csv_meta(os, cfg);
    write_scan_header(os);
  }
  for (const auto q : orders) {
    const Field field = *field_of_order(q);
    const ConicParams params = ConicParams::unit(field);
    const MixingReport report = mixing_report(params, ClassIndex::finite_code(1), cfg.eps);
    const ScanRow row = scan_row(report, ClassScheme(field).size());
    max_ratio = std::max(max_ratio, row.tau_over_q());
    if (cfg.eps == reference_epsilon()) {
      ok = ok && static_cast<std::int64_t>(row.tau) <= row.tau_bound;
    }
    if (csv(cfg)) {
      write_scan_row(os, row);
      os.flush();
    } else {
      rows.push_back({{"q", row.q}, {"branch", branch_name(row.branch)}, {"class_count", row.class_count},
                      {"tau_measured", row.tau}, {"tau_paper_bound", row.tau_bound},
                      {"minorization_measured", row.minorization},
                      {"minorization_paper", row.minorization_bound},
                      {"ratio_tau_over_q", row.tau_over_q()}});
    }
    err << "q = " << q << ": tau = " << row.tau << " (bound " << row.tau_bound << ")\n";
  }
  if (csv(cfg)) {
    os << "# max_tau_over_q=" << format_double(max_ratio) << '\n';
  } else {
    write_json(os, {{"meta", meta(cfg)}, {"rows", rows}, {"max_tau_over_q", max_ratio}});
  }
  err << "max tau/q over scan: " << format_double(max_ratio) << '\n';
  return ok ? kExitOk : kExitVerification;
}

// ------------------------------------------------------------------ parser

void add_field_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--p", cfg.p, "characteristic (odd prime)");
  sub->add_option("--d", cfg.d, "extension degree")->check(CLI::PositiveNumber);
  sub->add_option("--q", cfg.q, "field order, alternative to --p/--d");
  sub->add_option("--modulus", cfg.modulus, "override modulus as c_0,...,c_d");
  sub->add_option("--a", cfg.a, "conic coefficient a (integer, or c0:c1:... coefficients)");
  sub->add_option("--b", cfg.b, "conic coefficient b");
  sub->add_option("--c", cfg.c, "conic coefficient c (default: canonical sqrt(ab))");
}

void add_output_options(CLI::App* sub, RunConfig& cfg, bool json_allowed = true) {
  auto* fmt = sub->add_option("--format", cfg.format, "csv or json");
  fmt->check(json_allowed ? CLI::IsMember({"csv", "json"}) : CLI::IsMember({"csv"}));
  sub->add_option("--out", cfg.out, "output file, '-' for stdout");
}

std::string join_args(const std::vector<std::string>& args) {
  std::string out = "conicwalk";
  for (const auto& a : args) out += " " + a;
  return out;
}

int dispatch(const RunConfig& cfg, std::ostream& os, std::ostream& err) {
  static const std::vector<std::pair<std::string, std::function<int(const RunConfig&, std::ostream&, std::ostream&)>>>
      table = {{"constants", cmd_constants}, {"circles", cmd_circles},   {"axioms", cmd_axioms},
               {"kernel", cmd_kernel},       {"stationary", cmd_stationary}, {"mixing", cmd_mixing},
               {"minorize", cmd_minorize},   {"couple", cmd_couple},     {"scan", cmd_scan}};
  for (const auto& [name, fn] : table) {
    if (name == cfg.command) return fn(cfg, os, err);
  }
  throw ConfigError("unknown command");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  cfg.provenance = join_args(args);

  CLI::App app{"Hypergroup of conics over GF(q): structure constants, random walk mixing, couplings",
               "conicwalk"};
  app.require_subcommand(1);

  auto* constants = app.add_subcommand("constants", "structure constant table");
  add_field_options(constants, cfg);
  add_output_options(constants, cfg);
  constants->add_option("--source", cfg.source, "closed-form, oracle or as-stated");
  constants->add_flag("--verify-oracle", cfg.verify_oracle, "compare closed form with enumeration");
  constants->add_flag("--diagnostic-unsplit", cfg.unsplit, "keep the null cone as one class");
  constants->add_option("--errata", cfg.errata_path, "errata report path for --verify-oracle");
  constants->add_option("--oracle-cap", cfg.oracle_cap, "largest q for enumeration");

  auto* circles = app.add_subcommand("circles", "dump class points as CSV (class, x, y)");
  add_field_options(circles, cfg);
  add_output_options(circles, cfg, false);
  circles->add_option("--class", cfg.cls, "one class (integer or iso); default all");
  circles->add_flag("--diagnostic-unsplit", cfg.unsplit, "keep the null cone as one class");
  circles->add_option("--oracle-cap", cfg.oracle_cap, "largest q for enumeration");

  auto* axioms = app.add_subcommand("axioms", "check the hypergroup axioms");
  add_field_options(axioms, cfg);
  add_output_options(axioms, cfg);
  axioms->add_option("--source", cfg.source, "closed-form, oracle or as-stated");
  axioms->add_flag("--diagnostic-unsplit", cfg.unsplit, "keep the null cone as one class");
  axioms->add_option("--oracle-cap", cfg.oracle_cap, "largest q for enumeration");

  auto* kern = app.add_subcommand("kernel", "transition matrix of the walk");
  add_field_options(kern, cfg);
  add_output_options(kern, cfg);
  kern->add_option("--s", cfg.step, "step class");

  auto* stat = app.add_subcommand("stationary", "stationary distribution vs class sizes");
  add_field_options(stat, cfg);
  add_output_options(stat, cfg);
  stat->add_option("--s", cfg.step, "step class");

  auto* mixing = app.add_subcommand("mixing", "exact mixing time from the worst start");
  add_field_options(mixing, cfg);
  add_output_options(mixing, cfg);
  mixing->add_option("--s", cfg.step, "step class");
  mixing->add_option("--eps", cfg.eps, "TV threshold (default 1/(2e))");
  mixing->add_option("--boost", cfg.boost_eps, "also check tau(eps') <= tau(1/2e) ceil(ln 1/eps')");
  mixing->add_option("--decay", cfg.decay, "also check geometric decay for n = 1..N");

  auto* minorize = app.add_subcommand("minorize", "minimum of K^m(i,j)/pi(j)");
  add_field_options(minorize, cfg);
  add_output_options(minorize, cfg);
  minorize->add_option("--s", cfg.step, "step class");
  minorize->add_option("--steps", cfg.steps, "m (default 4 for q = 3 mod 4, 6 for q = 1 mod 4)");

  auto* couple = app.add_subcommand("couple", "simulate the coupling");
  add_field_options(couple, cfg);
  add_output_options(couple, cfg);
  couple->add_option("--s", cfg.step, "step class");
  couple->add_option("--start", cfg.start, "starting class of the first copy");
  couple->add_option("--trials", cfg.trials, "number of coupled runs");
  couple->add_option("--seed", cfg.seed, "base seed");

  auto* scan = app.add_subcommand("scan", "mixing times across q");
  add_output_options(scan, cfg);
  scan->add_option("--qmin", cfg.qmin, "smallest q");
  scan->add_option("--qmax", cfg.qmax, "largest q");
  scan->add_option("--branch", cfg.branch, "both, 1mod4 or 3mod4");
  scan->add_option("--eps", cfg.eps, "TV threshold (default 1/(2e))");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitConfig;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    if (cfg.out == "-") return dispatch(cfg, out, err);
    std::ofstream file(cfg.out);
    if (!file) throw ConfigError("cannot open output file " + cfg.out);
    return dispatch(cfg, file, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    switch (e.code()) {
      case Errc::Timeout:
      case Errc::InternalAssertion:
      case Errc::ArithmeticOverflow:
        return kExitInternal;
      default:
        return kExitConfig;
    }
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace conicwalk::cli
