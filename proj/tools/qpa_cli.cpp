// qpa: periodic approximation of quasiperiodic trigonometric polynomials.
//
//   qpa approximate FILE [--L ..] [--G ..|--G-rule ..] [--eta n] [--sup-grid n] [--json]
//   qpa bounds FILE [...]
//   qpa scan FILE --dim j --range LMIN:LMAX [--csv PATH]
//   qpa best-seq FILE --dim j --range LMIN:LMAX [--json]
//   qpa verify-paper t1|t2 [--csv PATH]

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qpa/analysis.hpp"
#include "qpa/diophantine.hpp"
#include "qpa/errors.hpp"
#include "qpa/problem_file.hpp"
#include "qpa/reproduce.hpp"

namespace {

using json = nlohmann::json;

enum ExitCode { kOk = 0, kValidation = 1, kInadmissible = 2, kNumerical = 3 };

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4e", x);
  return buf;
}

std::string shortest(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string join(const std::vector<long long>& v, const char* sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

std::pair<long long, long long> parse_range(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw qpa::ValidationError("--range expects LMIN:LMAX");
  long long a = 0, b = 0;
  const auto* p = s.data();
  auto r1 = std::from_chars(p, p + colon, a);
  auto r2 = std::from_chars(p + colon + 1, p + s.size(), b);
  if (r1.ec != std::errc() || r1.ptr != p + colon || r2.ec != std::errc() || r2.ptr != p + s.size())
    throw qpa::ValidationError("--range expects integers LMIN:LMAX");
  if (a < 1 || b < a) throw qpa::ValidationError("--range is empty");
  return {a, b};
}

std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw qpa::ValidationError("cannot write '" + path + "'");
  return out;
}

struct Common {
  std::string file;
  std::vector<long long> L;
  std::vector<long long> G;
  std::string G_rule;
  int eta = 0;
  long long sup_grid = 0;
  std::string sup_domain;
  bool sharpened = false;
  bool as_json = false;
  std::string csv;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("file", c.file, "problem file (JSON)")->required();
  cmd->add_option("--L", c.L, "period vector, comma separated")->delimiter(',');
  cmd->add_option("--G", c.G, "grid vector, comma separated")->delimiter(',');
  cmd->add_option("--G-rule", c.G_rule, "10L or 2Lmax+10");
  cmd->add_option("--eta", c.eta, "window order");
  cmd->add_option("--sup-grid", c.sup_grid, "sup search points per dimension");
  cmd->add_option("--sup-domain", c.sup_domain, "fundamental or symmetric");
  cmd->add_flag("--sharpened-x1", c.sharpened, "use the sharpened x1 constant");
  cmd->add_flag("--json", c.as_json, "machine-readable output");
  cmd->add_option("--csv", c.csv, "also write CSV to PATH");
}

struct Loaded {
  qpa::ProblemFile problem;
  qpa::PeriodGrid grid;
  qpa::AnalysisOptions options;
};

Loaded load(const Common& c) {
  qpa::ProblemFile pf = qpa::load_problem(c.file);
  std::vector<long long> L = c.L.empty() ? pf.L : c.L;
  std::optional<std::vector<long long>> G = pf.G;
  std::optional<qpa::GridRule> rule = pf.G_rule;
  if (!c.L.empty() && c.G.empty()) G.reset();
  if (!c.G.empty()) G = c.G;
  if (!c.G_rule.empty()) {
    rule = qpa::parse_grid_rule(c.G_rule);
    if (c.G.empty()) G.reset();
  }
  const int eta = c.eta > 0 ? c.eta : pf.eta;
  qpa::PeriodGrid grid = qpa::make_grid(L, G, rule, eta);
  qpa::AnalysisOptions opt;
  opt.sharpened_x1 = c.sharpened;
  opt.sup = pf.sup;
  if (c.sup_grid > 0) opt.sup.n_per_dim = c.sup_grid;
  if (!c.sup_domain.empty()) opt.sup.domain = qpa::parse_sup_domain(c.sup_domain);
  return {std::move(pf), std::move(grid), opt};
}

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json report_json(const qpa::Analysis& a, const qpa::PeriodGrid& grid) {
  json j;
  j["L"] = grid.L();
  j["G"] = grid.G();
  j["eta"] = grid.eta();
  json h = json::array(), b = json::array();
  const auto& H = a.approximant.exponents();
  for (Eigen::Index l = 0; l < H.rows(); ++l) {
    std::vector<long long> row;
    for (Eigen::Index k = 0; k < H.cols(); ++k) row.push_back(H(l, k));
    h.push_back(row);
    const auto c = a.approximant.coefficients()[l];
    b.push_back({{"re", c.real()}, {"im", c.imag()}});
  }
  j["h"] = h;
  j["b"] = b;
  const auto& r = a.report;
  j["zeta"] = a.set.zeta;
  j["d_m"] = a.set.d_m;
  j["d_M"] = a.set.d_M;
  j["s"] = a.set.s_per_dim;
  j["deltaV_e"] = r.deltaV_e;
  j["eps0"] = opt_json(r.eps0);
  j["eps1"] = r.eps1;
  j["eps2"] = opt_json(r.eps2);
  j["b_max"] = r.b_max;
  if (r.x) {
    j["x1"] = r.x->x1;
    j["x2"] = r.x->x2;
    j["x2_m12"] = r.x->x2_m12;
    j["x3"] = r.x->x3;
    j["y2"] = r.x->y2;
    j["sharpened_x1"] = r.x->sharpened;
  }
  j["admissible_full"] = r.admissible_full;
  j["admissible_weak"] = r.admissible_weak;
  j["weak_L_threshold"] = a.admissibility.weak_L_threshold;
  j["weak_G_threshold"] = a.admissibility.weak_G_threshold;
  j["full_L_threshold"] = a.admissibility.full_L_threshold;
  j["full_G_threshold"] = a.admissibility.full_G_threshold;
  j["notes"] = r.notes;
  return j;
}

std::string opt_sci(const std::optional<double>& v) { return v ? sci(*v) : std::string("n/a"); }

void print_report(const qpa::Analysis& a, const qpa::PeriodGrid& grid, bool with_exponents) {
  const auto& r = a.report;
  std::cout << "L = (" << join(grid.L()) << ")  G = (" << join(grid.G()) << ")  eta = " << grid.eta() << "\n";
  if (with_exponents) {
    const auto& H = a.approximant.exponents();
    std::cout << "exponents h and coefficients b:\n";
    for (Eigen::Index l = 0; l < H.rows(); ++l) {
      std::vector<long long> row;
      for (Eigen::Index k = 0; k < H.cols(); ++k) row.push_back(H(l, k));
      const auto c = a.approximant.coefficients()[l];
      std::cout << "  [" << l << "] h = (" << join(row) << ")  b = " << sci(c.real()) << " "
                << (c.imag() < 0 ? "- " : "+ ") << sci(std::abs(c.imag())) << "i\n";
    }
  }
  std::cout << "zeta = " << a.set.zeta << "  d_m = " << a.set.d_m << "  d_M = " << a.set.d_M << "\n";
  std::cout << "||dV||_e = " << sci(r.deltaV_e) << "\n";
  std::cout << "eps0     = " << opt_sci(r.eps0) << "\n";
  std::cout << "eps1     = " << sci(r.eps1) << "\n";
  std::cout << "eps2     = " << opt_sci(r.eps2) << "\n";
  std::cout << "b_max    = " << sci(r.b_max) << "\n";
  if (r.x) {
    std::cout << "x1 = " << sci(r.x->x1) << (r.x->sharpened ? " (sharpened)" : "") << "  x2 = " << sci(r.x->x2)
              << "  x2' = " << sci(r.x->x2_m12) << "  x3 = " << sci(r.x->x3) << "  y2 = " << sci(r.x->y2) << "\n";
  }
  std::cout << "admissible: weak " << (r.admissible_weak ? "yes" : "no") << " (L_min > "
            << sci(a.admissibility.weak_L_threshold) << ", G_min > " << sci(a.admissibility.weak_G_threshold)
            << "), full " << (r.admissible_full ? "yes" : "no") << " (L_min > "
            << sci(a.admissibility.full_L_threshold) << ", G_min > " << sci(a.admissibility.full_G_threshold)
            << ")\n";
  for (const auto& n : r.notes) std::cout << "note: " << n << "\n";
}

int finish_admissibility(const qpa::Analysis& a) {
  if (a.report.admissible_weak) return kOk;
  std::cerr << "inadmissible parameters:\n";
  for (const auto& d : a.admissibility.details)
    if (d.rfind("weak:", 0) == 0) std::cerr << "  " << d << "\n";
  return kInadmissible;
}

int cmd_approximate(const Common& c, bool bounds_only) {
  Loaded ld = load(c);
  if (bounds_only) ld.options.compute_eps0 = false;
  const qpa::Analysis a = qpa::analyze(ld.problem.spec, ld.grid, ld.options);
  if (c.as_json)
    std::cout << report_json(a, ld.grid).dump(2) << "\n";
  else
    print_report(a, ld.grid, !bounds_only);
  if (!c.csv.empty()) {
    auto out = open_csv(c.csv);
    out << "L,G,deltaV_e,eps0,eps1,eps2,b_max,admissible_weak,admissible_full\n";
    const auto& r = a.report;
    out << join(ld.grid.L(), " ") << "," << join(ld.grid.G(), " ") << "," << shortest(r.deltaV_e) << ","
        << (r.eps0 ? shortest(*r.eps0) : "") << "," << shortest(r.eps1) << ","
        << (r.eps2 ? shortest(*r.eps2) : "") << "," << shortest(r.b_max) << "," << r.admissible_weak << ","
        << r.admissible_full << "\n";
  }
  return finish_admissibility(a);
}

std::vector<double> column(const qpa::QuasiperiodicSpec& spec, int dim) {
  if (dim < 0 || dim >= spec.dim()) throw qpa::ValidationError("--dim out of range");
  std::vector<double> col;
  for (Eigen::Index l = 0; l < spec.lambda().rows(); ++l) col.push_back(spec.lambda()(l, dim));
  return col;
}

int cmd_scan(const std::string& file, int dim, const std::string& range, const std::string& csv) {
  const auto pf = qpa::load_problem(file);
  const auto [lo, hi] = parse_range(range);
  const auto col = column(pf.spec, dim);
  std::vector<std::pair<long long, double>> rows;
  const auto seq = qpa::best_sequence(col, lo, hi, dim, [&](long long L, double e) { rows.emplace_back(L, e); });
  std::ofstream file_out;
  std::ostream* out = &std::cout;
  if (!csv.empty()) {
    file_out = open_csv(csv);
    out = &file_out;
  }
  *out << "L,e,is_record\n";
  std::size_t next = 0;
  for (const auto& [L, e] : rows) {
    const bool rec = next < seq.entries.size() && seq.entries[next].t == L;
    if (rec) ++next;
    *out << L << "," << shortest(e) << "," << (rec ? 1 : 0) << "\n";
  }
  return kOk;
}

int cmd_best_seq(const std::string& file, int dim, const std::string& range, bool as_json, const std::string& csv) {
  const auto pf = qpa::load_problem(file);
  const auto [lo, hi] = parse_range(range);
  const auto seq = qpa::best_sequence(column(pf.spec, dim), lo, hi, dim);
  if (as_json) {
    json j = json::array();
    for (const auto& e : seq.entries) j.push_back({{"t", e.t}, {"E", e.E}});
    std::cout << json{{"dim", dim}, {"limit", seq.search_limit}, {"records", j}}.dump(2) << "\n";
  } else {
    std::cout << "       t            E\n";
    for (const auto& e : seq.entries) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%8lld  %s\n", e.t, sci(e.E).c_str());
      std::cout << buf;
    }
  }
  if (!csv.empty()) {
    auto out = open_csv(csv);
    out << "t,E\n";
    for (const auto& e : seq.entries) out << e.t << "," << shortest(e.E) << "\n";
  }
  return kOk;
}

int cmd_verify(const std::string& which, const std::string& csv) {
  const auto rows = qpa::check_table(which);
  bool all = true;
  std::cout << "table   L                 column   computed     reference    rel.err     tol        \n";
  for (const auto& r : rows) {
    for (const auto& c : r.cells) {
      char buf[200];
      std::snprintf(buf, sizeof buf, "%-7s %-17s %-8s %-12s %-12s %-11s %-10s %s\n", r.table.c_str(),
                    ("(" + join(r.L) + ")").c_str(), c.column.c_str(),
                    c.available ? sci(c.computed).c_str() : "n/a", sci(c.reference).c_str(),
                    c.available ? sci(c.rel_err).c_str() : "n/a", sci(c.tol).c_str(), c.pass ? "ok" : "MISMATCH");
      std::cout << buf;
    }
    all = all && r.pass();
  }
  if (!csv.empty()) {
    auto out = open_csv(csv);
    out << "table,L,column,computed,reference,rel_err,tol,pass\n";
    for (const auto& r : rows)
      for (const auto& c : r.cells)
        out << r.table << "," << join(r.L, " ") << "," << c.column << ","
            << (c.available ? shortest(c.computed) : "") << "," << shortest(c.reference) << ","
            << (c.available ? shortest(c.rel_err) : "") << "," << shortest(c.tol) << "," << c.pass << "\n";
  }
  std::cout << (all ? "all cells within tolerance\n" : "some cells outside tolerance\n");
  return all ? kOk : kValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodic approximation of quasiperiodic trigonometric polynomials"};
  app.require_subcommand(1);

  Common approx_opts, bounds_opts;
  auto* approx = app.add_subcommand("approximate", "solve for the periodic approximant and report errors");
  add_common(approx, approx_opts);
  auto* bounds = app.add_subcommand("bounds", "bound constants and admissibility, without the sup search");
  add_common(bounds, bounds_opts);

  std::string scan_file, scan_range, scan_csv;
  int scan_dim = 0;
  auto* scan = app.add_subcommand("scan", "column error e(L) over a range, as CSV");
  scan->add_option("file", scan_file)->required();
  scan->add_option("--dim", scan_dim, "dimension index (0-based)");
  scan->add_option("--range", scan_range, "LMIN:LMAX, inclusive")->required();
  scan->add_option("--csv", scan_csv, "write CSV to PATH instead of stdout");

  std::string bs_file, bs_range, bs_csv;
  int bs_dim = 0;
  bool bs_json = false;
  auto* best = app.add_subcommand("best-seq", "best simultaneous approximation records");
  best->add_option("file", bs_file)->required();
  best->add_option("--dim", bs_dim, "dimension index (0-based)");
  best->add_option("--range", bs_range, "LMIN:LMAX, inclusive")->required();
  best->add_flag("--json", bs_json);
  best->add_option("--csv", bs_csv);

  std::string table, verify_csv;
  auto* verify = app.add_subcommand("verify-paper", "recompute the bundled reference tables");
  verify->add_option("table", table, "t1 or t2")->required()->check(CLI::IsMember({"t1", "t2"}));
  verify->add_option("--csv", verify_csv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kValidation;
  }

  try {
    if (*approx) return cmd_approximate(approx_opts, false);
    if (*bounds) return cmd_approximate(bounds_opts, true);
    if (*scan) return cmd_scan(scan_file, scan_dim, scan_range, scan_csv);
    if (*best) return cmd_best_seq(bs_file, bs_dim, bs_range, bs_json, bs_csv);
    if (*verify) return cmd_verify(table, verify_csv);
  } catch (const qpa::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const qpa::InadmissibleError& e) {
    std::cerr << "inadmissible: " << e.what() << "\n";
    return kInadmissible;
  } catch (const qpa::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  }
  return kOk;
}
