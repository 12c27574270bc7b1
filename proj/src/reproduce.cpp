#include "qpa/reproduce.hpp"

#include <algorithm>
#include <cmath>

namespace qpa {

bool RowCheck::pass() const {
  return std::all_of(cells.begin(), cells.end(), [](const CellCheck& c) { return c.pass; });
}

AnalysisOptions reference_options() {
  AnalysisOptions o;
  o.sharpened_x1 = true;
  o.sup.domain = SupDomain::Symmetric;
  return o;
}

double four_digit_tol(double ref) {
  const double unit = std::pow(10.0, std::floor(std::log10(std::abs(ref))) - 3);
  return 0.5 * unit / std::abs(ref);
}

namespace {

CellCheck cell(const std::string& name, std::optional<double> computed, double ref, double tol) {
  CellCheck c;
  c.column = name;
  c.reference = ref;
  c.tol = tol;
  c.available = computed.has_value();
  if (c.available) {
    c.computed = *computed;
    c.rel_err = std::abs(c.computed - ref) / std::abs(ref);
    c.pass = c.rel_err <= tol;
  }
  return c;
}

}  // namespace

RowCheck check_row(const fixtures::ReferenceTable& table, const fixtures::ReferenceRow& row) {
  const PeriodGrid grid = PeriodGrid::create(row.L, grid_from_rule(table.rule, row.L), 1);
  const Analysis a = analyze(table.spec, grid, reference_options());
  RowCheck rc;
  rc.table = table.name;
  rc.L = row.L;
  rc.cells.push_back(cell("dV_e", a.report.deltaV_e, row.deltaV_e, four_digit_tol(row.deltaV_e)));
  rc.cells.push_back(cell("eps0", a.report.eps0, row.eps0, table.eps0_tol));
  rc.cells.push_back(cell("eps1", a.report.eps1, row.eps1, 0.01));
  rc.cells.push_back(cell("eps2", a.report.eps2, row.eps2, 0.01));
  return rc;
}

std::vector<RowCheck> check_table(const std::string& which) {
  std::vector<RowCheck> out;
  for (const auto& t : fixtures::reference_tables(which))
    for (const auto& r : t.rows) out.push_back(check_row(t, r));
  return out;
}

}  // namespace qpa
