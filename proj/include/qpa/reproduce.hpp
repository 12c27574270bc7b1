#pragma once

#include <string>
#include <vector>

#include "qpa/analysis.hpp"
#include "qpa/fixtures.hpp"

namespace qpa {

struct CellCheck {
  std::string column;
  double computed = 0.0;
  double reference = 0.0;
  double rel_err = 0.0;
  double tol = 0.0;  // relative
  bool available = true;
  bool pass = false;
};

struct RowCheck {
  std::string table;
  std::vector<long long> L;
  std::vector<CellCheck> cells;
  bool pass() const;
};

// Options used for reference reproduction: sharpened x1, eta = 1 and the
// sup search over [-L, L)^d.
AnalysisOptions reference_options();

// Half a unit in the fourth significant digit of ref, relative to ref.
double four_digit_tol(double ref);

RowCheck check_row(const fixtures::ReferenceTable& table, const fixtures::ReferenceRow& row);

std::vector<RowCheck> check_table(const std::string& which);

}  // namespace qpa
