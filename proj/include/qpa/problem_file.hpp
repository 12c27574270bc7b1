#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qpa/approx.hpp"
#include "qpa/core.hpp"

namespace qpa {

// JSON problem description:
//   P             row-major real matrix, d x n
//   lattice       list of integer n-vectors
//   coefficients  list of {"re": x, "im": y}
//   N, eta        integers
//   diophantine   {"C_a": x, "tau": y}
//   L             integer d-vector
//   G | G_rule    integer d-vector, or "10L" / "2Lmax+10"
//   rational_marks (optional) list of {"row", "col", "num", "den"}
//   sup_sampling   (optional) {"domain", "n_per_dim", "max_points", "refine_top"}
struct ProblemFile {
  QuasiperiodicSpec spec;
  std::vector<long long> L;
  std::optional<std::vector<long long>> G;
  std::optional<GridRule> G_rule;
  int eta = 1;
  SupSamplingPolicy sup;
};

// Errors are ValidationError with a JSON-pointer prefix such as "/lattice/2/1:".
ProblemFile parse_problem(const std::string& text);
ProblemFile load_problem(const std::string& path);

GridRule parse_grid_rule(const std::string& s);
SupDomain parse_sup_domain(const std::string& s);

// Explicit G wins over the rule; without either, "10L" is used.
PeriodGrid make_grid(const std::vector<long long>& L, const std::optional<std::vector<long long>>& G,
                     const std::optional<GridRule>& rule, int eta);

}  // namespace qpa
