#pragma once

#include <string>
#include <vector>

#include "qpa/core.hpp"

namespace qpa::fixtures {

// d = 1: lambda = (1, sqrt2, 2 + sqrt2, 1 + 2 sqrt2), N = 2, C_a = 2, tau = 0.2.
QuasiperiodicSpec one_dim();

// d = 3, two irrational exponents, zeta = 0. N = 1, C_a = 2, tau = 0.1.
QuasiperiodicSpec three_dim_a();

// d = 3, one rational and two irrational exponents. N = 1, C_a = 2, tau = 0.2.
QuasiperiodicSpec three_dim_b();

// d = 2, integer exponents only.
QuasiperiodicSpec rational_only();

struct ReferenceRow {
  std::vector<long long> L;
  double deltaV_e;
  double eps0;
  double eps1;
  double eps2;
};

struct ReferenceTable {
  std::string name;
  QuasiperiodicSpec spec;
  GridRule rule;
  double eps0_tol;
  std::vector<ReferenceRow> rows;
};

// "t1": one_dim rows; "t2": three_dim_a then three_dim_b rows.
std::vector<ReferenceTable> reference_tables(const std::string& which);

}  // namespace qpa::fixtures
