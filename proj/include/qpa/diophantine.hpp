#pragma once

#include <functional>
#include <vector>

#include "qpa/core.hpp"

namespace qpa {

// sum over non-integer entries of |L x - round(L x)|
double column_error(const std::vector<double>& lambda_col, long long L);

struct SequenceRecord {
  long long t = 0;
  double E = 0.0;
};

struct BestApproxSequence {
  int dim_index = 0;
  std::vector<SequenceRecord> entries;
  long long search_limit = 0;
};

inline constexpr long long kMaxScanLimit = 10'000'000;

// Records of column_error in L_min..L_max: L with e(L) below e(L') for every
// 1 <= L' < L. The optional callback sees every scanned (L, e(L)).
BestApproxSequence best_sequence(const std::vector<double>& lambda_col, long long L_min,
                                 long long L_max, int dim_index = 0,
                                 const std::function<void(long long, double)>& on_scan = {});

// s/(s+1) L^{-1/s}
double dirichlet_bound(int s, long long L);

struct DiophantineEntry {
  std::size_t row = 0;
  std::size_t col = 0;
  double lambda = 0.0;
  double threshold = 0.0;  // C_a / ||k||_inf^{2+tau}
  double margin = 0.0;     // |lambda| - threshold
  bool pass = false;
};

struct DiophantineReport {
  std::vector<DiophantineEntry> entries;
  bool all_pass() const;
};

// Checks |lambda_{l,j}| > C_a / ||k_l||_inf^{2+tau} for every non-rational entry.
DiophantineReport check_diophantine(const QuasiperiodicSpec& spec);
// Same, with an explicit mask of entries known to be rational.
DiophantineReport check_diophantine(const QuasiperiodicSpec& spec, const BoolArray& rational);

// sum |h - v| over all entries
double delta_v_norm(const ScaledExponentSet& set);

}  // namespace qpa
