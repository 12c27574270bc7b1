#include "qpa/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qpa/errors.hpp"

namespace qpa {

double column_error(const std::vector<double>& lambda_col, long long L) {
  if (L < 1) throw ValidationError("L must be positive");
  double e = 0.0;
  for (double x : lambda_col) {
    const double v = static_cast<double>(L) * x;
    if (near_integer(v)) continue;
    e += std::abs(std::round(v) - v);
  }
  return e;
}

BestApproxSequence best_sequence(const std::vector<double>& lambda_col, long long L_min,
                                 long long L_max, int dim_index,
                                 const std::function<void(long long, double)>& on_scan) {
  if (L_min < 1 || L_max < L_min) throw ValidationError("empty scan range");
  if (L_max > kMaxScanLimit) throw ValidationError("scan limit exceeds 1e7");
  BestApproxSequence seq;
  seq.dim_index = dim_index;
  seq.search_limit = L_max;
  // A record must beat every smaller L, including those below the range.
  double best = std::numeric_limits<double>::infinity();
  for (long long L = 1; L < L_min && best > 0.0; ++L) best = std::min(best, column_error(lambda_col, L));
  for (long long L = L_min; L <= L_max; ++L) {
    const double e = column_error(lambda_col, L);
    if (on_scan) on_scan(L, e);
    if (e < best) {
      best = e;
      seq.entries.push_back({L, e});
    }
    if (best == 0.0 && !on_scan) break;
  }
  return seq;
}

double dirichlet_bound(int s, long long L) {
  if (s < 1) throw ValidationError("s must be >= 1");
  if (L < 1) throw ValidationError("L must be positive");
  return static_cast<double>(s) / (s + 1) * std::pow(static_cast<double>(L), -1.0 / s);
}

bool DiophantineReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.pass; });
}

DiophantineReport check_diophantine(const QuasiperiodicSpec& spec) {
  const auto D = static_cast<Eigen::Index>(spec.size());
  const int d = spec.dim();
  BoolArray rational(D, d);
  for (Eigen::Index l = 0; l < D; ++l)
    for (int j = 0; j < d; ++j) rational(l, j) = near_integer(spec.lambda()(l, j));
  for (const auto& m : spec.rational_marks())
    rational(static_cast<Eigen::Index>(m.row), static_cast<Eigen::Index>(m.col)) = true;
  return check_diophantine(spec, rational);
}

DiophantineReport check_diophantine(const QuasiperiodicSpec& spec, const BoolArray& rational) {
  const auto D = static_cast<Eigen::Index>(spec.size());
  const int d = spec.dim();
  if (rational.rows() != D || rational.cols() != d)
    throw ValidationError("rationality mask has the wrong shape");
  const auto& dp = spec.diophantine();
  DiophantineReport rep;
  for (Eigen::Index l = 0; l < D; ++l) {
    long long knorm = 0;
    for (long long kj : spec.lattice()[l]) knorm = std::max(knorm, std::abs(kj));
    const double threshold = knorm == 0 ? std::numeric_limits<double>::infinity()
                                        : dp.C_a / std::pow(static_cast<double>(knorm), 2.0 + dp.tau);
    for (int j = 0; j < d; ++j) {
      if (rational(l, j)) continue;
      DiophantineEntry e;
      e.row = static_cast<std::size_t>(l);
      e.col = static_cast<std::size_t>(j);
      e.lambda = spec.lambda()(l, j);
      e.threshold = threshold;
      e.margin = std::abs(e.lambda) - threshold;
      e.pass = e.margin > 0.0;
      rep.entries.push_back(e);
    }
  }
  return rep;
}

double delta_v_norm(const ScaledExponentSet& set) {
  const auto D = static_cast<Eigen::Index>(set.size());
  std::vector<Eigen::Index> internal(set.order.size());
  for (std::size_t i = 0; i < set.order.size(); ++i)
    internal[set.order[i]] = static_cast<Eigen::Index>(i);
  // Column by column in input order, so the total matches sum_j column_error.
  double total = 0.0;
  for (int j = 0; j < set.dim(); ++j) {
    double col = 0.0;
    for (Eigen::Index l = 0; l < D; ++l) col += std::abs(set.deltaV(internal[l], j));
    total += col;
  }
  return total;
}

}  // namespace qpa
