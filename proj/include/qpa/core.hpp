#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qpa {

using cplx = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using IntMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;
using BoolArray = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Declares lambda_{row,col} == num/den exactly.
struct RationalMark {
  std::size_t row = 0;
  std::size_t col = 0;
  long long num = 0;
  long long den = 1;
};

struct DiophantineParams {
  double C_a = 1.0;
  double tau = 0.0;
};

// f(x) = sum_l a_l exp(i 2 pi lambda_l . x) with lambda_l = P k_l.
class QuasiperiodicSpec {
 public:
  // Throws ValidationError on any broken invariant, including exponents that
  // coincide after projection.
  static QuasiperiodicSpec create(RealMatrix P,
                                  std::vector<std::vector<long long>> lattice,
                                  std::vector<cplx> coefficients, int N,
                                  DiophantineParams diophantine,
                                  std::vector<RationalMark> rational_marks = {});

  int dim() const { return static_cast<int>(P_.rows()); }
  int rank() const { return static_cast<int>(P_.cols()); }
  std::size_t size() const { return coefficients_.size(); }

  const RealMatrix& P() const { return P_; }
  const std::vector<std::vector<long long>>& lattice() const { return lattice_; }
  const std::vector<cplx>& coefficients() const { return coefficients_; }
  int N() const { return N_; }
  const DiophantineParams& diophantine() const { return diophantine_; }
  const std::vector<RationalMark>& rational_marks() const { return marks_; }

  // D x d, row l is lambda_l.
  const RealMatrix& lambda() const { return lambda_; }

  // Max column absolute sum of P.
  double P_norm1() const;

 private:
  QuasiperiodicSpec() = default;

  RealMatrix P_;
  std::vector<std::vector<long long>> lattice_;
  std::vector<cplx> coefficients_;
  int N_ = 1;
  DiophantineParams diophantine_;
  std::vector<RationalMark> marks_;
  RealMatrix lambda_;
};

// lambda_l = P k_l in input order.
std::vector<std::vector<double>> build_exponents(const RealMatrix& P,
                                                 const std::vector<std::vector<long long>>& lattice);
std::vector<std::vector<double>> build_exponents(const QuasiperiodicSpec& spec);

class PeriodGrid {
 public:
  static PeriodGrid create(std::vector<long long> L, std::vector<long long> G, int eta);

  int dim() const { return static_cast<int>(L_.size()); }
  const std::vector<long long>& L() const { return L_; }
  const std::vector<long long>& G() const { return G_; }
  int eta() const { return eta_; }

  long long L_min() const;
  long long L_max() const;
  long long G_min() const;

 private:
  PeriodGrid() = default;

  std::vector<long long> L_;
  std::vector<long long> G_;
  int eta_ = 1;
};

enum class GridRule {
  TenL,           // G_j = 10 L_j
  TwoLmaxPlus10,  // G_j = 2 max(L) + 10
};

std::vector<long long> grid_from_rule(GridRule rule, const std::vector<long long>& L);

// Rows are reordered so that the zeta fully rational exponents come first;
// order[i] is the input index of internal row i.
struct ScaledExponentSet {
  std::vector<long long> L;
  RealMatrix lambda;  // D x d, internal order
  RealMatrix V;       // v_l = L o lambda_l
  IntMatrix H;        // nearest integers, half away from zero
  RealMatrix deltaV;  // H - V
  BoolArray is_integer;
  std::vector<std::size_t> order;

  int zeta = 0;
  std::vector<int> r;    // integer entries per row
  Eigen::MatrixXi alpha; // zero-difference counts between irrational rows; 0 elsewhere
  int d_m = 0;           // d when there is no irrational row
  int d_M = 0;
  std::vector<int> s_per_dim;

  std::vector<std::string> notes;

  std::size_t size() const { return static_cast<std::size_t>(V.rows()); }
  int dim() const { return static_cast<int>(V.cols()); }

  // ||v_s - h_s||_inf
  double row_delta_inf(std::size_t s) const;

  ComplexVector to_internal(const std::vector<cplx>& input_order) const;
  std::vector<cplx> to_input_order(const ComplexVector& internal) const;
};

struct ClassifyOptions {
  // Replaces the computed distinct-value counts s_j.
  std::optional<std::vector<int>> s_override;
};

ScaledExponentSet classify(const QuasiperiodicSpec& spec, const std::vector<long long>& L,
                           const ClassifyOptions& options = {});

// |x - round(x)| < max(1e-9, 64 eps |x|)
bool near_integer(double x);

}  // namespace qpa
