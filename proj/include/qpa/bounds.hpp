#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qpa/approx.hpp"
#include "qpa/core.hpp"

namespace qpa {

struct BoundInputs {
  int d = 1;
  int D = 1;
  int zeta = 0;
  int N = 1;
  int eta = 1;
  int d_m = 0;
  int d_M = 0;
  std::vector<int> r;
  double C_a = 1.0;
  double tau = 0.0;
  long long L_min = 1;
  long long L_max = 1;
  long long G_min = 1;
  double P_norm1 = 0.0;
  double deltaV_e = 0.0;
  std::vector<double> row_delta_inf;  // ||v_s - h_s||_inf, internal order
  double b_max = 0.0;
  // Free parameters of the full admissibility test; defaults split the
  // budget evenly when unset.
  std::optional<double> eps;
  std::optional<std::vector<double>> eps_r;
};

BoundInputs make_bound_inputs(const QuasiperiodicSpec& spec, const PeriodGrid& grid,
                              const ScaledExponentSet& set, double b_max);

// Throws InadmissibleError naming the failed condition when a base is not positive.
class GFunctions {
 public:
  explicit GFunctions(const BoundInputs& in);

  double base0() const { return base0_; }
  double g0(double t) const;
  double g1(double t1, double t2, double dist) const;
  double g2(int r) const;
  double g3(int r) const;

 private:
  int d_;
  int eta_;
  long long G_min_;
  double base0_;
  double base2_;
  double base3_;
};

GFunctions g_functions(const BoundInputs& in);

struct XConstants {
  double x1 = 0.0;
  double x2 = 0.0;      // (D - zeta - 1) variant
  double x2_m12 = 0.0;  // factor-free variant
  double x3 = 0.0;
  double y2 = 0.0;
  bool sharpened = false;
};

XConstants x_constants(const BoundInputs& in, bool sharpened);

// b_max ||M^{-1}||_1 ||Mp - M||_e + 2 pi b_max ||dV||_e
double epsilon1(const CoefficientSystem& sys, const ScaledExponentSet& set, double b_max);

// Throws InadmissibleError when x1 (x2 + x3) >= 1.
double epsilon2(const BoundInputs& in, const XConstants& x);
double epsilon2(const BoundInputs& in, bool sharpened);

struct Admissibility {
  bool full = false;
  bool weak = false;
  double weak_L_threshold = 0.0;  // L_min must exceed this
  double weak_G_threshold = 0.0;  // G_min must exceed this
  double full_L_threshold = 0.0;
  double full_G_threshold = 0.0;
  double eps = 0.0;  // +inf when the term is absent
  std::vector<double> eps_r;
  std::vector<std::string> details;
};

Admissibility check_admissibility(const BoundInputs& in);

// N^{kappa - alpha} seminorm; needs alpha > kappa > d/2.
double truncation_bound(double N, double alpha, double kappa, double seminorm, int d = 1);

}  // namespace qpa
