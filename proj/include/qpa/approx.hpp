#pragma once

#include <vector>

#include "qpa/core.hpp"

namespace qpa {

// Internal row order of the ScaledExponentSet (rational rows first).
struct CoefficientSystem {
  ComplexMatrix M;   // M(s,t) = dft(v_t - h_s)
  ComplexMatrix Mp;  // Mp(s,t) = dft(h_t - h_s)
};

// Throws GridError naming the first exponent outside K_G.
CoefficientSystem build_system(const QuasiperiodicSpec& spec, const PeriodGrid& grid,
                               const ScaledExponentSet& set);

// y_p = Mp^{-1} M y. Throws NumericalError when Mp is singular to working precision.
ComplexVector solve_periodic_coefficients(const CoefficientSystem& sys, const ComplexVector& y);

// y = M^{-1} Mp y_p
ComplexVector solve_quasiperiodic_coefficients(const CoefficientSystem& sys,
                                               const ComplexVector& yp);

// f_p(x) = sum_l b_l exp(i 2 pi h_l . x / L), rows in input order.
class PeriodicApproximant {
 public:
  PeriodicApproximant(std::vector<long long> L, IntMatrix exponents, std::vector<cplx> coefficients);

  const std::vector<long long>& L() const { return L_; }
  const IntMatrix& exponents() const { return H_; }
  const std::vector<cplx>& coefficients() const { return b_; }

 private:
  std::vector<long long> L_;
  IntMatrix H_;
  std::vector<cplx> b_;
};

PeriodicApproximant make_approximant(const ScaledExponentSet& set, const ComplexVector& yp);

cplx evaluate_f(const QuasiperiodicSpec& spec, const std::vector<double>& x);
cplx evaluate_fp(const PeriodicApproximant& approx, const std::vector<double>& x);

enum class SupDomain {
  Fundamental,  // [0, L)^d
  Symmetric,    // [-L, L)^d
};

struct SupSamplingPolicy {
  SupDomain domain = SupDomain::Fundamental;
  // 0 selects max(10 * span * max_l |h_lj|, 1000) per dimension, span = 1 or 2.
  long long n_per_dim = 0;
  // Total grid size cap, applied when d > 1.
  long long max_points = 1'000'000;
  // Number of grid local maxima refined by golden-section search.
  int refine_top = 16;
};

struct SupResult {
  double value = 0.0;
  double grid_value = 0.0;
  std::vector<double> argmax;
  std::vector<long long> n_per_dim;
};

SupResult sup_error_search(const QuasiperiodicSpec& spec, const PeriodicApproximant& approx,
                           const SupSamplingPolicy& sampling = {});

// Estimate of sup |f_p - f| over the policy's domain.
double sup_error(const QuasiperiodicSpec& spec, const PeriodicApproximant& approx,
                 const SupSamplingPolicy& sampling = {});

}  // namespace qpa
