#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qpa/approx.hpp"
#include "qpa/bounds.hpp"
#include "qpa/core.hpp"

namespace qpa {

struct ErrorReport {
  double deltaV_e = 0.0;
  std::optional<double> eps0;  // unset when the sup search was skipped
  double eps1 = 0.0;
  std::optional<double> eps2;  // unset when the analytic bound does not apply
  std::optional<XConstants> x;
  double b_max = 0.0;
  bool admissible_full = false;
  bool admissible_weak = false;
  std::vector<std::string> notes;
};

struct AnalysisOptions {
  bool sharpened_x1 = true;
  bool compute_eps0 = true;
  SupSamplingPolicy sup;
  ClassifyOptions classify;
  std::optional<double> eps;
  std::optional<std::vector<double>> eps_r;
};

struct Analysis {
  ScaledExponentSet set;
  CoefficientSystem system;
  ComplexVector y;   // internal order
  ComplexVector yp;  // internal order
  PeriodicApproximant approximant;
  BoundInputs inputs;
  Admissibility admissibility;
  ErrorReport report;
};

// classify -> build_system -> solve -> bounds -> sup error
Analysis analyze(const QuasiperiodicSpec& spec, const PeriodGrid& grid,
                 const AnalysisOptions& options = {});

}  // namespace qpa
