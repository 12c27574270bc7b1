#include "qpa/analysis.hpp"

#include "qpa/diophantine.hpp"
#include "qpa/errors.hpp"

namespace qpa {

namespace {

Analysis assemble(const QuasiperiodicSpec& spec, const PeriodGrid& grid, const AnalysisOptions& options,
                  ScaledExponentSet set) {
  CoefficientSystem sys = build_system(spec, grid, set);
  ComplexVector y = set.to_internal(spec.coefficients());
  ComplexVector yp = solve_periodic_coefficients(sys, y);
  PeriodicApproximant approx = make_approximant(set, yp);
  const double b_max = yp.cwiseAbs().maxCoeff();
  BoundInputs inputs = make_bound_inputs(spec, grid, set, b_max);
  inputs.eps = options.eps;
  inputs.eps_r = options.eps_r;
  Admissibility adm = check_admissibility(inputs);
  return Analysis{std::move(set), std::move(sys), std::move(y), std::move(yp),
                  std::move(approx), std::move(inputs), std::move(adm), ErrorReport{}};
}

}  // namespace

Analysis analyze(const QuasiperiodicSpec& spec, const PeriodGrid& grid, const AnalysisOptions& options) {
  if (spec.dim() != grid.dim()) throw ValidationError("spec and grid differ in dimension");
  Analysis a = assemble(spec, grid, options, classify(spec, grid.L(), options.classify));

  ErrorReport& rep = a.report;
  rep.notes = a.set.notes;
  rep.deltaV_e = a.inputs.deltaV_e;
  rep.b_max = a.inputs.b_max;
  rep.admissible_full = a.admissibility.full;
  rep.admissible_weak = a.admissibility.weak;
  for (const auto& msg : a.admissibility.details) rep.notes.push_back(msg);

  rep.eps1 = epsilon1(a.system, a.set, rep.b_max);
  try {
    const XConstants x = x_constants(a.inputs, options.sharpened_x1);
    rep.x = x;
    rep.eps2 = epsilon2(a.inputs, x);
  } catch (const InadmissibleError& e) {
    rep.notes.push_back(std::string("eps2 unavailable: ") + e.what());
  }
  if (options.compute_eps0) rep.eps0 = sup_error(spec, a.approximant, options.sup);
  return a;
}

}  // namespace qpa
