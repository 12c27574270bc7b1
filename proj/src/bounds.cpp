#include "qpa/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qpa/diophantine.hpp"
#include "qpa/errors.hpp"

namespace qpa {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

// sum_{beta=0}^{m} (2 eta)^beta C(m, beta) = (1 + 2 eta)^m
double beta_sum(int eta, int m) {
  double s = 0.0;
  for (int b = 0; b <= m; ++b) s += std::pow(2.0 * eta, b) * binom(m, b);
  return s;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

BoundInputs make_bound_inputs(const QuasiperiodicSpec& spec, const PeriodGrid& grid,
                              const ScaledExponentSet& set, double b_max) {
  BoundInputs in;
  in.d = spec.dim();
  in.D = static_cast<int>(spec.size());
  in.zeta = set.zeta;
  in.N = spec.N();
  in.eta = grid.eta();
  in.d_m = set.d_m;
  in.d_M = set.d_M;
  in.r = set.r;
  in.C_a = spec.diophantine().C_a;
  in.tau = spec.diophantine().tau;
  in.L_min = grid.L_min();
  in.L_max = grid.L_max();
  in.G_min = grid.G_min();
  in.P_norm1 = spec.P_norm1();
  in.deltaV_e = delta_v_norm(set);
  for (std::size_t s = 0; s < set.size(); ++s) in.row_delta_inf.push_back(set.row_delta_inf(s));
  in.b_max = b_max;
  return in;
}

GFunctions::GFunctions(const BoundInputs& in) : d_(in.d), eta_(in.eta), G_min_(in.G_min) {
  base0_ = static_cast<double>(in.L_min) * in.C_a / std::pow(2.0 * in.N, 2.0 + in.tau) - 0.5 - in.eta;
  base2_ = static_cast<double>(in.G_min) - 0.5 - in.eta;
  base3_ = static_cast<double>(in.G_min) -
           2.0 * static_cast<double>(in.L_max) * in.P_norm1 * in.N - 0.5 - in.eta;
}

double GFunctions::g0(double t) const {
  if (!(base0_ > 0.0))
    throw InadmissibleError("L_min C_a/(2N)^(2+tau) - 1/2 - eta = " + fmt(base0_) + " is not positive");
  return std::pow(base0_, -t);
}

double GFunctions::g1(double t1, double t2, double dist) const {
  const double b = t1 * static_cast<double>(G_min_) - dist - eta_;
  if (!(b > 0.0)) throw InadmissibleError("t1 G_min - dist - eta = " + fmt(b) + " is not positive");
  return std::pow(b, -t2);
}

double GFunctions::g2(int r) const {
  if (!(base2_ > 0.0))
    throw InadmissibleError("G_min - 1/2 - eta = " + fmt(base2_) + " is not positive");
  return std::pow(eta_ * std::pow(base2_, 2 * eta_ + 1), -(d_ - r));
}

double GFunctions::g3(int r) const {
  if (!(base3_ > 0.0))
    throw InadmissibleError("G_min - 2 L_max ||P||_1 N - 1/2 - eta = " + fmt(base3_) +
                            " is not positive");
  return std::pow(eta_ * std::pow(base3_, 2 * eta_ + 1), -(d_ - r));
}

GFunctions g_functions(const BoundInputs& in) { return GFunctions(in); }

XConstants x_constants(const BoundInputs& in, bool sharpened) {
  const GFunctions g(in);
  const int d = in.d;
  const int eta = in.eta;
  const int irr = in.D - in.zeta;
  const double fe = factorial(eta);
  XConstants x;
  x.sharpened = sharpened;

  if (sharpened) {
    x.x1 = 0.0;
    for (int s = in.zeta; s < in.D; ++s) {
      const double del = in.row_delta_inf.at(static_cast<std::size_t>(s));
      if (del >= 1.0) throw NumericalError("||v_s - h_s||_inf >= 1 in the sharpened x1");
      const int m = d - in.r.at(static_cast<std::size_t>(s));
      const double v = std::pow(del + eta, 2.0 * eta * m) * std::pow((1 + del * del) / (1 - del * del), m);
      x.x1 = std::max(x.x1, v);
    }
  } else {
    const int m = d - in.d_m;
    x.x1 = std::pow(5.0 / 3.0, m) * std::pow(fe, -2.0 * m) * std::pow(0.5 + eta, 2.0 * eta * m);
  }

  if (irr >= 1) {
    const double t = (2.0 * eta + 1) * (d - in.d_M);
    x.x2_m12 = std::pow(fe, 2.0 * d) / std::pow(kPi, d - in.d_M) * g.g0(t);
    x.x2 = (irr - 1) * x.x2_m12;
  }

  const int off = std::max(0, irr - 1);
  for (int r = in.d_m; r < d; ++r) {
    const double c = std::pow(fe, 2.0 * (d - r)) / std::pow(kPi, d - r) * binom(d - in.d_m, r - in.d_m) *
                     beta_sum(eta, d - r);
    const double g3 = g.g3(r);
    x.x3 += c * (g.g2(r) + off * g3);
    x.y2 += c * g3;
  }
  return x;
}

double epsilon1(const CoefficientSystem& sys, const ScaledExponentSet& set, double b_max) {
  Eigen::PartialPivLU<ComplexMatrix> lu(sys.M);
  if (!(lu.rcond() > 1e-13)) throw NumericalError("M is singular to working precision");
  const ComplexMatrix inv = lu.inverse();
  const double inv_norm1 = inv.cwiseAbs().colwise().sum().maxCoeff();
  const double diff_e = (sys.Mp - sys.M).cwiseAbs().sum();
  return b_max * inv_norm1 * diff_e + 2.0 * kPi * b_max * delta_v_norm(set);
}

double epsilon2(const BoundInputs& in, const XConstants& x) {
  const double q = x.x1 * (x.x2 + x.x3);
  if (!(q < 1.0)) throw InadmissibleError("x1 (x2 + x3) = " + fmt(q) + " >= 1; the bound does not apply");
  const double bracket = in.D * (1.0 + (in.zeta + 1) * (x.x2_m12 + x.y2)) * x.x1 / (1.0 - q) + 1.0;
  return 2.0 * kPi * in.b_max * bracket * in.deltaV_e;
}

double epsilon2(const BoundInputs& in, bool sharpened) {
  return epsilon2(in, x_constants(in, sharpened));
}

Admissibility check_admissibility(const BoundInputs& in) {
  Admissibility a;
  const int d = in.d;
  const int eta = in.eta;
  const int irr = in.D - in.zeta;
  const double fe = factorial(eta);
  const double scale = std::pow(2.0 * in.N, 2.0 + in.tau) / in.C_a;
  const double root = std::pow(fe * fe / kPi, 1.0 / (2 * eta + 1));
  const double G_off = 2.0 * static_cast<double>(in.L_max) * in.P_norm1 * in.N + eta + 0.5;
  const auto L_min = static_cast<double>(in.L_min);
  const auto G_min = static_cast<double>(in.G_min);

  // The L condition separates irrational exponents; without any it is vacuous.
  a.weak_L_threshold = irr > 0 ? scale * (0.5 + eta + std::max(1.0, root)) : 0.0;
  a.weak_G_threshold = G_off;
  a.weak = L_min > a.weak_L_threshold && G_min > a.weak_G_threshold;
  if (!(L_min > a.weak_L_threshold))
    a.details.push_back("weak: L_min = " + fmt(L_min) + " <= " + fmt(a.weak_L_threshold));
  if (!(G_min > a.weak_G_threshold))
    a.details.push_back("weak: G_min = " + fmt(G_min) + " <= " + fmt(a.weak_G_threshold));

  // Free parameters eps, eps_r and their budget.
  const double budget = std::pow(3.0 * kPi / 5.0, d) * std::pow(0.5 + eta, -2.0 * eta * d);
  const bool has_eps_term = irr - 1 > 0;
  const int shares = d + (has_eps_term ? 1 : 0);
  const double share = 0.999 * budget / shares;
  a.eps_r.assign(static_cast<std::size_t>(d), kInf);
  a.eps = kInf;
  if (in.eps_r) {
    if (static_cast<int>(in.eps_r->size()) != d) throw ValidationError("eps_r needs d entries");
    a.eps_r = *in.eps_r;
  } else if (irr > 0) {
    for (int r = 0; r < d; ++r) a.eps_r[r] = share / (irr * std::pow(kPi, r) / std::pow(fe, 2.0 * r));
  }
  if (in.eps) {
    a.eps = *in.eps;
  } else if (has_eps_term) {
    a.eps = share / (irr - 1);
  }
  double used = 0.0;
  for (int r = 0; r < d; ++r)
    if (std::isfinite(a.eps_r[r])) used += irr * std::pow(kPi, r) / std::pow(fe, 2.0 * r) * a.eps_r[r];
  if (has_eps_term && std::isfinite(a.eps)) used += (irr - 1) * a.eps;
  const bool budget_ok = used < budget;
  if (!budget_ok) a.details.push_back("full: eps, eps_r exceed the budget " + fmt(budget));

  double eps_term = 0.0;
  if (has_eps_term) eps_term = std::pow(std::pow(kPi, in.d_M) / a.eps, 1.0 / ((2 * eta + 1) * (d - in.d_M)));
  a.full_L_threshold = irr > 0 ? scale * (eta + 0.5 + std::max({1.0, root, eps_term})) : 0.0;
  a.full_G_threshold = G_off;
  for (int r = 0; r < d; ++r) {
    if (!std::isfinite(a.eps_r[r])) continue;
    const double inner = binom(d, r) * beta_sum(eta, d - r) / a.eps_r[r];
    const double term = std::pow(std::pow(inner, 1.0 / (d - r)) / eta, 1.0 / (2 * eta + 1));
    a.full_G_threshold = std::max(a.full_G_threshold, G_off + term);
  }
  const bool L_ok = L_min > a.full_L_threshold;
  const bool G_ok = G_min > a.full_G_threshold;
  if (!L_ok) a.details.push_back("full: L_min = " + fmt(L_min) + " <= " + fmt(a.full_L_threshold));
  if (!G_ok) a.details.push_back("full: G_min = " + fmt(G_min) + " <= " + fmt(a.full_G_threshold));
  a.full = budget_ok && L_ok && G_ok;
  return a;
}

double truncation_bound(double N, double alpha, double kappa, double seminorm, int d) {
  if (!(alpha > kappa) || !(kappa > 0.5 * d))
    throw ValidationError("truncation bound needs alpha > kappa > d/2");
  if (!(N > 0.0) || seminorm < 0.0) throw ValidationError("N must be positive and the seminorm nonnegative");
  return std::pow(N, kappa - alpha) * seminorm;
}

}  // namespace qpa
