#include "qpa/window.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qpa/errors.hpp"

namespace qpa {

namespace {

constexpr double kPi = std::numbers::pi;

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Neumaier compensated sum.
struct CompensatedSum {
  double sum = 0.0;
  double c = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      c += (sum - t) + x;
    else
      c += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + c; }
};

std::vector<double> weight_table(long long G, const WindowKernel& kernel) {
  std::vector<double> w(static_cast<std::size_t>(G));
  for (long long m = 0; m < G; ++m)
    w[m] = kernel.weight(2.0 * kPi * static_cast<double>(m) / static_cast<double>(G));
  return w;
}

cplx dft_factor_with(const std::vector<double>& w, long long G, double q) {
  // Split q so the phase stays accurate for |q| m far beyond 2^53 / G.
  const double qi_d = std::floor(q);
  const auto qi = static_cast<long long>(qi_d);
  const double qf = q - qi_d;
  const double invG = 1.0 / static_cast<double>(G);
  CompensatedSum re, im;
  for (long long m = 0; m < G; ++m) {
    if (w[m] == 0.0) continue;
    long long k = (qi % G) * m % G;
    if (k < 0) k += G;
    const double cycles = static_cast<double>(k) * invG + qf * static_cast<double>(m) * invG;
    const double ang = 2.0 * kPi * cycles;
    re.add(w[m] * std::cos(ang));
    im.add(w[m] * std::sin(ang));
  }
  return {re.value() * invG, im.value() * invG};
}

}  // namespace

WindowKernel::WindowKernel(int eta) : eta_(eta) {
  if (eta < 1) throw ValidationError("eta must be >= 1");
  double dfact = 1.0;
  for (int k = 2 * eta - 1; k > 1; k -= 2) dfact *= k;
  norm_ = factorial(eta) / dfact;
  coeffs_.resize(static_cast<std::size_t>(2 * eta + 1));
  const double center = binom(2 * eta, eta);
  for (int q = -eta; q <= eta; ++q) {
    const double sign = (q % 2 == 0) ? 1.0 : -1.0;
    coeffs_[q + eta] = sign * binom(2 * eta, eta + q) / center;
  }
}

double WindowKernel::coeff(long long q) const {
  if (q < -eta_ || q > eta_) return 0.0;
  return coeffs_[static_cast<std::size_t>(q + eta_)];
}

double WindowKernel::weight(double theta) const {
  // 1 - cos t = 2 sin^2(t/2), exact near t = 0
  const double s = std::sin(0.5 * theta);
  return norm_ * std::pow(2.0 * s * s, eta_);
}

double window_weight(const std::vector<long long>& j, const std::vector<long long>& G,
                     const WindowKernel& kernel) {
  if (j.size() != G.size()) throw ValidationError("index and grid differ in dimension");
  double w = 1.0;
  for (std::size_t k = 0; k < j.size(); ++k)
    w *= kernel.weight(2.0 * kPi * static_cast<double>(j[k]) / static_cast<double>(G[k]));
  return w;
}

double discrete_window_sum(const std::vector<long long>& G, const WindowKernel& kernel) {
  double total = 1.0;
  for (long long g : G) {
    if (g <= 2 * kernel.eta()) throw GridError("G entries must exceed 2 eta");
    CompensatedSum s;
    for (long long m = -g / 2; m < g - g / 2; ++m)
      s.add(kernel.weight(2.0 * kPi * static_cast<double>(m) / static_cast<double>(g)));
    total *= s.value() / static_cast<double>(g);
  }
  return total;
}

cplx nwft_factor(double q, const WindowKernel& kernel) {
  const int eta = kernel.eta();
  const double n_d = std::round(q);
  const double r = q - n_d;
  if (r == 0.0) {
    const double an = std::abs(n_d);
    if (an > eta) return 0.0;
    return kernel.coeff(-static_cast<long long>(n_d));
  }
  // (-1)^eta (eta!)^2 (e^{i2pi q} - 1) / (i 2 pi prod_{j=-eta}^{eta} (q + j))
  // with e^{i2pi q} - 1 = 2i (-1)^n sin(pi r) e^{i pi q}; the (-1)^n cancels
  // against e^{i pi n}, and the factor q - n of the product is r itself.
  const auto n = static_cast<long long>(n_d);
  double prod = 1.0;
  bool hit = false;
  for (int j = -eta; j <= eta; ++j) {
    if (n + j == 0) {
      hit = true;
      continue;
    }
    prod *= q + j;
  }
  const double fe = factorial(eta);
  const double sign = (eta % 2 == 0) ? 1.0 : -1.0;
  const double pr = kPi * r;
  double mag;
  if (hit)
    mag = sign * fe * fe * (std::sin(pr) / pr) / prod;
  else
    mag = sign * fe * fe * std::sin(pr) / (kPi * prod);
  return mag * std::polar(1.0, pr);
}

cplx nwft_exponential(const std::vector<double>& v, const std::vector<double>& w,
                      const WindowKernel& kernel) {
  if (v.size() != w.size()) throw ValidationError("exponents differ in dimension");
  cplx out = 1.0;
  for (std::size_t j = 0; j < v.size(); ++j) out *= nwft_factor(v[j] - w[j], kernel);
  return out;
}

bool in_index_set(const std::vector<long long>& h, const std::vector<long long>& G) {
  if (h.size() != G.size()) return false;
  for (std::size_t j = 0; j < h.size(); ++j)
    if (h[j] < -G[j] / 2 || h[j] > G[j] / 2 - 1) return false;
  return true;
}

DftEvaluator::DftEvaluator(const PeriodGrid& grid) : grid_(grid), kernel_(grid.eta()) {
  for (long long g : grid_.G()) weights_.push_back(weight_table(g, kernel_));
}

cplx DftEvaluator::factor(int dim, double q) const {
  return dft_factor_with(weights_.at(static_cast<std::size_t>(dim)), grid_.G()[dim], q);
}

cplx DftEvaluator::entry(const std::vector<double>& vt, const std::vector<long long>& hs) const {
  const auto& G = grid_.G();
  if (vt.size() != G.size()) throw ValidationError("exponent and grid differ in dimension");
  if (!in_index_set(hs, G)) {
    std::ostringstream os;
    os << "exponent (";
    for (std::size_t j = 0; j < hs.size(); ++j) os << (j ? "," : "") << hs[j];
    os << ") lies outside K_G";
    throw GridError(os.str());
  }
  cplx out = 1.0;
  for (std::size_t j = 0; j < G.size(); ++j)
    out *= factor(static_cast<int>(j), vt[j] - static_cast<double>(hs[j]));
  return out;
}

cplx dft_entry(const std::vector<double>& vt, const std::vector<long long>& hs,
               const PeriodGrid& grid) {
  return DftEvaluator(grid).entry(vt, hs);
}

double aliasing_check(const std::vector<double>& vt, const std::vector<long long>& hs,
                      const PeriodGrid& grid, int n_alias) {
  if (n_alias < 1) throw ValidationError("n_alias must be >= 1");
  const DftEvaluator ev(grid);
  const cplx dft = ev.entry(vt, hs);
  cplx alias = 1.0;
  for (std::size_t j = 0; j < vt.size(); ++j) {
    const double q = vt[j] - static_cast<double>(hs[j]);
    const auto G = static_cast<double>(grid.G()[j]);
    cplx s = 0.0;
    for (int l = -n_alias; l <= n_alias; ++l) s += nwft_factor(q - l * G, ev.kernel());
    alias *= s;
  }
  return std::abs(dft - alias);
}

}  // namespace qpa
