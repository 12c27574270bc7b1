#pragma once

#include <vector>

#include "qpa/core.hpp"

namespace qpa {

// Order-eta Hanning window norm * (1 - cos theta)^eta with mean 1 over a period.
class WindowKernel {
 public:
  explicit WindowKernel(int eta);

  int eta() const { return eta_; }
  // eta! / (2 eta - 1)!!
  double norm_const() const { return norm_; }
  // Fourier coefficient c_q; zero for |q| > eta, c_0 == 1 exactly.
  double coeff(long long q) const;
  double weight(double theta) const;

 private:
  int eta_;
  double norm_;
  std::vector<double> coeffs_;  // index q + eta
};

// Product over dimensions of the window at node j of K_G.
double window_weight(const std::vector<long long>& j, const std::vector<long long>& G,
                     const WindowKernel& kernel);

// (1/|G|) sum over K_G of the window; 1 up to rounding. Throws GridError if
// some G_j <= 2 eta.
double discrete_window_sum(const std::vector<long long>& G, const WindowKernel& kernel);

// Continuous transform int_0^1 H(t) exp(i 2 pi q t) dt for one dimension.
cplx nwft_factor(double q, const WindowKernel& kernel);

// Product of nwft_factor(v_j - w_j); v and w are scaled exponents.
cplx nwft_exponential(const std::vector<double>& v, const std::vector<double>& w,
                      const WindowKernel& kernel);

// -G/2 <= h_j <= G/2 - 1 for all j.
bool in_index_set(const std::vector<long long>& h, const std::vector<long long>& G);

// Windowed DFT entries with per-dimension weight tables. The sampling nodes
// are m = 0..G-1, i.e. x = m L / G in [0, L).
class DftEvaluator {
 public:
  explicit DftEvaluator(const PeriodGrid& grid);

  // (1/G_j) sum_m w(m) exp(i 2 pi q m / G_j)
  cplx factor(int dim, double q) const;

  // Throws GridError if hs is outside K_G.
  cplx entry(const std::vector<double>& vt, const std::vector<long long>& hs) const;

  const PeriodGrid& grid() const { return grid_; }
  const WindowKernel& kernel() const { return kernel_; }

 private:
  PeriodGrid grid_;
  WindowKernel kernel_;
  std::vector<std::vector<double>> weights_;
};

cplx dft_entry(const std::vector<double>& vt, const std::vector<long long>& hs,
               const PeriodGrid& grid);

// |dft_entry - sum_{|l_j| <= n_alias} nwft(vt - hs - l o G)|
double aliasing_check(const std::vector<double>& vt, const std::vector<long long>& hs,
                      const PeriodGrid& grid, int n_alias);

}  // namespace qpa
