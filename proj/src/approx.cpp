#include "qpa/approx.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "qpa/errors.hpp"
#include "qpa/window.hpp"

namespace qpa {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMinRcond = 1e-13;

ComplexVector lu_solve(const ComplexMatrix& A, const ComplexVector& rhs, const char* what) {
  if (A.rows() != rhs.size()) throw ValidationError("coefficient vector has the wrong length");
  Eigen::PartialPivLU<ComplexMatrix> lu(A);
  const double rc = lu.rcond();
  if (!(rc > kMinRcond)) {
    std::ostringstream os;
    os << what << " is singular to working precision (rcond " << rc << ")";
    throw NumericalError(os.str());
  }
  return lu.solve(rhs);
}

// |f_p - f| at arbitrary points.
class ErrorEvaluator {
 public:
  ErrorEvaluator(const QuasiperiodicSpec& spec, const PeriodicApproximant& approx)
      : spec_(spec), approx_(approx) {}

  double operator()(const std::vector<double>& x) const {
    return std::abs(evaluate_fp(approx_, x) - evaluate_f(spec_, x));
  }

 private:
  const QuasiperiodicSpec& spec_;
  const PeriodicApproximant& approx_;
};

double golden_max(const std::function<double(double)>& fn, double lo, double hi, double& best_x) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = fn(c), fd = fn(d);
  const double tol = 1e-12 * std::max(1.0, std::abs(hi) + std::abs(lo));
  for (int it = 0; it < 200 && (b - a) > tol; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = fn(d);
    }
  }
  best_x = fc > fd ? c : d;
  return std::max(fc, fd);
}

}  // namespace

CoefficientSystem build_system(const QuasiperiodicSpec& spec, const PeriodGrid& grid,
                               const ScaledExponentSet& set) {
  const int d = set.dim();
  if (spec.dim() != d || grid.dim() != d) throw ValidationError("dimension mismatch");
  if (set.size() != spec.size()) throw ValidationError("exponent count mismatch");
  for (int j = 0; j < d; ++j)
    if (set.L[j] != grid.L()[j]) throw ValidationError("exponent set was scaled with another L");

  const auto D = static_cast<Eigen::Index>(set.size());
  const auto& G = grid.G();
  for (Eigen::Index s = 0; s < D; ++s) {
    for (int j = 0; j < d; ++j) {
      const long long h = set.H(s, j);
      if (h < -G[j] / 2 || h > G[j] / 2 - 1) {
        std::ostringstream os;
        os << "grid too small: exponent " << set.order[s] << " has h_" << j << " = " << h
           << " outside [" << -G[j] / 2 << ", " << G[j] / 2 - 1 << "]";
        throw GridError(os.str());
      }
    }
  }

  const DftEvaluator ev(grid);
  CoefficientSystem sys;
  sys.M.resize(D, D);
  sys.Mp.resize(D, D);
  for (Eigen::Index s = 0; s < D; ++s) {
    for (Eigen::Index t = 0; t < D; ++t) {
      cplx m = 1.0, mp = 1.0;
      for (int j = 0; j < d; ++j) {
        const auto hs = static_cast<double>(set.H(s, j));
        m *= ev.factor(j, set.V(t, j) - hs);
        mp *= ev.factor(j, static_cast<double>(set.H(t, j)) - hs);
      }
      sys.M(s, t) = m;
      sys.Mp(s, t) = mp;
    }
  }
  return sys;
}

ComplexVector solve_periodic_coefficients(const CoefficientSystem& sys, const ComplexVector& y) {
  return lu_solve(sys.Mp, sys.M * y, "Mp");
}

ComplexVector solve_quasiperiodic_coefficients(const CoefficientSystem& sys,
                                               const ComplexVector& yp) {
  return lu_solve(sys.M, sys.Mp * yp, "M");
}

PeriodicApproximant::PeriodicApproximant(std::vector<long long> L, IntMatrix exponents,
                                         std::vector<cplx> coefficients)
    : L_(std::move(L)), H_(std::move(exponents)), b_(std::move(coefficients)) {
  if (static_cast<std::size_t>(H_.rows()) != b_.size())
    throw ValidationError("exponent and coefficient counts differ");
  if (static_cast<std::size_t>(H_.cols()) != L_.size())
    throw ValidationError("exponent dimension differs from L");
  for (Eigen::Index a = 0; a < H_.rows(); ++a)
    for (Eigen::Index b = a + 1; b < H_.rows(); ++b)
      if (H_.row(a) == H_.row(b)) {
        std::ostringstream os;
        os << "periodic exponents " << a << " and " << b << " coincide";
        throw ValidationError(os.str());
      }
}

PeriodicApproximant make_approximant(const ScaledExponentSet& set, const ComplexVector& yp) {
  IntMatrix H(set.H.rows(), set.H.cols());
  for (std::size_t i = 0; i < set.order.size(); ++i)
    H.row(static_cast<Eigen::Index>(set.order[i])) = set.H.row(static_cast<Eigen::Index>(i));
  return PeriodicApproximant(set.L, std::move(H), set.to_input_order(yp));
}

cplx evaluate_f(const QuasiperiodicSpec& spec, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != spec.dim()) throw ValidationError("point has the wrong dimension");
  cplx sum = 0.0;
  const auto& lam = spec.lambda();
  for (Eigen::Index l = 0; l < lam.rows(); ++l) {
    double phase = 0.0;
    for (int j = 0; j < spec.dim(); ++j) phase += lam(l, j) * x[j];
    sum += spec.coefficients()[l] * std::polar(1.0, kTwoPi * phase);
  }
  return sum;
}

cplx evaluate_fp(const PeriodicApproximant& approx, const std::vector<double>& x) {
  const auto& L = approx.L();
  if (x.size() != L.size()) throw ValidationError("point has the wrong dimension");
  std::vector<double> xr(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const auto Lj = static_cast<double>(L[j]);
    xr[j] = std::fmod(x[j], Lj);
    if (xr[j] < 0.0) xr[j] += Lj;
    xr[j] /= Lj;
  }
  const auto& H = approx.exponents();
  cplx sum = 0.0;
  for (Eigen::Index l = 0; l < H.rows(); ++l) {
    double phase = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) phase += static_cast<double>(H(l, j)) * xr[j];
    sum += approx.coefficients()[l] * std::polar(1.0, kTwoPi * phase);
  }
  return sum;
}

SupResult sup_error_search(const QuasiperiodicSpec& spec, const PeriodicApproximant& approx,
                           const SupSamplingPolicy& sampling) {
  const int d = spec.dim();
  const auto& L = approx.L();
  if (static_cast<int>(L.size()) != d) throw ValidationError("dimension mismatch");
  if (sampling.n_per_dim < 0 || sampling.max_points < 1)
    throw ValidationError("sampling density must be positive");
  const auto D = static_cast<Eigen::Index>(spec.size());
  const bool symmetric = sampling.domain == SupDomain::Symmetric;
  const double span = symmetric ? 2.0 : 1.0;

  std::vector<long long> n(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    if (sampling.n_per_dim > 0) {
      n[j] = sampling.n_per_dim;
    } else {
      long long hmax = 0;
      for (Eigen::Index l = 0; l < D; ++l) hmax = std::max(hmax, std::abs(approx.exponents()(l, j)));
      n[j] = std::max<long long>(static_cast<long long>(10.0 * span * static_cast<double>(hmax)), 1000);
    }
  }
  if (d > 1) {
    double total = 1.0;
    for (long long v : n) total *= static_cast<double>(v);
    if (total > static_cast<double>(sampling.max_points)) {
      const auto cap = static_cast<long long>(
          std::floor(std::pow(static_cast<double>(sampling.max_points), 1.0 / d) + 1e-9));
      for (auto& v : n) v = std::max<long long>(2, std::min(v, cap));
    }
  }

  std::vector<double> lo(static_cast<std::size_t>(d)), step(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    const auto Lj = static_cast<double>(L[j]);
    lo[j] = symmetric ? -Lj : 0.0;
    step[j] = span * Lj / static_cast<double>(n[j]);
  }

  // Separable tables: exp(i 2 pi lambda_lj x_j) and exp(i 2 pi h_lj x_j / L_j).
  std::vector<std::vector<cplx>> tf(static_cast<std::size_t>(D * d)), tp(static_cast<std::size_t>(D * d));
  for (Eigen::Index l = 0; l < D; ++l) {
    for (int j = 0; j < d; ++j) {
      auto& f = tf[l * d + j];
      auto& p = tp[l * d + j];
      f.resize(static_cast<std::size_t>(n[j]));
      p.resize(static_cast<std::size_t>(n[j]));
      const double lam = spec.lambda()(l, j);
      const double hl = static_cast<double>(approx.exponents()(l, j)) / static_cast<double>(L[j]);
      for (long long i = 0; i < n[j]; ++i) {
        const double x = lo[j] + static_cast<double>(i) * step[j];
        f[i] = std::polar(1.0, kTwoPi * lam * x);
        p[i] = std::polar(1.0, kTwoPi * hl * x);
      }
    }
  }

  long long total = 1;
  for (long long v : n) total *= v;
  std::vector<double> vals(static_cast<std::size_t>(total));
  std::vector<long long> idx(static_cast<std::size_t>(d), 0);
  const auto& a = spec.coefficients();
  const auto& b = approx.coefficients();
  for (long long k = 0; k < total; ++k) {
    cplx s = 0.0;
    for (Eigen::Index l = 0; l < D; ++l) {
      cplx ef = a[l], ep = b[l];
      for (int j = 0; j < d; ++j) {
        ef *= tf[l * d + j][idx[j]];
        ep *= tp[l * d + j][idx[j]];
      }
      s += ep - ef;
    }
    vals[k] = std::abs(s);
    for (int j = d - 1; j >= 0; --j) {
      if (++idx[j] < n[j]) break;
      idx[j] = 0;
    }
  }

  // Row-major strides, last dimension fastest.
  std::vector<long long> stride(static_cast<std::size_t>(d), 1);
  for (int j = d - 2; j >= 0; --j) stride[j] = stride[j + 1] * n[j + 1];

  auto point_of = [&](long long k) {
    std::vector<double> x(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
      const long long i = (k / stride[j]) % n[j];
      x[j] = lo[j] + static_cast<double>(i) * step[j];
    }
    return x;
  };

  SupResult res;
  res.n_per_dim = n;
  const auto gmax = std::max_element(vals.begin(), vals.end());
  res.grid_value = *gmax;
  res.value = *gmax;
  res.argmax = point_of(gmax - vals.begin());

  if (sampling.refine_top <= 0) return res;

  std::vector<std::pair<double, long long>> peaks;
  for (long long k = 0; k < total; ++k) {
    bool is_peak = true;
    for (int j = 0; j < d && is_peak; ++j) {
      const long long i = (k / stride[j]) % n[j];
      if (i > 0 && vals[k - stride[j]] > vals[k]) is_peak = false;
      if (i + 1 < n[j] && vals[k + stride[j]] > vals[k]) is_peak = false;
    }
    if (is_peak) peaks.emplace_back(vals[k], k);
  }
  const auto keep = std::min<std::size_t>(peaks.size(), static_cast<std::size_t>(sampling.refine_top));
  std::partial_sort(peaks.begin(), peaks.begin() + static_cast<std::ptrdiff_t>(keep), peaks.end(),
                    [](const auto& p, const auto& q) {
                      return p.first != q.first ? p.first > q.first : p.second < q.second;
                    });

  const ErrorEvaluator err(spec, approx);
  const int sweeps = d == 1 ? 1 : 4;
  for (std::size_t p = 0; p < keep; ++p) {
    std::vector<double> x = point_of(peaks[p].second);
    double best = peaks[p].first;
    for (int sw = 0; sw < sweeps; ++sw) {
      for (int j = 0; j < d; ++j) {
        const double dom_lo = lo[j];
        const double dom_hi = lo[j] + span * static_cast<double>(L[j]);
        const double a0 = std::max(dom_lo, x[j] - step[j]);
        const double b0 = std::min(dom_hi, x[j] + step[j]);
        std::vector<double> y = x;
        double xj = x[j];
        const double v = golden_max(
            [&](double t) {
              y[j] = t;
              return err(y);
            },
            a0, b0, xj);
        if (v > best) {
          best = v;
          x[j] = xj;
        }
      }
    }
    if (best > res.value) {
      res.value = best;
      res.argmax = x;
    }
  }
  return res;
}

double sup_error(const QuasiperiodicSpec& spec, const PeriodicApproximant& approx,
                 const SupSamplingPolicy& sampling) {
  return sup_error_search(spec, approx, sampling).value;
}

}  // namespace qpa
