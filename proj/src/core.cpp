#include "qpa/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "qpa/errors.hpp"

namespace qpa {

namespace {

constexpr double kTieEps = 1e-9;
constexpr double kDistEps = 1e-9;

bool same_value(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) < std::max(1e-9, 64.0 * std::numeric_limits<double>::epsilon() * scale);
}

double circular_distance(double a, double b) {
  double t = std::abs(a - b);
  t -= std::floor(t);
  return std::min(t, 1.0 - t);
}

}  // namespace

bool near_integer(double x) {
  const double tol = std::max(1e-9, 64.0 * std::numeric_limits<double>::epsilon() * std::abs(x));
  return std::abs(x - std::round(x)) < tol;
}

std::vector<std::vector<double>> build_exponents(const RealMatrix& P,
                                                 const std::vector<std::vector<long long>>& lattice) {
  const auto d = P.rows();
  const auto n = P.cols();
  std::vector<std::vector<double>> out;
  out.reserve(lattice.size());
  for (const auto& k : lattice) {
    if (static_cast<Eigen::Index>(k.size()) != n)
      throw ValidationError("lattice vector length differs from rank of P");
    std::vector<double> lam(static_cast<std::size_t>(d), 0.0);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < n; ++j) lam[i] += P(i, j) * static_cast<double>(k[j]);
    out.push_back(std::move(lam));
  }
  for (std::size_t a = 0; a < out.size(); ++a) {
    for (std::size_t b = a + 1; b < out.size(); ++b) {
      bool equal = true;
      for (Eigen::Index i = 0; i < d && equal; ++i) {
        const double x = out[a][i], y = out[b][i];
        equal = std::abs(x - y) <= 1e-12 * std::max({1.0, std::abs(x), std::abs(y)});
      }
      if (equal) {
        std::ostringstream os;
        os << "exponents " << a << " and " << b << " coincide after projection";
        throw ValidationError(os.str());
      }
    }
  }
  return out;
}

std::vector<std::vector<double>> build_exponents(const QuasiperiodicSpec& spec) {
  return build_exponents(spec.P(), spec.lattice());
}

QuasiperiodicSpec QuasiperiodicSpec::create(RealMatrix P,
                                            std::vector<std::vector<long long>> lattice,
                                            std::vector<cplx> coefficients, int N,
                                            DiophantineParams diophantine,
                                            std::vector<RationalMark> rational_marks) {
  if (P.rows() < 1 || P.cols() < P.rows())
    throw ValidationError("P must be d x n with 1 <= d <= n");
  if (!P.allFinite()) throw ValidationError("P has non-finite entries");
  if (lattice.empty()) throw ValidationError("at least one lattice vector is required");
  if (lattice.size() != coefficients.size())
    throw ValidationError("lattice and coefficients differ in length");
  if (N < 1) throw ValidationError("N must be positive");
  if (!(diophantine.C_a > 0.0) || !(diophantine.tau > 0.0))
    throw ValidationError("C_a and tau must be positive");
  for (std::size_t l = 0; l < lattice.size(); ++l) {
    for (long long kj : lattice[l]) {
      if (kj < -N || kj > N) {
        std::ostringstream os;
        os << "lattice vector " << l << " has an entry outside [-N, N]";
        throw ValidationError(os.str());
      }
    }
    if (!std::isfinite(coefficients[l].real()) || !std::isfinite(coefficients[l].imag()))
      throw ValidationError("non-finite coefficient");
  }

  auto lam = build_exponents(P, lattice);

  for (const auto& m : rational_marks) {
    if (m.row >= lam.size() || m.col >= static_cast<std::size_t>(P.rows()))
      throw ValidationError("rational mark out of range");
    if (m.den <= 0) throw ValidationError("rational mark needs a positive denominator");
    const double q = static_cast<double>(m.num) / static_cast<double>(m.den);
    if (!same_value(q, lam[m.row][m.col]))
      throw ValidationError("rational mark disagrees with P k");
  }

  QuasiperiodicSpec s;
  s.P_ = std::move(P);
  s.lattice_ = std::move(lattice);
  s.coefficients_ = std::move(coefficients);
  s.N_ = N;
  s.diophantine_ = diophantine;
  s.marks_ = std::move(rational_marks);
  s.lambda_.resize(static_cast<Eigen::Index>(lam.size()), s.P_.rows());
  for (std::size_t l = 0; l < lam.size(); ++l)
    for (Eigen::Index j = 0; j < s.P_.rows(); ++j) s.lambda_(l, j) = lam[l][j];
  return s;
}

double QuasiperiodicSpec::P_norm1() const { return P_.cwiseAbs().colwise().sum().maxCoeff(); }

PeriodGrid PeriodGrid::create(std::vector<long long> L, std::vector<long long> G, int eta) {
  if (L.empty()) throw ValidationError("L must be non-empty");
  if (L.size() != G.size()) throw ValidationError("L and G differ in dimension");
  if (eta < 1) throw ValidationError("eta must be >= 1");
  for (std::size_t j = 0; j < L.size(); ++j) {
    if (L[j] < 1) throw ValidationError("L entries must be positive");
    if (G[j] % 2 != 0) throw GridError("G entries must be even");
    if (G[j] <= 2 * eta) throw GridError("G entries must exceed 2 eta");
  }
  PeriodGrid g;
  g.L_ = std::move(L);
  g.G_ = std::move(G);
  g.eta_ = eta;
  return g;
}

long long PeriodGrid::L_min() const { return *std::min_element(L_.begin(), L_.end()); }
long long PeriodGrid::L_max() const { return *std::max_element(L_.begin(), L_.end()); }
long long PeriodGrid::G_min() const { return *std::min_element(G_.begin(), G_.end()); }

std::vector<long long> grid_from_rule(GridRule rule, const std::vector<long long>& L) {
  if (L.empty()) throw ValidationError("L must be non-empty");
  std::vector<long long> G(L.size());
  switch (rule) {
    case GridRule::TenL:
      std::transform(L.begin(), L.end(), G.begin(), [](long long x) { return 10 * x; });
      break;
    case GridRule::TwoLmaxPlus10: {
      const long long lmax = *std::max_element(L.begin(), L.end());
      std::fill(G.begin(), G.end(), 2 * lmax + 10);
      break;
    }
  }
  return G;
}

double ScaledExponentSet::row_delta_inf(std::size_t s) const {
  return deltaV.row(static_cast<Eigen::Index>(s)).cwiseAbs().maxCoeff();
}

ComplexVector ScaledExponentSet::to_internal(const std::vector<cplx>& input_order) const {
  if (input_order.size() != order.size()) throw ValidationError("coefficient count mismatch");
  ComplexVector out(static_cast<Eigen::Index>(order.size()));
  for (std::size_t i = 0; i < order.size(); ++i) out(i) = input_order[order[i]];
  return out;
}

std::vector<cplx> ScaledExponentSet::to_input_order(const ComplexVector& internal) const {
  if (static_cast<std::size_t>(internal.size()) != order.size())
    throw ValidationError("coefficient count mismatch");
  std::vector<cplx> out(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) out[order[i]] = internal(i);
  return out;
}

ScaledExponentSet classify(const QuasiperiodicSpec& spec, const std::vector<long long>& L,
                           const ClassifyOptions& options) {
  const int d = spec.dim();
  const auto D = static_cast<Eigen::Index>(spec.size());
  if (static_cast<int>(L.size()) != d) throw ValidationError("L has the wrong dimension");
  for (long long x : L)
    if (x < 1) throw ValidationError("L entries must be positive");

  ScaledExponentSet out;
  out.L = L;

  // Scale and classify in input order first.
  RealMatrix V(D, d);
  BoolArray is_int(D, d);
  std::vector<std::string> notes;
  for (Eigen::Index l = 0; l < D; ++l) {
    for (int j = 0; j < d; ++j) {
      V(l, j) = static_cast<double>(L[j]) * spec.lambda()(l, j);
      is_int(l, j) = near_integer(V(l, j));
    }
  }
  for (const auto& m : spec.rational_marks()) {
    const long long scaled = L[m.col] * m.num;
    const auto l = static_cast<Eigen::Index>(m.row);
    const auto j = static_cast<Eigen::Index>(m.col);
    if (scaled % m.den == 0) {
      is_int(l, j) = true;
      V(l, j) = static_cast<double>(scaled / m.den);
    } else {
      is_int(l, j) = false;
      V(l, j) = static_cast<double>(scaled) / static_cast<double>(m.den);
      std::ostringstream os;
      os << "entry (" << m.row << "," << m.col << ") is rational but L*lambda is not an integer; "
         << "treated as non-integer";
      notes.push_back(os.str());
    }
  }
  for (Eigen::Index l = 0; l < D; ++l) {
    for (int j = 0; j < d; ++j) {
      if (is_int(l, j)) {
        V(l, j) = std::round(V(l, j));
        continue;
      }
      const double frac = std::abs(V(l, j) - std::trunc(V(l, j)));
      if (std::abs(frac - 0.5) <= kTieEps) {
        std::ostringstream os;
        os << "entry (" << l << "," << j << ") is within the half-integer tie window; "
           << "rounded half away from zero";
        notes.push_back(os.str());
      }
    }
  }

  std::vector<std::size_t> order(static_cast<std::size_t>(D));
  std::iota(order.begin(), order.end(), 0);
  auto row_rational = [&](std::size_t l) { return is_int.row(static_cast<Eigen::Index>(l)).all(); };
  std::stable_partition(order.begin(), order.end(), row_rational);

  out.order = order;
  out.lambda.resize(D, d);
  out.V.resize(D, d);
  out.H.resize(D, d);
  out.deltaV.resize(D, d);
  out.is_integer.resize(D, d);
  for (Eigen::Index i = 0; i < D; ++i) {
    const auto src = static_cast<Eigen::Index>(order[i]);
    for (int j = 0; j < d; ++j) {
      out.lambda(i, j) = spec.lambda()(src, j);
      out.V(i, j) = V(src, j);
      out.is_integer(i, j) = is_int(src, j);
      out.H(i, j) = std::llround(V(src, j));
      out.deltaV(i, j) = is_int(src, j) ? 0.0 : static_cast<double>(out.H(i, j)) - V(src, j);
    }
  }

  out.zeta = static_cast<int>(std::count_if(order.begin(), order.end(), row_rational));
  out.r.resize(static_cast<std::size_t>(D));
  for (Eigen::Index i = 0; i < D; ++i)
    out.r[i] = static_cast<int>(out.is_integer.row(i).count());

  out.alpha = Eigen::MatrixXi::Zero(D, D);
  out.d_m = d;
  out.d_M = 0;
  for (Eigen::Index s = out.zeta; s < D; ++s) {
    out.d_m = std::min(out.d_m, out.r[s]);
    for (Eigen::Index t = out.zeta; t < D; ++t) {
      if (s == t) continue;
      int cnt = 0;
      for (int j = 0; j < d; ++j)
        if (same_value(out.V(s, j), out.V(t, j))) ++cnt;
      out.alpha(s, t) = cnt;
      out.d_M = std::max(out.d_M, cnt);
    }
  }

  if (options.s_override) {
    if (static_cast<int>(options.s_override->size()) != d)
      throw ValidationError("s override has the wrong dimension");
    out.s_per_dim = *options.s_override;
  } else {
    out.s_per_dim.assign(static_cast<std::size_t>(d), 0);
    for (int j = 0; j < d; ++j) {
      std::vector<double> seen;
      for (Eigen::Index i = 0; i < D; ++i) {
        if (out.is_integer(i, j)) continue;
        const double x = out.V(i, j);
        const bool dup = std::any_of(seen.begin(), seen.end(),
                                     [&](double y) { return circular_distance(x, y) < kDistEps; });
        if (!dup) seen.push_back(x);
      }
      out.s_per_dim[j] = static_cast<int>(seen.size());
    }
  }

  out.notes = std::move(notes);
  return out;
}

}  // namespace qpa
