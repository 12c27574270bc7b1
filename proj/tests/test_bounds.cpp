#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "qpa/analysis.hpp"
#include "qpa/bounds.hpp"
#include "qpa/diophantine.hpp"
#include "qpa/errors.hpp"
#include "qpa/fixtures.hpp"
#include "qpa/reproduce.hpp"
#include "qpa/window.hpp"

using namespace qpa;

namespace {

constexpr double kPi = std::numbers::pi;

PeriodGrid ten_l(long long L) { return PeriodGrid::create({L}, {10 * L}, 1); }

PeriodGrid two_lmax(const std::vector<long long>& L) {
  return PeriodGrid::create(L, grid_from_rule(GridRule::TwoLmaxPlus10, L), 1);
}

AnalysisOptions no_sup() {
  AnalysisOptions o = reference_options();
  o.compute_eps0 = false;
  return o;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double norm1(const ComplexMatrix& A) { return A.cwiseAbs().colwise().sum().maxCoeff(); }

}  // namespace

TEST(GFunctions, Examples) {
  const auto spec = fixtures::one_dim();
  const auto grid = ten_l(29);
  const auto in = make_bound_inputs(spec, grid, classify(spec, {29}), 1.0);
  const auto g = g_functions(in);
  EXPECT_NEAR(g.g0(3) / std::pow(29.0 * 2.0 / std::pow(4.0, 2.2) - 1.5, -3.0), 1.0, 1e-14);

  const auto spec3 = fixtures::three_dim_a();
  const auto grid3 = two_lmax({7, 17, 7});
  const auto in3 = make_bound_inputs(spec3, grid3, classify(spec3, {7, 17, 7}), 1.0);
  EXPECT_DOUBLE_EQ(in3.P_norm1, 1.0);
  EXPECT_NEAR(g_functions(in3).g3(1) / std::pow(std::pow(44.0 - 2.0 * 17 - 1.5, 3), -2.0), 1.0, 1e-14);
}

TEST(GFunctions, LargeGridLimit) {
  auto in = make_bound_inputs(fixtures::one_dim(), ten_l(29), classify(fixtures::one_dim(), {29}), 1.0);
  in.G_min = 1000000000;
  const auto g = g_functions(in);
  EXPECT_LT(g.g2(0), 1e-26);
  EXPECT_LT(g.g3(0), 1e-26);
}

TEST(GFunctions, NonPositiveBase) {
  const auto spec = fixtures::one_dim();
  auto in = make_bound_inputs(spec, ten_l(5), classify(spec, {5}), 1.0);
  EXPECT_THROW(g_functions(in).g0(1), InadmissibleError);
  in.G_min = 1;
  EXPECT_THROW(g_functions(in).g2(0), InadmissibleError);
  EXPECT_THROW(g_functions(in).g3(0), InadmissibleError);
}

TEST(XConstants, GenericX1) {
  const auto spec = fixtures::one_dim();
  const auto in = make_bound_inputs(spec, ten_l(29), classify(spec, {29}), 1.0);
  const auto x = x_constants(in, false);
  EXPECT_NEAR(x.x1, 3.75, 1e-14);
  EXPECT_FALSE(x.sharpened);
}

TEST(XConstants, SingleIrrationalRowHasNoX2) {
  // A one-row irrational block gives x2 = 0.
  RealMatrix P(1, 2);
  P << 1.0, std::numbers::sqrt2;
  const auto spec = QuasiperiodicSpec::create(P, {{1, 0}, {0, 1}}, {1.0, 1.0}, 1, {2.0, 0.2});
  const auto grid = ten_l(70);
  const auto in = make_bound_inputs(spec, grid, classify(spec, {70}), 1.0);
  ASSERT_EQ(in.D - in.zeta - 1, 0);
  const auto x = x_constants(in, true);
  EXPECT_EQ(x.x2, 0.0);
  EXPECT_GT(x.x2_m12, 0.0);
}

TEST(Epsilon1, ReferenceValues) {
  const struct {
    QuasiperiodicSpec spec;
    PeriodGrid grid;
    double ref;
  } cases[] = {
      {fixtures::one_dim(), ten_l(29), 9.2404e-02},
      {fixtures::one_dim(), ten_l(13860), 1.9329e-04},
      {fixtures::three_dim_b(), two_lmax({34, 99, 97}), 4.0205e-02},
  };
  for (const auto& c : cases) {
    const auto a = analyze(c.spec, c.grid, no_sup());
    EXPECT_LT(rel(a.report.eps1, c.ref), 0.01) << a.report.eps1;
    EXPECT_DOUBLE_EQ(epsilon1(a.system, a.set, a.report.b_max), a.report.eps1);
  }
}

TEST(Epsilon2, ReferenceValues) {
  const auto a = analyze(fixtures::one_dim(), ten_l(70), no_sup());
  ASSERT_TRUE(a.report.eps2.has_value());
  EXPECT_LT(rel(*a.report.eps2, 1.2979e-01), 0.01) << *a.report.eps2;

  const auto b = analyze(fixtures::three_dim_a(), two_lmax({209, 239, 209}), no_sup());
  ASSERT_TRUE(b.report.eps2.has_value());
  EXPECT_LT(rel(*b.report.eps2, 1.2147e-02), 0.01) << *b.report.eps2;
}

TEST(Epsilon2, VanishesWithoutResidual) {
  const auto a = analyze(fixtures::rational_only(), PeriodGrid::create({3, 4}, {30, 40}, 1), no_sup());
  EXPECT_EQ(a.report.deltaV_e, 0.0);
  ASSERT_TRUE(a.report.eps2.has_value());
  EXPECT_EQ(*a.report.eps2, 0.0);
  EXPECT_EQ(a.report.eps1, 0.0);
}

TEST(Epsilon2, LinearInBmaxAndResidual) {
  const auto a = analyze(fixtures::one_dim(), ten_l(169), no_sup());
  auto in = a.inputs;
  const double base = epsilon2(in, true);
  in.b_max *= 3.0;
  EXPECT_NEAR(epsilon2(in, true) / base, 3.0, 1e-12);
  in.b_max /= 3.0;
  in.deltaV_e *= 0.5;
  EXPECT_NEAR(epsilon2(in, true) / base, 0.5, 1e-12);
}

TEST(Epsilon2, MonotoneAlongRecords) {
  double prev = std::numeric_limits<double>::infinity();
  for (long long L : {70, 169, 408, 985, 2378, 5741, 13860}) {
    const auto a = analyze(fixtures::one_dim(), ten_l(L), no_sup());
    ASSERT_TRUE(a.report.eps2.has_value());
    EXPECT_LE(*a.report.eps2, prev) << L;
    prev = *a.report.eps2;
  }
}

TEST(Epsilon2, NotApplicableThrows) {
  const auto spec = fixtures::three_dim_b();
  const auto grid = two_lmax({25, 41, 15});
  auto in = make_bound_inputs(spec, grid, classify(spec, {25, 41, 15}), 1.0);
  auto x = x_constants(in, true);
  x.x2 = 1.0 / x.x1;
  EXPECT_THROW(epsilon2(in, x), InadmissibleError);
}

TEST(Admissibility, WeakThresholds) {
  const auto spec = fixtures::one_dim();
  for (long long L : {29, 70}) {
    const auto ad = check_admissibility(make_bound_inputs(spec, ten_l(L), classify(spec, {L}), 0.2));
    EXPECT_NEAR(ad.weak_L_threshold, 2.5 * std::pow(4.0, 2.2) / 2.0, 1e-12);
    EXPECT_NEAR(ad.weak_G_threshold, 4 * std::numbers::sqrt2 * L + 1.5, 1e-9);
    EXPECT_TRUE(ad.weak);
  }
  const auto ad21 = check_admissibility(make_bound_inputs(spec, ten_l(21), classify(spec, {21}), 0.2));
  EXPECT_FALSE(ad21.weak);

  const auto spec3 = fixtures::three_dim_a();
  const auto in3 = make_bound_inputs(spec3, two_lmax({7, 17, 7}), classify(spec3, {7, 17, 7}), 0.2);
  const auto ad3 = check_admissibility(in3);
  EXPECT_NEAR(ad3.weak_L_threshold, 2.5 * std::pow(2.0 * in3.N, 2.0 + in3.tau) / in3.C_a, 1e-12);
  EXPECT_NEAR(ad3.weak_G_threshold, 2.0 * 17 + 1.5, 1e-12);
  EXPECT_TRUE(ad3.weak);
}

TEST(Admissibility, RationalOnlyHasNoLCondition) {
  const auto spec = fixtures::rational_only();
  const auto grid = PeriodGrid::create({3, 4}, {30, 40}, 1);
  const auto ad = check_admissibility(make_bound_inputs(spec, grid, classify(spec, {3, 4}), 0.3));
  EXPECT_EQ(ad.weak_L_threshold, 0.0);
  EXPECT_TRUE(ad.weak);
  EXPECT_TRUE(ad.full);
  const auto small = PeriodGrid::create({3, 4}, {8, 8}, 1);
  EXPECT_FALSE(check_admissibility(make_bound_inputs(spec, small, classify(spec, {3, 4}), 0.3)).weak);
}

TEST(Admissibility, LargeNFailsBoth) {
  const auto spec = fixtures::one_dim();
  auto in = make_bound_inputs(spec, ten_l(70), classify(spec, {70}), 0.2);
  in.N = 50;
  const auto ad = check_admissibility(in);
  EXPECT_FALSE(ad.weak);
  EXPECT_FALSE(ad.full);
  EXPECT_FALSE(ad.details.empty());
}

TEST(Admissibility, FullImpliesWeak) {
  const auto spec = fixtures::one_dim();
  for (long long L : {29, 70, 169, 13860}) {
    const auto ad = check_admissibility(make_bound_inputs(spec, ten_l(L), classify(spec, {L}), 0.2));
    if (ad.full) {
      EXPECT_TRUE(ad.weak) << L;
    }
  }
  const auto ad = check_admissibility(make_bound_inputs(spec, ten_l(13860), classify(spec, {13860}), 0.2));
  EXPECT_TRUE(ad.full);
}

TEST(Truncation, Examples) {
  EXPECT_EQ(truncation_bound(8, 3, 1, 0.0), 0.0);
  EXPECT_NEAR(truncation_bound(16, 4, 1, 1.0), std::pow(16.0, -3), 1e-18);
  EXPECT_THROW(truncation_bound(2, 1, 1, 1.0), ValidationError);
  EXPECT_THROW(truncation_bound(2, 3, 0.4, 1.0), ValidationError);
}

TEST(ErrorChain, Ordering) {
  const struct {
    QuasiperiodicSpec spec;
    PeriodGrid grid;
  } cases[] = {
      {fixtures::one_dim(), ten_l(70)},
      {fixtures::one_dim(), ten_l(985)},
      {fixtures::three_dim_a(), two_lmax({15, 41, 15})},
      {fixtures::three_dim_b(), two_lmax({34, 99, 97})},
  };
  for (const auto& c : cases) {
    const auto a = analyze(c.spec, c.grid, reference_options());
    ASSERT_TRUE(a.report.eps0 && a.report.eps2);
    EXPECT_LT(*a.report.eps0, a.report.eps1);
    EXPECT_LT(a.report.eps1, *a.report.eps2);
  }
}

TEST(ErrorChain, IrrationalBlockNormBounds) {
  // U is the irrational block of M; its NWFT counterpart replaces every DFT
  // entry by the continuous transform.
  const struct {
    QuasiperiodicSpec spec;
    PeriodGrid grid;
  } cases[] = {
      {fixtures::one_dim(), ten_l(70)},
      {fixtures::one_dim(), ten_l(985)},
      {fixtures::three_dim_a(), two_lmax({97, 99, 97})},
      {fixtures::three_dim_b(), two_lmax({34, 99, 97})},
  };
  for (const auto& c : cases) {
    const auto a = analyze(c.spec, c.grid, no_sup());
    const auto& set = a.set;
    const int z = set.zeta;
    const int n = static_cast<int>(set.size()) - z;
    const WindowKernel k(c.grid.eta());
    ComplexMatrix U = a.system.M.block(z, z, n, n);
    ComplexMatrix W(n, n);
    for (int s = 0; s < n; ++s) {
      for (int t = 0; t < n; ++t) {
        std::vector<double> vt(set.dim()), hs(set.dim());
        for (int j = 0; j < set.dim(); ++j) {
          vt[j] = set.V(z + t, j);
          hs[j] = static_cast<double>(set.H(z + s, j));
        }
        W(s, t) = nwft_exponential(vt, hs, k);
      }
    }
    for (bool sharp : {false, true}) {
      const auto x = x_constants(a.inputs, sharp);
      EXPECT_LE(norm1(U - W), x.x3 + 1e-15);
      if (x.x1 * x.x2 < 1.0) {
        EXPECT_LE(norm1(W.inverse()), x.x1 / (1.0 - x.x1 * x.x2)) << (sharp ? "sharpened" : "generic");
      }
    }
  }
}
