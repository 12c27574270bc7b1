#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "qpa/core.hpp"
#include "qpa/errors.hpp"
#include "qpa/fixtures.hpp"

using namespace qpa;

namespace {

const double kS2 = std::numbers::sqrt2;
const double kS3 = std::numbers::sqrt3;

}  // namespace

TEST(BuildExponents, OneDimensionalProjection) {
  const auto lam = build_exponents(fixtures::one_dim());
  ASSERT_EQ(lam.size(), 4u);
  EXPECT_DOUBLE_EQ(lam[0][0], 1.0);
  EXPECT_DOUBLE_EQ(lam[1][0], kS2);
  EXPECT_DOUBLE_EQ(lam[2][0], 2.0 + kS2);
  EXPECT_DOUBLE_EQ(lam[3][0], 1.0 + 2.0 * kS2);
}

TEST(BuildExponents, ZeroLatticeVector) {
  const auto lam = build_exponents(RealMatrix::Identity(2, 2), {{0, 0}});
  EXPECT_EQ(lam[0], (std::vector<double>{0.0, 0.0}));
}

TEST(BuildExponents, ThreeDimensionalColumns) {
  const auto lam = build_exponents(fixtures::three_dim_a());
  EXPECT_DOUBLE_EQ(lam[0][0], 1.0);
  EXPECT_DOUBLE_EQ(lam[0][1], 0.0);
  EXPECT_DOUBLE_EQ(lam[0][2], kS3 / 2);
  EXPECT_DOUBLE_EQ(lam[1][0], kS3 / 2);
  EXPECT_DOUBLE_EQ(lam[1][1], kS2 / 2);
  EXPECT_DOUBLE_EQ(lam[1][2], 0.0);
}

TEST(BuildExponents, RejectsCoincidingExponents) {
  RealMatrix P(1, 2);
  P << 1.0, 2.0;
  EXPECT_THROW(build_exponents(P, {{2, 0}, {0, 1}}), ValidationError);
  EXPECT_THROW(QuasiperiodicSpec::create(P, {{2, 0}, {0, 1}}, {1.0, 1.0}, 2, {1.0, 0.1}), ValidationError);
}

TEST(QuasiperiodicSpec, Validation) {
  RealMatrix P(1, 2);
  P << 1.0, kS2;
  EXPECT_THROW(QuasiperiodicSpec::create(P, {{3, 0}}, {1.0}, 2, {1.0, 0.1}), ValidationError);
  EXPECT_THROW(QuasiperiodicSpec::create(P, {{1, 0}}, {1.0, 2.0}, 2, {1.0, 0.1}), ValidationError);
  EXPECT_THROW(QuasiperiodicSpec::create(P, {{1, 0}}, {1.0}, 2, {0.0, 0.1}), ValidationError);
  EXPECT_THROW(QuasiperiodicSpec::create(P, {{1}}, {1.0}, 2, {1.0, 0.1}), ValidationError);
  RealMatrix bad(1, 2);
  bad << 1.0, std::nan("");
  EXPECT_THROW(QuasiperiodicSpec::create(bad, {{1, 0}}, {1.0}, 2, {1.0, 0.1}), ValidationError);
  RealMatrix tall(2, 1);
  tall << 1.0, 2.0;
  EXPECT_THROW(QuasiperiodicSpec::create(tall, {{1}}, {1.0}, 2, {1.0, 0.1}), ValidationError);
  EXPECT_NEAR(fixtures::one_dim().P_norm1(), kS2, 1e-15);
}

TEST(PeriodGrid, Validation) {
  EXPECT_THROW(PeriodGrid::create({10}, {51}, 1), GridError);
  EXPECT_THROW(PeriodGrid::create({10}, {2}, 1), GridError);
  EXPECT_THROW(PeriodGrid::create({0}, {10}, 1), ValidationError);
  EXPECT_THROW(PeriodGrid::create({10}, {10}, 0), ValidationError);
  EXPECT_THROW(PeriodGrid::create({10, 2}, {10}, 1), ValidationError);
  const auto g = PeriodGrid::create({7, 17, 7}, {44, 46, 48}, 1);
  EXPECT_EQ(g.L_min(), 7);
  EXPECT_EQ(g.L_max(), 17);
  EXPECT_EQ(g.G_min(), 44);
}

TEST(PeriodGrid, Rules) {
  EXPECT_EQ(grid_from_rule(GridRule::TenL, {29}), (std::vector<long long>{290}));
  EXPECT_EQ(grid_from_rule(GridRule::TwoLmaxPlus10, {7, 17, 7}), (std::vector<long long>{44, 44, 44}));
}

TEST(Classify, PellExponentsAtLargeL) {
  const auto set = classify(fixtures::one_dim(), {13860});
  EXPECT_EQ(set.zeta, 1);
  std::vector<long long> h(4);
  for (std::size_t i = 0; i < 4; ++i) h[set.order[i]] = set.H(static_cast<Eigen::Index>(i), 0);
  EXPECT_EQ(h, (std::vector<long long>{13860, 19601, 47321, 53062}));
  EXPECT_EQ(set.d_m, 0);
  EXPECT_EQ(set.d_M, 0);
}

TEST(Classify, RationalOnlyInput) {
  const auto set = classify(fixtures::rational_only(), {3, 4});
  EXPECT_EQ(set.zeta, static_cast<int>(set.size()));
  EXPECT_EQ(set.deltaV.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(set.s_per_dim, (std::vector<int>{0, 0}));
}

TEST(Classify, ThreeDimensionalCounts) {
  const auto b = classify(fixtures::three_dim_b(), {25, 41, 15});
  EXPECT_EQ(b.zeta, 1);
  EXPECT_EQ(b.d_m, 1);
  EXPECT_EQ(b.d_M, 1);
  EXPECT_EQ(b.alpha(1, 2), 1);

  const auto a = classify(fixtures::three_dim_a(), {7, 17, 7});
  EXPECT_EQ(a.zeta, 0);
  EXPECT_EQ(a.d_m, 1);
  EXPECT_EQ(a.d_M, 0);
  EXPECT_EQ(a.r, (std::vector<int>{2, 1}));
}

TEST(Classify, ResidualInvariants) {
  for (long long L : {29, 70, 169, 408, 985}) {
    const auto set = classify(fixtures::one_dim(), {L});
    for (Eigen::Index s = 0; s < static_cast<Eigen::Index>(set.size()); ++s) {
      for (int j = 0; j < set.dim(); ++j) {
        EXPECT_EQ(set.H(s, j), std::llround(set.V(s, j)));
        EXPECT_LT(std::abs(set.deltaV(s, j)), 0.5);
        EXPECT_DOUBLE_EQ(set.deltaV(s, j), set.is_integer(s, j) ? 0.0 : set.H(s, j) - set.V(s, j));
      }
      if (s < set.zeta) {
        EXPECT_EQ(set.deltaV.row(s).cwiseAbs().maxCoeff(), 0.0);
      }
    }
  }
}

TEST(Classify, PermutationInvariance) {
  const auto base = fixtures::three_dim_b();
  std::vector<std::size_t> perm{2, 0, 1};
  std::vector<std::vector<long long>> lattice;
  std::vector<cplx> coeffs;
  for (auto p : perm) {
    lattice.push_back(base.lattice()[p]);
    coeffs.push_back(base.coefficients()[p]);
  }
  const auto shuffled = QuasiperiodicSpec::create(base.P(), lattice, coeffs, base.N(), base.diophantine());
  const auto s0 = classify(base, {34, 99, 97});
  const auto s1 = classify(shuffled, {34, 99, 97});
  EXPECT_EQ(s0.zeta, s1.zeta);
  EXPECT_EQ(s0.d_m, s1.d_m);
  EXPECT_EQ(s0.d_M, s1.d_M);
  EXPECT_EQ(s0.s_per_dim, s1.s_per_dim);
  // Same exponent ends up at the same input lattice vector.
  for (std::size_t i = 0; i < s0.size(); ++i) {
    for (std::size_t k = 0; k < s1.size(); ++k) {
      if (lattice[s1.order[k]] == base.lattice()[s0.order[i]]) {
        EXPECT_EQ(s0.H.row(static_cast<Eigen::Index>(i)), s1.H.row(static_cast<Eigen::Index>(k)));
      }
    }
  }
}

TEST(Classify, DistinctIrrationalValuesModuloOne) {
  // 29 sqrt2 and 58 + 29 sqrt2 agree modulo 1; 29 + 58 sqrt2 differs.
  const auto set = classify(fixtures::one_dim(), {29});
  EXPECT_EQ(set.s_per_dim, (std::vector<int>{2}));
  ClassifyOptions opt;
  opt.s_override = std::vector<int>{1};
  EXPECT_EQ(classify(fixtures::one_dim(), {29}, opt).s_per_dim, (std::vector<int>{1}));
}

TEST(Classify, RationalMarks) {
  RealMatrix P(1, 2);
  P << 0.5, kS2;
  const auto plain = QuasiperiodicSpec::create(P, {{1, 0}, {0, 1}}, {1.0, 1.0}, 1, {1.0, 0.1});
  const auto marked =
      QuasiperiodicSpec::create(P, {{1, 0}, {0, 1}}, {1.0, 1.0}, 1, {1.0, 0.1}, {{0, 0, 1, 2}});
  for (long long L : {2, 3, 10, 11}) {
    EXPECT_GE(classify(marked, {L}).zeta, classify(plain, {L}).zeta);
  }
  EXPECT_EQ(classify(marked, {4}).zeta, 1);
  const auto odd = classify(marked, {3});
  EXPECT_EQ(odd.zeta, 0);
  EXPECT_FALSE(odd.notes.empty());
  EXPECT_THROW(QuasiperiodicSpec::create(P, {{1, 0}, {0, 1}}, {1.0, 1.0}, 1, {1.0, 0.1}, {{0, 0, 1, 3}}),
               ValidationError);
}

TEST(Classify, HalfIntegerTiesRoundAwayFromZero) {
  RealMatrix P(1, 1);
  P << 0.5;
  const auto spec = QuasiperiodicSpec::create(P, {{1}, {-1}}, {1.0, 1.0}, 1, {1.0, 0.1});
  const auto set = classify(spec, {1});
  EXPECT_EQ(set.H(set.order[0] == 0 ? 0 : 1, 0), 1);
  EXPECT_EQ(set.H(set.order[0] == 0 ? 1 : 0, 0), -1);
  EXPECT_EQ(set.notes.size(), 2u);
}

TEST(Classify, CoefficientReordering) {
  const auto spec = fixtures::three_dim_b();
  const auto set = classify(spec, {25, 41, 15});
  const auto y = set.to_internal(spec.coefficients());
  EXPECT_EQ(set.to_input_order(y), spec.coefficients());
}
