#include "qpa/fixtures.hpp"

#include <cmath>
#include <numbers>

#include "qpa/errors.hpp"

namespace qpa::fixtures {

namespace {

const double kS2 = std::numbers::sqrt2;
const double kS3 = std::numbers::sqrt3;
const double kS5 = std::sqrt(5.0);

}  // namespace

QuasiperiodicSpec one_dim() {
  RealMatrix P(1, 2);
  P << 1.0, kS2;
  return QuasiperiodicSpec::create(P, {{1, 0}, {0, 1}, {2, 1}, {1, 2}},
                                   {{0.02, -0.2}, {0.1, 0.0}, {0.03, 0.1}, {0.02, 0.0}}, 2,
                                   {2.0, 0.2});
}

QuasiperiodicSpec three_dim_a() {
  RealMatrix P = RealMatrix::Zero(3, 4);
  P(0, 0) = 1.0;
  P(0, 3) = kS3 / 2;
  P(1, 1) = kS2 / 2;
  P(2, 2) = kS3 / 2;
  return QuasiperiodicSpec::create(P, {{1, 0, 1, 0}, {0, 1, 0, 1}}, {{0.2, 0.1}, {0.1, 0.2}}, 1,
                                   {2.0, 0.1});
}

QuasiperiodicSpec three_dim_b() {
  RealMatrix P = RealMatrix::Zero(3, 4);
  P(0, 0) = 1.0;
  P(0, 3) = kS5 / 4;
  P(1, 1) = kS2 / 2;
  P(2, 2) = kS3 / 2;
  return QuasiperiodicSpec::create(P, {{1, 0, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 1}},
                                   {{0.2, 0.1}, {0.1, 0.2}, {0.02, -0.02}}, 1, {2.0, 0.2});
}

QuasiperiodicSpec rational_only() {
  RealMatrix P = RealMatrix::Identity(2, 2);
  return QuasiperiodicSpec::create(P, {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {-1, 1}},
                                   {{0.3, 0.0}, {0.1, -0.2}, {0.05, 0.05}, {-0.02, 0.01}, {0.0, 0.07}}, 1,
                                   {1.0, 0.5});
}

std::vector<ReferenceTable> reference_tables(const std::string& which) {
  if (which == "t1") {
    return {{"1-D",
             one_dim(),
             GridRule::TenL,
             0.02,
             {
                 {{29}, 4.8773e-02, 2.7689e-02, 9.2404e-02, 3.2843e-01},
                 {{70}, 2.0203e-02, 1.1549e-02, 3.8271e-02, 1.2979e-01},
                 {{169}, 8.3682e-03, 4.7935e-03, 1.5852e-02, 5.3200e-02},
                 {{408}, 3.4662e-03, 1.9877e-03, 6.5662e-03, 2.1948e-02},
                 {{985}, 1.4357e-03, 8.2512e-04, 2.7198e-03, 9.0765e-03},
                 {{2378}, 5.9471e-04, 3.4217e-04, 1.1266e-03, 3.7571e-03},
                 {{5741}, 2.4634e-04, 1.4180e-04, 4.6665e-04, 1.5558e-03},
                 {{13860}, 1.0201e-04, 5.8747e-05, 1.9329e-04, 6.4436e-04},
             }}};
  }
  if (which == "t2") {
    return {{"3-D a",
             three_dim_a(),
             GridRule::TwoLmaxPlus10,
             0.05,
             {
                 {{7, 17, 7}, 1.4517e-01, 2.9179e-01, 3.0510e-01, 7.3318e-01},
                 {{15, 41, 15}, 2.7860e-02, 5.7767e-02, 5.8709e-02, 1.2095e-01},
                 {{97, 99, 97}, 1.2500e-02, 2.6158e-02, 2.6342e-02, 5.3508e-02},
                 {{209, 239, 209}, 2.8605e-03, 6.0135e-03, 6.0284e-03, 1.2147e-02},
             }},
            {"3-D b",
             three_dim_b(),
             GridRule::TwoLmaxPlus10,
             0.05,
             {
                 {{25, 41, 15}, 5.2435e-02, 4.6980e-02, 1.1050e-01, 3.1908e-01},
                 {{34, 99, 97}, 1.9077e-02, 1.9775e-02, 4.0205e-02, 1.0976e-01},
                 {{127, 99, 209}, 9.7943e-03, 6.0208e-03, 1.9171e-02, 5.6053e-02},
             }}};
  }
  throw ValidationError("unknown table '" + which + "' (expected t1 or t2)");
}

}  // namespace qpa::fixtures
