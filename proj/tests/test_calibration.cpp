#include <nlperim/calibration.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace nlp;

namespace {

HomogeneousNorm line() { return {groups::euclidean(1), NormKind::euclidean}; }
HomogeneousNorm heis() { return {groups::heisenberg(), NormKind::koranyi}; }
Region interval(double a, double b) { return regions::coordinate_box(groups::euclidean(1), Box{Point{a}, Point{b}}); }

McConfig mc(std::uint64_t n, double core = 0.05) {
  McConfig c;
  c.samples = n;
  c.core_radius = core;
  return c;
}

}  // namespace

TEST(Calibration, HalfspaceZetaIsAntisymmetric) {
  auto g = groups::heisenberg();
  auto z = zeta_halfspace(g, HorizontalVector{0.6, 0.8});
  EXPECT_TRUE(z.antisymmetric);
  Rng rng(4);
  for (int i = 0; i < 1000; ++i) {
    Point p{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    Point q{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    EXPECT_EQ(z(p, q), -z(q, p));
  }
  EXPECT_THROW(zeta_halfspace(g, HorizontalVector{0.0, 0.0}), std::invalid_argument);
}

TEST(Calibration, IdentityHoldsForHalfspaceIndicator) {
  auto g = groups::heisenberg();
  HorizontalVector nu{1.0, 0.0};
  Box W{Point{-1.0, -1.0, -1.0}, Point{1.0, 1.0, 1.0}};
  auto r = calibration_identity_check(zeta_halfspace(g, nu), fields::indicator(regions::halfspace(g, nu)), W, mc(100000));
  EXPECT_EQ(r.pairs, 100000u);
  EXPECT_GT(r.tested, 40000u);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_TRUE(r.pass);
  // a constant pair field is not a calibration
  PairField one{[](const Point&, const Point&) { return 1.0; }, false, "one"};
  auto bad = calibration_identity_check(one, fields::indicator(regions::halfspace(g, nu)), W, mc(20000));
  EXPECT_FALSE(bad.pass);
  EXPECT_NEAR(bad.fraction, 0.5, 0.02);
}

TEST(Calibration, PrincipalValueTableVanishes) {
  auto g = groups::heisenberg();
  auto K = Kernel::fractional(heis(), 0.5);
  auto rep = calibration_pv_check(K, zeta_halfspace(g, HorizontalVector{1.0, 0.0}), regions::unit_ball(heis()),
                                  {0.1, 0.05, 0.025}, mc(64 * 4096), 8);
  ASSERT_EQ(rep.rows.size(), 3u);
  for (const auto& r : rep.rows) EXPECT_EQ(r.l1, 0.0);
  EXPECT_TRUE(rep.pass);
}

TEST(Calibration, NonAntisymmetricFieldIsFlagged) {
  auto g = groups::euclidean(1);
  auto K = Kernel::fractional(line(), 0.5);
  auto z = zeta_halfspace(g, HorizontalVector{1.0});
  PairField skew{[z](const Point& p, const Point& q) { return z(p, q) + 0.5 * (q[0] > 0.0 ? 1.0 : 0.0); }, false, "skew"};
  auto rep = calibration_pv_check(K, skew, interval(-1, 1), {0.1, 0.05, 0.025}, mc(16 * 4096), 8);
  EXPECT_FALSE(rep.pass);
  EXPECT_GT(rep.rows.back().l1, 0.0);
}

TEST(Calibration, FoliationOfHalflineByTranslates) {
  auto g = groups::euclidean(1);
  auto K = Kernel::fractional(line(), 0.5);
  auto E = regions::halfspace(g, HorizontalVector{1.0});
  auto rep = foliation_check(K, linear_phi(g, HorizontalVector{1.0}), E, interval(-1, 1), mc(24 * 4096), 12);
  EXPECT_TRUE(rep.level_set);
  EXPECT_TRUE(rep.stable);
  EXPECT_TRUE(rep.signs);
  EXPECT_EQ(rep.max_curvature, 0.0);
  // phi with the wrong zero set
  auto shifted = foliation_check(K, linear_phi(g, HorizontalVector{1.0}, 0.5), E, interval(-1, 1), mc(24 * 4096), 12);
  EXPECT_FALSE(shifted.level_set);
}

TEST(Calibration, FunctionalEqualsPerimeterOnE) {
  auto g = groups::euclidean(1);
  const double a = 0.5;
  auto K = Kernel::fractional(line(), a);
  auto E = regions::halfspace(g, HorizontalVector{1.0});
  auto C = calibrating_functional(K, linear_phi(g, HorizontalVector{1.0}), E, interval(-1, 1), E, mc(400000, 0.5));
  EXPECT_TRUE(within_sigma(C, oracle::perimeter_halfline(a), 4.0)) << C.value << " +- " << C.std_error;
}

TEST(Calibration, OuterDatumMismatchIsRejected) {
  auto g = groups::euclidean(1);
  auto K = Kernel::fractional(line(), 0.5);
  auto E = regions::halfspace(g, HorizontalVector{1.0});
  auto F = regions::halfspace(g, HorizontalVector{1.0}, 2.0);
  try {
    calibrating_functional(K, linear_phi(g, HorizontalVector{1.0}), E, interval(-1, 1), F, mc(1000));
    FAIL() << "expected an exception";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("outer datum mismatch"), std::string::npos);
  }
}

TEST(Calibration, CurvatureIdentityForNotchedCompetitor) {
  auto g = groups::euclidean(1);
  auto K = Kernel::fractional(line(), 0.5);
  auto E = regions::halfspace(g, HorizontalVector{1.0});
  auto F = regions::unite(E, interval(-0.5, -0.25));
  auto r = curvature_identity_check(K, linear_phi(g, HorizontalVector{1.0}), E, interval(-1, 1), F, mc(400000, 0.5));
  EXPECT_TRUE(r.pass) << r.lhs.value << " vs " << r.rhs.value;
  EXPECT_GT(r.lhs.std_error, 0.0);
}
