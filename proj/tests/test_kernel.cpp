#include <nlperim/kernel.hpp>
#include <nlperim/kernel_checks.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"

using namespace nlp;

TEST(Norm, KoranyiClosedForm) {
  EXPECT_NEAR(koranyi_norm(Point{3.0, 4.0, 0.0}), 5.0, 1e-12);
  EXPECT_NEAR(koranyi_norm(Point{0.0, 0.0, 0.25}), 1.0, 1e-12);
  EXPECT_NEAR(koranyi_norm(Point{1.0, 0.0, 0.25}), std::pow(2.0, 0.25), 1e-12);
}

TEST(Norm, HomogeneousAndSymmetric) {
  Rng rng(3);
  for (auto [name, kind] : std::vector<std::pair<std::string, NormKind>>{
           {"H1", NormKind::koranyi}, {"H1", NormKind::box}, {"engel", NormKind::box}, {"R3", NormKind::euclidean}}) {
    auto g = groups::by_name(name);
    HomogeneousNorm n(g, kind);
    for (int t = 0; t < 100; ++t) {
      Point x(g.dim());
      for (int i = 0; i < g.dim(); ++i) x[i] = rng.uniform(-2.0, 2.0);
      double lam = rng.uniform(0.1, 5.0);
      EXPECT_NEAR(n(g.dilate(lam, x)), lam * n(x), 1e-9 * lam * n(x));
      EXPECT_NEAR(n(g.inverse(x)), n(x), 1e-12);
    }
    EXPECT_EQ(n(g.identity()), 0.0);
  }
}

TEST(Norm, WrongGroupRejected) {
  EXPECT_THROW(HomogeneousNorm(groups::euclidean(2), NormKind::koranyi), std::invalid_argument);
  EXPECT_THROW(HomogeneousNorm(groups::heisenberg(), NormKind::euclidean), std::invalid_argument);
  EXPECT_THROW(norm_kind_from("taxicab"), std::invalid_argument);
}

TEST(Norm, UnitBallVolumeMatchesMonteCarlo) {
  HomogeneousNorm n(groups::heisenberg(), NormKind::koranyi);
  Rng rng(5);
  Point hw = n.ball_halfwidths();
  const int N = 400000;
  int hits = 0;
  for (int i = 0; i < N; ++i) {
    Point z(3);
    for (int k = 0; k < 3; ++k) z[k] = rng.uniform(-hw[k], hw[k]);
    if (n(z) < 1.0) ++hits;
  }
  double box = 8.0 * hw[0] * hw[1] * hw[2];
  double p = static_cast<double>(hits) / N;
  double est = box * p, se = box * std::sqrt(p * (1 - p) / N);
  EXPECT_NEAR(est, std::numbers::pi * std::numbers::pi / 8.0, 4.0 * se);
  EXPECT_DOUBLE_EQ(n.sphere_constant(), 4.0 * n.unit_ball_volume());
}

TEST(Norm, QuasiTriangleConstantIsFinite) {
  HomogeneousNorm n(groups::heisenberg(), NormKind::koranyi);
  double c = n.quasi_triangle_constant(20000, 1);
  EXPECT_GE(c, 1.0);
  EXPECT_LT(c, 3.0);
}

namespace {
HomogeneousNorm line() { return HomogeneousNorm(groups::euclidean(1), NormKind::euclidean); }
HomogeneousNorm heis() { return HomogeneousNorm(groups::heisenberg(), NormKind::koranyi); }
}  // namespace

TEST(Kernel, FractionalProfileAndMetadata) {
  auto K = Kernel::fractional(heis(), 0.3);
  EXPECT_NEAR(K.profile(2.0), std::pow(2.0, -4.3), 1e-15);
  EXPECT_NEAR(K(Point{2.0, 0.0, 0.0}), std::pow(2.0, -4.3), 1e-15);
  EXPECT_DOUBLE_EQ(K.near_exponent(), 4.3);
  EXPECT_EQ(K.tail_kind(), TailKind::power);
  EXPECT_DOUBLE_EQ(K.tail_exponent(), 4.3);
  EXPECT_TRUE(K.is_fractional());
  EXPECT_FALSE(K.integrable_at_zero());
  EXPECT_THROW(Kernel::fractional(heis(), 1.5), std::invalid_argument);
  EXPECT_THROW(Kernel::fractional(heis(), 0.0), std::invalid_argument);
}

TEST(Kernel, RescaleIdentity) {
  auto K = Kernel::custom(heis(), 3.5, 6.0, 0.7, 2.0);
  Rng rng(13);
  for (double eps : {0.1, 0.5, 3.0}) {
    auto Ke = K.rescaled(eps);
    for (int t = 0; t < 20; ++t) {
      double r = std::exp(rng.uniform(-4.0, 3.0));
      EXPECT_NEAR(Ke.profile(r), std::pow(eps, -4.0) * K.profile(r / eps), 1e-12 * Ke.profile(r));
    }
    // ||K_eps||_1 = ||K||_1
    EXPECT_NEAR(Ke.l1_norm(), K.l1_norm(), 1e-10 * K.l1_norm());
  }
  // fractional: K_eps = eps^alpha K
  auto F = Kernel::fractional(line(), 0.4);
  EXPECT_NEAR(F.rescaled(0.25).profile(0.3), std::pow(0.25, 0.4) * F.profile(0.3), 1e-14);
}

TEST(Kernel, TruncationIsPointwiseMin) {
  auto K = Kernel::fractional(line(), 0.5);
  auto G = K.truncated();
  for (double r : {0.01, 0.5, 1.0, 2.0, 10.0}) EXPECT_DOUBLE_EQ(G.profile(r), std::min(K.profile(r), 1.0));
  // truncating twice changes nothing
  auto G2 = G.truncated();
  EXPECT_DOUBLE_EQ(G2.profile(0.2), G.profile(0.2));
  EXPECT_TRUE(G.integrable_at_zero());
  // ||G||_1 = 2 (1 + 2) for alpha = 1/2 on the line
  EXPECT_NEAR(G.l1_norm(), 6.0, 1e-12);
}

TEST(Kernel, RadialMomentsAgainstClosedForm) {
  const double h = 0.8, c = 1.3, pn = 3.2, pf = 5.5, eps = 0.6;
  auto K = Kernel::custom(heis(), pn, pf, c, h).rescaled(eps).truncated();
  // the truncation level is crossed on the far branch, at rk with C rk^-pf = 1
  double C = h * std::pow(c, pf - pn) * std::pow(eps, pf - 4.0);
  double rk = std::pow(C, 1.0 / pf);
  ASSERT_GT(rk, c * eps);
  EXPECT_NEAR(K.radial_moment(0.0, INFINITY, 0.0), std::pow(rk, 4) * (0.25 + 1.0 / (pf - 4.0)), 1e-13);
  EXPECT_NEAR(K.radial_moment(0.0, INFINITY, 1.0), std::pow(rk, 5) * (0.2 + 1.0 / (pf - 5.0)), 1e-13);
  auto f = [&K](double r) { return K.profile(r) * r * r * r; };
  double q = oracle::quad(f, 0.0, rk) + oracle::quad(f, rk, 10.0) + oracle::quad(f, 10.0, INFINITY);
  EXPECT_NEAR(K.radial_moment(0.0, INFINITY, 0.0), q, 1e-8);
  auto E = Kernel::exponential(heis(), 2.0);
  // int_0^inf 2 e^{-r} r^3 dr = 12
  EXPECT_NEAR(E.radial_moment(0.0, INFINITY, 0.0), 12.0, 1e-8);
}

TEST(Kernel, IntegrabilityClassification) {
  auto frac = Kernel::fractional(heis(), 0.5);
  EXPECT_TRUE(integrability_check(frac).convergent);
  auto near_bad = Kernel::custom(heis(), 5.2, 6.0);
  auto r1 = integrability_check(near_bad);
  EXPECT_FALSE(r1.convergent);
  EXPECT_TRUE(r1.divergent_near_zero);
  EXPECT_FALSE(r1.divergent_at_infinity);
  auto far_bad = Kernel::custom(heis(), 2.0, 3.5);
  auto r2 = integrability_check(far_bad);
  EXPECT_FALSE(r2.convergent);
  EXPECT_TRUE(r2.divergent_at_infinity);
  // shell-sum value agrees with the closed form int min(1, r) K
  auto bump = Kernel::compact_bump(heis(), 1.0, 1.0);
  auto r3 = integrability_check(bump);
  ASSERT_TRUE(r3.convergent);
  EXPECT_NEAR(r3.value.value, bump.min1_moment(), 1e-9);
  // 4 |B| int_0^1 r^4 dr
  EXPECT_NEAR(bump.min1_moment(), 4.0 * heis().unit_ball_volume() / 5.0, 1e-12);
}

TEST(Kernel, InfCappaLowerTail) {
  EXPECT_TRUE(infcappa_check(Kernel::fractional(heis(), 0.5)).pass);
  EXPECT_TRUE(infcappa_check(Kernel::custom(heis(), 4.5, 5.0)).pass);
  EXPECT_FALSE(infcappa_check(Kernel::custom(heis(), 4.5, 5.5)).pass);
  EXPECT_FALSE(infcappa_check(Kernel::compact_bump(heis())).pass);
  EXPECT_FALSE(infcappa_check(Kernel::exponential(heis())).pass);
  EXPECT_NEAR(infcappa_check(Kernel::fractional(heis(), 0.5)).value, 1.0, 1e-12);
}

TEST(Kernel, StrongIntegrability) {
  EXPECT_FALSE(strong_integrability(Kernel::fractional(heis(), 0.5)));
  EXPECT_TRUE(strong_integrability(Kernel::compact_bump(heis())));
  EXPECT_TRUE(strong_integrability(Kernel::custom(heis(), 2.0, 6.0)));
}
