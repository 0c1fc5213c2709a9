#include <nlperim/coarea.hpp>

#include <gtest/gtest.h>

#include <set>

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

TEST(Coarea, TwoLevelFieldOnTheLine) {
  const double a = 0.5;
  auto K = Kernel::fractional(line(), a);
  auto u = fields::multilevel({0.5, 0.5}, {interval(0, 1), interval(0, 2)});
  auto r = coarea_check(K, u, interval(-1, 3), mc(300000, 0.5));
  EXPECT_TRUE(r.exact_in_t);
  ASSERT_EQ(r.t.size(), 2u);
  // layer cake: both level sets lie inside Omega, so P(E_t; Omega) is the full interval perimeter
  double ref = 0.5 * oracle::perimeter_interval(a, 1.0) + 0.5 * oracle::perimeter_interval(a, 2.0);
  EXPECT_TRUE(within_sigma(r.lhs, ref, 4.0)) << r.lhs.value << " vs " << ref;
  EXPECT_TRUE(within_sigma(r.rhs, ref, 4.0)) << r.rhs.value << " vs " << ref;
  EXPECT_TRUE(r.pass);
}

TEST(Coarea, ClampedLinearUsesGaussRule) {
  auto g = groups::euclidean(1);
  auto K = Kernel::fractional(line(), 0.5);
  auto u = fields::clamped_linear(g, HorizontalVector{1.0}, -0.5, 1.0);
  auto r = coarea_check(K, u, interval(-1, 1), mc(100000, 0.5));
  EXPECT_FALSE(r.exact_in_t);
  EXPECT_EQ(r.t.size(), 16u);
  double w = 0.0;
  for (double x : r.weights) w += x;
  EXPECT_NEAR(w, 1.0, 1e-12);
  EXPECT_TRUE(r.pass) << r.lhs.value << " vs " << r.rhs.value;
  EXPECT_THROW(coarea_check(K, u, interval(-1, 1), mc(1000), TRule::exact), std::invalid_argument);
}

TEST(Coarea, HeisenbergThreeLevelField) {
  auto K = Kernel::fractional(heis(), 0.5);
  auto B = regions::unit_ball(heis());
  auto u = fields::multilevel({0.25, 0.25, 0.5}, {regions::ball(heis(), Point{0.0, 0.0, 0.0}, 0.9),
                                                   regions::ball(heis(), Point{0.1, 0.0, 0.0}, 0.5),
                                                   regions::halfspace(groups::heisenberg(), HorizontalVector{0.0, 1.0})});
  auto r = coarea_check(K, u, B, mc(100000));
  EXPECT_TRUE(r.pass) << r.lhs.value << " +- " << r.lhs.std_error << " vs " << r.rhs.value << " +- " << r.rhs.std_error;
}

TEST(Coarea, LevelSelectionFindsCheaperSet) {
  auto K = Kernel::fractional(line(), 0.5);
  auto v = fields::multilevel({0.3, 0.4}, {interval(-0.5, 0.5), interval(-0.2, 0.2)});
  auto r = level_selection(K, v, interval(-1, 1), mc(50000, 0.5));
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.perimeter.value, r.J.value + 3.0 * combined_sigma(r.perimeter, r.J));
  EXPECT_GE(r.grid.size(), 64u);
}

TEST(Competitors, RespectOuterDatumAndAreDeterministic) {
  auto g = groups::heisenberg();
  CompetitorSpec spec{regions::halfspace(g, HorizontalVector{1.0, 0.0}), regions::unit_ball(heis())};
  spec.seed = 17;
  auto a = generate_competitors(spec, 12), b = generate_competitors(spec, 12);
  ASSERT_EQ(a.size(), 12u);
  std::set<std::string> kinds;
  Rng rng(5);
  std::vector<Point> probes;
  for (int i = 0; i < 200; ++i) probes.push_back(Point{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-0.3, 0.3)});
  for (std::size_t i = 0; i < a.size(); ++i) {
    kinds.insert(a[i].kind);
    EXPECT_EQ(outer_datum_violations(a[i].v, spec.E0, spec.omega), 0u) << a[i].kind;
    EXPECT_EQ(a[i].kind, b[i].kind);
    EXPECT_EQ(a[i].parameter, b[i].parameter);
    for (const auto& p : probes) ASSERT_EQ(a[i].v(p), b[i].v(p));
  }
  EXPECT_EQ(kinds.size(), 4u);
  // an unmasked halfspace shift does change the datum outside Omega
  auto shifted = fields::indicator(regions::halfspace(g, HorizontalVector{1.0, 0.0}, 0.3));
  EXPECT_GT(outer_datum_violations(shifted, spec.E0, spec.omega), 0u);
}

TEST(Competitors, HalflineIsMinimalOnTheLine) {
  auto g = groups::euclidean(1);
  auto K = Kernel::fractional(line(), 0.5);
  auto H = regions::halfspace(g, HorizontalVector{1.0});
  CompetitorSpec spec{H, interval(-1, 1)};
  auto comps = generate_competitors(spec, 8);
  auto rep = minimality_experiment(K, H, interval(-1, 1), comps, mc(50000, 0.5), 0);
  EXPECT_EQ(rep.violations, 0);
  EXPECT_TRUE(rep.pass);
  ASSERT_EQ(rep.rows.size(), 8u);
  for (const auto& r : rep.rows) {
    // on the line every halfline with boundary in Omega has perimeter 2^(1-a) / (a (1-a))
    if (r.kind == "translated-halfspace") EXPECT_LE(std::abs(r.gap.value), 4.0 * r.gap.std_error) << r.id;
    if (r.kind == "voxel-flip" && r.symdiff > 0.3) EXPECT_GT(r.gap.value, 0.0) << r.id;
  }
  EXPECT_NE(rep.csv().find("competitor_id,J_value,J_stderr,gap,symdiff,flags"), std::string::npos);
}
