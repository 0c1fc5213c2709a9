#pragma once
// Coarea formula, level selection, competitor generation and the minimality experiment.

#include "calibration.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <numbers>
#include <string>
#include <vector>

namespace nlp {

enum class TRule { automatic, exact, gauss };

struct CoareaReport {
  Estimate lhs;  // J_K(u; Omega)
  Estimate rhs;  // int_0^1 P_K(E_t; Omega) dt
  std::vector<double> t;
  std::vector<double> weights;
  std::vector<Estimate> perimeters;
  bool exact_in_t = false;
  bool pass = false;
};

// J_K(u; Omega) = int_0^1 P_K({u > t}; Omega) dt.
inline CoareaReport coarea_check(const Kernel& K, const ScalarField& u, const Region& omega, const McConfig& cfg,
                                 TRule rule = TRule::automatic) {
  CoareaReport r;
  r.lhs = j_functional(K, u, omega, cfg, streams::coarea).J;
  auto levels = u.levels();
  if (rule == TRule::exact && !levels) throw std::invalid_argument("coarea_check: exact t-rule needs a piecewise-constant field");
  bool exact = rule == TRule::exact || (rule == TRule::automatic && levels);
  r.exact_in_t = exact;
  if (exact) {
    // P(E_t) is constant between consecutive levels.
    std::vector<double> b{0.0, 1.0};
    for (double l : *levels)
      if (l > 0.0 && l < 1.0) b.push_back(l);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
      r.t.push_back(0.5 * (b[i] + b[i + 1]));
      r.weights.push_back(b[i + 1] - b[i]);
    }
  } else {
    using GL = boost::math::quadrature::gauss<double, 16>;
    for (std::size_t i = 0; i < GL::abscissa().size(); ++i) {
      double a = GL::abscissa()[i], w = GL::weights()[i];
      for (double s : {-a, a}) {
        if (a == 0.0 && s < 0.0) continue;
        r.t.push_back(0.5 * (s + 1.0));
        r.weights.push_back(0.5 * w);
      }
    }
  }
  double value = 0.0, var = 0.0;
  for (std::size_t i = 0; i < r.t.size(); ++i) {
    Estimate p = nonlocal_perimeter(K, level_set(u, r.t[i]), omega, cfg, streams::coarea + 0x100 + i);
    r.perimeters.push_back(p);
    value += r.weights[i] * p.value;
    var += r.weights[i] * r.weights[i] * p.std_error * p.std_error;
    r.rhs.tail_correction += r.weights[i] * p.tail_correction;
  }
  r.rhs.value = value;
  r.rhs.std_error = std::sqrt(var);
  r.rhs.samples = cfg.samples * r.t.size();
  r.pass = std::abs(r.lhs.value - r.rhs.value) <= 3.0 * combined_sigma(r.lhs, r.rhs) + 1e-12;
  return r;
}

struct LevelSelection {
  double t = 0.0;
  Estimate perimeter;  // J_K(chi_{E_t}; Omega)
  Estimate J;          // J_K(v; Omega)
  std::vector<double> grid;
  std::vector<Estimate> values;
  bool pass = false;
};

// Picks t with J_K(chi_{E_t}; Omega) <= J_K(v; Omega) on 64 uniform levels plus the levels of v.
inline LevelSelection level_selection(const Kernel& K, const ScalarField& v, const Region& omega, const McConfig& cfg) {
  LevelSelection r;
  r.J = j_functional(K, v, omega, cfg, streams::coarea + 1).J;
  std::vector<double> grid;
  for (int i = 0; i < 64; ++i) grid.push_back(i / 64.0);
  auto levels = v.levels();
  if (levels)
    for (double l : *levels)
      if (l >= 0.0 && l < 1.0) grid.push_back(l);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  r.grid = grid;
  std::optional<std::size_t> best;
  std::size_t cached = grid.size();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    // For piecewise-constant v, E_t only changes when t crosses a level.
    bool same = false;
    if (levels && i > 0) {
      same = true;
      for (double l : *levels)
        if (l >= grid[i - 1] && l < grid[i]) same = false;
    }
    if (same && cached < r.values.size()) {
      r.values.push_back(r.values[cached]);
    } else {
      r.values.push_back(nonlocal_perimeter(K, level_set(v, grid[i]), omega, cfg, streams::coarea + 0x200 + i));
      cached = r.values.size() - 1;
    }
    if (!best || r.values.back().value < r.values[*best].value) best = i;
  }
  r.t = grid[*best];
  r.perimeter = r.values[*best];
  r.pass = one_sided(r.perimeter, r.J);
  return r;
}

// ---------------------------------------------------------------------------
// Competitors under an outer datum.

struct CompetitorSpec {
  Region E0;
  Region omega;
  double flip_density = 0.15;
  int grid = 8;                 // voxel cells per axis over the bounding box of Omega
  double margin = 0.1;          // flips only inside an inset of Omega
  double shift_min = 0.2, shift_max = 0.5;
  double tilt_max = 0.6;        // radians
  std::uint64_t seed = 1;
};

struct Competitor {
  ScalarField v;
  std::string kind;
  double parameter = 0.0;
};

namespace detail {

inline Region inset(const Region& omega, double margin) {
  if (margin <= 0.0) return omega;
  if (auto* b = dynamic_cast<const regions::detail::Ball*>(&omega.node()))
    if (b->radius > margin) return regions::ball(b->norm, b->center, b->radius - margin);
  if (auto* b = dynamic_cast<const regions::detail::CoordBox*>(&omega.node())) {
    Box s = b->box.expanded(-margin);
    for (int i = 0; i < s.dim(); ++i)
      if (s.hi[i] < s.lo[i]) return regions::empty(omega.group());
    return regions::coordinate_box(omega.group(), s);
  }
  return omega;
}

inline ScalarField voxel_flip(const CompetitorSpec& spec, Rng& rng, double density) {
  const auto& G = spec.E0.group();
  Box box = *spec.omega.bbox();
  std::vector<int> dims(static_cast<std::size_t>(G.dim()), spec.grid);
  auto mask = std::make_shared<VoxelMask>(dims, box);
  for (std::size_t c = 0; c < mask->cells(); ++c) mask->set(c, rng.uniform() < density);
  Region zone = inset(spec.omega, spec.margin);
  Region E0 = spec.E0;
  auto f = fields::function(
      G, [mask, zone, E0](const Point& x) { return (E0.contains(x) != (zone.contains(x) && mask->contains(x))) ? 1.0 : 0.0; },
      std::nullopt, "voxel-flip");
  return fields::masked(f, spec.omega, spec.E0);
}

inline ScalarField masked_indicator(const CompetitorSpec& spec, const Region& A) {
  return fields::masked(fields::indicator(A), spec.omega, spec.E0);
}

}  // namespace detail

// Fields v with v = chi_{E0} outside Omega; kinds cycle through voxel flips, translated
// and tilted halfspaces (when E0 is a halfspace) and two-level mixtures.
inline std::vector<Competitor> generate_competitors(const CompetitorSpec& spec, int count) {
  if (!spec.omega.bbox()) throw std::invalid_argument("generate_competitors: Omega must be bounded");
  const auto& G = spec.E0.group();
  auto* hs = dynamic_cast<const regions::detail::Halfspace*>(&spec.E0.node());
  std::vector<Competitor> out;
  for (int i = 0; i < count; ++i) {
    Rng rng(derive_seed(spec.seed, streams::minimality, static_cast<std::uint64_t>(i)));
    int kind = i % 4;
    if (!hs && (kind == 1 || kind == 2)) kind = 0;
    Competitor c;
    switch (kind) {
      case 0:
        c.parameter = spec.flip_density;
        c.v = detail::voxel_flip(spec, rng, spec.flip_density);
        c.kind = "voxel-flip";
        break;
      case 1: {
        double d = rng.uniform(spec.shift_min, spec.shift_max) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
        c.parameter = d;
        c.v = detail::masked_indicator(spec, regions::halfspace(G, hs->nu, hs->offset + d * hs->nu.norm()));
        c.kind = "translated-halfspace";
        break;
      }
      case 2: {
        double th = rng.uniform(0.2, 1.0) * spec.tilt_max * (rng.uniform() < 0.5 ? -1.0 : 1.0);
        HorizontalVector nu = hs->nu;
        // rotate within the plane of the first two horizontal directions
        if (nu.size() >= 2) {
          double a = nu[0], b = nu[1];
          nu[0] = std::cos(th) * a - std::sin(th) * b;
          nu[1] = std::sin(th) * a + std::cos(th) * b;
        }
        c.parameter = th;
        c.v = detail::masked_indicator(spec, regions::halfspace(G, nu, hs->offset));
        c.kind = "tilted-halfspace";
        break;
      }
      default: {
        double w = rng.uniform(0.3, 0.7);
        auto flip = detail::voxel_flip(spec, rng, spec.flip_density);
        c.parameter = w;
        c.v = fields::masked(fields::mixture(fields::indicator(spec.E0), flip, w), spec.omega, spec.E0);
        c.kind = "graded-mixture";
        break;
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

// Counts points of a neighbourhood of Omega, outside Omega, where v differs from chi_{E0}.
inline std::uint64_t outer_datum_violations(const ScalarField& v, const Region& E0, const Region& omega,
                                            std::uint64_t samples = 10000, std::uint64_t seed = 7) {
  Box box = omega.bbox()->expanded(0.5);
  Rng rng(derive_seed(seed, 0x0d48, 0));
  std::uint64_t bad = 0, seen = 0;
  while (seen < samples) {
    Point x = box.sample(rng);
    if (omega.contains(x)) continue;
    ++seen;
    if (v(x) != (E0.contains(x) ? 1.0 : 0.0)) ++bad;
  }
  return bad;
}

struct MinimalityRow {
  int id = 0;
  std::string kind;
  Estimate J;
  Estimate gap;  // J_K(v; B) - P_K(H; B) on shared samples
  double symdiff = 0.0;
  std::string flags;
};

struct MinimalityReport {
  Estimate P;  // P_K(H; B)
  double ball_volume = 0.0;
  std::vector<MinimalityRow> rows;
  int violations = 0;      // gap < -3 sigma
  int strict_tested = 0;   // large-symdiff competitors checked for a positive gap
  int strict_failures = 0;
  double mean_large_gap = 0.0;
  bool pass = false;

  std::string csv() const {
    std::string s = "competitor_id,J_value,J_stderr,gap,symdiff,flags\n";
    char buf[256];
    for (const auto& r : rows) {
      std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%s\n", r.id, r.J.value, r.J.std_error, r.gap.value,
                    r.symdiff, r.flags.c_str());
      s += buf;
    }
    return s;
  }
};

// P_K(H; B) <= J_K(v; B) for every competitor v, one-sided at 3 sigma.
inline MinimalityReport minimality_experiment(const Kernel& K, const Region& H, const Region& B,
                                              const std::vector<Competitor>& competitors, const McConfig& cfg,
                                              int strict_count = 10, double strict_fraction = 0.05) {
  auto box = B.bbox();
  if (!box) throw std::invalid_argument("minimality_experiment: Omega must be bounded");
  MinimalityReport rep;
  rep.P = nonlocal_perimeter(K, H, B, cfg, streams::minimality);
  rep.ball_volume = set_volume(B).value;
  for (std::size_t i = 0; i < competitors.size(); ++i) {
    const auto& v = competitors[i].v;
    auto e = pair_integral<2>(K, *box, cfg, streams::minimality + 0x100 + i, [&](const Point& x, const Point& y) {
      std::array<double, 2> out{};
      if (!B.contains(x)) return out;
      double w = B.contains(y) ? 0.5 : 1.0;
      double jv = w * std::abs(v(x) - v(y));
      double jh = H.contains(x) != H.contains(y) ? w : 0.0;
      out[0] = jv;
      out[1] = jv - jh;
      return out;
    });
    MinimalityRow row;
    row.id = static_cast<int>(i);
    row.kind = competitors[i].kind;
    row.J = e[0];
    row.gap = e[1];
    row.symdiff = symdiff_volume(level_set(v, 0.5), H, B, 200000, cfg.seed + i).value;
    if (row.gap.value < -3.0 * row.gap.std_error) {
      row.flags = "below-3sigma";
      ++rep.violations;
    } else {
      row.flags = "ok";
    }
    rep.rows.push_back(row);
  }
  std::vector<const MinimalityRow*> large;
  for (const auto& r : rep.rows)
    if (r.symdiff >= strict_fraction * rep.ball_volume) large.push_back(&r);
  std::sort(large.begin(), large.end(), [](auto* a, auto* b) { return a->symdiff > b->symdiff; });
  double sum = 0.0;
  for (auto* r : large) sum += r->gap.value;
  rep.mean_large_gap = large.empty() ? 0.0 : sum / static_cast<double>(large.size());
  for (std::size_t i = 0; i < large.size() && static_cast<int>(i) < strict_count; ++i) {
    ++rep.strict_tested;
    if (!(large[i]->gap.value > 3.0 * large[i]->gap.std_error)) ++rep.strict_failures;
  }
  rep.pass = rep.violations == 0 && rep.strict_failures == 0 && (large.empty() || rep.mean_large_gap > 0.0);
  return rep;
}

}  // namespace nlp
