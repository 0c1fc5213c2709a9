#pragma once
// Calibrations zeta(p, q), their axioms, foliations and the calibrating functional.

#include "engine.hpp"

#include <functional>
#include <string>
#include <vector>

namespace nlp {

struct PairField {
  std::function<double(const Point&, const Point&)> fn;
  bool antisymmetric = false;
  std::string tag;
  double operator()(const Point& p, const Point& q) const { return fn(p, q); }
};

// zeta_nu(x, y) = sign <pi1 log(x^-1 y), nu>.
inline PairField zeta_halfspace(const StratifiedGroup& g, const HorizontalVector& nu) {
  if (nu.size() != g.horizontal_dim()) throw DimensionError("normal must live in the first layer");
  if (nu.norm() == 0.0) throw std::invalid_argument("zeta_halfspace: zero normal");
  auto gp = regions::detail::share(g);
  return {[gp, nu](const Point& x, const Point& y) {
            Point d = gp->product(gp->inverse(x), y);
            double s = 0.0;
            for (int i = 0; i < nu.size(); ++i) s += d[i] * nu[i];
            return sign(s);
          },
          true, "halfspace"};
}

inline PairField antisymmetrize(const PairField& z) {
  return {[z](const Point& p, const Point& q) { return 0.5 * (z(p, q) - z(q, p)); }, true, "antisym(" + z.tag + ")"};
}

struct IdentityReport {
  std::uint64_t pairs = 0;       // pairs drawn
  std::uint64_t tested = 0;      // pairs with u(p) != u(q)
  std::uint64_t violations = 0;
  double fraction = 0.0;
  double upper95 = 0.0;          // one-sided 95% bound on the violation rate
  bool pass = true;
};

// zeta(p,q) (u(q) - u(p)) = |u(q) - u(p)| on pairs drawn uniformly from a window.
inline IdentityReport calibration_identity_check(const PairField& zeta, const ScalarField& u, const Box& window,
                                                 const McConfig& cfg) {
  auto acc = run_sharded<2>(cfg.samples, cfg.seed, streams::calibration, [&](Rng& rng, std::array<double, 2>& out) {
    Point p = window.sample(rng), q = window.sample(rng);
    double du = u(q) - u(p);
    if (du == 0.0) return;
    out[0] = 1.0;
    if (std::abs(zeta(p, q) * du - std::abs(du)) > 1e-12) out[1] = 1.0;
  });
  IdentityReport r;
  r.pairs = cfg.samples;
  r.tested = static_cast<std::uint64_t>(std::llround(acc[0].mean * static_cast<double>(acc[0].n)));
  r.violations = static_cast<std::uint64_t>(std::llround(acc[1].mean * static_cast<double>(acc[1].n)));
  if (r.tested > 0) {
    r.fraction = static_cast<double>(r.violations) / static_cast<double>(r.tested);
    // Rule of three at zero counts, normal approximation otherwise.
    r.upper95 = r.violations == 0 ? 3.0 / static_cast<double>(r.tested)
                                  : r.fraction + 1.645 * std::sqrt(r.fraction * (1.0 - r.fraction) / static_cast<double>(r.tested));
  }
  r.pass = r.violations == 0;
  return r;
}

struct PvRow {
  double eps = 0.0;
  double l1 = 0.0;     // window estimate of ||F_eps||_{L^1}
  double noise = 0.0;  // same functional applied to the per-point standard errors
  double max_z = 0.0;  // largest |F_eps(p)| / sigma(p)
  bool zero = true;    // every F_eps(p) is 0 within 3 sigma
};

struct PvReport {
  std::vector<PvRow> rows;
  double window_volume = 0.0;
  int points = 0;
  bool decaying = false;
  bool flagged = false;  // table neither decays nor stays at noise level
  bool pass = false;
};

// F_eps(p) = int_{||p^-1 y|| > eps} K(y^-1 p) (zeta(y,p) - zeta(p,y)) dy at points p of a bounded window.
inline PvReport calibration_pv_check(const Kernel& K, const PairField& zeta, const Region& window,
                                     const std::vector<double>& eps_grid, const McConfig& cfg, int points = 32) {
  auto box = window.bbox();
  if (!box) throw std::invalid_argument("calibration_pv_check: window must be bounded");
  if (points <= 0) throw std::invalid_argument("calibration_pv_check: points must be positive");
  PvReport rep;
  rep.points = points;
  rep.window_volume = box->volume();
  std::vector<Point> ps;
  Rng rng(derive_seed(cfg.seed, streams::calibration + 1, 0));
  for (int i = 0; i < points; ++i) ps.push_back(box->sample(rng));
  McConfig inner = cfg.with_samples(std::max<std::uint64_t>(kBlockSize, cfg.samples / static_cast<std::uint64_t>(points)));
  std::uint64_t s = 0;
  for (double eps : eps_grid) {
    PvRow row;
    row.eps = eps;
    inner.pv_cutoff = eps;
    for (const auto& p : ps) {
      ++s;
      if (!window.contains(p)) continue;
      auto res = principal_value(K, p, inner, streams::calibration + 0x10 + s,
                                 [&](const Point& y) { return zeta(y, p) - zeta(p, y); });
      const Estimate& f = res.truncated;
      row.l1 += std::abs(f.value);
      row.noise += f.std_error;
      double z = f.std_error > 0.0 ? std::abs(f.value) / f.std_error : (f.value == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
      row.max_z = std::max(row.max_z, z);
      if (std::abs(f.value) > 3.0 * f.std_error + 1e-12) row.zero = false;
    }
    row.l1 *= rep.window_volume / points;
    row.noise *= rep.window_volume / points;
    rep.rows.push_back(row);
  }
  bool all_zero = std::all_of(rep.rows.begin(), rep.rows.end(), [](const PvRow& r) { return r.zero; });
  if (rep.rows.size() >= 2) {
    const auto &a = rep.rows.front(), &b = rep.rows.back();
    rep.decaying = b.l1 <= 0.5 * a.l1 + 3.0 * (a.noise + b.noise);
  }
  rep.flagged = !all_zero && !rep.decaying;
  rep.pass = all_zero;
  return rep;
}

struct FoliationReport {
  Estimate symdiff;                // |(E symdiff {phi > 0}) cap Omega|
  std::vector<double> h;           // truncation radii
  std::vector<double> cauchy;      // L^1 distance between F_{h_k} and F_{h_{k+1}} on the window
  std::vector<double> cauchy_noise;
  int points = 0;
  int sign_violations = 0;
  double max_curvature = 0.0;      // largest |H_K(phi)(x)| over the sampled points
  bool level_set = false;          // (i)
  bool stable = false;             // (ii)
  bool signs = false;              // (iii)
  bool pass() const { return level_set && stable && signs; }
};

// Checks that Omega is foliated by sub- and supersolutions adapted to E through phi.
inline FoliationReport foliation_check(const Kernel& K, const RealField& phi, const Region& E, const Region& omega,
                                       const McConfig& cfg, int points = 24, std::vector<double> h = {0.2, 0.1, 0.05, 0.025}) {
  auto box = omega.bbox();
  if (!box) throw std::invalid_argument("foliation_check: Omega must be bounded");
  const auto& G = E.group();
  FoliationReport rep;
  rep.h = h;
  auto level = regions::oracle(G, [phi](const Point& x) { return phi(x) > 0.0; }, std::nullopt, "phi-level");
  rep.symdiff = symdiff_volume(E, level, omega, cfg.samples, cfg.seed);
  double vol = set_volume(omega).value;
  rep.level_set = rep.symdiff.value <= 3.0 * rep.symdiff.std_error + 1e-3 * vol;

  std::vector<Point> xs;
  Rng rng(derive_seed(cfg.seed, streams::calibration + 2, 0));
  while (static_cast<int>(xs.size()) < points) {
    Point x = box->sample(rng);
    if (omega.contains(x)) xs.push_back(x);
  }
  rep.points = points;
  McConfig inner = cfg.with_samples(std::max<std::uint64_t>(kBlockSize, cfg.samples / static_cast<std::uint64_t>(points)));
  double frac = vol / points;
  std::vector<std::vector<Estimate>> F(h.size());
  for (std::size_t k = 0; k < h.size(); ++k)
    for (std::size_t i = 0; i < xs.size(); ++i)
      F[k].push_back(truncated_curvature(K, phi, xs[i], h[k], inner, streams::calibration + 0x1000 + i));
  for (std::size_t k = 0; k + 1 < h.size(); ++k) {
    double d = 0.0, n = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      d += std::abs(F[k + 1][i].value - F[k][i].value);
      n += F[k + 1][i].std_error + F[k][i].std_error;
    }
    rep.cauchy.push_back(d * frac);
    rep.cauchy_noise.push_back(n * frac);
  }
  rep.stable = true;
  if (rep.cauchy.size() >= 2)
    rep.stable = rep.cauchy.back() <= rep.cauchy.front() + 3.0 * (rep.cauchy_noise.back() + rep.cauchy_noise.front());

  for (std::size_t i = 0; i < xs.size(); ++i) {
    auto c = mean_curvature_field(K, phi, xs[i], inner, streams::calibration + 0x2000 + i);
    double Hx = c.value.value, tol = 3.0 * c.value.std_error + 1e-12;
    rep.max_curvature = std::max(rep.max_curvature, std::abs(Hx));
    bool inside = E.contains(xs[i]);
    if ((inside && Hx > tol) || (!inside && Hx < -tol) || c.pv_divergent) ++rep.sign_violations;
  }
  rep.signs = rep.sign_violations == 0;
  return rep;
}

namespace detail {
// F \ Omega = E \ Omega on sampled points of a neighbourhood of Omega.
inline void check_outer_datum(const Region& E, const Region& F, const Region& omega, std::uint64_t seed,
                              std::uint64_t samples = 10000) {
  auto box = omega.bbox();
  if (!box) throw std::invalid_argument("Omega must be bounded");
  Box outer = box->expanded(1.0);
  Rng rng(derive_seed(seed, 0x0d47, 0));
  for (std::uint64_t i = 0; i < samples; ++i) {
    Point x = outer.sample(rng);
    if (!omega.contains(x) && E.contains(x) != F.contains(x))
      throw std::invalid_argument("outer datum mismatch: F and E differ outside Omega");
  }
}
}  // namespace detail

// C(F) = 1/2 int_Omega int_G sign(phi(x) - phi(y)) (chi_F(x) - chi_F(y)) K(y^-1 x) (1 + 1[y not in Omega]) dy dx,
// normalized so that C(E) = P_K(E; Omega).
inline Estimate calibrating_functional(const Kernel& K, const RealField& phi, const Region& E, const Region& omega,
                                       const Region& F, const McConfig& cfg) {
  detail::check_outer_datum(E, F, omega, cfg.seed);
  auto box = omega.bbox();
  return pair_integral<1>(K, *box, cfg, streams::calibration + 3, [&](const Point& x, const Point& y) {
    if (!omega.contains(x)) return std::array<double, 1>{0.0};
    double d = (F.contains(x) ? 1.0 : 0.0) - (F.contains(y) ? 1.0 : 0.0);
    if (d == 0.0) return std::array<double, 1>{0.0};
    double w = omega.contains(y) ? 0.5 : 1.0;
    return std::array<double, 1>{w * sign(phi(x) - phi(y)) * d};
  })[0];
}

struct CurvatureIdentity {
  Estimate lhs;         // C(F)
  Estimate curvature;   // int_{F cap Omega} H_K(phi)
  Estimate exterior;    // int_{E \ Omega} int_Omega sign(phi(x) - phi(y)) K
  Estimate rhs;
  bool pass = false;
};

// C(F) = int_{F cap Omega} H_K(phi)(x) dx + int_{E \ Omega} int_Omega sign(phi(x) - phi(y)) K(y^-1 x) dy dx.
inline CurvatureIdentity curvature_identity_check(const Kernel& K, const RealField& phi, const Region& E,
                                                  const Region& omega, const Region& F, const McConfig& cfg) {
  CurvatureIdentity r;
  r.lhs = calibrating_functional(K, phi, E, omega, F, cfg);
  auto box = *omega.bbox();
  const auto& G = K.group();
  // Antithetic partner x g^-1 of y = x g makes the inner principal value absolutely convergent.
  r.curvature = pair_integral<1>(K, box, cfg, streams::calibration + 4, [&](const Point& x, const Point& y) {
    if (!omega.contains(x) || !F.contains(x)) return std::array<double, 1>{0.0};
    Point y2 = G.product(x, G.inverse(G.product(G.inverse(x), y)));
    double px = phi(x);
    return std::array<double, 1>{0.5 * (sign(px - phi(y)) + sign(px - phi(y2)))};
  })[0];
  r.exterior = pair_integral<1>(K, box, cfg, streams::calibration + 5, [&](const Point& y, const Point& x) {
    if (!omega.contains(y) || omega.contains(x) || !E.contains(x)) return std::array<double, 1>{0.0};
    return std::array<double, 1>{sign(phi(x) - phi(y))};
  })[0];
  r.rhs = r.curvature + r.exterior;
  r.pass = std::abs(r.lhs.value - r.rhs.value) <= 3.0 * combined_sigma(r.lhs, r.rhs) + 1e-12;
  return r;
}

}  // namespace nlp
