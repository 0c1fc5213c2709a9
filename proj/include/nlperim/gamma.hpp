#pragma once
// Rescaled functionals: b(H) upper bounds, rho(nu), the Gamma-liminf table and the alpha -> 1 scan.

#include "engine.hpp"

#include <string>
#include <vector>

namespace nlp {

enum class Trend { converging, increasing, noisy };

inline std::string to_string(Trend t) {
  switch (t) {
    case Trend::converging: return "converging";
    case Trend::increasing: return "increasing";
    case Trend::noisy: return "noisy";
  }
  return "noisy";
}

struct Extrapolation {
  Estimate value;
  Trend trend = Trend::noisy;
  double exponent = 0.0;  // fitted gamma in a + b eps^gamma
};

namespace detail {

inline void check_grid(const std::vector<double>& eps) {
  if (eps.empty()) throw std::invalid_argument("epsilon grid is empty");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0)) throw std::invalid_argument("epsilon grid must be positive");
    if (i > 0 && !(eps[i] < eps[i - 1])) throw std::invalid_argument("epsilon grid must be strictly decreasing");
  }
}

// Fits v = a + b eps^gamma through the last three points of a decreasing grid.
inline Extrapolation extrapolate(const std::vector<double>& eps, const std::vector<Estimate>& v) {
  Extrapolation ex;
  std::size_t n = v.size();
  ex.value = v.back();
  if (n < 3) {
    ex.trend = Trend::noisy;
    return ex;
  }
  const Estimate &v1 = v[n - 3], &v2 = v[n - 2], &v3 = v[n - 1];
  double e1 = eps[n - 3], e2 = eps[n - 2], e3 = eps[n - 1];
  double d1 = v2.value - v1.value, d2 = v3.value - v2.value;
  double s1 = combined_sigma(v1, v2), s2 = combined_sigma(v2, v3);
  if (std::abs(d1) <= 3.0 * s1 && std::abs(d2) <= 3.0 * s2) {
    ex.trend = Trend::converging;
    return ex;
  }
  if (d1 * d2 > 0.0 && std::abs(d2) < std::abs(d1)) {
    // (v2 - v1) / (v3 - v2) = (e2^g - e1^g) / (e3^g - e2^g), solved for g > 0 by bisection.
    double target = d1 / d2;
    auto ratio = [&](double g) { return (std::pow(e2, g) - std::pow(e1, g)) / (std::pow(e3, g) - std::pow(e2, g)); };
    double lo = 1e-6, hi = 50.0;
    if ((ratio(lo) - target) * (ratio(hi) - target) > 0.0) {
      ex.trend = Trend::noisy;
      return ex;
    }
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      if ((ratio(lo) - target) * (ratio(mid) - target) <= 0.0) hi = mid;
      else lo = mid;
    }
    double g = 0.5 * (lo + hi);
    double b = d2 / (std::pow(e3, g) - std::pow(e2, g));
    double a = v3.value - b * std::pow(e3, g);
    ex.exponent = g;
    // Linear in v1..v3; propagate errors through the coefficients.
    double c = std::pow(e3, g) / (std::pow(e3, g) - std::pow(e2, g));
    ex.value = {a, std::hypot((1.0 - c) * v3.std_error, c * v2.std_error), v3.samples, v3.tail_correction};
    ex.trend = Trend::converging;
    if (n >= 4) {
      const Estimate& v0 = v[n - 4];
      double pred = a + b * std::pow(eps[n - 4], g);
      if (std::abs(pred - v0.value) > 3.0 * std::hypot(v0.std_error, ex.value.std_error)) ex.trend = Trend::noisy;
    }
    return ex;
  }
  if (d1 > 0.0 && d2 > 0.0) {
    ex.trend = Trend::increasing;
    return ex;
  }
  ex.trend = Trend::noisy;
  return ex;
}

}  // namespace detail

struct EpsilonScan {
  std::vector<double> eps;
  std::vector<Estimate> values;  // (1/2eps) J^1_eps(H_nu; B)
  Extrapolation limit;
  bool infcappa = false;         // kernel passes the lower tail bound
  bool positive = false;         // every entry > 3 sigma
};

inline Region unit_ball_of(const Kernel& K) { return regions::unit_ball(K.norm()); }

// (1/2eps) J^1_{K_eps}(chi_{H_nu}; B(0,1)) along a decreasing grid; the constant family gives an upper bound for b(H_nu).
inline EpsilonScan b_upper_estimate(const Kernel& K, const HorizontalVector& nu, const std::vector<double>& eps_grid,
                                    const McConfig& cfg) {
  detail::check_grid(eps_grid);
  const auto& G = K.group();
  EpsilonScan s;
  s.eps = eps_grid;
  s.infcappa = infcappa_check(K).pass;
  auto H = regions::halfspace(G, nu);
  auto B = unit_ball_of(K);
  auto u = fields::indicator(H);
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    double e = eps_grid[i];
    auto j = j_functional(K.rescaled(e), u, B, cfg, streams::gamma + i);
    s.values.push_back(j.J1 * (0.5 / e));
  }
  s.positive = std::all_of(s.values.begin(), s.values.end(), [](const Estimate& v) { return v.value > 3.0 * v.std_error; });
  s.limit = detail::extrapolate(s.eps, s.values);
  return s;
}

struct RhoResult {
  Estimate value;
  Estimate theta;
  EpsilonScan scan;
  std::string label = "UPPER-BOUND-OF-b";
};

// rho(nu) = b(H_nu) / theta(nu) with b replaced by its constant-family upper bound.
inline RhoResult rho(const Kernel& K, const HorizontalVector& nu, const std::vector<double>& eps_grid, const McConfig& cfg) {
  if (nu.norm() == 0.0) throw std::invalid_argument("rho: zero normal");
  HorizontalVector unit = nu * (1.0 / nu.norm());
  RhoResult r;
  r.scan = b_upper_estimate(K, unit, eps_grid, cfg);
  r.theta = theta_estimate(K.norm(), unit);
  const Estimate& b = r.scan.limit.value;
  double v = b.value / r.theta.value;
  double rel = std::hypot(b.std_error / b.value, r.theta.std_error / r.theta.value);
  r.value = {v, std::abs(v) * rel, b.samples, 0.0};
  return r;
}

struct GammaRow {
  double eps;
  Estimate rescaled;  // eps^-1 P_eps(H; Omega)
  Estimate b;         // (1/2eps) J^1_eps(H; Omega)
  Estimate excess;    // their paired difference, eps^-1 J^2_eps
  bool termwise = false;
};

struct GammaReport {
  std::vector<GammaRow> rows;
  Extrapolation lhs;       // rho(nu) theta(nu) = b upper estimate
  Extrapolation liminf;    // extrapolated eps^-1 P_eps
  bool termwise = false;
  bool pass = false;
};

// int_Omega rho(nu_E) dP_G(E; .) <= liminf eps^-1 P_eps(E; Omega) for E = H_nu, Omega = B(0,1).
inline GammaReport gamma_liminf_check(const Kernel& K, const Region& E, const std::vector<double>& eps_grid,
                                      const McConfig& cfg) {
  detail::check_grid(eps_grid);
  auto B = unit_ball_of(K);
  auto u = fields::indicator(E);
  GammaReport rep;
  std::vector<Estimate> P, b;
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    double e = eps_grid[i];
    auto j = j_functional(K.rescaled(e), u, B, cfg, streams::gamma + 0x100 + i);
    GammaRow row{e, j.J * (1.0 / e), j.J1 * (0.5 / e), j.J2 * (1.0 / e), false};
    row.termwise = row.excess.value >= -3.0 * row.excess.std_error;
    P.push_back(row.rescaled);
    b.push_back(row.b);
    rep.rows.push_back(row);
  }
  rep.termwise = std::all_of(rep.rows.begin(), rep.rows.end(), [](const GammaRow& r) { return r.termwise; });
  rep.lhs = detail::extrapolate(eps_grid, b);
  rep.liminf = detail::extrapolate(eps_grid, P);
  rep.pass = rep.termwise && one_sided(rep.lhs.value, rep.liminf.value);
  return rep;
}

struct DavilaRow {
  double alpha;
  Estimate value;  // (1 - alpha) P_alpha(E; R^n)
};

struct DavilaScan {
  std::vector<DavilaRow> rows;
  Estimate limit;         // quadratic extrapolation to alpha = 1
  double perimeter = 0.0; // classical perimeter of E
  Estimate constant;      // limit / perimeter
};

// (1 - alpha) P_alpha(E; R^n) = (1 - alpha) L_alpha(E, E^c) along an alpha grid.
inline DavilaScan davila_scan(const Region& E, const std::vector<double>& alphas, const McConfig& cfg) {
  const auto& G = E.group();
  if (!G.abelian()) throw std::invalid_argument("davila_scan: Euclidean group required");
  if (!E.bounded()) throw std::invalid_argument("davila_scan: E must be bounded");
  HomogeneousNorm norm(G, NormKind::euclidean);
  DavilaScan s;
  s.perimeter = horizontal_perimeter(E, regions::full(G)).value;
  auto Ec = regions::complement(E);
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    double a = alphas[i];
    auto K = Kernel::fractional(norm, a);
    s.rows.push_back({a, interaction(K, E, Ec, cfg, streams::gamma + 0x200 + i) * (1.0 - a)});
  }
  std::size_t n = s.rows.size();
  if (n >= 3) {
    // Quadratic through the last three points in s = 1 - alpha, evaluated at s = 0 (Lagrange weights).
    double x[3], l[3];
    for (int k = 0; k < 3; ++k) x[k] = 1.0 - s.rows[n - 3 + static_cast<std::size_t>(k)].alpha;
    for (int k = 0; k < 3; ++k) {
      l[k] = 1.0;
      for (int m = 0; m < 3; ++m)
        if (m != k) l[k] *= (0.0 - x[m]) / (x[k] - x[m]);
    }
    double v = 0.0, var = 0.0;
    for (int k = 0; k < 3; ++k) {
      const Estimate& e = s.rows[n - 3 + static_cast<std::size_t>(k)].value;
      v += l[k] * e.value;
      var += l[k] * l[k] * e.std_error * e.std_error;
    }
    s.limit = {v, std::sqrt(var), cfg.samples, 0.0};
  } else if (n > 0) {
    s.limit = s.rows.back().value;
  }
  s.constant = s.limit * (1.0 / s.perimeter);
  return s;
}

struct IsometryResult {
  Estimate b1, b2;
  bool pass = false;
};

// (1/2eps) J^1_eps(H_nu1; B) = (1/2eps) J^1_eps(H_nu2; B) for rotation-invariant norms.
inline IsometryResult isometry_invariance_check(const Kernel& K, const HorizontalVector& nu1, const HorizontalVector& nu2,
                                                double eps, const McConfig& cfg) {
  const auto& G = K.group();
  bool euclid = G.abelian() && K.norm().kind() == NormKind::euclidean;
  bool heis = G.name() == "H1" && K.norm().kind() == NormKind::koranyi;
  if (!euclid && !heis) throw std::invalid_argument("isometry_invariance_check: unsupported group/rotation pair");
  IsometryResult r;
  auto one = [&](const HorizontalVector& nu) {
    auto u = fields::indicator(regions::halfspace(G, nu * (1.0 / nu.norm())));
    return j_functional(K.rescaled(eps), u, unit_ball_of(K), cfg, streams::gamma + 0x300).J1 * (0.5 / eps);
  };
  r.b1 = one(nu1);
  r.b2 = one(nu2);
  r.pass = std::abs(r.b1.value - r.b2.value) <= 3.0 * combined_sigma(r.b1, r.b2) + 1e-12;
  return r;
}

}  // namespace nlp
