#pragma once
// Experiment kinds driven by a JSON config, with tables and pass/fail checks.

#include "config.hpp"

#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace nlp {

struct Check {
  std::string name;
  bool pass = false;
  double statistic = 0.0;
  double threshold = 0.0;
  bool asserted = true;  // reported-only checks never fail a run
};

struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string csv() const {
    std::string s;
    for (std::size_t i = 0; i < header.size(); ++i) s += (i ? "," : "") + header[i];
    s += "\n";
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + r[i];
      s += "\n";
    }
    return s;
  }
};

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Outcome {
  std::string kind;
  std::vector<Check> checks;
  std::vector<Table> tables;
  json summary = json::object();

  bool pass() const {
    for (const auto& c : checks)
      if (c.asserted && !c.pass) return false;
    return true;
  }
  void check(std::string name, bool pass, double statistic, double threshold, bool asserted = true) {
    checks.push_back({std::move(name), pass, statistic, threshold, asserted});
  }
};

// |a - b| / combined sigma, guarded for exact agreement.
inline double z_score(const Estimate& a, const Estimate& b) {
  double s = combined_sigma(a, b), d = std::abs(a.value - b.value);
  if (s == 0.0) return d == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return d / s;
}

struct Setup {
  json cfg;
  StratifiedGroup G;
  HomogeneousNorm norm;
  McConfig mc;
  json params;
};

inline Setup setup(const json& cfg) {
  StratifiedGroup G = config::group(config::need(cfg, "config", "group"));
  HomogeneousNorm N = config::norm(G, cfg.contains("norm") ? cfg["norm"] : json());
  return {cfg, G, N, config::mc(cfg.value("mc", json::object())), cfg.value("params", json::object())};
}

inline std::vector<double> grid_param(const json& p, const std::string& key, std::vector<double> fallback) {
  if (!p.contains(key)) return fallback;
  return config::numbers(p[key], "params." + key);
}

inline void estimate_row(Table& t, const std::string& name, const Estimate& e) {
  t.rows.push_back({name, fmt(e.value), fmt(e.std_error), std::to_string(e.samples), fmt(e.tail_correction)});
}

inline Table estimate_table(std::string name) {
  return {std::move(name), {"quantity", "value", "stderr", "samples", "tail_correction"}, {}};
}

// ---------------------------------------------------------------------------

inline Outcome run_perimeter(const Setup& s) {
  Outcome o;
  auto K = config::kernel(s.norm, s.cfg.value("kernel", json::object()));
  auto E = config::region(s.G, s.norm, config::need(s.cfg, "config", "region"), "region");
  auto omega = config::region(s.G, s.norm, config::need(s.cfg, "config", "omega"), "omega");
  if (!omega.bounded()) throw ConfigError("omega", "must be bounded");
  auto single = nonlocal_perimeter(K, E, omega, s.mc);
  auto three = nonlocal_perimeter_three_term(K, E, omega, s.mc);
  auto comp = nonlocal_perimeter(K, regions::complement(E), omega, s.mc, streams::perimeter + 1);
  Table t = estimate_table("perimeter");
  estimate_row(t, "P_single", single);
  estimate_row(t, "P_three_term", three);
  estimate_row(t, "P_complement", comp);
  o.tables.push_back(t);
  double z1 = z_score(single, three), z2 = z_score(single, comp);
  o.check("single_vs_three_term", z1 <= 3.0, z1, 3.0);
  o.check("complement_symmetry", z2 <= 3.0, z2, 3.0);
  o.summary["kernel"] = K.describe();
  return o;
}

inline Outcome run_coarea(const Setup& s) {
  Outcome o;
  auto K = config::kernel(s.norm, s.cfg.value("kernel", json::object()));
  auto u = config::field(s.G, s.norm, config::need(s.cfg, "config", "field"), "field");
  auto omega = config::region(s.G, s.norm, config::need(s.cfg, "config", "omega"), "omega");
  if (!omega.bounded()) throw ConfigError("omega", "must be bounded");
  std::string rule = s.params.value("t_rule", "auto");
  TRule r = rule == "exact" ? TRule::exact : rule == "gauss" ? TRule::gauss : TRule::automatic;
  auto rep = coarea_check(K, u, omega, s.mc, r);
  Table t{"coarea", {"t", "weight", "perimeter", "stderr"}, {}};
  for (std::size_t i = 0; i < rep.t.size(); ++i)
    t.rows.push_back({fmt(rep.t[i]), fmt(rep.weights[i]), fmt(rep.perimeters[i].value), fmt(rep.perimeters[i].std_error)});
  o.tables.push_back(t);
  Table j = estimate_table("coarea_sides");
  estimate_row(j, "J", rep.lhs);
  estimate_row(j, "level_integral", rep.rhs);
  o.tables.push_back(j);
  o.check("coarea_identity", rep.pass, z_score(rep.lhs, rep.rhs), 3.0);
  if (s.params.value("level_selection", false)) {
    auto ls = level_selection(K, u, omega, s.mc);
    o.summary["level_selection"] = {{"t", ls.t}, {"perimeter", ls.perimeter.value}, {"J", ls.J.value}};
    o.check("level_selection", ls.pass, ls.perimeter.value - ls.J.value, 3.0 * combined_sigma(ls.perimeter, ls.J));
  }
  return o;
}

inline Outcome run_calibrate(const Setup& s) {
  Outcome o;
  auto K = config::kernel(s.norm, s.cfg.value("kernel", json::object()));
  auto nu = config::horizontal(config::need(s.params, "params", "nu"), "params.nu", s.G);
  auto omega = config::region(s.G, s.norm, config::need(s.cfg, "config", "omega"), "omega");
  auto box = omega.bbox();
  if (!box) throw ConfigError("omega", "must be bounded");
  auto eps = grid_param(s.params, "eps_grid", {0.4, 0.2, 0.1, 0.05, 0.025, 0.0125, 0.00625, 0.003125});
  auto H = regions::halfspace(s.G, nu);
  auto phi = linear_phi(s.G, nu);
  auto zeta = zeta_halfspace(s.G, nu);

  auto id = calibration_identity_check(zeta, fields::indicator(H), *box, s.mc);
  o.check("identity_violations", id.pass, static_cast<double>(id.violations), 0.0);
  o.summary["identity"] = {{"pairs", id.pairs}, {"tested", id.tested}, {"violations", id.violations}, {"upper95", id.upper95}};

  int points = s.params.value("pv_points", 16);
  auto pv = calibration_pv_check(K, zeta, omega, eps, s.mc, points);
  Table t{"pv", {"epsilon", "l1_window", "noise", "max_z", "zero"}, {}};
  for (const auto& r : pv.rows) t.rows.push_back({fmt(r.eps), fmt(r.l1), fmt(r.noise), fmt(r.max_z), r.zero ? "1" : "0"});
  o.tables.push_back(t);
  o.check("pv_zero", pv.pass, 0.0, 3.0);
  o.summary["pv_window_volume"] = pv.window_volume;

  auto fol = foliation_check(K, phi, H, omega, s.mc, s.params.value("foliation_points", 12));
  o.check("foliation_level_set", fol.level_set, fol.symdiff.value, 0.0);
  o.check("foliation_stability", fol.stable, fol.cauchy.empty() ? 0.0 : fol.cauchy.back(), 0.0);
  o.check("foliation_signs", fol.signs, fol.sign_violations, 0.0);

  // Competitor: H with a small ball removed near the boundary inside Omega.
  double r = s.params.value("notch_radius", 0.2);
  Point c = s.G.horizontal_point(nu * (r / nu.norm()));
  auto F = regions::difference(H, regions::ball(s.norm, c, r));
  auto ci = curvature_identity_check(K, phi, H, omega, F, s.mc);
  Table e = estimate_table("calibrating_functional");
  estimate_row(e, "C(F)", ci.lhs);
  estimate_row(e, "curvature_term", ci.curvature);
  estimate_row(e, "exterior_term", ci.exterior);
  o.tables.push_back(e);
  o.check("curvature_identity", ci.pass, z_score(ci.lhs, ci.rhs), 3.0);
  return o;
}

inline Outcome run_minimality(const Setup& s) {
  Outcome o;
  auto K = config::kernel(s.norm, s.cfg.value("kernel", json::object()));
  auto nu = config::horizontal(config::need(s.params, "params", "nu"), "params.nu", s.G);
  auto omega = config::region(s.G, s.norm, config::need(s.cfg, "config", "omega"), "omega");
  if (!omega.bounded()) throw ConfigError("omega", "must be bounded");
  auto H = regions::halfspace(s.G, nu);
  CompetitorSpec spec{H, omega};
  spec.flip_density = s.params.value("flip_density", spec.flip_density);
  spec.grid = s.params.value("grid", spec.grid);
  spec.margin = s.params.value("margin", spec.margin);
  spec.shift_min = s.params.value("shift_min", spec.shift_min);
  spec.shift_max = s.params.value("shift_max", spec.shift_max);
  spec.tilt_max = s.params.value("tilt_max", spec.tilt_max);
  spec.seed = s.mc.seed;
  int count = s.params.value("competitors", 50);
  auto comps = generate_competitors(spec, count);
  auto rep = minimality_experiment(K, H, omega, comps, s.mc);
  Table t{"minimality", {"competitor_id", "J_value", "J_stderr", "gap", "symdiff", "flags"}, {}};
  for (const auto& r : rep.rows)
    t.rows.push_back({std::to_string(r.id), fmt(r.J.value), fmt(r.J.std_error), fmt(r.gap.value), fmt(r.symdiff), r.flags});
  o.tables.push_back(t);
  o.summary["P_H"] = to_json(rep.P, s.mc.seed, "");
  o.summary["mean_large_gap"] = rep.mean_large_gap;
  o.check("no_gap_below_3sigma", rep.violations == 0, rep.violations, 0.0);
  o.check("large_symdiff_positive_gap", rep.strict_failures == 0, rep.strict_failures, 0.0);
  o.check("finite_perimeter", std::isfinite(rep.P.value), rep.P.value, 0.0);
  return o;
}

inline void scan_rows(Table& t, const std::vector<double>& x, const std::vector<Estimate>& v, const Extrapolation& ex) {
  for (std::size_t i = 0; i < x.size(); ++i)
    t.rows.push_back({fmt(x[i]), fmt(v[i].value), fmt(v[i].std_error), fmt(ex.value.value), to_string(ex.trend)});
}

inline Outcome run_gamma(const Setup& s) {
  Outcome o;
  auto K = config::kernel(s.norm, s.cfg.value("kernel", json::object()));
  auto nu = config::horizontal(config::need(s.params, "params", "nu"), "params.nu", s.G);
  auto eps = grid_param(s.params, "eps_grid", {0.5, 0.25, 0.125, 0.0625});
  auto H = regions::halfspace(s.G, nu * (1.0 / nu.norm()));
  auto rep = gamma_liminf_check(K, H, eps, s.mc);
  std::vector<Estimate> b, P;
  for (const auto& r : rep.rows) {
    b.push_back(r.b);
    P.push_back(r.rescaled);
  }
  Table tb{"b_upper", {"epsilon_or_alpha", "value", "stderr", "extrapolation", "trend"}, {}};
  scan_rows(tb, eps, b, rep.lhs);
  o.tables.push_back(tb);
  Table tp{"rescaled_perimeter", {"epsilon_or_alpha", "value", "stderr", "extrapolation", "trend"}, {}};
  scan_rows(tp, eps, P, rep.liminf);
  o.tables.push_back(tp);
  bool infcappa = infcappa_check(K).pass;
  bool positive = std::all_of(b.begin(), b.end(), [](const Estimate& v) { return v.value > 3.0 * v.std_error; });
  o.check("b_positive", positive, b.back().value, 0.0, infcappa);
  o.check("termwise", rep.termwise, 0.0, 3.0);
  o.check("liminf_consistency", rep.pass, rep.lhs.value.value - rep.liminf.value.value, 0.0);
  auto th = theta_estimate(s.norm, nu * (1.0 / nu.norm()));
  o.summary["theta"] = th.value;
  o.summary["rho"] = rep.lhs.value.value / th.value;
  o.summary["rho_label"] = "UPPER-BOUND-OF-b";
  o.summary["trend"] = to_string(rep.lhs.trend);
  o.summary["infcappa"] = infcappa;
  return o;
}

inline Outcome run_davila(const Setup& s) {
  Outcome o;
  if (!s.G.abelian()) throw ConfigError("group", "davila needs a Euclidean group");
  auto E = config::region(s.G, s.norm, config::need(s.cfg, "config", "region"), "region");
  if (!E.bounded()) throw ConfigError("region", "must be bounded");
  auto alphas = grid_param(s.params, "alpha_grid", {0.5, 0.8, 0.9, 0.95, 0.99});
  for (double a : alphas)
    if (!(a > 0.0 && a < 1.0)) throw ConfigError("params.alpha_grid", "alpha outside (0,1)");
  auto scan = davila_scan(E, alphas, s.mc);
  Table t{"davila", {"epsilon_or_alpha", "value", "stderr", "extrapolation", "trend"}, {}};
  for (const auto& r : scan.rows)
    t.rows.push_back({fmt(r.alpha), fmt(r.value.value), fmt(r.value.std_error), fmt(scan.limit.value), "alpha->1"});
  o.tables.push_back(t);
  o.summary["perimeter"] = scan.perimeter;
  o.summary["constant"] = to_json(scan.constant, s.mc.seed, "");
  o.check("constant_positive", scan.constant.value > 3.0 * scan.constant.std_error, scan.constant.value, 0.0);
  return o;
}

// Inequalities and cancellations on built-in R^1 or H^1 instances.
inline Outcome run_checks(const Setup& s) {
  Outcome o;
  const auto& G = s.G;
  Table t{"checks", {"check", "lhs", "lhs_stderr", "rhs", "rhs_stderr", "pass"}, {}};
  auto row = [&](const std::string& name, const InequalityResult& r) {
    t.rows.push_back({name, fmt(r.lhs.value), fmt(r.lhs.std_error), fmt(r.rhs.value), fmt(r.rhs.std_error), r.pass ? "1" : "0"});
    o.check(name, r.pass, r.lhs.value - r.rhs.value, 3.0 * combined_sigma(r.lhs, r.rhs));
  };
  bool line = G.abelian() && G.dim() == 1;
  bool heis = G.name() == "H1";
  if (!line && !heis) throw ConfigError("group", "checks suite supports R1 and H1");
  HomogeneousNorm N = s.norm;
  auto box = [&](std::vector<double> lo, std::vector<double> hi) {
    return regions::coordinate_box(G, Box{Point::from(lo), Point::from(hi)});
  };
  McConfig mc = s.mc;

  // translation estimate with a bump field
  Point widths = line ? Point{0.5} : Point{0.5, 0.5, 0.5};
  auto bump = fields::bump(G, widths);
  Estimate tv = bump_total_variation(G, widths, mc);
  Point g = line ? Point{0.1} : Point{0.1, 0.0, 0.0};
  row("translation", translation_estimate_check(N, bump, tv, g, mc));

  // finiteness bound
  auto Kt = Kernel::truncated_fractional(N, s.params.value("alpha", 0.5));
  if (line)
    row("finiteness", finiteness_bound_check(Kt, box({0.0}, {1.0}), box({-1.0}, {0.0}), mc));
  else
    row("finiteness", finiteness_bound_check(Kt, box({-0.5, -0.5, -0.5}, {0.5, 0.5, 0.5}), box({0.5, -0.5, -0.5}, {1.5, 0.5, 0.5}), mc));

  // convolution inequality
  auto Gk = line ? Kernel::compact_bump(N, 1.0, 1.0) : Kt;
  auto u = line ? fields::indicator(box({0.0}, {1.0})) : fields::indicator(regions::unit_ball(N));
  row("convolution", convolution_inequality_check(Gk, u, mc));

  // piove bound
  auto Kb = Kernel::compact_bump(N, 1.0, 1.0);
  std::vector<double> eps{0.5, 0.25, 0.125};
  std::vector<PioveRow> pr;
  if (line) {
    double PN = 1.0;  // N = (0, inf) has one boundary point
    pr = piove_bound_check(Kb, box({0.0}, {1.0}), box({-1.0}, {0.0}), PN, eps, mc);
  } else {
    auto Nbox = regions::coordinate_box(G, Box{Point{-1.0, -1.0, -1.0}, Point{1.0, 1.0, 1.0}});
    double PN = horizontal_perimeter(Nbox, regions::full(G)).value;
    pr = piove_bound_check(Kb, box({0.0, -1.0, -1.0}, {1.0, 1.0, 1.0}), box({1.0, -1.0, -1.0}, {2.0, 1.0, 1.0}), PN, eps, mc);
  }
  for (const auto& r : pr) {
    t.rows.push_back({"piove@" + fmt(r.eps), fmt(r.lhs.value), fmt(r.lhs.std_error), fmt(r.rhs), "0", r.pass ? "1" : "0"});
    o.check("piove@" + fmt(r.eps), r.pass, r.lhs.value - r.rhs, 3.0 * r.lhs.std_error);
  }

  // halfspace cancellation of the mean curvature on the boundary
  auto K = config::kernel(N, s.cfg.value("kernel", json::object()));
  HorizontalVector nu = line ? HorizontalVector{1.0} : HorizontalVector{1.0, 0.0};
  auto H = regions::halfspace(G, nu);
  Point x0 = line ? Point{0.0} : Point{0.0, 0.3, -0.1};
  auto hc = mean_curvature(K, H, x0, mc);
  double zc = hc.value.std_error > 0 ? std::abs(hc.value.value) / hc.value.std_error : (hc.value.value == 0 ? 0.0 : 1e9);
  t.rows.push_back({"halfspace_curvature", fmt(hc.value.value), fmt(hc.value.std_error), "0", "0", zc <= 3.0 ? "1" : "0"});
  o.check("halfspace_curvature", zc <= 3.0, zc, 3.0);

  // calibration identity
  auto id = calibration_identity_check(zeta_halfspace(G, nu), fields::indicator(H),
                                       line ? Box{Point{-1.0}, Point{1.0}} : Box{Point{-1.0, -1.0, -1.0}, Point{1.0, 1.0, 1.0}}, mc);
  t.rows.push_back({"calibration_identity", std::to_string(id.violations), "0", "0", "0", id.pass ? "1" : "0"});
  o.check("calibration_identity", id.pass, static_cast<double>(id.violations), 0.0);
  o.tables.push_back(t);
  return o;
}

struct ExperimentKind {
  std::string name;
  std::string description;
  std::function<json()> defaults;
  std::function<Outcome(const Setup&)> run;
};

inline json base_defaults(std::string kind, std::string group) {
  McConfig mc;
  json j;
  j["experiment"] = kind;
  j["group"] = group;
  j["mc"] = mc;
  j["params"] = json::object();
  return j;
}

inline const std::vector<ExperimentKind>& experiment_catalog() {
  static const std::vector<ExperimentKind> kinds = {
      {"perimeter", "nonlocal perimeter P_K(E; Omega), single and three-term forms",
       [] {
         json j = base_defaults("perimeter", "R1");
         j["kernel"] = {{"type", "fractional"}, {"alpha", 0.5}};
         j["region"] = {{"type", "halfspace"}, {"nu", {1.0}}};
         j["omega"] = {{"type", "box"}, {"lo", {-1.0}}, {"hi", {1.0}}};
         j["mc"]["core_radius"] = 0.5;
         return j;
       },
       run_perimeter},
      {"coarea", "J_K(u; Omega) against the level-set integral of P_K",
       [] {
         json j = base_defaults("coarea", "R1");
         j["kernel"] = {{"type", "fractional"}, {"alpha", 0.5}};
         j["field"] = {{"type", "clamped_linear"}, {"nu", {1.0}}, {"slope", 1.0}};
         j["omega"] = {{"type", "box"}, {"lo", {-1.0}}, {"hi", {2.0}}};
         j["mc"]["core_radius"] = 0.5;
         j["params"]["t_rule"] = "auto";
         j["params"]["level_selection"] = false;
         return j;
       },
       run_coarea},
      {"calibrate", "halfspace calibration: identity, principal values, foliation, calibrating functional",
       [] {
         json j = base_defaults("calibrate", "H1");
         j["norm"] = "koranyi";
         j["kernel"] = {{"type", "fractional"}, {"alpha", 0.5}};
         j["omega"] = {{"type", "unit_ball"}};
         j["mc"]["samples"] = 100000;
         j["params"] = {{"nu", {1.0, 0.0}},
                        {"eps_grid", {0.4, 0.2, 0.1, 0.05, 0.025, 0.0125, 0.00625, 0.003125}},
                        {"pv_points", 16},
                        {"foliation_points", 12},
                        {"notch_radius", 0.2}};
         return j;
       },
       run_calibrate},
      {"minimality", "halfspace minimality against seeded competitors with the same outer datum",
       [] {
         json j = base_defaults("minimality", "H1");
         j["norm"] = "koranyi";
         j["kernel"] = {{"type", "fractional"}, {"alpha", 0.5}};
         j["omega"] = {{"type", "unit_ball"}};
         j["mc"]["samples"] = 100000;
         CompetitorSpec d{regions::empty(groups::euclidean(1)), regions::empty(groups::euclidean(1))};
         j["params"] = {{"nu", {1.0, 0.0}},      {"competitors", 50},        {"flip_density", d.flip_density},
                        {"grid", d.grid},         {"margin", d.margin},       {"shift_min", d.shift_min},
                        {"shift_max", d.shift_max}, {"tilt_max", d.tilt_max}};
         return j;
       },
       run_minimality},
      {"gamma", "rescaled functionals: b(H) upper bound, rho(nu) and the term-wise liminf table",
       [] {
         json j = base_defaults("gamma", "H1");
         j["norm"] = "koranyi";
         j["kernel"] = {{"type", "custom"}, {"p_near", 4.5}, {"p_far", 5.0}, {"crossover", 1.0}};
         j["mc"]["samples"] = 100000;
         j["params"] = {{"nu", {1.0, 0.0}}, {"eps_grid", {0.5, 0.25, 0.125, 0.0625}}};
         return j;
       },
       run_gamma},
      {"davila", "(1 - alpha) P_alpha(E; R^n) as alpha -> 1",
       [] {
         json j = base_defaults("davila", "R1");
         j["region"] = {{"type", "box"}, {"lo", {0.0}}, {"hi", {1.0}}};
         j["mc"]["samples"] = 1000000;
         j["mc"]["core_radius"] = 0.5;
         j["params"] = {{"alpha_grid", {0.5, 0.8, 0.9, 0.95, 0.99}}};
         return j;
       },
       run_davila},
      {"checks", "inequality suite and halfspace cancellations on R1 or H1",
       [] {
         json j = base_defaults("checks", "R1");
         j["kernel"] = {{"type", "fractional"}, {"alpha", 0.5}};
         j["mc"]["core_radius"] = 0.5;
         j["params"] = {{"alpha", 0.5}};
         return j;
       },
       run_checks},
  };
  return kinds;
}

inline const ExperimentKind& experiment_kind(const std::string& name) {
  for (const auto& k : experiment_catalog())
    if (k.name == name) return k;
  throw ConfigError("experiment", "unknown experiment kind '" + name + "'");
}

// Defaults of the kind patched by the user config; every defaulted key ends up explicit.
inline json resolve_config(const json& user) {
  if (!user.is_object()) throw ConfigError("config", "expected a JSON object");
  std::string kind = config::get<std::string>(user, "config", "experiment", "");
  if (kind.empty()) throw ConfigError("experiment", "missing");
  const auto& k = experiment_kind(kind);
  json j = k.defaults();
  // A user-specified region or kernel replaces the default wholesale.
  for (const char* key : {"kernel", "region", "omega", "field", "norm", "group"})
    if (user.contains(key)) j.erase(key);
  if (user.contains("group") && !user.contains("norm")) j.erase("norm");
  j.merge_patch(user);
  return j;
}

inline json outcome_json(const Outcome& o, const std::string& hash, std::uint64_t seed) {
  json j;
  j["experiment"] = o.kind;
  j["pass"] = o.pass();
  j["config_hash"] = hash;
  j["seed"] = seed;
  j["checks"] = json::array();
  for (const auto& c : o.checks)
    j["checks"].push_back({{"check", c.name}, {"pass", c.pass}, {"statistic", c.statistic}, {"threshold", c.threshold},
                           {"asserted", c.asserted}, {"seed", seed}});
  j["summary"] = o.summary;
  return j;
}

inline Outcome run_experiment(const json& resolved) {
  Setup s = setup(resolved);
  const auto& k = experiment_kind(resolved.at("experiment").get<std::string>());
  Outcome o = k.run(s);
  o.kind = k.name;
  return o;
}

}  // namespace nlp
