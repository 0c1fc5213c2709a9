#pragma once
// Monte Carlo estimators for the nonlocal functionals.
//
// Every double integral is written as
//   int_{x in X} int_{g in G} K(g) f(x, x g) dg dx
// with x uniform in a coordinate box X and g = delta_r(w) drawn from a radial
// proposal matched to K~(r) r^(Q-1) (polar coordinates of Haar measure).

#include "field.hpp"
#include "geometry.hpp"
#include "kernel_checks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace nlp {

class DivergenceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct RadialNode {
  double r = 0.0;
  double w = 0.0;  // importance weight, includes the sphere constant
};

struct RadialDraw {
  std::array<RadialNode, 2> nodes{};
  int count = 1;
  bool tail = false;
};

// Mixture proposal for r:
//  * a two-node quadrature rule on [0, r_c] for kernels not integrable at 0:
//    int_0^rc T h dr ~ c1 h(r_c) + c2 h(r_c/2), exact for h(r) = a r + b r^2
//    (sign-type pair integrands vanish linearly at r = 0);
//  * an r^k piece on [0, r_c] for kernels integrable at 0;
//  * log-spaced r^k pieces on [r_lo, r_hi] interpolating T(r) min(r,1)^(1/2);
//  * a Pareto tail beyond R_out for power-law tails (tail_policy = analytic).
// With cutoff > 0 the proposal lives on [cutoff, inf) and there is no core.
struct SamplerOptions {
  double cutoff = 0.0;
};

class RadialSampler {
 public:
  RadialSampler(const Kernel& k, const McConfig& cfg, SamplerOptions opt = SamplerOptions{}) : k_(k), Q_(k.Q()), sigma_(k.sphere_constant()) {
    cfg.validate();
    const double support = k.support_radius();
    const bool pv = opt.cutoff > 0.0;
    double lo = pv ? opt.cutoff : std::min(cfg.core_radius, support);
    double hi = std::min(cfg.outer_radius, support);
    if (k.tail_kind() == TailKind::fast) hi = std::max(cfg.outer_radius, 60.0 * k.length_scale());

    if (!pv) {
      if (k.integrable_at_zero()) {
        double kin = Q_ - 1.0 - k.near_exponent() + kBeta;
        double m = shape(lo);
        if (m > 0.0) add_branch(Branch::inner, 0.0, lo, kin, m * lo / (kin + 1.0));
      } else {
        double M1 = k.radial_moment(0.0, lo, 1.0), M2 = k.radial_moment(0.0, lo, 2.0);
        if (!std::isfinite(M1) || !std::isfinite(M2))
          throw DivergenceError("kernel is not integrable against min{1,||x||} near the origin");
        core_r_ = lo;
        core_c1_ = sigma_ * (-M1 / lo + 2.0 * M2 / (lo * lo));
        core_c2_ = sigma_ * (4.0 * M1 / lo - 4.0 * M2 / (lo * lo));
        // Branch masses follow sqrt(E[Y^2]) under h(r) ~ min(r, 1), which matches the
        // pieces below; the core nodes see h(r_c) and h(r_c / 2) with overlap h(r_c / 2).
        double a1 = core_c1_ / sigma_, a2 = core_c2_ / sigma_, h1 = std::min(lo, 1.0), h2 = std::min(0.5 * lo, 1.0);
        double second = a1 * a1 * h1 + a2 * a2 * h2 + 2.0 * a1 * a2 * h2;
        add_branch(Branch::core, 0.0, lo, 0.0, std::sqrt(std::max(second, 0.0)));
      }
    }

    if (hi > lo) {
      std::vector<double> nodes;
      double step = std::pow(10.0, 1.0 / cfg.shells_per_decade);
      for (double r = lo; r < hi * (1.0 - 1e-12); r *= step) nodes.push_back(r);
      nodes.push_back(hi);
      if (k.segments())
        for (const auto& s : *k.segments())
          for (double b : {s.lo, s.hi})
            if (b > lo * (1.0 + 1e-9) && b < hi * (1.0 - 1e-9)) nodes.push_back(b);
      std::sort(nodes.begin(), nodes.end());
      nodes.erase(std::unique(nodes.begin(), nodes.end(), [](double a, double b) { return std::abs(a - b) <= 1e-12 * b; }),
                  nodes.end());
      for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        double a = nodes[i], b = nodes[i + 1];
        double ma = shape(a * (1.0 + 1e-12)), mb = shape(b * (1.0 - 1e-12));
        if (ma <= 0.0 && mb <= 0.0) continue;
        double kexp = 0.0;
        if (ma > 0.0 && mb > 0.0) kexp = std::log(mb / ma) / std::log(b / a);
        double mref = ma > 0.0 ? ma : mb, rref = ma > 0.0 ? a : b;
        double mass = mref * std::pow(rref, -kexp) * power_int(a, b, kexp);
        add_branch(Branch::piece, a, b, kexp, mass);
      }
    }

    if (cfg.tail_policy == TailPolicy::analytic && k.tail_kind() == TailKind::power && hi >= cfg.outer_radius) {
      double kt = Q_ - 1.0 - k.tail_exponent();
      if (!(kt < -1.0)) throw DivergenceError("kernel tail is not integrable; use tail_policy=drop");
      double R = cfg.outer_radius;
      double m = shape(R);
      add_branch(Branch::tail, R, std::numeric_limits<double>::infinity(), kt, m * R / (-kt - 1.0));
    }

    double total = 0.0;
    for (const auto& b : branches_) total += b.mass;
    if (!(total > 0.0)) return;
    double acc = 0.0;
    for (auto& b : branches_) {
      b.prob = b.mass / total;
      acc += b.prob;
      cdf_.push_back(acc);
      b.coef = b.prob / power_int(b.a, b.b, b.k);
    }
    cdf_.back() = 1.0;
  }

  bool empty() const { return branches_.empty(); }

  RadialDraw draw(Rng& rng) const {
    RadialDraw d;
    double u = rng.uniform();
    std::size_t i = static_cast<std::size_t>(std::upper_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin());
    if (i >= branches_.size()) i = branches_.size() - 1;
    const Branch& b = branches_[i];
    if (b.kind == Branch::core) {
      d.count = 2;
      d.nodes[0] = {core_r_, core_c1_ / b.prob};
      d.nodes[1] = {0.5 * core_r_, core_c2_ / b.prob};
      return d;
    }
    double r = sample_power(b.a, b.b, b.k, rng.uniform_pos());
    d.nodes[0] = {r, sigma_ * T(r) / (b.coef * std::pow(r, b.k))};
    d.tail = b.kind == Branch::tail;
    return d;
  }

  // T(r) = K~(r) r^(Q-1).
  double T(double r) const { return k_.profile(r) * std::pow(r, Q_ - 1.0); }

 private:
  static constexpr double kBeta = 0.5;

  struct Branch {
    enum Kind { core, inner, piece, tail } kind;
    double a, b, k, mass, prob = 0.0, coef = 0.0;
  };

  double shape(double r) const { return T(r) * std::pow(std::min(r, 1.0), kBeta); }

  void add_branch(typename Branch::Kind kind, double a, double b, double kexp, double mass) {
    if (!(mass > 0.0) || !std::isfinite(mass)) return;
    branches_.push_back({kind, a, b, kexp, mass});
  }

  // int_a^b r^k dr.
  static double power_int(double a, double b, double k) {
    if (std::abs(k + 1.0) < 1e-12) return std::log(b / a);
    double e = k + 1.0;
    if (!std::isfinite(b)) return -std::pow(a, e) / e;
    if (a == 0.0) return std::pow(b, e) / e;
    return (std::pow(b, e) - std::pow(a, e)) / e;
  }

  static double sample_power(double a, double b, double k, double u) {
    if (std::abs(k + 1.0) < 1e-12) return a * std::pow(b / a, u);
    double e = k + 1.0;
    if (!std::isfinite(b)) return a * std::pow(u, 1.0 / e);
    if (a == 0.0) return b * std::pow(u, 1.0 / e);
    double ae = std::pow(a, e), be = std::pow(b, e);
    return std::pow(ae + u * (be - ae), 1.0 / e);
  }

  Kernel k_;
  int Q_;
  double sigma_;
  std::vector<Branch> branches_;
  std::vector<double> cdf_;
  double core_r_ = 0.0, core_c1_ = 0.0, core_c2_ = 0.0;
};

namespace detail {

template <std::size_t N>
std::array<Estimate, N> finish(const std::array<Accumulator, 2 * N>& acc) {
  std::array<Estimate, N> out;
  for (std::size_t i = 0; i < N; ++i) {
    out[i] = acc[i].estimate();
    out[i].tail_correction = acc[N + i].mean;
  }
  return out;
}

}  // namespace detail

// int_{x in X} int_G K(g) f(x, x g) dg dx, with f returning N channels.
template <std::size_t N, class F>
std::array<Estimate, N> pair_integral(const Kernel& K, const Box& X, const McConfig& cfg, std::uint64_t stream, F&& f) {
  RadialSampler sampler(K, cfg);
  const auto& G = K.group();
  const auto& norm = K.norm();
  double V = X.volume();
  if (sampler.empty() || V == 0.0) {
    std::array<Estimate, N> z{};
    for (auto& e : z) e.samples = cfg.samples;
    return z;
  }
  auto acc = run_sharded<2 * N>(cfg.samples, cfg.seed, stream, [&](Rng& rng, std::array<double, 2 * N>& out) {
    Point x = X.sample(rng);
    RadialDraw d = sampler.draw(rng);
    Point w = norm.sample_direction(rng);
    for (int i = 0; i < d.count; ++i) {
      Point y = G.product(x, G.dilate(d.nodes[static_cast<std::size_t>(i)].r, w));
      std::array<double, N> v = f(x, y);
      double s = V * d.nodes[static_cast<std::size_t>(i)].w;
      for (std::size_t c = 0; c < N; ++c) out[c] += s * v[c];
    }
    if (d.tail)
      for (std::size_t c = 0; c < N; ++c) out[N + c] = out[c];
  });
  return detail::finish<N>(acc);
}

// |E|: exact for coordinate boxes and norm balls, Monte Carlo otherwise.
inline Estimate set_volume(const Region& E, std::uint64_t samples = 1u << 20) {
  const auto& node = E.node();
  if (auto* b = dynamic_cast<const regions::detail::CoordBox*>(&node)) return {b->box.volume(), 0.0, 0, 0.0};
  if (auto* b = dynamic_cast<const regions::detail::Ball*>(&node))
    return {b->norm.unit_ball_volume() * std::pow(b->radius, b->norm.Q()), 0.0, 0, 0.0};
  return volume(E, samples);
}

// ---------------------------------------------------------------------------
// Interaction and perimeters.

namespace streams {
inline constexpr std::uint64_t interaction = 0x11;
inline constexpr std::uint64_t perimeter = 0x22;
inline constexpr std::uint64_t three_term = 0x33;
inline constexpr std::uint64_t jfunc = 0x44;
inline constexpr std::uint64_t curvature = 0x55;
inline constexpr std::uint64_t translation = 0x66;
inline constexpr std::uint64_t convolution = 0x77;
inline constexpr std::uint64_t calibration = 0x88;
inline constexpr std::uint64_t coarea = 0x99;
inline constexpr std::uint64_t minimality = 0xaa;
inline constexpr std::uint64_t gamma = 0xbb;
}  // namespace streams

// L_K(A, B) = int_A int_B K(y^-1 x) dy dx.
inline Estimate interaction(const Kernel& K, const Region& A, const Region& B, const McConfig& cfg,
                            std::uint64_t stream = streams::interaction) {
  auto ba = A.bbox(), bb = B.bbox();
  if (!ba && !bb) throw std::invalid_argument("interaction: both regions are unbounded");
  const Region& X = ba ? A : B;
  const Region& Y = ba ? B : A;
  Box box = ba ? *ba : *bb;
  return pair_integral<1>(K, box, cfg, stream, [&](const Point& x, const Point& y) {
    return std::array<double, 1>{X.contains(x) && Y.contains(y) ? 1.0 : 0.0};
  })[0];
}

// P_K(E; Omega) = 1/2 int int_{(G x G) \ (Omega^c x Omega^c)} |chi_E(x) - chi_E(y)| K(y^-1 x).
inline Estimate nonlocal_perimeter(const Kernel& K, const Region& E, const Region& omega, const McConfig& cfg,
                                   std::uint64_t stream = streams::perimeter) {
  auto box = omega.bbox();
  if (!box) throw std::invalid_argument("nonlocal_perimeter: Omega must be bounded");
  return pair_integral<1>(K, *box, cfg, stream, [&](const Point& x, const Point& y) {
    if (!omega.contains(x) || E.contains(x) == E.contains(y)) return std::array<double, 1>{0.0};
    return std::array<double, 1>{omega.contains(y) ? 0.5 : 1.0};
  })[0];
}

// L(E^c cap Omega, E cap Omega) + L(E^c cap Omega, E \ Omega) + L(E cap Omega, E^c \ Omega).
inline Estimate nonlocal_perimeter_three_term(const Kernel& K, const Region& E, const Region& omega, const McConfig& cfg) {
  using namespace regions;
  Region Ec = complement(E), Oc = complement(omega);
  Estimate a = interaction(K, intersect(Ec, omega), intersect(E, omega), cfg, streams::three_term + 1);
  Estimate b = interaction(K, intersect(Ec, omega), intersect(E, Oc), cfg, streams::three_term + 2);
  Estimate c = interaction(K, intersect(E, omega), intersect(Ec, Oc), cfg, streams::three_term + 3);
  return a + b + c;
}

struct JResult {
  Estimate J1, J2, J;
};

// J^1 = int_Omega int_Omega |u(x)-u(y)| K, J^2 = int_Omega int_{Omega^c} |u(x)-u(y)| K, J = J^1/2 + J^2.
inline JResult j_functional(const Kernel& K, const ScalarField& u, const Region& omega, const McConfig& cfg,
                            std::uint64_t stream = streams::jfunc) {
  auto box = omega.bbox();
  if (!box) throw std::invalid_argument("j_functional: Omega must be bounded");
  auto e = pair_integral<3>(K, *box, cfg, stream, [&](const Point& x, const Point& y) {
    std::array<double, 3> v{};
    if (!omega.contains(x)) return v;
    double d = std::abs(u(x) - u(y));
    if (d == 0.0) return v;
    if (omega.contains(y)) {
      v[0] = d;
      v[2] = 0.5 * d;
    } else {
      v[1] = d;
      v[2] = d;
    }
    return v;
  });
  return {e[0], e[1], e[2]};
}

// eps^-1 P_{K_eps}(E; Omega).
inline Estimate rescaled_perimeter(const Kernel& K, double eps, const Region& E, const Region& omega, const McConfig& cfg,
                                   std::uint64_t stream = streams::perimeter) {
  if (!(eps > 0.0)) throw std::invalid_argument("epsilon must be positive");
  return nonlocal_perimeter(K.rescaled(eps), E, omega, cfg, stream) * (1.0 / eps);
}

// ---------------------------------------------------------------------------
// Principal values.

struct CurvatureResult {
  Estimate value;     // extrapolated principal value
  Estimate outer;     // int over ||g|| >= 2 eps
  Estimate shell;     // int over eps <= ||g|| < 2 eps
  Estimate truncated; // int over ||g|| >= eps
  double cutoff = 0.0;
  double rate = 0.0;  // assumed decay exponent of the missing inner part
  bool pv_divergent = false;
};

// PV int s(x, x g) K(g) dg with antithetic pairs (g, g^-1) and Richardson
// extrapolation over the cutoffs eps and 2 eps.
template <class S>
CurvatureResult principal_value(const Kernel& K, const Point& x, const McConfig& cfg, std::uint64_t stream, S&& s) {
  const auto& G = K.group();
  const auto& norm = K.norm();
  double eps = cfg.pv_cutoff;
  RadialSampler sampler(K, cfg, SamplerOptions{eps});
  CurvatureResult res;
  res.cutoff = eps;
  res.rate = K.Q() - K.near_exponent() + 1.0;
  double q = std::pow(2.0, res.rate);
  double boost = q / (q - 1.0);
  if (sampler.empty()) return res;
  auto acc = run_sharded<8>(cfg.samples, cfg.seed, stream, [&](Rng& rng, std::array<double, 8>& out) {
    RadialDraw d = sampler.draw(rng);
    Point w = norm.sample_direction(rng);
    Point g = G.dilate(d.nodes[0].r, w);
    double v = 0.5 * d.nodes[0].w * (s(G.product(x, g)) + s(G.product(x, G.inverse(g))));
    bool inner = d.nodes[0].r < 2.0 * eps;
    out[0] = inner ? boost * v : v;
    out[1] = inner ? 0.0 : v;
    out[2] = inner ? v : 0.0;
    out[3] = v;
    if (d.tail)
      for (int c = 0; c < 4; ++c) out[4 + c] = out[c];
  });
  auto e = detail::finish<4>(acc);
  res.value = e[0];
  res.outer = e[1];
  res.shell = e[2];
  res.truncated = e[3];
  // A convergent principal value has antithetic averages that vanish as r -> 0, so
  // the shell integral is a small fraction of the kernel mass of the shell.
  double shell_mass = K.sphere_constant() * K.radial_moment(eps, 2.0 * eps, 0.0);
  res.pv_divergent = std::abs(res.shell.value) > 0.5 * shell_mass && std::abs(res.shell.value) > 3.0 * res.shell.std_error;
  return res;
}

// H_K[E](x) = PV int (chi_{E^c} - chi_E)(y) K(y^-1 x) dy.
inline CurvatureResult mean_curvature(const Kernel& K, const Region& E, const Point& x, const McConfig& cfg,
                                      std::uint64_t stream = streams::curvature) {
  return principal_value(K, x, cfg, stream, [&](const Point& y) { return E.contains(y) ? -1.0 : 1.0; });
}

inline double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// H_K(phi)(x) = PV int sign(phi(x) - phi(y)) K(y^-1 x) dy.
inline CurvatureResult mean_curvature_field(const Kernel& K, const RealField& phi, const Point& x, const McConfig& cfg,
                                            std::uint64_t stream = streams::curvature) {
  double px = phi(x);
  return principal_value(K, x, cfg, stream, [&](const Point& y) { return sign(px - phi(y)); });
}

// F(x) = int_{||g|| >= cutoff} sign(phi(x) - phi(x g)) K(g) dg, no extrapolation.
inline Estimate truncated_curvature(const Kernel& K, const RealField& phi, const Point& x, double cutoff,
                                    const McConfig& cfg, std::uint64_t stream = streams::curvature) {
  McConfig c = cfg;
  c.pv_cutoff = cutoff;
  double px = phi(x);
  return principal_value(K, x, c, stream, [&](const Point& y) { return sign(px - phi(y)); }).truncated;
}

// ---------------------------------------------------------------------------
// Inequalities.

struct InequalityResult {
  Estimate lhs;
  Estimate rhs;
  bool pass = false;
};

// One-sided comparison lhs <= rhs within k combined standard errors.
inline bool one_sided(const Estimate& lhs, const Estimate& rhs, double k = 3.0) {
  return lhs.value - rhs.value <= k * combined_sigma(lhs, rhs) + 1e-12 * std::abs(rhs.value);
}

namespace detail {
// int_G |u(x h) - u(x)| dx for u supported in S.
inline double translation_l1_sample(const StratifiedGroup& G, const ScalarField& u, const Box& S, const Point& x,
                                    const Point& h) {
  double a = std::abs(u(G.product(x, h)) - u(x));
  double b = S.contains(G.product(x, G.inverse(h))) ? 0.0 : u(x);
  return a + b;
}
}  // namespace detail

// int |u(x g) - u(x)| dx <= d(0, g) |D_X u|(G), with d(0,g) = ||g||.
inline InequalityResult translation_estimate_check(const HomogeneousNorm& norm, const ScalarField& u, const Estimate& tv,
                                                   const Point& g, const McConfig& cfg,
                                                   std::uint64_t stream = streams::translation) {
  const auto& G = norm.group();
  auto S = u.support();
  if (!S) throw std::invalid_argument("translation_estimate_check: u needs a bounded support");
  double V = S->volume();
  auto acc = run_sharded<1>(cfg.samples, cfg.seed, stream, [&](Rng& rng, std::array<double, 1>& out) {
    Point x = S->sample(rng);
    out[0] = V * detail::translation_l1_sample(G, u, *S, x, g);
  });
  InequalityResult r;
  r.lhs = acc[0].estimate();
  r.rhs = tv * norm(g);
  r.pass = one_sided(r.lhs, r.rhs);
  return r;
}

// ||grad_X u||_{L^1} for a bump field by Monte Carlo on the analytic gradient.
inline Estimate bump_total_variation(const StratifiedGroup& G, const Point& widths, const McConfig& cfg) {
  Box S = Box::centered(widths);
  double V = S.volume();
  auto acc = run_sharded<1>(cfg.samples, cfg.seed, streams::translation + 1, [&](Rng& rng, std::array<double, 1>& out) {
    Point x = S.sample(rng);
    out[0] = V * fields::bump_horizontal_gradient(G, widths, x).norm();
  });
  return acc[0].estimate();
}

// L_K(E,F) <= V(E,F) int min{1, ||xi||} K(xi) dxi,
// V(E,F) = min{ max{P(E)/2, |E|}, max{P(F)/2, |F|} }.
inline InequalityResult finiteness_bound_check(const Kernel& K, const Region& E, const Region& F, const McConfig& cfg) {
  const auto& G = K.group();
  auto full = regions::full(G);
  auto vee = [&](const Region& A) {
    double p = horizontal_perimeter(A, full).value;
    double v = set_volume(A).value;
    return std::max(0.5 * p, v);
  };
  InequalityResult r;
  bool e_empty = E.tag() == "empty", f_empty = F.tag() == "empty";
  double V = e_empty || f_empty ? 0.0 : std::min(vee(E), vee(F));
  r.lhs = e_empty || f_empty ? Estimate{0.0, 0.0, 0, 0.0} : interaction(K, E, F, cfg);
  r.rhs = {V * K.min1_moment(), 0.0, 0, 0.0};
  r.pass = one_sided(r.lhs, r.rhs);
  return r;
}

// int int (G*G)(y) |u(x y) - u(x)| dy dx <= 4 ||G||_1 J_G(u; G).
inline InequalityResult convolution_inequality_check(const Kernel& Gk, const ScalarField& u, const McConfig& cfg,
                                                     std::uint64_t stream = streams::convolution) {
  double l1 = Gk.l1_norm();
  if (!std::isfinite(l1)) throw DivergenceError("convolution_inequality_check: kernel is not integrable");
  auto S = u.support();
  if (!S) throw std::invalid_argument("convolution_inequality_check: u needs a bounded support");
  const auto& G = Gk.group();
  const auto& norm = Gk.norm();
  RadialSampler sampler(Gk, cfg);
  double V = S->volume();
  // (G*G)(y) dy is the law of y = a b with a, b independent draws from G.
  auto lhs = run_sharded<1>(cfg.samples, cfg.seed, stream, [&](Rng& rng, std::array<double, 1>& out) {
    Point x = S->sample(rng);
    RadialDraw da = sampler.draw(rng), db = sampler.draw(rng);
    Point a = G.dilate(da.nodes[0].r, norm.sample_direction(rng));
    Point b = G.dilate(db.nodes[0].r, norm.sample_direction(rng));
    out[0] = V * da.nodes[0].w * db.nodes[0].w * detail::translation_l1_sample(G, u, *S, x, G.product(a, b));
  });
  // J_G(u; G) = 1/2 int_G G(h) int_G |u(x h) - u(x)| dx dh.
  auto J = run_sharded<1>(cfg.samples, cfg.seed, stream + 1, [&](Rng& rng, std::array<double, 1>& out) {
    Point x = S->sample(rng);
    RadialDraw d = sampler.draw(rng);
    Point h = G.dilate(d.nodes[0].r, norm.sample_direction(rng));
    out[0] = 0.5 * V * d.nodes[0].w * detail::translation_l1_sample(G, u, *S, x, h);
  });
  InequalityResult r;
  r.lhs = lhs[0].estimate();
  r.rhs = J[0].estimate() * (4.0 * l1);
  r.pass = one_sided(r.lhs, r.rhs);
  return r;
}

struct PioveRow {
  double eps;
  Estimate lhs;  // eps^-1 L_eps(E, F)
  double rhs;    // P_G(N)/2 int K(xi) ||xi|| dxi
  bool pass;
};

// eps^-1 L_{K_eps}(E, F) <= P_G(N)/2 int K ||xi|| for E in N, F in N^c.
inline std::vector<PioveRow> piove_bound_check(const Kernel& K, const Region& E, const Region& F, double perimeter_N,
                                               const std::vector<double>& eps_grid, const McConfig& cfg) {
  if (!strong_integrability(K)) throw DivergenceError("piove_bound_check: int K(xi) ||xi|| dxi diverges");
  double rhs = 0.5 * perimeter_N * K.first_moment();
  std::vector<PioveRow> rows;
  std::uint64_t s = 0;
  for (double eps : eps_grid) {
    PioveRow row{eps, {}, rhs, true};
    if (F.tag() != "empty" && E.tag() != "empty")
      row.lhs = interaction(K.rescaled(eps), E, F, cfg, streams::interaction + 0x100 + s++) * (1.0 / eps);
    row.pass = one_sided(row.lhs, {rhs, 0.0, 0, 0.0});
    rows.push_back(row);
  }
  return rows;
}

}  // namespace nlp
