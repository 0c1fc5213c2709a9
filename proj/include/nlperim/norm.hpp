#pragma once
// Homogeneous symmetric norms and the polar decomposition of Haar measure.

#include "estimate.hpp"
#include "group.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nlp {

enum class NormKind { koranyi, box, euclidean };

inline std::string to_string(NormKind k) {
  switch (k) {
    case NormKind::koranyi: return "koranyi";
    case NormKind::box: return "box";
    case NormKind::euclidean: return "euclidean";
  }
  return "?";
}

inline NormKind norm_kind_from(const std::string& s) {
  if (s == "koranyi") return NormKind::koranyi;
  if (s == "box") return NormKind::box;
  if (s == "euclidean") return NormKind::euclidean;
  throw std::invalid_argument("unknown norm '" + s + "'");
}

class HomogeneousNorm {
 public:
  // Constant c in ((a^2+b^2)^2 + c t^2)^(1/4).
  static constexpr double kKoranyiConstant = 16.0;

  HomogeneousNorm() = default;
  HomogeneousNorm(StratifiedGroup g, NormKind kind) : g_(std::move(g)), kind_(kind) {
    if (kind_ == NormKind::koranyi && !(g_.dim() == 3 && g_.layer_dims() == std::vector<int>{2, 1}))
      throw std::invalid_argument("the Koranyi norm is defined on the Heisenberg group only");
    if (kind_ == NormKind::euclidean && !g_.abelian())
      throw std::invalid_argument("the euclidean norm is homogeneous only on abelian groups");
  }

  const StratifiedGroup& group() const { return g_; }
  NormKind kind() const { return kind_; }
  std::string name() const { return to_string(kind_); }
  int Q() const { return g_.homogeneous_dim(); }

  double operator()(const Point& x) const {
    g_.check(x);
    switch (kind_) {
      case NormKind::koranyi: {
        double h = x[0] * x[0] + x[1] * x[1];
        return std::pow(h * h + kKoranyiConstant * x[2] * x[2], 0.25);
      }
      case NormKind::euclidean: return x.norm();
      case NormKind::box: return std::max(raw_box(x), raw_box(g_.inverse(x)));
    }
    return 0.0;
  }

  double unit_ball_volume() const {
    switch (kind_) {
      case NormKind::koranyi: return std::numbers::pi * std::numbers::pi / 8.0;
      case NormKind::box: return std::pow(2.0, g_.dim());
      case NormKind::euclidean: {
        double n = g_.dim();
        return std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
      }
    }
    return 0.0;
  }

  // sigma(S) in  int f = int_0^inf int_S f(delta_r w) r^(Q-1) dsigma(w) dr.
  double sphere_constant() const { return Q() * unit_ball_volume(); }

  // Half-widths of the coordinate box containing the unit ball.
  Point ball_halfwidths() const {
    Point h(g_.dim());
    for (int i = 0; i < g_.dim(); ++i) h[i] = 1.0;
    if (kind_ == NormKind::koranyi) h[2] = 1.0 / std::sqrt(kKoranyiConstant);
    return h;
  }

  Point sample_ball(Rng& rng) const {
    Point hw = ball_halfwidths();
    Point z(g_.dim());
    for (;;) {
      for (int i = 0; i < g_.dim(); ++i) z[i] = rng.uniform(-hw[i], hw[i]);
      if ((*this)(z) < 1.0) return z;
    }
  }

  // Unit-norm point distributed as the normalized cone measure on the sphere.
  Point sample_direction(Rng& rng) const {
    for (;;) {
      Point z = sample_ball(rng);
      double r = (*this)(z);
      if (r > 1e-12) return g_.dilate(1.0 / r, z);
    }
  }

  // sup ||xy|| / (||x|| + ||y||) over random pairs, a lower estimate of the
  // quasi-triangle constant.
  double quasi_triangle_constant(std::uint64_t samples, std::uint64_t seed) const {
    Rng rng(seed);
    double best = 1.0;
    for (std::uint64_t i = 0; i < samples; ++i) {
      Point x = g_.dilate(rng.uniform(0.05, 2.0), sample_direction(rng));
      Point y = g_.dilate(rng.uniform(0.05, 2.0), sample_direction(rng));
      best = std::max(best, (*this)(g_.product(x, y)) / ((*this)(x) + (*this)(y)));
    }
    return best;
  }

 private:
  double raw_box(const Point& x) const {
    double m = 0.0;
    for (int i = 0; i < g_.dim(); ++i) m = std::max(m, std::pow(std::abs(x[i]), 1.0 / g_.degree(i)));
    return m;
  }

  StratifiedGroup g_;
  NormKind kind_ = NormKind::euclidean;
};

inline double koranyi_norm(const Point& x) {
  if (x.size() != 3) throw DimensionError("Koranyi norm expects a Heisenberg point");
  double h = x[0] * x[0] + x[1] * x[1];
  return std::pow(h * h + HomogeneousNorm::kKoranyiConstant * x[2] * x[2], 0.25);
}

inline double box_norm(const StratifiedGroup& g, const Point& x) { return HomogeneousNorm(g, NormKind::box)(x); }

}  // namespace nlp
