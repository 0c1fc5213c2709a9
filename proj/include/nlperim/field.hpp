#pragma once
// [0,1]-valued fields u and real-valued foliation functions phi.

#include "region.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace nlp {

class ScalarField {
 public:
  struct Node {
    virtual ~Node() = default;
    virtual double value(const Point& x) const = 0;
    // u vanishes outside this box.
    virtual std::optional<Box> support() const { return std::nullopt; }
    // Finite superset of the range for piecewise-constant fields.
    virtual std::optional<std::vector<double>> levels() const { return std::nullopt; }
    virtual std::string tag() const = 0;
  };

  ScalarField() = default;
  ScalarField(std::shared_ptr<const StratifiedGroup> g, std::shared_ptr<const Node> n) : g_(std::move(g)), n_(std::move(n)) {}

  double operator()(const Point& x) const { return n_->value(x); }
  std::optional<Box> support() const { return n_->support(); }
  std::optional<std::vector<double>> levels() const { return n_->levels(); }
  bool piecewise_constant() const { return levels().has_value(); }
  std::string tag() const { return n_->tag(); }
  const StratifiedGroup& group() const { return *g_; }
  const std::shared_ptr<const StratifiedGroup>& group_ptr() const { return g_; }

 private:
  std::shared_ptr<const StratifiedGroup> g_;
  std::shared_ptr<const Node> n_;
};

// Real-valued function on the group, used as a foliation phi.
struct RealField {
  std::function<double(const Point&)> fn;
  std::string tag;
  double operator()(const Point& x) const { return fn(x); }
};

inline RealField linear_phi(const StratifiedGroup& g, const HorizontalVector& nu, double offset = 0.0) {
  if (nu.size() != g.horizontal_dim()) throw DimensionError("normal must live in the first layer");
  return {[nu, offset](const Point& x) {
            double s = 0.0;
            for (int i = 0; i < nu.size(); ++i) s += x[i] * nu[i];
            return s - offset;
          },
          "linear"};
}

inline RealField negated(const RealField& f) {
  return {[f](const Point& x) { return -f(x); }, "neg(" + f.tag + ")"};
}

namespace fields {
namespace detail {

struct Indicator : ScalarField::Node {
  Region a;
  explicit Indicator(Region r) : a(std::move(r)) {}
  double value(const Point& x) const override { return a.contains(x) ? 1.0 : 0.0; }
  std::optional<Box> support() const override { return a.bbox(); }
  std::optional<std::vector<double>> levels() const override { return std::vector<double>{0.0, 1.0}; }
  std::string tag() const override { return "indicator"; }
};

struct Constant : ScalarField::Node {
  double c;
  explicit Constant(double v) : c(v) {}
  double value(const Point&) const override { return c; }
  std::optional<std::vector<double>> levels() const override { return std::vector<double>{c}; }
  std::string tag() const override { return "constant"; }
};

struct Multilevel : ScalarField::Node {
  std::vector<double> w;
  std::vector<Region> sets;
  Multilevel(std::vector<double> ws, std::vector<Region> rs) : w(std::move(ws)), sets(std::move(rs)) {}
  double value(const Point& x) const override {
    double s = 0.0;
    for (std::size_t i = 0; i < sets.size(); ++i)
      if (sets[i].contains(x)) s += w[i];
    return std::clamp(s, 0.0, 1.0);
  }
  std::optional<Box> support() const override {
    std::optional<Box> b;
    for (const auto& r : sets) {
      auto rb = r.bbox();
      if (!rb) return std::nullopt;
      b = b ? b->hull(*rb) : *rb;
    }
    return b;
  }
  std::optional<std::vector<double>> levels() const override {
    std::set<double> v;
    std::size_t k = sets.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
      double s = 0.0;
      for (std::size_t i = 0; i < k; ++i)
        if (mask & (std::size_t{1} << i)) s += w[i];
      v.insert(std::clamp(s, 0.0, 1.0));
    }
    return std::vector<double>(v.begin(), v.end());
  }
  std::string tag() const override { return "multilevel"; }
};

struct ClampedLinear : ScalarField::Node {
  HorizontalVector nu;
  double offset, slope;
  ClampedLinear(HorizontalVector n, double o, double s) : nu(std::move(n)), offset(o), slope(s) {}
  double value(const Point& x) const override {
    double s = 0.0;
    for (int i = 0; i < nu.size(); ++i) s += x[i] * nu[i];
    return std::clamp(slope * (s - offset), 0.0, 1.0);
  }
  std::string tag() const override { return "smooth"; }
};

struct Masked : ScalarField::Node {
  ScalarField inner;
  Region omega, outer;
  Masked(ScalarField u, Region o, Region e0) : inner(std::move(u)), omega(std::move(o)), outer(std::move(e0)) {}
  double value(const Point& x) const override {
    if (omega.contains(x)) return inner(x);
    return outer.contains(x) ? 1.0 : 0.0;
  }
  std::optional<std::vector<double>> levels() const override {
    auto l = inner.levels();
    if (!l) return std::nullopt;
    std::set<double> v(l->begin(), l->end());
    v.insert(0.0);
    v.insert(1.0);
    return std::vector<double>(v.begin(), v.end());
  }
  std::string tag() const override { return inner.tag(); }
};

struct Mixture : ScalarField::Node {
  ScalarField a, b;
  double w;
  Mixture(ScalarField x, ScalarField y, double wt) : a(std::move(x)), b(std::move(y)), w(wt) {}
  double value(const Point& x) const override { return w * a(x) + (1.0 - w) * b(x); }
  std::optional<Box> support() const override {
    auto sa = a.support(), sb = b.support();
    if (sa && sb) return sa->hull(*sb);
    return std::nullopt;
  }
  std::optional<std::vector<double>> levels() const override {
    auto la = a.levels(), lb = b.levels();
    if (!la || !lb) return std::nullopt;
    std::set<double> v;
    for (double p : *la)
      for (double q : *lb) v.insert(w * p + (1.0 - w) * q);
    return std::vector<double>(v.begin(), v.end());
  }
  std::string tag() const override { return "multilevel"; }
};

// prod_k psi(x_k / w_k), psi(s) = (1 - s^2)^3 on |s| < 1.
struct Bump : ScalarField::Node {
  Point widths;
  explicit Bump(Point w) : widths(std::move(w)) {}
  static double psi(double s) {
    if (std::abs(s) >= 1.0) return 0.0;
    double t = 1.0 - s * s;
    return t * t * t;
  }
  static double dpsi(double s) {
    if (std::abs(s) >= 1.0) return 0.0;
    double t = 1.0 - s * s;
    return -6.0 * s * t * t;
  }
  double value(const Point& x) const override {
    double v = 1.0;
    for (int k = 0; k < x.size() && v != 0.0; ++k) v *= psi(x[k] / widths[k]);
    return v;
  }
  std::optional<Box> support() const override { return Box::centered(widths); }
  std::string tag() const override { return "smooth"; }
};

struct Function : ScalarField::Node {
  std::function<double(const Point&)> fn;
  std::optional<Box> box;
  std::string name;
  Function(std::function<double(const Point&)> f, std::optional<Box> b, std::string t)
      : fn(std::move(f)), box(std::move(b)), name(std::move(t)) {}
  double value(const Point& x) const override { return fn(x); }
  std::optional<Box> support() const override { return box; }
  std::string tag() const override { return name; }
};

}  // namespace detail

inline ScalarField indicator(const Region& a) { return {a.group_ptr(), std::make_shared<detail::Indicator>(a)}; }

inline ScalarField constant(const StratifiedGroup& g, double c) {
  if (c < 0.0 || c > 1.0) throw std::invalid_argument("field values must lie in [0,1]");
  return {regions::detail::share(g), std::make_shared<detail::Constant>(c)};
}

// sum_i w_i chi_{A_i}, clamped to [0,1].
inline ScalarField multilevel(std::vector<double> w, std::vector<Region> sets) {
  if (w.size() != sets.size() || sets.empty()) throw std::invalid_argument("multilevel: weights and sets differ in size");
  auto g = sets.front().group_ptr();
  return {g, std::make_shared<detail::Multilevel>(std::move(w), std::move(sets))};
}

// clamp(slope (<pi1 log x, nu> - offset), 0, 1).
inline ScalarField clamped_linear(const StratifiedGroup& g, const HorizontalVector& nu, double offset = 0.0,
                                  double slope = 1.0) {
  if (nu.size() != g.horizontal_dim()) throw DimensionError("normal must live in the first layer");
  return {regions::detail::share(g), std::make_shared<detail::ClampedLinear>(nu, offset, slope)};
}

// u inside omega, chi_{outer} outside.
inline ScalarField masked(const ScalarField& u, const Region& omega, const Region& outer) {
  return {u.group_ptr(), std::make_shared<detail::Masked>(u, omega, outer)};
}

inline ScalarField mixture(const ScalarField& a, const ScalarField& b, double w) {
  if (w < 0.0 || w > 1.0) throw std::invalid_argument("mixture weight must lie in [0,1]");
  return {a.group_ptr(), std::make_shared<detail::Mixture>(a, b, w)};
}

inline ScalarField bump(const StratifiedGroup& g, const Point& widths) {
  g.check(widths);
  return {regions::detail::share(g), std::make_shared<detail::Bump>(widths)};
}

inline ScalarField function(const StratifiedGroup& g, std::function<double(const Point&)> fn, std::optional<Box> support,
                            std::string tag) {
  return {regions::detail::share(g), std::make_shared<detail::Function>(std::move(fn), std::move(support), std::move(tag))};
}

// Horizontal gradient (X_1 u, ..., X_m u) of a bump field.
inline HorizontalVector bump_horizontal_gradient(const StratifiedGroup& g, const Point& widths, const Point& x) {
  int n = g.dim();
  Point grad(n);
  for (int k = 0; k < n; ++k) {
    double d = detail::Bump::dpsi(x[k] / widths[k]) / widths[k];
    for (int l = 0; l < n && d != 0.0; ++l)
      if (l != k) d *= detail::Bump::psi(x[l] / widths[l]);
    grad[k] = d;
  }
  HorizontalVector h(g.horizontal_dim());
  for (int j = 0; j < g.horizontal_dim(); ++j) h[j] = g.left_invariant_field(j, x).dot(grad);
  return h;
}

}  // namespace fields

// E_t = { u > t }.
inline Region level_set(const ScalarField& u, double t) {
  const auto& g = u.group();
  if (t >= 1.0) return regions::empty(g);
  std::optional<Box> box;
  if (t >= 0.0) box = u.support();
  return regions::oracle(g, [u, t](const Point& x) { return u(x) > t; }, box, "level-set");
}

}  // namespace nlp
