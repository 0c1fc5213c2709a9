#pragma once
// Membership oracles for measurable sets.

#include "box.hpp"
#include "norm.hpp"
#include "voxel.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace nlp {

class Region {
 public:
  struct Node {
    virtual ~Node() = default;
    virtual bool contains(const Point& x) const = 0;
    virtual std::optional<Box> bbox() const = 0;
    virtual std::string tag() const = 0;
  };

  Region() = default;
  Region(std::shared_ptr<const StratifiedGroup> g, std::shared_ptr<const Node> n) : g_(std::move(g)), n_(std::move(n)) {}

  bool contains(const Point& x) const { return n_->contains(x); }
  std::optional<Box> bbox() const { return n_->bbox(); }
  bool bounded() const { return bbox().has_value(); }
  std::string tag() const { return n_->tag(); }
  const StratifiedGroup& group() const { return *g_; }
  const std::shared_ptr<const StratifiedGroup>& group_ptr() const { return g_; }
  const Node& node() const { return *n_; }

 private:
  std::shared_ptr<const StratifiedGroup> g_;
  std::shared_ptr<const Node> n_;
};

namespace regions {
namespace detail {

using GPtr = std::shared_ptr<const StratifiedGroup>;

struct Halfspace : Region::Node {
  HorizontalVector nu;
  double offset;
  Halfspace(HorizontalVector n, double o) : nu(std::move(n)), offset(o) {}
  bool contains(const Point& x) const override {
    double s = 0.0;
    for (int i = 0; i < nu.size(); ++i) s += x[i] * nu[i];
    return s >= offset;
  }
  std::optional<Box> bbox() const override { return std::nullopt; }
  std::string tag() const override { return "halfspace"; }
};

struct PerturbedHalfspace : Region::Node {
  HorizontalVector nu;
  double amplitude, width;
  PerturbedHalfspace(HorizontalVector n, double a, double w) : nu(std::move(n)), amplitude(a), width(w) {}
  bool contains(const Point& x) const override {
    double s = 0.0, r2 = 0.0;
    for (int i = 0; i < nu.size(); ++i) s += x[i] * nu[i];
    for (int i = 0; i < x.size(); ++i) r2 += x[i] * x[i];
    return s + amplitude * std::exp(-r2 / (width * width)) >= 0.0;
  }
  std::optional<Box> bbox() const override { return std::nullopt; }
  std::string tag() const override { return "perturbed-halfspace"; }
};

struct Ball : Region::Node {
  GPtr g;
  HomogeneousNorm norm;
  Point center;
  double radius;
  Ball(GPtr gp, HomogeneousNorm n, Point c, double r) : g(std::move(gp)), norm(std::move(n)), center(std::move(c)), radius(r) {}
  bool contains(const Point& x) const override { return norm(g->product(g->inverse(center), x)) < radius; }
  std::optional<Box> bbox() const override {
    Box unit = Box::centered(norm.ball_halfwidths()).dilated(*g, radius);
    return translate_box(*g, center, unit);
  }
  std::string tag() const override { return "ball"; }
};

struct CoordBox : Region::Node {
  Box box;
  explicit CoordBox(Box b) : box(std::move(b)) {}
  bool contains(const Point& x) const override { return box.contains(x); }
  std::optional<Box> bbox() const override { return box; }
  std::string tag() const override { return "box"; }
};

struct Voxel : Region::Node {
  std::shared_ptr<const VoxelMask> mask;
  explicit Voxel(std::shared_ptr<const VoxelMask> m) : mask(std::move(m)) {}
  bool contains(const Point& x) const override { return mask->contains(x); }
  std::optional<Box> bbox() const override { return mask->box(); }
  std::string tag() const override { return "voxel"; }
};

struct Constant : Region::Node {
  bool full;
  int n;
  Constant(bool f, int dim) : full(f), n(dim) {}
  bool contains(const Point&) const override { return full; }
  std::optional<Box> bbox() const override {
    if (full) return std::nullopt;
    return Box{Point(n), Point(n)};
  }
  std::string tag() const override { return full ? "full" : "empty"; }
};

struct Complement : Region::Node {
  Region a;
  explicit Complement(Region r) : a(std::move(r)) {}
  bool contains(const Point& x) const override { return !a.contains(x); }
  std::optional<Box> bbox() const override { return std::nullopt; }
  std::string tag() const override { return "boolean-combination"; }
};

struct Intersection : Region::Node {
  Region a, b;
  Intersection(Region x, Region y) : a(std::move(x)), b(std::move(y)) {}
  bool contains(const Point& x) const override { return a.contains(x) && b.contains(x); }
  std::optional<Box> bbox() const override {
    auto ba = a.bbox(), bb = b.bbox();
    if (ba && bb) return ba->intersect(*bb);
    if (ba) return ba;
    return bb;
  }
  std::string tag() const override { return "boolean-combination"; }
};

struct Union : Region::Node {
  Region a, b;
  Union(Region x, Region y) : a(std::move(x)), b(std::move(y)) {}
  bool contains(const Point& x) const override { return a.contains(x) || b.contains(x); }
  std::optional<Box> bbox() const override {
    auto ba = a.bbox(), bb = b.bbox();
    if (ba && bb) return ba->hull(*bb);
    return std::nullopt;
  }
  std::string tag() const override { return "boolean-combination"; }
};

struct Translated : Region::Node {
  GPtr g;
  Point p, pinv;
  Region a;
  Translated(GPtr gp, Point q, Region r) : g(std::move(gp)), p(q), pinv(-q), a(std::move(r)) {}
  bool contains(const Point& x) const override { return a.contains(g->product(pinv, x)); }
  std::optional<Box> bbox() const override {
    auto b = a.bbox();
    if (!b) return std::nullopt;
    return translate_box(*g, p, *b);
  }
  std::string tag() const override { return a.tag(); }
};

struct Dilated : Region::Node {
  GPtr g;
  double lambda;
  Region a;
  Dilated(GPtr gp, double l, Region r) : g(std::move(gp)), lambda(l), a(std::move(r)) {}
  bool contains(const Point& x) const override { return a.contains(g->dilate(1.0 / lambda, x)); }
  std::optional<Box> bbox() const override {
    auto b = a.bbox();
    if (!b) return std::nullopt;
    return b->dilated(*g, lambda);
  }
  std::string tag() const override { return a.tag(); }
};

struct Oracle : Region::Node {
  std::function<bool(const Point&)> fn;
  std::optional<Box> box;
  std::string name;
  Oracle(std::function<bool(const Point&)> f, std::optional<Box> b, std::string t)
      : fn(std::move(f)), box(std::move(b)), name(std::move(t)) {}
  bool contains(const Point& x) const override { return fn(x); }
  std::optional<Box> bbox() const override { return box; }
  std::string tag() const override { return name; }
};

inline GPtr share(const StratifiedGroup& g) { return std::make_shared<const StratifiedGroup>(g); }

}  // namespace detail

// H_nu(offset) = { <pi1 log x, nu> >= offset }.
inline Region halfspace(const StratifiedGroup& g, const HorizontalVector& nu, double offset = 0.0) {
  if (nu.size() != g.horizontal_dim()) throw DimensionError("normal must live in the first layer");
  if (nu.norm() == 0.0) throw std::invalid_argument("halfspace normal must be nonzero");
  return {detail::share(g), std::make_shared<detail::Halfspace>(nu, offset)};
}

// { <pi1 log x, nu> + a exp(-|x|^2/w^2) >= 0 }.
inline Region perturbed_halfspace(const StratifiedGroup& g, const HorizontalVector& nu, double amplitude, double width) {
  if (nu.size() != g.horizontal_dim()) throw DimensionError("normal must live in the first layer");
  if (nu.norm() == 0.0) throw std::invalid_argument("halfspace normal must be nonzero");
  return {detail::share(g), std::make_shared<detail::PerturbedHalfspace>(nu, amplitude, width)};
}

// { x : ||center^-1 x|| < radius }.
inline Region ball(const HomogeneousNorm& norm, const Point& center, double radius) {
  norm.group().check(center);
  if (!(radius > 0.0)) throw std::invalid_argument("ball radius must be positive");
  auto g = detail::share(norm.group());
  return {g, std::make_shared<detail::Ball>(g, norm, center, radius)};
}

inline Region unit_ball(const HomogeneousNorm& norm) { return ball(norm, norm.group().identity(), 1.0); }

inline Region coordinate_box(const StratifiedGroup& g, const Box& b) {
  g.check(b.lo);
  return {detail::share(g), std::make_shared<detail::CoordBox>(b)};
}

inline Region voxel(const StratifiedGroup& g, std::shared_ptr<const VoxelMask> m) {
  if (m->box().dim() != g.dim()) throw DimensionError("voxel grid dimension mismatch");
  return {detail::share(g), std::make_shared<detail::Voxel>(std::move(m))};
}

inline Region empty(const StratifiedGroup& g) { return {detail::share(g), std::make_shared<detail::Constant>(false, g.dim())}; }
inline Region full(const StratifiedGroup& g) { return {detail::share(g), std::make_shared<detail::Constant>(true, g.dim())}; }

inline Region complement(const Region& a) { return {a.group_ptr(), std::make_shared<detail::Complement>(a)}; }
inline Region intersect(const Region& a, const Region& b) { return {a.group_ptr(), std::make_shared<detail::Intersection>(a, b)}; }
inline Region unite(const Region& a, const Region& b) { return {a.group_ptr(), std::make_shared<detail::Union>(a, b)}; }
inline Region difference(const Region& a, const Region& b) { return intersect(a, complement(b)); }

// Left translate tau_p A = { p a }.
inline Region translated(const Region& a, const Point& p) {
  a.group().check(p);
  return {a.group_ptr(), std::make_shared<detail::Translated>(a.group_ptr(), p, a)};
}

inline Region dilated(const Region& a, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("dilation factor must be positive");
  return {a.group_ptr(), std::make_shared<detail::Dilated>(a.group_ptr(), lambda, a)};
}

inline Region oracle(const StratifiedGroup& g, std::function<bool(const Point&)> fn, std::optional<Box> bbox,
                     std::string tag) {
  return {detail::share(g), std::make_shared<detail::Oracle>(std::move(fn), std::move(bbox), std::move(tag))};
}

}  // namespace regions
}  // namespace nlp
