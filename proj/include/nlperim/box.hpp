#pragma once
// Coordinate boxes and interval bounds for left translations.

#include "estimate.hpp"
#include "group.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nlp {

struct Box {
  Point lo, hi;

  Box() = default;
  Box(Point l, Point h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo.size() != hi.size()) throw DimensionError("box corner dimension mismatch");
  }
  static Box centered(const Point& halfwidths) { return {-halfwidths, halfwidths}; }

  int dim() const { return lo.size(); }
  double volume() const {
    double v = 1.0;
    for (int i = 0; i < dim(); ++i) v *= std::max(0.0, hi[i] - lo[i]);
    return v;
  }
  bool contains(const Point& x) const {
    for (int i = 0; i < dim(); ++i)
      if (x[i] < lo[i] || x[i] > hi[i]) return false;
    return true;
  }
  Point sample(Rng& rng) const {
    Point x(dim());
    for (int i = 0; i < dim(); ++i) x[i] = rng.uniform(lo[i], hi[i]);
    return x;
  }
  Box intersect(const Box& o) const {
    Box r = *this;
    for (int i = 0; i < dim(); ++i) {
      r.lo[i] = std::max(lo[i], o.lo[i]);
      r.hi[i] = std::min(hi[i], o.hi[i]);
      if (r.hi[i] < r.lo[i]) r.hi[i] = r.lo[i];
    }
    return r;
  }
  Box hull(const Box& o) const {
    Box r = *this;
    for (int i = 0; i < dim(); ++i) {
      r.lo[i] = std::min(lo[i], o.lo[i]);
      r.hi[i] = std::max(hi[i], o.hi[i]);
    }
    return r;
  }
  Box expanded(double margin) const {
    Box r = *this;
    for (int i = 0; i < dim(); ++i) {
      r.lo[i] -= margin;
      r.hi[i] += margin;
    }
    return r;
  }
  Box dilated(const StratifiedGroup& g, double lambda) const { return {g.dilate(lambda, lo), g.dilate(lambda, hi)}; }
};

struct Interval {
  double lo = 0.0, hi = 0.0;
  Interval operator+(const Interval& o) const { return {lo + o.lo, hi + o.hi}; }
  Interval operator-(const Interval& o) const { return {lo - o.hi, hi - o.lo}; }
  Interval operator*(const Interval& o) const {
    double a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
    return {std::min({a, b, c, d}), std::max({a, b, c, d})};
  }
  Interval scaled(double s) const { return s >= 0 ? Interval{s * lo, s * hi} : Interval{s * hi, s * lo}; }
};

namespace detail {
using IVec = std::array<Interval, kMaxDim>;

inline IVec ibracket(const StratifiedGroup& g, const IVec& x, const IVec& y) {
  IVec z{};
  int n = g.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double c = g.structure_constant(i, j, k);
        if (c != 0.0) z[k] = z[k] + (x[i] * y[j]).scaled(c);
      }
  return z;
}
}  // namespace detail

// Box containing { a * b : a in A, b in B }.
inline Box product_box(const StratifiedGroup& g, const Box& A, const Box& B) {
  int n = g.dim();
  detail::IVec P{}, Z{};
  for (int i = 0; i < n; ++i) {
    P[i] = {A.lo[i], A.hi[i]};
    Z[i] = {B.lo[i], B.hi[i]};
  }
  detail::IVec R{};
  for (int i = 0; i < n; ++i) R[i] = P[i] + Z[i];
  if (!g.abelian()) {
    auto pz = detail::ibracket(g, P, Z);
    for (int i = 0; i < n; ++i) R[i] = R[i] + pz[i].scaled(0.5);
    if (g.step() >= 3) {
      auto a = detail::ibracket(g, P, pz), c = detail::ibracket(g, Z, pz);
      for (int i = 0; i < n; ++i) R[i] = R[i] + (a[i] - c[i]).scaled(1.0 / 12.0);
    }
  }
  Box out{Point(n), Point(n)};
  for (int i = 0; i < n; ++i) {
    out.lo[i] = R[i].lo;
    out.hi[i] = R[i].hi;
  }
  return out;
}

// Box containing { p * z : z in b }.
inline Box translate_box(const StratifiedGroup& g, const Point& p, const Box& b) { return product_box(g, {p, p}, b); }

// Box containing { z * p : z in b }.
inline Box right_translate_box(const StratifiedGroup& g, const Box& b, const Point& p) {
  return product_box(g, b, {p, p});
}

}  // namespace nlp
