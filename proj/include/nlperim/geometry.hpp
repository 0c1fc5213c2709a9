#pragma once
// Horizontal perimeter of model sets, the density theta(nu), and L^1 distances.

#include "field.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace nlp {

namespace detail {

// Orthonormal basis of the hyperplane { <pi1 x, nu> = 0 } in coordinates.
inline std::vector<Point> hyperplane_basis(const StratifiedGroup& g, const HorizontalVector& nu) {
  int n = g.dim(), m = g.horizontal_dim();
  std::vector<Point> basis;
  Point N = g.horizontal_point(nu) * (1.0 / nu.norm());
  for (int k = 0; k < m; ++k) {
    Point v(n);
    v[k] = 1.0;
    v = v - N * v.dot(N);
    for (const auto& b : basis) v = v - b * v.dot(b);
    double len = v.norm();
    if (len > 1e-8) basis.push_back(v * (1.0 / len));
  }
  for (int k = m; k < n; ++k) {
    Point v(n);
    v[k] = 1.0;
    basis.push_back(v);
  }
  return basis;
}

// MC estimate of int over { <pi1 x, nu> = offset } of w(x) 1_Omega(x) dH^{n-1}, for Omega inside `box`.
inline Estimate hyperplane_integral(const StratifiedGroup& g, const HorizontalVector& nu, double offset, const Box& box,
                                    const std::function<double(const Point&)>& w, std::uint64_t samples,
                                    std::uint64_t seed) {
  auto basis = hyperplane_basis(g, nu);
  int n = g.dim();
  Point x0 = g.horizontal_point(nu) * (offset / nu.dot(nu));
  std::vector<double> lo, hi;
  for (const auto& b : basis) {
    double l = 0.0, h = 0.0;
    for (int j = 0; j < n; ++j) {
      double p = b[j] * box.lo[j], q = b[j] * box.hi[j];
      l += std::min(p, q);
      h += std::max(p, q);
    }
    double shift = x0.dot(b);
    lo.push_back(l - shift);
    hi.push_back(h - shift);
  }
  double area = 1.0;
  for (std::size_t i = 0; i < lo.size(); ++i) area *= hi[i] - lo[i];
  auto acc = run_sharded<1>(samples, seed, 0x7e7a, [&](Rng& rng, std::array<double, 1>& out) {
    Point x = x0;
    for (std::size_t i = 0; i < basis.size(); ++i) x = x + basis[i] * rng.uniform(lo[i], hi[i]);
    out[0] = area * w(x);
  });
  return acc[0].estimate();
}

template <int Nodes>
double gauss_box(const std::function<double(const std::vector<double>&)>& f, const std::vector<double>& lo,
                 const std::vector<double>& hi, std::vector<double>& x, std::size_t axis) {
  if (axis == lo.size()) return f(x);
  return boost::math::quadrature::gauss<double, Nodes>::integrate(
      [&](double t) {
        x[axis] = t;
        return gauss_box<Nodes>(f, lo, hi, x, axis + 1);
      },
      lo[axis], hi[axis]);
}

// Tensor Gauss-Legendre over a box, split at 0 along each axis.
inline double integrate_box(const std::function<double(const std::vector<double>&)>& f, const std::vector<double>& lo,
                            const std::vector<double>& hi) {
  std::size_t d = lo.size();
  std::vector<std::vector<std::pair<double, double>>> pieces(d);
  for (std::size_t a = 0; a < d; ++a) {
    if (lo[a] < 0.0 && hi[a] > 0.0)
      pieces[a] = {{lo[a], 0.0}, {0.0, hi[a]}};
    else
      pieces[a] = {{lo[a], hi[a]}};
  }
  double total = 0.0;
  std::vector<std::size_t> idx(d, 0);
  for (;;) {
    std::vector<double> l(d), h(d), x(d);
    for (std::size_t a = 0; a < d; ++a) {
      l[a] = pieces[a][idx[a]].first;
      h[a] = pieces[a][idx[a]].second;
    }
    total += d <= 3 ? gauss_box<20>(f, l, h, x, 0) : gauss_box<7>(f, l, h, x, 0);
    std::size_t a = 0;
    while (a < d && ++idx[a] == pieces[a].size()) idx[a++] = 0;
    if (a == d) break;
  }
  return total;
}

// |(<X_1, N>, ..., <X_m, N>)| for a unit Euclidean normal N at x.
inline double horizontal_density(const StratifiedGroup& g, const Point& x, const Point& N) {
  double s = 0.0;
  for (int j = 0; j < g.horizontal_dim(); ++j) {
    double c = g.left_invariant_field(j, x).dot(N);
    s += c * c;
  }
  return std::sqrt(s);
}

}  // namespace detail

// (n-1)-dimensional Euclidean measure of { <pi1 log x, nu> = 0 } inside the unit norm ball.
inline Estimate theta_estimate(const HomogeneousNorm& norm, const HorizontalVector& nu, std::uint64_t samples = 1u << 21,
                               std::uint64_t seed = 0x7e7a) {
  if (nu.norm() == 0.0) throw std::invalid_argument("theta: zero normal");
  const auto& g = norm.group();
  if (norm.kind() == NormKind::euclidean) {
    double m = g.dim() - 1;
    return {std::pow(std::numbers::pi, m / 2.0) / std::tgamma(m / 2.0 + 1.0), 0.0, 0, 0.0};
  }
  Box box = Box::centered(norm.ball_halfwidths());
  return detail::hyperplane_integral(g, nu, 0.0, box, [&](const Point& x) { return norm(x) < 1.0 ? 1.0 : 0.0; },
                                     samples, seed);
}

inline double theta(const HomogeneousNorm& norm, const HorizontalVector& nu) { return theta_estimate(norm, nu).value; }

// P_G(E; Omega) for halfspaces, coordinate boxes and Euclidean balls.
// Boxes and balls are integrated over their whole boundary, so Omega must contain them.
inline Estimate horizontal_perimeter(const Region& E, const Region& omega, std::uint64_t samples = 1u << 20,
                                     std::uint64_t seed = 0x9e71) {
  const auto& g = E.group();
  const auto& node = E.node();
  if (auto* h = dynamic_cast<const regions::detail::Halfspace*>(&node)) {
    auto box = omega.bbox();
    if (!box) throw std::invalid_argument("horizontal_perimeter: halfspace needs a bounded Omega");
    return detail::hyperplane_integral(g, h->nu, h->offset, *box,
                                       [&](const Point& x) { return omega.contains(x) ? 1.0 : 0.0; }, samples, seed);
  }
  if (auto* b = dynamic_cast<const regions::detail::CoordBox*>(&node)) {
    int n = g.dim();
    double total = 0.0;
    for (int k = 0; k < n; ++k)
      for (int side = 0; side < 2; ++side) {
        double xk = side == 0 ? b->box.lo[k] : b->box.hi[k];
        std::vector<double> lo, hi;
        for (int j = 0; j < n; ++j)
          if (j != k) {
            lo.push_back(b->box.lo[j]);
            hi.push_back(b->box.hi[j]);
          }
        Point N(n);
        N[k] = 1.0;
        total += detail::integrate_box(
            [&](const std::vector<double>& u) {
              Point x(n);
              for (int j = 0, t = 0; j < n; ++j) x[j] = j == k ? xk : u[static_cast<std::size_t>(t++)];
              return detail::horizontal_density(g, x, N);
            },
            lo, hi);
      }
    return {total, 0.0, 0, 0.0};
  }
  if (auto* b = dynamic_cast<const regions::detail::Ball*>(&node)) {
    if (b->norm.kind() != NormKind::euclidean)
      throw std::invalid_argument("horizontal_perimeter: only Euclidean balls are supported");
    double n = g.dim();
    double area = n * std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0) * std::pow(b->radius, n - 1.0);
    return {area, 0.0, 0, 0.0};
  }
  throw std::invalid_argument("horizontal_perimeter: unsupported boundary type '" + E.tag() + "'");
}

// |(A symdiff B) cap Omega|.
inline Estimate symdiff_volume(const Region& A, const Region& B, const Region& omega, std::uint64_t samples = 200000,
                               std::uint64_t seed = 0x5d1f) {
  auto box = omega.bbox();
  if (!box) throw std::invalid_argument("symdiff_volume: Omega must be bounded");
  double V = box->volume();
  auto acc = run_sharded<1>(samples, seed, 0x5d1f, [&](Rng& rng, std::array<double, 1>& out) {
    Point x = box->sample(rng);
    if (omega.contains(x) && A.contains(x) != B.contains(x)) out[0] = V;
  });
  return acc[0].estimate();
}

// |Omega| by Monte Carlo.
inline Estimate volume(const Region& omega, std::uint64_t samples = 200000, std::uint64_t seed = 0x70f) {
  return symdiff_volume(regions::full(omega.group()), regions::empty(omega.group()), omega, samples, seed);
}

}  // namespace nlp
