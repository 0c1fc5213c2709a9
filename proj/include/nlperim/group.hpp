#pragma once
// Carnot groups in exponential coordinates of the first kind.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <ratio>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace nlp {

inline constexpr int kMaxDim = 8;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <class Tag>
struct CoordVector {
  std::array<double, kMaxDim> c{};
  int n = 0;

  CoordVector() = default;
  explicit CoordVector(int dim) : n(dim) {
    if (dim < 0 || dim > kMaxDim) throw DimensionError("dimension out of range");
  }
  CoordVector(std::initializer_list<double> v) : n(static_cast<int>(v.size())) {
    if (n > kMaxDim) throw DimensionError("dimension out of range");
    std::copy(v.begin(), v.end(), c.begin());
  }
  static CoordVector from(const std::vector<double>& v) {
    CoordVector r(static_cast<int>(v.size()));
    std::copy(v.begin(), v.end(), r.c.begin());
    return r;
  }

  int size() const { return n; }
  double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

  CoordVector operator+(const CoordVector& o) const {
    check(o);
    CoordVector r(n);
    for (int i = 0; i < n; ++i) r[i] = c[i] + o[i];
    return r;
  }
  CoordVector operator-(const CoordVector& o) const {
    check(o);
    CoordVector r(n);
    for (int i = 0; i < n; ++i) r[i] = c[i] - o[i];
    return r;
  }
  CoordVector operator-() const {
    CoordVector r(n);
    for (int i = 0; i < n; ++i) r[i] = -c[i];
    return r;
  }
  CoordVector operator*(double s) const {
    CoordVector r(n);
    for (int i = 0; i < n; ++i) r[i] = s * c[i];
    return r;
  }
  double dot(const CoordVector& o) const {
    check(o);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += c[i] * o[i];
    return s;
  }
  double norm() const { return std::sqrt(dot(*this)); }
  bool operator==(const CoordVector& o) const {
    if (n != o.n) return false;
    for (int i = 0; i < n; ++i)
      if (c[i] != o[i]) return false;
    return true;
  }
  std::vector<double> to_vector() const { return {c.begin(), c.begin() + n}; }

 private:
  void check(const CoordVector& o) const {
    if (o.n != n) throw DimensionError("coordinate dimension mismatch");
  }
};

struct PointTag {};
struct HorizontalTag {};
using Point = CoordVector<PointTag>;
using HorizontalVector = CoordVector<HorizontalTag>;

// Step-3 truncation of Baker-Campbell-Hausdorff:
// Z = X + Y + 1/2[X,Y] + 1/12[X,[X,Y]] - 1/12[Y,[X,Y]]
namespace bch {
using c2 = std::ratio<1, 2>;
using c3 = std::ratio<1, 12>;
template <class R>
inline constexpr double value = static_cast<double>(R::num) / static_cast<double>(R::den);
}  // namespace bch

struct Bracket {
  int i, j, k;
  double c;
};

class StratifiedGroup {
 public:
  StratifiedGroup() = default;

  // brackets list [e_i, e_j] = c e_k for i < j; antisymmetry is implied.
  StratifiedGroup(std::string name, std::vector<int> layer_dims, const std::vector<Bracket>& brackets)
      : name_(std::move(name)), layers_(std::move(layer_dims)) {
    n_ = 0;
    for (int m : layers_) {
      if (m <= 0) throw std::invalid_argument("layer dimensions must be positive");
      n_ += m;
    }
    if (n_ == 0 || n_ > kMaxDim) throw std::invalid_argument("group dimension must be in 1..8");
    if (layers_.size() > 3) throw std::invalid_argument("step larger than 3 is not supported");
    int idx = 0;
    Q_ = 0;
    for (std::size_t l = 0; l < layers_.size(); ++l) {
      for (int t = 0; t < layers_[l]; ++t) deg_[static_cast<std::size_t>(idx++)] = static_cast<int>(l) + 1;
      Q_ += static_cast<int>(l + 1) * layers_[l];
    }
    for (const auto& b : brackets) {
      if (b.i < 0 || b.j < 0 || b.k < 0 || b.i >= n_ || b.j >= n_ || b.k >= n_ || b.i == b.j)
        throw std::invalid_argument("bracket index out of range");
      C_[idx3(b.i, b.j, b.k)] += b.c;
      C_[idx3(b.j, b.i, b.k)] -= b.c;
      brackets_.push_back(b);
    }
    validate();
  }

  const std::string& name() const { return name_; }
  int dim() const { return n_; }
  int step() const { return static_cast<int>(layers_.size()); }
  int horizontal_dim() const { return layers_.front(); }
  int homogeneous_dim() const { return Q_; }
  const std::vector<int>& layer_dims() const { return layers_; }
  const std::vector<Bracket>& brackets() const { return brackets_; }
  int degree(int i) const { return deg_[static_cast<std::size_t>(i)]; }
  bool abelian() const { return layers_.size() == 1; }
  double structure_constant(int i, int j, int k) const { return C_[idx3(i, j, k)]; }

  Point identity() const { return Point(n_); }

  Point bracket(const Point& x, const Point& y) const {
    check(x);
    check(y);
    Point z(n_);
    if (abelian()) return z;
    for (int i = 0; i < n_; ++i) {
      if (x[i] == 0.0) continue;
      for (int j = 0; j < n_; ++j) {
        double xy = x[i] * y[j];
        if (xy == 0.0) continue;
        for (int k = 0; k < n_; ++k) z[k] += xy * C_[idx3(i, j, k)];
      }
    }
    return z;
  }

  Point product(const Point& x, const Point& y) const {
    check(x);
    check(y);
    Point z = x + y;
    if (abelian()) return z;
    Point xy = bracket(x, y);
    z = z + xy * bch::value<bch::c2>;
    if (step() >= 3) z = z + (bracket(x, xy) - bracket(y, xy)) * bch::value<bch::c3>;
    return z;
  }

  Point inverse(const Point& x) const {
    check(x);
    return -x;
  }

  Point dilate(double lambda, const Point& x) const {
    check(x);
    if (!(lambda > 0.0)) throw std::invalid_argument("dilation factor must be positive");
    Point r(n_);
    for (int i = 0; i < n_; ++i) r[i] = std::pow(lambda, deg_[static_cast<std::size_t>(i)]) * x[i];
    return r;
  }

  HorizontalVector pi1_log(const Point& x) const {
    check(x);
    HorizontalVector h(horizontal_dim());
    for (int i = 0; i < horizontal_dim(); ++i) h[i] = x[i];
    return h;
  }

  // Coordinates of X_j at x: d/dt x*exp(t e_j) at t=0, exact up to step 3.
  Point left_invariant_field(int j, const Point& x) const {
    check(x);
    Point e(n_);
    e[j] = 1.0;
    if (abelian()) return e;
    Point xe = bracket(x, e);
    Point r = e + xe * 0.5;
    if (step() >= 3) r = r + bracket(x, xe) * (1.0 / 12.0);
    return r;
  }

  // Embed a horizontal vector as a point of the first layer.
  Point horizontal_point(const HorizontalVector& v) const {
    if (v.size() != horizontal_dim()) throw DimensionError("horizontal vector dimension mismatch");
    Point p(n_);
    for (int i = 0; i < v.size(); ++i) p[i] = v[i];
    return p;
  }

  void check(const Point& x) const {
    if (x.size() != n_)
      throw DimensionError("point of dimension " + std::to_string(x.size()) + " used with group '" + name_ +
                           "' of dimension " + std::to_string(n_));
  }

  // Coordinate volume of the unit-coordinate set scales as lambda^Q.
  double volume_scale(double lambda) const { return std::pow(lambda, Q_); }

 private:
  std::size_t idx3(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * kMaxDim + static_cast<std::size_t>(j)) * kMaxDim +
           static_cast<std::size_t>(k);
  }

  void validate() const {
    // Jacobi identity on basis triples.
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        for (int c = 0; c < n_; ++c) {
          Point ea(n_), eb(n_), ec(n_);
          ea[a] = eb[b] = ec[c] = 1.0;
          Point s = bracket(ea, bracket(eb, ec)) + bracket(eb, bracket(ec, ea)) + bracket(ec, bracket(ea, eb));
          for (int k = 0; k < n_; ++k)
            if (std::abs(s[k]) > 1e-12) throw std::invalid_argument("structure constants violate the Jacobi identity");
        }
    // Grading: [g_i, g_j] in g_{i+j}, zero past the step.
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k) {
          if (C_[idx3(i, j, k)] == 0.0) continue;
          if (degree(k) != degree(i) + degree(j))
            throw std::invalid_argument("bracket does not respect the grading");
        }
    // Generation: [g_1, g_i] spans g_{i+1}.
    int offset = layers_[0];
    for (std::size_t l = 1; l < layers_.size(); ++l) {
      int m = layers_[l];
      Eigen::MatrixXd span(m, 0);
      int prev_off = offset - layers_[l - 1];
      for (int i = 0; i < layers_[0]; ++i)
        for (int j = prev_off; j < offset; ++j) {
          Eigen::VectorXd col(m);
          for (int k = 0; k < m; ++k) col(k) = C_[idx3(i, j, offset + k)];
          span.conservativeResize(m, span.cols() + 1);
          span.col(span.cols() - 1) = col;
        }
      if (span.cols() == 0 || Eigen::FullPivLU<Eigen::MatrixXd>(span).rank() != m)
        throw std::invalid_argument("first layer does not generate layer " + std::to_string(l + 1));
      offset += m;
    }
  }

  std::string name_;
  std::vector<int> layers_;
  int n_ = 0;
  int Q_ = 0;
  std::array<int, kMaxDim> deg_{};
  std::array<double, kMaxDim * kMaxDim * kMaxDim> C_{};
  std::vector<Bracket> brackets_;
};

namespace groups {

inline StratifiedGroup euclidean(int n) {
  if (n < 1 || n > 3) throw std::invalid_argument("euclidean catalog covers n = 1..3");
  return StratifiedGroup("R" + std::to_string(n), {n}, {});
}

inline StratifiedGroup heisenberg() { return StratifiedGroup("H1", {2, 1}, {{0, 1, 2, 1.0}}); }

// Free step-2 on 2 generators coincides with H1.
inline StratifiedGroup free_step2(int generators) {
  if (generators == 2) return StratifiedGroup("free2_2", {2, 1}, {{0, 1, 2, 1.0}});
  if (generators == 3)
    return StratifiedGroup("free2_3", {3, 3}, {{0, 1, 3, 1.0}, {0, 2, 4, 1.0}, {1, 2, 5, 1.0}});
  throw std::invalid_argument("free step-2 catalog covers 2 or 3 generators");
}

inline StratifiedGroup engel() { return StratifiedGroup("engel", {2, 1, 1}, {{0, 1, 2, 1.0}, {0, 2, 3, 1.0}}); }

inline StratifiedGroup by_name(const std::string& name) {
  if (name == "R1") return euclidean(1);
  if (name == "R2") return euclidean(2);
  if (name == "R3") return euclidean(3);
  if (name == "H1" || name == "heisenberg") return heisenberg();
  if (name == "free2_2") return free_step2(2);
  if (name == "free2_3") return free_step2(3);
  if (name == "engel") return engel();
  throw std::invalid_argument("unknown group '" + name + "'");
}

inline std::vector<std::string> catalog() { return {"R1", "R2", "R3", "H1", "free2_2", "free2_3", "engel"}; }

}  // namespace groups
}  // namespace nlp
