#pragma once
// Radial kernels K(g) = K~(||g||), their rescalings and truncations.

#include "norm.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlp {

enum class ProfileType { fractional, compact_bump, exponential, custom };

// K~(r) = C r^(-p) on [lo, hi).
struct PowerSegment {
  double lo, hi, C, p;
};

struct KernelTransform {
  enum Kind { rescale, truncate } kind;
  double eps = 1.0;
};

enum class TailKind { power, compact, fast };

class Kernel {
 public:
  static constexpr double kInf = std::numeric_limits<double>::infinity();

  Kernel() = default;

  static Kernel fractional(const HomogeneousNorm& norm, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha outside (0,1)");
    Kernel k(norm, ProfileType::fractional);
    k.alpha_ = alpha;
    k.build_segments();
    return k;
  }
  static Kernel truncated_fractional(const HomogeneousNorm& norm, double alpha) {
    return fractional(norm, alpha).truncated();
  }
  static Kernel compact_bump(const HomogeneousNorm& norm, double height = 1.0, double radius = 1.0) {
    if (!(height > 0.0) || !(radius > 0.0)) throw std::invalid_argument("bump height and radius must be positive");
    Kernel k(norm, ProfileType::compact_bump);
    k.height_ = height;
    k.radius_ = radius;
    k.build_segments();
    return k;
  }
  static Kernel exponential(const HomogeneousNorm& norm, double height = 1.0) {
    if (!(height > 0.0)) throw std::invalid_argument("height must be positive");
    Kernel k(norm, ProfileType::exponential);
    k.height_ = height;
    k.build_segments();
    return k;
  }
  // A r^(-p_near) below the crossover, continued by r^(-p_far) beyond it.
  static Kernel custom(const HomogeneousNorm& norm, double p_near, double p_far, double crossover = 1.0,
                       double height = 1.0) {
    if (!(crossover > 0.0) || !(height > 0.0)) throw std::invalid_argument("crossover and height must be positive");
    Kernel k(norm, ProfileType::custom);
    k.p_near_ = p_near;
    k.p_far_ = p_far;
    k.crossover_ = crossover;
    k.height_ = height;
    k.build_segments();
    return k;
  }

  Kernel rescaled(double eps) const {
    if (!(eps > 0.0)) throw std::invalid_argument("rescale parameter must be positive");
    Kernel k = *this;
    k.chain_.push_back({KernelTransform::rescale, eps});
    k.build_segments();
    return k;
  }
  // G = T o K with T(s) = min(s, 1).
  Kernel truncated() const {
    Kernel k = *this;
    k.chain_.push_back({KernelTransform::truncate, 1.0});
    k.build_segments();
    return k;
  }

  const HomogeneousNorm& norm() const { return norm_; }
  const StratifiedGroup& group() const { return norm_.group(); }
  int Q() const { return norm_.Q(); }
  ProfileType type() const { return type_; }
  const std::vector<KernelTransform>& transforms() const { return chain_; }
  double sphere_constant() const { return norm_.sphere_constant(); }

  // Fractional exponent of an untruncated fractional kernel, NaN otherwise.
  double alpha() const {
    if (type_ != ProfileType::fractional) return std::numeric_limits<double>::quiet_NaN();
    return alpha_;
  }
  bool is_fractional() const {
    return type_ == ProfileType::fractional &&
           std::none_of(chain_.begin(), chain_.end(), [](const KernelTransform& t) { return t.kind == KernelTransform::truncate; });
  }
  bool compactly_supported() const { return std::isfinite(support_radius()); }
  bool radial_decreasing() const {
    if (type_ == ProfileType::custom) return p_near_ >= 0.0 && p_far_ >= 0.0;
    return true;
  }

  double profile(double r) const { return eval(chain_.size(), r); }
  double operator()(const Point& g) const { return profile(norm_(g)); }

  const std::optional<std::vector<PowerSegment>>& segments() const { return segments_; }

  // K~(r) ~ r^(-p) as r -> 0.
  double near_exponent() const {
    if (segments_) return segments_->front().p;
    return 0.0;
  }
  TailKind tail_kind() const {
    if (segments_) return std::isfinite(segments_->back().hi) ? TailKind::compact : TailKind::power;
    return TailKind::fast;
  }
  // K~(r) ~ r^(-p) as r -> inf (power tails only).
  double tail_exponent() const {
    if (tail_kind() == TailKind::power) return segments_->back().p;
    return kInf;
  }
  double support_radius() const {
    if (segments_ && std::isfinite(segments_->back().hi)) return segments_->back().hi;
    return kInf;
  }
  bool pure_power() const { return segments_ && segments_->size() == 1 && segments_->front().lo == 0.0 && !std::isfinite(segments_->front().hi); }
  bool integrable_at_zero() const { return near_exponent() < Q(); }

  // Product of the rescaling parameters applied so far.
  double length_scale() const {
    double s = 1.0;
    for (const auto& t : chain_)
      if (t.kind == KernelTransform::rescale) s *= t.eps;
    return s;
  }

  // int_a^b K~(r) r^(Q-1+p) dr; +inf when divergent.
  double radial_moment(double a, double b, double p = 0.0) const {
    if (!(b > a)) return 0.0;
    if (segments_) {
      double s = 0.0;
      for (const auto& seg : *segments_) {
        double lo = std::max(a, seg.lo), hi = std::min(b, seg.hi);
        if (!(hi > lo)) continue;
        s += seg.C * power_integral(lo, hi, Q() - 1.0 + p - seg.p);
      }
      return s;
    }
    auto f = [this, p](double r) {
      double k = profile(r);
      return k == 0.0 ? 0.0 : k * std::pow(r, Q() - 1.0 + p);
    };
    double s = 0.0;
    double mid = std::min(b, std::max(a, 1.0));
    if (mid > a) s += boost::math::quadrature::tanh_sinh<double>().integrate(f, a, mid);
    if (b > mid) {
      if (std::isfinite(b))
        s += boost::math::quadrature::tanh_sinh<double>().integrate(f, mid, b);
      else
        s += boost::math::quadrature::exp_sinh<double>().integrate(f, mid, kInf);
    }
    return s;
  }

  // ||K||_{L^1}.
  double l1_norm() const { return sphere_constant() * radial_moment(0.0, kInf, 0.0); }
  // int min(1, ||x||) K(x) dx.
  double min1_moment() const {
    return sphere_constant() * (radial_moment(0.0, 1.0, 1.0) + radial_moment(1.0, kInf, 0.0));
  }
  // int ||x|| K(x) dx.
  double first_moment() const { return sphere_constant() * radial_moment(0.0, kInf, 1.0); }

  std::string describe() const {
    std::string s;
    switch (type_) {
      case ProfileType::fractional: s = "fractional(alpha=" + std::to_string(alpha_) + ")"; break;
      case ProfileType::compact_bump: s = "compact_bump(h=" + std::to_string(height_) + ",R=" + std::to_string(radius_) + ")"; break;
      case ProfileType::exponential: s = "exponential(h=" + std::to_string(height_) + ")"; break;
      case ProfileType::custom:
        s = "custom(p_near=" + std::to_string(p_near_) + ",p_far=" + std::to_string(p_far_) + ",c=" + std::to_string(crossover_) + ")";
        break;
    }
    for (const auto& t : chain_)
      s += t.kind == KernelTransform::truncate ? "|truncate" : "|rescale(" + std::to_string(t.eps) + ")";
    return s + "@" + norm_.name();
  }

 private:
  Kernel(const HomogeneousNorm& norm, ProfileType t) : norm_(norm), type_(t) {}

  static double power_integral(double lo, double hi, double e) {
    if (std::abs(e + 1.0) < 1e-14) {
      if (lo == 0.0 || !std::isfinite(hi)) return kInf;
      return std::log(hi / lo);
    }
    double ep = e + 1.0;
    if (lo == 0.0 && ep < 0.0) return kInf;
    if (!std::isfinite(hi)) {
      if (ep > 0.0) return kInf;
      return -std::pow(lo, ep) / ep;
    }
    return (std::pow(hi, ep) - std::pow(lo, ep)) / ep;
  }

  double base(double r) const {
    switch (type_) {
      case ProfileType::fractional: return std::pow(r, -(Q() + alpha_));
      case ProfileType::compact_bump: return r <= radius_ ? height_ : 0.0;
      case ProfileType::exponential: return height_ * std::exp(-r);
      case ProfileType::custom:
        if (r < crossover_) return height_ * std::pow(r, -p_near_);
        return height_ * std::pow(crossover_, -p_near_) * std::pow(r / crossover_, -p_far_);
    }
    return 0.0;
  }

  double eval(std::size_t level, double r) const {
    if (level == 0) return base(r);
    const auto& t = chain_[level - 1];
    if (t.kind == KernelTransform::truncate) return std::min(1.0, eval(level - 1, r));
    return std::pow(t.eps, -Q()) * eval(level - 1, r / t.eps);
  }

  void build_segments() {
    std::vector<PowerSegment> s;
    switch (type_) {
      case ProfileType::fractional: s = {{0.0, kInf, 1.0, Q() + alpha_}}; break;
      case ProfileType::compact_bump: s = {{0.0, radius_, height_, 0.0}}; break;
      case ProfileType::custom:
        s = {{0.0, crossover_, height_, p_near_},
             {crossover_, kInf, height_ * std::pow(crossover_, p_far_ - p_near_), p_far_}};
        break;
      case ProfileType::exponential: segments_.reset(); return;
    }
    for (const auto& t : chain_) {
      std::vector<PowerSegment> out;
      for (const auto& seg : s) {
        if (t.kind == KernelTransform::rescale) {
          out.push_back({seg.lo * t.eps, seg.hi * t.eps, seg.C * std::pow(t.eps, seg.p - Q()), seg.p});
          continue;
        }
        if (seg.p == 0.0) {
          out.push_back({seg.lo, seg.hi, std::min(seg.C, 1.0), 0.0});
          continue;
        }
        double rstar = std::pow(seg.C, 1.0 / seg.p);  // C r^-p = 1
        bool above_first = seg.p > 0.0;                // values exceed 1 below rstar
        double cut = std::clamp(rstar, seg.lo, seg.hi);
        PowerSegment a{seg.lo, cut, seg.C, seg.p}, b{cut, seg.hi, seg.C, seg.p};
        if (above_first) a = {seg.lo, cut, 1.0, 0.0};
        else b = {cut, seg.hi, 1.0, 0.0};
        if (a.hi > a.lo) out.push_back(a);
        if (b.hi > b.lo) out.push_back(b);
      }
      s = std::move(out);
    }
    segments_ = std::move(s);
  }

  HomogeneousNorm norm_;
  ProfileType type_ = ProfileType::fractional;
  double alpha_ = 0.5;
  double height_ = 1.0;
  double radius_ = 1.0;
  double p_near_ = 0.0, p_far_ = 0.0, crossover_ = 1.0;
  std::vector<KernelTransform> chain_;
  std::optional<std::vector<PowerSegment>> segments_;
};

inline Kernel fractional_kernel(const HomogeneousNorm& norm, double alpha) {
  return Kernel::fractional(norm, alpha);
}
inline Kernel rescale_kernel(const Kernel& k, double eps) { return k.rescaled(eps); }
inline Kernel truncate_kernel(const Kernel& k) { return k.truncated(); }

}  // namespace nlp
