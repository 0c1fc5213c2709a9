#pragma once
// Executable versions of the kernel hypotheses.

#include "kernel.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace nlp {

struct IntegrabilityReport {
  Estimate value;                    // int min{1,||x||} K, error = unresolved tail remainder
  bool convergent = false;
  bool divergent_near_zero = false;
  bool divergent_at_infinity = false;
  std::vector<double> decade_sums;   // shells [10^k, 10^(k+1)], k = -kDecades..kDecades-1
  static constexpr int kDecades = 12;
};

namespace detail {
// Geometric decay over the last three shells; zero shells count as decayed.
inline bool decays(double s0, double s1, double s2, double& ratio) {
  const double tiny = 1e-300;
  if (s2 <= tiny) {
    ratio = 0.0;
    return true;
  }
  if (s1 <= tiny || s0 <= tiny) {
    ratio = 1.0;
    return false;
  }
  double q1 = s1 / s0, q2 = s2 / s1;
  ratio = std::max(q1, q2);
  return q1 < 0.9 && q2 < 0.9;
}
}  // namespace detail

// Shell-sum test of int min{1,||x||} K(x) dx < inf.
inline IntegrabilityReport integrability_check(const Kernel& k) {
  IntegrabilityReport rep;
  const int D = IntegrabilityReport::kDecades;
  double sigma = k.sphere_constant();
  double total = 0.0;
  for (int d = -D; d < D; ++d) {
    double a = std::pow(10.0, d), b = std::pow(10.0, d + 1);
    double s = d < 0 ? k.radial_moment(a, b, 1.0) : k.radial_moment(a, b, 0.0);
    s *= sigma;
    rep.decade_sums.push_back(s);
    total += s;
  }
  const auto& v = rep.decade_sums;
  double q_near = 0.0, q_far = 0.0;
  bool near_ok = detail::decays(v[2], v[1], v[0], q_near);
  bool far_ok = detail::decays(v[v.size() - 3], v[v.size() - 2], v[v.size() - 1], q_far);
  if (!std::isfinite(total)) near_ok = far_ok = false;
  rep.divergent_near_zero = !near_ok;
  rep.divergent_at_infinity = !far_ok;
  rep.convergent = near_ok && far_ok;
  double rem = 0.0;
  if (rep.convergent) {
    if (q_near > 0.0) rem += v.front() * q_near / (1.0 - q_near);
    if (q_far > 0.0) rem += v.back() * q_far / (1.0 - q_far);
    total += rem;
  }
  rep.value = {total, rem, 0, rem};
  return rep;
}

struct InfCappaReport {
  double value = 0.0;           // inf over r in [1, r_max] of K~(r) r^(Q+1), or 0 if the limit vanishes
  double grid_minimum = 0.0;
  double limit_exponent = 0.0;  // K~(r) r^(Q+1) ~ r^limit_exponent for power tails
  bool pass = false;
};

// inf_{r>1} K~(r) r^(Q+1) > 0.
inline InfCappaReport infcappa_check(const Kernel& k, double r_max = 1e6, int points_per_decade = 64) {
  InfCappaReport rep;
  int n = static_cast<int>(std::log10(r_max) * points_per_decade);
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    double r = std::pow(10.0, static_cast<double>(i) / points_per_decade);
    m = std::min(m, k.profile(r) * std::pow(r, k.Q() + 1.0));
  }
  rep.grid_minimum = m;
  switch (k.tail_kind()) {
    case TailKind::power:
      rep.limit_exponent = k.Q() + 1.0 - k.tail_exponent();
      rep.value = rep.limit_exponent < -1e-12 ? 0.0 : m;
      break;
    case TailKind::compact:
    case TailKind::fast:
      rep.limit_exponent = -std::numeric_limits<double>::infinity();
      rep.value = 0.0;
      break;
  }
  rep.pass = rep.value > 0.0;
  return rep;
}

// int K(x) ||x|| dx < inf, the hypothesis of the small-scale interaction bound.
inline bool strong_integrability(const Kernel& k) { return std::isfinite(k.first_moment()); }

}  // namespace nlp
