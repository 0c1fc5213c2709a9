#pragma once
// Monte Carlo estimates, configuration and the deterministic sharded runner.

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace nlp {

enum class TailPolicy { analytic, drop };

inline std::string to_string(TailPolicy p) { return p == TailPolicy::analytic ? "analytic" : "drop"; }
inline TailPolicy tail_policy_from(const std::string& s) {
  if (s == "analytic") return TailPolicy::analytic;
  if (s == "drop") return TailPolicy::drop;
  throw std::invalid_argument("tail_policy must be 'analytic' or 'drop'");
}

struct McConfig {
  std::uint64_t samples = 200000;
  std::uint64_t seed = 12345;
  double core_radius = 0.05;     // radii below this use the two-node linear/quadratic core rule
  double outer_radius = 10.0;    // R_out: Pareto tail beyond this radius
  int shells_per_decade = 8;
  TailPolicy tail_policy = TailPolicy::analytic;
  double pv_cutoff = 1e-3;       // smallest principal-value cutoff

  void validate() const {
    if (samples == 0) throw std::invalid_argument("samples must be positive");
    if (!(core_radius > 0.0)) throw std::invalid_argument("core_radius must be positive");
    if (!(outer_radius > core_radius)) throw std::invalid_argument("outer_radius must exceed core_radius");
    if (shells_per_decade < 1) throw std::invalid_argument("shells_per_decade must be >= 1");
    if (!(pv_cutoff > 0.0)) throw std::invalid_argument("pv_cutoff must be positive");
  }

  McConfig with_samples(std::uint64_t n) const {
    McConfig c = *this;
    c.samples = n;
    return c;
  }
  McConfig with_seed(std::uint64_t s) const {
    McConfig c = *this;
    c.seed = s;
    return c;
  }
  McConfig with_core(double r) const {
    McConfig c = *this;
    c.core_radius = r;
    return c;
  }
};

inline void to_json(nlohmann::json& j, const McConfig& c) {
  j = nlohmann::json{{"samples", c.samples},
                     {"seed", c.seed},
                     {"core_radius", c.core_radius},
                     {"outer_radius", c.outer_radius},
                     {"shells_per_decade", c.shells_per_decade},
                     {"tail_policy", to_string(c.tail_policy)},
                     {"pv_cutoff", c.pv_cutoff}};
}

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  double tail_correction = 0.0;

  Estimate operator+(const Estimate& o) const {
    return {value + o.value, std::hypot(std_error, o.std_error), samples + o.samples,
            tail_correction + o.tail_correction};
  }
  Estimate operator-(const Estimate& o) const {
    return {value - o.value, std::hypot(std_error, o.std_error), samples + o.samples,
            tail_correction - o.tail_correction};
  }
  Estimate operator*(double s) const {
    return {s * value, std::abs(s) * std_error, samples, s * tail_correction};
  }
};

// Combined standard error of two independent estimates.
inline double combined_sigma(const Estimate& a, const Estimate& b) { return std::hypot(a.std_error, b.std_error); }

inline bool within_sigma(const Estimate& a, double oracle, double k = 3.0) {
  return std::abs(a.value - oracle) <= k * a.std_error;
}

inline nlohmann::json to_json(const Estimate& e, std::uint64_t seed, const std::string& config_hash) {
  return {{"value", e.value},
          {"std_error", e.std_error},
          {"samples", e.samples},
          {"tail_correction", e.tail_correction},
          {"seed", seed},
          {"config_hash", config_hash}};
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t block) {
  return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ block);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  // 53-bit uniform in [0,1).
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  // Uniform in (0,1], safe for logarithms.
  double uniform_pos() { return 1.0 - uniform(); }
  std::uint64_t bits() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

// Welford accumulator with Chan merge.
struct Accumulator {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  void merge(const Accumulator& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    double na = static_cast<double>(n), nb = static_cast<double>(o.n);
    double d = o.mean - mean;
    double nt = na + nb;
    mean += d * nb / nt;
    m2 += o.m2 + d * d * na * nb / nt;
    n += o.n;
  }
  double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
  Estimate estimate() const {
    return {mean, n > 0 ? std::sqrt(variance() / static_cast<double>(n)) : 0.0, n, 0.0};
  }
};

inline int& default_threads_slot() {
  static int t = 0;
  return t;
}

inline void set_default_threads(int t) { default_threads_slot() = std::max(0, t); }

// --threads (via set_default_threads), then NLP_DEFAULT_THREADS, then hardware concurrency.
inline int thread_count() {
  if (default_threads_slot() > 0) return default_threads_slot();
  if (const char* env = std::getenv("NLP_DEFAULT_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

inline constexpr std::uint64_t kBlockSize = 4096;

// Runs fn(rng, out) for `samples` draws. Blocks are seeded independently and
// merged in block order, so the result does not depend on the thread count.
template <std::size_t N, class Fn>
std::array<Accumulator, N> run_sharded(std::uint64_t samples, std::uint64_t seed, std::uint64_t stream, Fn&& fn) {
  std::uint64_t nblocks = (samples + kBlockSize - 1) / kBlockSize;
  std::vector<std::array<Accumulator, N>> blocks(nblocks);
  auto work = [&](std::uint64_t b) {
    Rng rng(derive_seed(seed, stream, b));
    std::uint64_t count = std::min(kBlockSize, samples - b * kBlockSize);
    std::array<double, N> out{};
    auto& acc = blocks[b];
    for (std::uint64_t i = 0; i < count; ++i) {
      out.fill(0.0);
      fn(rng, out);
      for (std::size_t k = 0; k < N; ++k) acc[k].add(out[k]);
    }
  };
  int threads = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(thread_count()), nblocks));
  if (threads <= 1) {
    for (std::uint64_t b = 0; b < nblocks; ++b) work(b);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::uint64_t b = static_cast<std::uint64_t>(t); b < nblocks; b += static_cast<std::uint64_t>(threads))
          work(b);
      });
    for (auto& th : pool) th.join();
  }
  std::array<Accumulator, N> total{};
  for (const auto& blk : blocks)
    for (std::size_t k = 0; k < N; ++k) total[k].merge(blk[k]);
  return total;
}

}  // namespace nlp
