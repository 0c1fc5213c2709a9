#pragma once
// Occupancy bitmaps on coordinate boxes.
//
// File format: one JSON header line
//   {"dims":[...],"box":{"lo":[...],"hi":[...]},"order":"row-major","bit_order":"lsb-first"}
// followed by ceil(prod(dims)/8) raw bytes. The last axis varies fastest.

#include "box.hpp"

#include <json.hpp>

#include <bit>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlp {

class VoxelMask {
 public:
  VoxelMask() = default;
  VoxelMask(std::vector<int> dims, Box box) : dims_(std::move(dims)), box_(std::move(box)) {
    if (static_cast<int>(dims_.size()) != box_.dim()) throw DimensionError("voxel dims do not match box");
    for (int d : dims_)
      if (d <= 0) throw std::invalid_argument("voxel dims must be positive");
    bits_.assign((cells() + 7) / 8, 0);
  }

  const std::vector<int>& dims() const { return dims_; }
  const Box& box() const { return box_; }
  std::size_t cells() const {
    return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1},
                           [](std::size_t a, int d) { return a * static_cast<std::size_t>(d); });
  }
  double cell_volume() const { return box_.volume() / static_cast<double>(cells()); }

  bool get(std::size_t idx) const { return (bits_[idx >> 3] >> (idx & 7)) & 1U; }
  void set(std::size_t idx, bool v) {
    if (v)
      bits_[idx >> 3] = static_cast<std::uint8_t>(bits_[idx >> 3] | (1U << (idx & 7)));
    else
      bits_[idx >> 3] = static_cast<std::uint8_t>(bits_[idx >> 3] & ~(1U << (idx & 7)));
  }

  // Row-major cell index of x, or -1 outside the box.
  long index_of(const Point& x) const {
    long idx = 0;
    for (int a = 0; a < box_.dim(); ++a) {
      double t = (x[a] - box_.lo[a]) / (box_.hi[a] - box_.lo[a]);
      if (t < 0.0 || t >= 1.0) return -1;
      idx = idx * dims_[static_cast<std::size_t>(a)] + static_cast<long>(t * dims_[static_cast<std::size_t>(a)]);
    }
    return idx;
  }
  Point cell_center(std::size_t idx) const {
    Point c(box_.dim());
    for (int a = box_.dim() - 1; a >= 0; --a) {
      int d = dims_[static_cast<std::size_t>(a)];
      std::size_t k = idx % static_cast<std::size_t>(d);
      idx /= static_cast<std::size_t>(d);
      c[a] = box_.lo[a] + (static_cast<double>(k) + 0.5) * (box_.hi[a] - box_.lo[a]) / d;
    }
    return c;
  }

  bool contains(const Point& x) const {
    long i = index_of(x);
    return i >= 0 && get(static_cast<std::size_t>(i));
  }

  std::size_t popcount() const {
    std::size_t s = 0;
    for (auto b : bits_) s += static_cast<std::size_t>(std::popcount(b));
    return s;
  }
  double volume() const { return cell_volume() * static_cast<double>(popcount()); }

  VoxelMask operator^(const VoxelMask& o) const {
    if (o.dims_ != dims_) throw DimensionError("voxel grids differ");
    VoxelMask r = *this;
    for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] ^ o.bits_[i];
    return r;
  }

  void save(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write voxel file " + path);
    nlohmann::json h = {{"dims", dims_},
                        {"box", {{"lo", box_.lo.to_vector()}, {"hi", box_.hi.to_vector()}}},
                        {"order", "row-major"},
                        {"bit_order", "lsb-first"}};
    f << h.dump() << '\n';
    f.write(reinterpret_cast<const char*>(bits_.data()), static_cast<std::streamsize>(bits_.size()));
  }

  static VoxelMask load(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read voxel file " + path);
    std::string line;
    std::getline(f, line);
    auto h = nlohmann::json::parse(line);
    if (h.value("order", "row-major") != "row-major") throw std::runtime_error("voxel file: unsupported order");
    Box b{Point::from(h["box"]["lo"].get<std::vector<double>>()), Point::from(h["box"]["hi"].get<std::vector<double>>())};
    VoxelMask m(h["dims"].get<std::vector<int>>(), b);
    f.read(reinterpret_cast<char*>(m.bits_.data()), static_cast<std::streamsize>(m.bits_.size()));
    if (f.gcount() != static_cast<std::streamsize>(m.bits_.size())) throw std::runtime_error("voxel file truncated");
    return m;
  }

 private:
  std::vector<int> dims_;
  Box box_;
  std::vector<std::uint8_t> bits_;
};

}  // namespace nlp
