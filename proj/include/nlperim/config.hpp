#pragma once
// JSON experiment configs: groups, norms, kernels, regions and fields by spec.

#include "nlperim.hpp"

#include <json.hpp>

#include <cstdio>
#include <string>

namespace nlp {

using json = nlohmann::json;

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, const std::string& what) : std::runtime_error(field + ": " + what) {}
};

// FNV-1a over the canonical (sorted-key) dump.
inline std::string config_hash(const json& j) {
  std::string s = j.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace config {

template <class T>
T get(const json& j, const std::string& path, const std::string& key, T fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(path + "." + key, "wrong type");
  }
}

inline const json& need(const json& j, const std::string& path, const std::string& key) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(path + "." + key, "missing");
  return j.at(key);
}

inline std::vector<double> numbers(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of numbers");
  std::vector<double> v;
  for (const auto& x : j) {
    if (!x.is_number()) throw ConfigError(path, "expected an array of numbers");
    v.push_back(x.get<double>());
  }
  return v;
}

inline Point point(const json& j, const std::string& path, int dim) {
  auto v = numbers(j, path);
  if (static_cast<int>(v.size()) != dim)
    throw ConfigError(path, "expected " + std::to_string(dim) + " coordinates, got " + std::to_string(v.size()));
  return Point::from(v);
}

inline HorizontalVector horizontal(const json& j, const std::string& path, const StratifiedGroup& g) {
  auto v = numbers(j, path);
  if (static_cast<int>(v.size()) != g.horizontal_dim())
    throw ConfigError(path, "expected " + std::to_string(g.horizontal_dim()) + " horizontal components");
  HorizontalVector h = HorizontalVector::from(v);
  if (h.norm() == 0.0) throw ConfigError(path, "zero normal");
  return h;
}

inline StratifiedGroup group(const json& j) {
  std::string name = j.is_string() ? j.get<std::string>() : get<std::string>(j, "group", "name", "");
  try {
    return groups::by_name(name);
  } catch (const std::exception& e) {
    throw ConfigError("group", e.what());
  }
}

inline HomogeneousNorm norm(const StratifiedGroup& g, const json& j) {
  std::string kind = j.is_string() ? j.get<std::string>() : "";
  if (kind.empty()) kind = g.abelian() ? "euclidean" : (g.name() == "H1" ? "koranyi" : "box");
  try {
    return HomogeneousNorm(g, norm_kind_from(kind));
  } catch (const std::exception& e) {
    throw ConfigError("norm", e.what());
  }
}

inline Kernel kernel(const HomogeneousNorm& n, const json& j, const std::string& path = "kernel") {
  std::string type = get<std::string>(j, path, "type", "fractional");
  auto base = [&]() -> Kernel {
    if (type == "fractional") return Kernel::fractional(n, get<double>(j, path, "alpha", 0.5));
    if (type == "truncated_fractional") return Kernel::truncated_fractional(n, get<double>(j, path, "alpha", 0.5));
    if (type == "compact_bump")
      return Kernel::compact_bump(n, get<double>(j, path, "height", 1.0), get<double>(j, path, "radius", 1.0));
    if (type == "exponential") return Kernel::exponential(n, get<double>(j, path, "height", 1.0));
    if (type == "custom")
      return Kernel::custom(n, get<double>(j, path, "p_near", n.Q() + 0.5), get<double>(j, path, "p_far", n.Q() + 1.0),
                            get<double>(j, path, "crossover", 1.0), get<double>(j, path, "height", 1.0));
    throw ConfigError(path + ".type", "unknown kernel type '" + type + "'");
  };
  try {
    Kernel k = base();
    if (get<bool>(j, path, "truncate", false)) k = k.truncated();
    double eps = get<double>(j, path, "rescale", 1.0);
    if (eps != 1.0) k = k.rescaled(eps);
    return k;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(path + (type == "fractional" || type == "truncated_fractional" ? ".alpha" : ""), e.what());
  }
}

inline McConfig mc(const json& j) {
  McConfig c;
  c.samples = get<std::uint64_t>(j, "mc", "samples", c.samples);
  c.seed = get<std::uint64_t>(j, "mc", "seed", c.seed);
  c.core_radius = get<double>(j, "mc", "core_radius", c.core_radius);
  c.outer_radius = get<double>(j, "mc", "outer_radius", c.outer_radius);
  c.shells_per_decade = get<int>(j, "mc", "shells_per_decade", c.shells_per_decade);
  c.pv_cutoff = get<double>(j, "mc", "pv_cutoff", c.pv_cutoff);
  try {
    c.tail_policy = tail_policy_from(get<std::string>(j, "mc", "tail_policy", to_string(c.tail_policy)));
    c.validate();
  } catch (const std::exception& e) {
    throw ConfigError("mc", e.what());
  }
  return c;
}

inline Region region(const StratifiedGroup& g, const HomogeneousNorm& n, const json& j, const std::string& path) {
  std::string type = get<std::string>(j, path, "type", "");
  if (type.empty()) throw ConfigError(path + ".type", "missing");
  auto sub = [&](const std::string& key) { return region(g, n, need(j, path, key), path + "." + key); };
  auto list = [&](const std::string& key) {
    const json& a = need(j, path, key);
    if (!a.is_array() || a.empty()) throw ConfigError(path + "." + key, "expected a non-empty array of regions");
    std::vector<Region> out;
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(region(g, n, a[i], path + "." + key + "[" + std::to_string(i) + "]"));
    return out;
  };
  try {
    if (type == "halfspace")
      return regions::halfspace(g, horizontal(need(j, path, "nu"), path + ".nu", g), get<double>(j, path, "offset", 0.0));
    if (type == "perturbed_halfspace")
      return regions::perturbed_halfspace(g, horizontal(need(j, path, "nu"), path + ".nu", g),
                                          get<double>(j, path, "amplitude", 0.1), get<double>(j, path, "width", 0.5));
    if (type == "unit_ball") return regions::unit_ball(n);
    if (type == "ball") {
      Point c = j.contains("center") ? point(j["center"], path + ".center", g.dim()) : g.identity();
      return regions::ball(n, c, get<double>(j, path, "radius", 1.0));
    }
    if (type == "box")
      return regions::coordinate_box(g, Box{point(need(j, path, "lo"), path + ".lo", g.dim()), point(need(j, path, "hi"), path + ".hi", g.dim())});
    if (type == "voxel")
      return regions::voxel(g, std::make_shared<const VoxelMask>(VoxelMask::load(need(j, path, "path").get<std::string>())));
    if (type == "empty") return regions::empty(g);
    if (type == "full") return regions::full(g);
    if (type == "complement") return regions::complement(sub("of"));
    if (type == "intersection" || type == "union") {
      auto rs = list("of");
      Region r = rs.front();
      for (std::size_t i = 1; i < rs.size(); ++i) r = type == "union" ? regions::unite(r, rs[i]) : regions::intersect(r, rs[i]);
      return r;
    }
    if (type == "difference") return regions::difference(sub("of"), sub("minus"));
    if (type == "translated") return regions::translated(sub("of"), point(need(j, path, "by"), path + ".by", g.dim()));
    if (type == "dilated") return regions::dilated(sub("of"), get<double>(j, path, "lambda", 1.0));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(path, e.what());
  }
  throw ConfigError(path + ".type", "unknown region type '" + type + "'");
}

inline ScalarField field(const StratifiedGroup& g, const HomogeneousNorm& n, const json& j, const std::string& path) {
  std::string type = get<std::string>(j, path, "type", "");
  try {
    if (type == "indicator") return fields::indicator(region(g, n, need(j, path, "set"), path + ".set"));
    if (type == "constant") return fields::constant(g, get<double>(j, path, "value", 0.0));
    if (type == "multilevel") {
      auto w = numbers(need(j, path, "weights"), path + ".weights");
      const json& a = need(j, path, "sets");
      std::vector<Region> rs;
      for (std::size_t i = 0; i < a.size(); ++i) rs.push_back(region(g, n, a[i], path + ".sets[" + std::to_string(i) + "]"));
      return fields::multilevel(w, rs);
    }
    if (type == "clamped_linear")
      return fields::clamped_linear(g, horizontal(need(j, path, "nu"), path + ".nu", g), get<double>(j, path, "offset", 0.0),
                                    get<double>(j, path, "slope", 1.0));
    if (type == "bump") return fields::bump(g, point(need(j, path, "widths"), path + ".widths", g.dim()));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(path, e.what());
  }
  throw ConfigError(path + ".type", "unknown field type '" + type + "'");
}

}  // namespace config
}  // namespace nlp
