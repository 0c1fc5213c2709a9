#include <nlperim/config.hpp>
#include <nlperim/experiments.hpp>

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace nlp;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string& args) {
  std::string cmd = std::string(NLPERIM_CLI) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  auto d = fs::temp_directory_path() / ("nlperim_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

fs::path write_config(const fs::path& dir, const json& j) {
  auto p = dir / "config.json";
  std::ofstream(p) << j.dump(2);
  return p;
}

json small_perimeter() {
  return {{"experiment", "perimeter"}, {"mc", {{"samples", 20000}}}};
}

}  // namespace

TEST(Config, HashIgnoresKeyOrder) {
  json a = json::parse(R"({"b": 1, "a": {"y": 2, "x": 3}})");
  json b = json::parse(R"({"a": {"x": 3, "y": 2}, "b": 1})");
  EXPECT_EQ(config_hash(a), config_hash(b));
  EXPECT_NE(config_hash(a), config_hash(json::parse(R"({"b": 2, "a": {"x": 3, "y": 2}})")));
  EXPECT_EQ(config_hash(a).size(), 16u);
}

TEST(Config, ResolvedConfigEchoesDefaults) {
  json r = resolve_config(small_perimeter());
  EXPECT_EQ(r["mc"]["samples"], 20000);
  EXPECT_EQ(r["mc"]["seed"], McConfig{}.seed);
  EXPECT_TRUE(r.contains("kernel"));
  EXPECT_TRUE(r.contains("omega"));
  EXPECT_THROW(resolve_config(json{{"experiment", "nope"}}), ConfigError);
  EXPECT_THROW(resolve_config(json::array()), ConfigError);
}

TEST(Config, FieldErrorsNameTheField) {
  auto n = HomogeneousNorm(groups::heisenberg(), NormKind::koranyi);
  try {
    config::kernel(n, json{{"type", "fractional"}, {"alpha", 1.5}});
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_STREQ(e.what(), "kernel.alpha: alpha outside (0,1)");
  }
  try {
    config::region(n.group(), n, json{{"type", "ball"}, {"center", {0.0, 0.0}}}, "region");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("region.center"), std::string::npos);
  }
  EXPECT_THROW(config::region(n.group(), n, json{{"type", "blob"}}, "omega"), ConfigError);
  EXPECT_THROW(config::mc(json{{"samples", 0}}), ConfigError);
}

TEST(Cli, ListNamesEveryExperiment) {
  auto r = cli("list --json");
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = json::parse(r.out);
  std::set<std::string> names;
  for (const auto& e : j) names.insert(e["name"].get<std::string>());
  for (const char* k : {"perimeter", "coarea", "calibrate", "minimality", "gamma", "davila", "checks"})
    EXPECT_TRUE(names.count(k)) << k;
}

TEST(Cli, BadAlphaExitsWithFieldError) {
  auto d = scratch("alpha");
  json cfg = small_perimeter();
  cfg["kernel"] = {{"type", "fractional"}, {"alpha", 1.5}};
  auto r = cli("run --config " + write_config(d, cfg).string() + " --out " + (d / "out").string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("kernel.alpha: alpha outside (0,1)"), std::string::npos) << r.out;
  EXPECT_FALSE(fs::exists(d / "out" / "results.json"));
  auto v = cli("validate --config " + (d / "config.json").string());
  EXPECT_EQ(v.code, 1);
}

TEST(Cli, RerunsAreByteIdentical) {
  auto d = scratch("rerun");
  auto cfg = write_config(d, small_perimeter()).string();
  auto a = cli("run --config " + cfg + " --threads 1 --out " + (d / "a").string());
  auto b = cli("run --config " + cfg + " --threads 3 --out " + (d / "b").string());
  ASSERT_EQ(a.code, 0) << a.out;
  ASSERT_EQ(b.code, 0) << b.out;
  for (const char* f : {"results.json", "results.csv"}) {
    ASSERT_TRUE(fs::exists(d / "a" / f)) << f;
    EXPECT_EQ(slurp(d / "a" / f), slurp(d / "b" / f)) << f;
  }
  auto m = json::parse(slurp(d / "a" / "manifest.json"));
  EXPECT_EQ(m["config_hash"], config_hash(resolve_config(small_perimeter())));
  EXPECT_EQ(m["seed"], McConfig{}.seed);
  EXPECT_TRUE(m.contains("wall_time_s"));
  EXPECT_EQ(m["config"], resolve_config(small_perimeter()));
  auto c = cli("run --config " + cfg + " --seed 7 --out " + (d / "c").string());
  ASSERT_EQ(c.code, 0) << c.out;
  EXPECT_NE(slurp(d / "a" / "results.csv"), slurp(d / "c" / "results.csv"));
  fs::remove_all(d);
}

TEST(Cli, ExperimentFlagOverridesConfig) {
  auto d = scratch("override");
  auto r = cli("validate --experiment davila --json");
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["config"]["experiment"], "davila");
  EXPECT_EQ(cli("run --experiment nope --out " + (d / "x").string()).code, 1);
  fs::remove_all(d);
}
