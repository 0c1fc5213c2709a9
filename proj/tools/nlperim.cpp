// nlperim: run nonlocal perimeter experiments from JSON configs.

#include "nlperim/experiments.hpp"

#include <CLI11.hpp>

#include <boost/version.hpp>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using nlp::json;

namespace {

constexpr const char* kVersion = "0.3.0";

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw nlp::ConfigError("--config", "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw nlp::ConfigError("--config", std::string("invalid JSON: ") + e.what());
  }
}

void write_file(const fs::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << s;
}

std::string utc_now() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

json load_config(const std::string& path, const std::string& kind, const std::optional<std::uint64_t>& seed) {
  json user = path.empty() ? json{{"experiment", kind}} : read_json(path);
  if (!kind.empty() && !path.empty()) user["experiment"] = kind;
  json j = nlp::resolve_config(user);
  if (seed) j["mc"]["seed"] = *seed;
  return j;
}

int cmd_list(bool as_json) {
  json out = json::array();
  for (const auto& k : nlp::experiment_catalog()) out.push_back({{"name", k.name}, {"description", k.description}, {"defaults", k.defaults()}});
  if (as_json) {
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  for (const auto& k : out) std::cout << k["name"].get<std::string>() << "  " << k["description"].get<std::string>() << "\n";
  return 0;
}

int cmd_validate(const json& cfg, bool as_json) {
  // Building every object resolves all specs without running estimators.
  nlp::Setup s = nlp::setup(cfg);
  for (const char* key : {"region", "omega"})
    if (cfg.contains(key)) nlp::config::region(s.G, s.norm, cfg[key], key);
  if (cfg.contains("field")) nlp::config::field(s.G, s.norm, cfg["field"], "field");
  if (cfg.contains("kernel")) nlp::config::kernel(s.norm, cfg["kernel"]);
  if (as_json)
    std::cout << json{{"valid", true}, {"config_hash", nlp::config_hash(cfg)}, {"config", cfg}}.dump(2) << "\n";
  else
    std::cout << "valid (" << nlp::config_hash(cfg) << ")\n";
  return 0;
}

int cmd_run(const json& cfg, const std::string& out_dir, bool as_json) {
  auto t0 = std::chrono::steady_clock::now();
  std::string started = utc_now();
  nlp::Outcome o = nlp::run_experiment(cfg);
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::string hash = nlp::config_hash(cfg);
  std::uint64_t seed = cfg["mc"]["seed"].get<std::uint64_t>();
  json result = nlp::outcome_json(o, hash, seed);

  fs::path dir(out_dir);
  fs::create_directories(dir);
  write_file(dir / "results.json", result.dump(2) + "\n");
  if (!o.tables.empty()) write_file(dir / "results.csv", o.tables.front().csv());
  for (std::size_t i = 1; i < o.tables.size(); ++i) write_file(dir / (o.tables[i].name + ".csv"), o.tables[i].csv());
  json manifest;
  manifest["config_hash"] = hash;
  manifest["seed"] = seed;
  manifest["config"] = cfg;
  manifest["threads"] = nlp::thread_count();
  manifest["versions"] = {{"nlperim", kVersion}, {"boost", BOOST_LIB_VERSION}, {"compiler", __VERSION__}};
  manifest["started_at"] = started;
  manifest["wall_time_s"] = wall;
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");

  if (as_json) {
    std::cout << result.dump(2) << "\n";
  } else {
    for (const auto& c : o.checks)
      std::cout << (c.pass ? "PASS " : (c.asserted ? "FAIL " : "note ")) << c.name << "  statistic=" << c.statistic
                << " threshold=" << c.threshold << "\n";
    std::cout << o.kind << ": " << (o.pass() ? "all checks passed" : "check failure") << " (" << wall << " s)\n";
  }
  return o.pass() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo experiments for nonlocal perimeters on Carnot groups"};
  app.require_subcommand(1);
  std::string config_path, out_dir = "out", kind;
  std::optional<std::uint64_t> seed;
  int threads = -1;
  bool as_json = false;

  auto* run = app.add_subcommand("run", "run an experiment");
  auto* list = app.add_subcommand("list", "list experiment kinds");
  auto* validate = app.add_subcommand("validate", "resolve and check a config without running it");
  for (auto* sc : {run, validate}) {
    sc->add_option("--config", config_path, "experiment config (JSON)");
    sc->add_option("--experiment", kind, "experiment kind; overrides the config's");
    sc->add_option("--seed", seed, "master seed");
  }
  run->add_option("--threads", threads, "worker threads (default: NLP_DEFAULT_THREADS or hardware)");
  run->add_option("--out", out_dir, "output directory");
  for (auto* sc : {run, list, validate}) sc->add_flag("--json", as_json, "machine-readable output");

  CLI11_PARSE(app, argc, argv);
  try {
    if (threads >= 0) nlp::set_default_threads(threads);
    if (list->parsed()) return cmd_list(as_json);
    if (config_path.empty() && kind.empty()) throw nlp::ConfigError("--config", "either --config or --experiment is required");
    json cfg = load_config(config_path, kind, seed);
    if (validate->parsed()) return cmd_validate(cfg, as_json);
    return cmd_run(cfg, out_dir, as_json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
