#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "bbnet/hash.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommandResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

CommandResult run_cli(const std::string& args) {
  const std::string base = BBNET_CLI_PATH;
  const fs::path out_file = fs::temp_directory_path() / "bbnet_cli_out.txt";
  const fs::path err_file = fs::temp_directory_path() / "bbnet_cli_err.txt";
  const std::string cmd = base + " " + args + " >" + out_file.string() + " 2>" +
                          err_file.string();
  const int status = std::system(cmd.c_str());
  CommandResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  result.out = slurp(out_file);
  result.err = slurp(err_file);
  return result;
}

std::string file_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_config(const fs::path& dir, const std::string& body) {
  const fs::path file = dir / "config.ini";
  std::ofstream out(file);
  out << body;
  return file;
}

const std::string kSmallRunConfig =
    "[graph]\nkind = ba\nn = 8\nm = 2\n"
    "[sis]\nnu = 0.7\ndelta = 0.3\n"
    "[experiment]\nmappings = 2\ntrials = 2\n";

}  // namespace

TEST_CASE("gen-graph is deterministic and writes a loadable file") {
  auto dir = fresh_dir("bbnet_cli_gen");
  auto a = run_cli("gen-graph --ba --n 500 --m 3 --seed 9 --out " +
                   (dir / "a.graph").string());
  auto b = run_cli("gen-graph --ba --n 500 --m 3 --seed 9 --out " +
                   (dir / "b.graph").string());
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  CHECK(file_bytes(dir / "a.graph") == file_bytes(dir / "b.graph"));

  auto j = json::parse(a.out);
  CHECK(j["nodes"] == 500);
  CHECK(j["edges"] == 3 + 3 * 497);
  // Heavy tail: max degree well above the mean.
  CHECK(j["max_degree"].get<double>() > 4 * j["mean_degree"].get<double>());
}

TEST_CASE("stdout carries exactly one JSON document") {
  auto r = run_cli("enumerate --k 12");
  CHECK(r.exit_code == 0);
  CHECK_NOTHROW(json::parse(r.out));
  // Every stdout line must be part of the JSON payload; diagnostics belong
  // to stderr.
  CHECK(r.out.find('{') == 0);
}

TEST_CASE("bad parameters exit with code 2 and a stderr message") {
  auto r = run_cli("gen-graph --ba --n 5 --m 9 --seed 1");
  CHECK(r.exit_code == 2);
  CHECK(r.out.empty());
  CHECK(r.err.find("n >= m0 >= m >= 1") != std::string::npos);

  auto missing_seed = run_cli("run --config /nonexistent.ini");
  CHECK(missing_seed.exit_code == 2);

  auto unknown = run_cli("frobnicate");
  CHECK(unknown.exit_code == 2);
}

TEST_CASE("runtime failures exit with code 3") {
  auto r = run_cli("analyze --dir /nonexistent-dir");
  CHECK(r.exit_code == 3);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("run is idempotent and dry-run writes nothing") {
  auto dir = fresh_dir("bbnet_cli_run");
  auto config = write_config(dir, kSmallRunConfig);

  auto dry = run_cli("run --config " + config.string() + " --seed 11 --dry-run");
  CHECK(dry.exit_code == 0);
  auto dj = json::parse(dry.out);
  CHECK(dj["dry_run"] == true);
  CHECK(dj["plan"]["nodes"] == 8);
  CHECK_FALSE(fs::exists(dir / "out"));

  const auto t0 = std::chrono::steady_clock::now();
  auto first = run_cli("run --config " + config.string() + " --seed 11 --out " +
                       (dir / "out").string());
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(first.exit_code == 0);
  CHECK(elapsed < 1.0);  // smoke benchmark for the minimal config

  auto j1 = json::parse(first.out);
  const std::string trace1 = file_bytes(dir / "out" / "trace.csv");
  const std::string prev1 = file_bytes(dir / "out" / "prevalence.csv");

  fs::remove_all(dir / "out");
  auto second = run_cli("run --config " + config.string() + " --seed 11 --out " +
                        (dir / "out").string());
  CHECK(second.exit_code == 0);
  auto j2 = json::parse(second.out);
  CHECK(j1["hashes"] == j2["hashes"]);
  CHECK(file_bytes(dir / "out" / "trace.csv") == trace1);
  CHECK(file_bytes(dir / "out" / "prevalence.csv") == prev1);

  // The resolved config is echoed for provenance.
  CHECK(fs::exists(dir / "out" / "config.resolved.ini"));
  CHECK(fs::exists(dir / "out" / "summary.json"));
}

TEST_CASE("config overrides beat the file") {
  auto dir = fresh_dir("bbnet_cli_override");
  auto config = write_config(dir, kSmallRunConfig);
  auto r = run_cli("run --config " + config.string() +
                   " --set graph.n=12 --seed 3 --dry-run");
  CHECK(r.exit_code == 0);
  CHECK(json::parse(r.out)["plan"]["nodes"] == 12);
}

TEST_CASE("violated cycle arithmetic is reported as the inequality") {
  auto dir = fresh_dir("bbnet_cli_cycles");
  auto config = write_config(dir, kSmallRunConfig +
                                      "[cycles]\ntimes = 5\ntotal = 3\n");
  auto r = run_cli("run --config " + config.string() + " --seed 3 --dry-run");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("c0 + |T| + 1 <= n") != std::string::npos);

  // An identity schedule cannot absorb a positive cycle offset.
  auto config2 = write_config(dir, kSmallRunConfig + "[cycles]\nc0 = 2\n");
  auto r2 = run_cli("run --config " + config2.string() + " --seed 3 --dry-run");
  CHECK(r2.exit_code == 2);
  CHECK(r2.err.find("c(z+f+2) >= c0+z+f+2") != std::string::npos);
}

TEST_CASE("analyze --check catches tampered outputs") {
  auto dir = fresh_dir("bbnet_cli_check");
  auto config = write_config(dir, kSmallRunConfig);
  auto run = run_cli("run --config " + config.string() + " --seed 21 --out " +
                     (dir / "out").string());
  REQUIRE(run.exit_code == 0);

  auto ok = run_cli("analyze --dir " + (dir / "out").string() + " --check");
  CHECK(ok.exit_code == 0);
  CHECK(json::parse(ok.out)["consistent"] == true);

  // Flip one tau value.
  const fs::path prev = dir / "out" / "prevalence.csv";
  std::string text = file_bytes(prev);
  const auto pos = text.find("\n0,0,");
  REQUIRE(pos != std::string::npos);
  auto line_end = text.find('\n', pos + 1);
  std::string line = text.substr(pos + 1, line_end - pos - 1);
  auto last_comma = line.rfind(',');
  auto second_last = line.rfind(',', last_comma - 1);
  line = line.substr(0, second_last + 1) + "0.987654321" + line.substr(last_comma);
  text = text.substr(0, pos + 1) + line + text.substr(line_end);
  std::ofstream(prev) << text;

  auto bad = run_cli("analyze --dir " + (dir / "out").string() + " --check");
  CHECK(bad.exit_code == 4);
  CHECK(json::parse(bad.out)["consistent"] == false);
}

TEST_CASE("sweep single cell summary parses and is reproducible") {
  auto dir = fresh_dir("bbnet_cli_sweep");
  auto config = write_config(dir,
                             "[sweep]\nlambdas = 0.2\nns = 300\ntrials = 2\n"
                             "instants = 100\n");
  auto a = run_cli("sweep --config " + config.string() + " --seed 5 --out " +
                   (dir / "a").string());
  auto b = run_cli("sweep --config " + config.string() + " --seed 5 --out " +
                   (dir / "b").string() + " --jobs 1");
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  // Parallel and serial schedules produce identical rows.
  CHECK(file_bytes(dir / "a" / "sweep.csv") == file_bytes(dir / "b" / "sweep.csv"));
  auto j = json::parse(a.out);
  CHECK(j["cells"] == 1);
}

TEST_CASE("enumeration cache is honored through the environment") {
  auto dir = fresh_dir("bbnet_cli_cache");
  const std::string env = "BBNET_CACHE_DIR=" + dir.string() + " ";
  const std::string base = BBNET_CLI_PATH;
  auto run_env = [&](const std::string& args) {
    const fs::path out_file = fs::temp_directory_path() / "bbnet_cli_out.txt";
    const fs::path err_file = fs::temp_directory_path() / "bbnet_cli_err.txt";
    const std::string cmd = env + base + " " + args + " >" + out_file.string() +
                            " 2>" + err_file.string();
    const int status = std::system(cmd.c_str());
    CommandResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream out_in(out_file), err_in(err_file);
    std::stringstream ob, eb;
    ob << out_in.rdbuf();
    eb << err_in.rdbuf();
    r.out = ob.str();
    r.err = eb.str();
    return r;
  };
  auto first = run_env("enumerate --k 12");
  CHECK(first.exit_code == 0);
  CHECK(first.err.find("cache written") != std::string::npos);
  auto second = run_env("enumerate --k 12");
  CHECK(second.exit_code == 0);
  CHECK(second.err.find("cache hit") != std::string::npos);
  CHECK(json::parse(first.out) == json::parse(second.out));
}
