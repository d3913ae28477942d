#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "helpers.hpp"
#include "scenecrf/cli.hpp"
#include "scenecrf/scene.hpp"

using namespace scenecrf;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  std::streambuf* old_out = std::cout.rdbuf(out.rdbuf());
  std::streambuf* old_err = std::cerr.rdbuf(err.rdbuf());
  CliRun r;
  r.code = cli_main(args);
  std::cout.rdbuf(old_out);
  std::cerr.rdbuf(old_err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::size_t count_lines_containing(const std::string& text, const std::string& needle) {
  std::istringstream lines(text);
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line))
    if (line.find(needle) != std::string::npos) ++n;
  return n;
}

// Prefix match, so "y=" does not also hit "base energy: unary=...".
std::size_t count_lines_prefixed(const std::string& text, const std::string& prefix) {
  std::istringstream lines(text);
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line))
    if (line.rfind(prefix, 0) == 0) ++n;
  return n;
}

// Two close pedestrians with confident, consistent probabilities.
std::string write_two_ped_scene(const std::string& name) {
  Scene s;
  s.pedestrians.push_back(testutil::ped_at("a", 0, 0, Orientation::Left, 0.9));
  s.pedestrians.push_back(testutil::ped_at("b", 30, 0, Orientation::Left, 0.2));
  testutil::set_pp(s, "a", "b", 0.8, 0.1, 0.1);
  s.pe_probs["a"] = 0.85;
  s.pe_probs["b"] = 0.3;
  std::string path = temp_path(name);
  save_scene(s, path);
  return path;
}

}  // namespace

TEST_CASE("infer prints one labeled line per pedestrian and the energy") {
  std::string path = write_two_ped_scene("scenecrf_cli_infer.json");
  CliRun r = run_cli({"infer", path});
  CHECK(r.code == 0);
  CHECK(count_lines_containing(r.out, "->") == 2);
  CHECK(r.out.find("a -> C") != std::string::npos);
  CHECK(r.out.find("b -> NC") != std::string::npos);
  CHECK(r.out.find("inference energy:") != std::string::npos);
  CHECK(r.out.find("method: exhaustive") != std::string::npos);  // n=2 <= threshold 3
  std::filesystem::remove(path);
}

TEST_CASE("exact --distribution prints a normalized table") {
  std::string path = write_two_ped_scene("scenecrf_cli_exact.json");
  CliRun r = run_cli({"exact", path, "--distribution"});
  CHECK(r.code == 0);
  CHECK(count_lines_prefixed(r.out, "y=") == 4);

  double sum = 0.0;
  std::istringstream lines(r.out);
  std::string line;
  while (std::getline(lines, line)) {
    auto pos = line.find("P=");
    if (pos != std::string::npos) sum += std::stod(line.substr(pos + 2));
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  std::filesystem::remove(path);
}

TEST_CASE("usage errors exit with code 1") {
  CHECK(run_cli({}).code == 1);
  CHECK(run_cli({"frobnicate"}).code == 1);
  CHECK(run_cli({"infer"}).code == 1);  // missing scene argument
  std::string path = write_two_ped_scene("scenecrf_cli_usage.json");
  CHECK(run_cli({"infer", path, "--no-such-flag"}).code == 1);
  CHECK(run_cli({"infer", path, "--preset", "bogus"}).code == 1);
  CHECK(run_cli({"infer", path, "--cooling", "1.5"}).code == 1);
  CHECK(run_cli({"infer", path, "--log-eps", "0.7"}).code == 1);
  CHECK(run_cli({"infer", path, "--max-iters", "0"}).code == 1);
  std::filesystem::remove(path);
}

TEST_CASE("data errors exit with code 2 and a diagnostic") {
  CliRun missing = run_cli({"infer", temp_path("scenecrf_cli_nothing.json")});
  CHECK(missing.code == 2);
  CHECK_FALSE(missing.err.empty());

  std::string bad = temp_path("scenecrf_cli_bad.json");
  {
    std::ofstream out(bad);
    out << "{not json";
  }
  CliRun malformed = run_cli({"infer", bad});
  CHECK(malformed.code == 2);
  CHECK_FALSE(malformed.err.empty());
  std::filesystem::remove(bad);

  std::string invalid = temp_path("scenecrf_cli_invalid.json");
  {
    std::ofstream out(invalid);
    out << R"({"pedestrians": [
      {"id": "a", "boxes": [[0, 0, 10, 10]], "orientation": "left", "unary_prob": 1.3}]})";
  }
  CHECK(run_cli({"infer", invalid}).code == 2);
  std::filesystem::remove(invalid);
}

TEST_CASE("help requests succeed") {
  CHECK(run_cli({"--help"}).code == 0);
  CHECK(run_cli({"infer", "--help"}).code == 0);
}

TEST_CASE("explicit weight flags reproduce their preset") {
  std::string path = write_two_ped_scene("scenecrf_cli_preset.json");
  CliRun preset = run_cli({"exact", path, "--preset", "jaad-infer"});
  CliRun manual =
      run_cli({"exact", path, "--alpha", "5.3", "--beta", "0.7", "--gamma", "2.5"});
  CliRun other = run_cli({"exact", path, "--preset", "pie-infer"});
  CHECK(preset.out == manual.out);
  CHECK(preset.out != other.out);

  // A single explicit flag overrides only that weight.
  CliRun tweaked = run_cli({"exact", path, "--preset", "jaad-infer", "--beta", "9"});
  CHECK(tweaked.out != preset.out);
  std::filesystem::remove(path);
}

TEST_CASE("generate emits a loadable, deterministic scene") {
  std::string a = temp_path("scenecrf_cli_gen_a.json");
  std::string b = temp_path("scenecrf_cli_gen_b.json");
  CHECK(run_cli({"generate", "--n", "4", "--seed", "9", "-o", a}).code == 0);
  CHECK(run_cli({"generate", "--n", "4", "--seed", "9", "-o", b}).code == 0);
  CHECK(slurp(a) == slurp(b));
  Scene s = load_scene(a);
  CHECK(s.pedestrians.size() == 4);
  CHECK(run_cli({"generate", "--n", "0"}).code == 1);
  CHECK(run_cli({"generate", "--confidence", "0.4", "-o", a}).code == 1);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST_CASE("bench writes byte-identical reports across runs") {
  std::string a = temp_path("scenecrf_cli_bench_a.json");
  std::string b = temp_path("scenecrf_cli_bench_b.json");
  std::vector<std::string> base = {"bench", "--trials", "10",   "--n",    "4",
                                   "--gen-seed", "3",   "--seed", "11"};
  std::vector<std::string> first = base;
  first.insert(first.end(), {"-o", a});
  std::vector<std::string> second = base;
  second.insert(second.end(), {"-o", b});

  CliRun ra = run_cli(first);
  CliRun rb = run_cli(second);
  CHECK(ra.code == 0);
  CHECK(rb.code == 0);
  CHECK(slurp(a) == slurp(b));

  nlohmann::json doc = nlohmann::json::parse(slurp(a));
  CHECK(doc.at("scenes") == 10);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST_CASE("trace writes the CSV schedule") {
  std::string scene = write_two_ped_scene("scenecrf_cli_trace.json");
  std::string csv = temp_path("scenecrf_cli_trace.csv");
  CliRun r = run_cli({"trace", scene, "-o", csv});
  CHECK(r.code == 0);
  std::string text = slurp(csv);
  CHECK(text.rfind("evaluation,candidate_energy,best_energy,temperature\n", 0) == 0);
  // n=2: seed + max(64, 40) proposals.
  CHECK(count_lines_containing(text, ",") == 66);
  std::filesystem::remove(scene);
  std::filesystem::remove(csv);
}

TEST_CASE("unused pair probabilities trigger a warning") {
  Scene s;
  s.pedestrians.push_back(testutil::ped_at("a", 0, 0, Orientation::Left, 0.6));
  s.pedestrians.push_back(testutil::ped_at("b", 500, 0, Orientation::Left, 0.6));
  testutil::set_pp(s, "a", "b", 0.2, 0.4, 0.4);  // too far apart to become an edge
  s.pe_probs["a"] = 0.5;
  s.pe_probs["b"] = 0.5;
  std::string path = temp_path("scenecrf_cli_unused.json");
  save_scene(s, path);
  CliRun r = run_cli({"infer", path});
  CHECK(r.code == 0);
  CHECK(r.err.find("not used") != std::string::npos);
  std::filesystem::remove(path);
}
