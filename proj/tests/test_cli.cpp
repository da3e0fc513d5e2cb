#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

std::string work(const std::string& name) {
  fs::create_directories(PFSA_WORK_DIR);
  return (fs::path(PFSA_WORK_DIR) / name).string();
}

int run(const std::string& args) {
  const std::string cmd = std::string(PFSA_CLI) + " " + args + " > " + work("last_stdout.txt") +
                          " 2> " + work("last_stderr.txt");
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::vector<std::string> lines(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& row) {
  std::vector<std::string> out;
  std::stringstream in(row);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  if (!row.empty() && row.back() == ',') out.emplace_back();
  return out;
}

std::string automaton(const std::string& name) {
  return (fs::path(PFSA_DATA_DIR) / "automata" / name).string();
}

}  // namespace

TEST_CASE("gen-traces writes records and a manifest") {
  const std::string out = work("traces.jsonl");
  REQUIRE(run("gen-traces --n-vars 5 --commands 64 --spacing 8 --kind full --count 100 --seed 7 --output " + out) == 0);
  const auto rows = lines(out);
  REQUIRE(rows.size() == 100);
  const Json first = Json::parse(rows.front());
  CHECK(first["n_vars"] == 5);
  CHECK(first["n_commands"] == 64);
  CHECK(first["reveal_spacing"] == 8);
  CHECK(first["command_kind"] == "full_permutation");
  CHECK(first["reveal_spans"].size() == 8);

  const Json manifest = Json::parse(slurp(out + ".manifest.json"));
  CHECK(manifest["command"] == "gen-traces");
  CHECK(manifest["seed"] == 7);
  CHECK(manifest["version"] == "0.1.0");
  CHECK(manifest["config"]["count"] == 100);
  CHECK(manifest["outputs"][0]["path"] == out);
  const std::string digest = manifest["outputs"][0]["sha256"];
  CHECK(digest.size() == 64);

  const std::string before = slurp(out);
  REQUIRE(run("gen-traces --n-vars 5 --commands 64 --spacing 8 --kind full --count 100 --seed 7 --output " + out) == 0);
  CHECK(slurp(out) == before);
  CHECK(Json::parse(slurp(out + ".manifest.json"))["outputs"][0]["sha256"] == digest);

  const std::string copy = work("traces_replayed.jsonl");
  CHECK(run("replay --manifest " + out + ".manifest.json --output " + copy) == 0);
  CHECK(slurp(copy) == before);
  CHECK(run("replay --manifest " + out + ".manifest.json") == 0);

  // A tampered manifest digest is detected.
  Json tampered = manifest;
  tampered["outputs"][0]["sha256"] = std::string(64, '0');
  std::ofstream(work("tampered.manifest.json")) << tampered.dump(2);
  CHECK(run("replay --manifest " + work("tampered.manifest.json") + " --output " + copy) == 1);
}

TEST_CASE("gen-traces curriculum") {
  const std::string out = work("curriculum.jsonl");
  REQUIRE(run("gen-traces --curriculum --stage-samples 15000 --output " + out) == 0);
  const auto rows = lines(out);
  REQUIRE(rows.size() == 60000);
  CHECK(Json::parse(rows[0])["n_commands"] == 8);
  CHECK(Json::parse(rows[15000])["n_commands"] == 16);
  CHECK(Json::parse(rows[30000])["reveal_spacing"] == 4);
  CHECK(Json::parse(rows[59999])["n_commands"] == 64);
  CHECK(Json::parse(rows[59999])["reveal_spacing"] == 8);
}

TEST_CASE("config documents sit under explicit flags") {
  const std::string cfg = work("gen_config.json");
  std::ofstream(cfg) << R"({"n_vars": 3, "count": 4, "kind": "swap", "seed": 1})";
  const std::string out = work("from_config.jsonl");
  REQUIRE(run("gen-traces --config " + cfg + " --seed 9 --output " + out) == 0);
  const auto rows = lines(out);
  REQUIRE(rows.size() == 4);
  CHECK(Json::parse(rows[0])["n_vars"] == 3);
  CHECK(Json::parse(rows[0])["command_kind"] == "elementary_swap");
  const Json manifest = Json::parse(slurp(out + ".manifest.json"));
  CHECK(manifest["seed"] == 9);
  CHECK(manifest["config"]["n_vars"] == 3);

  std::ofstream(work("bad_config.json")) << R"({"n_vars": 3, "colour": "blue"})";
  CHECK(run("gen-traces --config " + work("bad_config.json") + " --output " + work("x.jsonl")) != 0);
}

TEST_CASE("invalid invocations fail") {
  CHECK(run("") != 0);
  CHECK(run("gen-traces --n-vars 1 --output " + work("bad.jsonl")) != 0);
  CHECK(run("gen-traces --commands 0 --output " + work("bad.jsonl")) != 0);
  CHECK(run("gen-traces --output /nonexistent-dir/x.jsonl") != 0);
  CHECK(run("decay --scenario sideways") != 0);
  CHECK(run("decay --significand-bits 0 --output " + work("bad.csv")) != 0);
  CHECK(run("simulate --automaton " + work("missing.json") + " --output " + work("bad.jsonl")) != 0);
  CHECK(run("replay --manifest " + work("missing.manifest.json")) != 0);
}

TEST_CASE("decay tables") {
  const std::string out = work("joint.csv");
  REQUIRE(run("decay --scenario joint-absorbing --cycles 10 --output " + out) == 0);
  auto rows = lines(out);
  REQUIRE(rows.size() == 21);
  CHECK(rows[0] == "step,op,l1_norm,survival,min_nonzero,log2_norm");
  for (int t = 1; t <= 10; ++t) {
    const auto f = fields(rows[static_cast<std::size_t>(2 * t)]);
    CHECK(f[1] == "reveal");
    CHECK(std::stod(f[2]) == std::ldexp(1.0, -t));
  }

  REQUIRE(run("decay --scenario marginal-swap-reveal --cycles 3 --output " + out) == 0);
  rows = lines(out);
  REQUIRE(rows.size() == 7);
  CHECK(std::stod(fields(rows[2])[4]) == 0.5);
  CHECK(std::stod(fields(rows[4])[4]) == 0.25);
  CHECK(std::stod(fields(rows[6])[4]) == 0.125);

  REQUIRE(run("decay --scenario dfa --steps 100 --seed 3 --output " + out) == 0);
  rows = lines(out);
  REQUIRE(rows.size() == 101);
  for (std::size_t k = 1; k < rows.size(); ++k) CHECK(fields(rows[k])[2] == "1");

  REQUIRE(run("decay --scenario joint-absorbing --cycles 200 --significand-bits 24 --min-exponent -126 --output " + out) == 0);
  CHECK(slurp(work("last_stdout.txt")).find("first underflow at step") != std::string::npos);
  REQUIRE(run("decay --scenario full-reveal-every-k --cycles 1000 --reset-every 8 --significand-bits 24 --min-exponent -126 --output " + out) == 0);
  CHECK(slurp(work("last_stdout.txt")).find("no underflow") != std::string::npos);
}

TEST_CASE("simulate logs beliefs") {
  const std::string out = work("sim.jsonl");
  REQUIRE(run("simulate --automaton " + automaton("conditional_swap.json") +
              " --symbols maybe_swap,print_a --output " + out) == 0);
  auto rows = lines(out);
  REQUIRE(rows.size() == 3);
  CHECK(Json::parse(rows[0])["belief"] == Json::array({1.0, 0.0}));
  CHECK(Json::parse(rows[1])["belief"] == Json::array({0.5, 0.5}));
  CHECK(Json::parse(rows[2])["belief"] == Json::array({1.0, 0.0}));
  CHECK(Json::parse(rows[2])["survival"] == 0.5);

  REQUIRE(run("simulate --automaton " + automaton("rotation.json") + " --steps 30 --seed 4 --output " + out) == 0);
  rows = lines(out);
  REQUIRE(rows.size() == 31);
  for (const auto& row : rows) {
    const Json r = Json::parse(row);
    double top = 0.0, total = 0.0;
    for (const auto& p : r["belief"]) {
      top = std::max(top, p.get<double>());
      total += p.get<double>();
    }
    CHECK(top == 1.0);
    CHECK(total == 1.0);
    CHECK(r["belief"][r["state"].get<std::size_t>()] == 1.0);
  }
  const std::string first = slurp(out);
  REQUIRE(run("simulate --automaton " + automaton("rotation.json") + " --steps 30 --seed 4 --output " + out) == 0);
  CHECK(slurp(out) == first);

  REQUIRE(run("simulate --automaton " + automaton("conditional_swap.json") + " --steps 50 --seed 2 --output " + out) == 0);
  for (const auto& row : lines(out)) {
    const Json r = Json::parse(row);
    if (r["symbol"] == "print_a") CHECK(r["belief"] == Json::array({1.0, 0.0}));
    if (r["symbol"] == "maybe_swap") CHECK(r["belief"] == Json::array({0.5, 0.5}));
  }

  CHECK(run("simulate --automaton " + automaton("rotation.json") +
            " --symbols rotate,rotate,swap_01 --output " + out) != 0);
  CHECK(run("simulate --automaton " + automaton("rotation.json") + " --symbols spin --output " + out) != 0);
}

TEST_CASE("verify reports per check and fails on an injected fault") {
  const std::string report = work("verify.json");
  const std::string small = "verify --max-n 3 --steps 10 --samples 20 --traces 100 --report " + report;
  run(small);
  Json r = Json::parse(slurp(report));
  REQUIRE(r.size() == 12);
  CHECK(r[10]["id"] == 11);
  CHECK(r[10]["passed"] == true);
  const std::string clean = slurp(report);

  CHECK(run(small + " --inject-fault") != 0);
  r = Json::parse(slurp(report));
  CHECK(r[10]["passed"] == false);

  // Same configuration, same report bytes.
  run(small);
  CHECK(slurp(report) == clean);
}
