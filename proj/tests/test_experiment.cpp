#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ahdacs/experiment.hpp"

using namespace ahdacs;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int line_count(const std::string& text) {
  int n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

ExperimentConfig tiny_config(const std::string& out) {
  ExperimentConfig c;
  c.field.kind = FieldKind::Piecewise;
  c.node_counts = {64, 96};
  c.branching = 2;
  c.levels = 4;
  c.fractions = {0.01};
  c.master_seed = 7;
  c.repetitions = 2;
  c.out_dir = out;
  return c;
}

}  // namespace

TEST_CASE("experiment grid writes every table with the documented schemas") {
  const fs::path dir = fs::temp_directory_path() / "ahdacs_exp_schema";
  fs::remove_all(dir);
  run_experiment(tiny_config(dir.string()));

  const std::string runs = slurp(dir / "runs.csv");
  CHECK(runs.rfind("protocol,field,nodes,n,T,fraction,seed,total_tx_J,total_rx_J,total_bits,"
                   "enabled,disabled,root_mse\n", 0) == 0);
  CHECK(line_count(runs) == 1 + 2 * 2 * 2);  // sizes x reps x protocols

  const std::string levels = slurp(dir / "levels.csv");
  CHECK(levels.rfind("field,nodes,fraction,rep,protocol,level,mse,rho,enabled_count,"
                     "disabled_count\n", 0) == 0);
  CHECK(line_count(levels) == 1 + 2 * 2 * 2 * 4);  // ... x tree levels

  const std::string census = slurp(dir / "census.csv");
  CHECK(census.rfind("field,nodes,fraction,rep,condition,count\n", 0) == 0);
  CHECK(line_count(census) == 1 + 2 * 2 * 5);  // sizes x reps x conditions

  const std::string nodes = slurp(dir / "nodes.csv");
  CHECK(nodes.rfind("nodes,rep,id,x,y,cluster,role\n", 0) == 0);
  CHECK(line_count(nodes) == 1 + 2 * (64 + 96));

  CHECK(slurp(dir / "summary.json").find("tx_energy_ratio") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("identical configs produce byte-identical outputs") {
  const fs::path a = fs::temp_directory_path() / "ahdacs_exp_a";
  const fs::path b = fs::temp_directory_path() / "ahdacs_exp_b";
  fs::remove_all(a);
  fs::remove_all(b);
  run_experiment(tiny_config(a.string()));
  run_experiment(tiny_config(b.string()));
  for (const char* name : {"runs.csv", "levels.csv", "census.csv", "nodes.csv", "summary.json"})
    CHECK(slurp(a / name) == slurp(b / name));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("environment seeds pair runs across protocols and fractions") {
  CHECK(environment_seed(1, 400, 0) == environment_seed(1, 400, 0));
  CHECK(environment_seed(1, 400, 0) != environment_seed(1, 400, 1));
  CHECK(environment_seed(1, 400, 0) != environment_seed(1, 300, 0));
  CHECK(environment_seed(1, 400, 0) != environment_seed(2, 400, 0));
}

TEST_CASE("config validation names the offending field") {
  ExperimentConfig c = tiny_config("out");
  c.node_counts = {};
  CHECK_THROWS_WITH_AS(c.validate(), "nodes: at least one size required", std::invalid_argument);

  c = tiny_config("out");
  c.fractions = {1.5};
  CHECK_THROWS_WITH_AS(c.validate(), "fractions: values must be in (0,1)", std::invalid_argument);

  c = tiny_config("out");
  c.levels = 9;  // 2^8 = 256 cells > 64 nodes
  CHECK_THROWS_WITH_AS(c.validate(), "levels: branching^(levels-1) exceeds the smallest size",
                       std::invalid_argument);

  c = tiny_config("out");
  c.repetitions = 0;
  CHECK_THROWS_WITH_AS(c.validate(), "reps: must be >= 1", std::invalid_argument);
}

TEST_CASE("config file round trip with overrides") {
  const fs::path p = fs::temp_directory_path() / "ahdacs_config.json";
  {
    std::ofstream out(p);
    out << R"({"field": {"kind": "bumps", "base": 5.5, "bump_count": 7},
               "nodes": [128], "branching": 2, "levels": 4,
               "fractions": [0.02], "protocols": ["ahdacs"],
               "seed": 99, "reps": 3, "out": "somewhere"})";
  }
  ExperimentConfig c = load_config(p);
  CHECK(c.field.kind == FieldKind::GaussianBumps);
  CHECK(c.field.base == 5.5);
  CHECK(c.field.bump_count == 7);
  CHECK(c.node_counts == std::vector<int>{128});
  CHECK(c.fractions == std::vector<double>{0.02});
  CHECK(c.protocols.size() == 1);
  CHECK(c.master_seed == 99);
  CHECK(c.repetitions == 3);
  CHECK(c.out_dir == "somewhere");
  fs::remove(p);

  CHECK_THROWS(load_config(fs::temp_directory_path() / "ahdacs_missing.json"));
}

TEST_CASE("threshold sweep: monotone MSE, small at the operating point") {
  ExperimentConfig c = tiny_config((fs::temp_directory_path() / "ahdacs_sweep").string());
  c.node_counts = {400};
  c.levels = 5;
  c.repetitions = 1;
  c.fractions = {0.005, 0.01};
  auto rows = sweep_threshold(c);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].root_mse < 0.1);
  CHECK(rows[1].root_mse < 0.1);
  CHECK(rows[1].root_mse >= rows[0].root_mse - 1e-12);
  CHECK(slurp(fs::path(c.out_dir) / "sweep.csv")
            .rfind("fraction,field,root_mse\n", 0) == 0);
  fs::remove_all(c.out_dir);
}

TEST_CASE("threshold sweep: coarse truncation on bumps is far worse than 1%") {
  ExperimentConfig c = tiny_config((fs::temp_directory_path() / "ahdacs_sweep_b").string());
  c.field.kind = FieldKind::GaussianBumps;
  c.node_counts = {400};
  c.levels = 5;
  c.repetitions = 1;
  c.fractions = {0.01, 0.5};
  auto rows = sweep_threshold(c);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].root_mse > 5.0 * rows[0].root_mse);
  fs::remove_all(c.out_dir);
}
