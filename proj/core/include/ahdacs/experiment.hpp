#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ahdacs/field.hpp"
#include "ahdacs/metrics.hpp"
#include "ahdacs/protocol.hpp"
#include "ahdacs/topology.hpp"

namespace ahdacs {

struct FieldConfig {
  FieldKind kind = FieldKind::Piecewise;
  double extent = 4000.0;
  // gaussian-bumps
  int bump_count = 10;
  double height = 10.0;
  double decay = 0.01;
  double base = 8.0;
  // piecewise
  double low = 10.0;
  double high = 20.0;
  double noise_variance = 0.01;
};

struct ExperimentConfig {
  FieldConfig field;
  std::vector<int> node_counts{400};
  int branching = 2;
  int levels = 5;
  std::vector<double> fractions{0.01};
  std::vector<Protocol> protocols{Protocol::AHdacs, Protocol::Hdacs};
  std::uint64_t master_seed = 1;
  int repetitions = 1;
  std::string out_dir = "out";

  void validate() const;  // throws std::invalid_argument naming the offending field
};

ExperimentConfig load_config(const std::filesystem::path& json_path);
FieldKind parse_field_kind(const std::string& name);
Protocol parse_protocol(const std::string& name);

// Environment seed shared by both protocols and all fractions of a
// (size, repetition) cell, so comparisons are paired.
std::uint64_t environment_seed(std::uint64_t master, int node_count, int repetition);

struct CellResult {
  Protocol protocol = Protocol::AHdacs;
  int node_count = 0;
  double fraction = 0.0;
  int repetition = 0;
  std::uint64_t seed = 0;  // environment seed
  AggregationTrace trace;
  std::vector<double> mse_levels;
  int enabled = 0;   // cluster decisions at levels 1..T-1
  int disabled = 0;
  double root_mse = 0.0;
};

// One protocol run on a freshly built environment.
CellResult run_cell(const ExperimentConfig& config, Protocol protocol, int node_count,
                    double fraction, int repetition, const ScalarField& field,
                    const NodeSet& nodes, const ClusterTree& tree);

ScalarField make_field(const FieldConfig& config, std::uint64_t env_seed);

// Full grid: sizes x fractions x repetitions x protocols. Writes runs.csv,
// levels.csv, census.csv, nodes.csv and summary.json under config.out_dir.
void run_experiment(const ExperimentConfig& config);

struct SweepRow {
  double fraction = 0.0;
  std::string field;
  double root_mse = 0.0;
};

// Fig.-style threshold sweep at the first configured size; writes sweep.csv.
std::vector<SweepRow> sweep_threshold(const ExperimentConfig& config);

std::string format_double(double v);  // shortest round-trip decimal

}  // namespace ahdacs
