#include "ahdacs/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

#include "ahdacs/rng.hpp"

namespace ahdacs {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

FieldKind parse_field_kind(const std::string& name) {
  if (name == "bumps" || name == "gaussian-bumps") return FieldKind::GaussianBumps;
  if (name == "piecewise") return FieldKind::Piecewise;
  throw std::invalid_argument("field: unknown kind '" + name + "'");
}

Protocol parse_protocol(const std::string& name) {
  if (name == "ahdacs") return Protocol::AHdacs;
  if (name == "hdacs") return Protocol::Hdacs;
  throw std::invalid_argument("protocol: unknown protocol '" + name + "'");
}

void ExperimentConfig::validate() const {
  if (field.extent <= 0.0) throw std::invalid_argument("field.extent: must be > 0");
  if (field.kind == FieldKind::GaussianBumps) {
    if (field.bump_count < 1) throw std::invalid_argument("field.bump_count: must be >= 1");
    if (field.height <= 0.0) throw std::invalid_argument("field.height: must be > 0");
    if (field.decay <= 0.0) throw std::invalid_argument("field.decay: must be > 0");
  } else if (field.noise_variance < 0.0) {
    throw std::invalid_argument("field.noise_variance: must be >= 0");
  }
  if (node_counts.empty()) throw std::invalid_argument("nodes: at least one size required");
  for (int n : node_counts)
    if (n < 1) throw std::invalid_argument("nodes: sizes must be >= 1");
  if (branching < 2) throw std::invalid_argument("branching: must be >= 2");
  if (levels < 2) throw std::invalid_argument("levels: must be >= 2");
  double leaf_cells = std::pow(static_cast<double>(branching), levels - 1);
  for (int n : node_counts)
    if (leaf_cells > static_cast<double>(n))
      throw std::invalid_argument("levels: branching^(levels-1) exceeds the smallest size");
  if (fractions.empty()) throw std::invalid_argument("fractions: at least one value required");
  for (double f : fractions)
    if (!(f > 0.0 && f < 1.0)) throw std::invalid_argument("fractions: values must be in (0,1)");
  if (protocols.empty()) throw std::invalid_argument("protocols: at least one required");
  if (repetitions < 1) throw std::invalid_argument("reps: must be >= 1");
  if (out_dir.empty()) throw std::invalid_argument("out: output directory required");
}

ExperimentConfig load_config(const fs::path& json_path) {
  std::ifstream in(json_path);
  if (!in) throw std::runtime_error("cannot open config file: " + json_path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }

  ExperimentConfig c;
  if (j.contains("field")) {
    const json& f = j["field"];
    if (f.contains("kind")) c.field.kind = parse_field_kind(f["kind"].get<std::string>());
    if (f.contains("extent")) c.field.extent = f["extent"].get<double>();
    if (f.contains("bump_count")) c.field.bump_count = f["bump_count"].get<int>();
    if (f.contains("height")) c.field.height = f["height"].get<double>();
    if (f.contains("decay")) c.field.decay = f["decay"].get<double>();
    if (f.contains("base")) c.field.base = f["base"].get<double>();
    if (f.contains("low")) c.field.low = f["low"].get<double>();
    if (f.contains("high")) c.field.high = f["high"].get<double>();
    if (f.contains("noise_variance")) c.field.noise_variance = f["noise_variance"].get<double>();
  }
  if (j.contains("nodes")) c.node_counts = j["nodes"].get<std::vector<int>>();
  if (j.contains("branching")) c.branching = j["branching"].get<int>();
  if (j.contains("levels")) c.levels = j["levels"].get<int>();
  if (j.contains("fractions")) c.fractions = j["fractions"].get<std::vector<double>>();
  if (j.contains("protocols")) {
    c.protocols.clear();
    for (const auto& p : j["protocols"]) c.protocols.push_back(parse_protocol(p.get<std::string>()));
  }
  if (j.contains("seed")) c.master_seed = j["seed"].get<std::uint64_t>();
  if (j.contains("reps")) c.repetitions = j["reps"].get<int>();
  if (j.contains("out")) c.out_dir = j["out"].get<std::string>();
  return c;
}

std::uint64_t environment_seed(std::uint64_t master, int node_count, int repetition) {
  return seed_chain({master, static_cast<std::uint64_t>(node_count),
                     static_cast<std::uint64_t>(repetition)});
}

ScalarField make_field(const FieldConfig& config, std::uint64_t env_seed) {
  const std::uint64_t field_seed = mix64(env_seed, 0xF1E1DULL);
  if (config.kind == FieldKind::GaussianBumps)
    return ScalarField::gaussian_bumps(config.extent, config.bump_count, config.height,
                                       config.decay, field_seed, config.base);
  return ScalarField::piecewise(config.extent, config.low, config.high, config.noise_variance,
                                field_seed);
}

CellResult run_cell(const ExperimentConfig& config, Protocol protocol, int node_count,
                    double fraction, int repetition, const ScalarField& field,
                    const NodeSet& nodes, const ClusterTree& tree) {
  (void)field;
  CellResult r;
  r.protocol = protocol;
  r.node_count = node_count;
  r.fraction = fraction;
  r.repetition = repetition;
  r.seed = environment_seed(config.master_seed, node_count, repetition);

  const std::uint64_t run_seed = mix64(r.seed, 0x5eedULL);
  if (protocol == Protocol::AHdacs) {
    r.trace = run_ahdacs(tree, nodes, fraction, run_seed);
  } else {
    const int k_global = std::max(1, global_sparsity(tree, nodes, fraction));
    r.trace = run_hdacs(tree, nodes, k_global, fraction, run_seed);
  }

  r.mse_levels = mse_per_level(r.trace, tree, nodes);
  r.root_mse = r.mse_levels.back();
  for (const ClusterDecision& d : r.trace.decisions) {
    if (d.level == 0) continue;
    if (d.status == DecisionStatus::CsEnabled)
      ++r.enabled;
    else
      ++r.disabled;
  }
  return r;
}

namespace {

struct Environment {
  ScalarField field;
  NodeSet nodes;
  ClusterTree tree;
};

Environment build_environment(const ExperimentConfig& config, int node_count, int repetition) {
  const std::uint64_t env = environment_seed(config.master_seed, node_count, repetition);
  Environment e{make_field(config.field, env),
                place_nodes(node_count, config.field.extent, mix64(env, 0x9A7EULL)), {}};
  assign_readings(e.nodes, e.field);
  e.tree = build_hierarchy(e.nodes, config.branching, config.levels);
  return e;
}

std::ofstream open_out(const fs::path& dir, const std::string& name) {
  std::ofstream out(dir / name, std::ios::binary);  // fixed newlines across platforms
  if (!out) throw std::runtime_error("cannot open for writing: " + (dir / name).string());
  return out;
}

std::string field_name(const FieldConfig& f) {
  return f.kind == FieldKind::GaussianBumps ? "bumps" : "piecewise";
}

}  // namespace

void run_experiment(const ExperimentConfig& config) {
  config.validate();
  const fs::path dir(config.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory: " + dir.string());

  std::ofstream runs = open_out(dir, "runs.csv");
  runs << "protocol,field,nodes,n,T,fraction,seed,total_tx_J,total_rx_J,total_bits,"
          "enabled,disabled,root_mse\n";
  std::ofstream levels = open_out(dir, "levels.csv");
  levels << "field,nodes,fraction,rep,protocol,level,mse,rho,enabled_count,disabled_count\n";
  std::ofstream census_csv = open_out(dir, "census.csv");
  census_csv << "field,nodes,fraction,rep,condition,count\n";
  std::ofstream nodes_csv = open_out(dir, "nodes.csv");
  nodes_csv << "nodes,rep,id,x,y,cluster,role\n";

  const std::string fname = field_name(config.field);
  // per-size tx energy sums (adaptive, global) pooled over fractions and reps
  std::map<int, std::pair<double, double>> energy_acc;

  for (int size : config.node_counts) {
    for (int rep = 0; rep < config.repetitions; ++rep) {
      Environment env = build_environment(config, size, rep);

      for (int id = 0; id < env.nodes.size(); ++id) {
        const SensorNode& node = env.nodes.nodes[static_cast<std::size_t>(id)];
        int cluster1 = -1;
        const auto& level1 = env.tree.level(1);
        for (int li = 0; li < static_cast<int>(level1.size()); ++li) {
          const auto& m = level1[static_cast<std::size_t>(li)].members;
          if (std::binary_search(m.begin(), m.end(), id)) {
            cluster1 = li;
            break;
          }
        }
        std::string role = "leaf";
        if (id == env.nodes.sink_id) {
          role = "sink";
        } else {
          for (int lev = 1; lev <= env.tree.levels() && role == "leaf"; ++lev)
            for (const Cluster& cl : env.tree.level(lev))
              if (cl.head == id) {
                role = "head";
                break;
              }
        }
        nodes_csv << size << ',' << rep << ',' << id << ',' << format_double(node.position.x)
                  << ',' << format_double(node.position.y) << ',' << cluster1 << ',' << role
                  << '\n';
      }

      for (double fraction : config.fractions) {
        std::map<Protocol, CellResult> cell;
        for (Protocol proto : config.protocols) {
          CellResult r =
              run_cell(config, proto, size, fraction, rep, env.field, env.nodes, env.tree);

          runs << to_string(proto) << ',' << fname << ',' << size << ',' << config.branching
               << ',' << config.levels << ',' << format_double(fraction) << ',' << r.seed << ','
               << format_double(r.trace.energy.total_tx) << ','
               << format_double(r.trace.energy.total_rx) << ',' << r.trace.energy.total_bits
               << ',' << r.enabled << ',' << r.disabled << ',' << format_double(r.root_mse)
               << '\n';

          const int top = env.tree.levels();
          DisabledStats ds = disabled_stats(r.trace, env.tree, top - 1);
          for (int lev = 1; lev <= top; ++lev) {
            double rho = lev <= top - 1 ? ds.levels[static_cast<std::size_t>(lev - 1)].rho : 0.0;
            int en = 0;
            int dis = 0;
            for (const ClusterDecision& d : r.trace.decisions) {
              if (d.level != lev) continue;
              if (d.status == DecisionStatus::CsEnabled)
                ++en;
              else
                ++dis;
            }
            levels << fname << ',' << size << ',' << format_double(fraction) << ',' << rep << ','
                   << to_string(proto) << ',' << lev << ','
                   << format_double(r.mse_levels[static_cast<std::size_t>(lev - 1)]) << ','
                   << format_double(rho) << ',' << en << ',' << dis << '\n';
          }
          cell.emplace(proto, std::move(r));
        }

        const bool have_pair = cell.count(Protocol::AHdacs) != 0 && cell.count(Protocol::Hdacs) != 0;
        if (have_pair) {
          const CellResult& a = cell.at(Protocol::AHdacs);
          const CellResult& h = cell.at(Protocol::Hdacs);
          ConditionCensus census = condition_census(a.trace, h.trace,
                                                    h.trace.sparsity.global_sparsity, env.tree);
          for (int c = 1; c <= 5; ++c)
            census_csv << fname << ',' << size << ',' << format_double(fraction) << ',' << rep
                       << ',' << c << ',' << census.counts[static_cast<std::size_t>(c - 1)]
                       << '\n';
          auto& acc = energy_acc[size];
          acc.first += a.trace.energy.total_tx;
          acc.second += h.trace.energy.total_tx;
        }
      }
    }
  }

  json summary;
  summary["field"] = fname;
  summary["branching"] = config.branching;
  summary["levels"] = config.levels;
  summary["seed"] = config.master_seed;
  summary["sizes"] = json::array();
  double ratio_sum = 0.0;
  int ratio_count = 0;
  for (const auto& [size, acc] : energy_acc) {
    if (acc.second <= 0.0) continue;
    const double ratio = acc.first / acc.second;
    json row;
    row["nodes"] = size;
    row["adaptive_tx_J"] = acc.first;
    row["global_tx_J"] = acc.second;
    row["tx_energy_ratio"] = ratio;
    row["savings_percent"] = 100.0 * (1.0 - ratio);
    summary["sizes"].push_back(row);
    ratio_sum += ratio;
    ++ratio_count;
  }
  if (ratio_count > 0) {
    summary["mean_tx_energy_ratio"] = ratio_sum / ratio_count;
    summary["mean_savings_percent"] = 100.0 * (1.0 - ratio_sum / ratio_count);
  }
  std::ofstream sj = open_out(dir, "summary.json");
  sj << summary.dump(2) << '\n';
}

std::vector<SweepRow> sweep_threshold(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  c.validate();
  const int size = c.node_counts.front();
  const fs::path dir(c.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory: " + dir.string());

  std::vector<SweepRow> rows;
  std::ofstream out = open_out(dir, "sweep.csv");
  out << "fraction,field,root_mse\n";
  for (int rep = 0; rep < c.repetitions; ++rep) {
    Environment env = build_environment(c, size, rep);
    for (double fraction : c.fractions) {
      CellResult r =
          run_cell(c, Protocol::AHdacs, size, fraction, rep, env.field, env.nodes, env.tree);
      SweepRow row{fraction, field_name(c.field), r.root_mse};
      out << format_double(row.fraction) << ',' << row.field << ','
          << format_double(row.root_mse) << '\n';
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace ahdacs
