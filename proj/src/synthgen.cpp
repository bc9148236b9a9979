#include "metanet/synthgen.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "metanet/error.hpp"

namespace metanet {

double two_block_omega_in(const SynthConfig& cfg) {
  return 2.0 * cfg.mean_degree / (static_cast<double>(cfg.n_nodes) * (1.0 + cfg.epsilon));
}

Graph sample_block_graph(std::span<const int> blocks, int n_blocks, std::span<const double> omega, Rng& rng) {
  const int n = static_cast<int>(blocks.size());
  if (static_cast<int>(omega.size()) != n_blocks * n_blocks) throw ValidationError("omega must be n_blocks^2");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    const double* row = omega.data() + static_cast<std::size_t>(blocks[i]) * n_blocks;
    for (int j = i + 1; j < n; ++j)
      if (rng.bernoulli(row[blocks[j]])) edges.emplace_back(i, j);
  }
  return Graph(n, edges);
}

std::pair<Graph, Partition> gen_two_block(const SynthConfig& cfg, Rng& rng) {
  if (cfg.n_nodes < 2) throw ValidationError("two-block generator needs at least 2 nodes");
  if (!(cfg.epsilon >= 0.0 && cfg.epsilon <= 1.0)) throw ValidationError("epsilon must lie in [0, 1]");
  if (!(cfg.mean_degree >= 0.0)) throw ValidationError("mean degree must be non-negative");
  const double w_in = two_block_omega_in(cfg);
  if (w_in > 1.0) throw ValidationError("infeasible parameters: within-group probability " + std::to_string(w_in) + " > 1");

  std::vector<int> truth(static_cast<std::size_t>(cfg.n_nodes));
  for (int& t : truth) t = rng.bernoulli(0.5) ? 1 : 0;
  const std::vector<double> omega{w_in, cfg.epsilon * w_in, cfg.epsilon * w_in, w_in};
  auto graph = sample_block_graph(truth, 2, omega, rng);
  return {std::move(graph), Partition(std::move(truth))};
}

Partition corrupt_metadata(const Partition& truth, double ell, Rng& rng) {
  if (!(ell >= 0.0 && ell <= 1.0)) throw ValidationError("ell must lie in [0, 1]");
  if (truth.k_groups() > 2) throw ValidationError("metadata corruption expects a two-group truth");
  std::vector<int> labels(static_cast<std::size_t>(truth.size()));
  for (int i = 0; i < truth.size(); ++i) {
    if (rng.bernoulli(ell))
      labels[i] = truth[i];
    else
      labels[i] = rng.uniform_int(2);
  }
  return Partition(std::move(labels));
}

MultiOptimumConfig default_multi_optimum(int nodes_per_block) {
  MultiOptimumConfig cfg;
  cfg.block_sizes.assign(8, nodes_per_block);
  // Blocks (0-based): community A = {0 core, 1 periphery}, B = {2 core, 3 periphery},
  // C = {4 periphery, 5 core}, D = {6 periphery, 7 core}.
  // clang-format off
  cfg.omega = {
  //   0       1       2       3       4       5       6       7
    0.1336, 0.1094, 0.0747, 0.0138, 0.0138, 0.0302, 0.0138, 0.0302,
    0.1094, 0.0837, 0.0138, 0.0591, 0.0591, 0.0138, 0.0591, 0.0138,
    0.0747, 0.0138, 0.1336, 0.2784, 0.0138, 0.0302, 0.0138, 0.0302,
    0.0138, 0.0591, 0.2784, 0.0837, 0.0591, 0.0138, 0.0591, 0.0138,
    0.0138, 0.0591, 0.0138, 0.0591, 0.0837, 0.0591, 0.0591, 0.0138,
    0.0302, 0.0138, 0.0302, 0.0138, 0.0591, 0.1336, 0.0138, 0.0302,
    0.0138, 0.0591, 0.0138, 0.0591, 0.0591, 0.0138, 0.0837, 0.2915,
    0.0302, 0.0138, 0.0302, 0.0138, 0.0138, 0.0302, 0.2915, 0.1336,
  };
  // clang-format on
  cfg.metadata_groups = {0, 1, 0, 1, 1, 2, 1, 3};
  cfg.community_groups = {0, 0, 1, 1, 2, 2, 3, 3};
  cfg.provenance = "calibrated by random search, not a published value";
  return cfg;
}

MultiOptimumConfig load_multi_optimum(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream text;
  text << in.rdbuf();
  return load_multi_optimum_text(text.str());
}

MultiOptimumConfig load_multi_optimum_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
  }
  MultiOptimumConfig cfg;
  try {
    cfg.block_sizes = j.at("block_sizes").get<std::vector<int>>();
    for (const auto& row : j.at("omega")) {
      auto values = row.get<std::vector<double>>();
      cfg.omega.insert(cfg.omega.end(), values.begin(), values.end());
    }
    cfg.metadata_groups = j.at("metadata_groups").get<std::vector<int>>();
    cfg.community_groups = j.at("community_groups").get<std::vector<int>>();
    cfg.provenance = j.value("provenance", "");
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bad multi-optimum config: ") + e.what());
  }
  return cfg;
}

std::string to_json(const MultiOptimumConfig& cfg) {
  nlohmann::ordered_json j;
  j["provenance"] = cfg.provenance;
  j["block_sizes"] = cfg.block_sizes;
  const int b = cfg.n_blocks();
  auto rows = nlohmann::ordered_json::array();
  for (int r = 0; r < b; ++r)
    rows.push_back(std::vector<double>(cfg.omega.begin() + r * b, cfg.omega.begin() + (r + 1) * b));
  j["omega"] = rows;
  j["metadata_groups"] = cfg.metadata_groups;
  j["community_groups"] = cfg.community_groups;
  return j.dump(2);
}

MultiOptimumNetwork gen_multi_optimum(const MultiOptimumConfig& cfg, Rng& rng) {
  const int b = cfg.n_blocks();
  if (b == 0) throw ValidationError("no blocks configured");
  if (static_cast<int>(cfg.omega.size()) != b * b) throw ValidationError("omega must be square over the blocks");
  if (static_cast<int>(cfg.metadata_groups.size()) != b || static_cast<int>(cfg.community_groups.size()) != b)
    throw ValidationError("group maps must cover every block");
  for (int r = 0; r < b; ++r)
    for (int s = 0; s < b; ++s) {
      const double w = cfg.omega[r * b + s];
      if (!(w >= 0.0 && w <= 1.0)) throw ValidationError("infeasible omega entry outside [0, 1]");
      if (w != cfg.omega[s * b + r]) throw ValidationError("omega must be symmetric");
    }

  std::vector<int> block_of;
  for (int r = 0; r < b; ++r) block_of.insert(block_of.end(), static_cast<std::size_t>(cfg.block_sizes[r]), r);
  std::vector<int> meta, comm;
  meta.reserve(block_of.size());
  comm.reserve(block_of.size());
  for (int r : block_of) {
    meta.push_back(cfg.metadata_groups[r]);
    comm.push_back(cfg.community_groups[r]);
  }
  auto graph = sample_block_graph(block_of, b, cfg.omega, rng);
  return {std::move(graph), Partition(std::move(meta)), Partition(std::move(comm)), Partition(std::move(block_of))};
}

}  // namespace metanet
