#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "metanet/netcore.hpp"
#include "metanet/rng.hpp"

namespace metanet {

struct SynthConfig {
  int n_nodes = 1000;
  /// Community strength omega_rs / omega_rr in [0, 1]; 1 gives a uniform random graph.
  double epsilon = 0.1;
  /// Metadata correlation in [0, 1] (used by corrupt_metadata callers).
  double ell = 1.0;
  double mean_degree = 10.0;
  /// Detectability value carried through to reports; never used in generation.
  std::optional<double> lambda_overlay;
};

/// Within-group edge probability giving the requested expected mean degree:
/// omega_rr = 2 c / (N (1 + epsilon)).
double two_block_omega_in(const SynthConfig& cfg);

/// Two-block Bernoulli SBM. Each node joins group 0 or 1 with probability 1/2;
/// within-group pairs link with omega_rr, cross pairs with epsilon * omega_rr.
/// Throws ValidationError when omega_rr > 1 or a parameter is out of range.
std::pair<Graph, Partition> gen_two_block(const SynthConfig& cfg, Rng& rng);

/// Per node: copy the truth label with probability ell, otherwise draw one of
/// the two labels uniformly. Agreement rate is (1 + ell) / 2.
Partition corrupt_metadata(const Partition& truth, double ell, Rng& rng);

/// Block-structured network with a planted block matrix.
struct MultiOptimumConfig {
  std::vector<int> block_sizes;
  /// Row-major block edge probabilities, symmetric, entries in [0, 1].
  std::vector<double> omega;
  /// Block -> metadata group (core-periphery grouping).
  std::vector<int> metadata_groups;
  /// Block -> planted community (assortative grouping).
  std::vector<int> community_groups;
  std::string provenance;

  int n_blocks() const { return static_cast<int>(block_sizes.size()); }
};

/// Built-in 8-block profile: four assortative communities each split into a
/// core and a periphery block, metadata = one merged periphery group plus three
/// core groups. Matches config/multi_optimum.json.
MultiOptimumConfig default_multi_optimum(int nodes_per_block = 25);

MultiOptimumConfig load_multi_optimum(const std::string& path);
MultiOptimumConfig load_multi_optimum_text(const std::string& text);
std::string to_json(const MultiOptimumConfig& cfg);

struct MultiOptimumNetwork {
  Graph graph;
  Partition metadata;
  Partition communities;
  Partition blocks;
};

MultiOptimumNetwork gen_multi_optimum(const MultiOptimumConfig& cfg, Rng& rng);

/// Samples an undirected simple graph from a block model with the given
/// per-node block assignment and symmetric block probability matrix.
Graph sample_block_graph(std::span<const int> blocks, int n_blocks, std::span<const double> omega, Rng& rng);

}  // namespace metanet
