#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "metanet/netcore.hpp"
#include "metanet/rng.hpp"

namespace metanet {

/// Objective maximized over partitions.
enum class BaseObjective {
  sbm,         // Bernoulli SBM log-likelihood (minus the rapid entropy, in nats)
  dcsbm,       // Poisson DCSBM log-likelihood, partition-dependent part
  modularity,  // any quality function works; modularity is the built-in one
};

std::string_view to_string(BaseObjective objective);
BaseObjective parse_objective(std::string_view name);

/// Objective value of a fixed assignment.
double base_loglik(BaseObjective objective, const BlockStats& stats);
double base_loglik(BaseObjective objective, const Graph& graph, std::span<const int> assignment, int k_groups);

/// Block counts kept in step with single-node moves, so a proposal costs
/// O(degree + K) instead of a full recount. Group count is fixed; groups may
/// be empty.
class BlockState {
 public:
  BlockState(const Graph& graph, std::vector<int> assignment, int k_groups, BaseObjective objective);

  int k_groups() const { return k_; }
  int group(int node) const { return assignment_[node]; }
  const std::vector<int>& assignment() const { return assignment_; }

  /// Objective recomputed from the integer counts (no accumulated rounding).
  double total() const;
  /// Moves `node` to `to` and returns the objective change.
  double move(int node, int to);
  /// Objective change of moving `node` to `to`, state left unchanged.
  double delta(int node, int to);

  BlockStats stats() const;

 private:
  double term(int a, int b) const;
  double affected(int r, int s) const;
  void shift(int node, int from, int to);

  const Graph* graph_;
  BaseObjective objective_;
  int k_;
  std::vector<int> assignment_;
  std::vector<std::int64_t> n_;
  std::vector<std::int64_t> kappa_;
  std::vector<std::int64_t> m_;
  std::vector<int> neighbor_counts_;
  double two_e_;
};

struct FitOptions {
  int k_groups = 2;
  BaseObjective objective = BaseObjective::sbm;
  int sweeps = 200;
  int restarts = 20;
  std::uint64_t seed = 1;
  int threads = 0;
  /// Leading share of the sweeps run with the inverse temperature rising
  /// linearly from beta_start to 1.
  double anneal_fraction = 0.5;
  double beta_start = 0.1;
};

struct FitResult {
  Partition partition;
  std::vector<int> groups;  // uncompacted, 0..k_groups-1
  double loglik = 0.0;
  int best_restart = 0;
};

/// Best-of-restarts maximization of the objective with `k_groups` groups:
/// each restart runs annealed Metropolis sweeps from a random assignment, keeps
/// the best state seen, then climbs greedily to a local optimum.
FitResult fit_blockmodel(const Graph& graph, const FitOptions& options);

/// Greedy single-node ascent to a local optimum; returns the final objective.
double climb(BlockState& state, double tolerance = 1e-12);

}  // namespace metanet
