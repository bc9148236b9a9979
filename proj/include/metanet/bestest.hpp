#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "metanet/models.hpp"
#include "metanet/netcore.hpp"
#include "metanet/rng.hpp"

namespace metanet {

enum class TestMode { monte_carlo, exhaustive };

struct TestResult {
  ScoreValue observed;
  std::int64_t null_samples = 0;
  double null_mean = 0.0;
  double null_sd = 0.0;
  double p_value = 1.0;
  // Exhaustive mode reports p exactly as extreme / arrangements.
  std::int64_t extreme_count = 0;
  std::int64_t arrangements = 0;
  TestMode mode = TestMode::monte_carlo;
  std::uint64_t seed = 0;
  Model model = Model::sbm;
  std::vector<double> null_scores;  // filled when requested

  friend bool operator==(const TestResult&, const TestResult&) = default;
};

struct TestOptions {
  Model model = Model::sbm;
  std::int64_t permutations = 100000;
  std::uint64_t seed = 1;
  TestMode mode = TestMode::monte_carlo;
  /// Exhaustive mode refuses label multisets with more distinct arrangements.
  std::int64_t exhaustive_cap = 2'000'000;
  bool keep_null = false;
  int threads = 0;
};

/// Uniformly random rearrangement of the assignment vector (Fisher-Yates).
/// The multiset of labels, and hence every group size, is preserved.
Partition permute_labels(const Partition& partition, Rng& rng);

/// True when `candidate` is at least as extreme as `observed` in the direction
/// favouring the partition (ties included, up to rounding).
bool at_least_as_extreme(const ScoreValue& candidate, const ScoreValue& observed);

/// Number of distinct arrangements of the label multiset (saturates at INT64_MAX).
std::int64_t count_arrangements(const Partition& partition);

/// Blockmodel entropy significance test of `metadata` on `graph`.
///
/// Monte Carlo: p = (1 + #extreme replicates) / (1 + permutations); replicate r
/// draws from Rng::substream(seed, r), so results do not depend on `threads`.
/// Exhaustive: every distinct arrangement of the labels is scored, p = exact fraction.
TestResult run_bestest(const Graph& graph, const Partition& metadata, const TestOptions& options);

struct SensitivityPoint {
  double epsilon = 0.0;
  double ell = 0.0;
  double mean_p = 0.0;
  double sd_p = 0.0;
  int replicates = 0;
};

struct SensitivityOptions {
  int n_nodes = 1000;
  double mean_degree = 10.0;
  int replicates = 100;
  std::int64_t permutations = 999;
  Model model = Model::sbm;
  std::uint64_t seed = 1;
  int threads = 0;
};

/// Mean BESTest p-value over synthetic two-block networks with metadata
/// corrupted at level ell, for every (epsilon, ell) pair in the grids.
std::vector<SensitivityPoint> sensitivity_experiment(const std::vector<double>& epsilons,
                                                     const std::vector<double>& ells,
                                                     const SensitivityOptions& options);

}  // namespace metanet
