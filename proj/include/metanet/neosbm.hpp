#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "metanet/inference.hpp"
#include "metanet/netcore.hpp"

namespace metanet {

/// ln(theta / (1 - theta)); theta must lie strictly inside (0, 1).
double psi(double theta);

struct NeoConfig {
  double theta = 0.5;
  BaseObjective model = BaseObjective::sbm;
  int sweeps = 1000;
  int restarts = 20;
  std::uint64_t seed = 1;
  int threads = 0;
  /// Groups for the unconstrained fit that seeds the free nodes; 0 uses the
  /// metadata group count.
  int optimum_groups = 0;
  /// Unconstrained fit effort when no optimum is supplied.
  int fit_sweeps = 200;
  int fit_restarts = 20;
};

/// One (pi, z) state. `groups` lives in the metadata label space: a blue node
/// i always has groups[i] == metadata[i].
struct NeoState {
  std::vector<int> groups;
  std::vector<char> red;  // z_i: 1 = free
  int q = 0;
  double l_base = 0.0;
  /// l_base + q * psi(theta); the constant N ln(1 - theta) is left out.
  double objective = 0.0;

  Partition partition() const { return Partition(groups); }
};

/// Full penalized log-likelihood L_base + q psi(theta) + N ln(1 - theta), nats.
/// Throws ValidationError if a blue node is not in its metadata group.
double neo_loglik(const Graph& graph, std::span<const int> groups, std::span<const char> red, const Partition& metadata,
                  const NeoConfig& config);

/// Relabels `optimum` so that it agrees with `metadata` on as many nodes as
/// possible. Result uses labels 0..max(K_M, K_C)-1, metadata labels first.
std::vector<int> align_labels(const Partition& metadata, const Partition& optimum);

/// N minus the best agreement over injective relabellings of `optimum`.
int min_free_nodes(const Partition& metadata, const Partition& optimum);

/// Maximum-weight assignment on a square matrix (row-major, size n*n).
/// Returns col_of_row.
std::vector<int> max_assignment(std::span<const double> weight, int n);

/// Best-of-chains MCMC for the neoSBM. `optimum` seeds the free nodes; it is
/// fitted with fit_blockmodel when absent. `warm` is an extra chain start.
NeoState infer(const Graph& graph, const Partition& metadata, const NeoConfig& config,
               const std::optional<Partition>& optimum = std::nullopt, const NeoState* warm = nullptr);

/// Exact optimum for every red count q: entry q holds the best L_base with
/// exactly q free nodes. Enumerates (K+1)^N states; throws CapacityError when
/// K^N 2^N reaches `cap`.
std::vector<NeoState> exhaustive_profile(const Graph& graph, const Partition& metadata, int k_groups,
                                         BaseObjective model, double cap = 67108864.0);
/// Picks the best profile entry for `theta`; ties go to the smaller q.
NeoState select_from_profile(const std::vector<NeoState>& profile, double theta);
/// exhaustive_profile + select_from_profile with K = max(K_M, optimum_groups).
NeoState exhaustive_neo(const Graph& graph, const Partition& metadata, const NeoConfig& config);

struct NeoRecord {
  double theta = 0.0;
  NeoState state;
  bool jump = false;
};

struct NeoPath {
  std::vector<NeoRecord> records;
  Partition metadata;
  Partition optimum;

  int jumps() const;
};

struct SweepOptions {
  /// A jump needs q to grow by more than this fraction of N between adjacent
  /// grid points while L_base also increases.
  double jump_fraction = 0.05;
};

/// Runs infer at each theta of an increasing grid, warm-starting from the
/// previous point.
NeoPath theta_sweep(const Graph& graph, const Partition& metadata, std::span<const double> grid,
                    const NeoConfig& config, const SweepOptions& sweep = {},
                    const std::optional<Partition>& optimum = std::nullopt);

/// Parses "a:b:step" into an inclusive grid (endpoint kept when within step/1e6).
std::vector<double> parse_grid(std::string_view text);

}  // namespace metanet
