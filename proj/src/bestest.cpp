#include "metanet/bestest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "metanet/error.hpp"
#include "metanet/parallel.hpp"
#include "metanet/synthgen.hpp"

namespace metanet {

namespace {

struct Moments {
  double mean = 0.0;
  double sd = 0.0;
};

Moments moments(const std::vector<double>& xs) {
  if (xs.empty()) return {};
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double sd = xs.size() > 1 ? std::sqrt(ss / static_cast<double>(xs.size() - 1)) : 0.0;
  return {mean, sd};
}

}  // namespace

Partition permute_labels(const Partition& partition, Rng& rng) {
  auto assignment = partition.assignment();
  rng.shuffle(std::span<int>(assignment));
  return Partition(std::move(assignment), partition.label_names());
}

bool at_least_as_extreme(const ScoreValue& candidate, const ScoreValue& observed) {
  // Relabelled copies of one partition can differ in the last bits because the
  // block sums run in a different order.
  const double tol = 1e-10 * std::max(1.0, std::abs(observed.value));
  if (observed.orientation() == Orientation::lower_better) return candidate.value <= observed.value + tol;
  return candidate.value >= observed.value - tol;
}

std::int64_t count_arrangements(const Partition& partition) {
  // n! / prod(n_r!) built up as a product of binomials to stay exact.
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
  std::int64_t total = 1;
  std::int64_t placed = 0;
  for (int size : partition.group_sizes()) {
    for (int j = 1; j <= size; ++j) {
      ++placed;
      // total *= placed / j, exact because the running value is a binomial product
      const auto g = std::gcd(total, static_cast<std::int64_t>(j));
      const std::int64_t a = total / g;
      const std::int64_t b = static_cast<std::int64_t>(j) / g;
      const std::int64_t c = placed / b;
      if (a > kMax / c) return kMax;
      total = a * c;
    }
  }
  return total;
}

TestResult run_bestest(const Graph& graph, const Partition& metadata, const TestOptions& opt) {
  if (metadata.size() != graph.n_nodes()) throw ValidationError("metadata length does not match graph");

  TestResult result;
  result.model = opt.model;
  result.seed = opt.seed;
  result.mode = opt.mode;
  result.observed = evaluate(opt.model, graph, metadata);
  const int k = metadata.k_groups();

  std::vector<double> scores;
  if (opt.mode == TestMode::exhaustive) {
    const auto total = count_arrangements(metadata);
    if (total > opt.exhaustive_cap)
      throw CapacityError("exhaustive test needs " + std::to_string(total) +
                          " arrangements, above the cap of " + std::to_string(opt.exhaustive_cap));
    auto arrangement = metadata.assignment();
    std::sort(arrangement.begin(), arrangement.end());
    scores.reserve(static_cast<std::size_t>(total));
    do {
      scores.push_back(evaluate(opt.model, graph, arrangement, k).value);
    } while (std::next_permutation(arrangement.begin(), arrangement.end()));
  } else {
    if (opt.permutations < 1) throw ValidationError("at least one permutation is required");
    scores.assign(static_cast<std::size_t>(opt.permutations), 0.0);
    parallel_for(scores.size(), opt.threads, [&](std::size_t r) {
      auto rng = Rng::substream(opt.seed, r);
      auto assignment = metadata.assignment();
      rng.shuffle(std::span<int>(assignment));
      scores[r] = evaluate(opt.model, graph, assignment, k).value;
    });
  }

  std::int64_t extreme = 0;
  for (double s : scores)
    if (at_least_as_extreme(ScoreValue{s, result.observed.kind, opt.model}, result.observed)) ++extreme;

  const auto m = moments(scores);
  result.null_mean = m.mean;
  result.null_sd = m.sd;
  result.null_samples = static_cast<std::int64_t>(scores.size());
  result.extreme_count = extreme;
  if (opt.mode == TestMode::exhaustive) {
    result.arrangements = result.null_samples;
    result.p_value = static_cast<double>(extreme) / static_cast<double>(result.arrangements);
  } else {
    result.p_value = static_cast<double>(1 + extreme) / static_cast<double>(1 + result.null_samples);
  }
  if (opt.keep_null) result.null_scores = std::move(scores);
  return result;
}

std::vector<SensitivityPoint> sensitivity_experiment(const std::vector<double>& epsilons,
                                                     const std::vector<double>& ells,
                                                     const SensitivityOptions& opt) {
  for (double e : epsilons)
    if (!(e >= 0.0 && e <= 1.0)) throw ValidationError("epsilon must lie in [0, 1]");
  for (double l : ells)
    if (!(l >= 0.0 && l <= 1.0)) throw ValidationError("ell must lie in [0, 1]");
  if (opt.replicates < 1) throw ValidationError("at least one replicate is required");

  std::vector<SensitivityPoint> out;
  for (std::size_t ei = 0; ei < epsilons.size(); ++ei) {
    for (std::size_t li = 0; li < ells.size(); ++li) {
      std::vector<double> pvals(static_cast<std::size_t>(opt.replicates));
      const std::uint64_t cell = (ei << 20) | li;
      parallel_for(pvals.size(), opt.threads, [&](std::size_t rep) {
        auto rng = Rng::substream(opt.seed ^ (cell * 0x9e3779b97f4a7c15ULL), rep);
        SynthConfig cfg;
        cfg.n_nodes = opt.n_nodes;
        cfg.epsilon = epsilons[ei];
        cfg.mean_degree = opt.mean_degree;
        auto [graph, truth] = gen_two_block(cfg, rng);
        auto metadata = corrupt_metadata(truth, ells[li], rng);
        TestOptions test;
        test.model = opt.model;
        test.permutations = opt.permutations;
        test.seed = rng.next_u64();
        test.threads = 1;
        pvals[rep] = run_bestest(graph, metadata, test).p_value;
      });
      const auto m = moments(pvals);
      out.push_back({epsilons[ei], ells[li], m.mean, m.sd, opt.replicates});
    }
  }
  return out;
}

}  // namespace metanet
