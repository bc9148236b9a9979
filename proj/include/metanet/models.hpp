#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "metanet/netcore.hpp"

namespace metanet {

enum class ScoreKind { entropy_bits, loglik_nats, modularity };
enum class Orientation { lower_better, higher_better };

/// Every score usable as a significance-test statistic.
enum class Model {
  sbm,                // Bernoulli SBM entropy, O(K^2) form
  sbm_exact,          // Bernoulli SBM entropy summed over node pairs
  sbm_sparse,         // first-order sparse approximation of the above
  poisson_sbm,        // Poisson SBM log-likelihood
  poisson_dcsbm,      // Poisson degree-corrected SBM log-likelihood
  multinomial_dcsbm,  // multinomial DCSBM entropy approximation
  modularity,
};

std::string_view to_string(Model model);
/// Parses the CLI spelling ("sbm", "sbm-exact", ...). Throws ValidationError.
Model parse_model(std::string_view name);
ScoreKind kind_of(Model model);
/// Whether the score is a function of BlockStats alone.
bool needs_only_stats(Model model);

constexpr Orientation orientation_of(ScoreKind kind) {
  return kind == ScoreKind::entropy_bits ? Orientation::lower_better : Orientation::higher_better;
}

struct ScoreValue {
  double value = 0.0;
  ScoreKind kind = ScoreKind::entropy_bits;
  Model model = Model::sbm;

  Orientation orientation() const { return orientation_of(kind); }
  /// 2 for entropies, e for log-likelihoods, 0 for unitless quality functions.
  double log_base() const;

  friend bool operator==(const ScoreValue&, const ScoreValue&) = default;
};

std::string_view to_string(ScoreKind kind);

enum class BernoulliVariant { exact, rapid, sparse };

/// Bernoulli SBM entropy in bits with MLE block densities m_rs / (n_r n_s).
///
/// rapid:  -1/2 sum_rs [m_rs log2 w_rs + (n_r n_s - m_rs) log2(1 - w_rs)]
/// sparse: (|E| - 1/2 sum_rs m_rs ln w_rs) / ln 2
/// exact:  sum_{i<j} h(w_{pi_i pi_j}) + sum_i h(w_{pi_i pi_i}); needs graph and partition.
/// Zero-probability and certain blocks contribute 0.
ScoreValue bernoulli_entropy(const BlockStats& stats, BernoulliVariant variant = BernoulliVariant::rapid);
ScoreValue bernoulli_entropy_exact(const Graph& graph, std::span<const int> assignment, int k_groups);

/// 1/2 sum_rs [m_rs ln w_rs + (n_r n_s - m_rs) ln(1 - w_rs)], nats. Equals minus the
/// rapid entropy converted to nats.
double bernoulli_loglik(const BlockStats& stats);

/// 1/2 sum_rs m_rs ln(m_rs / (n_r n_s)). The dropped terms (-|E| and -sum ln A_ij!)
/// do not depend on the partition.
ScoreValue poisson_sbm_loglik(const BlockStats& stats);

/// 1/2 sum_rs m_rs ln(m_rs / (kappa_r kappa_s)). The dropped degree terms
/// sum_i k_i ln k_i - 2|E| are fixed under label permutations.
ScoreValue poisson_dcsbm_loglik(const BlockStats& stats);

/// Multinomial DCSBM entropy (bits) through the asymptotic multinomial entropy
/// expansion. Bins are unordered node pairs i<j with non-zero probability;
/// their probabilities 2 k_i k_j m_rs / (2|E| kappa_r kappa_s) are renormalized
/// to sum to one after excluding self-pairs. Throws on an edgeless graph.
ScoreValue multinomial_dcsbm_entropy(const Graph& graph, std::span<const int> assignment, int k_groups);

/// Asymptotic entropy (bits) of a multinomial with `draws` trials over the
/// bins with probabilities `probs` (zeros ignored):
/// 1/2 ln[(2 pi m e)^(b-1) prod p] + [3b - 2 - sum 1/p] / (12 m), converted from nats.
double multinomial_entropy_approx_bits(long draws, std::span<const double> probs);

/// sum_r [m_rr / 2|E| - (kappa_r / 2|E|)^2]. Throws on an edgeless graph.
ScoreValue modularity(const BlockStats& stats);

/// Dispatches to the score for `model`.
ScoreValue evaluate(Model model, const Graph& graph, std::span<const int> assignment, int k_groups);
ScoreValue evaluate(Model model, const Graph& graph, const Partition& partition);

/// Bernoulli entropy h(p) in bits.
double bernoulli_h(double p);

}  // namespace metanet
