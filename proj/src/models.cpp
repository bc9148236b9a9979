#include "metanet/models.hpp"

#include <cmath>
#include <numbers>

#include "metanet/error.hpp"

namespace metanet {

namespace {

// x ln(x / y) with 0 ln 0 := 0.
double xlogx_over(double x, double y) { return x > 0.0 ? x * std::log(x / y) : 0.0; }

double block_term_nats(double edges, double pairs) {
  if (pairs <= 0.0 || edges <= 0.0 || edges >= pairs) return 0.0;
  const double w = edges / pairs;
  return edges * std::log(w) + (pairs - edges) * std::log1p(-w);
}

void require_valid_densities(const BlockStats& st) {
  for (int r = 0; r < st.k; ++r)
    for (int s = 0; s < st.k; ++s)
      if (st.m(r, s) > st.n[r] * st.n[s])
        throw ValidationError("degenerate block (" + std::to_string(r) + "," + std::to_string(s) +
                              "): edge density exceeds 1");
}

constexpr double kLn2 = std::numbers::ln2;

}  // namespace

std::string_view to_string(Model model) {
  switch (model) {
    case Model::sbm: return "sbm";
    case Model::sbm_exact: return "sbm-exact";
    case Model::sbm_sparse: return "sbm-sparse";
    case Model::poisson_sbm: return "poisson-sbm";
    case Model::poisson_dcsbm: return "poisson-dcsbm";
    case Model::multinomial_dcsbm: return "multinomial-dcsbm";
    case Model::modularity: return "modularity";
  }
  return "?";
}

Model parse_model(std::string_view name) {
  for (Model m : {Model::sbm, Model::sbm_exact, Model::sbm_sparse, Model::poisson_sbm,
                  Model::poisson_dcsbm, Model::multinomial_dcsbm, Model::modularity})
    if (to_string(m) == name) return m;
  throw ValidationError("unknown model '" + std::string(name) + "'");
}

ScoreKind kind_of(Model model) {
  switch (model) {
    case Model::sbm:
    case Model::sbm_exact:
    case Model::sbm_sparse:
    case Model::multinomial_dcsbm: return ScoreKind::entropy_bits;
    case Model::poisson_sbm:
    case Model::poisson_dcsbm: return ScoreKind::loglik_nats;
    case Model::modularity: return ScoreKind::modularity;
  }
  return ScoreKind::entropy_bits;
}

bool needs_only_stats(Model model) {
  return model != Model::sbm_exact && model != Model::multinomial_dcsbm;
}

std::string_view to_string(ScoreKind kind) {
  switch (kind) {
    case ScoreKind::entropy_bits: return "entropy_bits";
    case ScoreKind::loglik_nats: return "loglik_nats";
    case ScoreKind::modularity: return "modularity";
  }
  return "?";
}

double ScoreValue::log_base() const {
  switch (kind) {
    case ScoreKind::entropy_bits: return 2.0;
    case ScoreKind::loglik_nats: return std::numbers::e;
    case ScoreKind::modularity: return 0.0;
  }
  return 0.0;
}

double bernoulli_h(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double bernoulli_loglik(const BlockStats& st) {
  double total = 0.0;
  for (int r = 0; r < st.k; ++r)
    for (int s = 0; s < st.k; ++s)
      total += block_term_nats(static_cast<double>(st.m(r, s)), static_cast<double>(st.n[r] * st.n[s]));
  return 0.5 * total;
}

ScoreValue bernoulli_entropy(const BlockStats& st, BernoulliVariant variant) {
  switch (variant) {
    case BernoulliVariant::rapid: {
      require_valid_densities(st);
      return {-bernoulli_loglik(st) / kLn2, ScoreKind::entropy_bits, Model::sbm};
    }
    case BernoulliVariant::sparse: {
      require_valid_densities(st);
      double sum = 0.0;
      for (int r = 0; r < st.k; ++r)
        for (int s = 0; s < st.k; ++s)
          sum += xlogx_over(static_cast<double>(st.m(r, s)), static_cast<double>(st.n[r] * st.n[s]));
      const double nats = static_cast<double>(st.total_edges) - 0.5 * sum;
      return {nats / kLn2, ScoreKind::entropy_bits, Model::sbm_sparse};
    }
    case BernoulliVariant::exact:
      throw ValidationError("exact Bernoulli entropy needs the graph and partition");
  }
  return {};
}

ScoreValue bernoulli_entropy_exact(const Graph& graph, std::span<const int> assignment, int k_groups) {
  const auto st = block_stats(graph, assignment, k_groups);
  const int n = graph.n_nodes();
  auto omega = [&](int r, int s) {
    const double pairs = static_cast<double>(st.n[r] * st.n[s]);
    return pairs > 0.0 ? static_cast<double>(st.m(r, s)) / pairs : 0.0;
  };
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const int r = assignment[i];
    total += bernoulli_h(omega(r, r));
    for (int j = i + 1; j < n; ++j) total += bernoulli_h(omega(r, assignment[j]));
  }
  return {total, ScoreKind::entropy_bits, Model::sbm_exact};
}

ScoreValue poisson_sbm_loglik(const BlockStats& st) {
  double sum = 0.0;
  for (int r = 0; r < st.k; ++r)
    for (int s = 0; s < st.k; ++s)
      sum += xlogx_over(static_cast<double>(st.m(r, s)), static_cast<double>(st.n[r] * st.n[s]));
  return {0.5 * sum, ScoreKind::loglik_nats, Model::poisson_sbm};
}

ScoreValue poisson_dcsbm_loglik(const BlockStats& st) {
  double sum = 0.0;
  for (int r = 0; r < st.k; ++r)
    for (int s = 0; s < st.k; ++s)
      sum += xlogx_over(static_cast<double>(st.m(r, s)),
                        static_cast<double>(st.kappa[r]) * static_cast<double>(st.kappa[s]));
  return {0.5 * sum, ScoreKind::loglik_nats, Model::poisson_dcsbm};
}

double multinomial_entropy_approx_bits(long draws, std::span<const double> probs) {
  if (draws <= 0) throw ValidationError("multinomial entropy needs at least one draw");
  double bins = 0.0;
  double log_prod = 0.0;
  double inv_sum = 0.0;
  for (double p : probs) {
    if (p <= 0.0) continue;
    bins += 1.0;
    log_prod += std::log(p);
    inv_sum += 1.0 / p;
  }
  const double m = static_cast<double>(draws);
  const double nats = 0.5 * ((bins - 1.0) * (std::log(2.0 * std::numbers::pi * m) + 1.0) + log_prod) +
                      (3.0 * bins - 2.0 - inv_sum) / (12.0 * m);
  return nats / kLn2;
}

ScoreValue multinomial_dcsbm_entropy(const Graph& graph, std::span<const int> assignment, int k_groups) {
  const auto st = block_stats(graph, assignment, k_groups);
  if (st.total_edges == 0) throw ValidationError("multinomial DCSBM entropy is undefined on an edgeless graph");
  const double two_e = 2.0 * static_cast<double>(st.total_edges);
  const auto k = static_cast<std::size_t>(k_groups);

  // Per-group sums over nodes with positive degree.
  std::vector<double> count(k, 0.0), log_deg(k, 0.0), inv_deg(k, 0.0), inv_deg_sq(k, 0.0), deg_sq(k, 0.0);
  for (int i = 0; i < graph.n_nodes(); ++i) {
    const double d = graph.degree(i);
    if (d == 0.0) continue;
    const int r = assignment[i];
    count[r] += 1.0;
    log_deg[r] += std::log(d);
    inv_deg[r] += 1.0 / d;
    inv_deg_sq[r] += 1.0 / (d * d);
    deg_sq[r] += d * d;
  }

  // Self-pair mass removed before renormalizing over unordered pairs.
  double self_mass = 0.0;
  for (std::size_t r = 0; r < k; ++r) {
    const double kap = static_cast<double>(st.kappa[r]);
    if (kap > 0.0) self_mass += deg_sq[r] * static_cast<double>(st.m(r, r)) / (two_e * kap * kap);
  }
  const double z = 1.0 - self_mass;
  const double log_z = std::log(z);

  double bins = 0.0, log_prod = 0.0, inv_sum = 0.0;
  for (int r = 0; r < k_groups; ++r) {
    for (int s = r; s < k_groups; ++s) {
      const double m_rs = static_cast<double>(st.m(r, s));
      if (m_rs == 0.0) continue;
      const double kr = static_cast<double>(st.kappa[r]);
      const double ks = static_cast<double>(st.kappa[s]);
      // P_ij = k_i k_j * c for every pair in this block
      const double log_c = std::log(2.0 * m_rs) - std::log(two_e) - std::log(kr) - std::log(ks) - log_z;
      const double inv_c = z * two_e * kr * ks / (2.0 * m_rs);
      if (r != s) {
        const double pairs = count[r] * count[s];
        bins += pairs;
        log_prod += count[s] * log_deg[r] + count[r] * log_deg[s] + pairs * log_c;
        inv_sum += inv_deg[r] * inv_deg[s] * inv_c;
      } else {
        const double pairs = count[r] * (count[r] - 1.0) / 2.0;
        bins += pairs;
        log_prod += (count[r] - 1.0) * log_deg[r] + pairs * log_c;
        inv_sum += 0.5 * (inv_deg[r] * inv_deg[r] - inv_deg_sq[r]) * inv_c;
      }
    }
  }

  const double m = static_cast<double>(st.total_edges);
  const double nats = 0.5 * ((bins - 1.0) * (std::log(2.0 * std::numbers::pi * m) + 1.0) + log_prod) +
                      (3.0 * bins - 2.0 - inv_sum) / (12.0 * m);
  return {nats / kLn2, ScoreKind::entropy_bits, Model::multinomial_dcsbm};
}

ScoreValue modularity(const BlockStats& st) {
  if (st.total_edges == 0) throw ValidationError("modularity is undefined on an edgeless graph");
  const double two_e = 2.0 * static_cast<double>(st.total_edges);
  double q = 0.0;
  for (int r = 0; r < st.k; ++r) {
    const double a = static_cast<double>(st.kappa[r]) / two_e;
    q += static_cast<double>(st.m(r, r)) / two_e - a * a;
  }
  return {q, ScoreKind::modularity, Model::modularity};
}

ScoreValue evaluate(Model model, const Graph& graph, std::span<const int> assignment, int k_groups) {
  switch (model) {
    case Model::sbm: return bernoulli_entropy(block_stats(graph, assignment, k_groups), BernoulliVariant::rapid);
    case Model::sbm_sparse:
      return bernoulli_entropy(block_stats(graph, assignment, k_groups), BernoulliVariant::sparse);
    case Model::sbm_exact: return bernoulli_entropy_exact(graph, assignment, k_groups);
    case Model::poisson_sbm: return poisson_sbm_loglik(block_stats(graph, assignment, k_groups));
    case Model::poisson_dcsbm: return poisson_dcsbm_loglik(block_stats(graph, assignment, k_groups));
    case Model::multinomial_dcsbm: return multinomial_dcsbm_entropy(graph, assignment, k_groups);
    case Model::modularity: return modularity(block_stats(graph, assignment, k_groups));
  }
  throw ValidationError("unknown model");
}

ScoreValue evaluate(Model model, const Graph& graph, const Partition& partition) {
  return evaluate(model, graph, partition.assignment(), partition.k_groups());
}

}  // namespace metanet
