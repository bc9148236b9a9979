#include "metanet/inference.hpp"

#include <cmath>

#include "metanet/error.hpp"
#include "metanet/models.hpp"
#include "metanet/parallel.hpp"

namespace metanet {

namespace {

double bernoulli_block(double edges, double pairs) {
  if (pairs <= 0.0 || edges <= 0.0 || edges >= pairs) return 0.0;
  const double w = edges / pairs;
  return edges * std::log(w) + (pairs - edges) * std::log1p(-w);
}

double xlogx_over(double x, double y) { return x > 0.0 ? x * std::log(x / y) : 0.0; }

}  // namespace

std::string_view to_string(BaseObjective objective) {
  switch (objective) {
    case BaseObjective::sbm: return "sbm";
    case BaseObjective::dcsbm: return "dcsbm";
    case BaseObjective::modularity: return "modularity";
  }
  return "?";
}

BaseObjective parse_objective(std::string_view name) {
  if (name == "sbm") return BaseObjective::sbm;
  if (name == "dcsbm") return BaseObjective::dcsbm;
  if (name == "modularity") return BaseObjective::modularity;
  throw ValidationError("unknown objective '" + std::string(name) + "'");
}

double base_loglik(BaseObjective objective, const BlockStats& stats) {
  switch (objective) {
    case BaseObjective::sbm: return bernoulli_loglik(stats);
    case BaseObjective::dcsbm: return poisson_dcsbm_loglik(stats).value;
    case BaseObjective::modularity: return stats.total_edges == 0 ? 0.0 : modularity(stats).value;
  }
  return 0.0;
}

double base_loglik(BaseObjective objective, const Graph& graph, std::span<const int> assignment, int k_groups) {
  return base_loglik(objective, block_stats(graph, assignment, k_groups));
}

BlockState::BlockState(const Graph& graph, std::vector<int> assignment, int k_groups, BaseObjective objective)
    : graph_(&graph), objective_(objective), k_(k_groups), assignment_(std::move(assignment)) {
  const auto st = block_stats(graph, assignment_, k_groups);
  n_ = st.n;
  kappa_ = st.kappa;
  m_ = st.m_flat;
  neighbor_counts_.assign(static_cast<std::size_t>(k_), 0);
  two_e_ = 2.0 * static_cast<double>(graph.n_edges());
}

BlockStats BlockState::stats() const {
  BlockStats st;
  st.k = k_;
  st.n = n_;
  st.kappa = kappa_;
  st.m_flat = m_;
  st.total_edges = graph_->n_edges();
  return st;
}

double BlockState::term(int a, int b) const {
  const double m = static_cast<double>(m_[static_cast<std::size_t>(a) * k_ + b]);
  switch (objective_) {
    case BaseObjective::sbm:
      return 0.5 * bernoulli_block(m, static_cast<double>(n_[a] * n_[b]));
    case BaseObjective::dcsbm:
      return 0.5 * xlogx_over(m, static_cast<double>(kappa_[a]) * static_cast<double>(kappa_[b]));
    case BaseObjective::modularity: {
      if (a != b || two_e_ == 0.0) return 0.0;
      const double f = static_cast<double>(kappa_[a]) / two_e_;
      return m / two_e_ - f * f;
    }
  }
  return 0.0;
}

double BlockState::total() const {
  double sum = 0.0;
  for (int a = 0; a < k_; ++a)
    for (int b = 0; b < k_; ++b) sum += term(a, b);
  return sum;
}

double BlockState::affected(int r, int s) const {
  double sum = 0.0;
  for (int b = 0; b < k_; ++b) {
    sum += term(r, b);
    if (s != r) sum += term(s, b);
  }
  for (int a = 0; a < k_; ++a) {
    if (a == r || a == s) continue;
    sum += term(a, r);
    if (s != r) sum += term(a, s);
  }
  return sum;
}

void BlockState::shift(int node, int from, int to) {
  for (int nb : graph_->neighbors(node)) ++neighbor_counts_[assignment_[nb]];
  for (int t = 0; t < k_; ++t) {
    const int c = neighbor_counts_[t];
    if (c == 0) continue;
    neighbor_counts_[t] = 0;
    m_[static_cast<std::size_t>(from) * k_ + t] -= c;
    m_[static_cast<std::size_t>(t) * k_ + from] -= c;
    m_[static_cast<std::size_t>(to) * k_ + t] += c;
    m_[static_cast<std::size_t>(t) * k_ + to] += c;
  }
  const int d = graph_->degree(node);
  --n_[from];
  ++n_[to];
  kappa_[from] -= d;
  kappa_[to] += d;
  assignment_[node] = to;
}

double BlockState::move(int node, int to) {
  const int from = assignment_[node];
  if (from == to) return 0.0;
  const double before = affected(from, to);
  shift(node, from, to);
  return affected(from, to) - before;
}

double BlockState::delta(int node, int to) {
  const int from = assignment_[node];
  if (from == to) return 0.0;
  const double d = move(node, to);
  shift(node, to, from);
  return d;
}

double climb(BlockState& state, double tolerance) {
  const int n = static_cast<int>(state.assignment().size());
  bool improved = true;
  while (improved) {
    improved = false;
    for (int i = 0; i < n; ++i) {
      int best_to = state.group(i);
      double best = tolerance;
      for (int t = 0; t < state.k_groups(); ++t) {
        if (t == state.group(i)) continue;
        const double d = state.delta(i, t);
        if (d > best) {
          best = d;
          best_to = t;
        }
      }
      if (best_to != state.group(i)) {
        state.move(i, best_to);
        improved = true;
      }
    }
  }
  return state.total();
}

FitResult fit_blockmodel(const Graph& graph, const FitOptions& opt) {
  if (opt.k_groups < 1) throw ValidationError("at least one group is required");
  if (opt.restarts < 1) throw ValidationError("at least one restart is required");
  const int n = graph.n_nodes();
  const int k = opt.k_groups;

  struct Chain {
    std::vector<int> groups;
    double value = 0.0;
  };
  std::vector<Chain> chains(static_cast<std::size_t>(opt.restarts));

  parallel_for(chains.size(), opt.threads, [&](std::size_t c) {
    auto rng = Rng::substream(opt.seed, c);
    std::vector<int> init(static_cast<std::size_t>(n));
    for (int& g : init) g = rng.uniform_int(k);
    BlockState state(graph, std::move(init), k, opt.objective);
    double current = state.total();
    double best = current;
    auto best_groups = state.assignment();
    if (k > 1) {
      const int warmup = static_cast<int>(opt.anneal_fraction * opt.sweeps);
      for (int sweep = 0; sweep < opt.sweeps; ++sweep) {
        // inverse temperature rises linearly to 1 over the warm-up sweeps
        const double beta =
            sweep < warmup ? opt.beta_start + (1.0 - opt.beta_start) * sweep / static_cast<double>(warmup) : 1.0;
        for (int step = 0; step < n; ++step) {
          const int i = rng.uniform_int(n);
          int t = rng.uniform_int(k - 1);
          if (t >= state.group(i)) ++t;
          const int from = state.group(i);
          const double d = state.move(i, t);
          if (d >= 0.0 || rng.uniform01() < std::exp(beta * d)) {
            current += d;
            if (current > best + 1e-12) {
              best = current;
              best_groups = state.assignment();
            }
          } else {
            state.move(i, from);
          }
        }
      }
    }
    BlockState polished(graph, std::move(best_groups), k, opt.objective);
    chains[c].value = climb(polished);
    chains[c].groups = polished.assignment();
  });

  std::size_t best = 0;
  for (std::size_t c = 1; c < chains.size(); ++c)
    if (chains[c].value > chains[best].value + 1e-12) best = c;

  FitResult result;
  result.groups = chains[best].groups;
  result.partition = Partition(result.groups);
  result.loglik = chains[best].value;
  result.best_restart = static_cast<int>(best);
  return result;
}

}  // namespace metanet
