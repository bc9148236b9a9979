#include "metanet/neosbm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "metanet/error.hpp"
#include "metanet/parallel.hpp"
#include "metanet/rng.hpp"

namespace metanet {

namespace {

constexpr double kTieTolerance = 1e-10;

double tolerance_for(double value) { return kTieTolerance * std::max(1.0, std::abs(value)); }

// Higher objective wins; near-ties go to fewer free nodes.
bool better(double obj, int q, double best_obj, int best_q) {
  const double tol = tolerance_for(best_obj);
  if (obj > best_obj + tol) return true;
  return obj >= best_obj - tol && q < best_q;
}

void check_theta(double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw ValidationError("theta must lie strictly between 0 and 1");
}

int search_groups(const Partition& metadata, const Partition& optimum) {
  return std::max(metadata.k_groups(), optimum.k_groups());
}

struct Chain {
  const Graph& graph;
  const std::vector<int>& meta;
  double psi;
  BlockState state;
  std::vector<char> red;
  int q;

  Chain(const Graph& g, const std::vector<int>& m, double p, std::vector<int> groups, std::vector<char> z, int k,
        BaseObjective model)
      : graph(g), meta(m), psi(p), state(g, std::move(groups), k, model), red(std::move(z)) {
    q = static_cast<int>(std::count(red.begin(), red.end(), 1));
  }

  double objective() const { return state.total() + q * psi; }

  // One Metropolis step at node i; returns the accepted change (0 if rejected).
  double step(int i, Rng& rng) {
    const bool flip = rng.bernoulli(0.5);
    const int k = state.k_groups();
    if (flip) {
      if (!red[i]) {
        if (psi >= 0.0 || rng.uniform01() < std::exp(psi)) {
          red[i] = 1;
          ++q;
          return psi;
        }
        return 0.0;
      }
      const int from = state.group(i);
      const double d = state.move(i, meta[i]) - psi;
      if (d >= 0.0 || rng.uniform01() < std::exp(d)) {
        red[i] = 0;
        --q;
        return d;
      }
      state.move(i, from);
      return 0.0;
    }
    if (!red[i] || k < 2) return 0.0;
    int t = rng.uniform_int(k - 1);
    const int from = state.group(i);
    if (t >= from) ++t;
    const double d = state.move(i, t);
    if (d >= 0.0 || rng.uniform01() < std::exp(d)) return d;
    state.move(i, from);
    return 0.0;
  }

  // Greedy ascent over z flips and red-node moves.
  void polish() {
    const int n = graph.n_nodes();
    const int k = state.k_groups();
    for (int pass = 0; pass < 10000; ++pass) {
      bool changed = false;
      for (int i = 0; i < n; ++i) {
        const double tol = tolerance_for(0.0);
        if (!red[i]) {
          if (psi > tol) {
            red[i] = 1;
            ++q;
            changed = true;
          }
          continue;
        }
        // candidates: go blue (-1) or move to t
        int best_to = -2;
        double best_d = tol;
        const double to_blue = state.delta(i, meta[i]) - psi;
        if (to_blue >= -tol) {
          best_to = -1;
          best_d = to_blue;
        }
        for (int t = 0; t < k; ++t) {
          if (t == state.group(i)) continue;
          const double d = state.delta(i, t);
          if (d > std::max(best_d, 0.0) + tol) {
            best_d = d;
            best_to = t;
          }
        }
        if (best_to == -1) {
          state.move(i, meta[i]);
          red[i] = 0;
          --q;
          changed = true;
        } else if (best_to >= 0) {
          state.move(i, best_to);
          changed = true;
        }
      }
      if (!changed) break;
    }
  }

  NeoState snapshot() const {
    NeoState s;
    s.groups = state.assignment();
    s.red = red;
    s.q = q;
    s.l_base = state.total();
    s.objective = s.l_base + q * psi;
    return s;
  }
};

}  // namespace

double psi(double theta) {
  check_theta(theta);
  return std::log(theta) - std::log1p(-theta);
}

double neo_loglik(const Graph& graph, std::span<const int> groups, std::span<const char> red, const Partition& metadata,
                  const NeoConfig& config) {
  const int n = graph.n_nodes();
  if (static_cast<int>(groups.size()) != n || static_cast<int>(red.size()) != n || metadata.size() != n)
    throw ValidationError("state and metadata must cover every node");
  int k = metadata.k_groups();
  int q = 0;
  for (int i = 0; i < n; ++i) {
    if (groups[i] < 0) throw ValidationError("negative group index");
    k = std::max(k, groups[i] + 1);
    if (red[i]) {
      ++q;
    } else if (groups[i] != metadata[i]) {
      throw ValidationError("metadata lock violated at node " + std::to_string(i));
    }
  }
  const double l_base = base_loglik(config.model, graph, groups, k);
  return l_base + q * psi(config.theta) + n * std::log1p(-config.theta);
}

std::vector<int> max_assignment(std::span<const double> weight, int n) {
  // Hungarian method on cost = -weight, 1-based potentials.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  auto cost = [&](int i, int j) { return -weight[static_cast<std::size_t>(i - 1) * n + (j - 1)]; };
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> col_of_row(n);
  for (int j = 1; j <= n; ++j) col_of_row[p[j] - 1] = j - 1;
  return col_of_row;
}

namespace {

// agreement[c * k + m] = #nodes with optimum group c and metadata group m
std::vector<int> relabel_map(const Partition& metadata, const Partition& optimum, int& agreements) {
  if (metadata.size() != optimum.size()) throw ValidationError("partitions have different lengths");
  const int k = search_groups(metadata, optimum);
  std::vector<double> agree(static_cast<std::size_t>(k) * k, 0.0);
  for (int i = 0; i < metadata.size(); ++i) agree[static_cast<std::size_t>(optimum[i]) * k + metadata[i]] += 1.0;
  auto map = max_assignment(agree, k);
  agreements = 0;
  for (int c = 0; c < k; ++c) agreements += static_cast<int>(agree[static_cast<std::size_t>(c) * k + map[c]]);
  return map;
}

}  // namespace

std::vector<int> align_labels(const Partition& metadata, const Partition& optimum) {
  int agreements = 0;
  const auto map = relabel_map(metadata, optimum, agreements);
  std::vector<int> out(static_cast<std::size_t>(optimum.size()));
  for (int i = 0; i < optimum.size(); ++i) out[i] = map[optimum[i]];
  return out;
}

int min_free_nodes(const Partition& metadata, const Partition& optimum) {
  int agreements = 0;
  relabel_map(metadata, optimum, agreements);
  return metadata.size() - agreements;
}

NeoState infer(const Graph& graph, const Partition& metadata, const NeoConfig& config,
               const std::optional<Partition>& optimum, const NeoState* warm) {
  const int n = graph.n_nodes();
  if (metadata.size() != n) throw ValidationError("metadata must cover every node");
  if (config.restarts < 1) throw ValidationError("at least one restart is required");
  const double p = psi(config.theta);

  Partition opt;
  if (optimum) {
    if (optimum->size() != n) throw ValidationError("optimum must cover every node");
    opt = *optimum;
  } else {
    FitOptions fit;
    fit.k_groups = config.optimum_groups > 0 ? config.optimum_groups : metadata.k_groups();
    fit.objective = config.model;
    fit.sweeps = config.fit_sweeps;
    fit.restarts = config.fit_restarts;
    fit.seed = config.seed;
    fit.threads = config.threads;
    opt = fit_blockmodel(graph, fit).partition;
  }
  const int k = search_groups(metadata, opt);
  const auto aligned = align_labels(metadata, opt);
  const auto& meta = metadata.assignment();
  if (warm && static_cast<int>(warm->groups.size()) != n) throw ValidationError("warm start has the wrong size");

  const std::size_t n_chains = static_cast<std::size_t>(config.restarts) + (warm ? 1 : 0);
  std::vector<NeoState> results(n_chains);
  parallel_for(n_chains, config.threads, [&](std::size_t c) {
    auto rng = Rng::substream(config.seed, c);
    std::vector<int> groups(static_cast<std::size_t>(n));
    std::vector<char> red(static_cast<std::size_t>(n));
    int kk = k;
    if (c == static_cast<std::size_t>(config.restarts)) {
      groups = warm->groups;
      red = warm->red;
      for (int g : groups) kk = std::max(kk, g + 1);
    } else {
      for (int i = 0; i < n; ++i) {
        bool r = false;
        if (c == 0) r = true;
        else if (c >= 2) r = rng.bernoulli(0.5);
        red[i] = r ? 1 : 0;
        if (!r) groups[i] = meta[i];
        else if (c >= 2 && c % 2 == 0) groups[i] = rng.uniform_int(k);
        else groups[i] = aligned[i];
      }
    }
    Chain chain(graph, meta, p, std::move(groups), std::move(red), kk, config.model);
    double current = chain.objective();
    double best = current;
    int best_q = chain.q;
    auto best_groups = chain.state.assignment();
    auto best_red = chain.red;
    for (int sweep = 0; sweep < config.sweeps; ++sweep) {
      for (int s = 0; s < n; ++s) {
        const double d = chain.step(rng.uniform_int(n), rng);
        if (d == 0.0) continue;
        current += d;
        if (better(current, chain.q, best, best_q)) {
          best = current;
          best_q = chain.q;
          best_groups = chain.state.assignment();
          best_red = chain.red;
        }
      }
    }
    Chain finish(graph, meta, p, std::move(best_groups), std::move(best_red), kk, config.model);
    finish.polish();
    results[c] = finish.snapshot();
  });

  std::size_t best = 0;
  for (std::size_t c = 1; c < n_chains; ++c)
    if (better(results[c].objective, results[c].q, results[best].objective, results[best].q)) best = c;
  return results[best];
}

std::vector<NeoState> exhaustive_profile(const Graph& graph, const Partition& metadata, int k_groups,
                                         BaseObjective model, double cap) {
  const int n = graph.n_nodes();
  if (metadata.size() != n) throw ValidationError("metadata must cover every node");
  const int k = std::max(k_groups, metadata.k_groups());
  const double states = std::pow(static_cast<double>(k), n) * std::pow(2.0, n);
  if (states >= cap)
    throw CapacityError("exhaustive neoSBM search over " + std::to_string(n) + " nodes and " + std::to_string(k) +
                        " groups exceeds the cap");

  const auto& meta = metadata.assignment();
  std::vector<NeoState> profile(static_cast<std::size_t>(n) + 1);
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> digit(static_cast<std::size_t>(n), 0);  // 0 = blue, t+1 = red in group t
  std::vector<int> groups(meta.begin(), meta.end());
  std::vector<char> red(static_cast<std::size_t>(n), 0);
  int q = 0;
  while (true) {
    const double l = BlockState(graph, groups, k, model).total();
    auto& slot = profile[q];
    if (!seen[q] || l > slot.l_base + tolerance_for(slot.l_base)) {
      seen[q] = 1;
      slot.groups = groups;
      slot.red = red;
      slot.q = q;
      slot.l_base = l;
      slot.objective = l;
    }
    int i = 0;
    while (i < n && digit[i] == k) {
      digit[i] = 0;
      groups[i] = meta[i];
      red[i] = 0;
      --q;
      ++i;
    }
    if (i == n) break;
    if (digit[i] == 0) {
      red[i] = 1;
      ++q;
    }
    groups[i] = digit[i]++;
  }
  return profile;
}

NeoState select_from_profile(const std::vector<NeoState>& profile, double theta) {
  const double p = psi(theta);
  std::size_t best = 0;
  double best_obj = profile[0].l_base;
  for (std::size_t q = 1; q < profile.size(); ++q) {
    const double obj = profile[q].l_base + static_cast<double>(q) * p;
    if (obj > best_obj + tolerance_for(best_obj)) {
      best = q;
      best_obj = obj;
    }
  }
  NeoState s = profile[best];
  s.objective = best_obj;
  return s;
}

NeoState exhaustive_neo(const Graph& graph, const Partition& metadata, const NeoConfig& config) {
  const auto profile = exhaustive_profile(graph, metadata, config.optimum_groups, config.model);
  return select_from_profile(profile, config.theta);
}

int NeoPath::jumps() const {
  return static_cast<int>(std::count_if(records.begin(), records.end(), [](const NeoRecord& r) { return r.jump; }));
}

NeoPath theta_sweep(const Graph& graph, const Partition& metadata, std::span<const double> grid,
                    const NeoConfig& config, const SweepOptions& sweep, const std::optional<Partition>& optimum) {
  if (grid.empty()) throw ValidationError("theta grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    check_theta(grid[i]);
    if (i > 0 && !(grid[i] > grid[i - 1])) throw ValidationError("theta grid must be strictly increasing");
  }
  NeoPath path;
  path.metadata = metadata;
  if (optimum) {
    path.optimum = *optimum;
  } else {
    FitOptions fit;
    fit.k_groups = config.optimum_groups > 0 ? config.optimum_groups : metadata.k_groups();
    fit.objective = config.model;
    fit.sweeps = config.fit_sweeps;
    fit.restarts = config.fit_restarts;
    fit.seed = config.seed;
    fit.threads = config.threads;
    path.optimum = fit_blockmodel(graph, fit).partition;
  }

  const double jump_q = sweep.jump_fraction * graph.n_nodes();
  Rng seeds(config.seed);
  path.records.reserve(grid.size());
  const NeoState* warm = nullptr;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    NeoConfig point = config;
    point.theta = grid[g];
    point.seed = seeds.next_u64();
    NeoRecord rec;
    rec.theta = grid[g];
    rec.state = infer(graph, metadata, point, path.optimum, warm);
    if (g > 0) {
      const auto& prev = path.records.back().state;
      rec.jump = rec.state.q - prev.q > jump_q && rec.state.l_base > prev.l_base + tolerance_for(prev.l_base);
    }
    path.records.push_back(std::move(rec));
    warm = &path.records.back().state;
  }
  return path;
}

std::vector<double> parse_grid(std::string_view text) {
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos) throw ValidationError("grid must look like start:stop:step");
  double a = 0.0, b = 0.0, step = 0.0;
  try {
    a = std::stod(std::string(text.substr(0, first)));
    b = std::stod(std::string(text.substr(first + 1, second - first - 1)));
    step = std::stod(std::string(text.substr(second + 1)));
  } catch (const std::exception&) {
    throw ValidationError("grid must look like start:stop:step");
  }
  if (!(step > 0.0) || b < a) throw ValidationError("grid needs step > 0 and start <= stop");
  std::vector<double> out;
  for (long i = 0;; ++i) {
    const double x = a + static_cast<double>(i) * step;
    if (x > b + step * 1e-6) break;
    out.push_back(x);
  }
  return out;
}

}  // namespace metanet
