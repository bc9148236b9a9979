#include <doctest.h>

#include <cmath>

#include "metanet/error.hpp"
#include "metanet/models.hpp"
#include "oracles.hpp"

using namespace metanet;

namespace {

Graph make(int n, std::vector<Edge> edges) { return Graph(n, edges); }

const Graph kPath = make(3, {{0, 1}, {1, 2}});
const Graph kTriangle = make(3, {{0, 1}, {1, 2}, {0, 2}});

}  // namespace

TEST_CASE("bernoulli rapid entropy by hand") {
  Graph empty(4, std::vector<Edge>{});
  CHECK(bernoulli_entropy(block_stats(empty, Partition({0, 1, 0, 1}))).value == 0.0);

  // single edge, one group: m = 2 over n^2 = 4 ordered pairs, w = 1/2
  auto one = make(2, {{0, 1}});
  CHECK(bernoulli_entropy(block_stats(one, Partition({0, 0}))).value == doctest::Approx(2.0).epsilon(1e-12));

  // complete bipartite K_{2,3} split by sides: every block is empty or full
  auto k23 = make(5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}});
  Partition sides({0, 0, 1, 1, 1});
  const auto st = block_stats(k23, sides);
  CHECK(bernoulli_entropy(st, BernoulliVariant::rapid).value == 0.0);
  CHECK(bernoulli_entropy_exact(k23, sides.assignment(), 2).value == 0.0);
}

TEST_CASE("bernoulli variants against pairwise oracles") {
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + rng.uniform_int(12);
    const int k = 1 + rng.uniform_int(4);
    auto g = oracle::random_graph(n, 0.1 + 0.6 * rng.uniform01(), rng);
    auto pi = oracle::random_assignment(n, k, rng);
    const auto st = block_stats(g, pi, k);
    const double rapid = bernoulli_entropy(st, BernoulliVariant::rapid).value;
    CHECK(rapid == doctest::Approx(oracle::bernoulli_rapid_bits(g, pi, k)).epsilon(1e-10));
    CHECK(bernoulli_loglik(st) == doctest::Approx(oracle::bernoulli_loglik_nats(g, pi, k)).epsilon(1e-10));

    // exact = rapid + 1/2 sum_r n_r h(w_rr)
    const auto w = oracle::densities(g, pi, k);
    double diag = 0.0;
    for (int r = 0; r < k; ++r) diag += 0.5 * static_cast<double>(st.n[r]) * oracle::h2(w[r][r]);
    CHECK(bernoulli_entropy_exact(g, pi, k).value == doctest::Approx(rapid + diag).epsilon(1e-10));

    // sparse = (|E| - 1/2 sum m ln w) / ln 2
    double s = 0.0;
    for (int r = 0; r < k; ++r)
      for (int t = 0; t < k; ++t)
        if (st.m(r, t) > 0) s += static_cast<double>(st.m(r, t)) * std::log(w[r][t]);
    CHECK(bernoulli_entropy(st, BernoulliVariant::sparse).value ==
          doctest::Approx((static_cast<double>(g.n_edges()) - 0.5 * s) / std::log(2.0)).epsilon(1e-10));
  }
}

TEST_CASE("exact variant needs the graph") {
  CHECK_THROWS_AS(bernoulli_entropy(block_stats(kPath, Partition({0, 0, 0})), BernoulliVariant::exact),
                  ValidationError);
}

TEST_CASE("poisson log-likelihoods by hand") {
  Graph empty(3, std::vector<Edge>{});
  CHECK(poisson_sbm_loglik(block_stats(empty, Partition({0, 1, 0}))).value == 0.0);
  CHECK(poisson_dcsbm_loglik(block_stats(empty, Partition({0, 1, 0}))).value == 0.0);

  auto path_stats = block_stats(kPath, Partition({0, 1, 0}));
  CHECK(poisson_sbm_loglik(path_stats).value == doctest::Approx(0.0));
  CHECK(poisson_dcsbm_loglik(path_stats).value == doctest::Approx(2.0 * std::log(0.5)));
  CHECK(poisson_dcsbm_loglik(path_stats).value == doctest::Approx(-1.386).epsilon(1e-3));

  auto tri = block_stats(kTriangle, Partition({0, 0, 0}));
  CHECK(poisson_sbm_loglik(tri).value == doctest::Approx(3.0 * std::log(6.0 / 9.0)));
  CHECK(poisson_sbm_loglik(tri).value == doctest::Approx(-1.2164).epsilon(1e-4));
  CHECK(poisson_dcsbm_loglik(tri).value == doctest::Approx(3.0 * std::log(6.0 / 36.0)));
  CHECK(poisson_dcsbm_loglik(tri).value == doctest::Approx(-5.375).epsilon(1e-3));
  CHECK(poisson_dcsbm_loglik(tri).kind == ScoreKind::loglik_nats);
}

TEST_CASE("modularity against the per-edge definition") {
  auto two = make(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  CHECK(modularity(block_stats(two, Partition({0, 0, 0, 1, 1, 1}))).value == doctest::Approx(0.5));
  CHECK(modularity(block_stats(two, Partition({0, 0, 0, 0, 0, 0}))).value == doctest::Approx(0.0));

  auto k4 = make(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  std::vector<int> split{0, 0, 1, 1};
  CHECK(modularity(block_stats(k4, split, 2)).value == doctest::Approx(oracle::modularity(k4, split)).epsilon(1e-14));
  CHECK(modularity(block_stats(k4, split, 2)).value == doctest::Approx(-1.0 / 6.0));

  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    auto g = oracle::random_graph(12, 0.3, rng);
    if (g.n_edges() == 0) continue;
    auto c = oracle::random_assignment(12, 3, rng);
    CHECK(modularity(block_stats(g, c, 3)).value == doctest::Approx(oracle::modularity(g, c)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(modularity(block_stats(Graph(2, std::vector<Edge>{}), Partition({0, 1}))), ValidationError);
}

TEST_CASE("multinomial entropy approximation") {
  const std::vector<double> single{1.0};
  CHECK(multinomial_entropy_approx_bits(7, single) == doctest::Approx(0.0));

  const std::vector<double> p{0.5, 0.25, 0.25};
  const double err2 = std::abs(multinomial_entropy_approx_bits(2, p) - oracle::multinomial_entropy_exact_bits(2, p));
  const double err10 = std::abs(multinomial_entropy_approx_bits(10, p) - oracle::multinomial_entropy_exact_bits(10, p));
  CHECK(err10 < err2);
  CHECK(err10 < 0.05);
}

TEST_CASE("multinomial DCSBM grouped form equals the pair sum") {
  Rng rng(21);
  for (int t = 0; t < 20; ++t) {
    const int n = 4 + rng.uniform_int(10);
    const int k = 1 + rng.uniform_int(3);
    auto g = oracle::random_graph(n, 0.4, rng);
    if (g.n_edges() == 0) continue;
    auto pi = oracle::random_assignment(n, k, rng);
    // node-pair bins i < j with 2 p_ij, p_ij = k_i k_j m_rs / (2E kappa_r kappa_s), renormalized
    std::vector<double> kappa(k, 0.0), m(k * k, 0.0);
    for (int i = 0; i < n; ++i) kappa[pi[i]] += g.degree(i);
    for (auto [u, v] : g.edges()) {
      m[pi[u] * k + pi[v]] += 1.0;
      m[pi[v] * k + pi[u]] += 1.0;
    }
    const double two_e = 2.0 * static_cast<double>(g.n_edges());
    auto p = [&](int i, int j) {
      const int r = pi[i], s = pi[j];
      if (kappa[r] == 0 || kappa[s] == 0) return 0.0;
      return g.degree(i) * static_cast<double>(g.degree(j)) * m[r * k + s] / (two_e * kappa[r] * kappa[s]);
    };
    double self = 0.0;
    for (int i = 0; i < n; ++i) self += p(i, i);
    std::vector<double> bins;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double v = 2.0 * p(i, j) / (1.0 - self);
        if (v > 0.0) bins.push_back(v);
      }
    const double expected = multinomial_entropy_approx_bits(static_cast<long>(g.n_edges()), bins);
    CHECK(multinomial_dcsbm_entropy(g, pi, k).value == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("model names and dispatch") {
  for (Model m : {Model::sbm, Model::sbm_exact, Model::sbm_sparse, Model::poisson_sbm, Model::poisson_dcsbm,
                  Model::multinomial_dcsbm, Model::modularity})
    CHECK(parse_model(to_string(m)) == m);
  CHECK_THROWS_AS(parse_model("bogus"), ValidationError);
  CHECK(evaluate(Model::sbm, kTriangle, Partition({0, 0, 0})).orientation() == Orientation::lower_better);
  CHECK(evaluate(Model::modularity, kTriangle, Partition({0, 0, 0})).orientation() == Orientation::higher_better);
  CHECK(evaluate(Model::poisson_sbm, kTriangle, Partition({0, 0, 0})).value ==
        doctest::Approx(poisson_sbm_loglik(block_stats(kTriangle, Partition({0, 0, 0}))).value));
  CHECK(ScoreValue{0.0, ScoreKind::entropy_bits, Model::sbm}.log_base() == 2.0);
}
