// Acceptance run: one PASS/FAIL/SKIP line per criterion, exit status 1 on any FAIL.
//
//   acceptance [--export DIR] [--only 1,2,...] [--known-red 10,...]
//
// --known-red lists criteria that are known to fail. Their lines still say FAIL;
// the exit status is 0 only if the failing set equals that list exactly, so a
// new failure or a known-red criterion turning green both fail the run.
//
// Criterion 12 reads third-party data from $METANET_DATA_DIR and is skipped
// when the files are missing. With --export, the inputs for the plotting
// component are written to DIR.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "metanet/bestest.hpp"
#include "metanet/cli.hpp"
#include "metanet/inference.hpp"
#include "metanet/landscape.hpp"
#include "metanet/metrics.hpp"
#include "metanet/models.hpp"
#include "metanet/neosbm.hpp"
#include "metanet/synthgen.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace metanet;
using nlohmann::json;

namespace {

enum class Status { pass, fail, skip };

struct Outcome {
  Status status = Status::fail;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<Outcome()> run;
};

fs::path g_export;
fs::path g_work;

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Outcome verdict(bool ok, std::string detail) { return {ok ? Status::pass : Status::fail, std::move(detail)}; }

std::vector<Partition> three_object_partitions() {
  // printed order: {abc}, {ab|c}, {ac|b}, {a|bc}, {a|b|c}
  return {Partition({0, 0, 0}), Partition({0, 0, 1}), Partition({0, 1, 0}), Partition({0, 1, 1}),
          Partition({0, 1, 2})};
}

int decimals_of(const std::string& s) {
  const auto dot = s.find('.');
  return dot == std::string::npos ? 0 : static_cast<int>(s.size() - dot - 1);
}

bool matches_printed(double value, const std::string& printed) {
  const double scale = std::pow(10.0, decimals_of(printed));
  const double rounded = std::round(value * scale) / scale;
  return std::abs(rounded - std::stod(printed)) < 0.5 / scale;
}

// ---------------------------------------------------------------- 1
Outcome table_nmi() {
  const std::vector<std::vector<double>> printed{{1, 0, 0, 0, 0},
                                                 {0, 1, 0.27, 0.27, 0.76},
                                                 {0, 0.27, 1, 0.27, 0.76},
                                                 {0, 0.27, 0.27, 1, 0.76},
                                                 {0, 0.76, 0.76, 0.76, 1}};
  const std::vector<double> expected_row{0.20, 0.46, 0.46, 0.46, 0.66};
  const auto ps = three_object_partitions();
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    double mean = 0.0;
    for (int j = 0; j < 5; ++j) {
      const double v = nmi(ps[i], ps[j]);
      worst = std::max(worst, std::abs(v - printed[i][j]));
      mean += v / 5.0;
    }
    worst = std::max(worst, std::abs(mean - expected_row[i]));
  }
  return verdict(worst <= 0.005, "max |NMI - printed| = " + fmt("%.4f", worst) + " (tol 0.005)");
}

// ---------------------------------------------------------------- 2
Outcome table_ami() {
  const std::vector<std::vector<std::string>> printed{{"1", "0", "0", "0", "0"},
                                                      {"0", "1", "-0.5", "-0.5", "0"},
                                                      {"0", "-0.5", "1", "-0.5", "0"},
                                                      {"0", "-0.5", "-0.5", "1", "0"},
                                                      {"0", "0", "0", "0", "1"}};
  const std::vector<std::string> expected_row{"0.20", "0", "0", "0", "0.20"};
  const auto ps = three_object_partitions();
  int mismatches = 0;
  for (int i = 0; i < 5; ++i) {
    double mean = 0.0;
    for (int j = 0; j < 5; ++j) {
      const double v = ami(ps[i], ps[j]);
      mismatches += !matches_printed(v, printed[i][j]);
      mean += v / 5.0;
    }
    mismatches += !matches_printed(mean, expected_row[i]);
  }
  return verdict(mismatches == 0, std::to_string(mismatches) + " of 30 entries differ at printed precision");
}

// ---------------------------------------------------------------- 3
Outcome homogeneity() {
  double worst_interior = 0.0, worst_boundary = 0.0;
  std::size_t checked = 0;
  for (int n = 3; n <= 7; ++n) {
    const auto all = enumerate_partitions(n);
    const auto means = homogeneity_all(n);
    const double boundary = 1.0 / static_cast<double>(bell_number(n));
    for (std::size_t i = 0; i < all.size(); ++i) {
      const int k = all[i].k_groups();
      if (k == 1 || k == n)
        worst_boundary = std::max(worst_boundary, std::abs(means[i] - boundary));
      else
        worst_interior = std::max(worst_interior, std::abs(means[i]));
      ++checked;
    }
  }
  const bool ok = worst_interior < 1e-9 && worst_boundary < 1e-9 && bell_number(7) == 877;
  return verdict(ok, std::to_string(checked) + " partitions; interior max |mean AMI| = " + fmt("%.2e", worst_interior) +
                         ", boundary max |mean - 1/B_n| = " + fmt("%.2e", worst_boundary));
}

// ---------------------------------------------------------------- 4
Outcome entropy_identity() {
  Rng rng(4004);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + rng.uniform_int(199);
    const int k = 1 + rng.uniform_int(5);
    const double p = 0.01 + 0.3 * rng.uniform01();
    const auto g = oracle::random_graph(n, p, rng);
    const auto pi = oracle::random_assignment(n, k, rng);
    const double h_nats = bernoulli_entropy(block_stats(g, pi, k)).value * std::log(2.0);
    const double ll = oracle::bernoulli_loglik_nats(g, pi, k);
    const double rel = std::abs(h_nats + ll) / std::max(1.0, std::abs(ll));
    worst = std::max(worst, rel);
  }
  return verdict(worst <= 1e-9, "100 pairs; max relative |H + L| = " + fmt("%.2e", worst) + " (tol 1e-9)");
}

// ---------------------------------------------------------------- 5
Outcome null_uniformity() {
  const int reps = 500;
  std::vector<double> ps(reps);
  SynthConfig cfg;
  cfg.n_nodes = 100;
  cfg.epsilon = 1.0;
  cfg.mean_degree = 10.0;
  for (int r = 0; r < reps; ++r) {
    Rng rng = Rng::substream(5005, static_cast<std::uint64_t>(r));
    auto [g, truth] = gen_two_block(cfg, rng);
    const auto meta = corrupt_metadata(truth, 0.0, rng);
    TestOptions opt;
    opt.permutations = 99;
    opt.seed = rng.next_u64();
    opt.threads = 1;
    ps[r] = run_bestest(g, meta, opt).p_value;
  }
  std::sort(ps.begin(), ps.end());
  // KS distance to U(0, 1), checking both sides of every step
  double d = 0.0;
  for (int i = 0; i < reps; ++i) {
    d = std::max(d, std::abs((i + 1.0) / reps - ps[i]));
    d = std::max(d, std::abs(ps[i] - static_cast<double>(i) / reps));
  }
  const double mean = std::accumulate(ps.begin(), ps.end(), 0.0) / reps;
  return verdict(d < 0.05, "KS D = " + fmt("%.4f", d) + " (tol 0.05), mean p = " + fmt("%.3f", mean));
}

// ---------------------------------------------------------------- 6
std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    for (std::size_t t = i; t <= j; ++t) r[idx[t]] = (i + j) / 2.0 + 1.0;
    i = j + 1;
  }
  return r;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  const auto rx = average_ranks(x), ry = average_ranks(y);
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / rx.size();
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / ry.size();
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxx > 0 && syy > 0 ? sxy / std::sqrt(sxx * syy) : 0.0;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

int cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  if (code != 0) std::cerr << "metanet " << args.front() << " failed: " << err.str();
  return code;
}

Outcome sensitivity_shape() {
  const std::string ells = "0,0.025,0.05,0.075,0.1,0.15,0.2,0.3,0.5,1";
  const auto csv = g_work / "sensitivity.csv";
  if (cli({"sensitivity", "--n", "300", "--mean-degree", "10", "--replicates", "100", "--permutations", "999",
           "--epsilons", "0.1,1", "--ells", ells, "--model", "sbm", "--seed", "6006", "--out", csv.string()}) != 0)
    return {Status::fail, "sensitivity command failed"};
  if (!g_export.empty()) fs::copy_file(csv, g_export / "sensitivity.csv", fs::copy_options::overwrite_existing);

  std::vector<double> ell01, p01;
  double min_flat = 1.0, max_flat = 0.0, p_strong = 1.0;
  const auto rows = read_csv(csv);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double eps = std::stod(rows[i][0]), ell = std::stod(rows[i][1]), p = std::stod(rows[i][2]);
    if (eps == 0.1) {
      ell01.push_back(ell);
      p01.push_back(p);
      if (ell == 1.0) p_strong = p;
    } else {
      min_flat = std::min(min_flat, p);
      max_flat = std::max(max_flat, p);
    }
  }
  const double rho = spearman(ell01, p01);
  const bool ok = rho < -0.9 && min_flat >= 0.4 && max_flat <= 0.6 && p_strong < 0.05;
  std::string curve;
  for (double p : p01) curve += (curve.empty() ? "" : " ") + fmt("%.3f", p);
  return verdict(ok, "eps=0.1 Spearman = " + fmt("%.3f", rho) + " [" + curve + "]; eps=1 mean p in [" +
                         fmt("%.3f", min_flat) + ", " + fmt("%.3f", max_flat) + "]; p(0.1, 1) = " +
                         fmt("%.4f", p_strong));
}

// ---------------------------------------------------------------- 7
Outcome neo_oracle() {
  Rng rng(7007);
  const std::vector<double> thetas{0.1, 0.3, 0.5, 0.7, 0.9};
  int agree = 0, monotone = 0, instances = 0;
  for (int t = 0; t < 50; ++t) {
    const int n = 6 + rng.uniform_int(5);
    const auto g = oracle::random_graph(n, 0.25 + 0.3 * rng.uniform01(), rng);
    auto meta_raw = oracle::random_assignment(n, 2, rng);
    meta_raw[0] = 0;
    meta_raw[1] = 1;
    const Partition meta(meta_raw);
    ++instances;
    const auto prof = exhaustive_profile(g, meta, 2, BaseObjective::sbm);
    bool all = true;
    for (double th : thetas) {
      NeoConfig cfg;
      cfg.theta = th;
      cfg.restarts = 20;
      cfg.sweeps = 200;
      cfg.seed = 70070 + t;
      cfg.threads = 1;
      const auto mc = infer(g, meta, cfg);
      const auto ex = select_from_profile(prof, th);
      const double l_mc = neo_loglik(g, mc.groups, mc.red, meta, cfg);
      std::vector<char> red_ex = ex.red;
      const double l_ex = neo_loglik(g, ex.groups, red_ex, meta, cfg);
      all = all && std::abs(l_mc - l_ex) <= 1e-9 * std::max(1.0, std::abs(l_ex));
    }
    agree += all;
    bool mono = true;
    int prev_q = -1;
    double prev_l = -INFINITY;
    for (int i = 1; i <= 999; ++i) {
      const auto s = select_from_profile(prof, i / 1000.0);
      mono = mono && s.q >= prev_q && s.l_base >= prev_l - 1e-12 * std::max(1.0, std::abs(prev_l));
      prev_q = s.q;
      prev_l = s.l_base;
    }
    monotone += mono;
  }
  const bool ok = agree >= 0.95 * instances && monotone == instances;
  return verdict(ok, std::to_string(agree) + "/" + std::to_string(instances) +
                         " instances match the exhaustive optimum at all 5 theta (need 95%); monotone profile on " +
                         std::to_string(monotone) + "/" + std::to_string(instances));
}

// ---------------------------------------------------------------- 8
Outcome freeing_threshold() {
  const std::vector<Edge> e{{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {2, 3}};
  const Graph g(6, e);
  const std::vector<int> meta{0, 0, 0, 1, 1, 0};  // node 5 mislabelled
  const std::vector<int> planted{0, 0, 0, 1, 1, 1};
  const double dl = oracle::bernoulli_loglik_nats(g, planted, 2) - oracle::bernoulli_loglik_nats(g, meta, 2);
  const double star = 1.0 / (1.0 + std::exp(dl));

  const auto prof = exhaustive_profile(g, Partition(meta), 2, BaseObjective::sbm);
  double found = -1.0;
  for (int i = 1; i <= 999; ++i) {
    const auto s = select_from_profile(prof, i / 1000.0);
    if (s.q > 0) {
      found = i / 1000.0;
      const bool freed_right = s.q == 1 && s.red[5] && Partition(s.groups).same_partition(Partition(planted));
      if (!freed_right) return {Status::fail, "first freed state is not the mislabelled node"};
      break;
    }
  }
  const bool ok = found > 0 && std::abs(found - star) <= 1e-3;
  return verdict(ok, "dL = " + fmt("%.6f", dl) + ", theta* = " + fmt("%.5f", star) + ", first freeing on grid at " +
                         fmt("%.3f", found));
}

// ---------------------------------------------------------------- 9
Outcome multi_optimum() {
  const std::string config = std::string(METANET_CONFIG_DIR) + "/multi_optimum.json";
  const std::uint64_t seed = 1;
  const auto cfg = load_multi_optimum(config);
  const auto prefix = (g_work / "multi").string();
  if (cli({"generate", "multi-optimum", "--config", config, "--seed", std::to_string(seed), "--out-prefix", prefix}) != 0)
    return {Status::fail, "generate failed"};
  const auto graph = load_edge_list_file(prefix + ".edges");
  const auto meta = load_labels_file(prefix + ".metadata.labels", graph);
  const auto comm = load_labels_file(prefix + ".communities.labels", graph);

  FitOptions fo;
  fo.k_groups = 4;
  fo.restarts = 50;
  fo.sweeps = 200;
  fo.seed = seed;
  const auto fit = fit_blockmodel(graph, fo);
  {
    std::ofstream out(prefix + ".optimum.labels");
    write_labels(graph, fit.partition, out);
  }

  const auto neo_json = g_work / "neopath.json";
  const auto parts = g_work / "neopath_partitions";
  if (cli({"neosbm", "--graph", prefix + ".edges", "--metadata", prefix + ".metadata.labels", "--optimum",
           prefix + ".optimum.labels", "--model", "sbm", "--theta-grid", "0.01:0.99:0.01", "--sweeps", "100",
           "--restarts", "4", "--seed", std::to_string(seed), "--out", neo_json.string(), "--dump-partitions",
           parts.string()}) != 0)
    return {Status::fail, "neosbm failed"};
  std::ifstream in(neo_json);
  const auto doc = json::parse(in);
  const int jumps = doc["jumps"].get<int>();
  const auto& last = doc["records"].back();
  const double final_l = last["L_base"].get<double>();
  const double l_opt = fit.loglik;
  const bool near = final_l >= l_opt - 0.01 * std::abs(l_opt);

  std::string path;
  int prev_q = -1;
  for (const auto& r : doc["records"]) {
    const int q = r["q"].get<int>();
    if (r["jump"].get<bool>()) path += " " + fmt("%.2f", r["theta"].get<double>()) + ":" + std::to_string(prev_q) +
                                       "->" + std::to_string(q);
    prev_q = q;
  }

  if (!g_export.empty()) {
    fs::copy_file(neo_json, g_export / "neopath.json", fs::copy_options::overwrite_existing);
    std::ofstream(g_export / "omega.json") << to_json(cfg) << "\n";
    // landscape over the partitions the sweep visited
    const auto surf = g_export / "surface.csv";
    cli({"landscape", "--graph", prefix + ".edges", "--partitions", parts.string(), "--model", "sbm", "--samples",
         "2000", "--seed", std::to_string(seed), "--out", surf.string()});
  }

  const double l_meta = base_loglik(BaseObjective::sbm, graph, meta.assignment(), 4);
  const double l_comm = base_loglik(BaseObjective::sbm, graph, comm.assignment(), 4);
  return verdict(jumps >= 3 && near,
                 std::to_string(jumps) + " jumps (need 3):" + path + "; final L_base = " + fmt("%.2f", final_l) +
                     ", best-of-50 fit = " + fmt("%.2f", l_opt) + " (gap " +
                     fmt("%.3f%%", 100.0 * (l_opt - final_l) / std::abs(l_opt)) + ", allowed 1%); L(metadata) = " +
                     fmt("%.2f", l_meta) + ", L(communities) = " + fmt("%.2f", l_comm));
}

// ---------------------------------------------------------------- 10
Outcome karate() {
  const auto g = load_edge_list_file(std::string(METANET_TEST_DATA) + "/karate.edges");
  const auto faction = load_labels_file(std::string(METANET_TEST_DATA) + "/karate_faction.labels", g);

  TestOptions opt;
  opt.permutations = 100000;
  opt.seed = 1010;
  const auto test = run_bestest(g, faction, opt);

  FitOptions fo;
  fo.k_groups = 2;
  fo.restarts = 50;
  fo.sweeps = 500;
  fo.seed = 1010;
  const auto sbm = fit_blockmodel(g, fo);
  const double l_faction = base_loglik(BaseObjective::sbm, g, faction.assignment(), 2);
  // degree contrast of the fitted split: a leader-follower split separates hubs
  double deg[2] = {0, 0};
  int size[2] = {0, 0};
  for (int i = 0; i < g.n_nodes(); ++i) {
    deg[sbm.partition[i]] += g.degree(i);
    ++size[sbm.partition[i]];
  }
  const double hi = std::max(deg[0] / size[0], deg[1] / size[1]);
  const double lo = std::min(deg[0] / size[0], deg[1] / size[1]);

  fo.objective = BaseObjective::dcsbm;
  const auto dc = fit_blockmodel(g, fo);
  const int off = min_free_nodes(faction, dc.partition);
  const auto aligned = align_labels(faction, dc.partition);
  std::string moved;
  for (int i = 0; i < g.n_nodes(); ++i)
    if (aligned[i] != faction[i]) moved += (moved.empty() ? "" : ",") + g.node_names()[i];
  const double l_dc_faction = base_loglik(BaseObjective::dcsbm, g, faction.assignment(), 2);

  const bool a = test.p_value < 0.01, b = sbm.loglik > l_faction, c = off <= 1;
  return verdict(a && b && c, std::string("(a) p = ") + fmt("%.2e", test.p_value) + (a ? " ok" : " FAIL") +
                                  "; (b) SBM fit L = " + fmt("%.3f", sbm.loglik) + " vs faction " +
                                  fmt("%.3f", l_faction) + (b ? " ok" : " FAIL") + ", mean degree " + fmt("%.1f", hi) +
                                  " vs " + fmt("%.1f", lo) + "; (c) DCSBM optimum differs from faction in " +
                                  std::to_string(off) + " node(s) [" + moved + "], L = " + fmt("%.3f", dc.loglik) +
                                  " vs faction " + fmt("%.3f", l_dc_faction) + (c ? " ok" : " FAIL"));
}

// ---------------------------------------------------------------- 11
// Gated on equiprobable bins, b = 2..4. The error of the asymptotic expansion
// wobbles for m <= 4, so the decrease is checked over m = 5..10; the line also
// says whether it holds over the whole range. Skewed vectors are reported only.
Outcome multinomial_approx() {
  auto errors = [](const std::vector<double>& p) {
    std::vector<double> e;
    for (int m = 1; m <= 10; ++m)
      e.push_back(std::abs(multinomial_entropy_approx_bits(m, p) - oracle::multinomial_entropy_exact_bits(m, p)));
    return e;
  };
  bool tail = true, whole = true;
  double worst10 = 0.0;
  for (int b = 2; b <= 4; ++b) {
    const auto e = errors(std::vector<double>(b, 1.0 / b));
    for (std::size_t m = 1; m < e.size(); ++m) {
      if (e[m] >= e[m - 1]) {
        whole = false;
        if (m >= 5) tail = false;
      }
    }
    worst10 = std::max(worst10, e.back());
  }
  double skewed = 0.0;
  for (const auto& p : std::vector<std::vector<double>>{{0.3, 0.7}, {0.2, 0.3, 0.5}, {0.1, 0.2, 0.3, 0.4}})
    skewed = std::max(skewed, errors(p).back());
  return verdict(tail && worst10 < 0.05,
                 std::string("uniform b=2..4: error decreasing over m=5..10: ") + (tail ? "yes" : "no") +
                     " (over m=1..10: " + (whole ? "yes" : "no") + "); max error at m=10: " + fmt("%.4f", worst10) +
                     " bits (tol 0.05); skewed vectors, not gated, reach " + fmt("%.4f", skewed));
}

// ---------------------------------------------------------------- 12
Outcome field_data() {
  const char* env = std::getenv("METANET_DATA_DIR");
  if (!env) return {Status::skip, "METANET_DATA_DIR not set"};
  const fs::path dir(env);
  const auto friendship = dir / "lazega" / "friendship.edges";
  const auto office = dir / "lazega" / "office.labels";
  if (!fs::exists(friendship) || !fs::exists(office)) return {Status::skip, "Lazega files not found under " + dir.string()};
  std::vector<int> layers;
  for (int k = 1; k <= 9; ++k)
    if (fs::exists(dir / "malaria" / ("layer" + std::to_string(k) + ".edges"))) layers.push_back(k);
  if (layers.empty()) return {Status::skip, "malaria layers not found under " + dir.string()};

  TestOptions opt;
  opt.permutations = 100000;
  opt.seed = 1212;
  const auto g = load_edge_list_file(friendship.string());
  const double p_law = run_bestest(g, load_labels_file(office.string(), g), opt).p_value;
  bool ok = p_law < 1e-3;
  std::string detail = "Friendship x Office p = " + fmt("%.2e", p_law) + "; malaria origin p:";
  for (int k : layers) {
    const auto base = dir / "malaria" / ("layer" + std::to_string(k));
    const auto mg = load_edge_list_file(base.string() + ".edges");
    const double p = run_bestest(mg, load_labels_file(base.string() + ".origin.labels", mg), opt).p_value;
    ok = ok && p > 0.01;
    detail += " " + fmt("%.3f", p);
  }
  return verdict(ok, detail);
}

std::set<int> parse_only(const std::string& s) {
  std::set<int> ids;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) ids.insert(std::stoi(tok));
  return ids;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only, known_red;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--export" && i + 1 < argc) {
      g_export = argv[++i];
    } else if (a == "--only" && i + 1 < argc) {
      only = parse_only(argv[++i]);
    } else if (a == "--known-red" && i + 1 < argc) {
      known_red = parse_only(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--export DIR] [--only 1,2,...] [--known-red 10,...]\n";
      return 2;
    }
  }
  g_work = fs::temp_directory_path() / "metanet_acceptance";
  fs::create_directories(g_work);
  if (!g_export.empty()) fs::create_directories(g_export);

  const std::vector<Criterion> criteria{
      {1, "NMI table for the five partitions of three objects", 1, table_nmi},
      {2, "AMI table for the five partitions of three objects", 1, table_ami},
      {3, "AMI homogeneity for n = 3..7", 120, homogeneity},
      {4, "rapid Bernoulli entropy equals minus the log-likelihood", 10, entropy_identity},
      {5, "BESTest p-values uniform under the null", 120, null_uniformity},
      {6, "sensitivity curve shape", 600, sensitivity_shape},
      {7, "neoSBM MCMC matches exhaustive search", 300, neo_oracle},
      {8, "freeing threshold on two triangles", 30, freeing_threshold},
      {9, "neoSBM path on the multi-optimum network", 900, multi_optimum},
      {10, "karate club regression", 300, karate},
      {11, "multinomial entropy approximation", 60, multinomial_approx},
      {12, "Lazega and malaria p-values (data-dependent)", 3600, field_data},
  };

  std::set<int> failed, expected;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {Status::fail, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.status == Status::pass && secs > c.budget_s) {
      o.status = Status::fail;
      o.detail += "; over time budget";
    }
    const char* tag = o.status == Status::pass ? "PASS" : o.status == Status::skip ? "SKIP" : "FAIL";
    if (o.status == Status::fail) failed.insert(c.id);
    if (known_red.count(c.id)) expected.insert(c.id);
    std::printf("criterion %2d %s  %s: %s [%.1fs of %.0fs]\n", c.id, tag, c.name.c_str(), o.detail.c_str(), secs,
                c.budget_s);
    std::fflush(stdout);
  }
  if (!known_red.empty()) {
    std::string ids;
    for (int id : expected) ids += (ids.empty() ? "" : ",") + std::to_string(id);
    std::printf("known red: %s; %s\n", ids.empty() ? "none run" : ids.c_str(),
                failed == expected ? "failing set matches" : "failing set differs");
  }
  return failed == expected ? 0 : 1;
}
