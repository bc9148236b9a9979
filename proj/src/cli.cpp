#include "metanet/cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include "metanet/bestest.hpp"
#include "metanet/error.hpp"
#include "metanet/inference.hpp"
#include "metanet/landscape.hpp"
#include "metanet/metrics.hpp"
#include "metanet/models.hpp"
#include "metanet/neosbm.hpp"
#include "metanet/parallel.hpp"
#include "metanet/synthgen.hpp"

#ifndef METANET_VERSION
#define METANET_VERSION "0.0.0"
#endif

namespace metanet::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string version() { return METANET_VERSION; }

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw Error("SHA-256 unavailable");
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return hex.str();
}

namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

json manifest_json(const RunManifest& m) {
  json j;
  j["command"] = m.command;
  j["argv"] = m.argv;
  j["seed"] = m.seed;
  json digests = json::object();
  for (const auto& [path, digest] : m.input_digests) digests[path] = digest;
  j["input_digests"] = digests;
  j["version"] = m.version;
  j["timestamp"] = m.timestamp;
  return j;
}

json score_json(const ScoreValue& s) {
  json j;
  j["model"] = std::string(to_string(s.model));
  j["kind"] = std::string(to_string(s.kind));
  j["value"] = s.value;
  j["log_base"] = s.log_base();
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  f << text;
  if (!f) throw Error("write failed: " + path);
}

void emit_json(const json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << j.dump(2) << '\n';
  } else {
    write_text(path, j.dump(2) + "\n");
  }
}

std::string labels_text(const Graph& graph, const Partition& p) {
  std::ostringstream s;
  write_labels(graph, p, s);
  return s.str();
}

// Partition in the metadata label space: metadata names for its groups, fresh names after.
Partition named_partition(const std::vector<int>& groups, const Partition& metadata) {
  int k = metadata.k_groups();
  for (int g : groups) k = std::max(k, g + 1);
  std::vector<std::string> names = metadata.label_names();
  for (int g = metadata.k_groups(); g < k; ++g) names.push_back("free" + std::to_string(g));
  return Partition(groups, names);
}

struct Context {
  std::vector<std::string> argv;
  std::ostream& out;
  std::ostream& err;
  int threads = 0;

  RunManifest manifest(const std::string& command, std::uint64_t seed, const std::vector<std::string>& inputs) const {
    RunManifest m;
    m.command = command;
    m.argv = argv;
    m.seed = seed;
    for (const auto& path : inputs) m.input_digests[path] = sha256_file(path);
    m.version = version();
    m.timestamp = utc_now();
    return m;
  }
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream s(text);
  std::string tok;
  while (std::getline(s, tok, ',')) {
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw ValidationError("bad number '" + tok + "' in list");
    }
  }
  if (out.empty()) throw ValidationError("empty list");
  return out;
}

// ---------------------------------------------------------------- bestest

struct BestestArgs {
  std::string graph, metadata, model = "sbm", dump_null, out;
  std::int64_t permutations = 100000;
  std::uint64_t seed = 1;
  bool exhaustive = false;
};

void add_bestest(CLI::App& app, Context& ctx, std::function<void()>& action) {
  auto a = std::make_shared<BestestArgs>();
  auto* cmd = app.add_subcommand("bestest", "Blockmodel entropy significance test of metadata");
  cmd->add_option("--graph", a->graph, "Edge list")->required()->check(CLI::ExistingFile);
  cmd->add_option("--metadata", a->metadata, "Node label file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--model", a->model, "sbm|sbm-exact|sbm-sparse|poisson-sbm|poisson-dcsbm|multinomial-dcsbm|modularity")
      ->capture_default_str();
  cmd->add_option("--permutations", a->permutations, "Monte Carlo replicates")->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", a->seed, "Random seed")->capture_default_str();
  cmd->add_flag("--exhaustive", a->exhaustive, "Enumerate every distinct label arrangement");
  cmd->add_option("--dump-null", a->dump_null, "Write null scores to CSV, one per line");
  cmd->add_option("--out", a->out, "JSON output path (default stdout)");
  cmd->callback([a, &ctx, &action] {
    action = [a, &ctx] {
      const auto graph = load_edge_list_file(a->graph);
      const auto meta = load_labels_file(a->metadata, graph);
      TestOptions opt;
      opt.model = parse_model(a->model);
      opt.permutations = a->permutations;
      opt.seed = a->seed;
      opt.mode = a->exhaustive ? TestMode::exhaustive : TestMode::monte_carlo;
      opt.keep_null = !a->dump_null.empty();
      opt.threads = ctx.threads;
      const auto r = run_bestest(graph, meta, opt);
      if (!a->dump_null.empty()) {
        std::ostringstream s;
        s << std::setprecision(17);
        for (double v : r.null_scores) s << v << '\n';
        write_text(a->dump_null, s.str());
      }
      json j;
      j["model"] = std::string(to_string(r.model));
      j["observed"] = score_json(r.observed);
      j["null_mean"] = r.null_mean;
      j["null_sd"] = r.null_sd;
      j["n_permutations"] = r.null_samples;
      j["p_value"] = r.p_value;
      j["extreme_count"] = r.extreme_count;
      if (r.mode == TestMode::exhaustive) j["arrangements"] = r.arrangements;
      j["seed"] = r.seed;
      j["mode"] = r.mode == TestMode::exhaustive ? "exhaustive" : "monte_carlo";
      j["manifest"] = manifest_json(ctx.manifest("bestest", a->seed, {a->graph, a->metadata}));
      emit_json(j, a->out, ctx.out);
    };
  });
}

// ---------------------------------------------------------------- score

struct ScoreArgs {
  std::string graph, partition, model = "sbm", out;
};

void add_score(CLI::App& app, Context& ctx, std::function<void()>& action) {
  auto a = std::make_shared<ScoreArgs>();
  auto* cmd = app.add_subcommand("score", "Score one partition under a model");
  cmd->add_option("--graph", a->graph, "Edge list")->required()->check(CLI::ExistingFile);
  cmd->add_option("--partition", a->partition, "Node label file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--model", a->model, "Model name (as for bestest)")->capture_default_str();
  cmd->add_option("--out", a->out, "JSON output path (default stdout)");
  cmd->callback([a, &ctx, &action] {
    action = [a, &ctx] {
      const auto graph = load_edge_list_file(a->graph);
      const auto p = load_labels_file(a->partition, graph);
      json j = score_json(evaluate(parse_model(a->model), graph, p));
      j["n_nodes"] = graph.n_nodes();
      j["n_edges"] = graph.n_edges();
      j["k_groups"] = p.k_groups();
      j["manifest"] = manifest_json(ctx.manifest("score", 0, {a->graph, a->partition}));
      emit_json(j, a->out, ctx.out);
    };
  });
}

// ---------------------------------------------------------------- neosbm

struct NeoArgs {
  std::string graph, metadata, model = "sbm", grid = "0.01:0.99:0.01", out, partitions_dir, optimum;
  int sweeps = 1000;
  int restarts = 20;
  int groups = 0;
  std::uint64_t seed = 1;
  double jump_fraction = 0.05;
};

std::string theta_tag(double theta) {
  std::ostringstream s;
  s << "theta_" << std::fixed << std::setprecision(4) << theta;
  return s.str();
}

void add_neosbm(CLI::App& app, Context& ctx, std::function<void()>& action) {
  auto a = std::make_shared<NeoArgs>();
  auto* cmd = app.add_subcommand("neosbm", "neoSBM theta sweep from the metadata partition");
  cmd->add_option("--graph", a->graph, "Edge list")->required()->check(CLI::ExistingFile);
  cmd->add_option("--metadata", a->metadata, "Node label file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--model", a->model, "sbm|dcsbm|modularity")->capture_default_str();
  cmd->add_option("--theta-grid", a->grid, "start:stop:step, inside (0, 1)")->capture_default_str();
  cmd->add_option("--sweeps", a->sweeps, "MCMC sweeps per chain")->capture_default_str()->check(CLI::NonNegativeNumber);
  cmd->add_option("--restarts", a->restarts, "Chains per grid point")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--groups", a->groups, "Groups of the unconstrained fit (0 = metadata count)")->capture_default_str();
  cmd->add_option("--optimum", a->optimum, "Label file of a known optimum (skips the fit)")->check(CLI::ExistingFile);
  cmd->add_option("--jump-fraction", a->jump_fraction, "Jump threshold on q as a fraction of N")->capture_default_str();
  cmd->add_option("--seed", a->seed, "Random seed")->capture_default_str();
  cmd->add_option("--out", a->out, "JSON output path (default stdout)");
  cmd->add_option("--dump-partitions", a->partitions_dir, "Directory for per-theta label files");
  cmd->callback([a, &ctx, &action] {
    action = [a, &ctx] {
      const auto graph = load_edge_list_file(a->graph);
      const auto meta = load_labels_file(a->metadata, graph);
      NeoConfig cfg;
      cfg.model = parse_objective(a->model);
      cfg.sweeps = a->sweeps;
      cfg.restarts = a->restarts;
      cfg.seed = a->seed;
      cfg.threads = ctx.threads;
      cfg.optimum_groups = a->groups;
      SweepOptions sw;
      sw.jump_fraction = a->jump_fraction;
      std::optional<Partition> optimum;
      std::vector<std::string> inputs{a->graph, a->metadata};
      if (!a->optimum.empty()) {
        optimum = load_labels_file(a->optimum, graph);
        inputs.push_back(a->optimum);
      }
      const auto grid = parse_grid(a->grid);
      const auto path = theta_sweep(graph, meta, grid, cfg, sw, optimum);

      json records = json::array();
      for (const auto& r : path.records) {
        json rec;
        rec["theta"] = r.theta;
        rec["q"] = r.state.q;
        rec["L_base"] = r.state.l_base;
        rec["L_neo"] = r.state.objective;
        rec["jump"] = r.jump;
        rec["partition"] = r.state.partition().assignment();
        std::vector<int> z(r.state.red.begin(), r.state.red.end());
        rec["z"] = z;
        records.push_back(rec);
      }
      json j;
      j["model"] = a->model;
      j["n_nodes"] = graph.n_nodes();
      j["nodes"] = graph.node_names();
      j["metadata"] = meta.assignment();
      j["optimum"] = path.optimum.assignment();
      j["q_hat"] = min_free_nodes(meta, path.optimum);
      j["jumps"] = path.jumps();
      j["records"] = records;
      j["manifest"] = manifest_json(ctx.manifest("neosbm", a->seed, inputs));
      emit_json(j, a->out, ctx.out);

      if (!a->partitions_dir.empty()) {
        fs::create_directories(a->partitions_dir);
        const fs::path dir(a->partitions_dir);
        write_text((dir / "metadata.labels").string(), labels_text(graph, meta));
        write_text((dir / "optimum.labels").string(),
                   labels_text(graph, named_partition(align_labels(meta, path.optimum), meta)));
        for (const auto& r : path.records)
          write_text((dir / (theta_tag(r.theta) + ".labels")).string(),
                     labels_text(graph, named_partition(r.state.groups, meta)));
      }
    };
  });
}

// ---------------------------------------------------------------- metrics

struct MetricArgs {
  std::string a, b, norm = "sqrt";
  int digits = 2;
  bool as_json = false;
  int cap = kDefaultEnumerationCap;
};

void add_metrics(CLI::App& app, Context& ctx, std::function<void()>& action) {
  auto* cmd = app.add_subcommand("metrics", "Partition comparison metrics");
  cmd->require_subcommand(1);
  for (const std::string name : {"nmi", "ami", "vi", "mi", "emi", "homogeneity"}) {
    auto a = std::make_shared<MetricArgs>();
    const bool single = name == "homogeneity";
    auto* sub = cmd->add_subcommand(name, single ? "Mean AMI from a partition to every partition of its objects"
                                                 : "Compare two label files over the same nodes");
    sub->add_option("--a", a->a, "First label file")->required()->check(CLI::ExistingFile);
    if (!single) sub->add_option("--b", a->b, "Second label file")->required()->check(CLI::ExistingFile);
    if (name == "nmi")
      sub->add_option("--norm", a->norm, "sqrt|avg|max")->capture_default_str()->check(CLI::IsMember({"sqrt", "avg", "max"}));
    if (single) sub->add_option("--cap", a->cap, "Largest object count to enumerate")->capture_default_str();
    sub->add_option("--digits", a->digits, "Decimal places printed")->capture_default_str();
    sub->add_flag("--json", a->as_json, "Print JSON with full precision and a manifest");
    sub->callback([a, name, single, &ctx, &action] {
      action = [a, name, single, &ctx] {
        const auto ta = load_label_table_file(a->a);
        double value = 0.0;
        std::vector<std::string> inputs{a->a};
        if (single) {
          value = homogeneity_profile(ta.partition, a->cap);
        } else {
          const auto tb = load_label_table_file(a->b);
          inputs.push_back(a->b);
          const auto u = ta.partition;
          const auto v = align_to(ta, tb);
          if (name == "nmi") {
            const auto norm = a->norm == "avg" ? Normalization::avg
                              : a->norm == "max" ? Normalization::max
                                                 : Normalization::sqrt;
            value = nmi(u, v, norm);
          } else if (name == "ami") {
            value = ami(u, v);
          } else if (name == "vi") {
            value = vi(u, v);
          } else if (name == "mi") {
            value = mutual_information(u, v);
          } else {
            value = expected_mi(u, v);
          }
        }
        if (a->as_json) {
          json j;
          j["metric"] = name;
          j["value"] = value;
          j["manifest"] = manifest_json(ctx.manifest("metrics " + name, 0, inputs));
          ctx.out << j.dump(2) << '\n';
        } else {
          ctx.out << std::fixed << std::setprecision(a->digits) << value << '\n';
        }
      };
    });
  }
}

// ---------------------------------------------------------------- homogeneity

struct HomogeneityArgs {
  int n = 5;
  int cap = kDefaultEnumerationCap;
  std::string out;
};

void add_homogeneity(CLI::App& app, Context& ctx, std::function<void()>& action) {
  auto a = std::make_shared<HomogeneityArgs>();
  auto* cmd = app.add_subcommand("homogeneity", "Mean AMI to all partitions, for every partition of n objects");
  cmd->add_option("--n", a->n, "Object count")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--cap", a->cap, "Largest object count to enumerate")->capture_default_str();
  cmd->add_option("--out", a->out, "JSON output path (default stdout)");
  cmd->callback([a, &ctx, &action] {
    action = [a, &ctx] {
      const auto rows = homogeneity_by_class(a->n, a->cap);
      json classes = json::array();
      for (const auto& r : rows) {
        json c;
        c["group_sizes"] = r.group_sizes;
        c["members"] = r.members;
        c["mean_ami_min"] = r.mean_ami_min;
        c["mean_ami_max"] = r.mean_ami_max;
        classes.push_back(c);
      }
      json j;
      j["n"] = a->n;
      j["bell"] = bell_number(a->n);
      j["boundary_value"] = 1.0 / static_cast<double>(bell_number(a->n));
      j["classes"] = classes;
      j["manifest"] = manifest_json(ctx.manifest("homogeneity", 0, {}));
      emit_json(j, a->out, ctx.out);
    };
  });
}

// ---------------------------------------------------------------- generate

struct TwoBlockArgs {
  int n = 1000;
  double epsilon = 0.1, ell = 1.0, mean_degree = 10.0;
  std::optional<double> lambda;
  std::uint64_t seed = 1;
  std::string prefix;
};

struct MultiArgs {
  std::string config, prefix;
  std::uint64_t seed = 1;
};

void add_generate(CLI::App& app, Context& ctx, std::function<void()>& action) {
  auto* cmd = app.add_subcommand("generate", "Synthetic networks with planted partitions and metadata");
  cmd->require_subcommand(1);

  auto t = std::make_shared<TwoBlockArgs>();
  auto* two = cmd->add_subcommand("two-block", "Two planted communities, metadata correlated at level ell");
  two->add_option("--n", t->n, "Node count")->capture_default_str();
  two->add_option("--epsilon", t->epsilon, "omega_rs / omega_rr")->capture_default_str();
  two->add_option("--ell", t->ell, "Metadata correlation")->capture_default_str();
  two->add_option("--mean-degree", t->mean_degree, "Expected mean degree")->capture_default_str();
  two->add_option("--lambda", t->lambda, "Detectability value recorded in the output, not used");
  two->add_option("--seed", t->seed, "Random seed")->capture_default_str();
  two->add_option("--out-prefix", t->prefix, "Output prefix")->required();
  two->callback([t, &ctx, &action] {
    action = [t, &ctx] {
      SynthConfig cfg;
      cfg.n_nodes = t->n;
      cfg.epsilon = t->epsilon;
      cfg.ell = t->ell;
      cfg.mean_degree = t->mean_degree;
      cfg.lambda_overlay = t->lambda;
      Rng rng(t->seed);
      auto [graph, truth] = gen_two_block(cfg, rng);
      const auto meta = corrupt_metadata(truth, cfg.ell, rng);
      std::ostringstream edges;
      write_edge_list(graph, edges);
      write_text(t->prefix + ".edges", edges.str());
      write_text(t->prefix + ".truth.labels", labels_text(graph, truth));
      write_text(t->prefix + ".metadata.labels", labels_text(graph, meta));
      json j;
      j["generator"] = "two-block";
      j["n_nodes"] = cfg.n_nodes;
      j["epsilon"] = cfg.epsilon;
      j["ell"] = cfg.ell;
      j["mean_degree"] = cfg.mean_degree;
      j["omega_in"] = two_block_omega_in(cfg);
      j["omega_out"] = cfg.epsilon * two_block_omega_in(cfg);
      j["lambda_overlay"] = cfg.lambda_overlay ? json(*cfg.lambda_overlay) : json(nullptr);
      j["n_edges"] = graph.n_edges();
      j["files"] = {t->prefix + ".edges", t->prefix + ".truth.labels", t->prefix + ".metadata.labels"};
      j["manifest"] = manifest_json(ctx.manifest("generate two-block", t->seed, {}));
      write_text(t->prefix + ".json", j.dump(2) + "\n");
      ctx.out << j.dump(2) << '\n';
    };
  });

  auto m = std::make_shared<MultiArgs>();
  auto* multi = cmd->add_subcommand("multi-optimum", "Eight-block core-periphery network with four communities");
  multi->add_option("--config", m->config, "Block matrix JSON (default: built-in profile)")->check(CLI::ExistingFile);
  multi->add_option("--seed", m->seed, "Random seed")->capture_default_str();
  multi->add_option("--out-prefix", m->prefix, "Output prefix")->required();
  multi->callback([m, &ctx, &action] {
    action = [m, &ctx] {
      const auto cfg = m->config.empty() ? default_multi_optimum() : load_multi_optimum(m->config);
      Rng rng(m->seed);
      const auto net = gen_multi_optimum(cfg, rng);
      std::ostringstream edges;
      write_edge_list(net.graph, edges);
      write_text(m->prefix + ".edges", edges.str());
      write_text(m->prefix + ".metadata.labels", labels_text(net.graph, net.metadata));
      write_text(m->prefix + ".communities.labels", labels_text(net.graph, net.communities));
      write_text(m->prefix + ".blocks.labels", labels_text(net.graph, net.blocks));
      json j;
      j["generator"] = "multi-optimum";
      j["config"] = json::parse(to_json(cfg));
      j["n_nodes"] = net.graph.n_nodes();
      j["n_edges"] = net.graph.n_edges();
      j["files"] = {m->prefix + ".edges", m->prefix + ".metadata.labels", m->prefix + ".communities.labels",
                    m->prefix + ".blocks.labels"};
      std::vector<std::string> inputs;
      if (!m->config.empty()) inputs.push_back(m->config);
      j["manifest"] = manifest_json(ctx.manifest("generate multi-optimum", m->seed, inputs));
      write_text(m->prefix + ".json", j.dump(2) + "\n");
      ctx.out << j.dump(2) << '\n';
    };
  });
}

// ---------------------------------------------------------------- landscape

struct LandscapeArgs {
  std::string graph, partitions, model = "sbm", out;
  int samples = 1000;
  std::uint64_t seed = 1;
};

void add_landscape(CLI::App& app, Context& ctx, std::function<void()>& action) {
  auto a = std::make_shared<LandscapeArgs>();
  auto* cmd = app.add_subcommand("landscape", "Crossover sampling, VI distances and MDS surface export");
  cmd->add_option("--graph", a->graph, "Edge list")->required()->check(CLI::ExistingFile);
  cmd->add_option("--partitions", a->partitions, "Directory of *.labels parent partitions")->required()
      ->check(CLI::ExistingDirectory);
  cmd->add_option("--model", a->model, "sbm|dcsbm|modularity")->capture_default_str();
  cmd->add_option("--samples", a->samples, "Crossover samples")->capture_default_str()->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", a->seed, "Random seed")->capture_default_str();
  cmd->add_option("--out", a->out, "Surface CSV path")->required();
  cmd->callback([a, &ctx, &action] {
    action = [a, &ctx] {
      const auto graph = load_edge_list_file(a->graph);
      const auto objective = parse_objective(a->model);
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(a->partitions))
        if (entry.is_regular_file() && entry.path().extension() == ".labels") files.push_back(entry.path());
      std::sort(files.begin(), files.end());
      std::vector<Partition> parents;
      std::vector<std::string> ids;
      std::vector<std::string> inputs{a->graph};
      for (const auto& f : files) {
        parents.push_back(load_labels_file(f.string(), graph));
        ids.push_back(f.stem().string());
        inputs.push_back(f.string());
      }
      Rng rng(a->seed);
      auto all = parents;
      const auto children = crossover_sample(parents, a->samples, rng);
      for (std::size_t i = 0; i < children.size(); ++i) ids.push_back("sample_" + std::to_string(i));
      all.insert(all.end(), children.begin(), children.end());

      const auto dist = vi_matrix(all, ctx.threads);
      const auto coords = mds_embed(dist, static_cast<int>(all.size()));
      std::vector<LandscapePoint> points;
      points.reserve(all.size());
      for (std::size_t i = 0; i < all.size(); ++i)
        points.push_back({coords[i][0], coords[i][1], base_loglik(objective, graph, all[i].assignment(),
                                                                   all[i].k_groups()),
                          ids[i]});
      export_surface_file(points, a->out);
      json j;
      j["surface"] = a->out;
      j["model"] = a->model;
      j["parents"] = static_cast<int>(parents.size());
      j["samples"] = static_cast<int>(children.size());
      j["manifest"] = manifest_json(ctx.manifest("landscape", a->seed, inputs));
      write_text(a->out + ".json", j.dump(2) + "\n");
      ctx.out << j.dump(2) << '\n';
    };
  });
}

// ---------------------------------------------------------------- sensitivity

struct SensitivityArgs {
  int n = 1000, replicates = 100;
  double mean_degree = 10.0;
  std::int64_t permutations = 999;
  std::string epsilons = "0.1,1", ells = "0,0.25,0.5,0.75,1", model = "sbm", out;
  std::uint64_t seed = 1;
};

void add_sensitivity(CLI::App& app, Context& ctx, std::function<void()>& action) {
  auto a = std::make_shared<SensitivityArgs>();
  auto* cmd = app.add_subcommand("sensitivity", "Mean BESTest p-value over synthetic two-block networks");
  cmd->add_option("--n", a->n, "Node count")->capture_default_str();
  cmd->add_option("--mean-degree", a->mean_degree, "Expected mean degree")->capture_default_str();
  cmd->add_option("--replicates", a->replicates, "Networks per grid point")->capture_default_str();
  cmd->add_option("--permutations", a->permutations, "Permutations per test")->capture_default_str();
  cmd->add_option("--epsilons", a->epsilons, "Comma-separated epsilon grid")->capture_default_str();
  cmd->add_option("--ells", a->ells, "Comma-separated ell grid")->capture_default_str();
  cmd->add_option("--model", a->model, "Model name (as for bestest)")->capture_default_str();
  cmd->add_option("--seed", a->seed, "Random seed")->capture_default_str();
  cmd->add_option("--out", a->out, "CSV path")->required();
  cmd->callback([a, &ctx, &action] {
    action = [a, &ctx] {
      SensitivityOptions opt;
      opt.n_nodes = a->n;
      opt.mean_degree = a->mean_degree;
      opt.replicates = a->replicates;
      opt.permutations = a->permutations;
      opt.model = parse_model(a->model);
      opt.seed = a->seed;
      opt.threads = ctx.threads;
      const auto pts = sensitivity_experiment(parse_list(a->epsilons), parse_list(a->ells), opt);
      std::ostringstream s;
      s << "epsilon,ell,mean_p,sd_p,replicates\n" << std::setprecision(17);
      for (const auto& p : pts)
        s << p.epsilon << ',' << p.ell << ',' << p.mean_p << ',' << p.sd_p << ',' << p.replicates << '\n';
      write_text(a->out, s.str());
      json j;
      j["csv"] = a->out;
      j["points"] = static_cast<int>(pts.size());
      j["manifest"] = manifest_json(ctx.manifest("sensitivity", a->seed, {}));
      write_text(a->out + ".json", j.dump(2) + "\n");
      ctx.out << j.dump(2) << '\n';
    };
  });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"metanet: metadata and community structure in networks", "metanet"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);
  app.fallthrough();
  Context ctx{args, out, err};
  app.add_option("--threads", ctx.threads, "Worker threads (0 = METANET_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);

  std::function<void()> action;
  add_bestest(app, ctx, action);
  add_score(app, ctx, action);
  add_neosbm(app, ctx, action);
  add_metrics(app, ctx, action);
  add_homogeneity(app, ctx, action);
  add_generate(app, ctx, action);
  add_landscape(app, ctx, action);
  add_sensitivity(app, ctx, action);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }
  if (!action) {
    err << app.help();
    return 2;
  }
  try {
    action();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace metanet::cli
