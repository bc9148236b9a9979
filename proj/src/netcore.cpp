#include "metanet/netcore.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "metanet/error.hpp"

namespace metanet {

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

bool skippable(const std::string& line) {
  auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return in;
}

}  // namespace

Graph::Graph(int n_nodes, std::span<const Edge> edges, std::vector<std::string> node_names)
    : degree_(static_cast<std::size_t>(n_nodes), 0), names_(std::move(node_names)) {
  if (n_nodes < 0) throw ValidationError("negative node count");
  if (names_.empty()) {
    names_.reserve(n_nodes);
    for (int i = 0; i < n_nodes; ++i) names_.push_back(std::to_string(i));
  }
  if (static_cast<int>(names_.size()) != n_nodes) throw ValidationError("node name count mismatch");

  std::set<Edge> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n_nodes || v >= n_nodes)
      throw ValidationError("edge endpoint out of range");
    if (u == v) throw ValidationError("self-loop on node " + names_[u]);
    Edge e{std::min(u, v), std::max(u, v)};
    if (!seen.insert(e).second) continue;
    edges_.push_back(e);
    ++degree_[e.first];
    ++degree_[e.second];
  }

  adj_offset_.assign(static_cast<std::size_t>(n_nodes) + 1, 0);
  for (int i = 0; i < n_nodes; ++i) adj_offset_[i + 1] = adj_offset_[i] + degree_[i];
  adj_.assign(static_cast<std::size_t>(adj_offset_.back()), 0);
  std::vector<int> fill(adj_offset_.begin(), adj_offset_.end() - 1);
  for (auto [u, v] : edges_) {
    adj_[fill[u]++] = v;
    adj_[fill[v]++] = u;
  }
  for (int i = 0; i < n_nodes; ++i)
    std::sort(adj_.begin() + adj_offset_[i], adj_.begin() + adj_offset_[i + 1]);
}

std::span<const int> Graph::neighbors(int i) const {
  return {adj_.data() + adj_offset_[i], static_cast<std::size_t>(degree_[i])};
}

int Graph::index_of(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

bool Graph::has_edge(int i, int j) const {
  auto nb = neighbors(i);
  return std::binary_search(nb.begin(), nb.end(), j);
}

Partition::Partition(std::vector<int> assignment, std::vector<std::string> label_names)
    : assignment_(std::move(assignment)) {
  std::vector<int> used(assignment_.begin(), assignment_.end());
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  if (!used.empty() && used.front() < 0) throw ValidationError("negative group index");
  k_ = static_cast<int>(used.size());

  std::vector<std::string> names;
  const bool has_names = !label_names.empty();
  if (has_names) {
    if (used.back() >= static_cast<int>(label_names.size()))
      throw ValidationError("group index without label name");
    for (int g : used) names.push_back(label_names[g]);
  } else {
    for (int g : used) names.push_back(std::to_string(g));
  }
  label_names_ = std::move(names);

  for (int& g : assignment_)
    g = static_cast<int>(std::lower_bound(used.begin(), used.end(), g) - used.begin());
}

Partition Partition::from_labels(std::span<const std::string> labels) {
  std::unordered_map<std::string, int> index;
  std::vector<std::string> names;
  std::vector<int> assignment;
  assignment.reserve(labels.size());
  for (const auto& label : labels) {
    auto [it, inserted] = index.try_emplace(label, static_cast<int>(names.size()));
    if (inserted) names.push_back(label);
    assignment.push_back(it->second);
  }
  return Partition(std::move(assignment), std::move(names));
}

std::vector<int> Partition::group_sizes() const {
  std::vector<int> sizes(static_cast<std::size_t>(k_), 0);
  for (int g : assignment_) ++sizes[g];
  return sizes;
}

std::vector<int> Partition::canonical() const {
  std::vector<int> relabel(static_cast<std::size_t>(k_), -1);
  std::vector<int> out;
  out.reserve(assignment_.size());
  int next = 0;
  for (int g : assignment_) {
    if (relabel[g] < 0) relabel[g] = next++;
    out.push_back(relabel[g]);
  }
  return out;
}

bool Partition::same_partition(const Partition& other) const {
  return size() == other.size() && canonical() == other.canonical();
}

Graph load_edge_list(std::istream& in) {
  std::unordered_map<std::string, int> index;
  std::vector<std::string> names;
  std::vector<Edge> edges;
  auto intern = [&](const std::string& tok) {
    auto [it, inserted] = index.try_emplace(tok, static_cast<int>(names.size()));
    if (inserted) names.push_back(tok);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    auto tokens = split_tokens(line);
    if (tokens.size() == 1) {  // isolated node
      intern(tokens[0]);
      continue;
    }
    if (tokens.size() != 2)
      throw ParseError("expected 2 node tokens, found " + std::to_string(tokens.size()), line_no);
    if (tokens[0] == tokens[1])
      throw ValidationError("line " + std::to_string(line_no) + ": self-loop on node " + tokens[0]);
    int u = intern(tokens[0]);
    int v = intern(tokens[1]);
    edges.emplace_back(u, v);
  }
  const int n = static_cast<int>(names.size());
  return Graph(n, edges, std::move(names));
}

Graph load_edge_list_file(const std::string& path) {
  auto in = open_or_throw(path);
  return load_edge_list(in);
}

void write_edge_list(const Graph& graph, std::ostream& out) {
  const auto& names = graph.node_names();
  for (auto [u, v] : graph.edges()) out << names[u] << ' ' << names[v] << '\n';
  for (int i = 0; i < graph.n_nodes(); ++i)
    if (graph.degree(i) == 0) out << names[i] << '\n';
}

LabelTable load_label_table(std::istream& in) {
  LabelTable table;
  std::vector<std::string> labels;
  std::unordered_map<std::string, std::size_t> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    auto tokens = split_tokens(line);
    if (tokens.size() != 2)
      throw ParseError("expected `node label`, found " + std::to_string(tokens.size()) + " tokens",
                       line_no);
    if (!seen.try_emplace(tokens[0], line_no).second)
      throw ParseError("duplicate node " + tokens[0], line_no);
    table.nodes.push_back(tokens[0]);
    labels.push_back(tokens[1]);
  }
  table.partition = Partition::from_labels(labels);
  return table;
}

LabelTable load_label_table_file(const std::string& path) {
  auto in = open_or_throw(path);
  return load_label_table(in);
}

Partition load_labels(std::istream& in, const Graph& graph) {
  const int n = graph.n_nodes();
  std::vector<int> slot(static_cast<std::size_t>(n), -1);
  std::vector<std::string> labels_in_file_order;
  std::unordered_map<std::string, int> node_index;
  for (int i = 0; i < n; ++i) node_index.emplace(graph.node_names()[i], i);

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    auto tokens = split_tokens(line);
    if (tokens.size() != 2)
      throw ParseError("expected `node label`, found " + std::to_string(tokens.size()) + " tokens",
                       line_no);
    auto it = node_index.find(tokens[0]);
    if (it == node_index.end()) throw ParseError("unknown node " + tokens[0], line_no);
    if (slot[it->second] >= 0) throw ParseError("duplicate node " + tokens[0], line_no);
    slot[it->second] = static_cast<int>(labels_in_file_order.size());
    labels_in_file_order.push_back(tokens[1]);
  }
  for (int i = 0; i < n; ++i)
    if (slot[i] < 0) throw ValidationError("incomplete metadata: no label for node " + graph.node_names()[i]);

  // Group indices follow first appearance of each label in the file.
  auto by_file = Partition::from_labels(labels_in_file_order);
  std::vector<int> assignment(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) assignment[i] = by_file[slot[i]];
  return Partition(std::move(assignment), by_file.label_names());
}

Partition load_labels_file(const std::string& path, const Graph& graph) {
  auto in = open_or_throw(path);
  return load_labels(in, graph);
}

void write_labels(const Graph& graph, const Partition& partition, std::ostream& out) {
  if (partition.size() != graph.n_nodes()) throw ValidationError("partition length mismatch");
  const auto& names = graph.node_names();
  const auto& labels = partition.label_names();
  for (int i = 0; i < graph.n_nodes(); ++i) out << names[i] << '\t' << labels[partition[i]] << '\n';
}

Partition align_to(const LabelTable& reference, const LabelTable& other) {
  if (reference.nodes.size() != other.nodes.size())
    throw ValidationError("label tables cover different node counts");
  std::unordered_map<std::string, int> pos;
  for (std::size_t i = 0; i < other.nodes.size(); ++i) pos.emplace(other.nodes[i], static_cast<int>(i));
  std::vector<int> assignment;
  assignment.reserve(reference.nodes.size());
  for (const auto& node : reference.nodes) {
    auto it = pos.find(node);
    if (it == pos.end()) throw ValidationError("node " + node + " missing from second labelling");
    assignment.push_back(other.partition[it->second]);
  }
  return Partition(std::move(assignment), other.partition.label_names());
}

BlockStats block_stats(const Graph& graph, std::span<const int> assignment, int k_groups) {
  if (static_cast<int>(assignment.size()) != graph.n_nodes())
    throw ValidationError("partition length " + std::to_string(assignment.size()) +
                          " does not match graph size " + std::to_string(graph.n_nodes()));
  BlockStats st;
  st.k = k_groups;
  st.n.assign(static_cast<std::size_t>(k_groups), 0);
  st.kappa.assign(static_cast<std::size_t>(k_groups), 0);
  st.m_flat.assign(static_cast<std::size_t>(k_groups) * k_groups, 0);
  st.total_edges = graph.n_edges();
  for (int g : assignment) {
    if (g < 0 || g >= k_groups) throw ValidationError("group index out of range");
    ++st.n[g];
  }
  for (auto [u, v] : graph.edges()) {
    const int r = assignment[u];
    const int s = assignment[v];
    ++st.m_flat[static_cast<std::size_t>(r) * k_groups + s];
    ++st.m_flat[static_cast<std::size_t>(s) * k_groups + r];
    ++st.kappa[r];
    ++st.kappa[s];
  }
  return st;
}

BlockStats block_stats(const Graph& graph, const Partition& partition) {
  return block_stats(graph, partition.assignment(), partition.k_groups());
}

}  // namespace metanet
