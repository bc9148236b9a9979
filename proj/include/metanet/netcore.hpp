#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace metanet {

using Edge = std::pair<int, int>;

/// Immutable simple undirected graph with dense node indices.
///
/// Node indices follow first appearance in the source; edges are stored with
/// `first < second` in insertion order. No self-loops, no duplicate edges.
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list over nodes 0..n_nodes-1. Duplicate edges
  /// collapse; self-loops and out-of-range endpoints throw ValidationError.
  Graph(int n_nodes, std::span<const Edge> edges, std::vector<std::string> node_names = {});

  int n_nodes() const noexcept { return static_cast<int>(degree_.size()); }
  std::int64_t n_edges() const noexcept { return static_cast<std::int64_t>(edges_.size()); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  int degree(int i) const { return degree_[i]; }
  const std::vector<int>& degrees() const noexcept { return degree_; }
  std::span<const int> neighbors(int i) const;
  const std::vector<std::string>& node_names() const noexcept { return names_; }
  /// Dense index of `name`, or -1.
  int index_of(std::string_view name) const;
  bool has_edge(int i, int j) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<Edge> edges_;
  std::vector<int> degree_;
  std::vector<int> adj_offset_;
  std::vector<int> adj_;
  std::vector<std::string> names_;
};

/// Assignment of every node to one of K non-empty groups.
///
/// Construction compacts group indices: the used indices are renumbered to
/// 0..K-1 preserving their relative order.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> assignment, std::vector<std::string> label_names = {});

  /// Groups indexed by first appearance of each label string.
  static Partition from_labels(std::span<const std::string> labels);

  int size() const noexcept { return static_cast<int>(assignment_.size()); }
  int k_groups() const noexcept { return k_; }
  int operator[](int i) const { return assignment_[i]; }
  const std::vector<int>& assignment() const noexcept { return assignment_; }
  const std::vector<std::string>& label_names() const noexcept { return label_names_; }
  std::vector<int> group_sizes() const;

  /// Canonical restricted-growth form: groups renumbered by first member.
  std::vector<int> canonical() const;
  /// True when both describe the same set partition (labels ignored).
  bool same_partition(const Partition& other) const;

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.assignment_ == b.assignment_;
  }

 private:
  std::vector<int> assignment_;
  std::vector<std::string> label_names_;
  int k_ = 0;
};

/// Sufficient statistics of a (graph, partition) pair.
///
/// `m(r, s)` counts ordered endpoint pairs: a within-group edge adds 2 to
/// m(r, r), a cross edge adds 1 to both m(r, s) and m(s, r).
struct BlockStats {
  int k = 0;
  std::vector<std::int64_t> n;
  std::vector<std::int64_t> m_flat;
  std::vector<std::int64_t> kappa;
  std::int64_t total_edges = 0;

  std::int64_t m(int r, int s) const { return m_flat[static_cast<std::size_t>(r) * k + s]; }

  friend bool operator==(const BlockStats&, const BlockStats&) = default;
};

/// Edge-list text: one `u v` pair per line, a lone `u` declares an isolated node,
/// `#` comment lines and blank lines are ignored.
Graph load_edge_list(std::istream& in);
Graph load_edge_list_file(const std::string& path);
void write_edge_list(const Graph& graph, std::ostream& out);

/// Label text for the nodes of `graph`: one `node label` pair per line.
/// Every node must appear exactly once.
Partition load_labels(std::istream& in, const Graph& graph);
Partition load_labels_file(const std::string& path, const Graph& graph);
void write_labels(const Graph& graph, const Partition& partition, std::ostream& out);

/// Named labelling without a graph; node order is first appearance.
struct LabelTable {
  std::vector<std::string> nodes;
  Partition partition;
};
LabelTable load_label_table(std::istream& in);
LabelTable load_label_table_file(const std::string& path);
/// Reorders `other` to the node order of `reference`; node sets must match.
Partition align_to(const LabelTable& reference, const LabelTable& other);

BlockStats block_stats(const Graph& graph, const Partition& partition);
/// Same as above for a raw assignment with a fixed number of groups; empty groups allowed.
BlockStats block_stats(const Graph& graph, std::span<const int> assignment, int k_groups);

}  // namespace metanet
