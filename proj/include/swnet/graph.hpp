#ifndef SWNET_GRAPH_HPP
#define SWNET_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace swnet {

using Node = std::int32_t;

/// Unordered node pair stored with u < v.
struct Edge {
  Node u = 0;
  Node v = 0;

  Edge() = default;
  Edge(Node a, Node b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Undirected simple graph over nodes 0..n-1 with sorted adjacency lists.
///
/// The adjacency lists are the single source of truth; the edge list is
/// derived on demand in canonical (sorted) order. All metric functions take
/// the graph by const reference and are safe to call concurrently.
class Graph {
 public:
  Graph() = default;
  explicit Graph(Node n);

  /// Builds a graph from an edge list. Throws InvalidParams on self-loops,
  /// duplicate edges or out-of-range endpoints.
  static Graph from_edges(Node n, std::span<const Edge> edges);

  Node num_nodes() const { return static_cast<Node>(adj_.size()); }
  std::size_t num_edges() const { return num_edges_; }

  std::span<const Node> neighbors(Node u) const { return adj_[check(u)]; }
  std::size_t degree(Node u) const { return adj_[check(u)].size(); }

  bool has_edge(Node u, Node v) const;

  /// Edges in ascending (u, v) order, u < v.
  std::vector<Edge> edges() const;

  /// In-place mutation used by generators and the tuner's apply/revert loop.
  /// add_edge throws InvalidParams on self-loops or existing edges;
  /// remove_edge throws NotAnEdge when absent.
  void add_edge(Node u, Node v);
  void remove_edge(Node u, Node v);

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  Node check(Node u) const;

  std::vector<std::vector<Node>> adj_;
  std::size_t num_edges_ = 0;
};

struct PathStats {
  double apl = 0.0;
  std::int32_t diameter = 0;
  std::uint64_t reachable_pairs = 0;
};

struct ClusteringStats {
  double cc = 0.0;
  std::vector<double> per_node;
};

/// Exact mean shortest-path length over ordered pairs, from a BFS at every
/// node (64 sources at a time, bit-parallel). Throws DisconnectedGraph if any
/// pair is unreachable. `workers` > 1 splits source batches across threads;
/// the result is identical for any worker count.
PathStats average_path_length(const Graph& g, int workers = 1);

/// Mean over the given source nodes of the mean distance to all other nodes.
/// Equals average_path_length when `sources` covers every node. Throws
/// DisconnectedGraph if some source does not reach every node.
PathStats sampled_average_path_length(const Graph& g,
                                      std::span<const Node> sources);

/// Sum of shortest-path distances from `sources` to every node, or -1 if some
/// source does not reach the whole graph. Used by the annealing loop, where a
/// disconnected candidate is a rejection rather than an error.
std::int64_t distance_sum(const Graph& g, std::span<const Node> sources);

/// Per-node triangle counts E_i.
std::vector<std::int64_t> triangle_counts(const Graph& g);

/// Local clustering c_i = 2 E_i / (k_i (k_i - 1)), zero for k_i <= 1.
double local_clustering(std::int64_t triangles, std::size_t degree);

ClusteringStats transitivity(const Graph& g);

bool is_connected(const Graph& g);
std::size_t component_count(const Graph& g);

/// adj(u) ∩ adj(v), sorted. Throws InvalidNode on out-of-range input or u == v.
std::vector<Node> common_neighbors(const Graph& g, Node u, Node v);

/// True iff adj(u) and adj(v) intersect; no allocation.
bool have_common_neighbor(const Graph& g, Node u, Node v);

/// Number of common neighbors; no allocation.
std::size_t count_common_neighbors(const Graph& g, Node u, Node v);

/// True iff edge (u, v) closes at least one triangle. Throws NotAnEdge.
bool edge_in_triangle(const Graph& g, Node u, Node v);

std::vector<std::size_t> degree_sequence(const Graph& g);

/// Edge-list text format: "N M", then M lines "u v" (u < v), '#' comments.
Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);
Graph load_edge_list(const std::string& path);
void save_edge_list(const std::string& path, const Graph& g);

}  // namespace swnet

#endif  // SWNET_GRAPH_HPP
