#include "swnet/graph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "swnet/errors.hpp"
#include "swnet/parallel.hpp"

namespace swnet {

Graph::Graph(Node n) {
  if (n < 0) throw InvalidParams("node count must be non-negative");
  adj_.resize(static_cast<std::size_t>(n));
}

Graph Graph::from_edges(Node n, std::span<const Edge> edges) {
  Graph g(n);
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v >= n) {
      throw InvalidParams("edge (" + std::to_string(e.u) + "," +
                          std::to_string(e.v) + ") out of range");
    }
    if (e.u == e.v) throw InvalidParams("self-loop at node " + std::to_string(e.u));
    g.adj_[e.u].push_back(e.v);
    g.adj_[e.v].push_back(e.u);
  }
  for (auto& nbrs : g.adj_) {
    std::sort(nbrs.begin(), nbrs.end());
    if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end()) {
      throw InvalidParams("duplicate edge in edge list");
    }
  }
  g.num_edges_ = edges.size();
  return g;
}

Node Graph::check(Node u) const {
  if (u < 0 || u >= num_nodes()) {
    throw InvalidNode("node " + std::to_string(u) + " out of range [0," +
                      std::to_string(num_nodes()) + ")");
  }
  return u;
}

bool Graph::has_edge(Node u, Node v) const {
  const auto& a = adj_[check(u)];
  const auto& b = adj_[check(v)];
  // Search the shorter list.
  return a.size() <= b.size() ? std::binary_search(a.begin(), a.end(), v)
                              : std::binary_search(b.begin(), b.end(), u);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for (Node u = 0; u < num_nodes(); ++u) {
    for (Node v : adj_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

void Graph::add_edge(Node u, Node v) {
  check(u);
  check(v);
  if (u == v) throw InvalidParams("self-loop at node " + std::to_string(u));
  auto& a = adj_[u];
  auto it = std::lower_bound(a.begin(), a.end(), v);
  if (it != a.end() && *it == v) {
    throw InvalidParams("edge (" + std::to_string(u) + "," + std::to_string(v) +
                        ") already present");
  }
  a.insert(it, v);
  auto& b = adj_[v];
  b.insert(std::lower_bound(b.begin(), b.end(), u), u);
  ++num_edges_;
}

void Graph::remove_edge(Node u, Node v) {
  check(u);
  check(v);
  auto& a = adj_[u];
  auto it = std::lower_bound(a.begin(), a.end(), v);
  if (it == a.end() || *it != v) {
    throw NotAnEdge("(" + std::to_string(u) + "," + std::to_string(v) +
                    ") is not an edge");
  }
  a.erase(it);
  auto& b = adj_[v];
  b.erase(std::lower_bound(b.begin(), b.end(), u));
  --num_edges_;
}

namespace {

using Mask = std::uint64_t;
constexpr std::size_t kBatch = 64;

struct BatchResult {
  std::int64_t distance_sum = 0;
  std::int32_t eccentricity = 0;
  bool complete = true;
};

struct BfsBuffers {
  std::vector<Mask> visited, frontier, next;

  explicit BfsBuffers(std::size_t n) : visited(n), frontier(n), next(n) {}
};

// Level-synchronous BFS from up to 64 sources at once; bit b of a node's mask
// tracks source b. Each level is one pull sweep over the adjacency lists.
BatchResult bfs_batch(const Graph& g, std::span<const Node> sources,
                      BfsBuffers& buf) {
  const auto n = static_cast<std::size_t>(g.num_nodes());
  std::fill(buf.visited.begin(), buf.visited.end(), Mask{0});
  std::fill(buf.frontier.begin(), buf.frontier.end(), Mask{0});
  for (std::size_t b = 0; b < sources.size(); ++b) {
    buf.visited[sources[b]] |= Mask{1} << b;
    buf.frontier[sources[b]] |= Mask{1} << b;
  }
  const Mask full =
      sources.size() == kBatch ? ~Mask{0} : (Mask{1} << sources.size()) - 1;

  BatchResult result;
  for (std::int32_t level = 1;; ++level) {
    bool advanced = false;
    for (std::size_t v = 0; v < n; ++v) {
      const Mask seen = buf.visited[v];
      if (seen == full) {
        buf.next[v] = 0;
        continue;
      }
      Mask reach = 0;
      for (Node u : g.neighbors(static_cast<Node>(v))) reach |= buf.frontier[u];
      const Mask fresh = reach & ~seen;
      buf.next[v] = fresh;
      if (fresh) {
        buf.visited[v] = seen | fresh;
        result.distance_sum += static_cast<std::int64_t>(level) * std::popcount(fresh);
        advanced = true;
      }
    }
    if (!advanced) {
      result.eccentricity = level - 1;
      break;
    }
    std::swap(buf.frontier, buf.next);
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (buf.visited[v] != full) {
      result.complete = false;
      break;
    }
  }
  return result;
}

std::vector<BatchResult> run_batches(const Graph& g, std::span<const Node> sources,
                                     int workers) {
  const std::size_t batches = (sources.size() + kBatch - 1) / kBatch;
  std::vector<BatchResult> results(batches);
  const auto n = static_cast<std::size_t>(g.num_nodes());
  if (workers <= 1 || batches <= 1) {
    BfsBuffers buf(n);
    for (std::size_t b = 0; b < batches; ++b) {
      results[b] = bfs_batch(g, sources.subspan(b * kBatch, std::min(kBatch, sources.size() - b * kBatch)), buf);
    }
    return results;
  }
  // One buffer set per batch chunk of workers; chunking keeps memory bounded.
  const std::size_t chunks = static_cast<std::size_t>(workers);
  parallel_for(chunks, workers, [&](std::size_t c) {
    BfsBuffers buf(n);
    for (std::size_t b = c; b < batches; b += chunks) {
      results[b] = bfs_batch(
          g, sources.subspan(b * kBatch, std::min(kBatch, sources.size() - b * kBatch)), buf);
    }
  });
  return results;
}

PathStats summarize(const Graph& g, std::span<const Node> sources,
                    std::span<const BatchResult> results) {
  PathStats stats;
  std::int64_t total = 0;
  for (const auto& r : results) {
    if (!r.complete) throw DisconnectedGraph("graph is not connected");
    total += r.distance_sum;
    stats.diameter = std::max(stats.diameter, r.eccentricity);
  }
  const auto n = static_cast<std::uint64_t>(g.num_nodes());
  stats.reachable_pairs = static_cast<std::uint64_t>(sources.size()) * (n - 1);
  if (stats.reachable_pairs > 0) {
    stats.apl = static_cast<double>(total) / static_cast<double>(stats.reachable_pairs);
  }
  return stats;
}

}  // namespace

PathStats average_path_length(const Graph& g, int workers) {
  if (g.num_nodes() < 2) return {};
  std::vector<Node> sources(static_cast<std::size_t>(g.num_nodes()));
  for (Node i = 0; i < g.num_nodes(); ++i) sources[i] = i;
  const auto results = run_batches(g, sources, workers);
  return summarize(g, sources, results);
}

PathStats sampled_average_path_length(const Graph& g, std::span<const Node> sources) {
  if (g.num_nodes() < 2 || sources.empty()) return {};
  const auto results = run_batches(g, sources, 1);
  return summarize(g, sources, results);
}

std::int64_t distance_sum(const Graph& g, std::span<const Node> sources) {
  const auto results = run_batches(g, sources, 1);
  std::int64_t total = 0;
  for (const auto& r : results) {
    if (!r.complete) return -1;
    total += r.distance_sum;
  }
  return total;
}

std::size_t count_common_neighbors(const Graph& g, Node u, Node v) {
  auto a = g.neighbors(u);
  auto b = g.neighbors(v);
  std::size_t count = 0;
  auto i = a.begin(), j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

bool have_common_neighbor(const Graph& g, Node u, Node v) {
  auto a = g.neighbors(u);
  auto b = g.neighbors(v);
  auto i = a.begin(), j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

std::vector<Node> common_neighbors(const Graph& g, Node u, Node v) {
  if (u == v) throw InvalidNode("common_neighbors requires distinct nodes");
  auto a = g.neighbors(u);
  auto b = g.neighbors(v);
  std::vector<Node> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool edge_in_triangle(const Graph& g, Node u, Node v) {
  if (!g.has_edge(u, v)) {
    throw NotAnEdge("(" + std::to_string(u) + "," + std::to_string(v) +
                    ") is not an edge");
  }
  return have_common_neighbor(g, u, v);
}

std::vector<std::int64_t> triangle_counts(const Graph& g) {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(g.num_nodes()), 0);
  // Each triangle u < v < w is found once from its lowest edge (u, v).
  for (Node u = 0; u < g.num_nodes(); ++u) {
    auto nu = g.neighbors(u);
    for (Node v : nu) {
      if (v <= u) continue;
      auto nv = g.neighbors(v);
      auto i = std::upper_bound(nu.begin(), nu.end(), v);
      auto j = std::upper_bound(nv.begin(), nv.end(), v);
      while (i != nu.end() && j != nv.end()) {
        if (*i < *j) {
          ++i;
        } else if (*j < *i) {
          ++j;
        } else {
          ++counts[u];
          ++counts[v];
          ++counts[*i];
          ++i;
          ++j;
        }
      }
    }
  }
  return counts;
}

double local_clustering(std::int64_t triangles, std::size_t degree) {
  if (degree <= 1) return 0.0;
  const double k = static_cast<double>(degree);
  return 2.0 * static_cast<double>(triangles) / (k * (k - 1.0));
}

ClusteringStats transitivity(const Graph& g) {
  ClusteringStats stats;
  const auto triangles = triangle_counts(g);
  stats.per_node.resize(triangles.size());
  double sum = 0.0;
  for (Node i = 0; i < g.num_nodes(); ++i) {
    stats.per_node[i] = local_clustering(triangles[i], g.degree(i));
    sum += stats.per_node[i];
  }
  if (g.num_nodes() > 0) stats.cc = sum / g.num_nodes();
  return stats;
}

namespace {

// Labels nodes by component; returns the number of components.
std::size_t label_components(const Graph& g, std::vector<std::int32_t>& label) {
  const auto n = static_cast<std::size_t>(g.num_nodes());
  label.assign(n, -1);
  std::vector<Node> queue;
  queue.reserve(n);
  std::int32_t next_label = 0;
  for (Node s = 0; s < g.num_nodes(); ++s) {
    if (label[s] >= 0) continue;
    queue.clear();
    queue.push_back(s);
    label[s] = next_label;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (Node v : g.neighbors(queue[head])) {
        if (label[v] < 0) {
          label[v] = next_label;
          queue.push_back(v);
        }
      }
    }
    ++next_label;
  }
  return static_cast<std::size_t>(next_label);
}

}  // namespace

bool is_connected(const Graph& g) {
  if (g.num_nodes() == 0) return true;
  std::vector<char> seen(static_cast<std::size_t>(g.num_nodes()), 0);
  std::vector<Node> queue;
  queue.reserve(seen.size());
  queue.push_back(0);
  seen[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (Node v : g.neighbors(queue[head])) {
      if (!seen[v]) {
        seen[v] = 1;
        queue.push_back(v);
      }
    }
  }
  return queue.size() == seen.size();
}

std::size_t component_count(const Graph& g) {
  std::vector<std::int32_t> label;
  return label_components(g, label);
}

std::vector<std::size_t> degree_sequence(const Graph& g) {
  std::vector<std::size_t> seq(static_cast<std::size_t>(g.num_nodes()));
  for (Node i = 0; i < g.num_nodes(); ++i) seq[i] = g.degree(i);
  std::sort(seq.begin(), seq.end());
  return seq;
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  auto next_data_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      const auto first = out.find_first_not_of(" \t\r");
      if (first == std::string::npos || out[first] == '#') continue;
      return true;
    }
    return false;
  };

  if (!next_data_line(line)) throw FormatError("edge list: missing header line");
  long long n = -1, m = -1;
  {
    std::istringstream header(line);
    if (!(header >> n >> m) || n < 0 || m < 0) {
      throw FormatError("edge list: malformed header '" + line + "'");
    }
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long e = 0; e < m; ++e) {
    if (!next_data_line(line)) {
      throw FormatError("edge list: expected " + std::to_string(m) + " edges, found " +
                        std::to_string(e));
    }
    std::istringstream row(line);
    long long u = -1, v = -1;
    if (!(row >> u >> v)) throw FormatError("edge list: malformed edge line '" + line + "'");
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw FormatError("edge list: endpoint out of range in '" + line + "'");
    }
    edges.emplace_back(static_cast<Node>(u), static_cast<Node>(v));
  }
  if (next_data_line(line)) throw FormatError("edge list: trailing data after M edges");
  try {
    return Graph::from_edges(static_cast<Node>(n), edges);
  } catch (const InvalidParams& err) {
    throw FormatError(std::string("edge list: ") + err.what());
  }
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.num_nodes() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_edge_list(in);
}

void save_edge_list(const std::string& path, const Graph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  write_edge_list(out, g);
}

}  // namespace swnet
