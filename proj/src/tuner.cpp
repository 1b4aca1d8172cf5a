#include "swnet/tuner.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

#include "swnet/errors.hpp"

namespace swnet {

std::string to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::AplSwap: return "apl-swap";
    case MoveKind::CcDecrease: return "cc-decrease";
    case MoveKind::CcIncrease: return "cc-increase";
  }
  return "unknown";
}

std::string to_string(Metric metric) { return metric == Metric::Apl ? "apl" : "cc"; }

std::string to_string(TuneStatus status) {
  switch (status) {
    case TuneStatus::Converged: return "converged";
    case TuneStatus::NoProgress: return "no-progress";
    case TuneStatus::TargetsInfeasible: return "targets-infeasible";
  }
  return "unknown";
}

namespace {

template <std::size_t K>
bool all_distinct(const std::array<Node, K>& nodes) {
  for (std::size_t a = 0; a < K; ++a)
    for (std::size_t b = a + 1; b < K; ++b)
      if (nodes[a] == nodes[b]) return false;
  return true;
}

std::size_t attempt_budget(const Graph& g, std::size_t max_attempts) {
  return max_attempts > 0 ? max_attempts : 10 * static_cast<std::size_t>(g.num_nodes());
}

Node random_node(const Graph& g, RandomStream& rng) {
  return static_cast<Node>(rng.index(static_cast<std::size_t>(g.num_nodes())));
}

Node random_neighbor(const Graph& g, Node u, RandomStream& rng) {
  auto nbrs = g.neighbors(u);
  return nbrs[rng.index(nbrs.size())];
}

// Neighbours w of u whose edge (u, w) closes no triangle.
void open_neighbors(const Graph& g, Node u, std::vector<Node>& out) {
  out.clear();
  for (Node w : g.neighbors(u))
    if (!have_common_neighbor(g, u, w)) out.push_back(w);
}

// Edges among the neighbours of u, i.e. the far sides of u's triangles.
void triangle_edges(const Graph& g, Node u, std::vector<Edge>& out) {
  out.clear();
  auto nbrs = g.neighbors(u);
  for (std::size_t a = 0; a < nbrs.size(); ++a)
    for (std::size_t b = a + 1; b < nbrs.size(); ++b)
      if (g.has_edge(nbrs[a], nbrs[b])) out.emplace_back(nbrs[a], nbrs[b]);
}

void check_applicable(const Graph& g, const RewireMove& m) {
  for (const Edge& e : m.removed) {
    if (!g.has_edge(e.u, e.v)) {
      throw StaleMove("removed edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                      ") is not present");
    }
  }
  for (const Edge& e : m.added) {
    if (e.u == e.v || g.has_edge(e.u, e.v)) {
      throw StaleMove("added edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                      ") is already present or a self-loop");
    }
  }
  if (m.added[0] == m.added[1] || m.removed[0] == m.removed[1]) {
    throw StaleMove("move repeats an edge");
  }
}

}  // namespace

std::optional<RewireMove> make_apl_move(const Graph& g, Node i, Node j, Node i1, Node j1) {
  if (!all_distinct(std::array{i, j, i1, j1})) return std::nullopt;
  if (!g.has_edge(i, i1) || !g.has_edge(j, j1)) return std::nullopt;
  if (g.has_edge(i, j) || g.has_edge(i1, j1)) return std::nullopt;
  if (have_common_neighbor(g, i, j) || have_common_neighbor(g, i1, j1)) return std::nullopt;
  if (have_common_neighbor(g, i, i1) || have_common_neighbor(g, j, j1)) return std::nullopt;
  return RewireMove{{Edge(i, i1), Edge(j, j1)}, {Edge(i, j), Edge(i1, j1)}, MoveKind::AplSwap};
}

std::optional<RewireMove> make_cc_decrease_move(const Graph& g, Node i, Node j, Node i1,
                                                Node i2, Node j1, Node j2) {
  if (!all_distinct(std::array{i, j, i1, i2, j1, j2})) return std::nullopt;
  if (!g.has_edge(i, i1) || !g.has_edge(i, i2) || !g.has_edge(i1, i2)) return std::nullopt;
  if (!g.has_edge(j, j1) || !g.has_edge(j, j2) || !g.has_edge(j1, j2)) return std::nullopt;
  if (have_common_neighbor(g, i, j)) return std::nullopt;
  if (g.has_edge(i1, j1) || g.has_edge(i2, j2)) return std::nullopt;
  return RewireMove{
      {Edge(i1, i2), Edge(j1, j2)}, {Edge(i1, j1), Edge(i2, j2)}, MoveKind::CcDecrease};
}

std::optional<RewireMove> make_cc_increase_move(const Graph& g,
                                                const std::array<Node, 6>& cycle) {
  if (!all_distinct(cycle)) return std::nullopt;
  for (std::size_t a = 0; a < 6; ++a) {
    for (std::size_t b = a + 1; b < 6; ++b) {
      const bool consecutive = (b == a + 1) || (a == 0 && b == 5);
      if (g.has_edge(cycle[a], cycle[b]) != consecutive) return std::nullopt;
    }
  }
  // cycle = (i, i1, j1, j, j2, i2)
  const Node i1 = cycle[1], j1 = cycle[2], j2 = cycle[4], i2 = cycle[5];
  return RewireMove{
      {Edge(i1, j1), Edge(i2, j2)}, {Edge(i1, i2), Edge(j1, j2)}, MoveKind::CcIncrease};
}

std::optional<RewireMove> propose_apl_move(const Graph& g, RandomStream& rng,
                                           std::size_t max_attempts) {
  if (g.num_nodes() < 4) return std::nullopt;
  std::vector<Node> open_i, open_j;
  const std::size_t budget = attempt_budget(g, max_attempts);
  for (std::size_t attempt = 0; attempt < budget; ++attempt) {
    const Node i = random_node(g, rng);
    const Node j = random_node(g, rng);
    if (i == j || g.has_edge(i, j) || have_common_neighbor(g, i, j)) continue;
    open_neighbors(g, i, open_i);
    if (open_i.empty()) continue;
    open_neighbors(g, j, open_j);
    if (open_j.empty()) continue;
    const Node i1 = open_i[rng.index(open_i.size())];
    const Node j1 = open_j[rng.index(open_j.size())];
    if (auto move = make_apl_move(g, i, j, i1, j1)) return move;
  }
  return std::nullopt;
}

std::optional<RewireMove> propose_local_apl_move(const Graph& g, RandomStream& rng,
                                                 std::size_t max_attempts) {
  if (g.num_nodes() < 4) return std::nullopt;
  std::vector<Node> open_i, open_j;
  const std::size_t budget = attempt_budget(g, max_attempts);
  for (std::size_t attempt = 0; attempt < budget; ++attempt) {
    const Node i = random_node(g, rng);
    if (g.degree(i) == 0) continue;
    Node j = i;
    for (int hop = 0; hop < 3; ++hop) j = random_neighbor(g, j, rng);
    if (i == j || g.has_edge(i, j) || have_common_neighbor(g, i, j)) continue;
    open_neighbors(g, i, open_i);
    if (open_i.empty()) continue;
    open_neighbors(g, j, open_j);
    if (open_j.empty()) continue;
    const Node i1 = open_i[rng.index(open_i.size())];
    const Node j1 = open_j[rng.index(open_j.size())];
    if (auto move = make_apl_move(g, i, j, i1, j1)) return move;
  }
  return std::nullopt;
}

std::optional<RewireMove> propose_cc_decrease_move(const Graph& g, RandomStream& rng,
                                                   std::size_t max_attempts) {
  if (g.num_nodes() < 6) return std::nullopt;
  std::vector<Edge> tri_i, tri_j;
  const std::size_t budget = attempt_budget(g, max_attempts);
  for (std::size_t attempt = 0; attempt < budget; ++attempt) {
    const Node i = random_node(g, rng);
    triangle_edges(g, i, tri_i);
    if (tri_i.empty()) continue;
    const Node j = random_node(g, rng);
    if (i == j) continue;
    triangle_edges(g, j, tri_j);
    if (tri_j.empty() || have_common_neighbor(g, i, j)) continue;
    const Edge ei = tri_i[rng.index(tri_i.size())];
    Edge ej = tri_j[rng.index(tri_j.size())];
    // Either pairing of the two removed edges is a candidate.
    Node j1 = ej.u, j2 = ej.v;
    if (rng.index(2) == 1) std::swap(j1, j2);
    if (auto move = make_cc_decrease_move(g, i, j, ei.u, ei.v, j1, j2)) return move;
  }
  return std::nullopt;
}

std::optional<RewireMove> propose_cc_increase_move(const Graph& g, RandomStream& rng,
                                                   std::size_t max_attempts) {
  if (g.num_nodes() < 6) return std::nullopt;
  std::vector<Node> closers;
  const std::size_t budget = attempt_budget(g, max_attempts);
  for (std::size_t attempt = 0; attempt < budget; ++attempt) {
    const Node i = random_node(g, rng);
    if (g.degree(i) < 2) continue;
    const Node i1 = random_neighbor(g, i, rng);
    const Node j1 = random_neighbor(g, i1, rng);
    if (j1 == i) continue;
    const Node j = random_neighbor(g, j1, rng);
    if (j == i1 || j == i) continue;
    const Node j2 = random_neighbor(g, j, rng);
    if (j2 == j1 || j2 == i1 || j2 == i) continue;
    closers.clear();
    for (Node w : common_neighbors(g, j2, i))
      if (w != i1 && w != j1 && w != j) closers.push_back(w);
    if (closers.empty()) continue;
    const Node i2 = closers[rng.index(closers.size())];
    if (auto move = make_cc_increase_move(g, {i, i1, j1, j, j2, i2})) return move;
  }
  return std::nullopt;
}

void apply_move_inplace(Graph& g, const RewireMove& m) {
  check_applicable(g, m);
  for (const Edge& e : m.removed) g.remove_edge(e.u, e.v);
  for (const Edge& e : m.added) g.add_edge(e.u, e.v);
}

Graph apply_move(const Graph& g, const RewireMove& m) {
  Graph out = g;
  apply_move_inplace(out, m);
  return out;
}

bool metropolis_accept(double delta, double temperature, RandomStream& rng) {
  if (!(temperature > 0.0)) {
    throw InvalidTemperature("Metropolis temperature must be positive");
  }
  if (delta <= 0.0) return true;
  return rng.uniform() < std::exp(-delta / temperature);
}

ClusteringTracker::ClusteringTracker(const Graph& g) : triangles_(triangle_counts(g)) {
  local_.resize(triangles_.size());
  for (Node x = 0; x < g.num_nodes(); ++x) {
    local_[x] = local_clustering(triangles_[x], g.degree(x));
    sum_ += local_[x];
  }
}

double ClusteringTracker::cc() const {
  return local_.empty() ? 0.0 : sum_ / static_cast<double>(local_.size());
}

void ClusteringTracker::retally(const Graph& g, Node u, Node v, int sign) {
  auto a = g.neighbors(u);
  auto b = g.neighbors(v);
  auto p = a.begin(), q = b.begin();
  while (p != a.end() && q != b.end()) {
    if (*p < *q) {
      ++p;
    } else if (*q < *p) {
      ++q;
    } else {
      triangles_[u] += sign;
      triangles_[v] += sign;
      triangles_[*p] += sign;
      touched_.push_back(*p);
      ++p;
      ++q;
    }
  }
  touched_.push_back(u);
  touched_.push_back(v);
}

void ClusteringTracker::refresh(const Graph& g, Node x) {
  sum_ -= local_[x];
  local_[x] = local_clustering(triangles_[x], g.degree(x));
  sum_ += local_[x];
}

void ClusteringTracker::apply(Graph& g, const RewireMove& m) {
  check_applicable(g, m);
  touched_.clear();
  for (const Edge& e : m.removed) {
    retally(g, e.u, e.v, -1);
    g.remove_edge(e.u, e.v);
  }
  for (const Edge& e : m.added) {
    g.add_edge(e.u, e.v);
    retally(g, e.u, e.v, +1);
  }
  std::sort(touched_.begin(), touched_.end());
  touched_.erase(std::unique(touched_.begin(), touched_.end()), touched_.end());
  for (Node x : touched_) refresh(g, x);
}

void AnnealSchedule::validate() const {
  if (t0 && !(*t0 > 0.0)) throw InvalidParams("t0 must be positive");
  if (!(cooling > 0.0 && cooling < 1.0)) throw InvalidParams("cooling must lie in (0,1)");
  if (!(tol > 0.0)) throw InvalidParams("tolerance must be positive");
  if (epoch_len == 0) throw InvalidParams("epoch length must be positive");
}

namespace {

void validate_target(Metric metric, double target) {
  if (metric == Metric::Apl && !(target > 0.0)) {
    throw InvalidParams("path-length target must be positive");
  }
  if (metric == Metric::Cc && !(target >= 0.0 && target <= 1.0)) {
    throw InvalidParams("clustering target must lie in [0,1]");
  }
}

// Path-length evaluation. Small graphs are measured exactly after every
// move. Large graphs use a paired estimate of the change: distance sums from
// fresh random sources before and after the move. Fresh sources keep the
// anneal from exploiting a fixed sample.
class PathLengthProbe {
 public:
  PathLengthProbe(const Graph& g, const AnnealSchedule& schedule)
      : n_(g.num_nodes()), workers_(schedule.workers) {
    const auto n = static_cast<std::size_t>(n_);
    sampled_ = n >= schedule.sampled_min_nodes && schedule.apl_sources > 0 &&
               schedule.apl_sources < n;
    if (!sampled_) return;
    pool_.resize(n);
    std::iota(pool_.begin(), pool_.end(), 0);
    sources_.resize(schedule.apl_sources);
  }

  bool sampled() const { return sampled_; }

  std::optional<double> exact(const Graph& g) const {
    try {
      return average_path_length(g, workers_).apl;
    } catch (const DisconnectedGraph&) {
      return std::nullopt;
    }
  }

  // Applies m to g and returns the estimated change in path length, or
  // nullopt (move still applied) if g became disconnected.
  std::optional<double> apply_and_estimate(Graph& g, const RewireMove& m, RandomStream& rng) {
    const std::size_t n = pool_.size();
    for (std::size_t a = 0; a < sources_.size(); ++a) {
      std::swap(pool_[a], pool_[a + rng.index(n - a)]);
      sources_[a] = pool_[a];
    }
    const std::int64_t before = distance_sum(g, sources_);
    apply_move_inplace(g, m);
    const std::int64_t after = distance_sum(g, sources_);
    if (after < 0) return std::nullopt;
    return static_cast<double>(after - before) /
           (static_cast<double>(sources_.size()) * static_cast<double>(n - 1));
  }

 private:
  Node n_;
  int workers_;
  bool sampled_ = false;
  std::vector<Node> pool_;
  std::vector<Node> sources_;
};

double exact_metric(const Graph& g, Metric metric, int workers) {
  return metric == Metric::Apl ? average_path_length(g, workers).apl : transitivity(g).cc;
}

}  // namespace

TuneResult tune(const Graph& g, const Objective& objective, const AnnealSchedule& schedule,
                RandomStream& rng) {
  schedule.validate();
  validate_target(objective.metric, objective.target);
  if (!is_connected(g)) throw DisconnectedGraph("tune requires a connected graph");

  TuneResult result;
  result.metric = objective.metric;
  result.graph = g;
  Graph& work = result.graph;
  const bool apl = objective.metric == Metric::Apl;
  const std::size_t attempts = attempt_budget(g, schedule.max_propose_attempts);
  const double target = objective.target;

  std::optional<PathLengthProbe> probe;
  std::optional<ClusteringTracker> tracker;
  double current = 0.0;
  if (apl) {
    probe.emplace(work, schedule);
    current = *probe->exact(work);
  } else {
    tracker.emplace(work);
    current = tracker->cc();
  }
  const bool estimated = apl && probe->sampled();

  double energy = std::abs(current - target);
  double temperature = schedule.t0.value_or(10.0 * energy);
  std::size_t epoch_accepted = 0;
  double best = energy;
  std::size_t best_iter = 0;
  // Best state seen at an epoch boundary; the initial graph when empty.
  double kept_energy = energy;
  std::optional<Graph> kept;
  result.trace.push_back({0, current, temperature, 0});

  while (result.iterations < schedule.max_iters) {
    if (energy <= schedule.tol) {
      // An estimated value is confirmed exactly before stopping.
      if (!estimated) break;
      current = *probe->exact(work);
      energy = std::abs(current - target);
      if (energy <= schedule.tol) break;
    }
    if (schedule.stall_iters > 0 && result.iterations - best_iter >= schedule.stall_iters) break;
    ++result.iterations;

    std::optional<RewireMove> move;
    if (apl) {
      const bool raise = current < target;
      move = raise ? propose_local_apl_move(work, rng, attempts)
                   : propose_apl_move(work, rng, attempts);
      if (!move && raise) move = propose_apl_move(work, rng, attempts);
    } else {
      const bool decrease = current > target;
      move = decrease ? propose_cc_decrease_move(work, rng, attempts)
                      : propose_cc_increase_move(work, rng, attempts);
      if (!move) {
        move = decrease ? propose_cc_increase_move(work, rng, attempts)
                        : propose_cc_decrease_move(work, rng, attempts);
      }
    }
    if (!move) {
      ++result.rejected.no_candidate;
      break;
    }

    std::optional<double> candidate;
    if (estimated) {
      if (const auto delta = probe->apply_and_estimate(work, *move, rng)) {
        candidate = current + *delta;
      }
    } else if (apl) {
      apply_move_inplace(work, *move);
      candidate = probe->exact(work);
    } else {
      tracker->apply(work, *move);
      // Decrease moves keep a two-path around each removed edge.
      assert(move->kind != MoveKind::CcDecrease || is_connected(work));
      if (move->kind != MoveKind::CcIncrease || is_connected(work)) candidate = tracker->cc();
    }
    auto revert = [&] {
      if (apl) {
        apply_move_inplace(work, move->inverse());
      } else {
        tracker->apply(work, move->inverse());
      }
    };
    if (!candidate) {
      revert();
      ++result.rejected.disconnected;
      continue;
    }

    const double candidate_energy = std::abs(*candidate - target);
    if (!metropolis_accept(candidate_energy - energy, temperature, rng)) {
      revert();
      ++result.rejected.metropolis;
      continue;
    }
    current = *candidate;
    energy = candidate_energy;
    ++result.accepted;
    ++result.accepted_by_kind[static_cast<std::size_t>(move->kind)];
    if (++epoch_accepted == schedule.epoch_len) {
      epoch_accepted = 0;
      temperature *= schedule.cooling;
      if (estimated) {
        current = *probe->exact(work);
        energy = std::abs(current - target);
      }
      result.trace.push_back({result.iterations, current, temperature, result.accepted});
      if (energy < kept_energy) {
        kept_energy = energy;
        kept = work;
      }
    } else if (estimated) {
      continue;
    }
    // Estimated runs only count exact values as progress.
    if (energy < best) {
      best = energy;
      best_iter = result.iterations;
    }
  }

  result.achieved = exact_metric(work, objective.metric, schedule.workers);
  if (std::abs(result.achieved - target) > kept_energy) {
    work = kept ? std::move(*kept) : g;
    result.achieved = exact_metric(work, objective.metric, schedule.workers);
  }
  result.status = std::abs(result.achieved - target) <= schedule.tol ? TuneStatus::Converged
                                                                     : TuneStatus::NoProgress;
  result.trace.push_back({result.iterations, result.achieved, temperature, result.accepted});
  return result;
}

JointResult tune_joint(const Graph& g, double cc_target, double apl_target,
                       const JointSchedule& schedule, RandomStream& rng) {
  validate_target(Metric::Cc, cc_target);
  validate_target(Metric::Apl, apl_target);
  schedule.cc.validate();
  schedule.apl.validate();
  if (!is_connected(g)) throw DisconnectedGraph("tune_joint requires a connected graph");

  JointResult result;
  result.graph = g;
  result.cc = transitivity(g).cc;
  result.apl = average_path_length(g, schedule.apl.workers).apl;

  // Distance to the target pair in units of each tolerance; <= 1 means met.
  auto score = [&] {
    return std::max(std::abs(result.cc - cc_target) / schedule.cc.tol,
                    std::abs(result.apl - apl_target) / schedule.apl.tol);
  };
  auto absorb = [&](const TuneResult& stage) {
    for (TracePoint p : stage.trace) {
      p.iter += result.iterations;
      p.accepted += result.accepted;
      result.trace.push_back(p);
    }
    result.iterations += stage.iterations;
    result.accepted += stage.accepted;
  };

  double previous = score();
  if (previous <= 1.0) return result;

  // Later stages resume at the temperature the previous stage of that metric ended at.
  AnnealSchedule cc_stage = schedule.cc, apl_stage = schedule.apl;
  auto resume = [](AnnealSchedule& next, const AnnealSchedule& base, const TuneResult& stage) {
    if (!base.t0 && stage.trace.back().temperature > 0.0) next.t0 = stage.trace.back().temperature;
  };

  for (result.rounds = 1; result.rounds <= schedule.max_rounds; ++result.rounds) {
    if (std::abs(result.cc - cc_target) > schedule.cc.tol) {
      TuneResult stage = tune(result.graph, {Metric::Cc, cc_target}, cc_stage, rng);
      resume(cc_stage, schedule.cc, stage);
      absorb(stage);
      result.graph = std::move(stage.graph);
      result.cc = stage.achieved;
      result.apl = average_path_length(result.graph, schedule.apl.workers).apl;
    }
    if (std::abs(result.apl - apl_target) > schedule.apl.tol) {
      TuneResult stage = tune(result.graph, {Metric::Apl, apl_target}, apl_stage, rng);
      resume(apl_stage, schedule.apl, stage);
      absorb(stage);
      result.graph = std::move(stage.graph);
      result.apl = stage.achieved;
      result.cc = transitivity(result.graph).cc;
    }
    const double now = score();
    if (now <= 1.0) {
      result.status = TuneStatus::Converged;
      return result;
    }
    if (now > previous * (1.0 - schedule.min_round_improvement)) {
      result.status = TuneStatus::TargetsInfeasible;
      return result;
    }
    previous = now;
  }
  result.rounds = schedule.max_rounds;
  result.status = TuneStatus::NoProgress;
  return result;
}

}  // namespace swnet
