#ifndef SWNET_TUNER_HPP
#define SWNET_TUNER_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "swnet/graph.hpp"
#include "swnet/random.hpp"

namespace swnet {

enum class MoveKind { AplSwap, CcDecrease, CcIncrease };

std::string to_string(MoveKind kind);

/// Degree-preserving double edge swap. Both removed and added edges cover the
/// same four endpoints, each endpoint once per side.
struct RewireMove {
  std::array<Edge, 2> removed;
  std::array<Edge, 2> added;
  MoveKind kind = MoveKind::AplSwap;

  RewireMove inverse() const { return {added, removed, kind}; }

  friend bool operator==(const RewireMove&, const RewireMove&) = default;
};

// --- Move construction -----------------------------------------------------
//
// The make_* functions check every precondition of a move on the current
// graph for explicitly chosen nodes and return nullopt when one fails. The
// propose_* functions draw uniformly random candidates and run them through
// the same checks, giving up after `max_attempts` draws (0 means 10 N).

/// Path-length move: remove (i,i1), (j,j1); add (i,j), (i1,j1).
///
/// Valid iff the four nodes are distinct, both removed edges exist and close
/// no triangle, neither added edge exists, and neither added pair has a
/// common neighbour. Under these conditions no triangle is created or
/// destroyed, so every E_i (and the clustering coefficient) is unchanged.
std::optional<RewireMove> make_apl_move(const Graph& g, Node i, Node j, Node i1, Node j1);

/// Clustering-decrease move: remove (i1,i2), (j1,j2); add (i1,j1), (i2,j2),
/// where i1,i2 are adjacent neighbours of i, j1,j2 adjacent neighbours of j,
/// i and j share no neighbour and all six nodes are distinct.
std::optional<RewireMove> make_cc_decrease_move(const Graph& g, Node i, Node j, Node i1,
                                                Node i2, Node j1, Node j2);

/// Clustering-increase move on a chordless six-cycle (i, i1, j1, j, j2, i2):
/// remove (i1,j1), (i2,j2); add (i1,i2), (j1,j2), closing triangles at i and
/// at the antipodal node j.
std::optional<RewireMove> make_cc_increase_move(const Graph& g,
                                                const std::array<Node, 6>& cycle);

std::optional<RewireMove> propose_apl_move(const Graph& g, RandomStream& rng,
                                           std::size_t max_attempts = 0);
/// Like propose_apl_move, but j is the end of a three-step random walk from
/// i, so the added edge (i, j) is short-range and the move tends to lengthen
/// paths.
std::optional<RewireMove> propose_local_apl_move(const Graph& g, RandomStream& rng,
                                                 std::size_t max_attempts = 0);
std::optional<RewireMove> propose_cc_decrease_move(const Graph& g, RandomStream& rng,
                                                   std::size_t max_attempts = 0);
/// Finds six-cycles by random walks i -> i1 -> j1 -> j -> j2 and closing
/// through a random common neighbour i2 of j2 and i.
std::optional<RewireMove> propose_cc_increase_move(const Graph& g, RandomStream& rng,
                                                   std::size_t max_attempts = 0);

/// Returns a copy of g with the move applied. Throws StaleMove if a removed
/// edge is missing or an added edge is already present.
Graph apply_move(const Graph& g, const RewireMove& m);

/// In-place variant; g is left untouched when StaleMove is thrown.
void apply_move_inplace(Graph& g, const RewireMove& m);

/// Metropolis rule: accept downhill moves, uphill with exp(-delta / T).
/// Throws InvalidTemperature unless temperature > 0.
bool metropolis_accept(double delta, double temperature, RandomStream& rng);

/// Incrementally maintained triangle counts and clustering coefficient.
class ClusteringTracker {
 public:
  explicit ClusteringTracker(const Graph& g);

  /// Applies m to g (which must be the tracked graph) and updates E_i for
  /// every node touching a created or destroyed triangle.
  void apply(Graph& g, const RewireMove& m);

  double cc() const;
  std::span<const std::int64_t> triangles() const { return triangles_; }

 private:
  void retally(const Graph& g, Node u, Node v, int sign);
  void refresh(const Graph& g, Node x);

  std::vector<std::int64_t> triangles_;
  std::vector<double> local_;
  double sum_ = 0.0;
  std::vector<Node> touched_;
};

// --- Annealing ---------------------------------------------------------------

enum class Metric { Apl, Cc };

std::string to_string(Metric metric);

struct Objective {
  Metric metric = Metric::Apl;
  double target = 0.0;
};

struct AnnealSchedule {
  /// Initial temperature; unset means 10 x the initial objective value.
  std::optional<double> t0;
  double cooling = 0.95;
  std::size_t epoch_len = 50;  // accepted moves per temperature step
  std::size_t max_iters = 200'000;
  /// Stop with NoProgress once this many iterations pass without a new best
  /// objective value; 0 disables the check.
  std::size_t stall_iters = 25'000;
  double tol = 0.05;
  std::size_t max_propose_attempts = 0;  // 0 means 10 N

  /// Graphs with at least `sampled_min_nodes` nodes score each path-length
  /// move by a paired estimate over `apl_sources` fresh random BFS sources,
  /// re-anchored to the exact value every epoch. The reported value is
  /// always exact.
  std::size_t apl_sources = 64;
  std::size_t sampled_min_nodes = 2000;
  int workers = 1;

  void validate() const;
};

enum class TuneStatus { Converged, NoProgress, TargetsInfeasible };

std::string to_string(TuneStatus status);

struct TracePoint {
  std::size_t iter = 0;
  double metric = 0.0;
  double temperature = 0.0;
  std::size_t accepted = 0;
};

struct RejectionCounts {
  std::size_t no_candidate = 0;
  std::size_t disconnected = 0;
  std::size_t metropolis = 0;
};

struct TuneResult {
  Graph graph;
  Metric metric = Metric::Apl;
  double achieved = 0.0;  // exact metric on `graph`
  TuneStatus status = TuneStatus::Converged;
  std::vector<TracePoint> trace;
  std::size_t iterations = 0;
  std::size_t accepted = 0;
  RejectionCounts rejected;
  std::array<std::size_t, 3> accepted_by_kind{};  // indexed by MoveKind
};

/// Anneals g toward objective.target with degree-preserving moves. For the
/// path length only AplSwap moves are used, drawn by propose_local_apl_move
/// while the value must rise. For the clustering coefficient a CcDecrease
/// move is proposed while the current value is above target and a CcIncrease
/// move otherwise. Disconnecting candidates are rejected before
/// the Metropolis step. Stops when |metric - target| <= tol (status
/// Converged) or when the budget runs out or no candidate exists
/// (NoProgress). The returned graph is the final state, or the best state
/// seen at an epoch boundary if that one is closer to the target.
TuneResult tune(const Graph& g, const Objective& objective, const AnnealSchedule& schedule,
                RandomStream& rng);

struct JointSchedule {
  AnnealSchedule cc = [] {
    AnnealSchedule s;
    s.tol = 0.005;
    return s;
  }();
  AnnealSchedule apl;  // tol 0.05
  std::size_t max_rounds = 6;
  /// A round must shrink the combined objective by this fraction, or the
  /// targets are reported infeasible.
  double min_round_improvement = 0.01;
};

struct JointResult {
  Graph graph;
  double apl = 0.0;
  double cc = 0.0;
  TuneStatus status = TuneStatus::Converged;
  std::size_t rounds = 0;
  std::vector<TracePoint> trace;  // cc stage then apl stage, per round
  std::size_t iterations = 0;
  std::size_t accepted = 0;
};

/// Alternates a clustering stage and a path-length stage. Path-length moves
/// leave every triangle count unchanged, so a round that ends with both
/// stages converged meets both tolerances. Rounds repeat until both targets
/// are met, the round budget runs out (NoProgress), or the combined
/// objective stops shrinking (TargetsInfeasible).
JointResult tune_joint(const Graph& g, double cc_target, double apl_target,
                       const JointSchedule& schedule, RandomStream& rng);

}  // namespace swnet

#endif  // SWNET_TUNER_HPP
