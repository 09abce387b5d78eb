#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "thd/core.hpp"
#include "thd/paths.hpp"

namespace thd::oracle {

/// `all` enumerates every feasible walk (vertices and edges may repeat);
/// `simple` skips walks that revisit a vertex. All three minima are attained
/// by simple walks, so both spaces yield the same distances.
enum class WalkSpace { all, simple };

/// Calls `visit` for every feasible walk from (source, t0) with at most
/// `max_hops` hops, depth-first, children ordered by (edge id, via-vertex id).
/// The empty walk comes first. A hop never re-selects the vertex it leaves.
void for_each_walk(const Hypergraph& h, VertexIndex source, Tick t0, std::size_t max_hops,
                   const std::function<void(const TemporalWalk&)>& visit,
                   WalkSpace space = WalkSpace::all);

std::vector<TemporalWalk> enumerate_walks(const Hypergraph& h, VertexIndex source, Tick t0,
                                          std::size_t max_hops,
                                          WalkSpace space = WalkSpace::all);

/// Smallest duration of `walk` over all departures >= t0 at which its hop
/// sequence is still feasible, together with the re-timed walk.
TemporalWalk fastest_retiming(const Hypergraph& h, const TemporalWalk& walk, Tick t0);

struct OracleResult {
  std::vector<std::optional<Tick>> foremost;
  std::vector<std::optional<std::int64_t>> hops;
  std::vector<std::optional<Duration>> duration;
  std::vector<std::optional<TemporalWalk>> foremost_witness;
  std::vector<std::optional<TemporalWalk>> hops_witness;
  std::vector<std::optional<TemporalWalk>> duration_witness;
  std::size_t walks = 0;

  const std::vector<std::optional<std::int64_t>>& values(Metric metric) const;
  const std::vector<std::optional<TemporalWalk>>& witnesses(Metric metric) const;
};

OracleResult oracle_distances(const Hypergraph& h, VertexIndex source, Tick t0,
                              std::size_t max_hops, WalkSpace space = WalkSpace::all);

}  // namespace thd::oracle

namespace thd::oracle {

/// Outcome of comparing the label algorithms against walk enumeration.
struct DifferentialReport {
  std::size_t graphs = 0;
  std::size_t runs = 0;         // (source, t0) pairs
  std::size_t comparisons = 0;  // (source, t0, metric, vertex) label comparisons
  std::size_t witnesses = 0;    // reconstructed walks checked
  std::vector<std::string> mismatches;
  std::vector<std::string> witness_violations;

  bool clean() const noexcept { return mismatches.empty() && witness_violations.empty(); }
};

/// Runs foremost, shortest (unbounded) and fastest from every source at
/// every t0 in `departures`, compares each label with the oracle and checks
/// every reconstructed walk for feasibility and exact value. Results are
/// accumulated into `report`.
void differential_check(const Hypergraph& h, const std::vector<Tick>& departures,
                        DifferentialReport& report, WalkSpace space = WalkSpace::simple);

}  // namespace thd::oracle
