#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "thd/core.hpp"

namespace thd {

enum class Metric { foremost, shortest, fastest };

std::string_view to_string(Metric metric) noexcept;
std::optional<Metric> parse_metric(std::string_view name) noexcept;

struct Hop {
  EdgeIndex edge = 0;
  /// Vertex the walk moves to across `edge`.
  VertexIndex via = 0;

  bool operator==(const Hop&) const = default;
};

/// A walk leaving `source` at `departure`. Hop i boards its edge no later
/// than the edge's end and arrives at max(previous arrival, start(edge)).
struct TemporalWalk {
  VertexIndex source = 0;
  Tick departure = 0;
  std::vector<Hop> hops;
  std::vector<Tick> arrivals;

  std::size_t hop_count() const noexcept { return hops.size(); }
  Tick final_arrival() const noexcept { return arrivals.empty() ? departure : arrivals.back(); }
  Duration duration() const noexcept { return final_arrival() - departure; }

  bool operator==(const TemporalWalk&) const = default;
};

/// Arrival times of `hops` when leaving `source` at `departure`, or nullopt
/// if the hop sequence is not a feasible walk at that departure.
std::optional<std::vector<Tick>> replay(const Hypergraph& h, VertexIndex source, Tick departure,
                                        const std::vector<Hop>& hops);

/// Returns a description of the first violated walk invariant, or nullopt
/// when the walk is feasible, properly chained and its arrivals are exact.
std::optional<std::string> walk_violation(const Hypergraph& h, const TemporalWalk& walk);

/// Label value a walk attains under `metric`.
std::int64_t walk_value(const TemporalWalk& walk, Metric metric) noexcept;

/// Dense vertex -> label map. Unreached vertices are absent.
class LabelMap {
 public:
  LabelMap() = default;
  explicit LabelMap(std::size_t universe) : slots_(universe) {}

  std::size_t universe() const noexcept { return slots_.size(); }
  std::size_t reached() const noexcept { return reached_; }

  bool contains(VertexIndex v) const { return v < slots_.size() && slots_[v].has_value(); }
  std::optional<std::int64_t> find(VertexIndex v) const {
    return v < slots_.size() ? slots_[v] : std::nullopt;
  }
  /// Throws Unreached.
  std::int64_t at(VertexIndex v) const;

  void set(VertexIndex v, std::int64_t value);

  /// Reached (vertex, label) pairs in ascending vertex order.
  std::vector<std::pair<VertexIndex, std::int64_t>> entries() const;

  bool operator==(const LabelMap&) const = default;

 private:
  std::vector<std::optional<std::int64_t>> slots_;
  std::size_t reached_ = 0;
};

/// One node of a predecessor forest. Roots (no edge, no parent) sit at the
/// source at the departure time; every other node records the edge taken
/// into `vertex`, the node it came from and the arrival time.
struct TraceStep {
  VertexIndex vertex = 0;
  std::optional<EdgeIndex> edge;
  std::optional<std::uint32_t> parent;
  Tick arrival = 0;

  bool operator==(const TraceStep&) const = default;
};

struct Predecessor {
  EdgeIndex edge = 0;
  VertexIndex prior = 0;

  bool operator==(const Predecessor&) const = default;
};

struct DistanceLabels {
  VertexIndex source = 0;
  Tick t0 = 0;
  Metric metric = Metric::foremost;
  /// Tick for foremost, hop count for shortest, Duration for fastest.
  LabelMap values;
  /// Predecessor forest; empty when predecessors were dropped.
  std::vector<TraceStep> trace;
  /// vertex -> trace node that ends the witness walk of its label
  std::vector<std::optional<std::uint32_t>> walk_end;

  bool has_trace() const noexcept { return !walk_end.empty(); }
  void drop_trace();
  std::optional<Predecessor> predecessor(VertexIndex v) const;

  bool operator==(const DistanceLabels&) const = default;
};

/// Earliest arrival from (source, t0). Label-setting: vertices are settled
/// in arrival order and each edge is relaxed once, from the first settled
/// participant that can board it. Edges starting after `horizon` are unusable.
DistanceLabels foremost(const Hypergraph& h, VertexIndex source, Tick t0,
                        std::optional<Tick> horizon = std::nullopt);

/// Minimum hop count from (source, t0), considering walks of at most
/// `max_hops` hops. Throws NonPositiveMaxHops when max_hops == 0.
DistanceLabels shortest(const Hypergraph& h, VertexIndex source, Tick t0, std::size_t max_hops,
                        std::optional<Tick> horizon = std::nullopt);

/// Minimum duration over walks departing at any time >= t0.
DistanceLabels fastest(const Hypergraph& h, VertexIndex source, Tick t0,
                       std::optional<Tick> horizon = std::nullopt);

/// Dispatches on `metric`; `max_hops` is only used by shortest, where 0
/// means "unbounded" (|V| layers).
DistanceLabels compute_labels(const Hypergraph& h, Metric metric, VertexIndex source, Tick t0,
                              std::size_t max_hops = 0,
                              std::optional<Tick> horizon = std::nullopt);

/// Earliest arrival layers: result[k][v] is the earliest arrival at v using
/// at most k hops. Stops once a layer repeats the previous one or after
/// `max_layers` layers.
std::vector<std::vector<std::optional<Tick>>> arrival_layers(
    const Hypergraph& h, VertexIndex source, Tick t0, std::size_t max_layers,
    std::optional<Tick> horizon = std::nullopt);

/// Replays the predecessor forest into the walk witnessing labels.values[target].
/// Throws Unreached when the target has no label, PlanInvalid when the
/// labels carry no trace.
TemporalWalk reconstruct_walk(const Hypergraph& h, const DistanceLabels& labels,
                              VertexIndex target);

}  // namespace thd
