#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "thd/core.hpp"
#include "thd/paths.hpp"

namespace thd::sim {

enum class SourceMode { all, list, sample };

struct SourceSelection {
  SourceMode mode = SourceMode::all;
  /// Explicit source ids for SourceMode::list.
  std::vector<std::string> ids;
  /// Sample size and seed for SourceMode::sample.
  std::size_t sample_size = 0;
  std::uint64_t seed = 0;
};

enum class T0Policy {
  fixed,
  /// Each source starts at the earliest start among its incident edges.
  earliest_incident,
};

struct SimulationPlan {
  std::vector<Metric> metrics{Metric::foremost};
  SourceSelection sources;
  T0Policy t0_policy = T0Policy::earliest_incident;
  Tick t0 = 0;
  /// Hop budget for shortest; 0 means |V|.
  std::size_t max_hops = 0;
  std::optional<Tick> horizon;
  bool keep_predecessors = false;

  // Execution settings; they never change the result.
  unsigned parallelism = 1;
  /// Completed sources between checkpoint flushes; 0 flushes only when the
  /// run ends or stops.
  std::size_t checkpoint_interval = 0;
};

/// All label sets computed for one source, in plan metric order.
struct SourceLabels {
  VertexIndex source = 0;
  Tick t0 = 0;
  std::vector<DistanceLabels> labels;

  bool operator==(const SourceLabels&) const = default;
};

struct SourceSummary {
  VertexIndex source = 0;
  Metric metric = Metric::foremost;
  std::size_t reached = 0;
  double ratio = 0;

  bool operator==(const SourceSummary&) const = default;
};

/// Nearest-rank quantiles over every label value of one metric, across all
/// sources. Empty when there are no values.
struct MetricQuantiles {
  Metric metric = Metric::foremost;
  std::size_t samples = 0;
  std::optional<std::int64_t> p50;
  std::optional<std::int64_t> p90;
  std::optional<std::int64_t> p99;

  bool operator==(const MetricQuantiles&) const = default;
};

struct Summary {
  std::vector<SourceSummary> per_source;
  std::vector<MetricQuantiles> quantiles;

  bool operator==(const Summary&) const = default;
};

struct Provenance {
  std::string input_digest;
  /// Canonical JSON of the result-relevant plan fields.
  std::string plan;
  std::string tool_version;

  bool operator==(const Provenance&) const = default;
};

struct DiffusionResult {
  std::size_t vertex_count = 0;
  std::vector<Metric> metrics;
  /// Ordered by source index (== source id order).
  std::vector<SourceLabels> sources;
  Summary summary;
  Provenance provenance;

  bool operator==(const DiffusionResult&) const = default;
};

std::string_view tool_version() noexcept;

/// Validates the plan against `h` and returns the planned sources in
/// ascending order. Throws PlanInvalid.
std::vector<VertexIndex> planned_sources(const Hypergraph& h, const SimulationPlan& plan);

Tick source_t0(const Hypergraph& h, const SimulationPlan& plan, VertexIndex source);

std::string plan_json(const SimulationPlan& plan);
std::string plan_digest(const SimulationPlan& plan);

/// Value at nearest rank ceil(p * n) of an ascending sample.
std::optional<std::int64_t> nearest_rank(const std::vector<std::int64_t>& sorted, double p);

Summary aggregate(std::size_t vertex_count, const std::vector<Metric>& metrics,
                  const std::vector<SourceLabels>& sources);

struct CheckpointState {
  std::string input_digest;
  std::string plan_digest;
  std::vector<SourceLabels> completed;
};

/// Atomic: writes a sibling temp file and renames it over `path`.
void checkpoint_write(const std::filesystem::path& path, const Hypergraph& h,
                      const CheckpointState& state);
/// Throws CorruptCheckpoint when the file is empty, truncated or its
/// content digest does not match.
CheckpointState checkpoint_load(const std::filesystem::path& path, const Hypergraph& h);

struct RunControl {
  std::optional<std::filesystem::path> checkpoint;
  /// Stop after computing this many sources in this invocation (0: never).
  std::size_t stop_after = 0;
};

struct RunOutcome {
  /// Absent when the run stopped before every planned source completed.
  std::optional<DiffusionResult> result;
  std::size_t computed = 0;
  std::size_t resumed = 0;
};

/// Runs every planned source on a pool of `plan.parallelism` workers and
/// merges in source order. Throws PlanInvalid, CheckpointMismatch,
/// CorruptCheckpoint.
RunOutcome run(const Hypergraph& h, const SimulationPlan& plan, const RunControl& control = {});

/// Labels for one source under `plan`.
SourceLabels compute_source(const Hypergraph& h, const SimulationPlan& plan, VertexIndex source);

}  // namespace thd::sim
