#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "thd/error.hpp"

namespace thd {

/// Unit-agnostic time. Calendar input is converted to milliseconds since
/// the Unix epoch; raw integer ticks pass through untouched.
using Tick = std::int64_t;
using Duration = std::int64_t;

using VertexIndex = std::uint32_t;
using EdgeIndex = std::uint32_t;

/// Accepted ticks lie in [-kTickLimit, kTickLimit], so the difference of any
/// two ticks fits in a Duration.
inline constexpr Tick kTickLimit = Tick{1} << 62;

/// A code review: the developers it connects and the interval during which
/// information can flow across it.
struct TemporalHyperedge {
  std::string id;
  std::vector<std::string> participants;
  Tick start = 0;
  Tick end = 0;

  bool operator==(const TemporalHyperedge&) const = default;
};

/// Immutable time-varying hypergraph.
///
/// Vertex ids are interned to dense indices in lexicographic order, so index
/// order and id order coincide. Participants of an edge are stored ascending
/// by vertex index. The incidence list of every vertex is sorted by edge start,
/// ties broken by edge id.
class Hypergraph {
 public:
  Hypergraph() = default;

  std::size_t vertex_count() const noexcept { return vertex_ids_.size(); }
  std::size_t edge_count() const noexcept { return edge_ids_.size(); }

  const std::string& vertex_id(VertexIndex v) const { return vertex_ids_.at(v); }
  std::optional<VertexIndex> find_vertex(std::string_view id) const;
  /// Throws UnknownVertex.
  VertexIndex vertex(std::string_view id) const;
  /// Throws UnknownVertex when `v` is out of range; returns `v` otherwise.
  VertexIndex checked(VertexIndex v) const;

  const std::string& edge_id(EdgeIndex e) const { return edge_ids_.at(e); }
  std::optional<EdgeIndex> find_edge(std::string_view id) const;
  Tick start(EdgeIndex e) const { return starts_[e]; }
  Tick end(EdgeIndex e) const { return ends_[e]; }
  std::span<const VertexIndex> participants(EdgeIndex e) const;
  bool has_participant(EdgeIndex e, VertexIndex v) const;

  /// Position of the edge in lexicographic id order; used for tie-breaks.
  std::uint32_t edge_rank(EdgeIndex e) const { return edge_rank_[e]; }

  std::span<const EdgeIndex> incidence(VertexIndex v) const;

  TemporalHyperedge edge_record(EdgeIndex e) const;
  /// Edge records in construction order.
  std::vector<TemporalHyperedge> edge_records() const;

  bool operator==(const Hypergraph&) const = default;

 private:
  friend Hypergraph build_hypergraph(std::span<const TemporalHyperedge> records);

  std::vector<std::string> vertex_ids_;
  std::vector<std::string> edge_ids_;
  std::vector<Tick> starts_;
  std::vector<Tick> ends_;
  std::vector<std::uint32_t> edge_rank_;
  std::vector<EdgeIndex> edges_by_id_;
  std::vector<std::size_t> participant_offsets_{0};
  std::vector<VertexIndex> participant_data_;
  std::vector<std::size_t> incidence_offsets_{0};
  std::vector<EdgeIndex> incidence_data_;
};

/// Checks one record against the hyperedge invariants; throws Error with
/// the matching code (TooFewParticipants, InvalidInterval, ...).
void validate_edge(const TemporalHyperedge& edge);

/// Builds the hypergraph. Errors: DuplicateEdgeId, InvalidInterval,
/// TooFewParticipants, DuplicateParticipant, InvalidId, TickOutOfRange.
/// Record errors are reported as RecordError carrying the record index.
Hypergraph build_hypergraph(std::span<const TemporalHyperedge> records);

/// Incident edges of `v` whose interval has not closed before `not_before`,
/// in ascending start order.
std::vector<EdgeIndex> incident_edges(const Hypergraph& h, VertexIndex v, Tick not_before);
std::vector<EdgeIndex> incident_edges(const Hypergraph& h, std::string_view v, Tick not_before);

struct NetworkStats {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  /// participant count -> number of edges with that many participants
  std::map<std::size_t, std::size_t> participant_histogram;
  /// [earliest start, latest end]; empty for a graph without edges.
  std::optional<std::pair<Tick, Tick>> span;

  bool operator==(const NetworkStats&) const = default;
};

NetworkStats stats(const Hypergraph& h);

}  // namespace thd
