#include "thd/core.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace thd {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DuplicateEdgeId: return "DuplicateEdgeId";
    case ErrorCode::InvalidInterval: return "InvalidInterval";
    case ErrorCode::TooFewParticipants: return "TooFewParticipants";
    case ErrorCode::DuplicateParticipant: return "DuplicateParticipant";
    case ErrorCode::InvalidId: return "InvalidId";
    case ErrorCode::TickOutOfRange: return "TickOutOfRange";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::NonPositiveMaxHops: return "NonPositiveMaxHops";
    case ErrorCode::Unreached: return "Unreached";
    case ErrorCode::PlanInvalid: return "PlanInvalid";
    case ErrorCode::CheckpointMismatch: return "CheckpointMismatch";
    case ErrorCode::CorruptCheckpoint: return "CorruptCheckpoint";
    case ErrorCode::ParamsInvalid: return "ParamsInvalid";
    case ErrorCode::MalformedJson: return "MalformedJson";
    case ErrorCode::MixedTimeEncodings: return "MixedTimeEncodings";
    case ErrorCode::RecordInvalid: return "RecordInvalid";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

RecordError::RecordError(std::size_t index, const std::string& reason, ErrorCode code)
    : Error(code, "record " + std::to_string(index) + ": " + reason),
      index_(index),
      reason_(reason) {}

std::optional<VertexIndex> Hypergraph::find_vertex(std::string_view id) const {
  auto it = std::lower_bound(vertex_ids_.begin(), vertex_ids_.end(), id);
  if (it == vertex_ids_.end() || *it != id) return std::nullopt;
  return static_cast<VertexIndex>(it - vertex_ids_.begin());
}

VertexIndex Hypergraph::vertex(std::string_view id) const {
  if (auto v = find_vertex(id)) return *v;
  throw Error(ErrorCode::UnknownVertex, "no vertex '" + std::string(id) + "'");
}

VertexIndex Hypergraph::checked(VertexIndex v) const {
  if (v >= vertex_count()) {
    throw Error(ErrorCode::UnknownVertex, "vertex index " + std::to_string(v) + " out of range");
  }
  return v;
}

std::optional<EdgeIndex> Hypergraph::find_edge(std::string_view id) const {
  auto it = std::lower_bound(edges_by_id_.begin(), edges_by_id_.end(), id,
                             [&](EdgeIndex e, std::string_view key) { return edge_ids_[e] < key; });
  if (it == edges_by_id_.end() || edge_ids_[*it] != id) return std::nullopt;
  return *it;
}

std::span<const VertexIndex> Hypergraph::participants(EdgeIndex e) const {
  return {participant_data_.data() + participant_offsets_[e],
          participant_offsets_[e + 1] - participant_offsets_[e]};
}

bool Hypergraph::has_participant(EdgeIndex e, VertexIndex v) const {
  auto p = participants(e);
  return std::binary_search(p.begin(), p.end(), v);
}

std::span<const EdgeIndex> Hypergraph::incidence(VertexIndex v) const {
  return {incidence_data_.data() + incidence_offsets_[v],
          incidence_offsets_[v + 1] - incidence_offsets_[v]};
}

TemporalHyperedge Hypergraph::edge_record(EdgeIndex e) const {
  TemporalHyperedge record{edge_ids_.at(e), {}, starts_[e], ends_[e]};
  for (VertexIndex v : participants(e)) record.participants.push_back(vertex_ids_[v]);
  return record;
}

std::vector<TemporalHyperedge> Hypergraph::edge_records() const {
  std::vector<TemporalHyperedge> out;
  out.reserve(edge_count());
  for (EdgeIndex e = 0; e < edge_count(); ++e) out.push_back(edge_record(e));
  return out;
}

void validate_edge(const TemporalHyperedge& edge) {
  if (edge.id.empty()) throw Error(ErrorCode::InvalidId, "edge id is empty");
  if (edge.participants.size() < 2) {
    throw Error(ErrorCode::TooFewParticipants,
                "edge '" + edge.id + "' has " + std::to_string(edge.participants.size()) +
                    " participant(s), needs at least 2");
  }
  if (edge.start < -kTickLimit || edge.start > kTickLimit || edge.end < -kTickLimit ||
      edge.end > kTickLimit) {
    throw Error(ErrorCode::TickOutOfRange, "edge '" + edge.id + "' has a tick outside +-2^62");
  }
  if (edge.start > edge.end) {
    throw Error(ErrorCode::InvalidInterval, "edge '" + edge.id + "' starts after it ends");
  }
  std::vector<std::string_view> sorted(edge.participants.begin(), edge.participants.end());
  std::sort(sorted.begin(), sorted.end());
  if (!sorted.empty() && sorted.front().empty()) {
    throw Error(ErrorCode::InvalidId, "edge '" + edge.id + "' has an empty participant id");
  }
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::DuplicateParticipant, "edge '" + edge.id + "' repeats a participant");
  }
}

Hypergraph build_hypergraph(std::span<const TemporalHyperedge> records) {
  for (std::size_t i = 0; i < records.size(); ++i) {
    try {
      validate_edge(records[i]);
    } catch (const Error& err) {
      throw RecordError(i, err.what(), err.code());
    }
  }
  if (records.size() >= std::numeric_limits<EdgeIndex>::max()) {
    throw Error(ErrorCode::RecordInvalid, "too many edges");
  }

  Hypergraph h;
  const auto edge_count = static_cast<EdgeIndex>(records.size());

  h.edges_by_id_.resize(edge_count);
  std::iota(h.edges_by_id_.begin(), h.edges_by_id_.end(), EdgeIndex{0});
  std::sort(h.edges_by_id_.begin(), h.edges_by_id_.end(),
            [&](EdgeIndex a, EdgeIndex b) { return records[a].id < records[b].id; });
  for (std::size_t i = 1; i < h.edges_by_id_.size(); ++i) {
    const auto& prev = records[h.edges_by_id_[i - 1]];
    const auto later = std::max(h.edges_by_id_[i - 1], h.edges_by_id_[i]);
    if (prev.id == records[h.edges_by_id_[i]].id) {
      throw RecordError(later, "duplicate edge id '" + prev.id + "'", ErrorCode::DuplicateEdgeId);
    }
  }
  h.edge_rank_.resize(edge_count);
  for (EdgeIndex rank = 0; rank < edge_count; ++rank) h.edge_rank_[h.edges_by_id_[rank]] = rank;

  std::size_t membership = 0;
  for (const auto& r : records) membership += r.participants.size();
  {
    std::vector<std::string_view> all;
    all.reserve(membership);
    for (const auto& r : records) all.insert(all.end(), r.participants.begin(), r.participants.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    h.vertex_ids_.assign(all.begin(), all.end());
  }

  h.edge_ids_.reserve(edge_count);
  h.starts_.reserve(edge_count);
  h.ends_.reserve(edge_count);
  h.participant_offsets_.reserve(edge_count + 1);
  h.participant_data_.reserve(membership);
  std::vector<std::size_t> degree(h.vertex_count(), 0);
  for (const auto& r : records) {
    h.edge_ids_.push_back(r.id);
    h.starts_.push_back(r.start);
    h.ends_.push_back(r.end);
    const auto first = h.participant_data_.size();
    for (const auto& p : r.participants) {
      const VertexIndex v = *h.find_vertex(p);
      h.participant_data_.push_back(v);
      ++degree[v];
    }
    std::sort(h.participant_data_.begin() + static_cast<std::ptrdiff_t>(first),
              h.participant_data_.end());
    h.participant_offsets_.push_back(h.participant_data_.size());
  }

  h.incidence_offsets_.resize(h.vertex_count() + 1);
  for (std::size_t v = 0; v < h.vertex_count(); ++v) {
    h.incidence_offsets_[v + 1] = h.incidence_offsets_[v] + degree[v];
  }
  h.incidence_data_.resize(membership);
  std::vector<std::size_t> cursor(h.incidence_offsets_.begin(), h.incidence_offsets_.end() - 1);
  for (EdgeIndex e = 0; e < edge_count; ++e) {
    for (VertexIndex v : h.participants(e)) h.incidence_data_[cursor[v]++] = e;
  }
  auto by_start = [&](EdgeIndex a, EdgeIndex b) {
    if (h.starts_[a] != h.starts_[b]) return h.starts_[a] < h.starts_[b];
    return h.edge_rank_[a] < h.edge_rank_[b];
  };
  for (std::size_t v = 0; v < h.vertex_count(); ++v) {
    std::sort(h.incidence_data_.begin() + static_cast<std::ptrdiff_t>(h.incidence_offsets_[v]),
              h.incidence_data_.begin() + static_cast<std::ptrdiff_t>(h.incidence_offsets_[v + 1]),
              by_start);
  }
  return h;
}

std::vector<EdgeIndex> incident_edges(const Hypergraph& h, VertexIndex v, Tick not_before) {
  std::vector<EdgeIndex> out;
  for (EdgeIndex e : h.incidence(h.checked(v))) {
    if (h.end(e) >= not_before) out.push_back(e);
  }
  return out;
}

std::vector<EdgeIndex> incident_edges(const Hypergraph& h, std::string_view v, Tick not_before) {
  return incident_edges(h, h.vertex(v), not_before);
}

NetworkStats stats(const Hypergraph& h) {
  NetworkStats s;
  s.vertices = h.vertex_count();
  s.edges = h.edge_count();
  for (EdgeIndex e = 0; e < h.edge_count(); ++e) {
    ++s.participant_histogram[h.participants(e).size()];
    if (!s.span) {
      s.span.emplace(h.start(e), h.end(e));
    } else {
      s.span->first = std::min(s.span->first, h.start(e));
      s.span->second = std::max(s.span->second, h.end(e));
    }
  }
  return s;
}

}  // namespace thd
