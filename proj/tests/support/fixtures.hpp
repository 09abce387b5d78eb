#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thd/core.hpp"
#include "thd/paths.hpp"

namespace thd::testing {

// G1 = { e1:{a,b},[1,3]; e2:{b,c},[2,5]; e3:{a,c,d},[4,4] }
inline std::vector<TemporalHyperedge> g1_records() {
  return {{"e1", {"a", "b"}, 1, 3}, {"e2", {"b", "c"}, 2, 5}, {"e3", {"a", "c", "d"}, 4, 4}};
}

// G2 = { e4:{a,b},[0,0]; e5:{b,d},[5,5] }
inline std::vector<TemporalHyperedge> g2_records() {
  return {{"e4", {"a", "b"}, 0, 0}, {"e5", {"b", "d"}, 5, 5}};
}

inline Hypergraph g1() { return build_hypergraph(g1_records()); }
inline Hypergraph g2() { return build_hypergraph(g2_records()); }

/// Labels keyed by vertex id, for readable expectations.
inline std::map<std::string, std::int64_t> by_id(const Hypergraph& h, const LabelMap& values) {
  std::map<std::string, std::int64_t> out;
  for (const auto& [v, value] : values.entries()) out[h.vertex_id(v)] = value;
  return out;
}

inline std::map<std::string, std::int64_t> by_id(const Hypergraph& h,
                                                 const std::vector<std::optional<std::int64_t>>& values) {
  std::map<std::string, std::int64_t> out;
  for (std::size_t v = 0; v < values.size(); ++v) {
    if (values[v]) out[h.vertex_id(static_cast<VertexIndex>(v))] = *values[v];
  }
  return out;
}

/// Incidence rebuilt by scanning every edge, sorted by (start, edge id).
inline std::vector<EdgeIndex> naive_incidence(const Hypergraph& h, VertexIndex v) {
  std::vector<EdgeIndex> out;
  for (EdgeIndex e = 0; e < h.edge_count(); ++e) {
    for (VertexIndex p : h.participants(e)) {
      if (p == v) out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end(), [&](EdgeIndex a, EdgeIndex b) {
    if (h.start(a) != h.start(b)) return h.start(a) < h.start(b);
    return h.edge_id(a) < h.edge_id(b);
  });
  return out;
}

inline std::vector<std::string> edge_ids(const Hypergraph& h, const std::vector<EdgeIndex>& edges) {
  std::vector<std::string> out;
  for (EdgeIndex e : edges) out.push_back(h.edge_id(e));
  return out;
}

}  // namespace thd::testing
