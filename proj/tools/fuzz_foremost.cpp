// Input bytes drive a small record list: each 6-byte chunk is one edge
// (two participants from a 16-vertex pool, signed start and length).

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "thd/core.hpp"
#include "thd/error.hpp"
#include "thd/paths.hpp"

extern "C" int LLVMFuzzerTestOneInput(const std::uint8_t* data, std::size_t size) {
  if (size < 2) return 0;
  const auto source_byte = data[0];
  const auto t0 = static_cast<thd::Tick>(static_cast<std::int8_t>(data[1]));
  std::vector<thd::TemporalHyperedge> records;
  for (std::size_t i = 2; i + 6 <= size && records.size() < 64; i += 6) {
    const std::uint8_t* c = data + i;
    thd::TemporalHyperedge e;
    e.id = "e" + std::to_string(c[0]);
    e.participants = {"v" + std::to_string(c[1] % 16), "v" + std::to_string(c[2] % 16)};
    if (c[3] & 1) e.participants.push_back("v" + std::to_string(c[3] % 16));
    e.start = static_cast<std::int8_t>(c[4]);
    e.end = e.start + static_cast<std::int8_t>(c[5]);
    records.push_back(std::move(e));
  }
  thd::Hypergraph h;
  try {
    h = thd::build_hypergraph(records);
  } catch (const thd::Error&) {
    return 0;
  }
  if (h.vertex_count() == 0) return 0;
  const auto source = static_cast<thd::VertexIndex>(source_byte % h.vertex_count());
  for (thd::Metric m : {thd::Metric::foremost, thd::Metric::shortest, thd::Metric::fastest}) {
    const auto labels = thd::compute_labels(h, m, source, t0);
    for (const auto& [v, value] : labels.values.entries()) {
      const auto walk = thd::reconstruct_walk(h, labels, v);
      if (thd::walk_violation(h, walk) || thd::walk_value(walk, m) != value) std::abort();
    }
  }
  return 0;
}
