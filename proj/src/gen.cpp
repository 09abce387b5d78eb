#include "thd/gen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace thd::gen {

std::uint64_t Rng::mix(std::uint64_t x) {
  // SplitMix64 finalizer.
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  const auto range = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  if (range == std::numeric_limits<std::uint64_t>::max()) return static_cast<std::int64_t>(engine_());
  const std::uint64_t span = range + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= limit);
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + draw % span);
}

double Rng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

namespace {

std::string padded(char prefix, std::size_t index, std::size_t count) {
  const std::size_t width = std::to_string(count == 0 ? 0 : count - 1).size();
  std::string digits = std::to_string(index);
  return prefix + std::string(width > digits.size() ? width - digits.size() : 0, '0') + digits;
}

void fail(const std::string& why) { throw Error(ErrorCode::ParamsInvalid, why); }

}  // namespace

std::string vertex_name(std::size_t index, std::size_t count) { return padded('v', index, count); }
std::string edge_name(std::size_t index, std::size_t count) { return padded('e', index, count); }

void validate(const GenParams& p) {
  if (p.vertices < 2) fail("vertex count must be at least 2");
  if (p.min_participants < 2) fail("minimum participants must be at least 2");
  if (p.max_participants < p.min_participants) fail("maximum participants below minimum");
  if (p.max_participants > p.vertices) fail("maximum participants exceeds vertex count");
  if (p.edges * p.max_participants < p.vertices) {
    fail("edges cannot cover every vertex with at most max_participants each");
  }
  if (!std::isfinite(p.skew) || p.skew < 0) fail("skew must be finite and non-negative");
  if (p.time_span < 0 || p.min_interval < 0 || p.max_interval < p.min_interval) {
    fail("time span and interval bounds must be non-negative and ordered");
  }
  if (p.time_span + p.max_interval > kTickLimit) fail("time range exceeds the tick limit");
  if (p.vertices >= std::numeric_limits<VertexIndex>::max() ||
      p.edges >= std::numeric_limits<EdgeIndex>::max()) {
    fail("counts exceed index range");
  }
}

std::vector<TemporalHyperedge> random_records(const GenParams& p) {
  validate(p);
  const Rng root(p.seed);
  Rng size_rng = root.split(1);
  Rng member_rng = root.split(2);
  Rng time_rng = root.split(3);

  std::vector<double> cumulative;
  double total = 0;
  for (std::size_t k = p.min_participants; k <= p.max_participants; ++k) {
    total += std::pow(static_cast<double>(k - p.min_participants + 1), -p.skew);
    cumulative.push_back(total);
  }
  std::vector<std::size_t> sizes(p.edges);
  std::size_t slots = 0;
  for (auto& s : sizes) {
    const double u = size_rng.unit() * total;
    const auto bucket = std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin();
    s = p.min_participants + std::min<std::size_t>(static_cast<std::size_t>(bucket), cumulative.size() - 1);
    slots += s;
  }
  // Grow edges round-robin until every vertex can be placed.
  for (std::size_t i = 0; slots < p.vertices; i = (i + 1) % sizes.size()) {
    if (sizes[i] < p.max_participants) {
      ++sizes[i];
      ++slots;
    }
  }

  std::vector<std::size_t> cover(p.vertices);
  std::iota(cover.begin(), cover.end(), std::size_t{0});
  for (std::size_t i = cover.size(); i > 1; --i) {
    std::swap(cover[i - 1], cover[static_cast<std::size_t>(member_rng.uniform(0, static_cast<std::int64_t>(i) - 1))]);
  }

  std::vector<TemporalHyperedge> records(p.edges);
  std::size_t next_cover = 0;
  std::vector<std::size_t> members;
  for (std::size_t e = 0; e < p.edges; ++e) {
    members.clear();
    while (members.size() < sizes[e] && next_cover < cover.size()) members.push_back(cover[next_cover++]);
    while (members.size() < sizes[e]) {
      const auto v = static_cast<std::size_t>(member_rng.uniform(0, static_cast<std::int64_t>(p.vertices) - 1));
      if (std::find(members.begin(), members.end(), v) == members.end()) members.push_back(v);
    }
    std::sort(members.begin(), members.end());
    auto& r = records[e];
    r.id = edge_name(e, p.edges);
    for (std::size_t v : members) r.participants.push_back(vertex_name(v, p.vertices));
    r.start = time_rng.uniform(0, p.time_span);
    r.end = r.start + time_rng.uniform(p.min_interval, p.max_interval);
  }
  return records;
}

Hypergraph gen_random(const GenParams& params) { return build_hypergraph(random_records(params)); }

std::vector<TemporalHyperedge> structured_records(const StructuredParams& p) {
  if (p.size < 2) fail("structured size must be at least 2");
  if (p.size >= std::numeric_limits<EdgeIndex>::max()) fail("structured size too large");
  auto time_of = [&](std::size_t i) -> Tick {
    switch (p.times) {
      case TimePattern::increasing: return static_cast<Tick>(i);
      case TimePattern::decreasing: return static_cast<Tick>(p.size + 1 - i);
      case TimePattern::constant: return p.time;
    }
    return p.time;
  };
  std::vector<TemporalHyperedge> records;
  switch (p.shape) {
    case Shape::chain:
      for (std::size_t i = 1; i <= p.size; ++i) {
        const Tick t = time_of(i);
        records.push_back({edge_name(i, p.size + 1),
                           {vertex_name(i - 1, p.size + 1), vertex_name(i, p.size + 1)}, t, t});
      }
      break;
    case Shape::star:
      for (std::size_t i = 1; i <= p.size; ++i) {
        const Tick t = time_of(i);
        records.push_back({edge_name(i, p.size + 1), {"hub", padded('l', i, p.size + 1)}, t, t});
      }
      break;
    case Shape::clique: {
      TemporalHyperedge edge{"e0", {}, p.time, p.time};
      for (std::size_t i = 1; i <= p.size; ++i) edge.participants.push_back(vertex_name(i, p.size + 1));
      records.push_back(std::move(edge));
      break;
    }
  }
  return records;
}

Hypergraph gen_structured(const StructuredParams& params) {
  return build_hypergraph(structured_records(params));
}

}  // namespace thd::gen

namespace thd::gen {

std::vector<TemporalHyperedge> small_random_records(Rng& rng, const SmallParams& p) {
  if (p.max_vertices < 2 || p.max_edges < 1 || p.max_participants < 2 || p.max_tick < 0) {
    fail("small instance bounds are degenerate");
  }
  const auto vertices = static_cast<std::size_t>(rng.uniform(2, static_cast<std::int64_t>(p.max_vertices)));
  const auto edges = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(p.max_edges)));
  const auto widest = static_cast<std::int64_t>(std::min(p.max_participants, vertices));
  std::vector<TemporalHyperedge> records(edges);
  std::vector<std::size_t> pool(vertices);
  for (std::size_t e = 0; e < edges; ++e) {
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    const auto k = static_cast<std::size_t>(rng.uniform(2, widest));
    for (std::size_t i = 0; i < k; ++i) {
      std::swap(pool[i], pool[static_cast<std::size_t>(rng.uniform(static_cast<std::int64_t>(i),
                                                                    static_cast<std::int64_t>(vertices) - 1))]);
    }
    std::sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
    auto& r = records[e];
    r.id = edge_name(e, edges);
    for (std::size_t i = 0; i < k; ++i) r.participants.push_back(vertex_name(pool[i], vertices));
    r.start = rng.uniform(0, p.max_tick);
    r.end = rng.uniform(r.start, p.max_tick);
  }
  return records;
}

}  // namespace thd::gen
