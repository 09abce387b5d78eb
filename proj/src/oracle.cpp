#include "thd/oracle.hpp"

#include <algorithm>
#include <set>

namespace thd::oracle {

namespace {

struct Frame {
  VertexIndex at;
  Tick arrival;
  std::vector<Hop> children;
  std::size_t next = 0;
};

std::vector<Hop> children_of(const Hypergraph& h, VertexIndex at, Tick arrival,
                             const std::vector<char>& on_walk, WalkSpace space) {
  std::vector<EdgeIndex> edges;
  for (EdgeIndex e : h.incidence(at)) {
    if (h.end(e) >= arrival) edges.push_back(e);
  }
  std::sort(edges.begin(), edges.end(),
            [&](EdgeIndex a, EdgeIndex b) { return h.edge_rank(a) < h.edge_rank(b); });
  std::vector<Hop> out;
  for (EdgeIndex e : edges) {
    for (VertexIndex v : h.participants(e)) {
      if (v == at) continue;
      if (space == WalkSpace::simple && on_walk[v]) continue;
      out.push_back(Hop{e, v});
    }
  }
  return out;
}

}  // namespace

void for_each_walk(const Hypergraph& h, VertexIndex source, Tick t0, std::size_t max_hops,
                   const std::function<void(const TemporalWalk&)>& visit, WalkSpace space) {
  h.checked(source);
  TemporalWalk walk{source, t0, {}, {}};
  std::vector<char> on_walk(h.vertex_count(), 0);
  on_walk[source] = 1;
  visit(walk);

  std::vector<Frame> stack;
  if (max_hops > 0) stack.push_back(Frame{source, t0, children_of(h, source, t0, on_walk, space)});
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next == top.children.size()) {
      stack.pop_back();
      if (!walk.hops.empty()) {
        on_walk[walk.hops.back().via] = 0;
        walk.hops.pop_back();
        walk.arrivals.pop_back();
      }
      continue;
    }
    const Hop hop = top.children[top.next++];
    const Tick arrival = std::max(top.arrival, h.start(hop.edge));
    walk.hops.push_back(hop);
    walk.arrivals.push_back(arrival);
    visit(walk);
    if (walk.hops.size() < max_hops) {
      // on_walk only matters for simple walks; for `all` a revisit keeps the flag set.
      on_walk[hop.via] = 1;
      stack.push_back(Frame{hop.via, arrival, children_of(h, hop.via, arrival, on_walk, space)});
    } else {
      walk.hops.pop_back();
      walk.arrivals.pop_back();
    }
  }
}

std::vector<TemporalWalk> enumerate_walks(const Hypergraph& h, VertexIndex source, Tick t0,
                                          std::size_t max_hops, WalkSpace space) {
  std::vector<TemporalWalk> out;
  for_each_walk(h, source, t0, max_hops, [&](const TemporalWalk& w) { out.push_back(w); }, space);
  return out;
}

TemporalWalk fastest_retiming(const Hypergraph& h, const TemporalWalk& walk, Tick t0) {
  std::set<Tick> departures{t0};
  for (const Hop& hop : walk.hops) {
    for (Tick t : {h.start(hop.edge), h.end(hop.edge)}) {
      if (t >= t0) departures.insert(t);
    }
  }
  TemporalWalk best = walk;
  best.departure = t0;
  best.arrivals = *replay(h, walk.source, t0, walk.hops);
  for (Tick departure : departures) {
    auto arrivals = replay(h, walk.source, departure, walk.hops);
    if (!arrivals) continue;
    TemporalWalk candidate{walk.source, departure, walk.hops, std::move(*arrivals)};
    if (candidate.duration() < best.duration()) best = std::move(candidate);
  }
  return best;
}

const std::vector<std::optional<std::int64_t>>& OracleResult::values(Metric metric) const {
  switch (metric) {
    case Metric::foremost: return foremost;
    case Metric::shortest: return hops;
    case Metric::fastest: return duration;
  }
  return foremost;
}

const std::vector<std::optional<TemporalWalk>>& OracleResult::witnesses(Metric metric) const {
  switch (metric) {
    case Metric::foremost: return foremost_witness;
    case Metric::shortest: return hops_witness;
    case Metric::fastest: return duration_witness;
  }
  return foremost_witness;
}

OracleResult oracle_distances(const Hypergraph& h, VertexIndex source, Tick t0,
                              std::size_t max_hops, WalkSpace space) {
  const std::size_t n = h.vertex_count();
  OracleResult r;
  r.foremost.resize(n);
  r.hops.resize(n);
  r.duration.resize(n);
  r.foremost_witness.resize(n);
  r.hops_witness.resize(n);
  r.duration_witness.resize(n);

  for_each_walk(
      h, source, t0, max_hops,
      [&](const TemporalWalk& walk) {
        ++r.walks;
        const VertexIndex target = walk.hops.empty() ? walk.source : walk.hops.back().via;
        const Tick arrival = walk.final_arrival();
        if (!r.foremost[target] || arrival < *r.foremost[target]) {
          r.foremost[target] = arrival;
          r.foremost_witness[target] = walk;
        }
        const auto hop_count = static_cast<std::int64_t>(walk.hop_count());
        if (!r.hops[target] || hop_count < *r.hops[target]) {
          r.hops[target] = hop_count;
          r.hops_witness[target] = walk;
        }
        TemporalWalk retimed = fastest_retiming(h, walk, t0);
        if (!r.duration[target] || retimed.duration() < *r.duration[target]) {
          r.duration[target] = retimed.duration();
          r.duration_witness[target] = std::move(retimed);
        }
      },
      space);
  return r;
}

}  // namespace thd::oracle

namespace thd::oracle {

namespace {

std::string describe(const Hypergraph& h, Metric metric, VertexIndex source, Tick t0,
                     VertexIndex target) {
  return std::string(to_string(metric)) + " " + h.vertex_id(source) + "@" + std::to_string(t0) +
         " -> " + h.vertex_id(target);
}

std::string show(const std::optional<std::int64_t>& v) {
  return v ? std::to_string(*v) : std::string("unreached");
}

}  // namespace

void differential_check(const Hypergraph& h, const std::vector<Tick>& departures,
                        DifferentialReport& report, WalkSpace space) {
  ++report.graphs;
  const std::size_t hop_budget = std::max<std::size_t>(h.vertex_count(), 1);
  for (VertexIndex source = 0; source < h.vertex_count(); ++source) {
    for (Tick t0 : departures) {
      ++report.runs;
      const OracleResult truth = oracle_distances(h, source, t0, hop_budget, space);
      for (Metric metric : {Metric::foremost, Metric::shortest, Metric::fastest}) {
        const DistanceLabels labels = compute_labels(h, metric, source, t0);
        const auto& expected = truth.values(metric);
        for (VertexIndex v = 0; v < h.vertex_count(); ++v) {
          ++report.comparisons;
          const auto got = labels.values.find(v);
          if (got != expected[v]) {
            report.mismatches.push_back(describe(h, metric, source, t0, v) + ": got " + show(got) +
                                        ", oracle " + show(expected[v]));
          }
          const auto& oracle_witness = truth.witnesses(metric)[v];
          if (oracle_witness) {
            if (auto why = walk_violation(h, *oracle_witness)) {
              report.witness_violations.push_back(describe(h, metric, source, t0, v) +
                                                  ": oracle witness " + *why);
            }
          }
          if (!got) continue;
          ++report.witnesses;
          const TemporalWalk walk = reconstruct_walk(h, labels, v);
          const VertexIndex end = walk.hops.empty() ? walk.source : walk.hops.back().via;
          std::string problem;
          if (auto why = walk_violation(h, walk)) problem = *why;
          else if (walk.source != source || end != v) problem = "walk has the wrong endpoints";
          else if (walk.departure < t0 || (metric != Metric::fastest && walk.departure != t0)) {
            problem = "walk departs at " + std::to_string(walk.departure);
          } else if (walk_value(walk, metric) != *got) {
            problem = "walk attains " + std::to_string(walk_value(walk, metric)) + ", label is " +
                      std::to_string(*got);
          }
          if (!problem.empty()) {
            report.witness_violations.push_back(describe(h, metric, source, t0, v) + ": " + problem);
          }
        }
      }
    }
  }
}

}  // namespace thd::oracle
