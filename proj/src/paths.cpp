#include "thd/paths.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>
#include <tuple>

namespace thd {

std::string_view to_string(Metric metric) noexcept {
  switch (metric) {
    case Metric::foremost: return "foremost";
    case Metric::shortest: return "shortest";
    case Metric::fastest: return "fastest";
  }
  return "foremost";
}

std::optional<Metric> parse_metric(std::string_view name) noexcept {
  for (Metric m : {Metric::foremost, Metric::shortest, Metric::fastest}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

std::optional<std::vector<Tick>> replay(const Hypergraph& h, VertexIndex source, Tick departure,
                                        const std::vector<Hop>& hops) {
  std::vector<Tick> arrivals;
  arrivals.reserve(hops.size());
  Tick at = departure;
  VertexIndex here = source;
  for (const Hop& hop : hops) {
    if (hop.edge >= h.edge_count() || hop.via >= h.vertex_count()) return std::nullopt;
    if (!h.has_participant(hop.edge, here) || !h.has_participant(hop.edge, hop.via)) {
      return std::nullopt;
    }
    if (at > h.end(hop.edge)) return std::nullopt;
    at = std::max(at, h.start(hop.edge));
    arrivals.push_back(at);
    here = hop.via;
  }
  return arrivals;
}

std::optional<std::string> walk_violation(const Hypergraph& h, const TemporalWalk& walk) {
  if (walk.source >= h.vertex_count()) return "source out of range";
  if (walk.arrivals.size() != walk.hops.size()) return "arrival count differs from hop count";
  Tick at = walk.departure;
  VertexIndex here = walk.source;
  for (std::size_t i = 0; i < walk.hops.size(); ++i) {
    const Hop& hop = walk.hops[i];
    const std::string where = "hop " + std::to_string(i) + ": ";
    if (hop.edge >= h.edge_count()) return where + "edge out of range";
    if (hop.via >= h.vertex_count()) return where + "via-vertex out of range";
    if (!h.has_participant(hop.edge, here)) return where + "edge does not contain the current vertex";
    if (!h.has_participant(hop.edge, hop.via)) return where + "edge does not contain the via-vertex";
    if (at > h.end(hop.edge)) return where + "edge closed before the walk reached it";
    const Tick expected = std::max(at, h.start(hop.edge));
    if (walk.arrivals[i] != expected) return where + "arrival does not match max(previous, start)";
    at = expected;
    here = hop.via;
  }
  return std::nullopt;
}

std::int64_t walk_value(const TemporalWalk& walk, Metric metric) noexcept {
  switch (metric) {
    case Metric::foremost: return walk.final_arrival();
    case Metric::shortest: return static_cast<std::int64_t>(walk.hop_count());
    case Metric::fastest: return walk.duration();
  }
  return 0;
}

std::int64_t LabelMap::at(VertexIndex v) const {
  if (auto value = find(v)) return *value;
  throw Error(ErrorCode::Unreached, "vertex index " + std::to_string(v) + " has no label");
}

void LabelMap::set(VertexIndex v, std::int64_t value) {
  if (!slots_.at(v)) ++reached_;
  slots_[v] = value;
}

std::vector<std::pair<VertexIndex, std::int64_t>> LabelMap::entries() const {
  std::vector<std::pair<VertexIndex, std::int64_t>> out;
  out.reserve(reached_);
  for (std::size_t v = 0; v < slots_.size(); ++v) {
    if (slots_[v]) out.emplace_back(static_cast<VertexIndex>(v), *slots_[v]);
  }
  return out;
}

void DistanceLabels::drop_trace() {
  trace.clear();
  trace.shrink_to_fit();
  walk_end.clear();
  walk_end.shrink_to_fit();
}

std::optional<Predecessor> DistanceLabels::predecessor(VertexIndex v) const {
  if (v >= walk_end.size() || !walk_end[v]) return std::nullopt;
  const TraceStep& step = trace[*walk_end[v]];
  if (!step.edge || !step.parent) return std::nullopt;
  return Predecessor{*step.edge, trace[*step.parent].vertex};
}

namespace {

bool usable(const Hypergraph& h, EdgeIndex e, std::optional<Tick> horizon) {
  return !horizon || h.start(e) <= *horizon;
}

// (edge id, prior vertex id) ordering used to break ties between
// relaxations that produce equal labels.
bool tie_precedes(const Hypergraph& h, EdgeIndex e, VertexIndex prior, const Predecessor& current) {
  return std::tuple(h.edge_rank(e), prior) < std::tuple(h.edge_rank(current.edge), current.prior);
}

DistanceLabels empty_labels(const Hypergraph& h, Metric metric, VertexIndex source, Tick t0) {
  DistanceLabels labels;
  labels.source = source;
  labels.t0 = t0;
  labels.metric = metric;
  labels.values = LabelMap(h.vertex_count());
  labels.walk_end.assign(h.vertex_count(), std::nullopt);
  return labels;
}

struct Improvement {
  VertexIndex vertex;
  Tick arrival;
  EdgeIndex edge;
  VertexIndex prior;
};

// Hop-layered earliest arrival. Layer k only re-examines edges incident to
// vertices whose arrival improved in layer k-1; every other edge offers the
// same candidate it offered before. `on_layer` receives the improvements of
// each layer sorted by vertex.
void run_layers(const Hypergraph& h, VertexIndex source, Tick t0, std::size_t max_layers,
                std::optional<Tick> horizon,
                const std::function<void(std::size_t, const std::vector<Improvement>&)>& on_layer) {
  std::vector<std::optional<Tick>> arrival(h.vertex_count());
  arrival[source] = t0;
  std::vector<VertexIndex> changed{source};
  std::vector<std::size_t> edge_stamp(h.edge_count(), 0);
  std::vector<std::optional<Improvement>> pending(h.vertex_count());
  std::vector<EdgeIndex> frontier;
  std::vector<VertexIndex> touched;

  for (std::size_t layer = 1; layer <= max_layers; ++layer) {
    frontier.clear();
    for (VertexIndex u : changed) {
      for (EdgeIndex e : h.incidence(u)) {
        if (edge_stamp[e] != layer) {
          edge_stamp[e] = layer;
          frontier.push_back(e);
        }
      }
    }
    touched.clear();
    for (EdgeIndex e : frontier) {
      if (!usable(h, e, horizon)) continue;
      std::optional<Tick> board;
      VertexIndex boarder = 0;
      for (VertexIndex p : h.participants(e)) {
        if (arrival[p] && *arrival[p] <= h.end(e) && (!board || *arrival[p] < *board)) {
          board = arrival[p];
          boarder = p;
        }
      }
      if (!board) continue;
      const Tick candidate = std::max(*board, h.start(e));
      for (VertexIndex v : h.participants(e)) {
        if (arrival[v] && *arrival[v] <= candidate) continue;
        auto& slot = pending[v];
        if (!slot) {
          slot = Improvement{v, candidate, e, boarder};
          touched.push_back(v);
        } else if (candidate < slot->arrival ||
                   (candidate == slot->arrival &&
                    tie_precedes(h, e, boarder, Predecessor{slot->edge, slot->prior}))) {
          slot = Improvement{v, candidate, e, boarder};
        }
      }
    }
    if (touched.empty()) break;
    std::sort(touched.begin(), touched.end());
    std::vector<Improvement> improvements;
    improvements.reserve(touched.size());
    for (VertexIndex v : touched) {
      improvements.push_back(*pending[v]);
      arrival[v] = pending[v]->arrival;
      pending[v].reset();
    }
    changed = touched;
    on_layer(layer, improvements);
  }
}

}  // namespace

DistanceLabels foremost(const Hypergraph& h, VertexIndex source, Tick t0,
                        std::optional<Tick> horizon) {
  h.checked(source);
  DistanceLabels labels = empty_labels(h, Metric::foremost, source, t0);

  const std::size_t n = h.vertex_count();
  std::vector<std::optional<Tick>> best(n);
  std::vector<std::optional<Predecessor>> pred(n);
  std::vector<std::uint32_t> node_of(n, 0);
  std::vector<char> settled(n, 0);
  std::vector<char> edge_done(h.edge_count(), 0);

  using Entry = std::pair<Tick, VertexIndex>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  best[source] = t0;
  queue.emplace(t0, source);

  while (!queue.empty()) {
    const auto [at, u] = queue.top();
    queue.pop();
    if (settled[u] || at != *best[u]) continue;
    settled[u] = 1;

    TraceStep step{u, std::nullopt, std::nullopt, at};
    if (pred[u]) {
      step.edge = pred[u]->edge;
      step.parent = node_of[pred[u]->prior];
    }
    node_of[u] = static_cast<std::uint32_t>(labels.trace.size());
    labels.trace.push_back(step);
    labels.walk_end[u] = node_of[u];
    labels.values.set(u, at);

    for (EdgeIndex e : h.incidence(u)) {
      // The first settled participant boards with the earliest arrival;
      // later participants cannot offer anything better on this edge.
      if (edge_done[e]) continue;
      edge_done[e] = 1;
      if (h.end(e) < at || !usable(h, e, horizon)) continue;
      const Tick candidate = std::max(at, h.start(e));
      for (VertexIndex v : h.participants(e)) {
        if (settled[v]) continue;
        if (!best[v] || candidate < *best[v]) {
          best[v] = candidate;
          pred[v] = Predecessor{e, u};
          queue.emplace(candidate, v);
        } else if (candidate == *best[v] && tie_precedes(h, e, u, *pred[v])) {
          pred[v] = Predecessor{e, u};
        }
      }
    }
  }
  return labels;
}

DistanceLabels shortest(const Hypergraph& h, VertexIndex source, Tick t0, std::size_t max_hops,
                        std::optional<Tick> horizon) {
  h.checked(source);
  if (max_hops == 0) throw Error(ErrorCode::NonPositiveMaxHops, "max_hops must be at least 1");
  DistanceLabels labels = empty_labels(h, Metric::shortest, source, t0);
  labels.trace.push_back(TraceStep{source, std::nullopt, std::nullopt, t0});
  labels.walk_end[source] = 0;
  labels.values.set(source, 0);

  // Latest trace node per vertex; a node created in layer k has at most k hops.
  std::vector<std::uint32_t> node_of(h.vertex_count(), 0);
  std::vector<std::uint32_t> fresh;
  run_layers(h, source, t0, max_hops, horizon,
             [&](std::size_t layer, const std::vector<Improvement>& improvements) {
               fresh.clear();
               for (const Improvement& imp : improvements) {
                 fresh.push_back(static_cast<std::uint32_t>(labels.trace.size()));
                 labels.trace.push_back(
                     TraceStep{imp.vertex, imp.edge, node_of[imp.prior], imp.arrival});
               }
               for (std::size_t i = 0; i < improvements.size(); ++i) {
                 const VertexIndex v = improvements[i].vertex;
                 node_of[v] = fresh[i];
                 if (!labels.values.contains(v)) {
                   labels.values.set(v, static_cast<std::int64_t>(layer));
                   labels.walk_end[v] = fresh[i];
                 }
               }
             });
  return labels;
}

std::vector<std::vector<std::optional<Tick>>> arrival_layers(const Hypergraph& h,
                                                             VertexIndex source, Tick t0,
                                                             std::size_t max_layers,
                                                             std::optional<Tick> horizon) {
  h.checked(source);
  std::vector<std::vector<std::optional<Tick>>> layers(1);
  layers[0].assign(h.vertex_count(), std::nullopt);
  layers[0][source] = t0;
  run_layers(h, source, t0, max_layers, horizon,
             [&](std::size_t, const std::vector<Improvement>& improvements) {
               layers.push_back(layers.back());
               for (const Improvement& imp : improvements) layers.back()[imp.vertex] = imp.arrival;
             });
  return layers;
}

DistanceLabels fastest(const Hypergraph& h, VertexIndex source, Tick t0,
                       std::optional<Tick> horizon) {
  h.checked(source);
  const DistanceLabels base = foremost(h, source, t0, horizon);

  // A walk feasible from some departure >= t0 is feasible from t0, so only
  // edges boardable in the t0 run matter. For a fixed walk the best
  // departure is max(t0, min(latest start, earliest end)) over its edges.
  std::optional<Tick> last_departure;
  for (EdgeIndex e : h.incidence(source)) {
    if (h.end(e) >= t0 && usable(h, e, horizon)) {
      last_departure = std::max(last_departure.value_or(h.end(e)), h.end(e));
    }
  }
  std::set<Tick, std::greater<>> departures{t0};
  if (last_departure) {
    for (EdgeIndex e = 0; e < h.edge_count(); ++e) {
      if (!usable(h, e, horizon)) continue;
      const bool boardable = std::any_of(
          h.participants(e).begin(), h.participants(e).end(), [&](VertexIndex p) {
            auto a = base.values.find(p);
            return a && *a <= h.end(e);
          });
      if (!boardable) continue;
      for (Tick t : {h.start(e), h.end(e)}) {
        if (t > t0 && t <= *last_departure && (!horizon || t <= *horizon)) departures.insert(t);
      }
    }
  }

  DistanceLabels labels = empty_labels(h, Metric::fastest, source, t0);

  // Arrivals only improve as the departure moves earlier, and a vertex whose
  // arrival did not improve offers nothing new to its neighbours. Each round
  // therefore runs label setting over the improved vertices only, starting
  // from the previous round's arrivals.
  const std::size_t n = h.vertex_count();
  std::vector<std::optional<Tick>> best(n);
  std::vector<std::optional<Predecessor>> pred(n);
  std::vector<std::uint32_t> node_of(n, 0);
  std::vector<std::size_t> settled_round(n, 0);
  std::vector<std::size_t> improved_round(n, 0);
  std::vector<std::size_t> edge_round(h.edge_count(), 0);
  using Entry = std::pair<Tick, VertexIndex>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;

  std::size_t round = 0;
  // Descending departures; a later departure keeps its label on ties.
  for (Tick departure : departures) {
    ++round;
    best[source] = departure;
    pred[source].reset();
    queue.emplace(departure, source);
    while (!queue.empty()) {
      const auto [at, u] = queue.top();
      queue.pop();
      if (settled_round[u] == round || at != *best[u]) continue;
      settled_round[u] = round;

      TraceStep step{u, std::nullopt, std::nullopt, at};
      if (pred[u]) {
        step.edge = pred[u]->edge;
        step.parent = node_of[pred[u]->prior];
      }
      node_of[u] = static_cast<std::uint32_t>(labels.trace.size());
      labels.trace.push_back(step);
      const Duration d = at - departure;
      if (auto current = labels.values.find(u); !current || d < *current) {
        labels.values.set(u, d);
        labels.walk_end[u] = node_of[u];
      }

      for (EdgeIndex e : h.incidence(u)) {
        if (edge_round[e] == round) continue;
        edge_round[e] = round;
        if (h.end(e) < at || !usable(h, e, horizon)) continue;
        const Tick candidate = std::max(at, h.start(e));
        for (VertexIndex v : h.participants(e)) {
          if (settled_round[v] == round) continue;
          if (!best[v] || candidate < *best[v]) {
            best[v] = candidate;
            pred[v] = Predecessor{e, u};
            improved_round[v] = round;
            queue.emplace(candidate, v);
          } else if (candidate == *best[v] && improved_round[v] == round &&
                     tie_precedes(h, e, u, *pred[v])) {
            pred[v] = Predecessor{e, u};
          }
        }
      }
    }
  }
  return labels;
}

DistanceLabels compute_labels(const Hypergraph& h, Metric metric, VertexIndex source, Tick t0,
                              std::size_t max_hops, std::optional<Tick> horizon) {
  switch (metric) {
    case Metric::foremost: return foremost(h, source, t0, horizon);
    case Metric::shortest:
      return shortest(h, source, t0,
                      max_hops == 0 ? std::max<std::size_t>(h.vertex_count(), 1) : max_hops,
                      horizon);
    case Metric::fastest: return fastest(h, source, t0, horizon);
  }
  return foremost(h, source, t0, horizon);
}

TemporalWalk reconstruct_walk(const Hypergraph& h, const DistanceLabels& labels,
                              VertexIndex target) {
  h.checked(target);
  if (!labels.values.contains(target)) {
    throw Error(ErrorCode::Unreached, "'" + h.vertex_id(target) + "' is not reached from '" +
                                          h.vertex_id(labels.source) + "'");
  }
  if (!labels.has_trace() || !labels.walk_end.at(target)) {
    throw Error(ErrorCode::PlanInvalid, "labels were computed without predecessors");
  }
  std::vector<const TraceStep*> chain;
  for (std::optional<std::uint32_t> at = labels.walk_end[target]; at;
       at = labels.trace.at(*at).parent) {
    chain.push_back(&labels.trace[*at]);
    if (chain.size() > labels.trace.size()) {
      throw Error(ErrorCode::PlanInvalid, "predecessor chain does not terminate");
    }
  }
  std::reverse(chain.begin(), chain.end());

  TemporalWalk walk;
  walk.source = chain.front()->vertex;
  walk.departure = chain.front()->arrival;
  for (std::size_t i = 1; i < chain.size(); ++i) {
    walk.hops.push_back(Hop{*chain[i]->edge, chain[i]->vertex});
    walk.arrivals.push_back(chain[i]->arrival);
  }
  return walk;
}

}  // namespace thd
