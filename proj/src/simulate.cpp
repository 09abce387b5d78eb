#include "thd/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "thd/digest.hpp"
#include "thd/gen.hpp"
#include "thd/io.hpp"

#ifndef THD_VERSION
#define THD_VERSION "0.0.0"
#endif

namespace thd::sim {

using nlohmann::json;

std::string_view tool_version() noexcept { return "thd " THD_VERSION; }

namespace {

[[noreturn]] void invalid(const std::string& why) { throw Error(ErrorCode::PlanInvalid, why); }

}  // namespace

Tick source_t0(const Hypergraph& h, const SimulationPlan& plan, VertexIndex source) {
  if (plan.t0_policy == T0Policy::fixed) return plan.t0;
  Tick t0 = plan.t0;
  for (EdgeIndex e : h.incidence(source)) {
    // Incidence is sorted by start, so the first entry is the earliest.
    t0 = h.start(e);
    break;
  }
  return t0;
}

std::vector<VertexIndex> planned_sources(const Hypergraph& h, const SimulationPlan& plan) {
  if (plan.metrics.empty()) invalid("no metric selected");
  for (std::size_t i = 0; i < plan.metrics.size(); ++i) {
    if (std::find(plan.metrics.begin(), plan.metrics.begin() + static_cast<std::ptrdiff_t>(i),
                  plan.metrics[i]) != plan.metrics.begin() + static_cast<std::ptrdiff_t>(i)) {
      invalid("metric '" + std::string(to_string(plan.metrics[i])) + "' selected twice");
    }
  }
  if (plan.parallelism == 0) invalid("parallelism must be at least 1");

  std::vector<VertexIndex> sources;
  switch (plan.sources.mode) {
    case SourceMode::all:
      sources.resize(h.vertex_count());
      for (std::size_t v = 0; v < sources.size(); ++v) sources[v] = static_cast<VertexIndex>(v);
      break;
    case SourceMode::list:
      for (const auto& id : plan.sources.ids) {
        auto v = h.find_vertex(id);
        if (!v) invalid("unknown source '" + id + "'");
        sources.push_back(*v);
      }
      std::sort(sources.begin(), sources.end());
      if (std::adjacent_find(sources.begin(), sources.end()) != sources.end()) {
        invalid("source list contains duplicates");
      }
      break;
    case SourceMode::sample: {
      if (plan.sources.sample_size > h.vertex_count()) {
        invalid("sample size " + std::to_string(plan.sources.sample_size) + " exceeds " +
                std::to_string(h.vertex_count()) + " vertices");
      }
      std::vector<VertexIndex> pool(h.vertex_count());
      for (std::size_t v = 0; v < pool.size(); ++v) pool[v] = static_cast<VertexIndex>(v);
      gen::Rng rng(plan.sources.seed);
      for (std::size_t i = 0; i < plan.sources.sample_size; ++i) {
        const auto j = static_cast<std::size_t>(
            rng.uniform(static_cast<std::int64_t>(i), static_cast<std::int64_t>(pool.size()) - 1));
        std::swap(pool[i], pool[j]);
      }
      sources.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(plan.sources.sample_size));
      std::sort(sources.begin(), sources.end());
      break;
    }
  }
  if (plan.horizon) {
    for (VertexIndex v : sources) {
      if (*plan.horizon < source_t0(h, plan, v)) {
        invalid("horizon precedes the start time of source '" + h.vertex_id(v) + "'");
      }
    }
  }
  return sources;
}

std::string plan_json(const SimulationPlan& plan) {
  json metrics = json::array();
  for (Metric m : plan.metrics) metrics.push_back(to_string(m));
  json sources;
  switch (plan.sources.mode) {
    case SourceMode::all: sources = {{"mode", "all"}}; break;
    case SourceMode::list: {
      std::vector<std::string> ids = plan.sources.ids;
      std::sort(ids.begin(), ids.end());
      sources = {{"mode", "list"}, {"ids", ids}};
      break;
    }
    case SourceMode::sample:
      sources = {{"mode", "sample"}, {"size", plan.sources.sample_size}, {"seed", plan.sources.seed}};
      break;
  }
  json doc{{"metrics", std::move(metrics)},
           {"sources", std::move(sources)},
           {"t0_policy", plan.t0_policy == T0Policy::fixed ? "fixed" : "earliest_incident"},
           {"max_hops", plan.max_hops},
           {"horizon", plan.horizon ? json(*plan.horizon) : json(nullptr)},
           {"keep_predecessors", plan.keep_predecessors}};
  if (plan.t0_policy == T0Policy::fixed) doc["t0"] = plan.t0;
  return doc.dump();
}

std::string plan_digest(const SimulationPlan& plan) { return sha256_hex(plan_json(plan)); }

std::optional<std::int64_t> nearest_rank(const std::vector<std::int64_t>& sorted, double p) {
  if (sorted.empty()) return std::nullopt;
  const auto n = static_cast<double>(sorted.size());
  auto rank = static_cast<std::size_t>(std::ceil(p * n));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

Summary aggregate(std::size_t vertex_count, const std::vector<Metric>& metrics,
                  const std::vector<SourceLabels>& sources) {
  Summary summary;
  std::vector<std::vector<std::int64_t>> samples(metrics.size());
  for (const auto& s : sources) {
    for (std::size_t m = 0; m < metrics.size() && m < s.labels.size(); ++m) {
      const LabelMap& values = s.labels[m].values;
      const double ratio = vertex_count == 0 ? 0.0
                                             : static_cast<double>(values.reached()) /
                                                   static_cast<double>(vertex_count);
      summary.per_source.push_back(SourceSummary{s.source, metrics[m], values.reached(), ratio});
      for (const auto& [v, value] : values.entries()) samples[m].push_back(value);
    }
  }
  for (std::size_t m = 0; m < metrics.size(); ++m) {
    auto& sample = samples[m];
    std::sort(sample.begin(), sample.end());
    summary.quantiles.push_back(MetricQuantiles{metrics[m], sample.size(), nearest_rank(sample, 0.50),
                                                nearest_rank(sample, 0.90), nearest_rank(sample, 0.99)});
  }
  return summary;
}

SourceLabels compute_source(const Hypergraph& h, const SimulationPlan& plan, VertexIndex source) {
  SourceLabels out;
  out.source = source;
  out.t0 = source_t0(h, plan, source);
  for (Metric metric : plan.metrics) {
    DistanceLabels labels = compute_labels(h, metric, source, out.t0, plan.max_hops, plan.horizon);
    if (!plan.keep_predecessors) labels.drop_trace();
    out.labels.push_back(std::move(labels));
  }
  return out;
}

namespace {

constexpr std::string_view kCheckpointFormat = "thd-checkpoint";
constexpr int kCheckpointVersion = 1;

[[noreturn]] void corrupt(const std::filesystem::path& path, const std::string& why) {
  throw Error(ErrorCode::CorruptCheckpoint, "'" + path.string() + "': " + why);
}

std::string checkpoint_body(const std::string& input_digest, const std::string& plan_digest,
                            const std::vector<std::string>& records) {
  std::string body = json{{"format", kCheckpointFormat},
                          {"version", kCheckpointVersion},
                          {"input_digest", input_digest},
                          {"plan_digest", plan_digest}}
                         .dump();
  body += '\n';
  for (const auto& r : records) {
    body += r;
    body += '\n';
  }
  return body;
}

void write_atomically(const std::filesystem::path& path, const std::string& body) {
  std::filesystem::path temp = path;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + temp.string() + "'");
    out << body << json{{"records", std::count(body.begin(), body.end(), '\n') - 1},
                        {"sha256", sha256_hex(body)}}
                       .dump()
        << '\n';
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + temp.string() + "'");
  }
  std::filesystem::rename(temp, path);
}

}  // namespace

void checkpoint_write(const std::filesystem::path& path, const Hypergraph& h,
                      const CheckpointState& state) {
  std::vector<std::string> records;
  records.reserve(state.completed.size());
  for (const auto& s : state.completed) records.push_back(io::source_record(h, s));
  write_atomically(path, checkpoint_body(state.input_digest, state.plan_digest, records));
}

CheckpointState checkpoint_load(const std::filesystem::path& path, const Hypergraph& h) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string content = buffer.str();
  if (content.empty()) corrupt(path, "file is empty");
  if (content.back() != '\n') corrupt(path, "file is truncated");

  const auto trailer_start = content.rfind('\n', content.size() - 2);
  if (trailer_start == std::string::npos) corrupt(path, "missing header or trailer");
  const std::string body = content.substr(0, trailer_start + 1);
  try {
    const json trailer = json::parse(content.substr(trailer_start + 1));
    if (trailer.at("sha256").get<std::string>() != sha256_hex(body)) corrupt(path, "digest mismatch");

    std::istringstream lines(body);
    std::string line;
    std::getline(lines, line);
    const json header = json::parse(line);
    if (header.at("format").get<std::string>() != kCheckpointFormat ||
        header.at("version").get<int>() != kCheckpointVersion) {
      corrupt(path, "unsupported checkpoint format");
    }
    CheckpointState state;
    state.input_digest = header.at("input_digest").get<std::string>();
    state.plan_digest = header.at("plan_digest").get<std::string>();
    while (std::getline(lines, line)) state.completed.push_back(io::parse_source_record(line, h));
    if (trailer.at("records").get<std::size_t>() != state.completed.size()) {
      corrupt(path, "record count mismatch");
    }
    return state;
  } catch (const json::exception& ex) {
    corrupt(path, ex.what());
  } catch (const Error& err) {
    if (err.code() == ErrorCode::CorruptCheckpoint) throw;
    corrupt(path, err.what());
  }
}

RunOutcome run(const Hypergraph& h, const SimulationPlan& plan, const RunControl& control) {
  const std::vector<VertexIndex> sources = planned_sources(h, plan);
  const std::string input_digest = io::network_digest(h);
  const std::string digest_of_plan = plan_digest(plan);

  // Slot i holds the labels of sources[i].
  std::vector<std::optional<SourceLabels>> slots(sources.size());
  std::vector<std::string> records;
  RunOutcome outcome;

  if (control.checkpoint && std::filesystem::exists(*control.checkpoint)) {
    CheckpointState state = checkpoint_load(*control.checkpoint, h);
    if (state.input_digest != input_digest) {
      throw Error(ErrorCode::CheckpointMismatch, "checkpoint was written for a different network");
    }
    if (state.plan_digest != digest_of_plan) {
      throw Error(ErrorCode::CheckpointMismatch, "checkpoint was written for a different plan");
    }
    for (auto& s : state.completed) {
      auto it = std::lower_bound(sources.begin(), sources.end(), s.source);
      if (it == sources.end() || *it != s.source) {
        throw Error(ErrorCode::CheckpointMismatch, "checkpoint holds an unplanned source");
      }
      auto& slot = slots[static_cast<std::size_t>(it - sources.begin())];
      if (slot) throw Error(ErrorCode::CheckpointMismatch, "checkpoint repeats a source");
      records.push_back(io::source_record(h, s));
      slot = std::move(s);
      ++outcome.resumed;
    }
  }

  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    if (!slots[i]) pending.push_back(i);
  }
  const std::size_t budget =
      control.stop_after == 0 ? pending.size() : std::min(control.stop_after, pending.size());

  std::mutex sink;
  std::atomic<std::size_t> next{0};
  std::size_t since_flush = 0;
  std::exception_ptr failure;
  auto flush = [&] {
    if (control.checkpoint) {
      write_atomically(*control.checkpoint, checkpoint_body(input_digest, digest_of_plan, records));
    }
  };

  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= budget) return;
      try {
        SourceLabels labels = compute_source(h, plan, sources[pending[k]]);
        std::string record = control.checkpoint ? io::source_record(h, labels) : std::string{};
        std::lock_guard lock(sink);
        slots[pending[k]] = std::move(labels);
        ++outcome.computed;
        if (control.checkpoint) {
          records.push_back(std::move(record));
          if (plan.checkpoint_interval != 0 && ++since_flush >= plan.checkpoint_interval) {
            since_flush = 0;
            flush();
          }
        }
      } catch (...) {
        std::lock_guard lock(sink);
        if (!failure) failure = std::current_exception();
        next.store(budget);
        return;
      }
    }
  };

  const unsigned threads =
      static_cast<unsigned>(std::min<std::size_t>(plan.parallelism, std::max<std::size_t>(budget, 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  flush();

  if (outcome.resumed + outcome.computed < sources.size()) return outcome;

  DiffusionResult result;
  result.vertex_count = h.vertex_count();
  result.metrics = plan.metrics;
  result.sources.reserve(sources.size());
  for (auto& slot : slots) result.sources.push_back(std::move(*slot));
  result.summary = aggregate(result.vertex_count, result.metrics, result.sources);
  result.provenance = Provenance{input_digest, plan_json(plan), std::string(tool_version())};
  outcome.result = std::move(result);
  return outcome;
}

}  // namespace thd::sim
