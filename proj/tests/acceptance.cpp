// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Pass criterion numbers as arguments to run a subset.

#include <sys/resource.h>
#include <unistd.h>

#include <array>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support/fixtures.hpp"
#include "support/properties.hpp"
#include "thd/cli.hpp"
#include "thd/core.hpp"
#include "thd/digest.hpp"
#include "thd/gen.hpp"
#include "thd/io.hpp"
#include "thd/oracle.hpp"
#include "thd/paths.hpp"
#include "thd/simulate.hpp"

namespace fs = std::filesystem;
using namespace thd;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double peak_rss_mib() {
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  return static_cast<double>(usage.ru_maxrss) / 1024.0;
}

std::string fixed(double value, int digits = 1) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << value;
  return s.str();
}

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

int cli(std::vector<std::string> args, std::string* out = nullptr) {
  args.insert(args.begin(), "thd");
  std::ostringstream o, e;
  const int code = cli::run(args, o, e);
  if (out) *out = o.str();
  if (code != 0) std::cerr << "  thd exited " << code << ": " << e.str();
  return code;
}

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("thd_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string first(const std::vector<std::string>& items) { return items.empty() ? "" : "; first: " + items[0]; }

// -- 1 and 2: differential check against walk enumeration ---------------------

oracle::DifferentialReport differential;
double differential_seconds = 0;
bool differential_done = false;

void run_differential() {
  if (differential_done) return;
  const auto started = Clock::now();
  const gen::SmallParams bounds{8, 12, 4, 20};
  const gen::Rng root(20240601);
  for (std::uint64_t trial = 0; trial < 1000; ++trial) {
    gen::Rng rng = root.split(trial);
    const Hypergraph h = build_hypergraph(gen::small_random_records(rng, bounds));
    // One departure before every edge and one inside the time range.
    const NetworkStats s = stats(h);
    std::vector<Tick> departures{0};
    if (s.span) departures.push_back(s.span->first + (s.span->second - s.span->first) / 2);
    oracle::differential_check(h, departures, differential);
  }
  differential_seconds = seconds_since(started);
  differential_done = true;
}

Verdict criterion_oracle() {
  run_differential();
  const auto& r = differential;
  const bool pass = r.graphs == 1000 && r.mismatches.empty() && differential_seconds < 60.0;
  return {pass, std::to_string(r.graphs) + " graphs, " + std::to_string(r.runs) + " source runs, " +
                    std::to_string(r.comparisons) + " label comparisons, " + std::to_string(r.mismatches.size()) +
                    " mismatches in " + fixed(differential_seconds) + " s (limit 60 s)" + first(r.mismatches)};
}

Verdict criterion_witness() {
  run_differential();
  const auto& r = differential;
  const bool pass = r.witnesses > 0 && r.witness_violations.empty();
  return {pass, std::to_string(r.witnesses) + " reconstructed walks, " + std::to_string(r.witness_violations.size()) +
                    " violations" + first(r.witness_violations)};
}

// -- 3: hand-derived fixture matrix ---------------------------------------------

struct Expectation {
  const char* graph;
  const char* source;
  Tick t0;
  Metric metric;
  std::map<std::string, std::int64_t> values;
};

std::vector<Expectation> fixture_matrix() {
  using M = Metric;
  return {
      // G1 = { e1:{a,b},[1,3]; e2:{b,c},[2,5]; e3:{a,c,d},[4,4] }
      {"G1", "a", 0, M::foremost, {{"a", 0}, {"b", 1}, {"c", 2}, {"d", 4}}},
      {"G1", "a", 0, M::shortest, {{"a", 0}, {"b", 1}, {"c", 1}, {"d", 1}}},
      {"G1", "a", 0, M::fastest, {{"a", 0}, {"b", 0}, {"c", 0}, {"d", 0}}},
      {"G1", "b", 0, M::foremost, {{"a", 1}, {"b", 0}, {"c", 2}, {"d", 4}}},
      {"G1", "b", 0, M::shortest, {{"a", 1}, {"b", 0}, {"c", 1}, {"d", 2}}},
      {"G1", "b", 0, M::fastest, {{"a", 0}, {"b", 0}, {"c", 0}, {"d", 0}}},
      {"G1", "c", 0, M::foremost, {{"a", 2}, {"b", 2}, {"c", 0}, {"d", 4}}},
      {"G1", "c", 0, M::shortest, {{"a", 1}, {"b", 1}, {"c", 0}, {"d", 1}}},
      {"G1", "c", 0, M::fastest, {{"a", 0}, {"b", 0}, {"c", 0}, {"d", 0}}},
      {"G1", "d", 0, M::foremost, {{"a", 4}, {"b", 4}, {"c", 4}, {"d", 0}}},
      {"G1", "d", 0, M::shortest, {{"a", 1}, {"b", 2}, {"c", 1}, {"d", 0}}},
      {"G1", "d", 0, M::fastest, {{"a", 0}, {"b", 0}, {"c", 0}, {"d", 0}}},
      // e1 has closed by 4, so a cannot leave after t0 = 4 except through e3.
      {"G1", "a", 4, M::foremost, {{"a", 4}, {"b", 4}, {"c", 4}, {"d", 4}}},
      {"G1", "a", 4, M::shortest, {{"a", 0}, {"b", 2}, {"c", 1}, {"d", 1}}},
      {"G1", "b", 5, M::foremost, {{"b", 5}, {"c", 5}}},
      {"G1", "b", 5, M::fastest, {{"b", 0}, {"c", 0}}},
      // G2 = { e4:{a,b},[0,0]; e5:{b,d},[5,5] }
      {"G2", "a", 0, M::foremost, {{"a", 0}, {"b", 0}, {"d", 5}}},
      {"G2", "a", 0, M::shortest, {{"a", 0}, {"b", 1}, {"d", 2}}},
      {"G2", "a", 0, M::fastest, {{"a", 0}, {"b", 0}, {"d", 5}}},
      {"G2", "b", 0, M::foremost, {{"a", 0}, {"b", 0}, {"d", 5}}},
      {"G2", "b", 0, M::shortest, {{"a", 1}, {"b", 0}, {"d", 1}}},
      {"G2", "b", 0, M::fastest, {{"a", 0}, {"b", 0}, {"d", 0}}},
      {"G2", "d", 0, M::foremost, {{"b", 5}, {"d", 0}}},
      {"G2", "d", 0, M::shortest, {{"b", 1}, {"d", 0}}},
      {"G2", "d", 0, M::fastest, {{"b", 0}, {"d", 0}}},
      {"G2", "a", 1, M::foremost, {{"a", 1}}},
      {"G2", "a", 1, M::fastest, {{"a", 0}}},
  };
}

Verdict criterion_fixtures() {
  const std::map<std::string, Hypergraph> graphs{{"G1", testing::g1()}, {"G2", testing::g2()}};
  std::vector<std::string> failures;
  std::size_t checked = 0;
  for (const auto& x : fixture_matrix()) {
    const Hypergraph& h = graphs.at(x.graph);
    const VertexIndex s = h.vertex(x.source);
    const std::string where = std::string(x.graph) + " " + x.source + "@" + std::to_string(x.t0) + " " +
                              std::string(to_string(x.metric));
    const DistanceLabels labels = compute_labels(h, x.metric, s, x.t0);
    if (testing::by_id(h, labels.values) != x.values) failures.push_back(where + ": algorithm differs");
    const auto truth = oracle::oracle_distances(h, s, x.t0, h.vertex_count() + h.edge_count());
    if (testing::by_id(h, truth.values(x.metric)) != x.values) failures.push_back(where + ": oracle differs");
    for (const auto& [v, value] : labels.values.entries()) {
      const TemporalWalk walk = reconstruct_walk(h, labels, v);
      if (walk_violation(h, walk) || walk_value(walk, x.metric) != value) {
        failures.push_back(where + ": witness for " + h.vertex_id(v));
      }
    }
    ++checked;
  }
  // Every source of both fixtures is covered for every metric at t0 = 0.
  std::set<std::string> covered;
  for (const auto& x : fixture_matrix()) {
    if (x.t0 == 0) covered.insert(std::string(x.graph) + x.source + std::string(to_string(x.metric)));
  }
  std::size_t expected_cells = 0;
  for (const auto& [name, h] : graphs) {
    for (VertexIndex v = 0; v < h.vertex_count(); ++v) {
      for (Metric m : {Metric::foremost, Metric::shortest, Metric::fastest}) {
        ++expected_cells;
        if (!covered.count(name + h.vertex_id(v) + std::string(to_string(m)))) {
          failures.push_back("missing " + name + " " + h.vertex_id(v) + " " + std::string(to_string(m)));
        }
      }
    }
  }
  return {failures.empty(), std::to_string(checked) + " (graph, source, t0, metric) rows, " +
                                std::to_string(expected_cells) + " t0=0 cells covered, " +
                                std::to_string(failures.size()) + " disagreements" + first(failures)};
}

// -- 4: determinism across thread counts and interrupted runs -----------------

Verdict criterion_determinism() {
  const fs::path dir = scratch_dir() / "determinism";
  fs::create_directories(dir);
  const std::string net = (dir / "net.json").string();
  if (cli({"gen", "-o", net, "--vertices", "2000", "--edges", "10000", "--seed", "4242"}) != 0) {
    return {false, "generation failed"};
  }
  const std::vector<std::string> common{"simulate", net, "--metric", "foremost,shortest,fastest"};
  auto simulate = [&](std::vector<std::string> extra) {
    std::vector<std::string> args = common;
    args.insert(args.end(), extra.begin(), extra.end());
    return cli(args);
  };

  std::map<std::string, std::string> outputs;
  for (const char* threads : {"1", "2", "8"}) {
    const fs::path out = dir / (std::string("threads_") + threads + ".json");
    if (simulate({"-o", out.string(), "--threads", threads}) != 0) return {false, "simulate failed"};
    outputs[std::string("threads=") + threads] = slurp(out);
  }

  // Two interruptions at different thread counts, then completion.
  const std::string ckpt = (dir / "run.ckpt").string();
  const fs::path resumed = dir / "resumed.json";
  if (simulate({"-o", resumed.string(), "--checkpoint", ckpt, "--checkpoint-every", "64", "--threads", "2",
                "--stop-after", "700"}) != 0 ||
      simulate({"-o", resumed.string(), "--checkpoint", ckpt, "--checkpoint-every", "100", "--threads", "8",
                "--stop-after", "650"}) != 0 ||
      simulate({"-o", resumed.string(), "--checkpoint", ckpt, "--threads", "1"}) != 0) {
    return {false, "interrupted simulate failed"};
  }
  outputs["interrupted twice"] = slurp(resumed);

  const std::string& reference = outputs.at("threads=1");
  std::vector<std::string> differing;
  for (const auto& [name, bytes] : outputs) {
    if (bytes != reference) differing.push_back(name);
  }
  const bool pass = differing.empty() && reference.size() > 1000;
  std::string detail = "2000 vertices, 10000 edges, all sources x 3 metrics; " + std::to_string(outputs.size()) +
                       " result files of " + std::to_string(reference.size()) + " bytes, sha256 " +
                       sha256_hex(reference).substr(0, 16);
  if (!differing.empty()) detail += "; differing: " + differing.front();
  return {pass, detail};
}

// -- 5: scale twin --------------------------------------------------------------

Verdict criterion_scale() {
  constexpr std::size_t kVertices = 37103;
  constexpr std::size_t kEdges = 309740;
  const auto started = Clock::now();
  gen::GenParams p;
  p.vertices = kVertices;
  p.edges = kEdges;
  p.min_participants = 2;
  p.max_participants = 6;
  p.time_span = 1'000'000;
  p.max_interval = 5000;
  p.seed = 37103;

  // Generate, serialize, then ingest through the streaming reader as a
  // user-supplied file would be.
  const fs::path file = scratch_dir() / "twin.json";
  {
    std::ofstream out(file, std::ios::binary);
    io::write_network(out, gen::gen_random(p), "twin", "second");
  }
  const double write_seconds = seconds_since(started);
  const auto ingest = Clock::now();
  const io::NetworkDocument doc = io::read_network_file(file);
  const Hypergraph h = build_hypergraph(doc.edges);
  const NetworkStats s = stats(h);
  const double ingest_seconds = seconds_since(ingest);
  fs::remove(file);
  if (s.vertices != kVertices || s.edges != kEdges) {
    return {false, "twin has " + std::to_string(s.vertices) + " vertices, " + std::to_string(s.edges) + " edges"};
  }

  const auto simulate = Clock::now();
  sim::SimulationPlan plan;
  plan.sources.mode = sim::SourceMode::sample;
  plan.sources.sample_size = 100;
  plan.sources.seed = 7;
  const auto outcome = sim::run(h, plan);
  const double simulate_seconds = seconds_since(simulate);
  const double total = seconds_since(started);
  const double rss = peak_rss_mib();

  std::size_t reached = 0;
  bool labelled = outcome.result && outcome.result->sources.size() == 100;
  if (labelled) {
    for (const auto& src : outcome.result->sources) {
      labelled = labelled && src.labels.size() == 1 && src.labels[0].values.at(src.source) == src.t0;
      reached += src.labels[0].values.reached();
    }
  }
  const bool pass = labelled && total < 600.0 && rss < 4096.0;
  return {pass, std::to_string(kVertices) + " vertices, " + std::to_string(kEdges) + " edges; generate+write " +
                    fixed(write_seconds) + " s, read+build+validate " + fixed(ingest_seconds) +
                    " s, 100-source foremost " + fixed(simulate_seconds) + " s (" + std::to_string(reached) +
                    " labels); total " + fixed(total) + " s (limit 600 s), peak RSS " + fixed(rss, 0) +
                    " MiB (limit 4096 MiB)"};
}

// -- 6: fuzzing ---------------------------------------------------------------

class ByteMutator {
 public:
  explicit ByteMutator(std::uint64_t seed) : rng_(seed) {}

  std::string mutate(const std::vector<std::string>& corpus) {
    std::string s = corpus[pick(corpus.size())];
    const auto rounds = 1 + pick(4);
    for (std::size_t i = 0; i < rounds; ++i) apply(s, corpus);
    return s;
  }

 private:
  std::size_t pick(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng_.uniform(0, n - 1)); }

  void apply(std::string& s, const std::vector<std::string>& corpus) {
    static const std::array<const char*, 24> tokens{
        "-9223372036854775808", "9223372036854775807", "4611686018427387904", "-4611686018427387905",
        "1e400", "-0", "0.5", "null", "true", "[]", "{}", "\"\"", "\"\\u0000\"", "\"\\ud800\"",
        "\"2023-02-29T00:00:00Z\"", "\"9999-12-31T23:59:59Z\"", "\"1970-01-01T00:00:00Z\"",
        "\"0000-01-01T00:00:00Z\"", "\"2024-01-01T00:00:60Z\"", ",", ":", "\"participants\"",
        "\"edges\"", "[[[[[[[[[[[[[[[["};
    static constexpr char structural[] = "{}[]\",:0123456789-eE.+tfn\\ ";
    const std::size_t at = pick(s.size() + 1);
    switch (pick(8)) {
      case 0:
        if (!s.empty()) s[std::min(at, s.size() - 1)] ^= static_cast<char>(1u << pick(8));
        break;
      case 1:
        if (!s.empty()) s[std::min(at, s.size() - 1)] = structural[pick(sizeof(structural) - 1)];
        break;
      case 2: s.erase(at, 1 + pick(16)); break;
      case 3: {
        const std::size_t from = pick(s.size() + 1);
        s.insert(at, s.substr(from, 1 + pick(64)));
        break;
      }
      case 4: s.insert(at, tokens[pick(tokens.size())]); break;
      case 5: {
        const std::string& other = corpus[pick(corpus.size())];
        s = s.substr(0, at) + other.substr(pick(other.size() + 1));
        break;
      }
      case 6: s.resize(at); break;
      default: {
        // Replace a run of digits with an interesting number.
        const std::size_t d = s.find_first_of("0123456789", at);
        if (d == std::string::npos) break;
        const std::size_t e = s.find_first_not_of("0123456789", d);
        s.replace(d, (e == std::string::npos ? s.size() : e) - d, tokens[pick(4)]);
      }
    }
  }

  gen::Rng rng_;
};

std::vector<std::string> read_corpus() {
  std::vector<std::string> corpus;
  gen::Rng rng(99);
  for (int i = 0; i < 24; ++i) {
    corpus.push_back(io::canonical_network(
        build_hypergraph(gen::small_random_records(rng, gen::SmallParams{6, 6, 4, 30})), "n" + std::to_string(i),
        "tick"));
  }
  corpus.push_back(io::canonical_network(testing::g1(), "G1", "tick"));
  corpus.push_back(R"({"name":"iso","time_unit":"second","edges":[
    {"id":"m1","participants":["ann","bob"],"start":"2023-03-01T10:00:00Z","end":"2023-03-01T10:30:00Z"},
    {"id":"m2","participants":["bob","cy","dee"],"start":"2023-03-01T10:15:00Z","end":"2023-03-02T00:00:00Z"}]})");
  corpus.push_back(R"({"meta":{"source":["x",{"y":[1,2]}]},"edges":[
    {"id":"a","participants":["p","q"],"start":-5,"end":5,"weight":{"w":[0.5]}},
    {"id":"b","participants":["q","r"],"start":5,"end":5}],"extra":null})");
  return corpus;
}

struct FuzzTally {
  std::size_t executions = 0;
  std::size_t accepted = 0;
  double slowest = 0;
  std::vector<std::string> violations;

  void violation(std::string what) {
    if (violations.size() < 5) violations.push_back(std::move(what));
    else violations.push_back({});
  }
};

void fuzz_read_one(const std::string& input, bool strict, FuzzTally& tally) {
  io::NetworkDocument doc;
  try {
    doc = io::read_network(input, io::ReadOptions{strict});
  } catch (const Error&) {
    return;
  }
  ++tally.accepted;
  if (doc.edges.size() + doc.skipped.size() != doc.records || (strict && !doc.skipped.empty())) {
    tally.violation("record accounting");
    return;
  }
  // Anything the reader accepts must build, and its canonical form must
  // read back to the same network.
  const Hypergraph h = build_hypergraph(doc.edges);
  const std::string canonical = io::canonical_network(h, doc.name, doc.time_unit);
  const auto again = io::read_network(canonical);
  if (again.name != doc.name || again.time_unit != doc.time_unit || !(build_hypergraph(again.edges) == h)) {
    tally.violation("canonical round trip");
  }
}

FuzzTally fuzz_reader(std::size_t executions) {
  FuzzTally tally;
  const auto corpus = read_corpus();
  ByteMutator mutator(0xF00D);
  for (std::size_t i = 0; i < executions; ++i) {
    const std::string input = mutator.mutate(corpus);
    const auto started = Clock::now();
    try {
      fuzz_read_one(input, i % 2 == 0, tally);
    } catch (const std::exception& e) {
      tally.violation(std::string("unexpected exception: ") + e.what());
    }
    tally.slowest = std::max(tally.slowest, seconds_since(started));
    ++tally.executions;
  }
  return tally;
}

std::vector<TemporalHyperedge> mutate_records(gen::Rng& rng) {
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1)); };
  const gen::SmallParams bounds{2 + pick(8), 1 + pick(12), 2 + pick(4), rng.unit() < 0.2 ? kTickLimit : 40};
  auto records = gen::small_random_records(rng, bounds);
  const std::array<Tick, 9> ticks{0, -1, 1, kTickLimit, -kTickLimit, kTickLimit + 1, -kTickLimit - 1,
                                  std::numeric_limits<Tick>::max(), std::numeric_limits<Tick>::min()};
  const auto rounds = pick(4);
  for (std::size_t i = 0; i < rounds && !records.empty(); ++i) {
    auto& r = records[pick(records.size())];
    const std::size_t kind = pick(9);
    if (r.participants.empty() && (kind == 5 || kind == 7)) continue;
    switch (kind) {
      case 0: r.start = ticks[pick(ticks.size())]; break;
      case 1: r.end = ticks[pick(ticks.size())]; break;
      case 2: std::swap(r.start, r.end); break;
      case 3: records.push_back(records[pick(records.size())]); break;
      case 4: r.id = records[pick(records.size())].id; break;
      case 5: r.participants.push_back(r.participants[pick(r.participants.size())]); break;
      case 6: r.participants.resize(pick(2)); break;
      case 7: r.participants[pick(r.participants.size())] = pick(2) ? "" : std::string("\xff\0x", 3); break;
      default: records.erase(records.begin() + static_cast<std::ptrdiff_t>(pick(records.size()))); break;
    }
  }
  return records;
}

void fuzz_paths_one(gen::Rng& rng, FuzzTally& tally) {
  const auto records = mutate_records(rng);
  Hypergraph h;
  try {
    h = build_hypergraph(records);
  } catch (const Error&) {
    return;
  }
  ++tally.accepted;
  if (h.edge_count() != records.size()) tally.violation("edge count");
  for (VertexIndex v = 0; v < h.vertex_count(); ++v) {
    const auto inc = h.incidence(v);
    if (std::vector<EdgeIndex>(inc.begin(), inc.end()) != testing::naive_incidence(h, v)) {
      tally.violation("incidence order");
    }
  }
  if (h.vertex_count() == 0) return;
  const auto source = static_cast<VertexIndex>(rng.uniform(0, h.vertex_count() - 1));
  Tick t0 = rng.uniform(-50, 50);
  if (h.edge_count() > 0 && rng.unit() < 0.5) {
    const auto e = static_cast<EdgeIndex>(rng.uniform(0, h.edge_count() - 1));
    t0 = rng.unit() < 0.5 ? h.start(e) : h.end(e);
  }
  const DistanceLabels labels = foremost(h, source, t0);
  if (labels.values.find(source) != t0) tally.violation("source label");
  for (const auto& [v, arrival] : labels.values.entries()) {
    const TemporalWalk walk = reconstruct_walk(h, labels, v);
    if (arrival < t0 || walk_violation(h, walk) || walk.departure != t0 || walk.final_arrival() != arrival) {
      tally.violation("foremost witness for " + h.vertex_id(v));
    }
  }
  // Small enough to enumerate: compare against the oracle as well.
  if (h.edge_count() <= 8) {
    const auto truth = oracle::oracle_distances(h, source, t0, h.vertex_count(), oracle::WalkSpace::simple);
    if (testing::by_id(h, labels.values) != testing::by_id(h, truth.foremost)) tally.violation("oracle disagrees");
  }
}

FuzzTally fuzz_paths(std::size_t executions) {
  FuzzTally tally;
  const gen::Rng root(0xBEEF);
  for (std::size_t i = 0; i < executions; ++i) {
    gen::Rng rng = root.split(i);
    const auto started = Clock::now();
    try {
      fuzz_paths_one(rng, tally);
    } catch (const std::exception& e) {
      tally.violation(std::string("unexpected exception: ") + e.what());
    }
    tally.slowest = std::max(tally.slowest, seconds_since(started));
    ++tally.executions;
  }
  return tally;
}

Verdict criterion_fuzz() {
  const auto started = Clock::now();
  const FuzzTally reader = fuzz_reader(1'000'000);
  const FuzzTally paths = fuzz_paths(100'000);
  auto describe = [](const char* name, const FuzzTally& t) {
    return std::string(name) + ": " + std::to_string(t.executions) + " executions, " + std::to_string(t.accepted) +
           " accepted, slowest " + fixed(t.slowest * 1000, 2) + " ms, " + std::to_string(t.violations.size()) +
           " violations" + first(t.violations);
  };
  const bool pass = reader.executions == 1'000'000 && paths.executions == 100'000 && reader.violations.empty() &&
                    paths.violations.empty() && reader.slowest < 10.0 && paths.slowest < 10.0 &&
                    reader.accepted > 0 && paths.accepted > 0;
  return {pass, describe("read_network", reader) + "; " + describe("build_hypergraph+foremost", paths) + " (" +
                    fixed(seconds_since(started)) + " s)"};
}

// -- 7: invariant suite ---------------------------------------------------------

Verdict criterion_invariants() {
  std::vector<std::string> failures;
  std::string names;
  for (const auto& property : testing::properties()) {
    std::size_t violations = 0;
    for (std::uint64_t i = 0; i < 500; ++i) {
      std::optional<std::string> v;
      try {
        v = property.check(1'000'000 + i);
      } catch (const std::exception& e) {
        v = std::string("exception: ") + e.what();
      }
      if (v) {
        ++violations;
        if (failures.size() < 3) failures.push_back(std::string(property.name) + ": " + *v);
      }
    }
    names += (names.empty() ? "" : ", ") + std::string(property.name) + "=" + std::to_string(violations);
  }
  return {failures.empty(), "500 instances each; violations " + names + first(failures)};
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int number;
    const char* name;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "oracle equivalence", criterion_oracle},   {2, "witness soundness", criterion_witness},
      {3, "fixture matrix", criterion_fixtures},     {4, "determinism", criterion_determinism},
      {5, "scale twin", criterion_scale},            {6, "fuzz robustness", criterion_fuzz},
      {7, "invariant suite", criterion_invariants},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  bool all = true;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.number)) continue;
    const auto started = Clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("aborted: ") + e.what()};
    }
    all = all && v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << c.number << " (" << c.name << ", "
              << fixed(seconds_since(started)) << " s): " << v.detail << std::endl;
  }
  fs::remove_all(scratch_dir());
  return all ? 0 : 1;
}
