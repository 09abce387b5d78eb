#include "thd/cli.hpp"

#include <sys/resource.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "thd/gen.hpp"
#include "thd/io.hpp"
#include "thd/oracle.hpp"
#include "thd/paths.hpp"
#include "thd/simulate.hpp"

namespace thd::cli {

using nlohmann::json;

namespace {

struct Common {
  bool json_output = false;
  bool lenient = false;
  int verbosity = 0;
};

struct ValidateArgs {
  std::string input;
};

struct QueryArgs {
  std::string input;
  std::string source;
  std::string target;
  std::string metric = "foremost";
  std::optional<Tick> t0;
  std::size_t max_hops = 0;
  std::optional<Tick> horizon;
};

struct SimulateArgs {
  std::string input;
  std::string output;
  std::string format = "json";
  std::vector<std::string> metrics{"foremost"};
  std::vector<std::string> source_list;
  std::optional<std::size_t> sample;
  std::uint64_t seed = 1;
  std::optional<Tick> t0;
  std::optional<Tick> horizon;
  std::size_t max_hops = 0;
  std::optional<unsigned> threads;
  std::string checkpoint;
  std::size_t checkpoint_every = 0;
  bool keep_predecessors = false;
  std::size_t stop_after = 0;
};

struct GenArgs {
  std::string output;
  std::string name = "generated";
  gen::GenParams params;
  std::string shape;
  std::size_t size = 2;
  std::string times = "increasing";
  Tick time = 1;
};

struct VerifyArgs {
  std::string input;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  gen::SmallParams small;
};

struct BenchArgs {
  std::string input;
  gen::GenParams params{12000, 100000, 2, 6, 1.0, 1'000'000, 0, 5000, 1};
  std::size_t sample = 100;
  std::string metric = "foremost";
  std::optional<unsigned> threads;
};

void add_gen_flags(CLI::App& cmd, gen::GenParams& p) {
  cmd.add_option("--vertices", p.vertices, "Vertex count")->capture_default_str();
  cmd.add_option("--edges", p.edges, "Edge count")->capture_default_str();
  cmd.add_option("--min-participants", p.min_participants)->capture_default_str();
  cmd.add_option("--max-participants", p.max_participants)->capture_default_str();
  cmd.add_option("--skew", p.skew, "Participant-size skew exponent")->capture_default_str();
  cmd.add_option("--span", p.time_span, "Edge starts are drawn from [0, span]")->capture_default_str();
  cmd.add_option("--min-interval", p.min_interval)->capture_default_str();
  cmd.add_option("--max-interval", p.max_interval)->capture_default_str();
  cmd.add_option("--seed", p.seed)->capture_default_str();
}

unsigned thread_count(const std::optional<unsigned>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("THD_THREADS")) {
    char* end = nullptr;
    const unsigned long value = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && value > 0 && value <= 1024) return static_cast<unsigned>(value);
    throw CLI::ValidationError("THD_THREADS", "must be an integer in [1, 1024]");
  }
  return 1;
}

Metric metric_flag(const std::string& name) {
  if (auto m = parse_metric(name)) return *m;
  throw CLI::ValidationError("--metric", "unknown metric '" + name + "'");
}

Hypergraph load(const std::string& path, const Common& common, io::NetworkDocument* doc_out = nullptr) {
  io::NetworkDocument doc = io::read_network_file(path, io::ReadOptions{!common.lenient});
  Hypergraph h = build_hypergraph(doc.edges);
  if (doc_out) *doc_out = std::move(doc);
  return h;
}

void write_output(const std::string& path, const std::string& bytes, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << bytes;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  file << bytes;
  if (!file) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
}

double peak_rss_mib() {
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  return static_cast<double>(usage.ru_maxrss) / 1024.0;
}

std::string walk_text(const Hypergraph& h, const TemporalWalk& walk) {
  std::ostringstream s;
  s << h.vertex_id(walk.source) << "@" << walk.departure;
  for (std::size_t i = 0; i < walk.hops.size(); ++i) {
    const EdgeIndex e = walk.hops[i].edge;
    s << " --" << h.edge_id(e) << "[" << h.start(e) << "," << h.end(e) << "]--> "
      << h.vertex_id(walk.hops[i].via) << "@" << walk.arrivals[i];
  }
  return s.str();
}

json walk_json(const Hypergraph& h, const TemporalWalk& walk) {
  json hops = json::array();
  for (std::size_t i = 0; i < walk.hops.size(); ++i) {
    hops.push_back({{"edge", h.edge_id(walk.hops[i].edge)},
                    {"via", h.vertex_id(walk.hops[i].via)},
                    {"arrival", walk.arrivals[i]}});
  }
  return {{"source", h.vertex_id(walk.source)}, {"departure", walk.departure}, {"hops", hops}};
}

int cmd_validate(const ValidateArgs& a, const Common& c, std::ostream& out) {
  io::NetworkDocument doc;
  const Hypergraph h = load(a.input, c, &doc);
  const NetworkStats s = stats(h);
  if (c.json_output) {
    json histogram = json::object();
    for (const auto& [size, count] : s.participant_histogram) histogram[std::to_string(size)] = count;
    json skipped = json::array();
    for (const auto& issue : doc.skipped) skipped.push_back({{"index", issue.index}, {"reason", issue.reason}});
    out << json{{"name", doc.name},
                {"vertices", s.vertices},
                {"edges", s.edges},
                {"participant_histogram", histogram},
                {"span", s.span ? json::array({s.span->first, s.span->second}) : json(nullptr)},
                {"records", doc.records},
                {"skipped", skipped},
                {"digest", io::network_digest(h)}}
               .dump()
        << '\n';
    return kOk;
  }
  out << s.vertices << " vertices, " << s.edges << " edges\n";
  out << "participants:";
  for (const auto& [size, count] : s.participant_histogram) out << ' ' << size << ':' << count;
  out << '\n';
  if (s.span) out << "span: [" << s.span->first << ", " << s.span->second << "]\n";
  if (!doc.skipped.empty()) {
    out << "skipped " << doc.skipped.size() << " of " << doc.records << " records\n";
    for (const auto& issue : doc.skipped) out << "  record " << issue.index << ": " << issue.reason << '\n';
  }
  return kOk;
}

int cmd_query(const QueryArgs& a, const Common& c, std::ostream& out) {
  const Metric metric = metric_flag(a.metric);
  const Hypergraph h = load(a.input, c);
  const VertexIndex source = h.vertex(a.source);
  const VertexIndex target = h.vertex(a.target);
  sim::SimulationPlan plan;
  if (a.t0) {
    plan.t0_policy = sim::T0Policy::fixed;
    plan.t0 = *a.t0;
  }
  const Tick t0 = sim::source_t0(h, plan, source);
  const DistanceLabels labels = compute_labels(h, metric, source, t0, a.max_hops, a.horizon);
  const auto value = labels.values.find(target);
  if (!value) {
    if (c.json_output) {
      out << json{{"metric", to_string(metric)}, {"source", a.source}, {"target", a.target},
                  {"t0", t0}, {"reached", false}}.dump() << '\n';
    } else {
      out << a.target << " is not reached from " << a.source << " at t0=" << t0 << '\n';
    }
    return kUnreached;
  }
  const TemporalWalk walk = reconstruct_walk(h, labels, target);
  if (c.json_output) {
    out << json{{"metric", to_string(metric)}, {"source", a.source}, {"target", a.target}, {"t0", t0},
                {"reached", true}, {"value", *value}, {"walk", walk_json(h, walk)}}.dump()
        << '\n';
  } else {
    out << to_string(metric) << ' ' << a.source << " -> " << a.target << " (t0=" << t0
        << "): " << *value << '\n';
    out << "walk: " << walk_text(h, walk) << '\n';
  }
  return kOk;
}

int cmd_simulate(const SimulateArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  sim::SimulationPlan plan;
  plan.metrics.clear();
  for (const auto& m : a.metrics) plan.metrics.push_back(metric_flag(m));
  if (!a.source_list.empty()) {
    plan.sources.mode = sim::SourceMode::list;
    plan.sources.ids = a.source_list;
  } else if (a.sample) {
    plan.sources.mode = sim::SourceMode::sample;
    plan.sources.sample_size = *a.sample;
    plan.sources.seed = a.seed;
  }
  if (a.t0) {
    plan.t0_policy = sim::T0Policy::fixed;
    plan.t0 = *a.t0;
  }
  plan.horizon = a.horizon;
  plan.max_hops = a.max_hops;
  plan.keep_predecessors = a.keep_predecessors;
  plan.parallelism = thread_count(a.threads);
  plan.checkpoint_interval = a.checkpoint_every;
  const auto format = a.format == "csv" ? io::ResultFormat::csv : io::ResultFormat::json;

  const Hypergraph h = load(a.input, c);
  sim::RunControl control;
  if (!a.checkpoint.empty()) control.checkpoint = a.checkpoint;
  control.stop_after = a.stop_after;

  const auto started = std::chrono::steady_clock::now();
  const sim::RunOutcome outcome = sim::run(h, plan, control);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  if (!outcome.result) {
    if (c.json_output) {
      out << json{{"complete", false}, {"computed", outcome.computed}, {"resumed", outcome.resumed},
                  {"checkpoint", a.checkpoint}}.dump() << '\n';
    } else {
      out << "stopped after " << outcome.computed << " sources (" << outcome.resumed
          << " resumed); progress saved to " << a.checkpoint << '\n';
    }
    return kOk;
  }
  const std::string bytes = io::results_string(h, *outcome.result, format);
  const bool to_stdout = a.output.empty() || a.output == "-";
  write_output(a.output, bytes, out);
  std::ostream& report = to_stdout ? err : out;
  if (c.json_output) {
    report << json{{"complete", true}, {"sources", outcome.result->sources.size()},
                   {"computed", outcome.computed}, {"resumed", outcome.resumed},
                   {"seconds", seconds}, {"output", a.output}}.dump() << '\n';
  } else {
    report << "simulated " << outcome.result->sources.size() << " sources (" << outcome.computed
           << " computed, " << outcome.resumed << " resumed) in " << seconds << " s";
    if (!to_stdout) report << "; wrote " << a.output;
    report << '\n';
  }
  return kOk;
}

int cmd_gen(const GenArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  Hypergraph h;
  if (!a.shape.empty()) {
    gen::StructuredParams p;
    p.shape = a.shape == "chain" ? gen::Shape::chain : a.shape == "star" ? gen::Shape::star : gen::Shape::clique;
    p.size = a.size;
    p.times = a.times == "increasing"   ? gen::TimePattern::increasing
              : a.times == "decreasing" ? gen::TimePattern::decreasing
                                        : gen::TimePattern::constant;
    p.time = a.time;
    h = gen::gen_structured(p);
  } else {
    h = gen::gen_random(a.params);
  }
  write_output(a.output, io::canonical_network(h, a.name, "tick"), out);
  if (!a.output.empty() && a.output != "-") {
    const NetworkStats s = stats(h);
    if (c.json_output) {
      out << json{{"vertices", s.vertices}, {"edges", s.edges}, {"output", a.output}}.dump() << '\n';
    } else {
      out << "wrote " << s.vertices << " vertices, " << s.edges << " edges to " << a.output << '\n';
    }
  }
  (void)err;
  return kOk;
}

int cmd_verify(const VerifyArgs& a, const Common& c, std::ostream& out) {
  oracle::DifferentialReport report;
  const auto started = std::chrono::steady_clock::now();
  auto departures_for = [](const Hypergraph& h) {
    const NetworkStats s = stats(h);
    if (!s.span) return std::vector<Tick>{0};
    return std::vector<Tick>{s.span->first, s.span->first + (s.span->second - s.span->first) / 2};
  };
  if (!a.input.empty()) {
    const Hypergraph h = load(a.input, c);
    if (h.edge_count() > 16) {
      throw Error(ErrorCode::ParamsInvalid, "verify enumerates walks; inputs are limited to 16 edges");
    }
    oracle::differential_check(h, departures_for(h), report);
  } else {
    gen::Rng root(a.seed);
    for (std::size_t trial = 0; trial < a.trials; ++trial) {
      gen::Rng rng = root.split(trial);
      const Hypergraph h = build_hypergraph(gen::small_random_records(rng, a.small));
      oracle::differential_check(h, departures_for(h), report);
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  if (c.json_output) {
    out << json{{"graphs", report.graphs}, {"runs", report.runs}, {"comparisons", report.comparisons},
                {"witnesses", report.witnesses}, {"mismatches", report.mismatches},
                {"witness_violations", report.witness_violations}, {"seconds", seconds}}.dump()
        << '\n';
  } else {
    out << report.graphs << " graphs, " << report.runs << " source runs, " << report.comparisons
        << " label comparisons, " << report.witnesses << " witnesses\n";
    out << report.mismatches.size() << " mismatches, " << report.witness_violations.size()
        << " witness violations\n";
    for (const auto& m : report.mismatches) out << "  mismatch: " << m << '\n';
    for (const auto& m : report.witness_violations) out << "  witness: " << m << '\n';
  }
  return report.clean() ? kOk : kInternal;
}

int cmd_bench(const BenchArgs& a, const Common& c, std::ostream& out) {
  const Metric metric = metric_flag(a.metric);
  auto clock = [] { return std::chrono::steady_clock::now(); };
  auto since = [&](auto t) { return std::chrono::duration<double>(clock() - t).count(); };

  const auto build_started = clock();
  const Hypergraph h = a.input.empty() ? gen::gen_random(a.params) : load(a.input, c);
  const double build_seconds = since(build_started);

  sim::SimulationPlan plan;
  plan.metrics = {metric};
  plan.sources.mode = sim::SourceMode::sample;
  plan.sources.sample_size = std::min(a.sample, h.vertex_count());
  plan.sources.seed = a.params.seed;
  plan.parallelism = thread_count(a.threads);

  const auto run_started = clock();
  const sim::RunOutcome outcome = sim::run(h, plan);
  const double run_seconds = since(run_started);
  const auto sources = outcome.result->sources.size();
  const double rate = run_seconds > 0 ? static_cast<double>(sources) / run_seconds : 0.0;

  if (c.json_output) {
    out << json{{"vertices", h.vertex_count()}, {"edges", h.edge_count()}, {"metric", to_string(metric)},
                {"sources", sources}, {"threads", plan.parallelism}, {"build_seconds", build_seconds},
                {"run_seconds", run_seconds}, {"sources_per_second", rate},
                {"peak_rss_mib", peak_rss_mib()}}.dump()
        << '\n';
  } else {
    out << h.vertex_count() << " vertices, " << h.edge_count() << " edges (built in " << build_seconds
        << " s)\n";
    out << sources << ' ' << to_string(metric) << " sources in " << run_seconds << " s: " << rate
        << " sources/s on " << plan.parallelism << " thread(s)\n";
    out << "peak memory: " << peak_rss_mib() << " MiB\n";
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Temporal hypergraph diffusion: minimal temporal paths over time-varying hypergraphs"};
  app.name(args.empty() ? "thd" : args.front());
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_flag("--json", common.json_output, "Machine-readable output");
  app.add_flag("--lenient", common.lenient, "Skip invalid records instead of failing");
  app.add_flag("-v,--verbose", common.verbosity, "Log verbosity");

  const std::vector<std::string> metric_names{"foremost", "shortest", "fastest"};

  ValidateArgs validate_args;
  auto* validate = app.add_subcommand("validate", "Parse a network, build it and print statistics");
  validate->add_option("input", validate_args.input, "Network JSON file")->required()->check(CLI::ExistingFile);

  QueryArgs query_args;
  auto* query = app.add_subcommand("query", "Minimal temporal distance and witness walk between two vertices");
  query->add_option("input", query_args.input)->required()->check(CLI::ExistingFile);
  query->add_option("--source", query_args.source)->required();
  query->add_option("--target", query_args.target)->required();
  query->add_option("--metric", query_args.metric)->check(CLI::IsMember(metric_names))->capture_default_str();
  query->add_option("--t0", query_args.t0, "Departure (default: earliest incident start of the source)");
  query->add_option("--max-hops", query_args.max_hops, "Hop budget for shortest (0: |V|)");
  query->add_option("--horizon", query_args.horizon);

  SimulateArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "Minimal temporal distances from many sources");
  simulate->add_option("input", sim_args.input)->required()->check(CLI::ExistingFile);
  simulate->add_option("-o,--output", sim_args.output, "Result file (default: stdout)");
  simulate->add_option("--format", sim_args.format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  simulate->add_option("--metric", sim_args.metrics, "Metrics to compute")
      ->delimiter(',')
      ->check(CLI::IsMember(metric_names));
  auto* list_opt = simulate->add_option("--sources", sim_args.source_list, "Explicit source ids")->delimiter(',');
  auto* sample_opt = simulate->add_option("--sample", sim_args.sample, "Seeded sample of this many sources");
  list_opt->excludes(sample_opt);
  simulate->add_option("--seed", sim_args.seed, "Sampling seed")->capture_default_str();
  simulate->add_option("--t0", sim_args.t0, "Fixed departure for every source");
  simulate->add_option("--horizon", sim_args.horizon);
  simulate->add_option("--max-hops", sim_args.max_hops);
  simulate->add_option("--threads", sim_args.threads, "Worker threads (default: THD_THREADS or 1)")
      ->check(CLI::Range(1u, 1024u));
  simulate->add_option("--checkpoint", sim_args.checkpoint, "Checkpoint file for resumable runs");
  simulate->add_option("--checkpoint-every", sim_args.checkpoint_every, "Sources per checkpoint flush");
  simulate->add_flag("--keep-predecessors", sim_args.keep_predecessors);
  simulate->add_option("--stop-after", sim_args.stop_after, "Stop after computing this many sources");

  GenArgs gen_args;
  auto* generate = app.add_subcommand("gen", "Generate a seeded synthetic network");
  generate->add_option("-o,--output", gen_args.output, "Network file (default: stdout)");
  generate->add_option("--name", gen_args.name)->capture_default_str();
  add_gen_flags(*generate, gen_args.params);
  generate->add_option("--shape", gen_args.shape, "Structured fixture instead of a random network")
      ->check(CLI::IsMember({"chain", "star", "clique"}));
  generate->add_option("--size", gen_args.size)->capture_default_str();
  generate->add_option("--times", gen_args.times)
      ->check(CLI::IsMember({"increasing", "decreasing", "constant"}))
      ->capture_default_str();
  generate->add_option("--time", gen_args.time)->capture_default_str();

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Differential check of the path algorithms against walk enumeration");
  verify->add_option("--input", verify_args.input, "Small network to check instead of random trials")
      ->check(CLI::ExistingFile);
  verify->add_option("--trials", verify_args.trials)->capture_default_str();
  verify->add_option("--seed", verify_args.seed)->capture_default_str();
  verify->add_option("--max-vertices", verify_args.small.max_vertices)->capture_default_str();
  verify->add_option("--max-edges", verify_args.small.max_edges)->capture_default_str();
  verify->add_option("--max-tick", verify_args.small.max_tick)->capture_default_str();

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Throughput of the per-source label computation");
  bench->add_option("--input", bench_args.input, "Network file (default: generated)")->check(CLI::ExistingFile);
  add_gen_flags(*bench, bench_args.params);
  bench->add_option("--sample", bench_args.sample)->capture_default_str();
  bench->add_option("--metric", bench_args.metric)->check(CLI::IsMember(metric_names))->capture_default_str();
  bench->add_option("--threads", bench_args.threads)->check(CLI::Range(1u, 1024u));

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("thd");

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*validate) return cmd_validate(validate_args, common, out);
    if (*query) return cmd_query(query_args, common, out);
    if (*simulate) return cmd_simulate(sim_args, common, out, err);
    if (*generate) return cmd_gen(gen_args, common, out, err);
    if (*verify) return cmd_verify(verify_args, common, out);
    if (*bench) return cmd_bench(bench_args, common, out);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

}  // namespace thd::cli
