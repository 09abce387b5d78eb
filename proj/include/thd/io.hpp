#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thd/core.hpp"
#include "thd/simulate.hpp"

namespace thd::io {

enum class TimeEncoding { none, ticks, calendar };

struct RecordIssue {
  std::size_t index = 0;
  std::string reason;
};

/// A parsed network file. `skipped` is only populated in lenient mode.
struct NetworkDocument {
  std::string name;
  std::string time_unit;
  std::vector<TemporalHyperedge> edges;
  TimeEncoding encoding = TimeEncoding::none;
  std::size_t records = 0;
  std::vector<RecordIssue> skipped;
};

struct ReadOptions {
  /// Strict aborts on the first invalid record; lenient skips and counts.
  bool strict = true;
};

/// Streaming parse of a network document:
///
///   {"schema": 1, "name": "...", "time_unit": "...",
///    "edges": [{"id": "...", "participants": ["...", ...],
///               "start": <tick | "YYYY-MM-DDTHH:MM:SS[.fff]Z">, "end": ...}]}
///
/// "schema" is optional and must be 1 when present; unknown keys are ignored.
/// Calendar times become milliseconds since the epoch. Errors: MalformedJson,
/// MixedTimeEncodings, RecordError (strict mode).
NetworkDocument read_network(std::istream& in, const ReadOptions& options = {});
NetworkDocument read_network(std::string_view bytes, const ReadOptions& options = {});
NetworkDocument read_network_file(const std::filesystem::path& path,
                                  const ReadOptions& options = {});

/// Canonical network JSON: sorted keys, no whitespace, integer ticks,
/// edges in construction order, trailing newline.
std::string canonical_network(const Hypergraph& h, std::string_view name = "network",
                              std::string_view time_unit = "tick");
void write_network(std::ostream& out, const Hypergraph& h, std::string_view name = "network",
                   std::string_view time_unit = "tick");
std::string network_digest(const Hypergraph& h);

std::optional<Tick> parse_utc_timestamp(std::string_view text);
std::string format_utc_timestamp(Tick millis);

enum class ResultFormat { json, csv };

/// JSON output is canonical (sorted keys, fixed integer formatting); CSV is
/// one `source,vertex,metric,value` row per label.
void write_results(std::ostream& out, const Hypergraph& h, const sim::DiffusionResult& result,
                   ResultFormat format = ResultFormat::json);
std::string results_string(const Hypergraph& h, const sim::DiffusionResult& result,
                           ResultFormat format = ResultFormat::json);
/// Inverse of the JSON form of write_results.
sim::DiffusionResult read_results(std::istream& in, const Hypergraph& h);

/// One source record as a single JSON line (used by result and checkpoint files).
std::string source_record(const Hypergraph& h, const sim::SourceLabels& labels);
sim::SourceLabels parse_source_record(std::string_view line, const Hypergraph& h);

}  // namespace thd::io
