#include "thd/io.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <variant>

#include "json.hpp"
#include "thd/digest.hpp"

namespace thd::io {

using nlohmann::json;

namespace {

bool parse_digits(std::string_view text, std::size_t pos, std::size_t count, int& out) {
  if (pos + count > text.size()) return false;
  int value = 0;
  for (std::size_t i = pos; i < pos + count; ++i) {
    if (text[i] < '0' || text[i] > '9') return false;
    value = value * 10 + (text[i] - '0');
  }
  out = value;
  return true;
}

}  // namespace

std::optional<Tick> parse_utc_timestamp(std::string_view text) {
  // YYYY-MM-DDTHH:MM:SS[.f+](Z|+00:00)
  int year, month, day, hour, minute, second;
  if (text.size() < 20 || !parse_digits(text, 0, 4, year) || text[4] != '-' ||
      !parse_digits(text, 5, 2, month) || text[7] != '-' || !parse_digits(text, 8, 2, day) ||
      (text[10] != 'T' && text[10] != 't') || !parse_digits(text, 11, 2, hour) ||
      text[13] != ':' || !parse_digits(text, 14, 2, minute) || text[16] != ':' ||
      !parse_digits(text, 17, 2, second)) {
    return std::nullopt;
  }
  std::size_t pos = 19;
  Tick millis = 0;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    const std::size_t first = pos;
    Tick scale = 100;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      millis += (text[pos] - '0') * scale;
      scale /= 10;
      ++pos;
    }
    if (pos == first || pos - first > 9) return std::nullopt;
  }
  const std::string_view zone = text.substr(pos);
  if (zone != "Z" && zone != "z" && zone != "+00:00") return std::nullopt;
  if (hour > 23 || minute > 59 || second > 59) return std::nullopt;

  const std::chrono::year_month_day date{std::chrono::year{year},
                                         std::chrono::month{static_cast<unsigned>(month)},
                                         std::chrono::day{static_cast<unsigned>(day)}};
  if (!date.ok()) return std::nullopt;
  const Tick days = std::chrono::sys_days{date}.time_since_epoch().count();
  return ((days * 24 + hour) * 60 + minute) * 60000 + Tick{second} * 1000 + millis;
}

std::string format_utc_timestamp(Tick millis) {
  using namespace std::chrono;
  const sys_time<milliseconds> tp{milliseconds{millis}};
  const auto day_point = floor<days>(tp);
  const year_month_day date{day_point};
  const hh_mm_ss clock{tp - day_point};
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%04d-%02u-%02uT%02d:%02d:%02d.%03dZ",
                static_cast<int>(date.year()), static_cast<unsigned>(date.month()),
                static_cast<unsigned>(date.day()), static_cast<int>(clock.hours().count()),
                static_cast<int>(clock.minutes().count()), static_cast<int>(clock.seconds().count()),
                static_cast<int>(clock.subseconds().count()));
  return buffer;
}

namespace {

struct TimeValue {
  Tick tick;
  TimeEncoding encoding;
};

struct PendingRecord {
  std::optional<std::string> id;
  std::optional<std::vector<std::string>> participants;
  std::optional<TimeValue> start;
  std::optional<TimeValue> end;
  std::string error;

  void fail(std::string why) {
    if (error.empty()) error = std::move(why);
  }
};

// SAX consumer that materializes one edge record at a time. Container depth
// 1 is the document object, 2 the edges array, 3 a record, 4 a participant
// list. Containers the schema does not describe are skipped wholesale.
class NetworkReader {
 public:
  using number_integer_t = json::number_integer_t;
  using number_unsigned_t = json::number_unsigned_t;
  using number_float_t = json::number_float_t;
  using string_t = json::string_t;
  using binary_t = json::binary_t;

  NetworkReader(NetworkDocument& doc, const ReadOptions& options) : doc_(doc), options_(options) {}

  bool null() { return scalar(Scalar::other); }
  bool boolean(bool) { return scalar(Scalar::other); }
  bool number_integer(number_integer_t v) {
    int_value_ = v;
    return scalar(Scalar::integer);
  }
  bool number_unsigned(number_unsigned_t v) {
    if (v > static_cast<number_unsigned_t>(kTickLimit)) return scalar(Scalar::huge);
    int_value_ = static_cast<std::int64_t>(v);
    return scalar(Scalar::integer);
  }
  bool number_float(number_float_t, const string_t&) { return scalar(Scalar::real); }
  bool string(string_t& v) {
    string_value_ = std::move(v);
    return scalar(Scalar::string);
  }
  bool binary(binary_t&) { return scalar(Scalar::other); }

  bool start_object(std::size_t) { return open(true); }
  bool end_object() { return close(); }
  bool start_array(std::size_t) { return open(false); }
  bool end_array() { return close(); }

  bool key(string_t& k) {
    if (skip_depth_ == 0) key_ = std::move(k);
    return true;
  }

  bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) {
    error_ = std::make_unique<Error>(ErrorCode::MalformedJson,
                                     "at byte " + std::to_string(position) + ": " + ex.what());
    return false;
  }

  bool finished_edges() const { return saw_edges_; }
  std::unique_ptr<Error>& error() { return error_; }

 private:
  enum class Scalar { integer, huge, real, string, other };

  bool fatal(ErrorCode code, std::string message) {
    error_ = std::make_unique<Error>(code, std::move(message));
    return false;
  }

  bool open(bool object) {
    ++depth_;
    if (skip_depth_ != 0) return true;
    switch (depth_) {
      case 1:
        if (!object) return fatal(ErrorCode::MalformedJson, "document must be a JSON object");
        return true;
      case 2:
        if (key_ == "edges" && !object) {
          if (saw_edges_) return fatal(ErrorCode::MalformedJson, "\"edges\" appears twice");
          saw_edges_ = true;
          in_edges_ = true;
          return true;
        }
        if (key_ == "edges") return fatal(ErrorCode::MalformedJson, "\"edges\" must be an array");
        if (known_root_key()) return fatal(ErrorCode::MalformedJson, "\"" + key_ + "\" must be a scalar");
        break;
      case 3:
        if (in_edges_) {
          record_.emplace();
          if (!object) record_->fail("record is not an object");
          else return true;
        }
        break;
      case 4:
        if (record_ && record_->error.empty()) {
          if (key_ == "participants" && !object) {
            if (record_->participants) record_->fail("duplicate field \"participants\"");
            else {
              record_->participants.emplace();
              in_participants_ = true;
              return true;
            }
          } else if (is_record_field()) {
            record_->fail("field \"" + key_ + "\" has the wrong type");
          }
        }
        break;
      default:
        if (in_participants_ && record_) record_->fail("participant is not a string");
        break;
    }
    skip_depth_ = depth_;
    return true;
  }

  bool close() {
    const int closing = depth_--;
    if (skip_depth_ != 0) {
      if (closing == skip_depth_) {
        skip_depth_ = 0;
        if (closing == 3 && record_) return finish_record();
      }
      return true;
    }
    switch (closing) {
      case 2:
        in_edges_ = false;
        break;
      case 3:
        return finish_record();
      case 4:
        in_participants_ = false;
        break;
      default:
        break;
    }
    return true;
  }

  bool known_root_key() const {
    return key_ == "name" || key_ == "time_unit" || key_ == "schema";
  }
  bool is_record_field() const {
    return key_ == "id" || key_ == "participants" || key_ == "start" || key_ == "end";
  }

  bool scalar(Scalar kind) {
    if (skip_depth_ != 0) return true;
    switch (depth_) {
      case 0:
        return fatal(ErrorCode::MalformedJson, "document must be a JSON object");
      case 1:
        return root_scalar(kind);
      case 2:
        if (in_edges_) {
          record_.emplace();
          record_->fail("record is not an object");
          return finish_record();
        }
        return true;
      case 3:
        if (record_) record_field(kind);
        return true;
      case 4:
        if (in_participants_ && record_) {
          if (kind == Scalar::string) record_->participants->push_back(std::move(string_value_));
          else record_->fail("participant is not a string");
        }
        return true;
      default:
        return true;
    }
  }

  bool root_scalar(Scalar kind) {
    if (key_ == "edges") return fatal(ErrorCode::MalformedJson, "\"edges\" must be an array");
    if (key_ == "name" || key_ == "time_unit") {
      if (kind != Scalar::string) return fatal(ErrorCode::MalformedJson, "\"" + key_ + "\" must be a string");
      (key_ == "name" ? doc_.name : doc_.time_unit) = std::move(string_value_);
    } else if (key_ == "schema") {
      if (kind != Scalar::integer || int_value_ != 1) {
        return fatal(ErrorCode::MalformedJson, "unsupported schema version");
      }
    }
    return true;
  }

  void record_field(Scalar kind) {
    PendingRecord& r = *record_;
    if (key_ == "id") {
      if (r.id) return r.fail("duplicate field \"id\"");
      if (kind != Scalar::string) return r.fail("\"id\" must be a string");
      r.id = std::move(string_value_);
    } else if (key_ == "participants") {
      r.fail("\"participants\" must be an array of strings");
    } else if (key_ == "start" || key_ == "end") {
      auto& slot = key_ == "start" ? r.start : r.end;
      if (slot) return r.fail("duplicate field \"" + key_ + "\"");
      switch (kind) {
        case Scalar::integer:
          if (int_value_ < -kTickLimit || int_value_ > kTickLimit) {
            return r.fail("\"" + key_ + "\" is outside +-2^62");
          }
          slot = TimeValue{int_value_, TimeEncoding::ticks};
          break;
        case Scalar::string:
          if (auto t = parse_utc_timestamp(string_value_)) {
            slot = TimeValue{*t, TimeEncoding::calendar};
          } else {
            r.fail("\"" + key_ + "\" is not an ISO-8601 UTC timestamp");
          }
          break;
        case Scalar::huge: return r.fail("\"" + key_ + "\" is outside +-2^62");
        case Scalar::real: return r.fail("\"" + key_ + "\" is not an integer tick");
        case Scalar::other: return r.fail("\"" + key_ + "\" must be an integer or a timestamp");
      }
    }
  }

  bool check_encoding(TimeEncoding seen) {
    if (doc_.encoding == TimeEncoding::none) doc_.encoding = seen;
    if (doc_.encoding != seen) {
      return fatal(ErrorCode::MixedTimeEncodings,
                   "record " + std::to_string(doc_.records) +
                       " mixes integer ticks and calendar timestamps");
    }
    return true;
  }

  bool finish_record() {
    PendingRecord r = std::move(*record_);
    record_.reset();
    in_participants_ = false;
    const std::size_t index = doc_.records++;

    for (const auto& t : {r.start, r.end}) {
      if (t && !check_encoding(t->encoding)) return false;
    }
    if (r.error.empty()) {
      if (!r.id) r.fail("missing \"id\"");
      else if (!r.participants) r.fail("missing \"participants\"");
      else if (!r.start) r.fail("missing \"start\"");
      else if (!r.end) r.fail("missing \"end\"");
    }
    TemporalHyperedge edge;
    if (r.error.empty()) {
      edge = TemporalHyperedge{std::move(*r.id), std::move(*r.participants), r.start->tick, r.end->tick};
      try {
        validate_edge(edge);
        if (!ids_.insert(edge.id).second) r.fail("duplicate edge id '" + edge.id + "'");
      } catch (const Error& err) {
        r.fail(err.what());
      }
    }
    if (!r.error.empty()) {
      if (options_.strict) {
        error_ = std::make_unique<RecordError>(index, r.error);
        return false;
      }
      doc_.skipped.push_back(RecordIssue{index, std::move(r.error)});
      return true;
    }
    doc_.edges.push_back(std::move(edge));
    return true;
  }

  NetworkDocument& doc_;
  const ReadOptions& options_;
  std::unique_ptr<Error> error_;
  int depth_ = 0;
  int skip_depth_ = 0;
  bool in_edges_ = false;
  bool saw_edges_ = false;
  bool in_participants_ = false;
  std::string key_;
  std::int64_t int_value_ = 0;
  std::string string_value_;
  std::optional<PendingRecord> record_;
  std::set<std::string> ids_;
};

template <typename Input>
NetworkDocument parse_network(Input&& input, const ReadOptions& options) {
  NetworkDocument doc;
  NetworkReader reader(doc, options);
  const bool ok = json::sax_parse(std::forward<Input>(input), &reader);
  if (auto& err = reader.error()) {
    if (auto* record = dynamic_cast<RecordError*>(err.get())) throw RecordError(*record);
    throw Error(*err);
  }
  if (!ok) throw Error(ErrorCode::MalformedJson, "parse stopped early");
  if (!reader.finished_edges()) throw Error(ErrorCode::MalformedJson, "missing \"edges\" array");
  return doc;
}

}  // namespace

NetworkDocument read_network(std::istream& in, const ReadOptions& options) {
  return parse_network(in, options);
}

NetworkDocument read_network(std::string_view bytes, const ReadOptions& options) {
  return parse_network(bytes, options);
}

NetworkDocument read_network_file(const std::filesystem::path& path, const ReadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  return read_network(in, options);
}

std::string canonical_network(const Hypergraph& h, std::string_view name, std::string_view time_unit) {
  json edges = json::array();
  for (EdgeIndex e = 0; e < h.edge_count(); ++e) {
    json participants = json::array();
    for (VertexIndex v : h.participants(e)) participants.push_back(h.vertex_id(v));
    edges.push_back(json{{"id", h.edge_id(e)},
                         {"participants", std::move(participants)},
                         {"start", h.start(e)},
                         {"end", h.end(e)}});
  }
  json doc{{"schema", 1}, {"name", name}, {"time_unit", time_unit}, {"edges", std::move(edges)}};
  return doc.dump() + "\n";
}

void write_network(std::ostream& out, const Hypergraph& h, std::string_view name,
                   std::string_view time_unit) {
  out << canonical_network(h, name, time_unit);
}

std::string network_digest(const Hypergraph& h) {
  return sha256_hex(canonical_network(h, "", ""));
}

namespace {

[[noreturn]] void bad_result(const std::string& why) {
  throw Error(ErrorCode::MalformedJson, "result: " + why);
}

VertexIndex vertex_of(const Hypergraph& h, const std::string& id) {
  auto v = h.find_vertex(id);
  if (!v) bad_result("unknown vertex '" + id + "'");
  return *v;
}

Metric metric_of(const json& value) {
  auto m = parse_metric(value.get<std::string>());
  if (!m) bad_result("unknown metric");
  return *m;
}

json labels_json(const Hypergraph& h, const DistanceLabels& labels) {
  json values = json::object();
  for (const auto& [v, value] : labels.values.entries()) values[h.vertex_id(v)] = value;
  json out{{"metric", to_string(labels.metric)}, {"values", std::move(values)}};
  if (labels.has_trace()) {
    json trace = json::array();
    for (const TraceStep& step : labels.trace) {
      trace.push_back(json::array({h.vertex_id(step.vertex),
                                   step.edge ? json(h.edge_id(*step.edge)) : json(nullptr),
                                   step.parent ? json(*step.parent) : json(nullptr),
                                   step.arrival}));
    }
    json ends = json::object();
    for (std::size_t v = 0; v < labels.walk_end.size(); ++v) {
      if (labels.walk_end[v]) ends[h.vertex_id(static_cast<VertexIndex>(v))] = *labels.walk_end[v];
    }
    out["trace"] = std::move(trace);
    out["walk_end"] = std::move(ends);
  }
  return out;
}

DistanceLabels labels_from_json(const json& j, const Hypergraph& h, VertexIndex source, Tick t0) {
  DistanceLabels labels;
  labels.source = source;
  labels.t0 = t0;
  labels.metric = metric_of(j.at("metric"));
  labels.values = LabelMap(h.vertex_count());
  for (const auto& [id, value] : j.at("values").items()) {
    labels.values.set(vertex_of(h, id), value.get<std::int64_t>());
  }
  if (j.contains("trace")) {
    const auto& trace = j.at("trace");
    for (const auto& step : trace) {
      TraceStep s;
      s.vertex = vertex_of(h, step.at(0).get<std::string>());
      if (!step.at(1).is_null()) {
        auto e = h.find_edge(step.at(1).get<std::string>());
        if (!e) bad_result("unknown edge");
        s.edge = *e;
      }
      if (!step.at(2).is_null()) {
        s.parent = step.at(2).get<std::uint32_t>();
        if (*s.parent >= trace.size()) bad_result("trace parent out of range");
      }
      s.arrival = step.at(3).get<Tick>();
      labels.trace.push_back(s);
    }
    labels.walk_end.assign(h.vertex_count(), std::nullopt);
    for (const auto& [id, node] : j.at("walk_end").items()) {
      const auto index = node.get<std::uint32_t>();
      if (index >= labels.trace.size()) bad_result("walk end out of range");
      labels.walk_end[vertex_of(h, id)] = index;
    }
  }
  return labels;
}

json source_json(const Hypergraph& h, const sim::SourceLabels& s) {
  json labels = json::array();
  for (const auto& l : s.labels) labels.push_back(labels_json(h, l));
  return json{{"source", h.vertex_id(s.source)}, {"t0", s.t0}, {"labels", std::move(labels)}};
}

sim::SourceLabels source_from_json(const json& j, const Hypergraph& h) {
  sim::SourceLabels s;
  s.source = vertex_of(h, j.at("source").get<std::string>());
  s.t0 = j.at("t0").get<Tick>();
  for (const auto& l : j.at("labels")) s.labels.push_back(labels_from_json(l, h, s.source, s.t0));
  return s;
}

json quantile_value(const std::optional<std::int64_t>& q) { return q ? json(*q) : json(nullptr); }

}  // namespace

std::string source_record(const Hypergraph& h, const sim::SourceLabels& labels) {
  return source_json(h, labels).dump();
}

sim::SourceLabels parse_source_record(std::string_view line, const Hypergraph& h) {
  try {
    return source_from_json(json::parse(line), h);
  } catch (const json::exception& ex) {
    bad_result(ex.what());
  }
}

void write_results(std::ostream& out, const Hypergraph& h, const sim::DiffusionResult& result,
                   ResultFormat format) {
  if (format == ResultFormat::csv) {
    out << "source,vertex,metric,value\n";
    for (const auto& s : result.sources) {
      for (const auto& labels : s.labels) {
        for (const auto& [v, value] : labels.values.entries()) {
          out << h.vertex_id(s.source) << ',' << h.vertex_id(v) << ',' << to_string(labels.metric)
              << ',' << value << '\n';
        }
      }
    }
    return;
  }
  json metrics = json::array();
  for (Metric m : result.metrics) metrics.push_back(to_string(m));
  json sources = json::array();
  for (const auto& s : result.sources) sources.push_back(source_json(h, s));
  json per_source = json::array();
  for (const auto& s : result.summary.per_source) {
    per_source.push_back(json{{"source", h.vertex_id(s.source)},
                              {"metric", to_string(s.metric)},
                              {"reached", s.reached},
                              {"ratio", s.ratio}});
  }
  json quantiles = json::array();
  for (const auto& q : result.summary.quantiles) {
    quantiles.push_back(json{{"metric", to_string(q.metric)},
                             {"samples", q.samples},
                             {"p50", quantile_value(q.p50)},
                             {"p90", quantile_value(q.p90)},
                             {"p99", quantile_value(q.p99)}});
  }
  json doc{
      {"schema", 1},
      {"vertex_count", result.vertex_count},
      {"metrics", std::move(metrics)},
      {"provenance",
       {{"input_digest", result.provenance.input_digest},
        {"plan", result.provenance.plan.empty() ? json::object() : json::parse(result.provenance.plan)},
        {"tool_version", result.provenance.tool_version}}},
      {"sources", std::move(sources)},
      {"summary", {{"per_source", std::move(per_source)}, {"quantiles", std::move(quantiles)}}},
  };
  out << doc.dump() << '\n';
}

std::string results_string(const Hypergraph& h, const sim::DiffusionResult& result,
                           ResultFormat format) {
  std::ostringstream out;
  write_results(out, h, result, format);
  return out.str();
}

sim::DiffusionResult read_results(std::istream& in, const Hypergraph& h) {
  try {
    const json doc = json::parse(in);
    if (doc.at("schema").get<int>() != 1) bad_result("unsupported schema");
    sim::DiffusionResult r;
    r.vertex_count = doc.at("vertex_count").get<std::size_t>();
    for (const auto& m : doc.at("metrics")) r.metrics.push_back(metric_of(m));
    for (const auto& s : doc.at("sources")) r.sources.push_back(source_from_json(s, h));
    for (const auto& s : doc.at("summary").at("per_source")) {
      r.summary.per_source.push_back(sim::SourceSummary{vertex_of(h, s.at("source").get<std::string>()),
                                                        metric_of(s.at("metric")),
                                                        s.at("reached").get<std::size_t>(),
                                                        s.at("ratio").get<double>()});
    }
    for (const auto& q : doc.at("summary").at("quantiles")) {
      auto value = [&](const char* key) -> std::optional<std::int64_t> {
        return q.at(key).is_null() ? std::nullopt : std::optional(q.at(key).get<std::int64_t>());
      };
      r.summary.quantiles.push_back(sim::MetricQuantiles{metric_of(q.at("metric")),
                                                         q.at("samples").get<std::size_t>(),
                                                         value("p50"), value("p90"), value("p99")});
    }
    const auto& prov = doc.at("provenance");
    r.provenance.input_digest = prov.at("input_digest").get<std::string>();
    r.provenance.plan = prov.at("plan").empty() ? std::string{} : prov.at("plan").dump();
    r.provenance.tool_version = prov.at("tool_version").get<std::string>();
    return r;
  } catch (const json::exception& ex) {
    bad_result(ex.what());
  }
}

}  // namespace thd::io
