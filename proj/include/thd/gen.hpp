#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "thd/core.hpp"

namespace thd::gen {

/// Seeded 64-bit generator. `split` derives an independent child stream
/// from the seed and a stream number, so every consumer can be replayed from
/// (seed, stream) alone.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  Rng split(std::uint64_t stream) const { return Rng(mix(seed_ ^ mix(stream + 1))); }

  /// Uniform integer in [lo, hi]; identical across standard libraries.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  /// Uniform real in [0, 1).
  double unit();

  static std::uint64_t mix(std::uint64_t x);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

struct GenParams {
  std::size_t vertices = 16;
  std::size_t edges = 32;
  std::size_t min_participants = 2;
  std::size_t max_participants = 4;
  /// Participant-size weight of size k is (k - min + 1)^-skew; 0 is uniform.
  double skew = 1.0;
  /// Edge starts are uniform in [0, time_span].
  Tick time_span = 1000;
  /// Interval lengths are uniform in [min_interval, max_interval].
  Tick min_interval = 0;
  Tick max_interval = 10;
  std::uint64_t seed = 1;
};

/// Throws ParamsInvalid.
void validate(const GenParams& params);

/// Edge records with exactly the requested vertex and edge counts; every
/// vertex takes part in at least one edge.
std::vector<TemporalHyperedge> random_records(const GenParams& params);
Hypergraph gen_random(const GenParams& params);

enum class Shape { chain, star, clique };
enum class TimePattern { increasing, decreasing, constant };

struct StructuredParams {
  Shape shape = Shape::chain;
  /// chain: edges, star: leaves, clique: participants of the single edge.
  std::size_t size = 2;
  TimePattern times = TimePattern::increasing;
  /// Time of the single edge for `constant` (and the clique).
  Tick time = 1;
};

/// Canonical fixtures with closed-form distances. Every edge is instantaneous.
///  chain:  v0 - v1 - ... - v_size, edge i at time i (increasing), size+1-i
///          (decreasing) or `time` (constant)
///  star:   hub joined to leaves l1..l_size, edge i timed like the chain
///  clique: one edge over v1..v_size at `time`
std::vector<TemporalHyperedge> structured_records(const StructuredParams& params);
Hypergraph gen_structured(const StructuredParams& params);

/// Fixed-width ids whose lexicographic order matches numeric order.
std::string vertex_name(std::size_t index, std::size_t count);
std::string edge_name(std::size_t index, std::size_t count);

}  // namespace thd::gen

namespace thd::gen {

/// Bounds for the tiny instances used in differential testing.
struct SmallParams {
  std::size_t max_vertices = 8;
  std::size_t max_edges = 12;
  std::size_t max_participants = 4;
  Tick max_tick = 20;
};

/// Random tiny instance: vertex pool in [2, max_vertices], edge count in
/// [1, max_edges], intervals inside [0, max_tick]. Vertices of the pool that
/// no edge picks do not appear in the graph.
std::vector<TemporalHyperedge> small_random_records(Rng& rng, const SmallParams& params);

}  // namespace thd::gen
