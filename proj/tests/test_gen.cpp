#include <gtest/gtest.h>

#include "thd/gen.hpp"
#include "thd/io.hpp"
#include "thd/paths.hpp"

namespace thd {
namespace {

ErrorCode params_error(const gen::GenParams& p) {
  try {
    gen::gen_random(p);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Io;
}

TEST(GenRandom, ExactCounts) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    gen::GenParams p;
    p.vertices = 300;
    p.edges = 500;
    p.seed = seed;
    const NetworkStats s = stats(gen::gen_random(p));
    EXPECT_EQ(s.vertices, 300u);
    EXPECT_EQ(s.edges, 500u);
  }
}

TEST(GenRandom, CoversVerticesWithFewEdges) {
  gen::GenParams p;
  p.vertices = 40;
  p.edges = 10;
  p.min_participants = 2;
  p.max_participants = 4;
  EXPECT_EQ(stats(gen::gen_random(p)).vertices, 40u);
}

TEST(GenRandom, SingleEdge) {
  gen::GenParams p;
  p.vertices = 2;
  p.edges = 1;
  p.min_participants = p.max_participants = 2;
  const Hypergraph h = gen::gen_random(p);
  ASSERT_EQ(h.edge_count(), 1u);
  EXPECT_EQ(h.participants(0).size(), 2u);
  EXPECT_LE(h.start(0), h.end(0));
}

TEST(GenRandom, Deterministic) {
  gen::GenParams p;
  p.seed = 42;
  EXPECT_EQ(io::canonical_network(gen::gen_random(p)), io::canonical_network(gen::gen_random(p)));
  gen::GenParams q = p;
  q.seed = 43;
  EXPECT_NE(io::canonical_network(gen::gen_random(p)), io::canonical_network(gen::gen_random(q)));
}

TEST(GenRandom, RespectsBounds) {
  gen::GenParams p;
  p.vertices = 50;
  p.edges = 200;
  p.min_participants = 3;
  p.max_participants = 5;
  p.time_span = 100;
  p.min_interval = 2;
  p.max_interval = 7;
  const Hypergraph h = gen::gen_random(p);
  for (EdgeIndex e = 0; e < h.edge_count(); ++e) {
    EXPECT_GE(h.participants(e).size(), 3u);
    EXPECT_LE(h.participants(e).size(), 5u);
    EXPECT_GE(h.start(e), 0);
    EXPECT_LE(h.start(e), 100);
    EXPECT_GE(h.end(e) - h.start(e), 2);
    EXPECT_LE(h.end(e) - h.start(e), 7);
  }
}

TEST(GenRandom, RejectsInvalidParams) {
  gen::GenParams p;
  p.vertices = 1;
  EXPECT_EQ(params_error(p), ErrorCode::ParamsInvalid);
  p = {};
  p.min_participants = 1;
  EXPECT_EQ(params_error(p), ErrorCode::ParamsInvalid);
  p = {};
  p.max_participants = 1;
  EXPECT_EQ(params_error(p), ErrorCode::ParamsInvalid);
  p = {};
  p.vertices = 100;
  p.edges = 10;
  p.max_participants = 4;
  EXPECT_EQ(params_error(p), ErrorCode::ParamsInvalid);
  p = {};
  p.max_interval = -1;
  EXPECT_EQ(params_error(p), ErrorCode::ParamsInvalid);
  p = {};
  p.skew = -2;
  EXPECT_EQ(params_error(p), ErrorCode::ParamsInvalid);
}

TEST(Rng, UniformStaysInRangeAndSplitsDiffer) {
  gen::Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const auto x = rng.uniform(-3, 5);
    EXPECT_GE(x, -3);
    EXPECT_LE(x, 5);
  }
  gen::Rng a = gen::Rng(3).split(1);
  gen::Rng b = gen::Rng(3).split(2);
  EXPECT_NE(a(), b());
  EXPECT_EQ(gen::Rng(3).split(1)(), gen::Rng(3).split(1)());
}

TEST(GenStructured, ChainReachesFarEnd) {
  const Hypergraph h = gen::gen_structured({gen::Shape::chain, 3, gen::TimePattern::increasing, 1});
  const VertexIndex first = h.vertex("v0");
  const VertexIndex last = h.vertex("v3");
  EXPECT_EQ(foremost(h, first, 0).values.at(last), 3);
  EXPECT_EQ(shortest(h, first, 0, 10).values.at(last), 3);
}

TEST(GenStructured, CliqueIsOneHopEverywhere) {
  const Hypergraph h = gen::gen_structured({gen::Shape::clique, 5, gen::TimePattern::constant, 7});
  for (VertexIndex s = 0; s < h.vertex_count(); ++s) {
    const auto labels = shortest(h, s, 7, 5);
    for (VertexIndex v = 0; v < h.vertex_count(); ++v) EXPECT_EQ(labels.values.at(v), v == s ? 0 : 1);
  }
}

TEST(GenStructured, ReversedChainIsUnreachable) {
  const Hypergraph h = gen::gen_structured({gen::Shape::chain, 3, gen::TimePattern::decreasing, 1});
  EXPECT_FALSE(foremost(h, h.vertex("v0"), 0).values.contains(h.vertex("v3")));
}

TEST(GenStructured, StarHubReachesEveryLeafAtItsTime) {
  const Hypergraph h = gen::gen_structured({gen::Shape::star, 4, gen::TimePattern::increasing, 1});
  const auto labels = foremost(h, h.vertex("hub"), 0);
  EXPECT_EQ(labels.values.reached(), 5u);
  EXPECT_EQ(labels.values.at(h.vertex("l4")), 4);
}

TEST(GenStructured, RejectsTinySize) {
  EXPECT_THROW(gen::gen_structured({gen::Shape::chain, 1, gen::TimePattern::increasing, 1}), Error);
}

}  // namespace
}  // namespace thd
