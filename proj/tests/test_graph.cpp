#include <algorithm>

#include "basinseg/graph.hpp"
#include "doctest.h"
#include "support/generators.hpp"

using namespace basinseg;

namespace {

std::vector<Edge> sorted_edges(const DisaffinityGraph& g) {
  std::vector<Edge> e(g.edges().begin(), g.edges().end());
  for (Edge& x : e) {
    if (x.u > x.v) std::swap(x.u, x.v);
  }
  std::sort(e.begin(), e.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  return e;
}

bool same_graph(const DisaffinityGraph& a, const DisaffinityGraph& b) {
  if (a.vertex_count() != b.vertex_count()) return false;
  const auto ea = sorted_edges(a), eb = sorted_edges(b);
  if (ea.size() != eb.size()) return false;
  for (std::size_t i = 0; i < ea.size(); ++i) {
    if (ea[i].u != eb[i].u || ea[i].v != eb[i].v || ea[i].w != eb[i].w) return false;
  }
  for (VertexId v = 0; v < a.vertex_count(); ++v) {
    if (a.is_background(v) != b.is_background(v)) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE_BEGIN("graph");

TEST_CASE("edges_from_volume counts") {
  SUBCASE("1x1x2") {
    AffinityVolume vol = AffinityVolume::filled({1, 1, 2}, 1.0f);
    vol.set(Axis::x, 0, 0, 0, 0.4f);
    const DisaffinityGraph g = edges_from_volume(vol);
    CHECK(g.vertex_count() == 2);
    REQUIRE(g.edge_count() == 1);
    CHECK(g.edges()[0].u == 0);
    CHECK(g.edges()[0].v == 1);
    CHECK(g.edges()[0].w == 0.4f);
  }
  SUBCASE("1x2x2") {
    const DisaffinityGraph g = edges_from_volume(AffinityVolume::filled({1, 2, 2}, 0.5f));
    CHECK(g.vertex_count() == 4);
    CHECK(g.edge_count() == 4);
  }
  SUBCASE("2x2x2") {
    const DisaffinityGraph g = edges_from_volume(AffinityVolume::filled({2, 2, 2}, 0.5f));
    CHECK(g.vertex_count() == 8);
    CHECK(g.edge_count() == 12);
  }
  SUBCASE("general formula") {
    const Shape s{3, 4, 5};
    const DisaffinityGraph g = edges_from_volume(AffinityVolume::filled(s, 0.5f));
    CHECK(g.edge_count() == 3 * 4 * 4 + 3 * 3 * 5 + 2 * 4 * 5);
  }
  SUBCASE("empty volume") {
    CHECK_THROWS_AS(edges_from_volume(AffinityVolume::filled({0, 2, 2}, 0.5f)), InputError);
  }
}

TEST_CASE("volume values must lie in [0,1]") {
  CHECK_THROWS_AS(AffinityVolume({1, 1, 2}, std::vector<Weight>(6, 1.5f)), InputError);
  CHECK_THROWS_AS(AffinityVolume({1, 1, 2}, std::vector<Weight>(5, 0.5f)), InputError);
  std::vector<Weight> nan(6, 0.5f);
  nan[2] = std::numeric_limits<Weight>::quiet_NaN();
  CHECK_THROWS_AS(AffinityVolume({1, 1, 2}, nan), InputError);
}

TEST_CASE("volume round trip through edges") {
  testgen::Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Shape s{rng.between(1, 4), rng.between(1, 4), rng.between(1, 4)};
    AffinityVolume vol = AffinityVolume::filled(s, 1.0f);
    for (std::size_t z = 0; z < s.z; ++z) {
      for (std::size_t y = 0; y < s.y; ++y) {
        for (std::size_t x = 0; x < s.x; ++x) {
          if (x + 1 < s.x) vol.set(Axis::x, z, y, x, testgen::tied_weight(rng, 9));
          if (y + 1 < s.y) vol.set(Axis::y, z, y, x, testgen::tied_weight(rng, 9));
          if (z + 1 < s.z) vol.set(Axis::z, z, y, x, testgen::tied_weight(rng, 9));
        }
      }
    }
    const DisaffinityGraph g = edges_from_volume(vol);
    const AffinityVolume back = volume_from_edges(g, s);
    CHECK(std::equal(vol.data().begin(), vol.data().end(), back.data().begin(), back.data().end()));
  }
}

TEST_CASE("graph validation") {
  CHECK_THROWS_AS(DisaffinityGraph(2, {{0, 0, 0.1f}}), InputError);
  CHECK_THROWS_AS(DisaffinityGraph(2, {{0, 2, 0.1f}}), InputError);
  CHECK_THROWS_AS(DisaffinityGraph(2, {{0, 1, -0.1f}}), InputError);
  CHECK_THROWS_AS(DisaffinityGraph(2, {{0, 1, 0.1f}, {1, 0, 0.2f}}), InputError);
  CHECK_NOTHROW(DisaffinityGraph(3, {{0, 1, 0.1f}, {1, 2, 2.5f}}));
}

TEST_CASE("apply_tmin") {
  const DisaffinityGraph g(3, {{0, 1, 0.005f}, {1, 2, 0.5f}});
  const DisaffinityGraph t = apply_tmin(g, 0.01f);
  CHECK(t.edges()[0].w == 0.0f);
  CHECK(t.edges()[1].w == 0.5f);
  CHECK(same_graph(apply_tmin(g, 0.0f), g));
}

TEST_CASE("apply_tmax") {
  const DisaffinityGraph g(3, {{0, 1, 0.95f}, {1, 2, 0.5f}});
  const DisaffinityGraph t = apply_tmax(g, 0.9f);
  REQUIRE(t.edge_count() == 1);
  CHECK(t.edges()[0].u == 1);
  CHECK(t.is_background(0));
  CHECK_FALSE(t.is_background(1));
  CHECK_FALSE(t.is_background(2));

  CHECK(same_graph(apply_tmax(g, 1.0f), g));
  // strictly greater is erased, equal is kept
  const DisaffinityGraph eq = apply_tmax(DisaffinityGraph(2, {{0, 1, 0.9f}}), 0.9f);
  CHECK(eq.edge_count() == 1);
  CHECK_FALSE(eq.has_background());
}

TEST_CASE("isolated input vertices are not background") {
  const DisaffinityGraph t = apply_tmax(DisaffinityGraph(3, {{0, 1, 0.2f}}), 0.5f);
  CHECK_FALSE(t.is_background(2));
}

TEST_CASE("thresholds are idempotent and commute") {
  testgen::Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const DisaffinityGraph g = testgen::random_graph(rng, 12, 20);
    Weight lo = testgen::tied_weight(rng, 6);
    Weight hi = testgen::tied_weight(rng, 6);
    if (lo > hi) std::swap(lo, hi);  // the order validation enforces
    const DisaffinityGraph a = apply_tmax(apply_tmin(g, lo), hi);
    const DisaffinityGraph b = apply_tmin(apply_tmax(g, hi), lo);
    CHECK(same_graph(a, b));
    CHECK(same_graph(apply_tmin(apply_tmin(g, lo), lo), apply_tmin(g, lo)));
    CHECK(same_graph(apply_tmax(apply_tmax(g, hi), hi), apply_tmax(g, hi)));

    const DisaffinityGraph mn = apply_tmin(g, lo);
    CHECK(mn.edge_count() == g.edge_count());
    const DisaffinityGraph mx = apply_tmax(g, hi);
    for (const Edge& e : mx.edges()) {
      const auto it = std::find_if(g.edges().begin(), g.edges().end(),
                                   [&](const Edge& o) { return o.u == e.u && o.v == e.v; });
      REQUIRE(it != g.edges().end());
      CHECK(it->w == e.w);
      CHECK(e.w <= hi);
    }
  }
}

TEST_CASE("preprocess validation") {
  CHECK_THROWS_AS((PreprocessParams{0.5f, 0.4f}.validate()), InputError);
  CHECK_THROWS_AS((PreprocessParams{-0.1f, std::nullopt}.validate()), InputError);
  CHECK_NOTHROW((PreprocessParams{0.01f, 0.9f}.validate()));
}

TEST_CASE("edge list parsing") {
  const DisaffinityGraph g = parse_edge_list("0 1 0.5");
  CHECK(g.vertex_count() == 2);
  CHECK(g.edge_count() == 1);
  CHECK(parse_edge_list("# comment\n0 2 0.25  # trailing\n\n").vertex_count() == 3);
  CHECK_THROWS_AS(parse_edge_list("0 1 0.5\n1 0 0.3"), InputError);
  CHECK_THROWS_AS(parse_edge_list("0 1 -1"), InputError);
  CHECK_THROWS_AS(parse_edge_list("1 1 0.2"), InputError);
  CHECK_THROWS_AS(parse_edge_list("0 1"), InputError);
  CHECK_THROWS_AS(parse_edge_list("0 1 0.5 7"), InputError);
  CHECK_THROWS_AS(parse_edge_list("a b c"), InputError);

  testgen::Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const DisaffinityGraph r = testgen::random_graph(rng, 12, 20);
    if (r.edge_count() == 0) continue;
    const DisaffinityGraph back = parse_edge_list(format_edge_list(r));
    // the text form cannot express trailing isolated vertices
    CHECK(sorted_edges(back).size() == sorted_edges(r).size());
    CHECK(format_edge_list(back) == format_edge_list(r));
  }
}

TEST_CASE("weights print in shortest round-trip form") {
  CHECK(format_weight(0.1f) == "0.1");
  CHECK(format_weight(1.0f) == "1");
  const float odd = 0.123456789f;
  CHECK(std::stof(format_weight(odd)) == odd);
}

TEST_SUITE_END();
