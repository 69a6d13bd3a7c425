#include <limits>
#include <map>

#include "basinseg/agglomeration.hpp"
#include "basinseg/basin_graph.hpp"
#include "doctest.h"
#include "support/brute.hpp"
#include "support/generators.hpp"

using namespace basinseg;

TEST_SUITE_BEGIN("basin_graph");

TEST_CASE("build from the x1..x7 chain") {
  const DisaffinityGraph g(7, {{0, 1, 0.1f}, {1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 5, 1}, {5, 6, 0.1f}});
  const Segmentation s = watershed(g);
  const BasinGraph bg = build_basin_graph(g, s);
  REQUIRE(bg.edges().size() == 1);
  CHECK(bg.edges()[0] == BasinEdge{1, 2, 1.0f});
  CHECK(bg.size(1) == 4);
  CHECK(bg.size(2) == 3);
}

TEST_CASE("single basin and min rule") {
  const DisaffinityGraph one(3, {{0, 1, 0.2f}, {1, 2, 0.2f}});
  CHECK(build_basin_graph(one, watershed(one)).edges().empty());

  const DisaffinityGraph two(4, {{0, 1, 0.1f}, {2, 3, 0.1f}, {0, 2, 0.7f}, {1, 3, 0.3f}});
  const Segmentation s = Segmentation::from_labels({1, 1, 2, 2});
  const BasinGraph bg = build_basin_graph(two, s);
  REQUIRE(bg.edges().size() == 1);
  CHECK(bg.edges()[0].saliency == 0.3f);
}

TEST_CASE("background contributes nothing") {
  const DisaffinityGraph g(3, {{0, 1, 0.2f}, {1, 2, 0.4f}});
  const BasinGraph bg = build_basin_graph(g, Segmentation::from_labels({0, 1, 2}));
  REQUIRE(bg.edges().size() == 1);
  CHECK(bg.edges()[0] == BasinEdge{1, 2, 0.4f});
  CHECK(bg.size(1) == 1);
}

TEST_CASE("label count must match the graph") {
  const DisaffinityGraph g(3, {{0, 1, 0.2f}});
  CHECK_THROWS_AS(build_basin_graph(g, Segmentation::from_labels({1, 1})), InputError);
}

TEST_CASE("basin graph validation") {
  CHECK_THROWS_AS(BasinGraph({0, 1, 1}, {{1, 1, 0.2f}}), InputError);
  CHECK_THROWS_AS(BasinGraph({0, 1, 1}, {{1, 3, 0.2f}}), InputError);
  CHECK_THROWS_AS(BasinGraph({0, 1, 1}, {{1, 2, 0.2f}, {2, 1, 0.3f}}), InputError);
  CHECK_THROWS_AS(BasinGraph({0, 0, 1}, {}), InputError);
  const BasinGraph bg({0, 1, 1, 1}, {{3, 2, 0.2f}, {1, 2, 0.5f}});
  CHECK(bg.edges()[0] == BasinEdge{1, 2, 0.5f});
  CHECK(bg.edges()[1] == BasinEdge{2, 3, 0.2f});
}

TEST_CASE("merge_below") {
  const BasinGraph bg({0, 1, 1, 1}, {{1, 2, 0.2f}, {2, 3, 0.6f}});
  CHECK(merge_below(bg, 0.5f) == BasinPartition{0, 1, 1, 2});
  CHECK(merge_below(bg, 0.0f) == BasinPartition{0, 1, 2, 3});
  CHECK(merge_below(bg, 0.2f) == BasinPartition{0, 1, 2, 3});
  CHECK(merge_below(bg, 0.7f) == BasinPartition{0, 1, 1, 1});
}

TEST_CASE("basin graph matches a direct scan on random graphs") {
  testgen::Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const DisaffinityGraph g = preprocess(testgen::random_graph(rng, 14, 30), {std::nullopt, 0.8f});
    const Segmentation s = watershed(g);
    const BasinGraph bg = build_basin_graph(g, s);

    std::map<std::pair<Label, Label>, Weight> expect;
    for (const Edge& e : g.edges()) {
      Label a = s.label(e.u), b = s.label(e.v);
      if (a == 0 || b == 0 || a == b) continue;
      if (a > b) std::swap(a, b);
      auto [it, fresh] = expect.emplace(std::pair{a, b}, e.w);
      if (!fresh) it->second = std::min(it->second, e.w);
    }
    REQUIRE(bg.edges().size() == expect.size());
    auto it = expect.begin();
    for (const BasinEdge& e : bg.edges()) {
      CHECK(e.a == it->first.first);
      CHECK(e.b == it->first.second);
      CHECK(e.saliency == it->second);
      ++it;
    }
    CHECK(bg.edges().size() <= g.edge_count());
    std::uint64_t total = 0;
    for (Label l = 1; l <= bg.basin_count(); ++l) total += bg.size(l);
    CHECK(total == s.vertex_count() - s.basin_size(0));
  }
}

TEST_CASE("merge_below equals connected components under t") {
  testgen::Rng rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    const BasinGraph bg = testgen::random_basin_graph(rng, 30);
    const Weight t = testgen::tied_weight(rng, 10);
    const auto expect = brute::components(bg.basin_count(), bg.edges(),
                                          [&](const BasinEdge& e) { return e.saliency < t; }, 1);
    CHECK(brute::same_partition(merge_below(bg, t), expect));
  }
}

TEST_CASE("rebuilding after a merge commutes with merging in the basin graph") {
  testgen::Rng rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const DisaffinityGraph g = testgen::random_graph(rng, 14, 30);
    const Segmentation s = watershed(g);
    const BasinGraph bg = build_basin_graph(g, s);
    const Weight t = testgen::tied_weight(rng, 6);
    const BasinPartition p = merge_below(bg, t);
    const Segmentation merged = apply_partition(s, p);
    const BasinGraph rebuilt = build_basin_graph(g, merged);
    for (const BasinEdge& e : rebuilt.edges()) {
      CHECK(e.saliency == brute::cluster_saliency(bg, p, e.a, e.b));
    }
  }
}

TEST_CASE("text round trip") {
  testgen::Rng rng(34);
  for (int trial = 0; trial < 50; ++trial) {
    const BasinGraph bg = testgen::random_basin_graph(rng, 20);
    CHECK(parse_basin_graph(format_basin_graph(bg)) == bg);
  }
  CHECK_THROWS_AS(parse_basin_graph("1 2 0.5\n"), InputError);
  CHECK_THROWS_AS(parse_basin_graph("# size 1 3\n# size 2 4\n1 2\n"), InputError);
}

TEST_SUITE_END();
