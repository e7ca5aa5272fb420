#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "recant/admg.hpp"
#include "recant/error.hpp"

using namespace recant;
using namespace recant::testing;

TEST(Admg, RejectsDirectedCycle) {
  EXPECT_THROW(Admg::from_names({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}}, {}), GraphError);
}

TEST(Admg, RejectsSelfLoopsDuplicatesAndUnknownVertices) {
  EXPECT_THROW(Admg::from_names({"a"}, {{"a", "a"}}, {}), GraphError);
  EXPECT_THROW(Admg::from_names({"a", "b"}, {}, {{"a", "a"}}), GraphError);
  EXPECT_THROW(Admg::from_names({"a", "b"}, {{"a", "b"}, {"a", "b"}}, {}), GraphError);
  EXPECT_THROW(Admg::from_names({"a", "b"}, {}, {{"a", "b"}, {"b", "a"}}), GraphError);
  EXPECT_THROW(Admg::from_names({"a", "b"}, {{"a", "z"}}, {}), GraphError);
  EXPECT_THROW(Admg::from_names({"a", "a"}, {}, {}), GraphError);
}

TEST(Admg, BidirectedEdgesStoredInDeclarationOrder) {
  Admg g = Admg::from_names({"a", "b"}, {}, {{"b", "a"}});
  ASSERT_EQ(g.bidirected_edges().size(), 1u);
  EXPECT_EQ(g.bidirected_edges()[0].first, g.id("a"));
  EXPECT_TRUE(g.has_bidirected(g.id("b"), g.id("a")));
}

TEST(Admg, AcceptsAllFigures) {
  EXPECT_NO_THROW(mixed_time_med());
  EXPECT_NO_THROW(mixed_time_med_fail_a());
  EXPECT_NO_THROW(mixed_time_med_fail_b());
  EXPECT_NO_THROW(time_med_latent());
  EXPECT_NO_THROW(triangle_a());
  EXPECT_NO_THROW(triangle_b());
  EXPECT_NO_THROW(verma());
}

TEST(Genealogy, ParentsOfOutcome) {
  Admg g = mixed_time_med();
  EXPECT_EQ(parents(g, g.set_of({"y"})), g.set_of({"a0", "a1", "l1", "l2", "m1", "m2"}));
  EXPECT_TRUE(parents(g, VertexSet{}).empty());
}

TEST(Genealogy, AncestorsAreReflexive) {
  Admg lat = time_med_latent();
  EXPECT_EQ(ancestors(lat, lat.set_of({"m1"})), lat.set_of({"m1", "l1", "a0", "u"}));
  Admg edgeless = Admg::from_names({"v"}, {}, {});
  EXPECT_EQ(ancestors(edgeless, edgeless.set_of({"v"})), edgeless.set_of({"v"}));
  Admg g = mixed_time_med();
  EXPECT_EQ(ancestors(g, g.set_of({"y"})), g.all());
}

TEST(Genealogy, DescendantsAndWithin) {
  Admg g = triangle_a();
  EXPECT_EQ(descendants(g, g.set_of({"m"})), g.set_of({"m", "y"}));
  EXPECT_EQ(ancestors(g, g.set_of({"y"}), g.set_of({"m", "y"})), g.set_of({"m", "y"}));
}

TEST(Subgraph, RestrictsEdges) {
  Admg g = mixed_time_med();
  Admg s = subgraph(g, g.set_of({"l1", "l2", "y"}));
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s.names(), (std::vector<std::string>{"l1", "l2", "y"}));
  EXPECT_EQ(s.bidirected_edges().size(), 3u);
  EXPECT_EQ(s.directed_edges().size(), 3u);
  EXPECT_TRUE(s.has_edge(s.id("l1"), s.id("y")));
  EXPECT_TRUE(s.has_edge(s.id("l2"), s.id("y")));
  EXPECT_TRUE(s.has_edge(s.id("l1"), s.id("l2")));
  EXPECT_EQ(subgraph(g, g.all()), g);
}

TEST(Districts, MixedTimeMed) {
  Admg g = mixed_time_med();
  auto ds = districts(g);
  std::vector<VertexSet> want{g.set_of({"a0"}), g.set_of({"a1"}), g.set_of({"l1", "l2", "y"}), g.set_of({"m1"}),
                              g.set_of({"m2"})};
  EXPECT_EQ(ds, want);
  EXPECT_EQ(district_of(g, g.id("y"), g.all()), g.set_of({"y", "l1", "l2"}));
}

TEST(Districts, NoBidirectedEdgesGivesSingletons) {
  Admg g = triangle_b();
  auto ds = districts(g);
  ASSERT_EQ(ds.size(), 4u);
  for (const auto& d : ds) EXPECT_EQ(d.size(), 1u);
}

TEST(Districts, Sinks) {
  Admg chain = Admg::from_names({"v1", "v2", "v3"}, {{"v1", "v2"}, {"v2", "v3"}}, {{"v1", "v2"}, {"v2", "v3"}});
  EXPECT_EQ(district_sinks(chain, chain.all()), chain.set_of({"v3"}));
  Admg g = mixed_time_med();
  EXPECT_EQ(district_sinks(g, g.set_of({"l1", "l2", "y"})), g.set_of({"y"}));
  Admg flat = Admg::from_names({"p", "q"}, {}, {{"p", "q"}});
  EXPECT_EQ(district_sinks(flat, flat.all()), flat.all());
}

TEST(TopologicalOrder, ForcedAndDeclarationTieBreak) {
  Admg g = triangle_a();
  EXPECT_EQ(names_of(g, VertexSet(topological_order(g))), (std::vector<std::string>{"a", "m", "y"}));
  Admg e = Admg::from_names({"x", "y", "z"}, {}, {});
  EXPECT_EQ(topological_order(e), (std::vector<VertexId>{0, 1, 2}));
  Admg r = Admg::from_names({"late", "early"}, {{"early", "late"}}, {});
  EXPECT_EQ(topological_order(r), (std::vector<VertexId>{1, 0}));
}

TEST(Format, Sets) {
  Admg g = mixed_time_med();
  EXPECT_EQ(format_set(g, g.set_of({"y", "l1"})), "{l1, y}");
  EXPECT_EQ(format_set(g, {}), "{}");
}

// Randomized properties.

class GraphProperties : public ::testing::TestWithParam<int> {};

TEST_P(GraphProperties, DistrictsPartitionAndMatchBfs) {
  std::mt19937_64 rng(GetParam());
  Admg g = random_admg(rng, 8, 0.3, 0.25);
  auto ds = districts(g);
  VertexSet covered;
  for (const auto& d : ds) {
    EXPECT_FALSE(d.intersects(covered));
    covered = covered | d;
  }
  EXPECT_EQ(covered, g.all());
  for (VertexId v = 0; v < g.size(); ++v) {
    VertexSet seen{v};
    std::vector<VertexId> stack{v};
    while (!stack.empty()) {
      VertexId x = stack.back();
      stack.pop_back();
      for (VertexId s : g.siblings(x))
        if (!seen.contains(s)) {
          seen.insert(s);
          stack.push_back(s);
        }
    }
    EXPECT_EQ(district_of(g, v, g.all()), seen);
  }
}

TEST_P(GraphProperties, ParentsMatchEdgeScan) {
  std::mt19937_64 rng(GetParam());
  Admg g = random_admg(rng, 8, 0.35, 0.2);
  for (VertexId v = 0; v < g.size(); ++v) {
    std::vector<VertexId> scan;
    for (const auto& e : g.directed_edges())
      if (e.head == v) scan.push_back(e.tail);
    EXPECT_EQ(parents(g, VertexSet{v}), VertexSet(scan));
  }
}

TEST_P(GraphProperties, AncestorsMonotoneAndIdempotent) {
  std::mt19937_64 rng(GetParam());
  Admg g = random_admg(rng, 8, 0.3, 0.1);
  std::bernoulli_distribution coin(0.3);
  VertexSet w, w2;
  for (VertexId v = 0; v < g.size(); ++v)
    if (coin(rng)) {
      w.insert(v);
      w2.insert(v);
    } else if (coin(rng)) {
      w2.insert(v);
    }
  EXPECT_TRUE(ancestors(g, w).subset_of(ancestors(g, w2)));
  EXPECT_EQ(ancestors(g, ancestors(g, w)), ancestors(g, w));
}

TEST_P(GraphProperties, TopologicalOrderRespectsEdges) {
  std::mt19937_64 rng(GetParam());
  Admg g = random_admg(rng, 9, 0.35, 0.0);
  auto order = topological_order(g);
  std::vector<std::size_t> pos(g.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  for (const auto& e : g.directed_edges()) EXPECT_LT(pos[e.tail], pos[e.head]);
}

TEST_P(GraphProperties, SubgraphComposesAndRefinesDistricts) {
  std::mt19937_64 rng(GetParam());
  Admg g = random_admg(rng, 8, 0.3, 0.3);
  std::bernoulli_distribution coin(0.7);
  VertexSet s, t;
  for (VertexId v = 0; v < g.size(); ++v)
    if (coin(rng)) {
      s.insert(v);
      if (coin(rng)) t.insert(v);
    }
  Admg gs = subgraph(g, s);
  VertexSet t_in_s;
  for (VertexId v : t) t_in_s.insert(gs.id(g.name(v)));
  EXPECT_EQ(subgraph(gs, t_in_s), subgraph(g, t));
  // Each district of the subgraph sits inside one district of g.
  for (const auto& d : districts(gs)) {
    VertexSet orig;
    for (VertexId v : d) orig.insert(g.id(gs.name(v)));
    EXPECT_TRUE(orig.subset_of(district_of(g, orig.front(), g.all())));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, GraphProperties, ::testing::Range(1, 41));
