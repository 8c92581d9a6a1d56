#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace addspan;
using addspan::testing::make_graph;

namespace {

// Two stars (centers 0 and 5) whose leaves 4 and 6 are joined.
Graph barbell() {
    return make_graph(10, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {5, 6}, {5, 7}, {5, 8}, {5, 9}, {4, 6}});
}

Dist max_stretch(const Graph& g, const Graph& h) {
    const auto dg = exact_apsp(g);
    const auto dh = exact_apsp(h);
    Dist worst = 0;
    for (NodeId u = 0; u < g.num_nodes(); ++u)
        for (NodeId v = 0; v < g.num_nodes(); ++v) {
            if (dg(u, v) == kInfinity) {
                EXPECT_EQ(dh(u, v), kInfinity);
                continue;
            }
            if (dh(u, v) == kInfinity) return kInfinity;
            worst = std::max(worst, dh(u, v) - dg(u, v));
        }
    return worst;
}

}  // namespace

TEST(Delta, DiagonalAndSymmetry) {
    const auto g = generate(Family::gnm, {.n = 120, .m = 900}, 4);
    const auto c = build_clustering(g, ceil_cbrt(120));
    const auto dt = compute_delta(c);
    ASSERT_EQ(dt.ell, c.num_clusters());
    for (std::size_t i = 0; i < dt.ell; ++i) {
        EXPECT_EQ(dt.estimate(i, i), 0u);
        EXPECT_EQ(dt.bound(i, i), 0u);
        for (std::size_t j = 0; j < dt.ell; ++j) {
            EXPECT_EQ(dt.estimate(i, j), dt.estimate(j, i));
            if (i != j) {
                EXPECT_EQ(dt.bound(i, j), kInfinity);
            }
            const auto k = dt.witness(i, j);
            ASSERT_NE(k, kNoWitness);
            EXPECT_EQ(sat_add(c.trees[k].depth[c.centers[i]], c.trees[k].depth[c.centers[j]]), dt.estimate(i, j));
            for (std::uint32_t q = 0; q < k; ++q)
                EXPECT_GT(sat_add(c.trees[q].depth[c.centers[i]], c.trees[q].depth[c.centers[j]]), dt.estimate(i, j));
        }
    }
}

TEST(Delta, BarbellByHand) {
    const auto c = build_clustering(barbell(), 3);
    ASSERT_EQ(c.centers, (std::vector<NodeId>{0, 5}));
    const auto dt = compute_delta(c);
    EXPECT_EQ(dt.estimate(0, 1), 3u);
    EXPECT_EQ(dt.witness(0, 1), 0u);
    // Tree 2 is built after the edges inside cluster 1 are gone.
    EXPECT_EQ(c.trees[1].depth[0], kInfinity);
}

TEST(Delta, SandwichOnRandomGraph) {
    const auto g = generate(Family::gnm, {.n = 150, .m = 2500}, 5);
    const auto c = build_clustering(g, ceil_cbrt(150));
    const auto dt = compute_delta(c);
    const auto rep = verify::check_delta_sandwich(g, c, dt);
    for (const auto& chk : rep.checks) EXPECT_TRUE(chk.passed) << chk.name << ": " << chk.witness;

    // The +2 side holds for every connected center pair, certified or not.
    const auto d = exact_apsp(g);
    for (std::size_t i = 0; i < dt.ell; ++i)
        for (std::size_t j = 0; j < dt.ell; ++j) {
            const Dist dg = d(c.centers[i], c.centers[j]);
            EXPECT_GE(dt.estimate(i, j), dg);
            if (dg != kInfinity) {
                EXPECT_LE(dt.estimate(i, j), dg + 2);
            }
        }
}

TEST(ContractTree, StarSurvivesWhole) {
    const auto c = build_clustering(generate(Family::star, {.n = 10}), 3);
    const auto ct = contract_tree(c, 0);
    EXPECT_EQ(ct.num_supernodes(), 10u);
    EXPECT_EQ(ct.edges.size(), 9u);
}

TEST(ContractTree, ResidualTailCollapses) {
    // Cluster {0,1,2,3}; the tail 3-4-5 lies in the residual graph.
    const auto g = make_graph(6, {{0, 1}, {0, 2}, {0, 3}, {3, 4}, {4, 5}});
    const auto c = build_clustering(g, 4);
    ASSERT_EQ(c.num_clusters(), 1u);
    const auto ct = contract_tree(c, 0);
    EXPECT_EQ(ct.num_supernodes(), 4u);
    EXPECT_EQ(ct.edges.size(), 3u);
    EXPECT_EQ(ct.supernode[4], ct.supernode[3]);
    EXPECT_EQ(ct.supernode[5], ct.supernode[3]);
    EXPECT_NE(ct.supernode[1], ct.supernode[2]);
    EXPECT_FALSE(ct.keeps_parent_edge[4]);
    EXPECT_TRUE(ct.keeps_parent_edge[3]);
}

TEST(ContractTree, UnreachableNodesAreSingletons) {
    const auto c = build_clustering(barbell(), 3);
    const auto ct = contract_tree(c, 1);
    // Node 0 is cut off in tree 2; everything else hangs off node 5.
    EXPECT_FALSE(c.trees[1].reachable(0));
    EXPECT_EQ(ct.adjacency[ct.supernode[0]].size(), 0u);
    for (const auto& e : ct.edges) {
        EXPECT_TRUE(c.clustered(e.child));
        EXPECT_TRUE(c.clustered(e.parent));
    }
    EXPECT_THROW(contract_tree(c, 2), std::out_of_range);
}

TEST(BuyPaths, BarbellBuysTheBridge) {
    const auto g = barbell();
    const auto r = build_8_spanner(g, {.t_override = 3, .record_paths = true});
    EXPECT_EQ(r.buy.edges_added, 1u);
    EXPECT_EQ(r.spanner.count(EdgeOrigin::bought_path), 1u);
    EXPECT_TRUE(r.spanner.contains(4, 6));
    EXPECT_EQ(r.spanner.to_graph(), g);
    ASSERT_EQ(r.buy.paths.size(), r.buy.paths_bought);
    EXPECT_EQ(r.buy.paths[0].nodes, (std::vector<NodeId>{0, 4, 6, 5}));
    EXPECT_EQ(r.buy.paths[0].offsets, (std::vector<Dist>{0, 1, 2, 3}));
    EXPECT_EQ(r.tables.bound(0, 1), 3u);
    EXPECT_EQ(r.tables.bound(1, 0), 3u);
}

TEST(BuyPaths, PathGraphBuysNothing) {
    const auto g = generate(Family::path, {.n = 60});
    const auto r = build_8_spanner(g);
    EXPECT_EQ(r.clustering.num_clusters(), 0u);
    EXPECT_EQ(r.buy.paths_bought, 0u);
    EXPECT_EQ(r.spanner.to_graph(), g);
}

TEST(BuyPaths, SingleClusterBuysNothing) {
    const auto g = generate(Family::complete, {.n = 9});
    const auto r = build_8_spanner(g, {.t_override = 2});
    EXPECT_EQ(r.clustering.num_clusters(), 1u);
    EXPECT_EQ(r.buy.paths_bought, 0u);
    EXPECT_EQ(r.spanner.num_edges(), 8u);
    EXPECT_EQ(max_stretch(g, r.spanner.to_graph()), 1u);
}

TEST(BuyPaths, RandomGraphTerminalState) {
    const auto g = generate(Family::gnm, {.n = 250, .m = 8000}, 11);
    const auto r = build_8_spanner(g, {.record_paths = true});
    const auto h = r.spanner.to_graph();
    const std::size_t ell = r.clustering.num_clusters();
    ASSERT_GT(ell, 1u);
    EXPECT_LE(r.buy.edges_added, 25 * ell * ell);
    EXPECT_LE(r.buy.bound_decreases, 5 * ell * ell);
    EXPECT_LE(r.buy.max_nodes_per_color, 5u);
    EXPECT_LE(r.buy.max_path_nodes, 5 * ell);

    const auto rep = verify::check_bounds_after_buying(g, h, r.clustering, r.tables);
    for (const auto& chk : rep.checks) EXPECT_TRUE(chk.passed) << chk.name << ": " << chk.witness;
    const auto paths = verify::check_bought_paths(r.clustering, r.buy);
    for (const auto& chk : paths.checks) EXPECT_TRUE(chk.passed) << chk.name << ": " << chk.witness;

    const auto dh = exact_apsp(h);
    for (std::size_t i = 0; i < ell; ++i)
        for (std::size_t j = 0; j < ell; ++j) {
            if (r.tables.estimate(i, j) == kInfinity) continue;
            EXPECT_LE(r.tables.bound(i, j), r.tables.estimate(i, j) + 2);
            EXPECT_GE(r.tables.bound(i, j), dh(r.clustering.centers[i], r.clustering.centers[j]));
        }
}

TEST(EightSpanner, TreesAreKeptWhole) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        // Random recursive tree.
        std::vector<Edge> edges;
        std::mt19937_64 rng(seed);
        for (NodeId v = 1; v < 80; ++v) edges.push_back({NodeId(rng() % v), v});
        const auto g = Graph::from_edges(80, edges);
        const auto r = build_8_spanner(g);
        EXPECT_EQ(r.spanner.to_graph(), g);
    }
    const auto star = generate(Family::star, {.n = 40});
    EXPECT_EQ(build_8_spanner(star).spanner.to_graph(), star);
}

TEST(EightSpanner, CompleteGraphsGetStretchAtMostTwo) {
    for (std::size_t n : {5u, 12u, 30u}) {
        const auto g = generate(Family::complete, {.n = n});
        const auto r = build_8_spanner(g);
        EXPECT_LE(max_stretch(g, r.spanner.to_graph()), 2u) << n;
    }
}

TEST(EightSpanner, CorpusStretchAndSize) {
    for (const auto& [name, g] : addspan::testing::standard_corpus({50, 100}, 2)) {
        const auto r = build_8_spanner(g);
        const auto h = r.spanner.to_graph();
        const std::size_t n = g.num_nodes();
        EXPECT_LE(max_stretch(g, h), 8u) << name;
        const auto budget = verify::check_edge_budget(r.spanner, verify::BudgetFormula::eight_spanner, n,
                                                      r.clustering.threshold, r.clustering.num_clusters());
        EXPECT_TRUE(budget.passed()) << name;
        EXPECT_TRUE(verify::check_stretch(g, r.spanner, 8).passed()) << name;
        for (const Edge& e : h.edges()) ASSERT_TRUE(g.has_edge(e.u, e.v)) << name;
    }
}

TEST(EightSpanner, DisconnectedInput) {
    std::vector<Edge> edges = generate(Family::gnm, {.n = 40, .m = 300}, 2).edges();
    for (const Edge& e : generate(Family::gnm, {.n = 40, .m = 300}, 3).edges()) edges.push_back({e.u + 40, e.v + 40});
    const auto g = Graph::from_edges(80, edges);
    const auto r = build_8_spanner(g);
    EXPECT_LE(max_stretch(g, r.spanner.to_graph()), 8u);
    for (std::size_t i = 0; i < r.tables.ell; ++i)
        for (std::size_t j = 0; j < r.tables.ell; ++j)
            if ((r.clustering.centers[i] < 40) != (r.clustering.centers[j] < 40)) {
                EXPECT_EQ(r.tables.estimate(i, j), kInfinity);
            }
}

TEST(EightSpanner, TraceMatchesSpannerAndReplays) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const auto g = generate(Family::gnm, {.n = 100, .m = 1000}, seed);
        Trace trace;
        const auto r = build_8_spanner(g, {.trace = &trace});
        std::size_t edge_events = 0;
        for (const auto& ev : trace)
            if (ev.kind == TraceEvent::Kind::add_edge) {
                ++edge_events;
                EXPECT_EQ(r.spanner.provenance(ev.a, ev.b).origin, EdgeOrigin::bought_path);
            }
        EXPECT_EQ(edge_events, r.buy.edges_added);
        const auto rep = verify::replay_delta_log(trace, g, r.clustering);
        for (const auto& chk : rep.checks) EXPECT_TRUE(chk.passed) << chk.name << ": " << chk.witness;
    }
}

TEST(EightSpanner, ReplayRefusesLargeGraphs) {
    const auto g = generate(Family::path, {.n = 121});
    const auto r = build_8_spanner(g);
    EXPECT_THROW(verify::replay_delta_log({}, g, r.clustering), std::invalid_argument);
}

TEST(EightSpanner, Deterministic) {
    const auto g = generate(Family::gnm, {.n = 150, .m = 3000}, 8);
    const auto a = build_8_spanner(g);
    const auto b = build_8_spanner(g);
    EXPECT_EQ(a.spanner.edges(), b.spanner.edges());
    EXPECT_EQ(a.tables.bounds, b.tables.bounds);
}

TEST(BuyPaths, ForeignCentersStillEndTight) {
    // Centers 11 and 12 both sit in earlier clusters here, and no node of
    // either color lies on the path bought between them.
    const auto g = generate(Family::gnm, {.n = 60, .m = 85}, 385);
    const auto r = build_8_spanner(g, {.t_override = 2});
    const auto& c = r.clustering;
    ASSERT_GT(c.num_clusters(), 12u);
    EXPECT_NE(c.color[c.centers[11]], 12u);
    EXPECT_NE(c.color[c.centers[12]], 13u);
    EXPECT_EQ(r.tables.estimate(12, 11), 3u);
    EXPECT_LE(r.tables.bound(12, 11), 5u);
    const auto rep = verify::check_bounds_after_buying(g, r.spanner.to_graph(), c, r.tables);
    for (const auto& chk : rep.checks) EXPECT_TRUE(chk.passed) << chk.name << ": " << chk.witness;
}
