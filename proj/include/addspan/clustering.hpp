#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "addspan/bfs.hpp"
#include "addspan/edge_set.hpp"
#include "addspan/graph.hpp"

namespace addspan {

/*
 * Greedy t-clustering.
 *
 * Center index i (0-based) is the i-th chosen center; its cluster has color
 * i + 1 and color 0 means unclustered. trees[i] is a BFS tree rooted at
 * centers[i] in the residual graph left after clusters 0..i-1 were fixed.
 * `residual` holds the final residual graph: every edge of the input with at
 * least one unclustered endpoint.
 */
struct Clustering {
    std::size_t threshold = 1;
    std::vector<NodeId> centers;
    std::vector<std::uint32_t> color;
    std::vector<std::size_t> cluster_sizes;
    std::vector<BfsTree> trees;
    EdgeSet residual;
    /// Nodes and adjacency entries touched while building; a cost proxy.
    std::uint64_t work = 0;

    std::size_t num_clusters() const noexcept { return centers.size(); }
    std::size_t num_nodes() const noexcept { return color.size(); }
    bool clustered(NodeId v) const noexcept { return color[v] != 0; }
    std::size_t center_index_of(NodeId v) const noexcept { return color[v] - 1; }
};

inline Clustering build_clustering(const Graph& g, std::size_t t) {
    if (t == 0) throw std::invalid_argument("clustering threshold t must be >= 1");
    const std::size_t n = g.num_nodes();

    Clustering c;
    c.threshold = t;
    c.color.assign(n, 0);

    // score[v] = |closed neighborhood of v minus clustered nodes|
    std::vector<std::size_t> score(n);
    std::vector<std::vector<NodeId>> live(n);
    for (NodeId v = 0; v < n; ++v) {
        score[v] = g.degree(v) + 1;
        const auto adj = g.neighbors(v);
        live[v].assign(adj.begin(), adj.end());
    }

    auto residual_neighbors = [&](NodeId x, auto&& visit) {
        auto& adj = live[x];
        if (c.color[x] == 0) {
            c.work += adj.size();
            for (NodeId y : adj) visit(y);
            return;
        }
        // An edge leaves the residual graph once both endpoints are clustered.
        std::size_t keep = 0;
        for (NodeId y : adj) {
            ++c.work;
            if (c.color[y] == 0) {
                adj[keep++] = y;
                visit(y);
            }
        }
        adj.resize(keep);
    };

    while (n > 0) {
        NodeId best = 0;
        for (NodeId v = 1; v < n; ++v) {
            if (score[v] > score[best]) best = v;
        }
        c.work += n;
        if (score[best] < t) break;

        const auto index = static_cast<std::uint32_t>(c.centers.size());
        c.centers.push_back(best);
        c.trees.emplace_back();
        c.work += bfs_tree_into(n, best, residual_neighbors, c.trees.back());

        std::size_t size = 0;
        auto claim = [&](NodeId x) {
            if (c.color[x] != 0) return;
            c.color[x] = index + 1;
            ++size;
            --score[x];
            for (NodeId y : g.neighbors(x)) --score[y];
            c.work += g.degree(x);
        };
        claim(best);
        for (NodeId y : g.neighbors(best)) claim(y);
        c.cluster_sizes.push_back(size);
    }

    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v : g.neighbors(u)) {
            if (u < v && (c.color[u] == 0 || c.color[v] == 0)) c.residual.insert(u, v);
        }
    }
    c.work += 2 * g.num_edges();
    return c;
}

}  // namespace addspan
