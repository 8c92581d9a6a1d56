#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "addspan/types.hpp"

namespace addspan {

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/*
 * Undirected, unweighted simple graph on nodes 0..n-1.
 *
 * Adjacency lists are strictly increasing, which is what makes every
 * traversal in this library reproducible.
 */
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n) : adjacency_(n) {}

    /// Rejects self-loops, out-of-range ids and duplicate edges.
    static Graph from_edges(std::size_t n, std::span<const Edge> edges) {
        Graph g(n);
        for (const Edge& e : edges) {
            if (e.u >= n || e.v >= n) {
                throw GraphError("node id " + std::to_string(std::max(e.u, e.v)) +
                                 " out of range for n=" + std::to_string(n));
            }
            if (e.u == e.v) {
                throw GraphError("self-loop at node " + std::to_string(e.u));
            }
            g.adjacency_[e.u].push_back(e.v);
            g.adjacency_[e.v].push_back(e.u);
        }
        for (NodeId v = 0; v < n; ++v) {
            auto& adj = g.adjacency_[v];
            std::sort(adj.begin(), adj.end());
            auto dup = std::adjacent_find(adj.begin(), adj.end());
            if (dup != adj.end()) {
                throw GraphError("duplicate edge " + std::to_string(std::min(v, *dup)) + " " +
                                 std::to_string(std::max(v, *dup)));
            }
        }
        g.num_edges_ = edges.size();
        return g;
    }

    std::size_t num_nodes() const noexcept { return adjacency_.size(); }
    std::size_t num_edges() const noexcept { return num_edges_; }

    std::span<const NodeId> neighbors(NodeId v) const noexcept { return adjacency_[v]; }
    std::size_t degree(NodeId v) const noexcept { return adjacency_[v].size(); }

    bool has_edge(NodeId u, NodeId v) const noexcept {
        if (u >= num_nodes() || v >= num_nodes()) return false;
        const auto& adj = adjacency_[u];
        return std::binary_search(adj.begin(), adj.end(), v);
    }

    /// All edges in canonical (min,max) lexicographic order.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(num_edges_);
        for (NodeId u = 0; u < num_nodes(); ++u) {
            for (NodeId v : adjacency_[u]) {
                if (u < v) out.push_back({u, v});
            }
        }
        return out;
    }

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::vector<NodeId>> adjacency_;
    std::size_t num_edges_ = 0;
};

}  // namespace addspan
