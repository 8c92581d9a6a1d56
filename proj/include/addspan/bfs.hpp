#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "addspan/graph.hpp"
#include "addspan/types.hpp"

namespace addspan {

/*
 * Shortest-path tree from `root`. Unreachable nodes have depth kInfinity
 * and parent kNoNode; so does the root's parent.
 */
struct BfsTree {
    NodeId root = 0;
    std::vector<NodeId> parent;
    std::vector<Dist> depth;

    bool reachable(NodeId v) const noexcept { return depth[v] != kInfinity; }

    friend bool operator==(const BfsTree&, const BfsTree&) = default;
};

/*
 * Level-synchronous BFS over an arbitrary adjacency. `for_each_neighbor(x, f)`
 * must call f(y) for every neighbor y of x.
 *
 * Each level is processed in increasing node-id order, so the parent of a
 * node is always its smallest-id neighbor on the previous level, whatever
 * order the neighbor visitor uses. Returns the number of nodes touched.
 */
template <class NeighborVisitor>
std::size_t bfs_tree_into(std::size_t n, NodeId root, NeighborVisitor&& for_each_neighbor,
                          BfsTree& tree) {
    tree.root = root;
    tree.parent.assign(n, kNoNode);
    tree.depth.assign(n, kInfinity);
    tree.depth[root] = 0;

    std::size_t touched = 1;
    std::vector<NodeId> frontier{root};
    std::vector<NodeId> next;
    Dist level = 0;
    while (!frontier.empty()) {
        next.clear();
        for (NodeId x : frontier) {
            for_each_neighbor(x, [&](NodeId y) {
                ++touched;
                if (tree.depth[y] == kInfinity) {
                    tree.depth[y] = level + 1;
                    tree.parent[y] = x;
                    next.push_back(y);
                }
            });
        }
        std::sort(next.begin(), next.end());
        frontier.swap(next);
        ++level;
    }
    return touched;
}

inline BfsTree bfs(const Graph& g, NodeId root) {
    if (root >= g.num_nodes()) throw std::out_of_range("bfs: root out of range");
    BfsTree tree;
    bfs_tree_into(g.num_nodes(), root,
                  [&](NodeId x, auto&& visit) {
                      for (NodeId y : g.neighbors(x)) visit(y);
                  },
                  tree);
    return tree;
}

/// Distances only; `out` must have g.num_nodes() entries. `queue` is scratch.
inline void bfs_distances(const Graph& g, NodeId root, std::span<Dist> out,
                          std::vector<NodeId>& queue) {
    std::fill(out.begin(), out.end(), kInfinity);
    queue.clear();
    queue.push_back(root);
    out[root] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const NodeId x = queue[head];
        const Dist dx = out[x] + 1;
        for (NodeId y : g.neighbors(x)) {
            if (out[y] == kInfinity) {
                out[y] = dx;
                queue.push_back(y);
            }
        }
    }
}

inline std::vector<Dist> bfs_distances(const Graph& g, NodeId root) {
    if (root >= g.num_nodes()) throw std::out_of_range("bfs: root out of range");
    std::vector<Dist> out(g.num_nodes());
    std::vector<NodeId> queue;
    bfs_distances(g, root, out, queue);
    return out;
}

}  // namespace addspan
