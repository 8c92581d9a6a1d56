#pragma once

#include <cmath>
#include <cstddef>
#include <optional>

#include "addspan/clustering.hpp"
#include "addspan/spanner.hpp"

namespace addspan {

/// Smallest integer t with t*t >= n (t >= 1).
inline std::size_t ceil_sqrt(std::size_t n) {
    auto t = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    while (t * t < n) ++t;
    while (t > 1 && (t - 1) * (t - 1) >= n) --t;
    return t == 0 ? 1 : t;
}

struct TwoSpannerResult {
    Clustering clustering;
    Spanner spanner;
};

/*
 * Additive 2-spanner: union of all cluster BFS trees and the residual graph
 * of a ceil(sqrt(n))-clustering. At most n*l + n*t edges.
 */
inline TwoSpannerResult build_2_spanner(const Graph& g, std::optional<std::size_t> t_override = {}) {
    const std::size_t n = g.num_nodes();
    TwoSpannerResult r{build_clustering(g, t_override.value_or(ceil_sqrt(n))), Spanner(n)};
    const auto& c = r.clustering;
    for (std::uint32_t i = 0; i < c.num_clusters(); ++i) {
        const auto& tree = c.trees[i];
        for (NodeId v = 0; v < n; ++v) {
            if (tree.parent[v] != kNoNode) r.spanner.add(v, tree.parent[v], {EdgeOrigin::tree, i, 0});
        }
    }
    for (const Edge& e : c.residual.sorted_edges()) r.spanner.add(e.u, e.v, {EdgeOrigin::residual});
    return r;
}

}  // namespace addspan
