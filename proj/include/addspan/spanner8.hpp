#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "addspan/clustering.hpp"
#include "addspan/spanner.hpp"

namespace addspan {

/// Raised when a property that the construction guarantees is observed to
/// fail. Indicates a bug, never bad input.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Smallest integer t with t^3 >= n (t >= 1).
inline std::size_t ceil_cbrt(std::size_t n) {
    auto t = static_cast<std::size_t>(std::cbrt(static_cast<double>(n)));
    while (t * t * t < n) ++t;
    while (t > 1 && (t - 1) * (t - 1) * (t - 1) >= n) --t;
    return t == 0 ? 1 : t;
}

inline constexpr std::uint32_t kNoWitness = 0xffffffffu;

/*
 * Center-to-center distance tables, indexed by 0-based center index.
 *
 * estimate(i,j) is the best two-tree distance min_k depth_k(u_i) + depth_k(u_j)
 * over all cluster trees k, and witness(i,j) the smallest k attaining it.
 * bound(i,j) is an upper bound on the current spanner distance between u_i
 * and u_j; path buying drives it down to at most estimate(i,j) + 2.
 */
struct DeltaTables {
    std::size_t ell = 0;
    std::vector<Dist> estimates;
    std::vector<std::uint32_t> witnesses;
    std::vector<Dist> bounds;

    Dist estimate(std::size_t i, std::size_t j) const { return estimates[i * ell + j]; }
    std::uint32_t witness(std::size_t i, std::size_t j) const { return witnesses[i * ell + j]; }
    Dist bound(std::size_t i, std::size_t j) const { return bounds[i * ell + j]; }
    Dist& bound(std::size_t i, std::size_t j) { return bounds[i * ell + j]; }
};

inline DeltaTables compute_delta(const Clustering& c) {
    const std::size_t ell = c.num_clusters();
    DeltaTables dt;
    dt.ell = ell;
    dt.estimates.assign(ell * ell, kInfinity);
    dt.witnesses.assign(ell * ell, kNoWitness);
    dt.bounds.assign(ell * ell, kInfinity);

    // center_depth[k * ell + i] = depth of u_i in tree k
    std::vector<Dist> center_depth(ell * ell);
    for (std::size_t k = 0; k < ell; ++k)
        for (std::size_t i = 0; i < ell; ++i)
            center_depth[k * ell + i] = c.trees[k].depth[c.centers[i]];

    for (std::size_t i = 0; i < ell; ++i) {
        dt.bounds[i * ell + i] = 0;
        for (std::size_t j = 0; j < ell; ++j) {
            Dist best = kInfinity;
            std::uint32_t arg = kNoWitness;
            for (std::size_t k = 0; k < ell; ++k) {
                const Dist s = sat_add(center_depth[k * ell + i], center_depth[k * ell + j]);
                if (s < best) {
                    best = s;
                    arg = static_cast<std::uint32_t>(k);
                }
            }
            dt.estimates[i * ell + j] = best;
            dt.witnesses[i * ell + j] = arg;
        }
    }
    return dt;
}

/*
 * Cluster tree with every residual-graph edge contracted.
 *
 * A tree edge (v, parent(v)) survives iff both endpoints are clustered.
 * Supernodes are the components left by contracted edges; nodes the tree
 * does not reach are singleton supernodes.
 */
struct ContractedTree {
    struct TreeEdge {
        std::uint32_t child_super;
        std::uint32_t parent_super;
        NodeId child;
        NodeId parent;
    };

    std::uint32_t center_index = 0;
    std::vector<std::uint32_t> supernode;
    std::vector<std::uint8_t> keeps_parent_edge;
    std::vector<TreeEdge> edges;
    std::vector<std::vector<std::uint32_t>> adjacency;
    std::vector<Dist> original_depth;

    std::size_t num_supernodes() const noexcept { return adjacency.size(); }
};

inline ContractedTree contract_tree(const Clustering& c, std::size_t i) {
    if (i >= c.num_clusters()) throw std::out_of_range("contract_tree: center index out of range");
    const BfsTree& tree = c.trees[i];
    const std::size_t n = c.num_nodes();

    ContractedTree ct;
    ct.center_index = static_cast<std::uint32_t>(i);
    ct.supernode.assign(n, 0);
    ct.keeps_parent_edge.assign(n, 0);
    ct.original_depth = tree.depth;

    // Parents before children: bucket reachable nodes by depth.
    std::vector<std::size_t> start(n + 2, 0);
    for (NodeId v = 0; v < n; ++v)
        if (tree.reachable(v)) ++start[tree.depth[v] + 1];
    for (std::size_t d = 1; d < start.size(); ++d) start[d] += start[d - 1];
    std::vector<NodeId> order(start.back());
    {
        auto fill = start;
        for (NodeId v = 0; v < n; ++v)
            if (tree.reachable(v)) order[fill[tree.depth[v]]++] = v;
    }

    std::uint32_t next_super = 0;
    for (NodeId v : order) {
        const NodeId p = tree.parent[v];
        if (p == kNoNode) {
            ct.supernode[v] = next_super++;
        } else if (!c.clustered(v) || !c.clustered(p)) {
            ct.supernode[v] = ct.supernode[p];
        } else {
            ct.supernode[v] = next_super++;
            ct.keeps_parent_edge[v] = 1;
            ct.edges.push_back({ct.supernode[v], ct.supernode[p], v, p});
        }
    }
    for (NodeId v = 0; v < n; ++v)
        if (!tree.reachable(v)) ct.supernode[v] = next_super++;

    ct.adjacency.resize(next_super);
    for (const auto& e : ct.edges) {
        ct.adjacency[e.child_super].push_back(e.parent_super);
        ct.adjacency[e.parent_super].push_back(e.child_super);
    }
    return ct;
}

inline std::vector<ContractedTree> contract_all_trees(const Clustering& c) {
    std::vector<ContractedTree> out;
    out.reserve(c.num_clusters());
    for (std::size_t i = 0; i < c.num_clusters(); ++i) out.push_back(contract_tree(c, i));
    return out;
}

/// Which step of path buying lowered a bound.
enum class BoundSource : std::uint8_t {
    relax,          ///< bound(i,j) <= bound(i,k) + bound(k,j)
    to_path_node,   ///< bound(i, c(w)) <= y + 1
    from_path_node, ///< bound(c(w), j) <= estimate(i,j) - y + 1
    bought_path     ///< bound(i,j) <= length of the path just bought
};

inline std::string_view source_name(BoundSource s) {
    switch (s) {
        case BoundSource::relax: return "relax";
        case BoundSource::to_path_node: return "to_path_node";
        case BoundSource::from_path_node: return "from_path_node";
        case BoundSource::bought_path: return "bought_path";
    }
    return "?";
}

/*
 * One step of the path-buying log, in execution order. For add_edge, (a, b)
 * is the new spanner edge; for bound_update, (a, b) is the center pair whose
 * bound went from old_value to new_value.
 */
struct TraceEvent {
    enum class Kind : std::uint8_t { add_edge, bound_update };

    Kind kind = Kind::add_edge;
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    Dist old_value = 0;
    Dist new_value = 0;
    BoundSource source = BoundSource::relax;

    friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

using Trace = std::vector<TraceEvent>;

/// A bought path: the clustered nodes w_0..w_{s-1} it visits, with their
/// distance from u_i along tree `via`.
struct BoughtPath {
    std::uint32_t from = 0;
    std::uint32_t to = 0;
    std::uint32_t via = 0;
    std::vector<NodeId> nodes;
    std::vector<Dist> offsets;
    std::size_t new_edges = 0;
};

struct BuyStats {
    std::size_t paths_bought = 0;
    std::size_t edges_added = 0;
    std::size_t max_path_nodes = 0;
    std::size_t max_nodes_per_color = 0;
    std::size_t bound_decreases = 0;  ///< decreases made by the two path-node rules
    std::vector<BoughtPath> paths;    ///< filled only when requested
};

struct BuyOptions {
    bool record_paths = false;
    Trace* trace = nullptr;
};

namespace detail {

/// Nodes on the tree path from a to b, a first. Both must be reachable.
inline void tree_path(const BfsTree& tree, NodeId a, NodeId b, std::vector<NodeId>& out,
                      std::vector<NodeId>& scratch) {
    out.clear();
    scratch.clear();
    while (tree.depth[a] > tree.depth[b]) {
        out.push_back(a);
        a = tree.parent[a];
    }
    while (tree.depth[b] > tree.depth[a]) {
        scratch.push_back(b);
        b = tree.parent[b];
    }
    while (a != b) {
        out.push_back(a);
        scratch.push_back(b);
        a = tree.parent[a];
        b = tree.parent[b];
    }
    out.push_back(a);
    out.insert(out.end(), scratch.rbegin(), scratch.rend());
}

}  // namespace detail

/*
 * Path buying over all ordered center pairs in row-major order.
 *
 * `h` must already hold the cluster-star edges and the whole residual graph.
 * For each pair the bound is first relaxed through every intermediate center;
 * if it still exceeds estimate + 2, the tree path through the witness tree is
 * bought (only its surviving, clustered-clustered edges are new), the
 * bounds from u_i to, and from, every cluster the path visits are lowered,
 * and bound(i,j) drops to the bought path's length.
 */
inline BuyStats buy_paths(const Clustering& c, DeltaTables& dt, std::span<const ContractedTree> trees,
                          Spanner& h, const BuyOptions& opts = {}) {
    const std::size_t ell = dt.ell;
    BuyStats stats;
    Trace* trace = opts.trace;

    auto lower = [&](std::size_t a, std::size_t b, Dist value, BoundSource src) {
        Dist& slot = dt.bound(a, b);
        if (value >= slot) return false;
        if (trace) {
            trace->push_back({TraceEvent::Kind::bound_update, std::uint32_t(a), std::uint32_t(b), slot,
                              value, src});
        }
        slot = value;
        return true;
    };

    std::vector<NodeId> path, scratch, w_nodes;
    std::vector<Dist> w_offsets;
    std::vector<std::uint32_t> per_color(ell + 1, 0);

    for (std::size_t i = 0; i < ell; ++i) {
        for (std::size_t j = 0; j < ell; ++j) {
            if (i == j) continue;
            for (std::size_t k = 0; k < ell; ++k) {
                lower(i, j, sat_add(dt.bound(i, k), dt.bound(k, j)), BoundSource::relax);
            }
            const Dist est = dt.estimate(i, j);
            if (!(dt.bound(i, j) > sat_add(est, 2))) continue;

            const std::uint32_t k = dt.witness(i, j);
            const ContractedTree& ct = trees[k];
            const BfsTree& tree = c.trees[k];
            const NodeId ui = c.centers[i];
            const NodeId uj = c.centers[j];
            if (sat_add(tree.depth[ui], tree.depth[uj]) != est) {
                throw InvariantViolation("witness tree does not attain the estimate");
            }
            detail::tree_path(tree, ui, uj, path, scratch);
            if (path.size() - 1 > est) throw InvariantViolation("tree path longer than estimate");

            // Keep the endpoints and every endpoint of a surviving edge.
            w_nodes.clear();
            w_offsets.clear();
            std::size_t new_edges = 0;
            auto keep = [&](std::size_t pos) {
                if (w_offsets.empty() || w_offsets.back() != pos) {
                    w_nodes.push_back(path[pos]);
                    w_offsets.push_back(static_cast<Dist>(pos));
                }
            };
            keep(0);
            for (std::size_t pos = 0; pos + 1 < path.size(); ++pos) {
                const NodeId x = path[pos], y = path[pos + 1];
                const NodeId child = tree.parent[x] == y ? x : y;
                if (!ct.keeps_parent_edge[child]) continue;
                keep(pos);
                keep(pos + 1);
                if (h.add(x, y, {EdgeOrigin::bought_path, std::uint32_t(i), std::uint32_t(j)})) {
                    ++new_edges;
                    if (trace) trace->push_back({TraceEvent::Kind::add_edge, std::min(x, y), std::max(x, y)});
                }
            }
            keep(path.size() - 1);

            std::size_t worst = 0;
            for (NodeId w : w_nodes) {
                if (c.color[w] == 0) {
                    throw InvariantViolation("bought path visits unclustered node " + std::to_string(w));
                }
                worst = std::max<std::size_t>(worst, ++per_color[c.color[w]]);
            }
            for (NodeId w : w_nodes) per_color[c.color[w]] = 0;
            if (worst > 5) {
                throw InvariantViolation("bought path visits " + std::to_string(worst) +
                                         " nodes of one color");
            }
            if (w_nodes.size() > 5 * ell) {
                throw InvariantViolation("bought path has " + std::to_string(w_nodes.size()) +
                                         " nodes, more than 5 per cluster");
            }

            for (std::size_t x = 0; x < w_nodes.size(); ++x) {
                const std::size_t r = c.center_index_of(w_nodes[x]);
                const Dist y = w_offsets[x];
                if (lower(i, r, y + 1, BoundSource::to_path_node)) ++stats.bound_decreases;
                if (lower(r, j, est - y + 1, BoundSource::from_path_node)) ++stats.bound_decreases;
            }
            // A center may belong to an earlier cluster, in which case the rules
            // above never touch bound(i,j) itself. The whole path is in H now.
            lower(i, j, static_cast<Dist>(path.size() - 1), BoundSource::bought_path);

            ++stats.paths_bought;
            stats.edges_added += new_edges;
            stats.max_path_nodes = std::max(stats.max_path_nodes, w_nodes.size());
            stats.max_nodes_per_color = std::max(stats.max_nodes_per_color, worst);
            if (opts.record_paths) {
                stats.paths.push_back({std::uint32_t(i), std::uint32_t(j), k, w_nodes, w_offsets, new_edges});
            }
        }
    }
    return stats;
}

/// Cluster-star edges (u_i to every other member of C_i) and the residual graph.
inline void add_star_and_residual(const Clustering& c, Spanner& h) {
    for (NodeId v = 0; v < c.num_nodes(); ++v) {
        if (!c.clustered(v)) continue;
        const auto i = c.center_index_of(v);
        if (c.centers[i] != v) h.add(v, c.centers[i], {EdgeOrigin::cluster_star, std::uint32_t(i), 0});
    }
    for (const Edge& e : c.residual.sorted_edges()) h.add(e.u, e.v, {EdgeOrigin::residual});
}

struct EightSpannerOptions {
    std::optional<std::size_t> t_override;
    bool record_paths = false;
    Trace* trace = nullptr;
};

struct EightSpannerResult {
    Clustering clustering;
    DeltaTables tables;
    Spanner spanner;
    BuyStats buy;
};

/*
 * Additive 8-spanner with at most 26 n^{4/3} + n edges:
 * ceil(n^{1/3})-clustering, star and residual edges, then path buying.
 */
inline EightSpannerResult build_8_spanner(const Graph& g, const EightSpannerOptions& opts = {}) {
    const std::size_t n = g.num_nodes();
    EightSpannerResult r;
    r.clustering = build_clustering(g, opts.t_override.value_or(ceil_cbrt(n)));
    r.spanner = Spanner(n);
    add_star_and_residual(r.clustering, r.spanner);
    r.tables = compute_delta(r.clustering);
    const auto contracted = contract_all_trees(r.clustering);
    r.buy = buy_paths(r.clustering, r.tables, contracted, r.spanner, {opts.record_paths, opts.trace});
    return r;
}

}  // namespace addspan
