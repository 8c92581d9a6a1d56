#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "addspan/apsp.hpp"
#include "addspan/bfs.hpp"
#include "addspan/clustering.hpp"
#include "addspan/graph.hpp"
#include "addspan/spanner.hpp"
#include "addspan/spanner8.hpp"

// Brute-force checkers. Apart from the graph primitives (Graph, BFS, APSP)
// nothing here calls into the constructions it checks.

namespace addspan::verify {

struct Check {
    std::string name;
    bool passed = true;
    std::string witness;  // set whenever passed == false
    double observed = 0;
    double bound = 0;
};

struct VerificationReport {
    std::deque<Check> checks;
    bool sampled = false;

    Check& add(std::string name, double bound = 0) {
        checks.push_back({std::move(name), true, {}, 0, bound});
        return checks.back();
    }

    void merge(const VerificationReport& other) {
        checks.insert(checks.end(), other.checks.begin(), other.checks.end());
        sampled = sampled || other.sampled;
    }

    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
    }
    std::size_t num_failed() const {
        return std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.passed; });
    }
    const Check* find(std::string_view name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

namespace detail {

inline void fail(Check& c, std::string witness) {
    if (c.passed) {
        c.passed = false;
        c.witness = std::move(witness);
    }
}

inline std::string pair_str(NodeId u, NodeId v) {
    return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

inline std::string dist_str(Dist d) { return d == kInfinity ? "inf" : std::to_string(d); }

/// Graph after clusters 0..i-1 are fixed: drop edges with both endpoints in them.
inline Graph residual_after(const Graph& g, std::span<const std::uint32_t> cluster_of, std::uint32_t i) {
    auto gone = [&](NodeId v) { return cluster_of[v] != 0 && cluster_of[v] <= i; };
    std::vector<Edge> kept;
    for (const Edge& e : g.edges())
        if (!(gone(e.u) && gone(e.v))) kept.push_back(e);
    return Graph::from_edges(g.num_nodes(), kept);
}

/// For every v: whether some shortest source-v path in g uses an edge with
/// both endpoints clustered.
inline std::vector<std::uint8_t> shortest_path_leaves_residual(const Graph& g, std::span<const std::uint32_t> color,
                                                               NodeId source, std::span<const Dist> dist) {
    const std::size_t n = g.num_nodes();
    std::vector<NodeId> order;
    order.reserve(n);
    for (NodeId v = 0; v < n; ++v)
        if (dist[v] != kInfinity) order.push_back(v);
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return dist[a] < dist[b]; });
    std::vector<std::uint8_t> leaves(n, 0);
    for (NodeId x : order) {
        if (x == source) continue;
        for (NodeId p : g.neighbors(x)) {
            if (dist[p] + 1 != dist[x]) continue;
            if (leaves[p] || (color[p] != 0 && color[x] != 0)) {
                leaves[x] = 1;
                break;
            }
        }
    }
    return leaves;
}

}  // namespace detail

struct StretchOptions {
    std::size_t exhaustive_limit = 300;
    std::size_t sample_sources = 64;
    std::uint64_t seed = 1;
};

/*
 * d_G(u,v) <= d_H(u,v) <= d_G(u,v) + k over all pairs, after checking that
 * H is a subgraph of G. Above `exhaustive_limit` nodes only a fixed-seed
 * sample of source nodes is checked and the report is marked sampled.
 */
inline VerificationReport check_stretch(const Graph& g, const Graph& h, Dist k, const StretchOptions& opts = {}) {
    VerificationReport rep;
    auto& sub = rep.add("subgraph");
    if (h.num_nodes() != g.num_nodes()) {
        detail::fail(sub, "node counts differ: " + std::to_string(h.num_nodes()) + " vs " +
                              std::to_string(g.num_nodes()));
        return rep;
    }
    for (const Edge& e : h.edges()) {
        if (!g.has_edge(e.u, e.v)) {
            detail::fail(sub, "edge " + detail::pair_str(e.u, e.v) + " not in graph");
            break;
        }
    }
    if (!sub.passed) return rep;

    const std::size_t n = g.num_nodes();
    std::vector<NodeId> sources(n);
    for (NodeId v = 0; v < n; ++v) sources[v] = v;
    if (n > opts.exhaustive_limit) {
        rep.sampled = true;
        std::mt19937_64 rng(opts.seed);
        for (std::size_t i = 0; i < opts.sample_sources && i < n; ++i) {
            std::swap(sources[i], sources[i + rng() % (n - i)]);
        }
        sources.resize(std::min(opts.sample_sources, n));
    }

    auto& lower = rep.add("no_shortcut");
    auto& upper = rep.add("additive_stretch", k);
    auto& conn = rep.add("connectivity_preserved");
    std::vector<Dist> dg(n), dh(n);
    std::vector<NodeId> queue;
    Dist worst = 0;
    for (NodeId u : sources) {
        bfs_distances(g, u, dg, queue);
        bfs_distances(h, u, dh, queue);
        for (NodeId v = 0; v < n; ++v) {
            if (dg[v] == kInfinity) {
                if (dh[v] != kInfinity) detail::fail(lower, detail::pair_str(u, v) + " connected only in H");
                continue;
            }
            if (dh[v] == kInfinity) {
                detail::fail(conn, detail::pair_str(u, v) + " d_G=" + std::to_string(dg[v]) + " d_H=inf");
                detail::fail(upper, detail::pair_str(u, v) + " d_G=" + std::to_string(dg[v]) + " d_H=inf");
                continue;
            }
            if (dh[v] < dg[v]) detail::fail(lower, detail::pair_str(u, v));
            const Dist s = dh[v] - dg[v];
            worst = std::max(worst, s);
            if (s > k) {
                detail::fail(upper, detail::pair_str(u, v) + " d_G=" + std::to_string(dg[v]) +
                                        " d_H=" + std::to_string(dh[v]));
            }
        }
    }
    upper.observed = worst;
    return rep;
}

inline VerificationReport check_stretch(const Graph& g, const Spanner& h, Dist k, const StretchOptions& opts = {}) {
    return check_stretch(g, h.to_graph(), k, opts);
}

enum class BudgetFormula { two_spanner, eight_spanner };

inline double edge_budget(BudgetFormula f, std::size_t n) {
    const double dn = static_cast<double>(n);
    return f == BudgetFormula::two_spanner ? 2.0 * std::pow(dn, 1.5) + dn
                                           : 26.0 * std::pow(dn, 4.0 / 3.0) + dn;
}

/*
 * |H| against the closed-form budget (2 n^{3/2} + n or 26 n^{4/3} + n),
 * plus per-origin audits: star <= n, residual <= n t, bought <= 25 l^2,
 * tree <= l (n - 1).
 */
inline VerificationReport check_edge_budget(const Spanner& h, BudgetFormula f, std::size_t n, std::size_t t,
                                            std::size_t ell) {
    VerificationReport rep;
    auto audit = [&](std::string name, std::size_t observed, double bound) {
        auto& c = rep.add(std::move(name), bound);
        c.observed = static_cast<double>(observed);
        if (c.observed > bound) {
            detail::fail(c, std::to_string(observed) + " edges > " + std::to_string(bound));
        }
    };
    audit("total_edges", h.num_edges(), edge_budget(f, n));
    audit("star_edges", h.count(EdgeOrigin::cluster_star), static_cast<double>(n));
    audit("residual_edges", h.count(EdgeOrigin::residual), static_cast<double>(n) * t);
    audit("bought_edges", h.count(EdgeOrigin::bought_path), 25.0 * ell * ell);
    audit("tree_edges", h.count(EdgeOrigin::tree), static_cast<double>(ell) * (n > 0 ? n - 1 : 0));
    return rep;
}

/*
 * Independent re-derivation of a t-clustering: simulates every intermediate
 * residual graph from scratch and checks cluster membership, sizes, greedy
 * choice (largest residual closed neighborhood, smallest id on ties),
 * termination, the l <= n/t and |residual| <= n t bounds, residual-graph
 * membership, and that each tree is a BFS tree of its residual graph.
 */
inline VerificationReport verify_clustering(const Graph& g, const Clustering& c) {
    VerificationReport rep;
    const std::size_t n = g.num_nodes();
    const std::size_t t = c.threshold;
    const std::size_t ell = c.centers.size();

    auto& shape = rep.add("shape");
    if (c.color.size() != n || c.trees.size() != ell || c.cluster_sizes.size() != ell || t == 0) {
        detail::fail(shape, "array sizes inconsistent with n=" + std::to_string(n) + ", l=" + std::to_string(ell));
        return rep;
    }

    auto& membership = rep.add("membership");
    auto& size_ok = rep.add("cluster_size_at_least_t", static_cast<double>(t));
    auto& greedy = rep.add("greedy_maximal_center");
    auto& sizes_recorded = rep.add("cluster_sizes_recorded");

    // expected[v] = cluster index + 1 per the definition, 0 if unclaimed
    std::vector<std::uint32_t> expected(n, 0);
    auto residual_size = [&](NodeId v) {
        std::size_t s = expected[v] == 0 ? 1 : 0;
        for (NodeId y : g.neighbors(v)) s += expected[y] == 0 ? 1 : 0;
        return s;
    };
    for (std::size_t i = 0; i < ell; ++i) {
        const NodeId u = c.centers[i];
        if (u >= n) {
            detail::fail(greedy, "center " + std::to_string(u) + " out of range");
            return rep;
        }
        std::size_t best = 0;
        NodeId best_node = 0;
        for (NodeId v = 0; v < n; ++v) {
            const auto s = residual_size(v);
            if (s > best) {
                best = s;
                best_node = v;
            }
        }
        if (residual_size(u) != best || best_node != u) {
            detail::fail(greedy, "step " + std::to_string(i) + ": center " + std::to_string(u) + " has " +
                                     std::to_string(residual_size(u)) + ", node " + std::to_string(best_node) +
                                     " has " + std::to_string(best));
        }
        std::size_t size = 0;
        auto claim = [&](NodeId x) {
            if (expected[x] == 0) {
                expected[x] = static_cast<std::uint32_t>(i + 1);
                ++size;
            }
        };
        claim(u);
        for (NodeId y : g.neighbors(u)) claim(y);
        if (size < t) detail::fail(size_ok, "cluster " + std::to_string(i) + " has " + std::to_string(size));
        if (size != c.cluster_sizes[i]) {
            detail::fail(sizes_recorded, "cluster " + std::to_string(i) + " records " +
                                             std::to_string(c.cluster_sizes[i]) + ", actual " + std::to_string(size));
        }
    }
    for (NodeId v = 0; v < n; ++v) {
        if (c.color[v] != expected[v]) {
            detail::fail(membership, "node " + std::to_string(v) + " has color " + std::to_string(c.color[v]) +
                                         ", expected " + std::to_string(expected[v]));
        }
    }

    auto& stop = rep.add("residual_neighborhoods_below_t", static_cast<double>(t));
    for (NodeId v = 0; v < n; ++v) {
        const auto s = residual_size(v);
        stop.observed = std::max(stop.observed, static_cast<double>(s));
        if (s >= t) detail::fail(stop, "node " + std::to_string(v) + " keeps " + std::to_string(s));
    }

    auto& count = rep.add("cluster_count_at_most_n_over_t", static_cast<double>(n) / t);
    count.observed = static_cast<double>(ell);
    if (ell * t > n) detail::fail(count, "l=" + std::to_string(ell));

    auto& res = rep.add("residual_membership");
    std::size_t expected_residual = 0;
    for (const Edge& e : g.edges()) {
        const bool in = expected[e.u] == 0 || expected[e.v] == 0;
        expected_residual += in ? 1 : 0;
        if (in != c.residual.contains(e.u, e.v)) {
            detail::fail(res, "edge " + detail::pair_str(e.u, e.v) + (in ? " missing" : " should be absent"));
        }
    }
    if (c.residual.size() != expected_residual) {
        detail::fail(res, "residual holds " + std::to_string(c.residual.size()) + " edges, expected " +
                              std::to_string(expected_residual));
    }
    auto& res_bound = rep.add("residual_edges_at_most_nt", static_cast<double>(n) * t);
    res_bound.observed = static_cast<double>(c.residual.size());
    if (c.residual.size() > n * t) detail::fail(res_bound, std::to_string(c.residual.size()) + " edges");

    auto& bfs_ok = rep.add("bfs_tree");
    std::vector<Dist> truth(n);
    std::vector<NodeId> queue;
    for (std::size_t i = 0; i < ell && bfs_ok.passed; ++i) {
        const Graph gi = detail::residual_after(g, expected, static_cast<std::uint32_t>(i));
        const BfsTree& tree = c.trees[i];
        const std::string tag = "tree " + std::to_string(i) + " node ";
        if (tree.root != c.centers[i] || tree.depth.size() != n || tree.parent.size() != n) {
            detail::fail(bfs_ok, "tree " + std::to_string(i) + " malformed");
            break;
        }
        bfs_distances(gi, c.centers[i], truth, queue);
        for (NodeId v = 0; v < n; ++v) {
            const NodeId p = tree.parent[v];
            if (tree.depth[v] != truth[v]) {
                detail::fail(bfs_ok, tag + std::to_string(v) + " depth " + detail::dist_str(tree.depth[v]) +
                                         ", distance " + detail::dist_str(truth[v]));
                break;
            }
            if (v == tree.root || truth[v] == kInfinity) {
                if (p != kNoNode) {
                    detail::fail(bfs_ok, tag + std::to_string(v) + " must not have a parent");
                    break;
                }
                continue;
            }
            if (p == kNoNode || p >= n || !gi.has_edge(v, p) || tree.depth[p] == kInfinity ||
                tree.depth[p] + 1 != tree.depth[v]) {
                detail::fail(bfs_ok, tag + std::to_string(v) + " parent edge invalid");
                break;
            }
        }
    }
    return rep;
}

/*
 * For every pair (u,v) where some shortest path uses an edge outside the
 * residual graph, some cluster tree i has depth_i(u) + depth_i(v) <= d + 2.
 */
inline VerificationReport check_detour_property(const Graph& g, const Clustering& c) {
    VerificationReport rep;
    auto& chk = rep.add("detour_within_2", 2);
    const std::size_t n = g.num_nodes();
    std::vector<Dist> dist(n);
    std::vector<NodeId> queue;
    std::size_t certified = 0;
    for (NodeId u = 0; u < n; ++u) {
        bfs_distances(g, u, dist, queue);
        const auto leaves = detail::shortest_path_leaves_residual(g, c.color, u, dist);
        for (NodeId v = u + 1; v < n; ++v) {
            if (!leaves[v]) continue;
            ++certified;
            Dist best = kInfinity;
            for (const auto& tree : c.trees) best = std::min(best, sat_add(tree.depth[u], tree.depth[v]));
            if (best == kInfinity || best > dist[v] + 2) {
                detail::fail(chk, detail::pair_str(u, v) + " d=" + std::to_string(dist[v]) + " best tree route " +
                                      detail::dist_str(best));
            }
        }
    }
    chk.observed = static_cast<double>(certified);
    return rep;
}

/*
 * estimate(i,j) >= d_G(u_i,u_j) for all center pairs, and <= d_G + 2 where a
 * shortest u_i-u_j path is certified to use a non-residual edge.
 */
inline VerificationReport check_delta_sandwich(const Graph& g, const Clustering& c, const DeltaTables& dt) {
    VerificationReport rep;
    auto& lo = rep.add("estimate_at_least_distance");
    auto& hi = rep.add("estimate_within_2", 2);
    const std::size_t n = g.num_nodes();
    const std::size_t ell = c.centers.size();
    if (dt.ell != ell) {
        detail::fail(lo, "table size " + std::to_string(dt.ell) + " != l=" + std::to_string(ell));
        return rep;
    }
    std::vector<Dist> dist(n);
    std::vector<NodeId> queue;
    for (std::size_t i = 0; i < ell; ++i) {
        const NodeId ui = c.centers[i];
        bfs_distances(g, ui, dist, queue);
        const auto leaves = detail::shortest_path_leaves_residual(g, c.color, ui, dist);
        for (std::size_t j = 0; j < ell; ++j) {
            const NodeId uj = c.centers[j];
            const Dist est = dt.estimate(i, j);
            const std::string w = "centers " + detail::pair_str(std::uint32_t(i), std::uint32_t(j)) +
                                  " d=" + detail::dist_str(dist[uj]) + " estimate=" + detail::dist_str(est);
            if (est < dist[uj]) detail::fail(lo, w);
            if ((leaves[uj] || i == j) && est > sat_add(dist[uj], 2)) detail::fail(hi, w);
        }
    }
    return rep;
}

/*
 * Terminal state of path buying: bound(i,j) <= estimate(i,j) + 2 wherever the
 * estimate is finite, bound(i,j) >= d_H(u_i,u_j), and d_H(u_i,u_j) <=
 * d_G(u_i,u_j) + 4.
 */
inline VerificationReport check_bounds_after_buying(const Graph& g, const Graph& h, const Clustering& c,
                                                    const DeltaTables& dt) {
    VerificationReport rep;
    auto& tight = rep.add("bound_within_estimate_plus_2", 2);
    auto& sound = rep.add("bound_at_least_spanner_distance");
    auto& center = rep.add("center_stretch_at_most_4", 4);
    const std::size_t n = g.num_nodes();
    const std::size_t ell = c.centers.size();
    std::vector<Dist> dg(n), dh(n);
    std::vector<NodeId> queue;
    Dist worst = 0;
    for (std::size_t i = 0; i < ell; ++i) {
        bfs_distances(g, c.centers[i], dg, queue);
        bfs_distances(h, c.centers[i], dh, queue);
        for (std::size_t j = 0; j < ell; ++j) {
            const NodeId uj = c.centers[j];
            const auto pair = "centers " + detail::pair_str(std::uint32_t(i), std::uint32_t(j));
            const Dist b = dt.bound(i, j), est = dt.estimate(i, j);
            if (est != kInfinity && b > est + 2) {
                detail::fail(tight, pair + " bound=" + detail::dist_str(b) + " estimate=" + std::to_string(est));
            }
            if (b < dh[uj]) {
                detail::fail(sound, pair + " bound=" + std::to_string(b) + " d_H=" + detail::dist_str(dh[uj]));
            }
            if (dg[uj] != kInfinity) {
                if (dh[uj] == kInfinity || dh[uj] > dg[uj] + 4) {
                    detail::fail(center, pair + " d_G=" + std::to_string(dg[uj]) + " d_H=" + detail::dist_str(dh[uj]));
                } else {
                    worst = std::max(worst, dh[uj] - dg[uj]);
                }
            }
        }
    }
    center.observed = worst;
    return rep;
}

/*
 * Recount of recorded bought paths: clustered nodes only, at most 5 per
 * color, at most 5 l nodes, at most 25 l^2 new edges in total, and at most
 * 5 l^2 bound decreases from the two path-node rules.
 */
inline VerificationReport check_bought_paths(const Clustering& c, const BuyStats& stats) {
    VerificationReport rep;
    const std::size_t ell = c.centers.size();
    auto& no_zero = rep.add("no_unclustered_node_on_path");
    auto& per_color = rep.add("at_most_5_nodes_per_color", 5);
    auto& length = rep.add("path_nodes_at_most_5l", 5.0 * ell);
    auto& budget = rep.add("bought_edges_at_most_25l2", 25.0 * ell * ell);
    auto& decreases = rep.add("bound_decreases_at_most_5l2", 5.0 * ell * ell);

    std::vector<std::size_t> counts(ell + 1, 0);
    std::size_t total_new = 0;
    for (std::size_t p = 0; p < stats.paths.size(); ++p) {
        const auto& path = stats.paths[p];
        const std::string tag = "path " + std::to_string(p) + " centers " + detail::pair_str(path.from, path.to);
        std::fill(counts.begin(), counts.end(), 0);
        for (NodeId w : path.nodes) {
            const auto col = c.color[w];
            if (col == 0) detail::fail(no_zero, tag + " node " + std::to_string(w));
            if (++counts[col] > 5 && col != 0) detail::fail(per_color, tag + " color " + std::to_string(col));
            per_color.observed = std::max(per_color.observed, static_cast<double>(counts[col]));
        }
        length.observed = std::max(length.observed, static_cast<double>(path.nodes.size()));
        if (path.nodes.size() > 5 * ell) detail::fail(length, tag + " has " + std::to_string(path.nodes.size()));
        total_new += path.new_edges;
    }
    budget.observed = static_cast<double>(total_new);
    if (total_new > 25 * ell * ell) detail::fail(budget, std::to_string(total_new) + " edges");
    decreases.observed = static_cast<double>(stats.bound_decreases);
    if (stats.bound_decreases > 5 * ell * ell) detail::fail(decreases, std::to_string(stats.bound_decreases));
    return rep;
}

inline constexpr std::size_t kReplayMaxNodes = 120;

/*
 * Replays a path-buying trace against a spanner rebuilt from scratch: the
 * star and residual edges implied by the clustering's colors, then every
 * logged edge in order. Each logged bound must be >= the exact spanner
 * distance between its centers at that point in the sequence.
 */
inline VerificationReport replay_delta_log(const Trace& trace, const Graph& g, const Clustering& c) {
    const std::size_t n = g.num_nodes();
    if (n > kReplayMaxNodes) {
        throw std::invalid_argument("replay_delta_log: n=" + std::to_string(n) + " exceeds " +
                                    std::to_string(kReplayMaxNodes));
    }
    VerificationReport rep;
    auto& edges_ok = rep.add("trace_edges_in_graph");
    auto& sound = rep.add("logged_bounds_sound");
    auto& monotone = rep.add("logged_bounds_decrease");

    std::vector<std::vector<NodeId>> adj(n);
    auto link = [&](NodeId a, NodeId b) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    };
    for (NodeId v = 0; v < n; ++v) {
        const auto col = c.color[v];
        if (col != 0 && c.centers[col - 1] != v) link(v, c.centers[col - 1]);
    }
    for (const Edge& e : g.edges()) {
        if (c.color[e.u] == 0 || c.color[e.v] == 0) link(e.u, e.v);
    }

    std::vector<Dist> dist(n);
    std::vector<NodeId> queue;
    std::uint32_t cached_source = kNoNode;
    auto distances_from = [&](NodeId s) {
        if (cached_source == s) return;
        std::fill(dist.begin(), dist.end(), kInfinity);
        queue.assign(1, s);
        dist[s] = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const NodeId x = queue[head];
            for (NodeId y : adj[x]) {
                if (dist[y] == kInfinity) {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        cached_source = s;
    };

    for (std::size_t idx = 0; idx < trace.size(); ++idx) {
        const auto& ev = trace[idx];
        const std::string tag = "record " + std::to_string(idx) + " ";
        if (ev.kind == TraceEvent::Kind::add_edge) {
            if (ev.a >= n || ev.b >= n || !g.has_edge(ev.a, ev.b)) {
                detail::fail(edges_ok, tag + "edge " + detail::pair_str(ev.a, ev.b) + " not in graph");
                continue;
            }
            link(ev.a, ev.b);
            cached_source = kNoNode;
            continue;
        }
        if (ev.a >= c.centers.size() || ev.b >= c.centers.size()) {
            detail::fail(sound, tag + "center index out of range");
            continue;
        }
        if (ev.new_value >= ev.old_value) {
            detail::fail(monotone, tag + "bound " + detail::dist_str(ev.old_value) + " -> " +
                                       detail::dist_str(ev.new_value));
        }
        distances_from(c.centers[ev.a]);
        const Dist actual = dist[c.centers[ev.b]];
        if (ev.new_value < actual) {
            detail::fail(sound, tag + "centers " + detail::pair_str(ev.a, ev.b) + " logged " +
                                    detail::dist_str(ev.new_value) + " < d_H=" + detail::dist_str(actual));
        }
    }
    return rep;
}

}  // namespace addspan::verify
