#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "addspan/apsp.hpp"
#include "addspan/bfs.hpp"
#include "addspan/spanner8.hpp"

namespace addspan {

/*
 * Distance estimator for the residual graph. Implementations must return
 * values in [d, 2d + 1] where d is the residual-graph distance (kInfinity
 * when d is).
 */
class SubOracle {
public:
    virtual ~SubOracle() = default;
    virtual Dist distance(NodeId u, NodeId v) const = 0;
    virtual std::string_view name() const = 0;
    /// False when queries run a BFS instead of a table lookup.
    virtual bool constant_time() const = 0;
};

inline constexpr std::size_t kDefaultTableThreshold = 2048;

/// Exact residual-graph distances: a full table up to `table_threshold`
/// nodes, per-query BFS above it.
class ExactSubgraphOracle final : public SubOracle {
public:
    ExactSubgraphOracle(const EdgeSet& residual, std::size_t n,
                        std::size_t table_threshold = kDefaultTableThreshold)
        : graph_(residual.to_graph(n)) {
        if (n <= table_threshold) table_ = exact_apsp(graph_);
    }

    Dist distance(NodeId u, NodeId v) const override {
        if (table_) return (*table_)(u, v);
        if (u == v) return 0;
        return bfs_distances(graph_, u)[v];
    }

    std::string_view name() const override { return table_ ? "exact-table" : "exact-bfs"; }
    bool constant_time() const override { return table_.has_value(); }

private:
    Graph graph_;
    std::optional<DistanceMatrix> table_;
};

/// Worst case the contract allows: 2d + 1 for every finite d > 0.
class StretchedSubOracle final : public SubOracle {
public:
    explicit StretchedSubOracle(std::shared_ptr<const SubOracle> exact) : exact_(std::move(exact)) {}

    Dist distance(NodeId u, NodeId v) const override {
        const Dist d = exact_->distance(u, v);
        if (d == kInfinity || d == 0) return d;
        return sat_add(sat_add(d, d), 1);
    }

    std::string_view name() const override { return "stretched-2d+1"; }
    bool constant_time() const override { return exact_->constant_time(); }

private:
    std::shared_ptr<const SubOracle> exact_;
};

inline constexpr std::size_t kNumPortals = 4;

/*
 * (2,1)-approximate distance oracle.
 *
 * Per node v it keeps the tree depth of v and the 8-spanner distance to v for
 * every center, plus four portal centers: the first minimizes tree depth
 * over all centers, each following one minimizes it over centers with a
 * smaller index than the previous portal (staying at index 0 once reached).
 * Ties go to the lowest index.
 */
class DistanceOracle {
public:
    DistanceOracle() = default;

    DistanceOracle(std::size_t n, std::size_t t, std::vector<NodeId> centers, std::vector<Dist> tree_dist,
                   std::vector<Dist> spanner_dist, std::vector<std::array<std::uint32_t, kNumPortals>> portals,
                   EdgeSet residual, std::shared_ptr<const SubOracle> sub)
        : n_(n),
          t_(t),
          centers_(std::move(centers)),
          tree_dist_(std::move(tree_dist)),
          spanner_dist_(std::move(spanner_dist)),
          portals_(std::move(portals)),
          residual_(std::move(residual)),
          sub_(std::move(sub)) {
        const auto ell = centers_.size();
        if (tree_dist_.size() != n_ * ell || spanner_dist_.size() != n_ * ell ||
            portals_.size() != (ell == 0 ? 0 : n_)) {
            throw std::invalid_argument("DistanceOracle: table sizes do not match n and l");
        }
    }

    std::size_t num_nodes() const noexcept { return n_; }
    std::size_t threshold() const noexcept { return t_; }
    std::size_t num_centers() const noexcept { return centers_.size(); }
    const std::vector<NodeId>& centers() const noexcept { return centers_; }
    const EdgeSet& residual() const noexcept { return residual_; }
    const SubOracle& sub_oracle() const noexcept { return *sub_; }

    Dist tree_dist(NodeId v, std::size_t i) const { return tree_dist_[std::size_t{v} * num_centers() + i]; }
    Dist spanner_dist(NodeId v, std::size_t i) const {
        return spanner_dist_[std::size_t{v} * num_centers() + i];
    }
    const std::array<std::uint32_t, kNumPortals>& portals(NodeId v) const { return portals_[v]; }

    const std::vector<Dist>& tree_table() const noexcept { return tree_dist_; }
    const std::vector<Dist>& spanner_table() const noexcept { return spanner_dist_; }
    const std::vector<std::array<std::uint32_t, kNumPortals>>& portal_table() const noexcept { return portals_; }

    /// Same tables, different residual-graph estimator.
    DistanceOracle with_sub_oracle(std::shared_ptr<const SubOracle> sub) const {
        DistanceOracle copy = *this;
        copy.sub_ = std::move(sub);
        return copy;
    }

    /// Estimate in [d, 2d + 1]. Nine candidates: the sub-oracle and four
    /// portal routes from each side.
    Dist query(NodeId u, NodeId v) const {
        if (u >= n_ || v >= n_) {
            throw std::out_of_range("query: node out of range (n=" + std::to_string(n_) + ")");
        }
        if (u == v) return 0;
        Dist best = sub_->distance(u, v);
        if (!centers_.empty()) {
            best = std::min(best, portal_routes(u, v));
            best = std::min(best, portal_routes(v, u));
        }
        return best;
    }

private:
    Dist portal_routes(NodeId from, NodeId to) const {
        Dist best = kInfinity;
        for (std::uint32_t i : portals_[from]) {
            const Dist onward = std::min(tree_dist(to, i), spanner_dist(to, i));
            best = std::min(best, sat_add(tree_dist(from, i), onward));
        }
        return best;
    }

    std::size_t n_ = 0;
    std::size_t t_ = 1;
    std::vector<NodeId> centers_;
    std::vector<Dist> tree_dist_;     // n x l, row per node
    std::vector<Dist> spanner_dist_;  // n x l, row per node
    std::vector<std::array<std::uint32_t, kNumPortals>> portals_;
    EdgeSet residual_;
    std::shared_ptr<const SubOracle> sub_;
};

/// Portal chain from one row of tree depths (one entry per center).
inline std::array<std::uint32_t, kNumPortals> compute_portals(std::span<const Dist> row,
                                                              std::vector<std::uint32_t>& prefix_argmin) {
    const std::size_t ell = row.size();
    prefix_argmin.resize(ell);
    std::uint32_t arg = 0;
    for (std::size_t i = 0; i < ell; ++i) {
        if (row[i] < row[arg]) arg = static_cast<std::uint32_t>(i);
        prefix_argmin[i] = arg;
    }
    std::array<std::uint32_t, kNumPortals> p{};
    p[0] = prefix_argmin[ell - 1];
    for (std::size_t j = 1; j < kNumPortals; ++j) p[j] = p[j - 1] == 0 ? 0 : prefix_argmin[p[j - 1] - 1];
    return p;
}

struct OracleOptions {
    std::optional<std::size_t> t_override;
    std::size_t table_threshold = kDefaultTableThreshold;
};

inline std::vector<std::array<std::uint32_t, kNumPortals>> compute_all_portals(std::size_t n, std::size_t ell,
                                                                              const std::vector<Dist>& tree_dist) {
    std::vector<std::array<std::uint32_t, kNumPortals>> portals;
    if (ell == 0) return portals;
    portals.resize(n);
    std::vector<std::uint32_t> scratch;
    for (NodeId v = 0; v < n; ++v) {
        portals[v] = compute_portals(std::span<const Dist>(tree_dist.data() + std::size_t{v} * ell, ell), scratch);
    }
    return portals;
}

/// Builds the oracle from an 8-spanner construction over the same clustering.
inline DistanceOracle build_oracle(const EightSpannerResult& built, const OracleOptions& opts = {}) {
    const Clustering& c = built.clustering;
    const std::size_t n = c.num_nodes();
    const std::size_t ell = c.num_clusters();

    std::vector<Dist> tree_dist(n * ell), spanner_dist(n * ell);
    const Graph h = built.spanner.to_graph();
    std::vector<Dist> row(n);
    std::vector<NodeId> queue;
    for (std::size_t i = 0; i < ell; ++i) {
        bfs_distances(h, c.centers[i], row, queue);
        for (NodeId v = 0; v < n; ++v) {
            tree_dist[std::size_t{v} * ell + i] = c.trees[i].depth[v];
            spanner_dist[std::size_t{v} * ell + i] = row[v];
        }
    }
    auto portals = compute_all_portals(n, ell, tree_dist);
    auto sub = std::make_shared<ExactSubgraphOracle>(c.residual, n, opts.table_threshold);
    return DistanceOracle(n, c.threshold, c.centers, std::move(tree_dist), std::move(spanner_dist),
                          std::move(portals), c.residual, std::move(sub));
}

inline DistanceOracle build_oracle(const Graph& g, const OracleOptions& opts = {}) {
    EightSpannerOptions so;
    so.t_override = opts.t_override;
    return build_oracle(build_8_spanner(g, so), opts);
}

/// Entry (u,v) is query(u,v).
inline DistanceMatrix all_pairs_estimates(const DistanceOracle& o) {
    const std::size_t n = o.num_nodes();
    DistanceMatrix out(n);
    for (NodeId u = 0; u < n; ++u) {
        out(u, u) = 0;
        for (NodeId v = u + 1; v < n; ++v) {
            const Dist d = o.query(u, v);
            out(u, v) = d;
            out(v, u) = d;
        }
    }
    return out;
}

}  // namespace addspan
