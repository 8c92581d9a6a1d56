#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <unordered_map>

#include "addspan/edge_set.hpp"
#include "addspan/graph.hpp"

namespace addspan {

enum class EdgeOrigin : std::uint8_t { tree, residual, cluster_star, bought_path };

inline constexpr std::size_t kNumEdgeOrigins = 4;

inline std::string_view origin_name(EdgeOrigin o) {
    switch (o) {
        case EdgeOrigin::tree: return "tree";
        case EdgeOrigin::residual: return "residual";
        case EdgeOrigin::cluster_star: return "cluster_star";
        case EdgeOrigin::bought_path: return "bought_path";
    }
    return "?";
}

/// Why an edge is in the spanner. For `tree`, `a` is the center index; for
/// `bought_path`, (a, b) is the center pair whose path bought it.
struct Provenance {
    EdgeOrigin origin = EdgeOrigin::residual;
    std::uint32_t a = 0;
    std::uint32_t b = 0;
};

/// Subgraph H of a source graph on `base_n` nodes. The first insertion of an
/// edge fixes its provenance.
class Spanner {
public:
    Spanner() = default;
    explicit Spanner(std::size_t base_n) : base_n_(base_n) {}

    bool add(NodeId u, NodeId v, Provenance p) {
        if (!edges_.insert(u, v)) return false;
        provenance_.emplace(edge_key(u, v), p);
        ++counts_[static_cast<std::size_t>(p.origin)];
        return true;
    }

    bool contains(NodeId u, NodeId v) const { return edges_.contains(u, v); }
    std::size_t base_n() const noexcept { return base_n_; }
    std::size_t num_edges() const noexcept { return edges_.size(); }
    const EdgeSet& edges() const noexcept { return edges_; }

    const Provenance& provenance(NodeId u, NodeId v) const { return provenance_.at(edge_key(u, v)); }
    std::size_t count(EdgeOrigin o) const noexcept { return counts_[static_cast<std::size_t>(o)]; }

    Graph to_graph() const { return edges_.to_graph(base_n_); }

private:
    std::size_t base_n_ = 0;
    EdgeSet edges_;
    std::unordered_map<std::uint64_t, Provenance> provenance_;
    std::array<std::size_t, kNumEdgeOrigins> counts_{};
};

}  // namespace addspan
