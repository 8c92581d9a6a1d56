#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "addspan/bfs.hpp"
#include "addspan/graph.hpp"

namespace addspan {

/// Dense n x n matrix of distances, row-major.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n, Dist fill = kInfinity) : n_(n), data_(n * n, fill) {}

    std::size_t size() const noexcept { return n_; }
    Dist operator()(NodeId u, NodeId v) const noexcept { return data_[std::size_t{u} * n_ + v]; }
    Dist& operator()(NodeId u, NodeId v) noexcept { return data_[std::size_t{u} * n_ + v]; }

    std::span<const Dist> row(NodeId u) const noexcept { return {data_.data() + std::size_t{u} * n_, n_}; }
    std::span<Dist> row(NodeId u) noexcept { return {data_.data() + std::size_t{u} * n_, n_}; }

    friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Dist> data_;
};

/// One BFS per node. Brute-force reference used by every verifier.
inline DistanceMatrix exact_apsp(const Graph& g) {
    const std::size_t n = g.num_nodes();
    DistanceMatrix d(n);
    std::vector<NodeId> queue;
    queue.reserve(n);
    for (NodeId s = 0; s < n; ++s) bfs_distances(g, s, d.row(s), queue);
    return d;
}

}  // namespace addspan
