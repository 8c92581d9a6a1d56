#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "addspan/graph.hpp"
#include "addspan/types.hpp"

namespace addspan {

/// Unordered node pairs stored once in (min,max) orientation.
class EdgeSet {
public:
    /// Returns true if the pair was not present before.
    bool insert(NodeId a, NodeId b) {
        if (a == b) throw GraphError("EdgeSet: self-loop at node " + std::to_string(a));
        return keys_.insert(edge_key(a, b)).second;
    }

    bool contains(NodeId a, NodeId b) const { return keys_.contains(edge_key(a, b)); }
    bool erase(NodeId a, NodeId b) { return keys_.erase(edge_key(a, b)) > 0; }

    std::size_t size() const noexcept { return keys_.size(); }
    bool empty() const noexcept { return keys_.empty(); }

    std::vector<Edge> sorted_edges() const {
        std::vector<std::uint64_t> keys(keys_.begin(), keys_.end());
        std::sort(keys.begin(), keys.end());
        std::vector<Edge> out;
        out.reserve(keys.size());
        for (auto k : keys) out.push_back(edge_from_key(k));
        return out;
    }

    Graph to_graph(std::size_t n) const {
        const auto e = sorted_edges();
        return Graph::from_edges(n, e);
    }

    friend bool operator==(const EdgeSet& a, const EdgeSet& b) { return a.keys_ == b.keys_; }

private:
    std::unordered_set<std::uint64_t> keys_;
};

}  // namespace addspan
