#pragma once

#include <cstdint>
#include <limits>
#include <utility>

namespace addspan {

using NodeId = std::uint32_t;
using Dist = std::uint32_t;

/// Distance of an unreachable pair. Absorbing under `sat_add`.
inline constexpr Dist kInfinity = std::numeric_limits<Dist>::max();

/// Marker for "no parent" in BFS trees and for unset node slots.
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

constexpr Dist sat_add(Dist a, Dist b) noexcept {
    if (a == kInfinity || b == kInfinity) return kInfinity;
    const std::uint64_t s = std::uint64_t{a} + b;
    return s >= kInfinity ? kInfinity : static_cast<Dist>(s);
}

struct Edge {
    NodeId u = 0;
    NodeId v = 0;

    friend constexpr bool operator==(const Edge&, const Edge&) = default;
    friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

/// (min, max) orientation.
constexpr Edge canonical(NodeId a, NodeId b) noexcept {
    return a < b ? Edge{a, b} : Edge{b, a};
}

constexpr std::uint64_t edge_key(NodeId a, NodeId b) noexcept {
    const Edge e = canonical(a, b);
    return (std::uint64_t{e.u} << 32) | e.v;
}

constexpr Edge edge_from_key(std::uint64_t key) noexcept {
    return Edge{static_cast<NodeId>(key >> 32), static_cast<NodeId>(key & 0xffffffffu)};
}

}  // namespace addspan
