#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "addspan/oracle.hpp"

namespace addspan {

/*
 * Binary oracle file, all integers little-endian:
 *
 *   offset  size        field
 *   0       4           magic "ASDO"
 *   4       4  u32      format version (1)
 *   8       4  u32      n
 *   12      4  u32      l (number of centers)
 *   16      4  u32      t (clustering threshold)
 *   20      4*l u32     centers, in center-index order
 *   ..      16*n u32    portals: 4 center indices per node (absent when l = 0)
 *   ..      4*n*l u32   tree distances, row per node (0xffffffff = unreachable)
 *   ..      4*n*l u32   spanner distances, same layout
 *   ..      8  u64      r = residual edge count
 *   ..      8*r u32     residual edges as (u, v) pairs, u < v, sorted
 *
 * The residual-graph estimator is not stored; loading rebuilds the exact one.
 */
class OracleFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint32_t kOracleFormatVersion = 1;
inline constexpr std::array<char, 4> kOracleMagic{'A', 'S', 'D', 'O'};

namespace detail {

inline void put_u32(std::ostream& out, std::uint32_t x) {
    const char b[4] = {char(x & 0xff), char((x >> 8) & 0xff), char((x >> 16) & 0xff), char((x >> 24) & 0xff)};
    out.write(b, 4);
}

inline void put_u64(std::ostream& out, std::uint64_t x) {
    put_u32(out, std::uint32_t(x & 0xffffffffu));
    put_u32(out, std::uint32_t(x >> 32));
}

inline std::uint32_t get_u32(std::istream& in) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4)) throw OracleFormatError("oracle file truncated");
    return std::uint32_t(b[0]) | (std::uint32_t(b[1]) << 8) | (std::uint32_t(b[2]) << 16) |
           (std::uint32_t(b[3]) << 24);
}

inline std::uint64_t get_u64(std::istream& in) {
    const std::uint64_t lo = get_u32(in);
    const std::uint64_t hi = get_u32(in);
    return lo | (hi << 32);
}

}  // namespace detail

inline void save_oracle(std::ostream& out, const DistanceOracle& o) {
    out.write(kOracleMagic.data(), 4);
    detail::put_u32(out, kOracleFormatVersion);
    detail::put_u32(out, static_cast<std::uint32_t>(o.num_nodes()));
    detail::put_u32(out, static_cast<std::uint32_t>(o.num_centers()));
    detail::put_u32(out, static_cast<std::uint32_t>(o.threshold()));
    for (NodeId c : o.centers()) detail::put_u32(out, c);
    for (const auto& p : o.portal_table())
        for (auto x : p) detail::put_u32(out, x);
    for (Dist d : o.tree_table()) detail::put_u32(out, d);
    for (Dist d : o.spanner_table()) detail::put_u32(out, d);
    const auto residual = o.residual().sorted_edges();
    detail::put_u64(out, residual.size());
    for (const Edge& e : residual) {
        detail::put_u32(out, e.u);
        detail::put_u32(out, e.v);
    }
    if (!out) throw std::runtime_error("failed to write oracle");
}

inline DistanceOracle load_oracle(std::istream& in, std::size_t table_threshold = kDefaultTableThreshold) {
    std::array<char, 4> magic{};
    if (!in.read(magic.data(), 4) || magic != kOracleMagic) throw OracleFormatError("not an oracle file (bad magic)");
    const auto version = detail::get_u32(in);
    if (version != kOracleFormatVersion) {
        throw OracleFormatError("unsupported oracle format version " + std::to_string(version));
    }
    const std::size_t n = detail::get_u32(in);
    const std::size_t ell = detail::get_u32(in);
    const std::size_t t = detail::get_u32(in);
    if (ell > n) throw OracleFormatError("more centers than nodes");

    std::vector<NodeId> centers(ell);
    for (auto& c : centers) {
        c = detail::get_u32(in);
        if (c >= n) throw OracleFormatError("center id out of range");
    }
    std::vector<std::array<std::uint32_t, kNumPortals>> portals(ell == 0 ? 0 : n);
    for (auto& p : portals) {
        for (auto& x : p) {
            x = detail::get_u32(in);
            if (x >= ell) throw OracleFormatError("portal index out of range");
        }
    }
    std::vector<Dist> tree_dist(n * ell), spanner_dist(n * ell);
    for (auto& d : tree_dist) d = detail::get_u32(in);
    for (auto& d : spanner_dist) d = detail::get_u32(in);

    const std::uint64_t r = detail::get_u64(in);
    EdgeSet residual;
    for (std::uint64_t k = 0; k < r; ++k) {
        const NodeId u = detail::get_u32(in);
        const NodeId v = detail::get_u32(in);
        if (u >= n || v >= n || u == v) throw OracleFormatError("bad residual edge");
        residual.insert(u, v);
    }
    auto sub = std::make_shared<ExactSubgraphOracle>(residual, n, table_threshold);
    return DistanceOracle(n, t, std::move(centers), std::move(tree_dist), std::move(spanner_dist),
                          std::move(portals), std::move(residual), std::move(sub));
}

}  // namespace addspan
