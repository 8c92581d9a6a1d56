#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "addspan/graph.hpp"

namespace addspan {

enum class Family { path, cycle, complete, star, grid, gnm };

inline Family parse_family(std::string_view name) {
    if (name == "path") return Family::path;
    if (name == "cycle") return Family::cycle;
    if (name == "complete") return Family::complete;
    if (name == "star") return Family::star;
    if (name == "grid") return Family::grid;
    if (name == "gnm") return Family::gnm;
    throw std::invalid_argument("unknown graph family '" + std::string(name) + "'");
}

inline std::string_view family_name(Family f) {
    switch (f) {
        case Family::path: return "path";
        case Family::cycle: return "cycle";
        case Family::complete: return "complete";
        case Family::star: return "star";
        case Family::grid: return "grid";
        case Family::gnm: return "gnm";
    }
    return "?";
}

/*
 * `n` is the node count for every family except grid, which uses rows x cols.
 * `m` is only read by gnm. Star is K_{1,n-1} centered at 0.
 */
struct GeneratorParams {
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
};

namespace detail {

// Portable bounded draw: std::uniform_int_distribution is implementation-defined,
// the raw mt19937_64 stream is not.
inline std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

}  // namespace detail

/// Same (family, params, seed) always yields the identical graph.
inline Graph generate(Family family, const GeneratorParams& p, std::uint64_t seed = 1) {
    std::vector<Edge> edges;
    const auto n = p.n;
    switch (family) {
        case Family::path:
            for (std::size_t v = 1; v < n; ++v) edges.push_back({NodeId(v - 1), NodeId(v)});
            return Graph::from_edges(n, edges);
        case Family::cycle:
            if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
            for (std::size_t v = 1; v < n; ++v) edges.push_back({NodeId(v - 1), NodeId(v)});
            edges.push_back({0, NodeId(n - 1)});
            return Graph::from_edges(n, edges);
        case Family::complete:
            for (std::size_t u = 0; u < n; ++u)
                for (std::size_t v = u + 1; v < n; ++v) edges.push_back({NodeId(u), NodeId(v)});
            return Graph::from_edges(n, edges);
        case Family::star:
            for (std::size_t v = 1; v < n; ++v) edges.push_back({0, NodeId(v)});
            return Graph::from_edges(n, edges);
        case Family::grid: {
            const auto r = p.rows, c = p.cols;
            if (r == 0 || c == 0) throw std::invalid_argument("grid needs rows, cols >= 1");
            auto id = [c](std::size_t i, std::size_t j) { return NodeId(i * c + j); };
            for (std::size_t i = 0; i < r; ++i) {
                for (std::size_t j = 0; j < c; ++j) {
                    if (j + 1 < c) edges.push_back({id(i, j), id(i, j + 1)});
                    if (i + 1 < r) edges.push_back({id(i, j), id(i + 1, j)});
                }
            }
            return Graph::from_edges(r * c, edges);
        }
        case Family::gnm: {
            const std::uint64_t pairs = std::uint64_t{n} * (n > 0 ? n - 1 : 0) / 2;
            if (p.m > pairs) {
                throw std::invalid_argument("gnm: m=" + std::to_string(p.m) + " exceeds n(n-1)/2=" +
                                            std::to_string(pairs));
            }
            // Floyd's sampling of m distinct pair indices out of n(n-1)/2.
            std::mt19937_64 rng(seed);
            std::unordered_set<std::uint64_t> chosen;
            chosen.reserve(p.m * 2);
            for (std::uint64_t j = pairs - p.m; j < pairs; ++j) {
                const std::uint64_t t = detail::draw_below(rng, j + 1);
                if (!chosen.insert(t).second) chosen.insert(j);
            }
            std::vector<std::uint64_t> idx(chosen.begin(), chosen.end());
            std::sort(idx.begin(), idx.end());
            // Pair index k enumerates (u,v), u<v, row by row.
            std::uint64_t row_start = 0;
            std::uint64_t u = 0;
            for (auto k : idx) {
                while (k >= row_start + (n - 1 - u)) {
                    row_start += n - 1 - u;
                    ++u;
                }
                edges.push_back({NodeId(u), NodeId(u + 1 + (k - row_start))});
            }
            return Graph::from_edges(n, edges);
        }
    }
    throw std::invalid_argument("unknown family");
}

}  // namespace addspan
