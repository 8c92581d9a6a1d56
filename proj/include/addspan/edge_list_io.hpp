#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "addspan/graph.hpp"

namespace addspan {

class ParseError : public GraphError {
public:
    ParseError(std::size_t line, const std::string& what)
        : GraphError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

namespace detail {

inline bool next_record(std::istream& in, std::string& buf, std::size_t& line_no) {
    while (std::getline(in, buf)) {
        ++line_no;
        if (auto hash = buf.find('#'); hash != std::string::npos) buf.erase(hash);
        if (buf.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
}

inline std::vector<unsigned long long> parse_ints(const std::string& s, std::size_t line_no,
                                                  std::size_t expected) {
    std::istringstream ss(s);
    std::vector<unsigned long long> out;
    std::string tok;
    while (ss >> tok) {
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
            throw ParseError(line_no, "expected non-negative integer, got '" + tok + "'");
        }
        try {
            out.push_back(std::stoull(tok));
        } catch (const std::exception&) {
            throw ParseError(line_no, "integer out of range: '" + tok + "'");
        }
    }
    if (out.size() != expected) {
        throw ParseError(line_no, "expected " + std::to_string(expected) + " integers, got " +
                                      std::to_string(out.size()));
    }
    return out;
}

}  // namespace detail

/*
 * Reads "n m" followed by exactly m lines "u v". '#' starts a comment that
 * runs to end of line; blank lines are ignored.
 */
inline Graph load_edge_list(std::istream& in) {
    std::string buf;
    std::size_t line_no = 0;
    if (!detail::next_record(in, buf, line_no)) throw ParseError(line_no, "missing header 'n m'");
    const auto header = detail::parse_ints(buf, line_no, 2);
    const auto n = header[0];
    const auto m = header[1];
    if (n >= kNoNode) throw ParseError(line_no, "node count too large");

    std::vector<Edge> edges;
    edges.reserve(m);
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(m);
    for (unsigned long long i = 0; i < m; ++i) {
        if (!detail::next_record(in, buf, line_no)) {
            throw ParseError(line_no, "expected " + std::to_string(m) + " edges, found " +
                                          std::to_string(i));
        }
        const auto uv = detail::parse_ints(buf, line_no, 2);
        for (auto x : uv) {
            if (x >= n) throw ParseError(line_no, "node id " + std::to_string(x) + " out of range");
        }
        const auto u = static_cast<NodeId>(uv[0]);
        const auto v = static_cast<NodeId>(uv[1]);
        if (u == v) throw ParseError(line_no, "self-loop at node " + std::to_string(u));
        if (!seen.insert(edge_key(u, v)).second) {
            throw ParseError(line_no, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
        }
        edges.push_back({u, v});
    }
    if (detail::next_record(in, buf, line_no)) {
        throw ParseError(line_no, "trailing data after " + std::to_string(m) + " edges");
    }
    return Graph::from_edges(n, edges);
}

inline Graph load_edge_list(const std::string& text) {
    std::istringstream in(text);
    return load_edge_list(in);
}

/// Canonical form: edges in sorted (min,max) order.
inline void save_edge_list(std::ostream& out, const Graph& g) {
    out << g.num_nodes() << ' ' << g.num_edges() << '\n';
    for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

inline std::string to_edge_list(const Graph& g) {
    std::ostringstream out;
    save_edge_list(out, g);
    return out.str();
}

}  // namespace addspan
