#pragma once

#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "addspan/spanner8.hpp"
#include "addspan/verify.hpp"

// JSON encodings used by the CLI: path-buying traces (one JSON object per
// line) and verification reports.

namespace addspan {

namespace detail {

inline nlohmann::json dist_json(Dist d) {
    if (d == kInfinity) return "inf";
    return d;
}

inline Dist dist_from_json(const nlohmann::json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return kInfinity;
        throw std::runtime_error("bad distance value " + j.dump());
    }
    return j.get<Dist>();
}

}  // namespace detail

struct TraceHeader {
    std::size_t n = 0;
    std::size_t t = 1;
    std::vector<NodeId> centers;
};

/*
 * First line: {"type":"header","n":..,"t":..,"centers":[..]}.
 * Then, in execution order:
 *   {"type":"edge","u":..,"v":..}
 *   {"type":"bound","i":..,"j":..,"old":..,"new":..,"source":"relax"|"to_path_node"|"from_path_node"|"bought_path"}
 * Distances are integers or the string "inf".
 */
inline void write_trace(std::ostream& out, const TraceHeader& header, const Trace& trace) {
    out << nlohmann::json{{"type", "header"}, {"n", header.n}, {"t", header.t}, {"centers", header.centers}}.dump()
        << '\n';
    for (const auto& ev : trace) {
        nlohmann::json j;
        if (ev.kind == TraceEvent::Kind::add_edge) {
            j = {{"type", "edge"}, {"u", ev.a}, {"v", ev.b}};
        } else {
            j = {{"type", "bound"},
                 {"i", ev.a},
                 {"j", ev.b},
                 {"old", detail::dist_json(ev.old_value)},
                 {"new", detail::dist_json(ev.new_value)},
                 {"source", source_name(ev.source)}};
        }
        out << j.dump() << '\n';
    }
}

inline Trace read_trace(std::istream& in, TraceHeader* header = nullptr) {
    Trace trace;
    std::string line;
    std::size_t line_no = 0;
    bool seen_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
            const auto type = j.at("type").get<std::string>();
            if (type == "header") {
                if (header) {
                    header->n = j.at("n").get<std::size_t>();
                    header->t = j.at("t").get<std::size_t>();
                    header->centers = j.at("centers").get<std::vector<NodeId>>();
                }
                seen_header = true;
            } else if (type == "edge") {
                trace.push_back({TraceEvent::Kind::add_edge, j.at("u").get<std::uint32_t>(),
                                 j.at("v").get<std::uint32_t>()});
            } else if (type == "bound") {
                TraceEvent ev{TraceEvent::Kind::bound_update, j.at("i").get<std::uint32_t>(),
                              j.at("j").get<std::uint32_t>(), detail::dist_from_json(j.at("old")),
                              detail::dist_from_json(j.at("new"))};
                const auto src = j.at("source").get<std::string>();
                if (src == "relax") ev.source = BoundSource::relax;
                else if (src == "to_path_node") ev.source = BoundSource::to_path_node;
                else if (src == "from_path_node") ev.source = BoundSource::from_path_node;
                else if (src == "bought_path") ev.source = BoundSource::bought_path;
                else throw std::runtime_error("unknown source '" + src + "'");
                trace.push_back(ev);
            } else {
                throw std::runtime_error("unknown record type '" + type + "'");
            }
        } catch (const std::exception& e) {
            throw std::runtime_error("trace line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (header && !seen_header) throw std::runtime_error("trace has no header line");
    return trace;
}

inline nlohmann::json to_json(const verify::VerificationReport& rep) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : rep.checks) {
        nlohmann::json j{{"name", c.name}, {"passed", c.passed}, {"observed", c.observed}, {"bound", c.bound}};
        if (!c.passed) j["witness"] = c.witness;
        checks.push_back(std::move(j));
    }
    return {{"passed", rep.passed()},
            {"failed", rep.num_failed()},
            {"total", rep.checks.size()},
            {"mode", rep.sampled ? "sampled" : "exhaustive"},
            {"checks", std::move(checks)}};
}

}  // namespace addspan
