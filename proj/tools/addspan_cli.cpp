#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "addspan/addspan.hpp"
#include "addspan/json_io.hpp"
#include "addspan/oracle_io.hpp"

using namespace addspan;
using nlohmann::json;

namespace {

constexpr std::uint64_t kDefaultSeed = 1;

enum Exit { ok = 0, verification_failed = 1, usage_error = 2 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Graph read_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    try {
        return load_edge_list(in);
    } catch (const ParseError& e) {
        throw UsageError(path + ": " + e.what());
    }
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw UsageError("cannot write " + path);
}

void write_json(const std::string& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

std::string edges_text(const Spanner& h) {
    std::ostringstream out;
    save_edge_list(out, h.to_graph());
    return out.str();
}

DistanceOracle read_oracle(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open " + path);
    try {
        return load_oracle(in);
    } catch (const OracleFormatError& e) {
        throw UsageError(path + ": " + e.what());
    }
}

json stretch_json(const verify::VerificationReport& rep) {
    const auto* s = rep.find("additive_stretch");
    json j = to_json(rep);
    if (s) j["max_stretch"] = s->observed;
    return j;
}

// ---- gen

struct GenArgs {
    std::string family;
    std::size_t n = 0, m = 0, rows = 0, cols = 0;
    std::uint64_t seed = kDefaultSeed;
    std::string out = "-";
};

int run_gen(const GenArgs& a) {
    Family f;
    try {
        f = parse_family(a.family);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    Graph g;
    try {
        g = generate(f, {.n = a.n, .m = a.m, .rows = a.rows, .cols = a.cols}, a.seed);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    write_text(a.out, to_edge_list(g));
    return ok;
}

// ---- spanner2 / spanner8

struct SpannerArgs {
    std::string in, out, stats, trace;
    std::optional<std::size_t> t;
    bool verify = false;
};

void check_t(const std::optional<std::size_t>& t) {
    if (t && *t == 0) throw UsageError("--t must be at least 1");
}

int run_spanner2(const SpannerArgs& a) {
    check_t(a.t);
    const Graph g = read_graph(a.in);
    const auto start = Clock::now();
    const auto r = build_2_spanner(g, a.t);
    const double build_ms = ms_since(start);
    const std::size_t n = g.num_nodes();
    const std::size_t ell = r.clustering.num_clusters();

    write_text(a.out, edges_text(r.spanner));
    const auto budget = verify::check_edge_budget(r.spanner, verify::BudgetFormula::two_spanner, n,
                                                  r.clustering.threshold, ell);
    json stats{{"command", "spanner2"},
               {"n", n},
               {"m", g.num_edges()},
               {"t", r.clustering.threshold},
               {"l", ell},
               {"edges", r.spanner.num_edges()},
               {"tree_edges", r.spanner.count(EdgeOrigin::tree)},
               {"residual_edges", r.spanner.count(EdgeOrigin::residual)},
               {"edge_budget", verify::edge_budget(verify::BudgetFormula::two_spanner, n)},
               {"within_budget", budget.passed()}};
    bool passed = budget.passed();
    if (a.verify) {
        const auto rep = verify::check_stretch(g, r.spanner, 2);
        stats["verification"] = stretch_json(rep);
        passed = passed && rep.passed();
    }
    stats["timing"] = {{"build_ms", build_ms}};
    if (!a.stats.empty()) write_json(a.stats, stats);
    return passed ? ok : verification_failed;
}

int run_spanner8(const SpannerArgs& a) {
    check_t(a.t);
    const Graph g = read_graph(a.in);
    Trace trace;
    EightSpannerOptions opts;
    opts.t_override = a.t;
    opts.trace = a.trace.empty() ? nullptr : &trace;
    const auto start = Clock::now();
    const auto r = build_8_spanner(g, opts);
    const double build_ms = ms_since(start);
    const std::size_t n = g.num_nodes();
    const std::size_t ell = r.clustering.num_clusters();

    write_text(a.out, edges_text(r.spanner));
    if (!a.trace.empty()) {
        std::ostringstream buf;
        write_trace(buf, {n, r.clustering.threshold, r.clustering.centers}, trace);
        write_text(a.trace, buf.str());
    }

    const auto budget = verify::check_edge_budget(r.spanner, verify::BudgetFormula::eight_spanner, n,
                                                  r.clustering.threshold, ell);
    json stats{{"command", "spanner8"},
               {"n", n},
               {"m", g.num_edges()},
               {"t", r.clustering.threshold},
               {"l", ell},
               {"edges", r.spanner.num_edges()},
               {"star_edges", r.spanner.count(EdgeOrigin::cluster_star)},
               {"residual_edges", r.spanner.count(EdgeOrigin::residual)},
               {"bought_edges", r.spanner.count(EdgeOrigin::bought_path)},
               {"paths_bought", r.buy.paths_bought},
               {"bound_decreases", r.buy.bound_decreases},
               {"max_path_nodes", r.buy.max_path_nodes},
               {"max_nodes_per_color", r.buy.max_nodes_per_color},
               {"edge_budget", verify::edge_budget(verify::BudgetFormula::eight_spanner, n)},
               {"within_budget", budget.passed()},
               {"budget_checks", to_json(budget)}};
    bool passed = budget.passed();
    if (a.verify) {
        auto rep = verify::check_stretch(g, r.spanner, 8);
        const auto h = r.spanner.to_graph();
        rep.merge(verify::check_bounds_after_buying(g, h, r.clustering, r.tables));
        stats["verification"] = stretch_json(rep);
        passed = passed && rep.passed();
    }
    stats["timing"] = {{"build_ms", build_ms}};
    if (!a.stats.empty()) write_json(a.stats, stats);
    return passed ? ok : verification_failed;
}

// ---- verify

struct VerifyArgs {
    std::string graph, spanner, report, trace;
    Dist k = 8;
};

int run_verify(const VerifyArgs& a) {
    const Graph g = read_graph(a.graph);
    const Graph h = read_graph(a.spanner);
    auto rep = verify::check_stretch(g, h, a.k);
    if (!a.trace.empty()) {
        std::ifstream in(a.trace);
        if (!in) throw UsageError("cannot open " + a.trace);
        TraceHeader header;
        Trace trace;
        try {
            trace = read_trace(in, &header);
        } catch (const std::runtime_error& e) {
            throw UsageError(a.trace + ": " + e.what());
        }
        if (header.n != g.num_nodes()) throw UsageError("trace was recorded on a graph with a different n");
        if (g.num_nodes() > verify::kReplayMaxNodes) {
            throw UsageError("trace replay is limited to n <= " + std::to_string(verify::kReplayMaxNodes));
        }
        const auto c = build_clustering(g, header.t);
        auto& same = rep.add("trace_centers_match");
        if (c.centers != header.centers) {
            same.passed = false;
            same.witness = "trace centers differ from the clustering of the graph at t=" + std::to_string(header.t);
        } else {
            rep.merge(verify::replay_delta_log(trace, g, c));
        }
    }
    const json j = to_json(rep);
    if (!a.report.empty()) write_json(a.report, j);
    else std::cout << j.dump(2) << '\n';
    return rep.passed() ? ok : verification_failed;
}

// ---- oracle

struct OracleArgs {
    std::string in, out, oracle, pairs;
    std::optional<std::size_t> t;
};

int run_oracle_build(const OracleArgs& a) {
    check_t(a.t);
    const Graph g = read_graph(a.in);
    const auto o = build_oracle(g, {.t_override = a.t});
    std::ofstream out(a.out, std::ios::binary);
    if (!out) throw UsageError("cannot write " + a.out);
    save_oracle(out, o);
    return ok;
}

std::string dist_text(Dist d) { return d == kInfinity ? "inf" : std::to_string(d); }

int run_oracle_query(const OracleArgs& a) {
    const auto o = read_oracle(a.oracle);
    std::ifstream in(a.pairs);
    if (!in) throw UsageError("cannot open " + a.pairs);
    std::ostringstream out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        long long u = 0, v = 0;
        if (!(ls >> u)) continue;
        std::string rest;
        if (!(ls >> v) || (ls >> rest) || u < 0 || v < 0 || std::size_t(u) >= o.num_nodes() ||
            std::size_t(v) >= o.num_nodes()) {
            throw UsageError(a.pairs + ":" + std::to_string(line_no) + ": expected two node ids below " +
                             std::to_string(o.num_nodes()));
        }
        out << u << ' ' << v << ' ' << dist_text(o.query(NodeId(u), NodeId(v))) << '\n';
    }
    write_text(a.out.empty() ? "-" : a.out, out.str());
    return ok;
}

int run_oracle_apasp(const OracleArgs& a) {
    const auto o = read_oracle(a.oracle);
    const auto m = all_pairs_estimates(o);
    std::ostringstream out;
    for (NodeId u = 0; u < o.num_nodes(); ++u) {
        for (NodeId v = 0; v < o.num_nodes(); ++v) out << (v ? " " : "") << dist_text(m(u, v));
        out << '\n';
    }
    write_text(a.out, out.str());
    return ok;
}

// ---- bench

struct BenchArgs {
    std::string family = "gnm";
    std::string density = "dense";
    std::vector<std::size_t> sizes{200, 400, 800, 1600};
    std::size_t repeats = 3;
    std::uint64_t seed = kDefaultSeed;
    std::string out = "-";
};

std::size_t density_edges(const std::string& density, std::size_t n) {
    if (density == "sparse") return 2 * n;
    if (density == "medium") return static_cast<std::size_t>(std::ceil(std::pow(double(n), 1.5)));
    if (density == "dense") return n * n / 8;
    throw UsageError("unknown density '" + density + "' (sparse, medium, dense)");
}

int run_bench(const BenchArgs& a) {
    Family f;
    try {
        f = parse_family(a.family);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (a.repeats == 0) throw UsageError("--repeats must be at least 1");
    json runs = json::array();
    json times = json::array();
    json ratios = json::array();
    double prev = 0;
    for (std::size_t n : a.sizes) {
        GeneratorParams p{.n = n};
        if (f == Family::gnm) p.m = density_edges(a.density, n);
        if (f == Family::grid) {
            p.rows = static_cast<std::size_t>(std::sqrt(double(n)));
            p.cols = p.rows ? n / p.rows : 0;
        }
        const Graph g = generate(f, p, a.seed);
        double best = 0;
        EightSpannerResult r;
        for (std::size_t rep = 0; rep < a.repeats; ++rep) {
            const auto start = Clock::now();
            r = build_8_spanner(g);
            const double ms = ms_since(start);
            if (rep == 0 || ms < best) best = ms;
        }
        runs.push_back({{"n", g.num_nodes()},
                        {"m", g.num_edges()},
                        {"t", r.clustering.threshold},
                        {"l", r.clustering.num_clusters()},
                        {"edges", r.spanner.num_edges()},
                        {"bought_edges", r.spanner.count(EdgeOrigin::bought_path)},
                        {"edge_budget", verify::edge_budget(verify::BudgetFormula::eight_spanner, g.num_nodes())}});
        times.push_back(best);
        if (prev > 0) ratios.push_back(best / prev);
        prev = best;
        std::cerr << "n=" << g.num_nodes() << " m=" << g.num_edges() << " build_ms=" << best << '\n';
    }
    json out{{"command", "bench"},
             {"family", a.family},
             {"density", f == Family::gnm ? json(a.density) : json(nullptr)},
             {"seed", a.seed},
             {"runs", runs},
             {"timing", {{"repeats", a.repeats}, {"build_ms_min", times}, {"ratios", ratios}}}};
    write_json(a.out, out);
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Additive spanners and a (2,1) distance oracle for unweighted graphs"};
    app.require_subcommand(1);
    std::function<int()> action;

    GenArgs gen;
    auto* g = app.add_subcommand("gen", "Generate a graph as an edge list");
    g->add_option("--family", gen.family, "path, cycle, complete, star, grid or gnm")->required();
    g->add_option("--n", gen.n, "Node count");
    g->add_option("--m", gen.m, "Edge count (gnm)");
    g->add_option("--rows", gen.rows, "Grid rows");
    g->add_option("--cols", gen.cols, "Grid columns");
    g->add_option("--seed", gen.seed, "PRNG seed")->capture_default_str();
    g->add_option("--out", gen.out, "Output file, - for stdout")->capture_default_str();
    g->callback([&] { action = [&] { return run_gen(gen); }; });

    SpannerArgs s2;
    auto* sp2 = app.add_subcommand("spanner2", "Build an additive 2-spanner");
    sp2->add_option("--in", s2.in, "Input edge list")->required();
    sp2->add_option("--out", s2.out, "Output edge list")->required();
    sp2->add_option("--stats", s2.stats, "Write run statistics as JSON");
    sp2->add_option("--t", s2.t, "Clustering threshold (default ceil(sqrt n))");
    sp2->add_flag("--verify", s2.verify, "Check the stretch exhaustively (sampled above 300 nodes)");
    sp2->callback([&] { action = [&] { return run_spanner2(s2); }; });

    SpannerArgs s8;
    auto* sp8 = app.add_subcommand("spanner8", "Build an additive 8-spanner");
    sp8->add_option("--in", s8.in, "Input edge list")->required();
    sp8->add_option("--out", s8.out, "Output edge list")->required();
    sp8->add_option("--stats", s8.stats, "Write run statistics as JSON");
    sp8->add_option("--trace", s8.trace, "Write the path-buying log as JSON lines");
    sp8->add_option("--t", s8.t, "Clustering threshold (default ceil(cbrt n))");
    sp8->add_flag("--verify", s8.verify, "Check stretch and center bounds");
    sp8->callback([&] { action = [&] { return run_spanner8(s8); }; });

    VerifyArgs va;
    auto* ver = app.add_subcommand("verify", "Check that a spanner is an additive k-spanner of a graph");
    ver->add_option("--graph", va.graph, "Original edge list")->required();
    ver->add_option("--spanner", va.spanner, "Spanner edge list")->required();
    ver->add_option("--k", va.k, "Additive stretch bound")->capture_default_str();
    ver->add_option("--report", va.report, "Write the report as JSON (default stdout)");
    ver->add_option("--trace", va.trace, "Replay a spanner8 trace against the graph");
    ver->callback([&] { action = [&] { return run_verify(va); }; });

    OracleArgs oa;
    auto* orc = app.add_subcommand("oracle", "Build or query a distance oracle");
    orc->require_subcommand(1);
    auto* ob = orc->add_subcommand("build", "Build an oracle file from an edge list");
    ob->add_option("--in", oa.in, "Input edge list")->required();
    ob->add_option("--out", oa.out, "Oracle file")->required();
    ob->add_option("--t", oa.t, "Clustering threshold (default ceil(cbrt n))");
    ob->callback([&] { action = [&] { return run_oracle_build(oa); }; });
    auto* oq = orc->add_subcommand("query", "Answer \"u v\" lines with \"u v estimate\"");
    oq->add_option("--oracle", oa.oracle, "Oracle file")->required();
    oq->add_option("--pairs", oa.pairs, "File of node pairs")->required();
    oq->add_option("--out", oa.out, "Output file (default stdout)");
    oq->callback([&] { action = [&] { return run_oracle_query(oa); }; });
    auto* op = orc->add_subcommand("apasp", "Write the full estimate matrix");
    op->add_option("--oracle", oa.oracle, "Oracle file")->required();
    op->add_option("--out", oa.out, "Matrix file, - for stdout")->required();
    op->callback([&] { action = [&] { return run_oracle_apasp(oa); }; });

    BenchArgs ba;
    auto* bn = app.add_subcommand("bench", "Time the 8-spanner over growing graphs");
    bn->add_option("--family", ba.family, "Graph family")->capture_default_str();
    bn->add_option("--sizes", ba.sizes, "Comma-separated node counts")->delimiter(',')->capture_default_str();
    bn->add_option("--density", ba.density, "gnm density: sparse, medium or dense")->capture_default_str();
    bn->add_option("--repeats", ba.repeats, "Runs per size; the fastest is kept")->capture_default_str();
    bn->add_option("--seed", ba.seed, "PRNG seed")->capture_default_str();
    bn->add_option("--out", ba.out, "JSON output, - for stdout")->capture_default_str();
    bn->callback([&] { action = [&] { return run_bench(ba); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : usage_error;
    }

    try {
        return action();
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const GraphError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const InvariantViolation& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return verification_failed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage_error;
    }
}
