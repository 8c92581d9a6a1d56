#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "test_support.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("addspan_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    int run(const std::string& args) const {
        const std::string cmd = std::string(ADDSPAN_CLI_PATH) + " " + args + " >" + path("stdout.txt") + " 2>" +
                                path("stderr.txt");
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    std::string slurp(const std::string& name) const {
        std::ifstream in(path(name), std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    void spit(const std::string& name, const std::string& text) const {
        std::ofstream(path(name), std::ios::binary) << text;
    }

    fs::path dir_;
};

}  // namespace

TEST_F(Cli, GenIsDeterministic) {
    ASSERT_EQ(run("gen --family gnm --n 100 --m 1500 --seed 7 --out " + path("a.edges")), 0);
    ASSERT_EQ(run("gen --family gnm --n 100 --m 1500 --seed 7 --out " + path("b.edges")), 0);
    EXPECT_EQ(slurp("a.edges"), slurp("b.edges"));
    const auto g = addspan::load_edge_list(slurp("a.edges"));
    EXPECT_EQ(g.num_nodes(), 100u);
    EXPECT_EQ(g.num_edges(), 1500u);
    EXPECT_EQ(slurp("a.edges"),
              addspan::to_edge_list(addspan::generate(addspan::Family::gnm, {.n = 100, .m = 1500}, 7)));
}

TEST_F(Cli, GenDefaultSeedIsOne) {
    ASSERT_EQ(run("gen --family gnm --n 30 --m 60 --out " + path("a.edges")), 0);
    EXPECT_EQ(slurp("a.edges"), addspan::to_edge_list(addspan::generate(addspan::Family::gnm, {.n = 30, .m = 60}, 1)));
}

TEST_F(Cli, Spanner8OnTreeHasZeroStretch) {
    ASSERT_EQ(run("gen --family star --n 40 --out " + path("g.edges")), 0);
    ASSERT_EQ(run("spanner8 --in " + path("g.edges") + " --out " + path("h.edges") + " --stats " +
                  path("s.json") + " --verify"),
              0);
    EXPECT_EQ(slurp("g.edges"), slurp("h.edges"));
    const auto stats = json::parse(slurp("s.json"));
    EXPECT_EQ(stats["verification"]["max_stretch"], 0.0);
    EXPECT_EQ(stats["verification"]["passed"], true);
    EXPECT_TRUE(stats.contains("timing"));
}

TEST_F(Cli, Spanner8OutputsAreReproducible) {
    ASSERT_EQ(run("gen --family gnm --n 120 --m 2000 --out " + path("g.edges")), 0);
    for (const char* tag : {"1", "2"}) {
        ASSERT_EQ(run("spanner8 --in " + path("g.edges") + " --out " + path(std::string("h") + tag) + " --stats " +
                      path(std::string("s") + tag) + " --trace " + path(std::string("t") + tag)),
                  0);
    }
    EXPECT_EQ(slurp("h1"), slurp("h2"));
    EXPECT_EQ(slurp("t1"), slurp("t2"));
    auto s1 = json::parse(slurp("s1"));
    auto s2 = json::parse(slurp("s2"));
    s1.erase("timing");
    s2.erase("timing");
    EXPECT_EQ(s1, s2);
    EXPECT_EQ(s1["edges"].get<std::size_t>(),
              s1["star_edges"].get<std::size_t>() + s1["residual_edges"].get<std::size_t>() +
                  s1["bought_edges"].get<std::size_t>());
}

TEST_F(Cli, VerifyReplaysTrace) {
    ASSERT_EQ(run("gen --family gnm --n 100 --m 1200 --seed 3 --out " + path("g.edges")), 0);
    ASSERT_EQ(run("spanner8 --in " + path("g.edges") + " --out " + path("h.edges") + " --trace " + path("t.jsonl")),
              0);
    ASSERT_EQ(run("verify --graph " + path("g.edges") + " --spanner " + path("h.edges") + " --k 8 --trace " +
                  path("t.jsonl") + " --report " + path("r.json")),
              0);
    const auto report = json::parse(slurp("r.json"));
    EXPECT_EQ(report["passed"], true);
    bool replayed = false;
    for (const auto& c : report["checks"]) replayed = replayed || c["name"] == "logged_bounds_sound";
    EXPECT_TRUE(replayed);
}

TEST_F(Cli, VerifyFailureExitsOne) {
    spit("c6.edges", "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n");
    spit("p6.edges", "6 5\n0 1\n1 2\n2 3\n3 4\n4 5\n");
    EXPECT_EQ(run("verify --graph " + path("c6.edges") + " --spanner " + path("p6.edges") + " --k 2 --report " +
                  path("r.json")),
              1);
    const auto report = json::parse(slurp("r.json"));
    EXPECT_EQ(report["passed"], false);
    bool found = false;
    for (const auto& c : report["checks"])
        if (c["name"] == "additive_stretch") {
            found = true;
            EXPECT_NE(c["witness"].get<std::string>().find("(0,5)"), std::string::npos);
        }
    EXPECT_TRUE(found);
    EXPECT_EQ(run("verify --graph " + path("c6.edges") + " --spanner " + path("p6.edges") + " --k 4"), 0);
}

TEST_F(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run(""), 2);
    EXPECT_EQ(run("spanner8 --in " + path("missing.edges") + " --out " + path("h.edges")), 2);
    EXPECT_EQ(run("gen --family petersen --n 10"), 2);
    EXPECT_EQ(run("gen --family gnm --n 5 --m 11"), 2);
    EXPECT_EQ(run("spanner2 --bogus"), 2);
    spit("bad.edges", "3 1\n0 0\n");
    EXPECT_EQ(run("spanner2 --in " + path("bad.edges") + " --out " + path("h.edges")), 2);
    EXPECT_NE(slurp("stderr.txt").find("self-loop"), std::string::npos);
    spit("ok.edges", "3 1\n0 1\n");
    EXPECT_EQ(run("spanner8 --in " + path("ok.edges") + " --out " + path("h.edges") + " --t 0"), 2);
}

TEST_F(Cli, Spanner2Stats) {
    ASSERT_EQ(run("gen --family gnm --n 100 --m 2000 --seed 3 --out " + path("g.edges")), 0);
    ASSERT_EQ(run("spanner2 --in " + path("g.edges") + " --out " + path("h.edges") + " --stats " + path("s.json") +
                  " --verify"),
              0);
    const auto stats = json::parse(slurp("s.json"));
    EXPECT_LE(stats["edges"].get<double>(), stats["edge_budget"].get<double>());
    EXPECT_LE(stats["verification"]["max_stretch"].get<double>(), 2.0);
}

TEST_F(Cli, OracleBuildQueryApasp) {
    ASSERT_EQ(run("gen --family gnm --n 60 --m 400 --seed 2 --out " + path("g.edges")), 0);
    ASSERT_EQ(run("oracle build --in " + path("g.edges") + " --out " + path("o.bin")), 0);
    spit("pairs.txt", "0 1\n# comment\n5 5\n\n7 42\n");
    ASSERT_EQ(run("oracle query --oracle " + path("o.bin") + " --pairs " + path("pairs.txt") + " --out " +
                  path("ans.txt")),
              0);
    const auto g = addspan::load_edge_list(slurp("g.edges"));
    const auto o = addspan::build_oracle(g);
    std::istringstream ans(slurp("ans.txt"));
    std::vector<std::array<std::size_t, 3>> rows;
    std::size_t u, v, e;
    while (ans >> u >> v >> e) rows.push_back({u, v, e});
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[1], (std::array<std::size_t, 3>{5, 5, 0}));
    EXPECT_EQ(rows[2][2], o.query(7, 42));

    ASSERT_EQ(run("oracle apasp --oracle " + path("o.bin") + " --out " + path("m.txt")), 0);
    const auto all = addspan::all_pairs_estimates(o);
    std::istringstream mat(slurp("m.txt"));
    for (addspan::NodeId a = 0; a < 60; ++a)
        for (addspan::NodeId b = 0; b < 60; ++b) {
            std::string tok;
            ASSERT_TRUE(mat >> tok);
            EXPECT_EQ(tok, all(a, b) == addspan::kInfinity ? "inf" : std::to_string(all(a, b)));
        }

    spit("badpairs.txt", "0 99\n");
    EXPECT_EQ(run("oracle query --oracle " + path("o.bin") + " --pairs " + path("badpairs.txt")), 2);
    spit("junk.bin", "not an oracle");
    EXPECT_EQ(run("oracle apasp --oracle " + path("junk.bin") + " --out " + path("m.txt")), 2);
}

TEST_F(Cli, BenchWritesRatios) {
    ASSERT_EQ(run("bench --family gnm --sizes 40,80 --repeats 1 --out " + path("b.json")), 0);
    const auto b = json::parse(slurp("b.json"));
    ASSERT_EQ(b["runs"].size(), 2u);
    EXPECT_EQ(b["runs"][1]["n"], 80);
    EXPECT_EQ(b["runs"][1]["m"], 800);
    EXPECT_EQ(b["timing"]["ratios"].size(), 1u);
}
