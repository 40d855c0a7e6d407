#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sperner/cli.hpp"

namespace fs = std::filesystem;
using namespace sperner;

namespace {

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("sperner_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(path(name)) << text;
        return path(name);
    }

    int run(std::vector<std::string> args) {
        out_.str("");
        err_.str("");
        return cli::run(args, out_, err_);
    }

    std::string two_loops() const {
        return write("two_loops.json", R"({"vertices": ["s"], "source": "s", "edges": [
            {"id": "a", "from": "s", "to": "s", "length": "1.0"},
            {"id": "b", "from": "s", "to": "s", "length": "1.414213562373"}]})");
    }
    std::string self_loop() const {
        return write("loop.json", R"({"vertices": ["s"], "source": "s", "edges": [
            {"id": "loop", "from": "s", "to": "s", "length": "0.75"}]})");
    }

    static std::string slurp(const std::string& p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    fs::path dir_;
    std::ostringstream out_, err_;
};

std::vector<std::vector<std::string>> read_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.push_back("");
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_F(CliTest, ValidateStarLoops) {
    ASSERT_EQ(run({"examples", "star-loops", "--k", "3", "--out", path("star.json")}), 0);
    EXPECT_EQ(run({"validate", path("star.json")}), 0);
    EXPECT_NE(out_.str().find("sperner: true"), std::string::npos);
    EXPECT_NE(out_.str().find("beta: 3"), std::string::npos);
    EXPECT_NE(out_.str().find("edge-sum: ok"), std::string::npos);
}

TEST_F(CliTest, ValidateCircleChordsIsOutOfClass) {
    ASSERT_EQ(run({"examples", "circle-chords", "--out", path("cc.json")}), 0);
    EXPECT_EQ(run({"validate", path("cc.json")}), 1);
    EXPECT_NE(out_.str().find("sperner: false"), std::string::npos);
    EXPECT_NE(out_.str().find("strongly-connected: true"), std::string::npos);
}

TEST_F(CliTest, NegativeLengthIsParseError) {
    auto f = write("bad.json", R"({"vertices": ["s"], "source": "s", "edges": [
        {"id": "e", "from": "s", "to": "s", "length": "-2"}]})");
    EXPECT_EQ(run({"validate", f}), 2);
    EXPECT_NE(err_.str().find("edges[0].length"), std::string::npos);
    EXPECT_EQ(run({"validate", path("missing.json")}), 2);
}

TEST_F(CliTest, Count) {
    auto f = two_loops();
    EXPECT_EQ(run({"count", f, "--time", "10"}), 0);
    EXPECT_EQ(out_.str(), "exact=19\n");
    EXPECT_EQ(run({"count", f, "--time", "10", "--oracle"}), 0);
    EXPECT_EQ(out_.str(), "exact=19 oracle=19 MATCH\n");
    EXPECT_EQ(run({"count", self_loop(), "--time", "1e6"}), 0);
    EXPECT_EQ(out_.str(), "exact=1\n");
}

TEST_F(CliTest, CountUsageErrors) {
    auto f = two_loops();
    EXPECT_EQ(run({"count", f}), 2);
    EXPECT_EQ(run({"count", f, "--time", "-1"}), 2);
    EXPECT_EQ(run({}), 2);
    EXPECT_EQ(run({"frobnicate"}), 2);
}

TEST_F(CliTest, CountOutOfClass) {
    run({"examples", "circle-chords", "--out", path("cc.json")});
    EXPECT_EQ(run({"count", path("cc.json"), "--time", "1"}), 1);
    EXPECT_EQ(run({"count", path("cc.json"), "--time", "1", "--oracle-only"}), 0);
    EXPECT_EQ(out_.str(), "oracle=3\n");
}

TEST_F(CliTest, JumpsAndAsympt) {
    auto f = two_loops();
    EXPECT_EQ(run({"jumps", f, "--time", "3"}), 0);
    const std::string table = out_.str();
    EXPECT_EQ(table.rfind("time,jump,vertex,cycles,time_vector,total\n", 0), 0u);
    EXPECT_NE(table.find("0,2,s,-,\"{}\",2\n"), std::string::npos);
    EXPECT_NE(table.find("3,1,s,1,\"{a:3}\",7\n"), std::string::npos);

    EXPECT_EQ(run({"asympt", f}), 0);
    EXPECT_EQ(out_.str(), "beta=2 coefficient=1.70710678119\n");
}

TEST_F(CliTest, SweepSelfLoopRatiosAreOne) {
    EXPECT_EQ(run({"sweep", self_loop(), "--t-max", "50", "--steps", "10", "--out", path("s.csv")}), 0);
    auto rows = read_csv(slurp(path("s.csv")));
    ASSERT_EQ(rows.size(), 11u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"T", "N_exact", "N_oracle", "asymptotic", "ratio"}));
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i][1], "1");
        EXPECT_EQ(rows[i][2], "");
        EXPECT_EQ(rows[i][4], "1");
    }
    EXPECT_EQ(rows[3][0], "15");
}

TEST_F(CliTest, SweepTwoLoopsConverges) {
    auto f = two_loops();
    EXPECT_EQ(run({"sweep", f, "--t-max", "200", "--steps", "20", "--out", path("t.csv"), "--oracle"}), 0);
    auto first = slurp(path("t.csv"));
    auto rows = read_csv(first);
    ASSERT_EQ(rows.size(), 21u);
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(rows[i][1], rows[i][2]);
    EXPECT_EQ(rows.back()[1], "343");
    const double ratio = std::stod(rows.back()[4]);
    EXPECT_GE(ratio, 0.9);
    EXPECT_LE(ratio, 1.1);

    // byte-for-byte deterministic
    EXPECT_EQ(run({"sweep", f, "--t-max", "200", "--steps", "20", "--out", path("t2.csv"), "--oracle"}), 0);
    EXPECT_EQ(slurp(path("t2.csv")), first);
}

TEST_F(CliTest, SweepErrors) {
    auto f = two_loops();
    EXPECT_EQ(run({"sweep", f, "--t-max", "10", "--steps", "5", "--out", "/nonexistent/dir/x.csv"}), 2);
    EXPECT_EQ(run({"sweep", f, "--t-max", "10", "--steps", "1", "--out", path("x.csv")}), 2);
    EXPECT_EQ(run({"sweep", f, "--t-max", "0", "--steps", "5", "--out", path("x.csv")}), 2);
}

TEST_F(CliTest, Audit) {
    auto rational = write("rational.json", R"({"vertices": ["s"], "source": "s", "edges": [
        {"id": "a", "from": "s", "to": "s", "length": "1.0"},
        {"id": "b", "from": "s", "to": "s", "length": "2.0"}]})");
    EXPECT_EQ(run({"audit", rational, "--horizon", "5"}), 1);
    EXPECT_NE(out_.str().find("collision: {b:1} t=2 ~ {a:2} t=2"), std::string::npos);
    EXPECT_EQ(run({"audit", two_loops(), "--horizon", "20"}), 0);
    EXPECT_EQ(out_.str(), "warnings=0\n");
    EXPECT_EQ(run({"audit", two_loops(), "--horizon", "20", "--epsilon", "0.1"}), 1);
}

TEST_F(CliTest, Examples) {
    EXPECT_EQ(run({"examples", "star-loops", "--k", "1", "--out", path("k1.json")}), 0);
    EXPECT_EQ(run({"validate", path("k1.json")}), 0);
    EXPECT_NE(out_.str().find("beta: 1"), std::string::npos);
    EXPECT_EQ(run({"examples", "path-cycle", "--n", "4", "--out", path("pc.json")}), 0);
    EXPECT_EQ(run({"validate", path("pc.json")}), 0);
    EXPECT_EQ(run({"examples", "nonsense", "--out", path("x.json")}), 2);
    EXPECT_EQ(run({"examples", "star-loops", "--k", "2", "--lengths", "1.5", "--out", path("x.json")}), 2);

    ASSERT_EQ(run({"examples", "star-loops", "--k", "3", "--lengths", "1.1,1.3,1.7", "--out",
                   path("q.json")}),
              0);
    EXPECT_EQ(run({"asympt", path("q.json")}), 0);
    // (2Σq) / (2! · Π 2q_i)
    const double expected = 2 * (1.1 + 1.3 + 1.7) / (2.0 * (2.2 * 2.6 * 3.4));
    EXPECT_EQ(out_.str(), "beta=3 coefficient=" + format_real(expected) + "\n");
}
