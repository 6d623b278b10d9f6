#include "lensgrid/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace lensgrid;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "lensgrid");
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(LENSGRID_SAMPLES) + "/" + name; }

class Cli : public ::testing::Test {
protected:
    fs::path dir;
    void SetUp() override {
        dir = fs::temp_directory_path() /
              ("lensgrid_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }
    std::string write(const std::string& name, const std::string& text) {
        auto p = dir / name;
        std::ofstream(p) << text;
        return p.string();
    }
    std::string write(const std::string& name, const GridDiagram& g) { return write(name, format_grid(g)); }
};

const GridDiagram U2{{1, 0}, 2, {1, 0}, {0, 1}};
const GridDiagram T1{{5, 2}, 1, {0}, {3}};

}  // namespace

TEST_F(Cli, TbOfTheUnknot) {
    auto r = run({"tb", sample("u2.grid")});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "tb = -1/1\ntb_grading = -1/1\n");
    auto d = run({"tb", sample("t1.grid"), "--decimal"});
    EXPECT_EQ(d.code, 0);
    EXPECT_NE(d.out.find("-0.4"), std::string::npos) << d.out;
}

TEST_F(Cli, ValidateAndInputErrors) {
    auto ok = run({"validate", sample("l51.grid")});
    EXPECT_EQ(ok.code, 0);
    EXPECT_NE(ok.out.find("valid"), std::string::npos);

    auto bad = run({"validate", write("bad.grid", "lens 5 2\nn 2\nO 0 2\nX 1 3\n")});
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.out.find("invalid"), std::string::npos) << bad.out;

    EXPECT_EQ(run({"tb", write("junk.grid", "lens five\n")}).code, 2);
    EXPECT_EQ(run({"tb", (dir / "missing.grid").string()}).code, 2);
    EXPECT_EQ(run({"tb", write("gcd.grid", "lens 4 2\nn 1\nO 0\nX 1\n")}).code, 2);
}

TEST_F(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"frobnicate"}).code, 1);
    EXPECT_EQ(run({"tb"}).code, 1);
    EXPECT_EQ(run({"scan", "--p", "0", "--q", "0"}).code, 1);
    EXPECT_EQ(run({"render", sample("u2.grid"), "--view", "cube"}).code, 1);
    EXPECT_EQ(run({"moves", sample("u2.grid"), "--class", "smooth"}).code, 1);
    auto h = run({"--help"});
    EXPECT_EQ(h.code, 0);
    EXPECT_NE(h.out.find("explore"), std::string::npos);
}

TEST_F(Cli, DualAndLift) {
    auto d = run({"dual", sample("t1.grid")});
    ASSERT_EQ(d.code, 0);
    EXPECT_EQ(parse_grid(d.out), dual(T1));
    auto l = run({"lift", sample("t1.grid")});
    ASSERT_EQ(l.code, 0);
    EXPECT_EQ(l.out, format_grid(lift_to_cover(T1).grid));
}

TEST_F(Cli, ScanL52) {
    auto r = run({"scan", "--p", "5", "--q", "2"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("translation orbits: "), std::string::npos);
    EXPECT_NE(r.out.find("(non-trivial 4)"), std::string::npos) << r.out;

    auto j = run({"scan", "--p", "5", "--q", "2", "--json"});
    ASSERT_EQ(j.code, 0);
    auto doc = nlohmann::json::parse(j.out);
    EXPECT_EQ(doc["nontrivial_orbits"], 4);
    EXPECT_EQ(doc["p"], 5);
    EXPECT_EQ(doc["rows"].size(), static_cast<size_t>(doc["translation_orbits"].get<int>()));
    for (const auto& row : doc["rows"]) EXPECT_TRUE(row["sum_ok"].get<bool>());

    EXPECT_EQ(run({"scan", "--p", "4", "--q", "2"}).code, 2);
    EXPECT_EQ(run({"scan", "--p", "1", "--q", "0"}).code, 0);
}

TEST_F(Cli, InvariantsReportIsDeterministic) {
    auto a = run({"invariants", sample("l72_n2.grid"), "--json"});
    auto b = run({"invariants", sample("l72_n2.grid"), "--json"});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    auto doc = nlohmann::json::parse(a.out);
    EXPECT_EQ(doc["tb_num"], -15);
    EXPECT_EQ(doc["tb_den"], 7);
    EXPECT_EQ(doc["tb_grading_num"], -15);
    auto text = run({"invariants", sample("trefoil.grid")});
    EXPECT_EQ(text.code, 0);
    EXPECT_FALSE(text.out.empty());
}

TEST_F(Cli, MoveAndMoves) {
    GridMove m{MoveKind::Stabilize, Marking::X, Compass::NW, 0, U2.x[0], 0};
    auto r = run({"move", sample("u2.grid"), "--apply", format_move(m)});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(parse_grid(r.out), apply_move(U2, m));

    // every row pair of the stabilized 3x3 unknot shares or interleaves endpoints
    auto two = run({"move", sample("u2.grid"), "--apply", format_move(m), "--apply", "COMM ROW 0"});
    EXPECT_EQ(two.code, 2);
    EXPECT_FALSE(two.err.empty());

    GridDiagram g{{5, 1}, 3, {2, 0, 4}, {4, 5, 9}};
    auto col = run({"move", write("g.grid", g), "--apply", "COMM COL 0"});
    ASSERT_EQ(col.code, 0) << col.err;
    EXPECT_EQ(parse_grid(col.out), commute(g, Axis::Column, 0));
    EXPECT_EQ(run({"move", sample("u2.grid"), "--apply", "HOP"}).code, 2);
    EXPECT_EQ(run({"move", sample("u2.grid")}).code, 1);

    auto leg = run({"moves", sample("u2.grid"), "--class", "legendrian"});
    ASSERT_EQ(leg.code, 0);
    EXPECT_EQ(std::count(leg.out.begin(), leg.out.end(), '\n'), 20);
    for (std::istringstream in(leg.out); std::getline(in, r.out);) EXPECT_NO_THROW(parse_move(r.out));
}

TEST_F(Cli, ExploreFindsSingleMoves) {
    auto s = stabilize(U2, Marking::O, 1, Compass::SE);
    auto r = run({"explore", sample("u2.grid"), write("s.grid", s), "--budget", "1e4"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("path length 1 ", 0), 0u) << r.out;

    auto t = run({"explore", sample("t1.grid"), write("t.grid", translate(T1, 2, 0)), "--max-n", "1"});
    ASSERT_EQ(t.code, 0) << t.err;
    EXPECT_EQ(t.out.rfind("path length 0 ", 0), 0u) << t.out;
}

TEST_F(Cli, ExploreBudgetAndErrors) {
    auto other = write("o.grid", GridDiagram{{5, 2}, 1, {0}, {2}});
    auto r = run({"explore", sample("t1.grid"), other, "--budget", "5"});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("budget"), std::string::npos) << r.err;
    EXPECT_EQ(run({"explore", sample("t1.grid"), other, "--budget", "lots"}).code, 2);
    EXPECT_EQ(run({"explore", sample("t1.grid"), sample("u2.grid"), "--max-n", "1"}).code, 2);
}

TEST_F(Cli, RenderToFileAndStdout) {
    auto path = (dir / "u2.svg").string();
    auto r = run({"render", sample("u2.grid"), "--out", path});
    ASSERT_EQ(r.code, 0) << r.err;
    std::ifstream f(path);
    std::string file_doc((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    auto s = run({"render", sample("u2.grid")});
    EXPECT_EQ(file_doc, s.out);
    EXPECT_EQ(s.out, render_svg(toroidal_front(rectilinear(U2, RoutingChoice::from_mask(2, 0)))));

    auto g = run({"render", sample("t1.grid"), "--view", "grid", "--width", "300", "--height", "100"});
    ASSERT_EQ(g.code, 0);
    EXPECT_NE(g.out.find("width=\"300\""), std::string::npos);
    EXPECT_NE(g.out.find("class=\"twist\""), std::string::npos);

    auto rect = run({"render", sample("u2.grid"), "--view", "rectilinear", "--routing", "5"});
    EXPECT_EQ(rect.code, 0);
    EXPECT_EQ(run({"render", sample("u2.grid"), "--routing", "16"}).code, 2);
}
