#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli_app.hpp"
#include "netex/hypergraph.hpp"

using namespace netex;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("netex_cli_" + std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("gen writes the hypergraph interchange format") {
    TempDir dir;
    std::string out = dir.file("star.json");
    CHECK(cli::run({"gen", "--kind", "star", "--n", "5", "--out", out}) == 0);
    Hypergraph h = load_hypergraph(out);
    CHECK(h.num_edges() == 5);
    for (const Edge& e : h.edges()) CHECK(e[0] == 0);

    std::string ba = dir.file("ba.json");
    CHECK(cli::run({"gen", "--kind", "ba", "--N", "100", "--m", "2", "--seed", "7", "--out", ba}) == 0);
    CHECK(load_hypergraph(ba).num_edges() == 396);

    std::string er = dir.file("er.json");
    CHECK(cli::run({"gen", "--kind", "er", "--N", "10", "--p", "0", "--seed", "3", "--out", er}) == 0);
    CHECK(load_hypergraph(er).num_edges() == 0);
}

TEST_CASE("weight emits scheme weights and a summary") {
    TempDir dir;
    std::string hg = dir.file("tri.json");
    REQUIRE(cli::run({"gen", "--kind", "triangle", "--out", hg}) == 0);

    std::string w = dir.file("w.json");
    CHECK(cli::run({"weight", "--in", hg, "--scheme", "svalue", "--out", w}) == 0);
    auto payload = nlohmann::json::parse(read_file(w));
    CHECK(payload.at("s").get<double>() == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(payload.at("weights").size() == 3);

    std::string eqw = dir.file("eqw.json");
    CHECK(cli::run({"weight", "--in", hg, "--scheme", "eqw", "--out", eqw}) == 0);
    auto eqw_payload = nlohmann::json::parse(read_file(eqw));
    for (double x : eqw_payload.get<std::vector<double>>()) CHECK(x == doctest::Approx(0.5));

    std::string ind = dir.file("ind.json");
    std::string disjoint = dir.file("disjoint.json");
    REQUIRE(cli::run({"gen", "--kind", "disjoint", "--n", "4", "--out", disjoint}) == 0);
    CHECK(cli::run({"weight", "--in", disjoint, "--scheme", "ind", "--out", ind}) == 0);
    for (double x : nlohmann::json::parse(read_file(ind)).get<std::vector<double>>()) {
        CHECK(x == doctest::Approx(1.0));
    }
}

TEST_CASE("generated files round-trip through weight") {
    TempDir dir;
    std::string hg = dir.file("ba.json");
    REQUIRE(cli::run({"gen", "--kind", "ba", "--N", "40", "--m", "2", "--seed", "9", "--out", hg}) == 0);
    Hypergraph h = load_hypergraph(hg);
    // Structural statistics survive the file hop.
    CHECK(h.num_edges() == 4 + 2 * 2 * 38);
    CHECK(max_degree(h) >= 2);
    std::string w = dir.file("w.json");
    CHECK(cli::run({"weight", "--in", hg, "--scheme", "svalue", "--out", w}) == 0);
    auto payload = nlohmann::json::parse(read_file(w));
    double s = payload.at("s").get<double>();
    CHECK(s >= static_cast<double>(h.num_edges()) / max_degree(h) - 1e-7);
    CHECK(s <= h.num_edges());
}

TEST_CASE("bounds evaluates the closed forms") {
    TempDir dir;
    std::string out = dir.file("bounds.csv");
    CHECK(cli::run({"bounds", "--epsilon", "1.0", "--M", "1", "--sigma2", "1", "--total-weight",
                    "2", "--out", out}) == 0);
    auto rows = parse_csv(read_file(out));
    REQUIRE(rows.size() >= 4);
    CHECK(rows[0] == std::vector<std::string>{"kind", "epsilon", "value_raw", "value_clipped"});
    bool found = false;
    for (const auto& row : rows) {
        if (row[0] == "hoeffding") {
            CHECK(std::stod(row[3]) == doctest::Approx(0.367879441171).epsilon(1e-9));
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("simulate emits tails with matching bounds") {
    TempDir dir;
    std::string out = dir.file("sim.csv");
    CHECK(cli::run({"simulate", "--fixture", "disjoint:10", "--scheme", "eqw", "--epsilon", "0.6",
                    "--trials", "200000", "--seed", "5", "--out", out}) == 0);
    auto rows = parse_csv(read_file(out));
    REQUIRE(rows.size() == 2);
    double empirical = std::stod(rows[1][3]);
    double se = std::stod(rows[1][4]);
    CHECK(std::abs(empirical - 56.0 / 1024.0) <= 3.0 * se);

    // Reruns with the same seed are byte-identical.
    std::string again = dir.file("sim2.csv");
    CHECK(cli::run({"simulate", "--fixture", "disjoint:10", "--scheme", "eqw", "--epsilon", "0.6",
                    "--trials", "200000", "--seed", "5", "--out", again}) == 0);
    CHECK(read_file(out) == read_file(again));
}

TEST_CASE("svalue-scaling reports per-size means") {
    TempDir dir;
    std::string out = dir.file("scaling.csv");
    CHECK(cli::run({"svalue-scaling", "--model", "ba", "--m", "1", "--N", "30,60", "--seeds", "3",
                    "--seed", "2", "--out", out}) == 0);
    auto rows = parse_csv(read_file(out));
    REQUIRE(rows.size() == 3);
    CHECK(rows[1][2] == "30");
    double ratio = std::stod(rows[1][4]);
    CHECK(ratio > 0.4);
    CHECK(ratio < 0.9);

    CHECK(cli::run({"svalue-scaling", "--model", "ba", "--m", "1", "--N", "30", "--seeds", "3",
                    "--seed", "2"}) == 1);
}

TEST_CASE("variance decomposes a tabulated response") {
    TempDir dir;
    std::string spec = dir.file("spec.json");
    {
        std::ofstream out(spec);
        // Pure interaction on +-1 features.
        out << R"({"marginals": [[0.5,0.5],[0.5,0.5]], "table": [[1,-1],[-1,1]]})";
    }
    std::string out = dir.file("var.csv");
    CHECK(cli::run({"variance", "--spec", spec, "--out", out}) == 0);
    auto rows = parse_csv(read_file(out));
    REQUIRE(rows.size() == 6);  // header + 4 subsets + total
    bool found = false;
    for (const auto& row : rows) {
        if (row[0] == "{0 1}") {
            CHECK(std::stod(row[1]) == doctest::Approx(1.0));
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("erm emits one row per method and repetition") {
    TempDir dir;
    std::string out = dir.file("erm.csv");
    CHECK(cli::run({"erm", "--star", "6", "--disjoint", "6", "--reps", "10", "--seed", "3",
                    "--methods", "eqw,svalue", "--out", out}) == 0);
    auto rows = parse_csv(read_file(out));
    REQUIRE(rows.size() == 1 + 2 * 10);
    CHECK(rows[0][0] == "method");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(std::stod(rows[i][4]) >= -1e-12);
    }
}

TEST_CASE("errors exit nonzero with a category") {
    CHECK(cli::run({"weight", "--in", "/nonexistent/h.json"}) == 1);
    CHECK(cli::run({"gen", "--kind", "nope"}) == 1);
    CHECK(cli::run({"bounds", "--epsilon", "-1", "--total-weight", "1"}) == 1);
}

TEST_CASE("json output format") {
    TempDir dir;
    std::string out = dir.file("bounds.json");
    CHECK(cli::run({"bounds", "--epsilon", "0.5", "--M", "1", "--total-weight", "2", "--format",
                    "json", "--out", out}) == 0);
    auto arr = nlohmann::json::parse(read_file(out));
    REQUIRE(arr.is_array());
    CHECK(arr.size() >= 2);
    CHECK(arr[0].contains("kind"));
    CHECK(arr[0].contains("value_clipped"));
}

}  // TEST_SUITE
