#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "stpnet/cli.hpp"

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
    nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Run cli(std::vector<std::string> args) {
    args.insert(args.begin(), "stpnet");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = stpnet::cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string model(const std::string& name) { return std::string(STPNET_MODELS_DIR) + "/" + name; }

} // namespace

TEST_CASE("assr output") {
    auto r = cli({"assr", model("three_node.bn"), "--model", "nominal"});
    REQUIRE(r.code == 0);
    auto j = r.json();
    CHECK(j["L"]["delta"] == nlohmann::json::array({7, 6, 7, 5, 1, 3, 1, 4}));
    CHECK(j["H"]["delta"] == nlohmann::json::array({2, 1, 1, 2, 1, 2, 2, 1}));

    r = cli({"assr", model("four_state_ts.ts"), "--format", "text"});
    CHECK(r.code == 0);
    CHECK(r.out.find("H = delta 3 [1 2 3 2]") != std::string::npos);

    r = cli({"assr", model("three_node_nominal.bn"), "--format", "text"});
    CHECK(r.out.find("M = delta 8 [7 6 7 5 1 3 1 4]") != std::string::npos);
}

TEST_CASE("attractors output") {
    auto r = cli({"attractors", model("four_state_ts.ts"), "--smax", "5", "--mode", "undistinguished"});
    REQUIRE(r.code == 0);
    auto j = r.json();
    CHECK(j["counts"] == nlohmann::json::array({3, 2, 4, 7, 16}));
    CHECK(j["simple_cycles"] ==
          nlohmann::json::parse("[[2],[2,3],[2,4],[3],[4]]"));
    CHECK(j["fixed_points"] == nlohmann::json::array({2, 3, 4}));

    r = cli({"attractors", model("four_state_autonomous.ts"), "--smax", "4"});
    CHECK(r.json()["counts"] == nlohmann::json::array({1, 1, 1, 0}));

    r = cli({"attractors", model("four_state_autonomous.ts")});
    CHECK(r.code == 2);
    CHECK(r.err.find("--smax") != std::string::npos);

    r = cli({"attractors", model("three_node_nominal.bn")});
    CHECK(r.code == 0);
    CHECK(r.json()["s_max"] == 8);
}

TEST_CASE("robust and search-feedback") {
    auto r = cli({"robust", model("three_node.bn")});
    REQUIRE(r.code == 0);
    CHECK(r.json()["robust"] == true);
    CHECK(r.json()["witness"].is_null());

    r = cli({"robust", "--nominal", model("three_node_nominal.bn"), "--disturbed", model("three_node_disturbed.bn")});
    CHECK(r.json()["robust"] == true);

    r = cli({"robust", model("three_node_controlled.bn")});
    CHECK(r.code == 1);

    r = cli({"robust", model("three_node_controlled.bn"), "--feedback", "1 1 1 1 2 2 2 2"});
    CHECK(r.code == 0);
    CHECK(r.json()["robust"] == true);

    r = cli({"robust", model("three_node_controlled.bn"), "--feedback", "1 3 1 1 2 2 2 2"});
    CHECK(r.code == 2);

    r = cli({"search-feedback", model("three_node_controlled.bn"), "--threads", "3"});
    REQUIRE(r.code == 0);
    auto j = r.json();
    CHECK(j["candidates"] == 256);
    bool found = false;
    for (const auto& g : j["feedbacks"]) found = found || g["delta"] == nlohmann::json::array({1, 1, 1, 1, 2, 2, 2, 2});
    CHECK(found);

    CHECK(cli({"search-feedback", model("three_node_controlled.bn"), "--cap", "10"}).code == 1);
    r = cli({"search-feedback", model("three_node_controlled.bn"), "--cap", "10", "--allow-truncated"});
    CHECK(r.code == 0);
    CHECK(r.json()["truncated"] == true);
}

TEST_CASE("deterministic output across thread counts") {
    auto a = cli({"search-feedback", "--nominal", model("three_node_controlled_nominal.bn"), "--disturbed",
                  model("three_node_controlled_disturbed.bn"), "--threads", "1"});
    auto b = cli({"search-feedback", "--nominal", model("three_node_controlled_nominal.bn"), "--disturbed",
                  model("three_node_controlled_disturbed.bn"), "--threads", "7"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("reach, quotient, convert, export-dot") {
    auto r = cli({"reach", model("four_state_ts.ts"), "--sets", "2,3,4", "--from", "1", "--to", "4"});
    REQUIRE(r.code == 0);
    auto j = r.json();
    CHECK(j["invariant"] == true);
    CHECK(j["query"]["reachable"] == true);

    r = cli({"reach", model("four_state_ts.ts"), "--sets", "1"});
    CHECK(r.json()["invariant"] == false);

    r = cli({"quotient", model("three_node_nominal.bn"), "--horizon", "4"});
    REQUIRE(r.code == 0);
    CHECK(r.json()["Q"] == nlohmann::json::parse("[[0,1],[1,1]]"));
    CHECK(r.json()["containment"]["holds"] == true);

    r = cli({"convert", model("four_state_ts.ts"), "--mode", "distinguished"});
    CHECK(r.json()["M"]["rows"].size() == 8);

    for (const char* g : {"ts", "condensation", "quotient"}) {
        r = cli({"export-dot", model("four_state_ts.ts"), "--graph", g});
        CHECK(r.code == 0);
        CHECK(r.out.rfind("digraph", 0) == 0);
    }
}

TEST_CASE("exit codes for bad input") {
    CHECK(cli({"assr", "/nonexistent/file.bn"}).code == 2);
    CHECK(cli({"bogus"}).code == 2);
    CHECK(cli({}).code == 2);
    CHECK(cli({"attractors", model("four_state_ts.ts"), "--mode", "sideways"}).code == 2);
    CHECK(cli({"--help"}).code == 0);
    auto r = cli({"reach", model("four_state_ts.ts"), "--sets", "1;1"});
    CHECK(r.code == 1);
}

TEST_CASE("parse errors carry file and position") {
    const std::string path = std::string(STPNET_BINARY_DIR) + "/bad_model.bn";
    {
        std::ofstream f(path);
        f << "network bad\nstate a\na' = a & zz\n";
    }
    auto r = cli({"assr", path});
    CHECK(r.code == 2);
    CHECK(r.err.find("3:10") != std::string::npos);
    CHECK(r.err.find("zz") != std::string::npos);
}

TEST_CASE("self-check command") {
    auto r = cli({"check", "--seed", "5", "--trials", "20"});
    CHECK(r.code == 0);
    CHECK(r.json()["failures"].empty());
}
