#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>

#include "cb/io.hpp"
#include "support.hpp"

#ifndef CB_CLI_PATH
#define CB_CLI_PATH "cbrick"
#endif

using namespace cbt;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out, err;
};

fs::path scratch() {
    fs::path d = fs::temp_directory_path() / "cbrick_cli_tests";
    fs::create_directories(d);
    return d;
}

// Runs the CLI with the given arguments and environment assignments.
Run cli(const std::string& args, const std::string& env = "") {
    const fs::path d = scratch();
    const std::string out = (d / "stdout.txt").string(), err = (d / "stderr.txt").string();
    const std::string cmd = env + (env.empty() ? "" : " ") + "'" + std::string(CB_CLI_PATH) + "' " + args + " > '" +
                            out + "' 2> '" + err + "'";
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = read_file(out);
    r.err = read_file(err);
    return r;
}

std::string circles() {
    return "--mesh '" + data_path("circles.mesh.json") + "' --field '" + data_path("circles.field") + "'";
}

// Index of the first set whose index equals want in an invariant-sets listing.
int set_with_index(const json& j, const std::vector<int>& want) {
    for (std::size_t i = 0; i < j["sets"].size(); ++i)
        if (j["sets"][i]["index"].get<std::vector<int>>() == want) return int(i);
    return -1;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("validate exit codes") {
    Run ok = cli("validate " + circles());
    CHECK(ok.code == 0);
    CHECK(parse_json(ok.out).contains("edges"));

    // A mesh edge on the x-axis, tangent to a horizontal field.
    const fs::path mesh = scratch() / "tangent.mesh.json";
    write_file(mesh.string(), R"({"vertices":[[-1,0],[1,0],[0,1],[0,-1]],"triangles":[[0,1,2],[0,3,1]]})");
    Run tangent = cli("validate --mesh '" + mesh.string() + "' --field '1; 0'");
    CHECK(tangent.code == 2);
    CHECK(tangent.err.find("undetermined edge 0 (0-1)") != std::string::npos);

    Run missing = cli("validate --mesh /nonexistent/mesh.json --field '1; 0'");
    CHECK(missing.code == 1);
    CHECK(cli("validate --mesh '" + mesh.string() + "' --field 'x^'").code == 1);
    CHECK(cli("no-such-command").code == 1);
}

TEST_CASE("invariant sets") {
    Run r = cli("invariant-sets " + circles());
    REQUIRE(r.code == 0);
    json j = parse_json(r.out);
    CHECK(j["sets"].size() == 3);
    CHECK(set_with_index(j, {1, 1, 0}) >= 0);
    CHECK(set_with_index(j, {0, 1, 1}) >= 0);
    CHECK(set_with_index(j, {0, 0, 1}) >= 0);

    Run lorenz = cli("invariant-sets --complex '" + data_path("lorenz.complex.json") + "' --mvf '" +
                     data_path("lorenz.mvf.json") + "'");
    REQUIRE(lorenz.code == 0);
    CHECK(parse_json(lorenz.out)["sets"].size() == 4);

    const fs::path dot = scratch() / "morse.dot";
    CHECK(cli("invariant-sets " + circles() + " --dot '" + dot.string() + "'").code == 0);
    CHECK(read_file(dot.string()).rfind("digraph", 0) == 0);
}

TEST_CASE("certify exit codes") {
    json sets = parse_json(cli("invariant-sets " + circles()).out);
    const int inner = set_with_index(sets, {1, 1, 0}), outer = set_with_index(sets, {0, 1, 1}),
              origin = set_with_index(sets, {0, 0, 1});
    Run a = cli("certify " + circles() + " --set-id " + std::to_string(inner));
    CHECK(a.code == 0);
    CHECK(parse_json(a.out)["issued"] == true);
    CHECK(cli("certify " + circles() + " --set-id " + std::to_string(outer)).code == 0);
    Run o = cli("certify " + circles() + " --set-id " + std::to_string(origin));
    CHECK(o.code == 2);
    CHECK(o.err.find("rejected: homology condition") != std::string::npos);
    CHECK(cli("certify " + circles() + " --set-id 9").code == 1);

    const std::string circle3 =
        "--complex '" + data_path("circle3.complex.json") + "' --mvf '" + data_path("circle3.mvf.json") + "'";
    Run trace = cli("certify " + circle3 + " --cells v0,v1,v2,e0,e1,e2 --section v0,e0");
    CHECK(trace.code == 0);
    CHECK(parse_json(trace.out)["index"] == json::array({1, 1}));

    // Two multivectors around a circle give only two shifts.
    const fs::path cx = scratch() / "circle2.complex.json", mv = scratch() / "circle2.mvf.json";
    write_file(cx.string(), complex_to_json(circle(2)).dump());
    write_file(mv.string(), R"({"multivectors":[["v0","e0"],["v1","e1"]]})");
    Run two = cli("certify --complex '" + cx.string() + "' --mvf '" + mv.string() + "' --cells v0,v1,e0,e1 --section v0,e0");
    CHECK(two.code == 2);
    CHECK(two.err.find("rejected: kmax at least 3") != std::string::npos);
}

TEST_CASE("section and mvf output") {
    Run s = cli("section --complex '" + data_path("circle3.complex.json") + "' --mvf '" + data_path("circle3.mvf.json") +
                "' --cells v0,v1,v2,e0,e1,e2 --section v0,e0");
    REQUIRE(s.code == 0);
    CHECK(parse_json(s.out)["kmax"] == 3);
    Run m = cli("mvf " + circles());
    REQUIRE(m.code == 0);
    CHECK(parse_json(m.out).contains("multivectors"));
}

TEST_CASE("configuration precedence") {
    CHECK(cli("validate " + circles(), "CB_DEPTH=-1").code == 1);
    CHECK(cli("validate " + circles() + " --depth 8", "CB_DEPTH=-1").code == 0);
    CHECK(cli("validate " + circles(), "CB_EPS=abc").code == 1);
    CHECK(cli("validate " + circles(), "CB_EPS=1e9").code == 2);
    CHECK(cli("validate " + circles() + " --eps 0", "CB_EPS=1e9").code == 0);
    CHECK(cli("validate " + circles(), "CB_SEED=5").code == 0);
}

TEST_CASE("render is deterministic") {
    Run a = cli("render " + circles()), b = cli("render " + circles());
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("<svg") != std::string::npos);
    const fs::path file = scratch() / "circles.svg";
    CHECK(cli("render " + circles() + " --no-sets -o '" + file.string() + "'").code == 0);
    CHECK(read_file(file.string()).find("class=\"set\"") == std::string::npos);
}

}  // TEST_SUITE
