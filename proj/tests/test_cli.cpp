#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "seatplan/cli.hpp"
#include "seatplan/io.hpp"
#include "seatplan/render.hpp"
#include "seatplan/vision.hpp"
#include "support.hpp"

using namespace seatplan;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = 0;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    Run r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

// Scratch directory removed on scope exit.
struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("seatplan-cli-" + std::to_string(reinterpret_cast<std::uintptr_t>(this)) +
                                            "-" + std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string grid_file(const TempDir& dir, int rows, int cols) {
    std::string ws = dir / "floor.json";
    REQUIRE(cli({"generate", "--rows", std::to_string(rows), "--cols", std::to_string(cols), "--out", ws}).code == 0);
    return ws;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
    CHECK(cli({}).code == kExitUsage);
    CHECK(cli({"teleport"}).code == kExitUsage);
    CHECK(cli({"generate", "--rows", "3"}).code == kExitUsage);
    CHECK(cli({"generate", "--rows", "3", "--cols", "3", "--units", "furlongs"}).code == kExitUsage);

    TempDir dir;
    std::string ws = grid_file(dir, 3, 3);
    CHECK(cli({"plan", "--workspaces", ws, "--distance", "72", "--method", "greedy"}).code == kExitUsage);
    CHECK(cli({"plan", "--workspaces", ws, "--distance", "-1"}).code == kExitUsage);
    CHECK(cli({"plan", "--workspaces", ws, "--distance", "72", "--mode", "preserve"}).code == kExitUsage);
    auto bad = cli({"plan", "--workspaces", ws, "--distance", "72", "--mode", "keep"});
    CHECK(bad.code == kExitUsage);
    CHECK(bad.err.find("--mode") != std::string::npos);
}

TEST_CASE("input errors exit with 3") {
    TempDir dir;
    CHECK(cli({"plan", "--workspaces", dir / "missing.json", "--distance", "72"}).code == kExitInput);
    write_file(dir / "broken.json", "{\"workspaces\": [");
    CHECK(cli({"plan", "--workspaces", dir / "broken.json", "--distance", "72"}).code == kExitInput);
    write_file(dir / "dup.json",
               R"({"workspaces":[{"id":"a","bbox":[0,0,60,60]},{"id":"a","bbox":[100,0,160,60]}]})");
    CHECK(cli({"graph", "--workspaces", dir / "dup.json", "--distance", "72"}).code == kExitInput);

    std::string ws = grid_file(dir, 2, 2);
    write_file(dir / "units.json", R"({"units":[{"id":"A","headcount":1}],"prior":{"ghost":"A"}})");
    auto r = cli({"plan", "--workspaces", ws, "--distance", "72", "--mode", "preserve", "--business-units",
                  dir / "units.json"});
    CHECK(r.code == kExitInput);
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("component over the cap exits with 4") {
    TempDir dir;
    std::string ws = grid_file(dir, 4, 4);
    auto r = cli({"plan", "--workspaces", ws, "--distance", "72", "--component-cap", "10"});
    CHECK(r.code == kExitInfeasible);
    CHECK(r.err.find("size-cap") != std::string::npos);
    CHECK(cli({"plan", "--workspaces", ws, "--distance", "72", "--component-cap", "16"}).code == kExitOk);
}

TEST_CASE("generate then plan reproduces the 5x5 grid optimum") {
    TempDir dir;
    std::string ws = grid_file(dir, 5, 5);
    auto fp = floorplan_from_json(parse_json(read_file(ws), ws));
    CHECK(fp.size() == 25);

    auto r = cli({"plan", "--workspaces", ws, "--distance", "72", "--method", "exact", "--svg", dir / "p.svg"});
    REQUIRE(r.code == kExitOk);
    auto plan = plan_from_json(parse_json(r.out, "stdout"));
    CHECK(plan.allocated_count() == 13);
    CHECK(plan.unallocated.size() == 12);
    CHECK(plan.method == "exact");

    auto svg = read_file(dir / "p.svg");
    CHECK(parse_vector(svg, SizeFilter{}, ScaleTransform{}).size() == 25);

    auto far = plan_from_json(parse_json(cli({"plan", "--workspaces", ws, "--distance", "85"}).out, "stdout"));
    CHECK(far.allocated_count() == 9);
}

TEST_CASE("business units and preserve mode through the command line") {
    TempDir dir;
    std::string ws = grid_file(dir, 3, 3);
    auto fp = floorplan_from_json(parse_json(read_file(ws), ws));
    std::string first = fp.workspaces.front().id, centre = fp.workspaces[4].id;
    write_file(dir / "units.json", R"({"units":[{"id":"A","headcount":2},{"id":"B","headcount":2}],"prior":{")" + first +
                                       R"(":"A",")" + centre + R"(":"B"}})");

    auto count = cli({"plan", "--workspaces", ws, "--distance", "72", "--business-units", dir / "units.json"});
    REQUIRE(count.code == kExitOk);
    auto plan = plan_from_json(parse_json(count.out, "stdout"));
    CHECK(plan.allocated_count() == 4);

    auto keep = cli({"plan", "--workspaces", ws, "--distance", "72", "--mode", "preserve", "--penalty", "0.5",
                     "--business-units", dir / "units.json"});
    REQUIRE(keep.code == kExitOk);
    auto kept = plan_from_json(parse_json(keep.out, "stdout"));
    CHECK(kept.allocated_count() == 4);
    CHECK(kept.assignments.count(first) == 1);
    CHECK(kept.assignments.at(first) == "A");

    write_file(dir / "prior.json", R"({"assignments":{")" + first + R"(":"B"}})");
    auto override_prior = cli({"plan", "--workspaces", ws, "--distance", "72", "--mode", "preserve", "--penalty", "1",
                               "--business-units", dir / "units.json", "--prior", dir / "prior.json"});
    REQUIRE(override_prior.code == kExitOk);
    CHECK(plan_from_json(parse_json(override_prior.out, "stdout")).assignments.at(first) == "B");
}

TEST_CASE("metric lengths are converted to inches") {
    TempDir dir;
    // 152.4 cm pitch is 60 in; 182.88 cm is 72 in.
    REQUIRE(cli({"generate", "--rows", "5", "--cols", "5", "--pitch-x", "152.4", "--pitch-y", "152.4", "--desk-w", "152.4",
                 "--desk-h", "152.4", "--units", "metric", "--out", dir / "m.json"})
                .code == 0);
    auto fp = floorplan_from_json(parse_json(read_file(dir / "m.json"), "m"));
    CHECK(fp.workspaces[1].centroid.x - fp.workspaces[0].centroid.x == doctest::Approx(60.0));
    auto r = cli({"plan", "--workspaces", dir / "m.json", "--distance", "182.88", "--units", "metric"});
    REQUIRE(r.code == kExitOk);
    auto plan = plan_from_json(parse_json(r.out, "stdout"));
    CHECK(plan.allocated_count() == 13);
    CHECK(plan.d == doctest::Approx(72.0));
}

TEST_CASE("graph and bench subcommands") {
    TempDir dir;
    std::string ws = grid_file(dir, 2, 3);
    auto g = parse_json(cli({"graph", "--workspaces", ws, "--distance", "72"}).out, "graph");
    CHECK(g.at("nodes").size() == 6);
    CHECK(g.at("edges").size() == 7);  // 3 + 4 orthogonal neighbours at pitch 60

    auto b = cli({"bench", "--workspaces", ws, "--distances", "72", "85", "--out", dir / "bench.json"});
    REQUIRE(b.code == kExitOk);
    CHECK(b.out.find("exact") != std::string::npos);
    auto report = parse_json(read_file(dir / "bench.json"), "bench");
    CHECK_FALSE(report.empty());
}

TEST_CASE("discover recovers a rendered floorplan and a raster") {
    TempDir dir;
    std::string ws = grid_file(dir, 3, 4);
    auto fp = floorplan_from_json(parse_json(read_file(ws), ws));
    write_file(dir / "plan.svg", render_floorplan(fp));
    auto v = cli({"discover", "--input", dir / "plan.svg"});
    REQUIRE(v.code == kExitOk);
    CHECK(floorplan_from_json(parse_json(v.out, "stdout")).size() == 12);

    GrayImage canvas(240, 160, 1.0);
    auto desk = testsupport::desk_template();
    stamp(canvas, desk, 20, 20);
    stamp(canvas, rotate_quarter(desk, 1), 120, 40);
    write_pgm(canvas, dir / "floor.pgm");
    write_pgm(desk, dir / "desk.pgm");
    auto r = cli({"discover", "--input", dir / "floor.pgm", "--template", dir / "desk.pgm"});
    REQUIRE(r.code == kExitOk);
    CHECK(floorplan_from_json(parse_json(r.out, "stdout")).size() == 2);

    CHECK(cli({"discover", "--input", dir / "floor.pgm"}).code == kExitUsage);
    CHECK(cli({"discover", "--input", dir / "floor.pgm", "--template", dir / "desk.pgm", "--rotations", "45"}).code ==
          kExitUsage);
}

TEST_CASE("plan output is byte-identical across runs") {
    TempDir dir;
    REQUIRE(cli({"generate", "--rows", "8", "--cols", "8", "--jitter", "6", "--seed", "3", "--out", dir / "f.json"})
                .code == 0);
    for (const char* method : {"random-walk", "partition", "exact"}) {
        std::vector<std::string> args{"plan", "--workspaces", dir / "f.json", "--distance", "90", "--method", method,
                                      "--seed", "11"};
        CHECK(cli(args).out == cli(args).out);
    }
}

TEST_CASE("installed binary reports the same exit codes") {
    const char* bin = std::getenv("SEATPLAN_CLI");
    if (!bin) return;
    auto status = [&](const std::string& args) {
        int raw = std::system((std::string(bin) + " " + args + " >/dev/null 2>&1").c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    TempDir dir;
    std::string ws = grid_file(dir, 4, 4);
    CHECK(status("generate --rows 2 --cols 2") == kExitOk);
    CHECK(status("teleport") == kExitUsage);
    CHECK(status("plan --workspaces " + dir / "none.json" + " --distance 72") == kExitInput);
    CHECK(status("plan --workspaces " + ws + " --distance 72 --component-cap 3") == kExitInfeasible);
}
