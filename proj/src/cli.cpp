#include "seatplan/cli.hpp"

#include <algorithm>
#include <iostream>
#include <set>

#include <CLI11.hpp>

#include "seatplan/bench.hpp"
#include "seatplan/error.hpp"
#include "seatplan/io.hpp"
#include "seatplan/render.hpp"
#include "seatplan/vision.hpp"

namespace seatplan {

namespace {

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::usage:
        case ErrorCode::invalid_argument:
        case ErrorCode::invalid_transform:
        case ErrorCode::invalid_spec:
            return kExitUsage;
        case ErrorCode::size_cap:
        case ErrorCode::contract:
            return kExitInfeasible;
        default:
            return kExitInput;
    }
}

// Every user-supplied length is multiplied by this to reach inches.
double to_inches(const std::string& units) {
    if (units == "imperial") return 1.0;
    if (units == "metric") return 1.0 / kCentimetersPerInch;
    throw Error(ErrorCode::usage, "--units must be metric or imperial");
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
    if (path.empty() || path == "-")
        out << content;
    else
        write_file(path, content);
}

std::string extension_of(const std::string& path) {
    auto dot = path.find_last_of('.');
    if (dot == std::string::npos) return "";
    std::string ext = path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

struct GenerateArgs {
    GridSpec spec;
    std::uint64_t seed = 0;
    std::string units = "imperial";
    std::string out, svg;
};

struct DiscoverArgs {
    std::string input, type = "auto";
    std::vector<std::string> templates;
    double threshold = 0.95, max_overlap = 0.3;
    std::vector<int> rotations{0, 90, 180, 270};
    std::vector<double> scale{1.0};
    double min_side = 20.0, max_side = 120.0;
    std::vector<std::string> tags{"WORKSPACE"};
    std::string units = "imperial";
    std::string out;
};

struct PlanArgs {
    std::string workspaces, business_units, prior, out, svg;
    double distance = 0.0, penalty = 0.0;
    std::string method = "exact", mode = "count", units = "imperial";
    std::uint64_t seed = 0;
    int restarts = 16, component_cap = 2000;
};

struct BenchArgs {
    std::string workspaces, out;
    std::vector<double> distances;
    std::vector<std::string> methods{"random_walk", "partition", "exact"};
    std::uint64_t seed = 0;
    int restarts = 16, component_cap = 2000;
    std::string units = "imperial";
    bool timings = false;
};

struct GraphArgs {
    std::string workspaces, out;
    double distance = 0.0;
    std::string units = "imperial";
};

void run_generate(const GenerateArgs& a, std::ostream& out) {
    double k = to_inches(a.units);
    GridSpec spec = a.spec;
    spec.pitch_x *= k;
    spec.pitch_y *= k;
    spec.desk_w *= k;
    spec.desk_h *= k;
    spec.aisle_width *= k;
    spec.jitter *= k;
    Floorplan fp = generate_synthetic(spec, a.seed);
    if (!a.svg.empty()) write_file(a.svg, render_floorplan(fp));
    emit(a.out, dump(floorplan_to_json(fp)), out);
}

void run_discover(const DiscoverArgs& a, std::ostream& out) {
    double k = to_inches(a.units);
    if (a.scale.empty() || a.scale.size() > 2) throw Error(ErrorCode::usage, "--scale takes one or two factors");
    ScaleTransform t{a.scale[0] * k, (a.scale.size() == 2 ? a.scale[1] : a.scale[0]) * k};
    validate(t);

    std::string type = a.type;
    if (type == "auto") {
        std::string ext = extension_of(a.input);
        if (ext == "svg") type = "vector";
        else if (ext == "csv") type = "csv";
        else type = "raster";
    }

    Floorplan fp;
    if (type == "vector") {
        fp = parse_vector(read_file(a.input), {a.min_side * k, a.max_side * k}, t);
        fp.background = a.input;
    } else if (type == "csv") {
        auto records = parse_metadata_csv(read_file(a.input));
        for (auto& r : records) {
            r.x *= k;
            r.y *= k;
            r.width *= k;
            r.height *= k;
        }
        fp = load_metadata(records, std::set<std::string>(a.tags.begin(), a.tags.end()));
    } else if (type == "raster") {
        if (a.templates.empty()) throw Error(ErrorCode::usage, "raster discovery needs at least one --template");
        std::vector<int> turns;
        for (int deg : a.rotations) {
            if (deg % 90 != 0) throw Error(ErrorCode::usage, "--rotations accepts multiples of 90 only");
            turns.push_back(((deg / 90) % 4 + 4) % 4);
        }
        std::sort(turns.begin(), turns.end());
        turns.erase(std::unique(turns.begin(), turns.end()), turns.end());
        GrayImage image = read_raster(a.input);
        std::vector<Detection> hits;
        for (const auto& path : a.templates) {
            auto found = match_template_rotations(image, read_raster(path), a.threshold, turns);
            hits.insert(hits.end(), found.begin(), found.end());
        }
        fp = detections_to_floorplan(suppress(std::move(hits), a.max_overlap), t);
        fp.background = a.input;
    } else {
        throw Error(ErrorCode::usage, "--type must be auto, vector, raster or csv");
    }
    emit(a.out, dump(floorplan_to_json(fp)), out);
}

void run_plan(const PlanArgs& a, std::ostream& out) {
    double k = to_inches(a.units);
    SolverConfig config;
    config.d = a.distance * k;
    config.penalty_c = a.penalty;
    config.seed = a.seed;
    config.restarts = a.restarts;
    config.component_cap = a.component_cap;
    if (a.mode == "count") config.mode = SolveMode::count;
    else if (a.mode == "preserve") config.mode = SolveMode::preserve;
    else throw Error(ErrorCode::usage, "--mode must be count or preserve");
    validate(config);
    Method method = parse_method(a.method);

    Floorplan fp = floorplan_from_json(parse_json(read_file(a.workspaces), a.workspaces));
    UnitsDocument units;
    if (!a.business_units.empty()) units = units_from_json(parse_json(read_file(a.business_units), a.business_units));
    std::optional<AllocationPlan> prior = units.prior;
    if (!a.prior.empty()) prior = prior_from_text(read_file(a.prior));

    ConstraintGraph g = build_constraint_graph(fp, config.d);
    AllocationPlan plan;
    if (config.mode == SolveMode::preserve) {
        if (method != Method::exact) throw Error(ErrorCode::usage, "preserve mode requires --method exact");
        if (!prior) throw Error(ErrorCode::usage, "preserve mode requires a prior plan (--prior or units file)");
        plan = solve_exact_preserve(g, units.units, *prior, config.penalty_c, config.component_cap);
    } else if (method == Method::exact) {
        plan = solve_exact_count(g, units.units, config.component_cap);
    } else {
        plan = run_method(method, g, config);
        if (!units.units.empty()) plan = with_units(g, plan, units.units);
    }
    if (!a.svg.empty()) write_file(a.svg, render_allocation(fp, plan));
    emit(a.out, dump(plan_to_json(plan)), out);
}

void run_bench(const BenchArgs& a, std::ostream& out) {
    double k = to_inches(a.units);
    SolverConfig config;
    config.seed = a.seed;
    config.restarts = a.restarts;
    config.component_cap = a.component_cap;
    std::vector<double> distances;
    for (double d : a.distances) distances.push_back(d * k);
    Floorplan fp = floorplan_from_json(parse_json(read_file(a.workspaces), a.workspaces));
    BenchReport report = bench_sweep(fp, distances, a.methods, config);
    out << format_table(report, a.timings);
    if (!a.out.empty()) write_file(a.out, dump(report_to_json(report, a.timings)));
}

void run_graph(const GraphArgs& a, std::ostream& out) {
    double k = to_inches(a.units);
    Floorplan fp = floorplan_from_json(parse_json(read_file(a.workspaces), a.workspaces));
    emit(a.out, dump(graph_to_json(build_constraint_graph(fp, a.distance * k))), out);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Social-distance workspace allocation from floorplans"};
    app.name("seatplan");
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Synthetic desk grid -> workspace JSON (and optional SVG)");
    generate->add_option("--rows", gen.spec.rows, "Desk rows")->required();
    generate->add_option("--cols", gen.spec.cols, "Desk columns")->required();
    generate->add_option("--pitch-x", gen.spec.pitch_x, "Column pitch");
    generate->add_option("--pitch-y", gen.spec.pitch_y, "Row pitch");
    generate->add_option("--desk-w", gen.spec.desk_w, "Desk width");
    generate->add_option("--desk-h", gen.spec.desk_h, "Desk height");
    generate->add_option("--aisle-every", gen.spec.aisle_every, "Insert an aisle after every N columns (0 = none)");
    generate->add_option("--aisle-width", gen.spec.aisle_width, "Extra aisle gap");
    generate->add_option("--jitter", gen.spec.jitter, "Uniform per-desk position noise");
    generate->add_option("--limit", gen.spec.limit, "Keep only the first N desks (row-major)");
    generate->add_option("--seed", gen.seed, "Random seed");
    generate->add_option("--units", gen.units, "metric|imperial")->check(CLI::IsMember({"metric", "imperial"}));
    generate->add_option("--out", gen.out, "Workspace JSON output (default stdout)");
    generate->add_option("--svg", gen.svg, "Also write the layout as SVG");

    DiscoverArgs disc;
    auto* discover = app.add_subcommand("discover", "Vector, raster or CSV floorplan -> workspace JSON");
    discover->add_option("--input", disc.input, "Floorplan file")->required();
    discover->add_option("--type", disc.type, "auto|vector|raster|csv");
    discover->add_option("--template", disc.templates, "Workspace template raster (repeatable)");
    discover->add_option("--threshold", disc.threshold, "Minimum correlation score");
    discover->add_option("--max-overlap", disc.max_overlap, "IoU above which weaker detections are dropped");
    discover->add_option("--rotations", disc.rotations, "Template rotations in degrees")->delimiter(',');
    discover->add_option("--scale", disc.scale, "Units per pixel: s or sx,sy")->delimiter(',');
    discover->add_option("--min-side", disc.min_side, "Smallest accepted workspace side");
    discover->add_option("--max-side", disc.max_side, "Largest accepted workspace side");
    discover->add_option("--tags", disc.tags, "CSV tags to keep")->delimiter(',');
    discover->add_option("--units", disc.units, "metric|imperial")->check(CLI::IsMember({"metric", "imperial"}));
    discover->add_option("--out", disc.out, "Workspace JSON output (default stdout)");

    PlanArgs plan;
    auto* plan_cmd = app.add_subcommand("plan", "Workspace JSON -> allocation plan JSON (and optional SVG)");
    plan_cmd->add_option("--workspaces", plan.workspaces, "Workspace JSON")->required();
    plan_cmd->add_option("--distance", plan.distance, "Social distance")->required();
    plan_cmd->add_option("--method", plan.method, "random-walk|partition|exact");
    plan_cmd->add_option("--mode", plan.mode, "count|preserve");
    plan_cmd->add_option("--penalty", plan.penalty, "Plan preservation penalty C");
    plan_cmd->add_option("--seed", plan.seed, "Random seed");
    plan_cmd->add_option("--restarts", plan.restarts, "Random-walk restarts");
    plan_cmd->add_option("--business-units", plan.business_units, "Units JSON {units, prior}");
    plan_cmd->add_option("--prior", plan.prior, "Prior plan JSON");
    plan_cmd->add_option("--component-cap", plan.component_cap, "Largest component the exact engine accepts");
    plan_cmd->add_option("--units", plan.units, "metric|imperial")->check(CLI::IsMember({"metric", "imperial"}));
    plan_cmd->add_option("--out", plan.out, "Plan JSON output (default stdout)");
    plan_cmd->add_option("--svg", plan.svg, "Rendered allocation SVG");

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Allocation counts over a distance sweep");
    bench_cmd->add_option("--workspaces", bench.workspaces, "Workspace JSON")->required();
    bench_cmd->add_option("--distances", bench.distances, "Increasing distances")->required()->delimiter(',');
    bench_cmd->add_option("--methods", bench.methods, "Methods to compare")->delimiter(',');
    bench_cmd->add_option("--seed", bench.seed, "Random seed");
    bench_cmd->add_option("--restarts", bench.restarts, "Random-walk restarts");
    bench_cmd->add_option("--component-cap", bench.component_cap, "Largest component the exact engine accepts");
    bench_cmd->add_option("--units", bench.units, "metric|imperial")->check(CLI::IsMember({"metric", "imperial"}));
    bench_cmd->add_option("--out", bench.out, "Report JSON output");
    bench_cmd->add_flag("--timings", bench.timings, "Include runtimes in the table and JSON");

    GraphArgs graph;
    auto* graph_cmd = app.add_subcommand("graph", "Export the conflict graph as JSON");
    graph_cmd->add_option("--workspaces", graph.workspaces, "Workspace JSON")->required();
    graph_cmd->add_option("--distance", graph.distance, "Social distance")->required();
    graph_cmd->add_option("--units", graph.units, "metric|imperial")->check(CLI::IsMember({"metric", "imperial"}));
    graph_cmd->add_option("--out", graph.out, "Graph JSON output (default stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (generate->parsed()) run_generate(gen, out);
        else if (discover->parsed()) run_discover(disc, out);
        else if (plan_cmd->parsed()) run_plan(plan, out);
        else if (bench_cmd->parsed()) run_bench(bench, out);
        else if (graph_cmd->parsed()) run_graph(graph, out);
    } catch (const Error& e) {
        err << "seatplan: " << to_string(e.code()) << ": " << e.what() << "\n";
        return exit_code_for(e.code());
    }
    return kExitOk;
}

}  // namespace seatplan
