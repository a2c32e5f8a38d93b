#include "seatplan/bench.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "seatplan/error.hpp"

namespace seatplan {

Method parse_method(const std::string& label) {
    if (label == "random_walk" || label == "random-walk") return Method::random_walk;
    if (label == "partition") return Method::partition;
    if (label == "exact") return Method::exact;
    throw Error(ErrorCode::usage, "unknown method '" + label + "' (expected random-walk, partition or exact)");
}

const char* to_string(Method m) {
    switch (m) {
        case Method::random_walk: return "random_walk";
        case Method::partition: return "partition";
        case Method::exact: return "exact";
    }
    return "unknown";
}

AllocationPlan run_method(Method m, const ConstraintGraph& g, const SolverConfig& config) {
    switch (m) {
        case Method::random_walk: return random_walk(g, config.seed, config.restarts);
        case Method::partition: return space_selection(g, config.seed);
        case Method::exact: return solve_exact_count(g, {}, config.component_cap);
    }
    throw Error(ErrorCode::usage, "unknown method");
}

BenchReport bench_sweep(const Floorplan& fp, const std::vector<double>& distances,
                        const std::vector<std::string>& methods, const SolverConfig& config) {
    validate(config);
    if (distances.empty()) throw Error(ErrorCode::usage, "at least one distance is required");
    for (std::size_t i = 0; i < distances.size(); ++i) {
        if (!(std::isfinite(distances[i]) && distances[i] > 0.0))
            throw Error(ErrorCode::usage, "distances must be positive");
        if (i > 0 && !(distances[i] > distances[i - 1]))
            throw Error(ErrorCode::usage, "distances must be strictly increasing");
    }
    if (methods.empty()) throw Error(ErrorCode::usage, "at least one method is required");
    std::vector<Method> parsed;
    for (const auto& m : methods) parsed.push_back(parse_method(m));

    BenchReport report;
    report.floorplan_size = fp.size();
    report.distances = distances;
    for (auto m : parsed) report.methods.push_back(to_string(m));
    for (double d : distances) {
        ConstraintGraph g = build_constraint_graph(fp, d);
        for (auto m : parsed) {
            auto start = std::chrono::steady_clock::now();
            AllocationPlan plan = run_method(m, g, config);
            auto elapsed = std::chrono::steady_clock::now() - start;
            report.rows.push_back({d, to_string(m), plan.allocated_count(),
                                   std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count()});
        }
    }
    return report;
}

std::size_t allocated_at(const BenchReport& report, double distance, const std::string& method) {
    for (const auto& row : report.rows)
        if (row.distance == distance && row.method == method) return row.allocated;
    throw Error(ErrorCode::reference, "no bench row for " + method);
}

namespace {

std::string format_distance(double d) {
    std::ostringstream s;
    s << d;
    return s.str();
}

const BenchRow& row_at(const BenchReport& report, double distance, const std::string& method) {
    for (const auto& row : report.rows)
        if (row.distance == distance && row.method == method) return row;
    throw Error(ErrorCode::reference, "no bench row for " + method);
}

}  // namespace

std::string format_table(const BenchReport& report, bool with_timing) {
    const int first = 10;
    int width = 12;
    for (const auto& m : report.methods) width = std::max<int>(width, static_cast<int>(m.size()) + 2);
    if (with_timing) width = std::max(width, 20);
    std::ostringstream out;
    out << "workspaces: " << report.floorplan_size << "\n";
    out << std::left << std::setw(first) << "distance";
    for (const auto& m : report.methods) out << std::right << std::setw(width) << m;
    out << "\n";
    for (double d : report.distances) {
        out << std::left << std::setw(first) << format_distance(d);
        for (const auto& m : report.methods) {
            const auto& row = row_at(report, d, m);
            std::string cell = std::to_string(row.allocated);
            if (with_timing) cell += " (" + std::to_string(row.runtime_ms) + " ms)";
            out << std::right << std::setw(width) << cell;
        }
        out << "\n";
    }
    return out.str();
}

nlohmann::ordered_json report_to_json(const BenchReport& report, bool with_timing) {
    nlohmann::ordered_json doc;
    doc["floorplan_size"] = report.floorplan_size;
    doc["methods"] = report.methods;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (double d : report.distances) {
        nlohmann::ordered_json row;
        row["distance"] = d;
        for (const auto& m : report.methods) {
            const auto& r = row_at(report, d, m);
            if (with_timing)
                row[m] = {{"allocated", r.allocated}, {"runtime_ms", r.runtime_ms}};
            else
                row[m] = r.allocated;
        }
        rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);
    return doc;
}

}  // namespace seatplan
