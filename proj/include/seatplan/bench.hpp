#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "seatplan/ingest.hpp"
#include "seatplan/solvers.hpp"

namespace seatplan {

enum class Method { random_walk, partition, exact };

/// Accepts "random_walk"/"random-walk", "partition", "exact"; anything else is
/// ErrorCode::usage.
Method parse_method(const std::string& label);
const char* to_string(Method m);

/// Runs one engine on a prepared graph. Exact runs in count mode with
/// unbounded headcount.
AllocationPlan run_method(Method m, const ConstraintGraph& g, const SolverConfig& config);

struct BenchRow {
    double distance = 0.0;
    std::string method;
    std::size_t allocated = 0;
    long long runtime_ms = 0;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::size_t floorplan_size = 0;
    std::vector<double> distances;
    std::vector<std::string> methods;
};

/// Rebuilds the constraint graph per distance and runs every method on it.
/// Distances must be non-empty and strictly increasing.
BenchReport bench_sweep(const Floorplan& fp, const std::vector<double>& distances,
                        const std::vector<std::string>& methods, const SolverConfig& config);

/// Allocated count for (distance, method); throws ErrorCode::reference if absent.
std::size_t allocated_at(const BenchReport& report, double distance, const std::string& method);

/// Fixed-width table: one row per distance, one column per method.
std::string format_table(const BenchReport& report, bool with_timing = false);

/// Timings are left out unless asked for, so repeated runs compare equal.
nlohmann::ordered_json report_to_json(const BenchReport& report, bool with_timing = false);

}  // namespace seatplan
