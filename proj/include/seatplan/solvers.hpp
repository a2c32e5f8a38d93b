#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "seatplan/constraint_graph.hpp"
#include "seatplan/natural_order.hpp"

namespace seatplan {

struct BusinessUnit {
    std::string id;
    long long headcount = 0;
};

/// Unit that receives every seat when a caller supplies no business units.
inline constexpr const char* kImplicitUnit = "all";

void validate(const std::vector<BusinessUnit>& units);

struct AllocationPlan {
    std::string method;
    double d = 0.0;
    double objective = 0.0;
    std::map<std::string, std::string, NaturalLess> assignments;  // workspace -> unit
    std::vector<std::string> unallocated;                          // natural id order

    std::size_t allocated_count() const { return assignments.size(); }
};

enum class SolveMode { count, preserve };

struct SolverConfig {
    double d = 72.0;
    double penalty_c = 0.0;
    std::uint64_t seed = 0;
    int restarts = 16;
    int component_cap = 2000;
    SolveMode mode = SolveMode::count;
};

void validate(const SolverConfig& config);

// Heuristics -------------------------------------------------------------------

/// Best of `restarts` seeded greedy passes over a random visiting order.
AllocationPlan random_walk(const ConstraintGraph& g, std::uint64_t seed, int restarts);

/// Nodes of the odd cycles with the highest participation count, then the
/// highest degree. Ascending id order. Throws ErrorCode::contract when empty.
std::vector<std::string> candidate_set(const CycleBasis& odd_cycles, const ConstraintGraph& g);

/// Seeded-random member of `candidate_set`.
std::string candidate_h(const CycleBasis& odd_cycles, const ConstraintGraph& g, std::uint64_t seed);

CycleBasis odd_cycles(const CycleBasis& basis);

struct PartitionResult {
    ConstraintGraph remainder;          // bipartite
    std::vector<std::string> deleted;   // deletion order
};

/// Deletes heuristic candidates until no odd basis cycle remains. The cycle
/// basis is recomputed after every deletion.
PartitionResult partition(const ConstraintGraph& g, std::uint64_t seed);

/// Per component: partition, bicolor, keep the larger class (ties go to the
/// class holding the smallest id).
AllocationPlan space_selection(const ConstraintGraph& g, std::uint64_t seed);

// Exact engines ------------------------------------------------------------------

/// Maximum allocation under conflicts and unit headcounts. Empty `units`
/// means one implicit unit of unbounded headcount.
AllocationPlan solve_exact_count(const ConstraintGraph& g, const std::vector<BusinessUnit>& units,
                                 int component_cap = 2000);

/// Maximizes allocated + C * (kept prior assignments - reassigned prior seats),
/// where a reassignment moves a prior seat to another unit that also appears
/// in the prior plan.
AllocationPlan solve_exact_preserve(const ConstraintGraph& g, const std::vector<BusinessUnit>& units,
                                    const AllocationPlan& prior, double penalty_c, int component_cap = 2000);

/// Exhaustive reference solver for graphs with at most 20 nodes.
AllocationPlan brute_force_oracle(const ConstraintGraph& g, const std::vector<BusinessUnit>& units,
                                  const std::optional<AllocationPlan>& prior, double penalty_c);

inline constexpr std::size_t kOracleMaxNodes = 20;

// Plan utilities ---------------------------------------------------------------------

/// Builds a plan from chosen seats: keeps at most the total headcount (in id
/// order) and fills units in input order.
AllocationPlan assign_units(const ConstraintGraph& g, std::vector<int> seats, const std::vector<BusinessUnit>& units,
                            std::string method);

/// Re-fills the seats of `plan` into `units` as `assign_units` does.
AllocationPlan with_units(const ConstraintGraph& g, const AllocationPlan& plan, const std::vector<BusinessUnit>& units);

/// allocated + C * (keeps - switches) against `prior`.
double preserve_objective(const AllocationPlan& plan, const AllocationPlan& prior, double penalty_c);

/// Throws ErrorCode::invalid_prior when `prior` names unknown seats or units.
void validate_prior(const ConstraintGraph& g, const std::vector<BusinessUnit>& units, const AllocationPlan& prior);

struct PlanAudit {
    std::size_t conflict_violations = 0;
    std::size_t capacity_violations = 0;
    std::size_t unknown_references = 0;
    std::size_t unallocated_mismatch = 0;

    bool ok() const {
        return conflict_violations == 0 && capacity_violations == 0 && unknown_references == 0 &&
               unallocated_mismatch == 0;
    }
};

/// Counts constraint violations. Single assignment per seat holds by the map
/// representation; `unallocated_mismatch` checks it partitions the nodes.
PlanAudit audit(const ConstraintGraph& g, const std::vector<BusinessUnit>& units, const AllocationPlan& plan);

/// True when no unallocated seat can be added without a conflict.
bool is_maximal(const ConstraintGraph& g, const AllocationPlan& plan);

}  // namespace seatplan
