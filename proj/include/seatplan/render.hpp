#pragma once

#include <string>

#include "seatplan/ingest.hpp"
#include "seatplan/solvers.hpp"

namespace seatplan {

inline constexpr const char* kAllocatedFill = "#1f77b4";
inline constexpr const char* kUnallocatedFill = "#ffb6c1";

/// SVG with one rect per workspace (element id = workspace id), allocated
/// seats blue and the rest pink. A background reference on the floorplan is
/// drawn underneath as an <image>.
std::string render_allocation(const Floorplan& fp, const AllocationPlan& plan);

/// Same drawing with every seat unallocated.
std::string render_floorplan(const Floorplan& fp);

}  // namespace seatplan
