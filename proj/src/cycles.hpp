#pragma once

#include <vector>

#include "seatplan/constraint_graph.hpp"

namespace seatplan::detail {

// For every node, the number of odd cycles of cycle_basis(g) through it.
// Same basis as the public function, without materializing the cycles.
std::vector<int> odd_cycle_participation(const ConstraintGraph& g);

}  // namespace seatplan::detail
