#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace seatplan::detail {

struct ProfileLimits {
    // (frontier state, load vector) pairs one component sweep may hold in total.
    std::size_t max_component_entries = 6'000'000;
    // Back pointers kept by the merge: load vectors x components.
    std::size_t max_merge_entries = 24'000'000;
    // Cell pairs visited by the merge over all components.
    std::size_t max_merge_work = 300'000'000;
};

/// Exact seat selection and unit assignment under headcounts: picks an
/// independent set and a unit per picked seat maximizing the summed
/// weight[seat][unit] (non-positive weights are never used), with at most
/// capacity[j] seats in unit j. `components` must partition the seats into
/// the connected components of `adj`.
///
/// Each component is swept once to tabulate its best value for every vector
/// of loads on the units whose headcount can bind; the tables are then merged
/// by max-plus convolution under the headcounts. Returns unit_of per seat
/// (-1 when unallocated), or nullopt when a table or the merge would exceed
/// the limits.
std::optional<std::vector<int>> assign_by_profiles(const std::vector<std::vector<int>>& adj,
                                                   const std::vector<std::vector<int>>& components,
                                                   const std::vector<std::vector<double>>& weight,
                                                   const std::vector<long long>& capacity,
                                                   const ProfileLimits& limits = {});

}  // namespace seatplan::detail
