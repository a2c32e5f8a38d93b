#pragma once

#include <vector>

namespace seatplan::detail {

/// Maximum-weight assignment of seats to capacitated units, grown one seat at
/// a time. Each `add` applies the best augmenting path that starts at the new
/// seat (possibly shifting or evicting earlier seats), which keeps the
/// assignment optimal for the current seat set. Only positive weights are
/// ever used.
class IncrementalAssignment {
public:
    /// weight[s][j] for every seat s of the instance, capacity[j] per unit.
    IncrementalAssignment(const std::vector<std::vector<double>>* weight, std::vector<long long> capacity);

    /// Gain that adding `seat` would produce, without applying it.
    double gain(int seat) const;

    /// Adds `seat` and returns the realized gain.
    double add(int seat);

    double value() const { return value_; }

    /// Unit of each seat, -1 when unassigned or never added.
    const std::vector<int>& unit_of() const { return unit_of_; }

private:
    struct Path {
        double gain = 0.0;
        int end_unit = -1;   // unit absorbing the extra seat, or
        int evicted = -1;    // seat that drops out
        int evict_unit = -1;
        std::vector<int> pred_unit;
        std::vector<int> pred_seat;
        std::vector<double> dist;
    };

    Path best_path(int seat) const;

    const std::vector<std::vector<double>>* weight_;
    std::vector<long long> capacity_;
    std::vector<long long> load_;
    std::vector<int> unit_of_;
    std::vector<std::vector<int>> seats_in_;  // seats per unit
    double value_ = 0.0;
};

}  // namespace seatplan::detail
