#include "assignment.hpp"

#include <algorithm>
#include <limits>

namespace seatplan::detail {

namespace {
constexpr double kEps = 1e-12;
constexpr double kNone = -std::numeric_limits<double>::infinity();
}  // namespace

IncrementalAssignment::IncrementalAssignment(const std::vector<std::vector<double>>* weight,
                                             std::vector<long long> capacity)
    : weight_(weight),
      capacity_(std::move(capacity)),
      load_(capacity_.size(), 0),
      unit_of_(weight->size(), -1),
      seats_in_(capacity_.size()) {}

// Longest-path Bellman-Ford over units. dist[j] is the best gain of a chain
// that starts with `seat` entering some unit and ends with an extra seat
// sitting in unit j; shifting seat t from j to k adds w(t,k) - w(t,j).
IncrementalAssignment::Path IncrementalAssignment::best_path(int seat) const {
    const auto& w = *weight_;
    const std::size_t units = capacity_.size();
    Path p;
    p.dist.assign(units, kNone);
    p.pred_unit.assign(units, -1);
    p.pred_seat.assign(units, -1);
    for (std::size_t j = 0; j < units; ++j)
        if (capacity_[j] > 0 && w[static_cast<std::size_t>(seat)][j] > 0.0) p.dist[j] = w[static_cast<std::size_t>(seat)][j];

    for (std::size_t round = 0; round < units; ++round) {
        bool changed = false;
        for (std::size_t j = 0; j < units; ++j) {
            if (p.dist[j] == kNone) continue;
            for (int t : seats_in_[j]) {
                for (std::size_t k = 0; k < units; ++k) {
                    if (k == j || capacity_[k] <= 0 || w[static_cast<std::size_t>(t)][k] <= 0.0) continue;
                    double cand = p.dist[j] - w[static_cast<std::size_t>(t)][j] + w[static_cast<std::size_t>(t)][k];
                    if (cand > p.dist[k] + kEps) {
                        p.dist[k] = cand;
                        p.pred_unit[k] = static_cast<int>(j);
                        p.pred_seat[k] = t;
                        changed = true;
                    }
                }
            }
        }
        if (!changed) break;
    }

    for (std::size_t j = 0; j < units; ++j) {
        if (p.dist[j] == kNone) continue;
        if (load_[j] < capacity_[j]) {
            if (p.dist[j] > p.gain + kEps) {
                p.gain = p.dist[j];
                p.end_unit = static_cast<int>(j);
                p.evicted = -1;
            }
        } else {
            for (int t : seats_in_[j]) {
                double cand = p.dist[j] - w[static_cast<std::size_t>(t)][j];
                if (cand > p.gain + kEps) {
                    p.gain = cand;
                    p.end_unit = -1;
                    p.evicted = t;
                    p.evict_unit = static_cast<int>(j);
                }
            }
        }
    }
    return p;
}

double IncrementalAssignment::gain(int seat) const { return best_path(seat).gain; }

double IncrementalAssignment::add(int seat) {
    Path p = best_path(seat);
    if (p.gain <= kEps) return 0.0;

    auto remove_from = [&](int t, int j) {
        auto& list = seats_in_[static_cast<std::size_t>(j)];
        list.erase(std::find(list.begin(), list.end(), t));
        --load_[static_cast<std::size_t>(j)];
        unit_of_[static_cast<std::size_t>(t)] = -1;
    };
    auto place = [&](int t, int j) {
        seats_in_[static_cast<std::size_t>(j)].push_back(t);
        ++load_[static_cast<std::size_t>(j)];
        unit_of_[static_cast<std::size_t>(t)] = j;
    };

    int j = p.end_unit;
    if (p.evicted >= 0) {
        remove_from(p.evicted, p.evict_unit);
        j = p.evict_unit;
    }
    // Walk the chain back: the seat that moved into j came from pred_unit[j].
    while (p.pred_unit[static_cast<std::size_t>(j)] >= 0) {
        int from = p.pred_unit[static_cast<std::size_t>(j)];
        int t = p.pred_seat[static_cast<std::size_t>(j)];
        remove_from(t, from);
        place(t, j);
        j = from;
    }
    place(seat, j);
    value_ += p.gain;
    return p.gain;
}

}  // namespace seatplan::detail
