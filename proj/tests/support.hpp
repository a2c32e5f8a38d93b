#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "seatplan/constraint_graph.hpp"
#include "seatplan/error.hpp"
#include "seatplan/ingest.hpp"
#include "seatplan/solvers.hpp"
#include "seatplan/vision.hpp"

namespace testsupport {

using seatplan::AllocationPlan;
using seatplan::BusinessUnit;
using seatplan::ConstraintGraph;
using seatplan::Floorplan;

// Code of the seatplan::Error thrown by f, or nullopt when nothing is thrown.
template <class F>
std::optional<seatplan::ErrorCode> error_code(F&& f) {
    try {
        f();
    } catch (const seatplan::Error& e) {
        return e.code();
    }
    return std::nullopt;
}

inline Floorplan grid(int rows, int cols, double pitch = 60.0) {
    seatplan::GridSpec spec;
    spec.rows = rows;
    spec.cols = cols;
    spec.pitch_x = pitch;
    spec.pitch_y = pitch;
    return seatplan::generate_synthetic(spec, 0);
}

// Graph from explicit id pairs; weights are irrelevant to the solvers.
inline ConstraintGraph graph_of(std::vector<std::string> ids, const std::vector<std::pair<std::string, std::string>>& pairs,
                                double d = 72.0) {
    std::vector<seatplan::IdEdge> edges;
    for (const auto& [a, b] : pairs) edges.push_back({a, b, d / 2});
    return ConstraintGraph(std::move(ids), edges, d);
}

inline std::vector<std::string> numbered(int n, const std::string& prefix = "n") {
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) ids.push_back(prefix + std::to_string(i));
    return ids;
}

inline ConstraintGraph path(int n) {
    auto ids = numbered(n);
    std::vector<std::pair<std::string, std::string>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(ids[i], ids[i + 1]);
    return graph_of(ids, e);
}

inline ConstraintGraph cycle(int n) {
    auto ids = numbered(n);
    std::vector<std::pair<std::string, std::string>> e;
    for (int i = 0; i < n; ++i) e.emplace_back(ids[i], ids[(i + 1) % n]);
    return graph_of(ids, e);
}

inline ConstraintGraph complete(int n) {
    auto ids = numbered(n);
    std::vector<std::pair<std::string, std::string>> e;
    for (int i = 0; i < n; ++i)
        for (int k = i + 1; k < n; ++k) e.emplace_back(ids[i], ids[k]);
    return graph_of(ids, e);
}

// The six-node example graph with two odd cycles sharing 30 and 62.
inline ConstraintGraph six_node() {
    return graph_of({"30", "38", "47", "55", "62", "68"},
                    {{"68", "30"}, {"30", "62"}, {"62", "68"}, {"55", "62"}, {"55", "30"}, {"38", "68"}, {"47", "55"}});
}

// Desks of 60x60 at uniformly random centroids in a square of side `extent`.
inline Floorplan random_floorplan(std::mt19937_64& rng, int n, double extent) {
    std::uniform_real_distribution<double> pos(0.0, extent);
    Floorplan fp;
    for (int i = 0; i < n; ++i) {
        double x = pos(rng), y = pos(rng);
        fp.workspaces.push_back(seatplan::Workspace::make("w" + std::to_string(i), {{x - 30, y - 30}, {x + 30, y + 30}}));
    }
    return fp;
}

struct Instance {
    ConstraintGraph graph;
    std::vector<BusinessUnit> units;
    std::optional<AllocationPlan> prior;
    double penalty = 0.0;
};

// Random small instance: 1-3 units, optional prior over a random subset of
// seats, dyadic penalty so objective arithmetic is exact.
inline Instance random_instance(std::uint64_t seed, int max_nodes, bool with_prior) {
    std::mt19937_64 rng(seed);
    int n = std::uniform_int_distribution<int>(1, max_nodes)(rng);
    double extent = std::uniform_real_distribution<double>(60.0, 600.0)(rng);
    double d = std::uniform_real_distribution<double>(40.0, 150.0)(rng);
    Instance inst;
    inst.graph = seatplan::build_constraint_graph(random_floorplan(rng, n, extent), d);
    int units = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int j = 0; j < units; ++j)
        inst.units.push_back({"U" + std::to_string(j), std::uniform_int_distribution<long long>(0, n)(rng)});
    if (with_prior) {
        static const double kPenalties[] = {0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 4.0, 10.0};
        inst.penalty = kPenalties[std::uniform_int_distribution<int>(0, 8)(rng)];
        AllocationPlan prior;
        for (const auto& id : inst.graph.ids())
            if (std::bernoulli_distribution(0.5)(rng))
                prior.assignments[id] = inst.units[std::uniform_int_distribution<int>(0, units - 1)(rng)].id;
        inst.prior = prior;
    }
    return inst;
}

// Best unit assignment of a fixed seat set, by successive shortest paths on
// source -> seat -> unit -> sink, stopping once no path has positive profit.
inline double best_assignment_value(const std::vector<int>& seats, const std::vector<std::vector<double>>& weight,
                                    const std::vector<long long>& capacity) {
    const int S = static_cast<int>(seats.size());
    const int J = static_cast<int>(capacity.size());
    const int src = S + J, sink = S + J + 1, N = S + J + 2;
    struct Arc {
        int to, rev;
        long long cap;
        double cost;
    };
    std::vector<std::vector<Arc>> arcs(N);
    auto add = [&](int a, int b, long long cap, double cost) {
        arcs[a].push_back({b, static_cast<int>(arcs[b].size()), cap, cost});
        arcs[b].push_back({a, static_cast<int>(arcs[a].size()) - 1, 0, -cost});
    };
    for (int s = 0; s < S; ++s) {
        add(src, s, 1, 0.0);
        for (int j = 0; j < J; ++j) add(s, S + j, 1, -weight[seats[s]][j]);
    }
    for (int j = 0; j < J; ++j) add(S + j, sink, capacity[j], 0.0);
    double profit = 0.0;
    for (;;) {
        std::vector<double> dist(N, std::numeric_limits<double>::infinity());
        std::vector<std::pair<int, int>> prev(N, {-1, -1});
        dist[src] = 0.0;
        for (int round = 0; round < N; ++round) {
            bool changed = false;
            for (int a = 0; a < N; ++a) {
                if (dist[a] == std::numeric_limits<double>::infinity()) continue;
                for (int k = 0; k < static_cast<int>(arcs[a].size()); ++k) {
                    const Arc& e = arcs[a][k];
                    if (e.cap > 0 && dist[a] + e.cost < dist[e.to] - 1e-12) {
                        dist[e.to] = dist[a] + e.cost;
                        prev[e.to] = {a, k};
                        changed = true;
                    }
                }
            }
            if (!changed) break;
        }
        if (!(dist[sink] < -1e-12)) break;
        profit -= dist[sink];
        for (int v = sink; v != src; v = prev[v].first) {
            Arc& e = arcs[prev[v].first][prev[v].second];
            e.cap -= 1;
            arcs[v][e.rev].cap += 1;
        }
    }
    return profit;
}

// Independent reference for the optimal objective: every independent set,
// each scored by the flow above.
inline double reference_objective(const ConstraintGraph& g, std::vector<BusinessUnit> units,
                                  const std::optional<AllocationPlan>& prior, double c) {
    const int n = static_cast<int>(g.node_count());
    if (units.empty()) units.push_back({seatplan::kImplicitUnit, n});
    const int J = static_cast<int>(units.size());
    std::map<std::string, int> unit_index;
    for (int j = 0; j < J; ++j) unit_index[units[j].id] = j;
    std::vector<int> prior_unit(n, -1);
    std::vector<bool> prior_unit_used(J, false);
    if (prior)
        for (const auto& [ws, unit] : prior->assignments) {
            prior_unit[*g.index_of(ws)] = unit_index.at(unit);
            prior_unit_used[unit_index.at(unit)] = true;
        }
    std::vector<std::vector<double>> weight(n, std::vector<double>(J, 1.0));
    for (int s = 0; s < n; ++s)
        for (int j = 0; j < J; ++j)
            if (prior_unit[s] == j)
                weight[s][j] = 1.0 + c;
            else if (prior_unit[s] >= 0 && prior_unit_used[j])
                weight[s][j] = 1.0 - c;
    std::vector<long long> capacity;
    for (const auto& u : units) capacity.push_back(u.headcount);

    double best = 0.0;
    std::vector<int> chosen;
    std::function<void(int)> walk = [&](int v) {
        if (v == n) {
            best = std::max(best, best_assignment_value(chosen, weight, capacity));
            return;
        }
        walk(v + 1);
        for (int u : chosen)
            if (g.adjacent(u, v)) return;
        chosen.push_back(v);
        walk(v + 1);
        chosen.pop_back();
    };
    walk(0);
    return best;
}

// Maximum independent set size by plain subset enumeration.
inline int reference_mis(const ConstraintGraph& g) {
    const int n = static_cast<int>(g.node_count());
    int best = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        bool ok = true;
        for (const auto& e : g.edges())
            if ((mask >> e.u & 1u) && (mask >> e.v & 1u)) {
                ok = false;
                break;
            }
        if (ok) best = std::max(best, __builtin_popcount(mask));
    }
    return best;
}

// Top view of a desk on white paper: dark outline, a monitor bar along the
// far edge and a chair seat below it. Asymmetric under every quarter turn.
inline seatplan::GrayImage desk_template() {
    seatplan::GrayImage t(44, 32, 1.0);
    for (int y = 2; y < 30; ++y)
        for (int x = 2; x < 42; ++x) {
            bool outline = x < 4 || x >= 40 || y < 4 || y >= 28;
            bool monitor = y >= 6 && y < 9 && x >= 10 && x < 30;
            bool chair = y >= 18 && y < 26 && x >= 24 && x < 34;
            if (outline) t.at(x, y) = 0.1;
            else if (monitor) t.at(x, y) = 0.3;
            else if (chair) t.at(x, y) = 0.6;
            else t.at(x, y) = 0.9;
        }
    return t;
}

}  // namespace testsupport
