#include "seatplan/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "assignment.hpp"
#include "cycles.hpp"
#include "mwis.hpp"
#include "profile.hpp"
#include "seatplan/error.hpp"
#include "seatplan/random.hpp"

namespace seatplan {

namespace {

constexpr double kEps = 1e-9;

std::size_t at(int i) { return static_cast<std::size_t>(i); }

// Units actually used by a solve: the caller's list, or one unbounded
// implicit unit when the list is empty.
std::vector<BusinessUnit> effective_units(const ConstraintGraph& g, const std::vector<BusinessUnit>& units) {
    if (!units.empty()) return units;
    return {{kImplicitUnit, static_cast<long long>(g.node_count())}};
}

void check_component_cap(const ConstraintGraph& g, const std::vector<std::vector<int>>& comps, int cap) {
    if (cap < 1) throw Error(ErrorCode::invalid_argument, "component cap must be positive");
    for (const auto& c : comps)
        if (static_cast<long long>(c.size()) > cap)
            throw Error(ErrorCode::size_cap, "component containing '" + g.id(c.front()) + "' has " +
                                                 std::to_string(c.size()) + " nodes, above the cap of " +
                                                 std::to_string(cap));
}

// Adjacency of `nodes` re-indexed locally.
std::vector<std::vector<int>> local_adjacency(const ConstraintGraph& g, const std::vector<int>& nodes) {
    std::unordered_map<int, int> local;
    for (std::size_t i = 0; i < nodes.size(); ++i) local.emplace(nodes[i], static_cast<int>(i));
    std::vector<std::vector<int>> adj(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (int u : g.neighbors(nodes[i])) {
            auto it = local.find(u);
            if (it != local.end()) adj[i].push_back(it->second);
        }
    return adj;
}

AllocationPlan plan_from_units(const ConstraintGraph& g, const std::vector<int>& unit_of,
                               const std::vector<BusinessUnit>& units, std::string method) {
    AllocationPlan plan;
    plan.method = std::move(method);
    plan.d = g.social_distance();
    for (int s = 0; s < static_cast<int>(g.node_count()); ++s) {
        if (unit_of[at(s)] >= 0)
            plan.assignments.emplace(g.id(s), units[at(unit_of[at(s)])].id);
        else
            plan.unallocated.push_back(g.id(s));
    }
    plan.objective = static_cast<double>(plan.allocated_count());
    return plan;
}

std::size_t pick(const std::vector<std::string>& candidates, Rng& rng) {
    return static_cast<std::size_t>(rng.below(candidates.size()));
}

}  // namespace

void validate(const std::vector<BusinessUnit>& units) {
    std::unordered_set<std::string> seen;
    for (const auto& u : units) {
        if (u.headcount < 0) throw Error(ErrorCode::invalid_argument, "unit '" + u.id + "' has negative headcount");
        if (!seen.insert(u.id).second) throw Error(ErrorCode::duplicate_id, "duplicate business unit '" + u.id + "'");
    }
}

void validate(const SolverConfig& config) {
    if (!(std::isfinite(config.d) && config.d > 0.0))
        throw Error(ErrorCode::invalid_argument, "social distance must be positive");
    if (!(std::isfinite(config.penalty_c) && config.penalty_c >= 0.0))
        throw Error(ErrorCode::invalid_argument, "penalty must be finite and non-negative");
    if (config.restarts < 1) throw Error(ErrorCode::invalid_argument, "restarts must be at least 1");
    if (config.component_cap < 1) throw Error(ErrorCode::invalid_argument, "component cap must be positive");
}

AllocationPlan assign_units(const ConstraintGraph& g, std::vector<int> seats, const std::vector<BusinessUnit>& units,
                            std::string method) {
    validate(units);
    auto eff = effective_units(g, units);
    std::sort(seats.begin(), seats.end());
    seats.erase(std::unique(seats.begin(), seats.end()), seats.end());

    std::vector<int> unit_of(g.node_count(), -1);
    std::size_t next = 0;
    for (std::size_t j = 0; j < eff.size() && next < seats.size(); ++j)
        for (long long k = 0; k < eff[j].headcount && next < seats.size(); ++k)
            unit_of[at(seats[next++])] = static_cast<int>(j);
    return plan_from_units(g, unit_of, eff, std::move(method));
}

AllocationPlan with_units(const ConstraintGraph& g, const AllocationPlan& plan, const std::vector<BusinessUnit>& units) {
    std::vector<int> seats;
    for (const auto& [ws, unit] : plan.assignments) {
        auto node = g.index_of(ws);
        if (!node) throw Error(ErrorCode::reference, "plan names unknown workspace '" + ws + "'");
        seats.push_back(*node);
    }
    return assign_units(g, std::move(seats), units, plan.method);
}

// ---------------------------------------------------------------------------
// Random walk

AllocationPlan random_walk(const ConstraintGraph& g, std::uint64_t seed, int restarts) {
    if (restarts < 1) throw Error(ErrorCode::invalid_argument, "restarts must be at least 1");
    const int n = static_cast<int>(g.node_count());
    std::vector<int> best;
    for (int r = 0; r < restarts; ++r) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(r)));
        std::vector<int> order(at(n));
        std::iota(order.begin(), order.end(), 0);
        rng.shuffle(order);
        std::vector<char> blocked(at(n), 0);
        std::vector<int> chosen;
        for (int v : order) {
            if (blocked[at(v)]) continue;
            chosen.push_back(v);
            for (int u : g.neighbors(v)) blocked[at(u)] = 1;
        }
        if (r == 0 || chosen.size() > best.size()) best = std::move(chosen);
    }
    return assign_units(g, best, {}, "random_walk");
}

// ---------------------------------------------------------------------------
// Bipartization heuristic

CycleBasis odd_cycles(const CycleBasis& basis) {
    CycleBasis out;
    for (const auto& c : basis.cycles)
        if (c.size() % 2 == 1) out.cycles.push_back(c);
    return out;
}

std::vector<std::string> candidate_set(const CycleBasis& odd, const ConstraintGraph& g) {
    if (odd.cycles.empty()) throw Error(ErrorCode::contract, "candidate selection needs at least one odd cycle");
    std::map<std::string, int, NaturalLess> participation;
    for (const auto& cycle : odd.cycles) {
        std::set<std::string> unique(cycle.begin(), cycle.end());
        for (const auto& id : unique) ++participation[id];
    }
    int top = 0;
    for (const auto& [id, count] : participation) top = std::max(top, count);

    std::vector<std::string> best;
    int best_degree = -1;
    for (const auto& [id, count] : participation) {
        if (count != top) continue;
        auto node = g.index_of(id);
        if (!node) throw Error(ErrorCode::contract, "cycle node '" + id + "' is not in the graph");
        int deg = g.degree(*node);
        if (deg > best_degree) {
            best_degree = deg;
            best.clear();
        }
        if (deg == best_degree) best.push_back(id);
    }
    return best;
}

std::string candidate_h(const CycleBasis& odd, const ConstraintGraph& g, std::uint64_t seed) {
    auto candidates = candidate_set(odd, g);
    Rng rng(seed);
    return candidates[pick(candidates, rng)];
}

PartitionResult partition(const ConstraintGraph& g, std::uint64_t seed) {
    Rng rng(seed);
    PartitionResult out{g, {}};
    // Index-based equivalent of candidate_set(odd_cycles(cycle_basis(...))),
    // which is quadratic in string work on dense floors.
    for (;;) {
        const ConstraintGraph& r = out.remainder;
        std::vector<int> count = detail::odd_cycle_participation(r);
        int top = *std::max_element(count.begin(), count.end());
        if (top == 0) break;
        int best_degree = -1;
        std::vector<int> nodes;
        for (int v = 0; v < static_cast<int>(r.node_count()); ++v) {
            if (count[at(v)] != top) continue;
            if (r.degree(v) > best_degree) {
                best_degree = r.degree(v);
                nodes.clear();
            }
            if (r.degree(v) == best_degree) nodes.push_back(v);
        }
        std::vector<std::string> candidates;
        for (int v : nodes) candidates.push_back(r.id(v));
        std::sort(candidates.begin(), candidates.end(), NaturalLess{});
        std::string victim = candidates[pick(candidates, rng)];
        out.remainder = r.without({*r.index_of(victim)});
        out.deleted.push_back(std::move(victim));
    }
    if (!std::holds_alternative<Bicoloring>(bicolor(out.remainder)))
        throw Error(ErrorCode::contract, "partition left an odd cycle behind");
    return out;
}

AllocationPlan space_selection(const ConstraintGraph& g, std::uint64_t seed) {
    std::vector<int> selected;
    auto comps = component_nodes(g);
    for (std::size_t k = 0; k < comps.size(); ++k) {
        if (comps[k].size() == 1) {
            selected.push_back(comps[k].front());
            continue;
        }
        PartitionResult part = partition(g.induced(comps[k]), mix_seed(seed, k));
        // Deletions can split the component; each piece keeps its own larger class.
        for (const auto& piece : components(part.remainder)) {
            const auto coloring = std::get<Bicoloring>(bicolor(piece));
            const auto& keep = coloring.v.size() > coloring.u.size() ? coloring.v : coloring.u;
            for (const auto& id : keep) selected.push_back(*g.index_of(id));
        }
    }
    return assign_units(g, selected, {}, "partition");
}

// ---------------------------------------------------------------------------
// Exact count mode

AllocationPlan solve_exact_count(const ConstraintGraph& g, const std::vector<BusinessUnit>& units, int component_cap) {
    validate(units);
    auto comps = component_nodes(g);
    check_component_cap(g, comps, component_cap);
    std::vector<int> seats;
    for (const auto& nodes : comps) {
        if (nodes.size() == 1) {
            seats.push_back(nodes.front());
            continue;
        }
        auto result = detail::max_weight_independent_set(local_adjacency(g, nodes), std::vector<double>(nodes.size(), 1.0));
        for (int v : result.nodes) seats.push_back(nodes[at(v)]);
    }
    return assign_units(g, seats, units, "exact");
}

// ---------------------------------------------------------------------------
// Exact preserve mode

double preserve_objective(const AllocationPlan& plan, const AllocationPlan& prior, double penalty_c) {
    std::set<std::string> prior_units;
    for (const auto& [ws, unit] : prior.assignments) prior_units.insert(unit);
    long long keeps = 0, switches = 0;
    for (const auto& [ws, unit] : plan.assignments) {
        auto it = prior.assignments.find(ws);
        if (it == prior.assignments.end()) continue;
        if (it->second == unit)
            ++keeps;
        else if (prior_units.contains(unit))
            ++switches;
    }
    return static_cast<double>(plan.allocated_count()) + penalty_c * static_cast<double>(keeps - switches);
}

void validate_prior(const ConstraintGraph& g, const std::vector<BusinessUnit>& units, const AllocationPlan& prior) {
    auto eff = effective_units(g, units);
    for (const auto& [ws, unit] : prior.assignments) {
        if (!g.index_of(ws)) throw Error(ErrorCode::invalid_prior, "prior plan names unknown workspace '" + ws + "'");
        bool known = std::any_of(eff.begin(), eff.end(), [&](const BusinessUnit& u) { return u.id == unit; });
        if (!known) throw Error(ErrorCode::invalid_prior, "prior plan names unknown unit '" + unit + "'");
    }
}

namespace {

struct PreserveInstance {
    std::vector<BusinessUnit> units;
    std::vector<std::vector<double>> weight;  // seat x unit
    std::vector<long long> capacity;
    std::vector<double> best_weight;  // per seat, max positive weight over usable units
};

PreserveInstance make_preserve_instance(const ConstraintGraph& g, const std::vector<BusinessUnit>& units,
                                        const AllocationPlan& prior, double c) {
    PreserveInstance inst;
    inst.units = effective_units(g, units);
    const std::size_t J = inst.units.size();
    std::unordered_map<std::string, int> unit_index;
    for (std::size_t j = 0; j < J; ++j) unit_index.emplace(inst.units[j].id, static_cast<int>(j));
    std::vector<int> prior_unit(g.node_count(), -1);
    std::vector<char> in_prior_units(J, 0);
    for (const auto& [ws, unit] : prior.assignments) {
        int j = unit_index.at(unit);
        prior_unit[at(*g.index_of(ws))] = j;
        in_prior_units[at(j)] = 1;
    }
    for (const auto& u : inst.units) inst.capacity.push_back(std::min<long long>(u.headcount, static_cast<long long>(g.node_count())));
    inst.weight.assign(g.node_count(), std::vector<double>(J, 1.0));
    inst.best_weight.assign(g.node_count(), 0.0);
    for (std::size_t s = 0; s < g.node_count(); ++s) {
        for (std::size_t j = 0; j < J; ++j) {
            if (prior_unit[s] < 0) continue;
            if (prior_unit[s] == static_cast<int>(j))
                inst.weight[s][j] = 1.0 + c;
            else if (in_prior_units[j])
                inst.weight[s][j] = 1.0 - c;
        }
        for (std::size_t j = 0; j < J; ++j)
            if (inst.capacity[j] > 0) inst.best_weight[s] = std::max(inst.best_weight[s], inst.weight[s][j]);
    }
    return inst;
}

class PreserveSearch {
public:
    PreserveSearch(const ConstraintGraph& g, const PreserveInstance& inst) : g_(g), inst_(inst) {
        for (int s = 0; s < static_cast<int>(g.node_count()); ++s)
            if (inst.best_weight[at(s)] > 0.0) order_.push_back(s);
        std::stable_sort(order_.begin(), order_.end(),
                         [&](int a, int b) { return inst.best_weight[at(a)] > inst.best_weight[at(b)]; });
        adj_.resize(g.node_count());
        for (int s = 0; s < static_cast<int>(g.node_count()); ++s) adj_[at(s)] = g.neighbors(s);
        blocked_.assign(g.node_count(), 0);
    }

    void seed_incumbent(const detail::IncrementalAssignment& a) {
        best_value_ = a.value();
        best_units_ = a.unit_of();
    }

    // Stop as soon as the incumbent reaches a known upper bound.
    void set_ceiling(double ceiling) { ceiling_ = ceiling; }

    void run() {
        detail::IncrementalAssignment start(&inst_.weight, inst_.capacity);
        dfs(0, start);
    }

    const std::vector<int>& best_units() const { return best_units_; }

private:
    void dfs(std::size_t pos, const detail::IncrementalAssignment& cur) {
        // Marginal gains only shrink as seats are added, so they bound the
        // value any completion can still collect.
        std::vector<double> gains(g_.node_count(), 0.0);
        std::size_t first = order_.size();
        for (std::size_t k = pos; k < order_.size(); ++k) {
            int s = order_[k];
            if (blocked_[at(s)]) continue;
            double gain = cur.gain(s);
            if (gain <= kEps) continue;
            gains[at(s)] = gain;
            first = std::min(first, k);
        }
        if (cur.value() > best_value_ + kEps) {
            best_value_ = cur.value();
            best_units_ = cur.unit_of();
        }
        if (first == order_.size() || best_value_ >= ceiling_ - kEps) return;
        if (cur.value() + detail::clique_cover_bound(adj_, gains) <= best_value_ + kEps) return;
        if (capacity_bound(gains) <= best_value_ + kEps) return;

        int s = order_[first];
        detail::IncrementalAssignment with = cur;
        with.add(s);
        chosen_.push_back(s);
        std::vector<int> newly;
        for (int u : g_.neighbors(s))
            if (!blocked_[at(u)]) {
                blocked_[at(u)] = 1;
                newly.push_back(u);
            }
        blocked_[at(s)] = 1;
        dfs(first + 1, with);
        chosen_.pop_back();
        for (int u : newly) blocked_[at(u)] = 0;
        // Exclusion: s stays blocked for the rest of this subtree.
        if (best_value_ < ceiling_ - kEps) dfs(first + 1, cur);
        blocked_[at(s)] = 0;
    }

    // Conflicts relaxed to a greedy clique cover of the open seats, capacities
    // kept: each clique offers one seat at its members' best weight per unit,
    // and the chosen seats compete with the cliques for headcount.
    double capacity_bound(const std::vector<double>& gains) const {
        std::vector<std::vector<double>> rows;
        for (int s : chosen_) rows.push_back(inst_.weight[at(s)]);
        std::vector<int> clique_of(g_.node_count(), -1);
        std::vector<std::vector<int>> members;
        for (int v : order_) {
            if (gains[at(v)] <= 0.0) continue;
            const auto& nv = adj_[at(v)];
            int chosen = -1;
            for (int u : nv) {
                int c = clique_of[at(u)];
                if (c < 0 || c == chosen) continue;
                if (std::all_of(members[at(c)].begin(), members[at(c)].end(),
                                [&](int m) { return std::binary_search(nv.begin(), nv.end(), m); })) {
                    chosen = c;
                    break;
                }
            }
            if (chosen < 0) {
                chosen = static_cast<int>(members.size());
                members.emplace_back();
                rows.emplace_back(inst_.capacity.size(), 0.0);
            }
            members[at(chosen)].push_back(v);
            clique_of[at(v)] = chosen;
            auto& row = rows[chosen_.size() + at(chosen)];
            for (std::size_t j = 0; j < row.size(); ++j) row[j] = std::max(row[j], inst_.weight[at(v)][j]);
        }
        detail::IncrementalAssignment relaxed(&rows, inst_.capacity);
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) relaxed.add(i);
        return relaxed.value();
    }

    const ConstraintGraph& g_;
    const PreserveInstance& inst_;
    std::vector<int> order_;
    std::vector<int> chosen_;
    std::vector<std::vector<int>> adj_;
    std::vector<char> blocked_;
    double best_value_ = 0.0;
    double ceiling_ = std::numeric_limits<double>::infinity();
    std::vector<int> best_units_;
};

// One Lagrangian relaxation of the capacity rows. For multipliers
// lambda_j >= 0, every feasible plan is worth at most
//   sum_j lambda_j * cap_j + sum over components of MWIS(max_j (w(s,j) - lambda_j)^+),
// since each seat in unit j contributes w(s,j) - lambda_j plus lambda_j of
// that unit's headcount. The maximizing seats, made maximal and assigned
// exactly, also give a feasible plan.
struct LagrangeProbe {
    double bound = 0.0;
    detail::IncrementalAssignment plan;
};

LagrangeProbe lagrange_probe(const ConstraintGraph& g, const std::vector<std::vector<int>>& comps,
                             const PreserveInstance& inst, const std::vector<int>& by_weight,
                             const std::vector<double>& lambda) {
    const std::size_t J = inst.capacity.size();
    double bound = 0.0;
    for (std::size_t j = 0; j < J; ++j)
        if (inst.capacity[j] > 0) bound += lambda[j] * static_cast<double>(inst.capacity[j]);

    std::vector<char> taken(g.node_count(), 0);
    for (const auto& nodes : comps) {
        std::vector<int> live;
        std::vector<double> w;
        for (int s : nodes) {
            double best = 0.0;
            for (std::size_t j = 0; j < J; ++j)
                if (inst.capacity[j] > 0) best = std::max(best, inst.weight[at(s)][j] - lambda[j]);
            if (best <= kEps) continue;
            live.push_back(s);
            w.push_back(best);
        }
        if (live.empty()) continue;
        auto result = detail::max_weight_independent_set(local_adjacency(g, live), w);
        for (int v : result.nodes) taken[at(live[at(v)])] = 1;
        bound += result.value;
    }

    std::vector<int> seats;
    for (int s : by_weight) {
        if (!taken[at(s)] &&
            std::any_of(g.neighbors(s).begin(), g.neighbors(s).end(), [&](int u) { return taken[at(u)] != 0; }))
            continue;
        taken[at(s)] = 1;
        seats.push_back(s);
    }
    LagrangeProbe probe{bound, detail::IncrementalAssignment(&inst.weight, inst.capacity)};
    for (int s : seats) probe.plan.add(s);
    return probe;
}

}  // namespace

AllocationPlan solve_exact_preserve(const ConstraintGraph& g, const std::vector<BusinessUnit>& units,
                                    const AllocationPlan& prior, double penalty_c, int component_cap) {
    validate(units);
    if (!(std::isfinite(penalty_c) && penalty_c >= 0.0))
        throw Error(ErrorCode::invalid_argument, "penalty must be finite and non-negative");
    validate_prior(g, units, prior);
    auto comps = component_nodes(g);
    check_component_cap(g, comps, component_cap);
    PreserveInstance inst = make_preserve_instance(g, units, prior, penalty_c);

    std::vector<int> by_weight;
    for (int v = 0; v < static_cast<int>(g.node_count()); ++v)
        if (inst.best_weight[at(v)] > 0.0) by_weight.push_back(v);
    std::stable_sort(by_weight.begin(), by_weight.end(),
                     [&](int a, int b) { return inst.best_weight[at(a)] > inst.best_weight[at(b)]; });

    // Multipliers of zero drop the capacity coupling; when that relaxation is
    // assignable at full weight the plan is optimal outright. Otherwise
    // coordinate descent over the weight breakpoints tightens the bound.
    const std::size_t J = inst.capacity.size();
    std::vector<double> lambda(J, 0.0);
    LagrangeProbe best = lagrange_probe(g, comps, inst, by_weight, lambda);
    double bound = best.bound;
    if (best.plan.value() < bound - kEps) {
        std::set<double> levels{0.0};
        for (const auto& row : inst.weight)
            for (double w : row)
                if (w > 0.0) levels.insert(w);
        std::vector<double> steps(levels.begin(), levels.end());
        for (double a : levels)
            for (double b : levels)
                if (a > b) steps.push_back(a - b);
        std::sort(steps.begin(), steps.end());
        steps.erase(std::unique(steps.begin(), steps.end(), [](double a, double b) { return b - a <= kEps; }),
                    steps.end());

        // A move sets every unit of a group to one breakpoint. Single-unit
        // moves alone stall when only joint shifts lower the bound.
        std::vector<std::vector<std::size_t>> groups;
        std::vector<std::size_t> open;
        for (std::size_t j = 0; j < J; ++j)
            if (inst.capacity[j] > 0) open.push_back(j);
        if (open.size() <= 4) {
            for (unsigned mask = 1; mask < (1u << open.size()); ++mask) {
                groups.emplace_back();
                for (std::size_t k = 0; k < open.size(); ++k)
                    if (mask >> k & 1u) groups.back().push_back(open[k]);
            }
        } else {
            for (std::size_t j : open) groups.push_back({j});
            groups.push_back(open);
        }

        for (bool improved = true; improved && best.plan.value() < bound - kEps;) {
            improved = false;
            for (const auto& group : groups) {
                for (double step : steps) {
                    std::vector<double> trial = lambda;
                    bool changed = false;
                    for (std::size_t j : group) {
                        changed = changed || std::abs(trial[j] - step) > kEps;
                        trial[j] = step;
                    }
                    if (!changed) continue;
                    LagrangeProbe probe = lagrange_probe(g, comps, inst, by_weight, trial);
                    if (probe.plan.value() > best.plan.value() + kEps) std::swap(best.plan, probe.plan);
                    if (probe.bound < bound - kEps) {
                        bound = probe.bound;
                        lambda = trial;
                        improved = true;
                    }
                }
            }
        }
    }

    // A gap left here comes from headcounts coupling the components: tabulate
    // each component by unit loads and merge, or search when that is too big.
    std::vector<int> unit_of = best.plan.unit_of();
    if (best.plan.value() < bound - kEps) {
        std::vector<std::vector<int>> adj(g.node_count());
        for (int v = 0; v < static_cast<int>(g.node_count()); ++v) adj[at(v)] = g.neighbors(v);
        if (auto exact = detail::assign_by_profiles(adj, comps, inst.weight, inst.capacity)) {
            unit_of = std::move(*exact);
        } else {
            PreserveSearch search(g, inst);
            search.seed_incumbent(best.plan);
            search.set_ceiling(bound);
            search.run();
            unit_of = search.best_units();
        }
    }
    AllocationPlan plan = plan_from_units(g, unit_of, inst.units, "exact_preserve");
    plan.objective = preserve_objective(plan, prior, penalty_c);
    return plan;
}

// ---------------------------------------------------------------------------
// Brute-force oracle

AllocationPlan brute_force_oracle(const ConstraintGraph& g, const std::vector<BusinessUnit>& units,
                                  const std::optional<AllocationPlan>& prior, double penalty_c) {
    const int n = static_cast<int>(g.node_count());
    if (static_cast<std::size_t>(n) > kOracleMaxNodes)
        throw Error(ErrorCode::size, "brute-force oracle handles at most 20 nodes");
    validate(units);
    if (!(std::isfinite(penalty_c) && penalty_c >= 0.0))
        throw Error(ErrorCode::invalid_argument, "penalty must be finite and non-negative");
    AllocationPlan no_prior;
    const AllocationPlan& base = prior ? *prior : no_prior;
    validate_prior(g, units, base);
    auto eff = effective_units(g, units);
    const int J = static_cast<int>(eff.size());

    // Seats with identical weight rows are interchangeable: one class per
    // prior unit plus a class for seats outside the prior plan.
    std::vector<int> prior_units_in_use;
    std::vector<int> seat_class(at(n), -1);
    {
        std::map<int, int> class_of_unit;
        for (const auto& [ws, unit] : base.assignments) {
            int j = static_cast<int>(std::find_if(eff.begin(), eff.end(), [&](const BusinessUnit& u) { return u.id == unit; }) - eff.begin());
            class_of_unit.emplace(j, 0);
        }
        for (auto& [j, c] : class_of_unit) {
            c = static_cast<int>(prior_units_in_use.size());
            prior_units_in_use.push_back(j);
        }
        for (const auto& [ws, unit] : base.assignments) {
            int j = static_cast<int>(std::find_if(eff.begin(), eff.end(), [&](const BusinessUnit& u) { return u.id == unit; }) - eff.begin());
            seat_class[at(*g.index_of(ws))] = class_of_unit.at(j);
        }
    }
    const int free_class = static_cast<int>(prior_units_in_use.size());
    const int classes = free_class + 1;
    for (auto& c : seat_class)
        if (c < 0) c = free_class;

    auto class_weight = [&](int c, int j) {
        if (c == free_class) return 1.0;
        if (prior_units_in_use[at(c)] == j) return 1.0 + penalty_c;
        bool j_in_prior = std::find(prior_units_in_use.begin(), prior_units_in_use.end(), j) != prior_units_in_use.end();
        return j_in_prior ? 1.0 - penalty_c : 1.0;
    };

    std::vector<int> class_total(at(classes), 0);
    for (int c : seat_class) ++class_total[at(c)];
    std::vector<long long> stride(at(classes), 1);
    long long states = 1;
    for (int c = 0; c < classes; ++c) {
        stride[at(c)] = states;
        states *= class_total[at(c)] + 1;
    }
    auto decode = [&](long long code) {
        std::vector<int> counts(at(classes));
        for (int c = 0; c < classes; ++c) counts[at(c)] = static_cast<int>((code / stride[at(c)]) % (class_total[at(c)] + 1));
        return counts;
    };

    // best[j][code]: best value from units j.. with class counts `code`
    // still unplaced, trying every per-class split into unit j.
    const double kUnset = -1.0;
    std::vector<std::vector<double>> best(at(J + 1), std::vector<double>(static_cast<std::size_t>(states), kUnset));
    std::vector<std::vector<long long>> choice(at(J), std::vector<long long>(static_cast<std::size_t>(states), 0));
    std::fill(best[at(J)].begin(), best[at(J)].end(), 0.0);
    std::function<double(int, long long)> value_of = [&](int j, long long code) -> double {
        double& memo = best[at(j)][static_cast<std::size_t>(code)];
        if (memo != kUnset) return memo;
        std::vector<int> rem = decode(code);
        long long cap = eff[at(j)].headcount;
        double top = -1.0;
        long long top_take = 0;
        std::function<void(int, long long, double, long long)> enumerate = [&](int c, long long used, double gained,
                                                                                 long long take_code) {
            if (c == classes) {
                double v = gained + value_of(j + 1, code - take_code);
                if (v > top) {
                    top = v;
                    top_take = take_code;
                }
                return;
            }
            for (int y = 0; y <= rem[at(c)] && used + y <= cap; ++y)
                enumerate(c + 1, used + y, gained + y * class_weight(c, j), take_code + y * stride[at(c)]);
        };
        enumerate(0, 0, 0.0, 0);
        choice[at(j)][static_cast<std::size_t>(code)] = top_take;
        memo = top;
        return top;
    };

    // Every independent set, in include-last order.
    std::vector<unsigned> neighbor_mask(at(n), 0);
    for (const auto& e : g.edges()) {
        neighbor_mask[at(e.u)] |= 1u << e.v;
        neighbor_mask[at(e.v)] |= 1u << e.u;
    }
    double best_value = -1.0;
    unsigned best_set = 0;
    long long best_code = 0;
    std::function<void(int, unsigned, unsigned, long long)> walk = [&](int v, unsigned set, unsigned blocked,
                                                                        long long code) {
        if (v == n) {
            double val = value_of(0, code);
            if (val > best_value) {
                best_value = val;
                best_set = set;
                best_code = code;
            }
            return;
        }
        walk(v + 1, set, blocked, code);
        if (!(blocked & (1u << v)))
            walk(v + 1, set | (1u << v), blocked | neighbor_mask[at(v)], code + stride[at(seat_class[at(v)])]);
    };
    walk(0, 0u, 0u, 0);

    // Rebuild a concrete assignment from the per-unit class splits.
    std::vector<std::vector<int>> pool(at(classes));
    for (int v = 0; v < n; ++v)
        if (best_set & (1u << v)) pool[at(seat_class[at(v)])].push_back(v);
    std::vector<int> unit_of(at(n), -1);
    long long code = best_code;
    for (int j = 0; j < J; ++j) {
        value_of(j, code);
        long long take_code = choice[at(j)][static_cast<std::size_t>(code)];
        std::vector<int> take = decode(take_code);
        for (int c = 0; c < classes; ++c)
            for (int k = 0; k < take[at(c)]; ++k) {
                unit_of[at(pool[at(c)].front())] = j;
                pool[at(c)].erase(pool[at(c)].begin());
            }
        code -= take_code;
    }
    AllocationPlan plan = plan_from_units(g, unit_of, eff, "oracle");
    plan.objective = preserve_objective(plan, base, penalty_c);
    return plan;
}

// ---------------------------------------------------------------------------
// Checks

PlanAudit audit(const ConstraintGraph& g, const std::vector<BusinessUnit>& units, const AllocationPlan& plan) {
    PlanAudit a;
    auto eff = effective_units(g, units);
    if (units.empty()) eff.front().headcount = std::numeric_limits<long long>::max();
    std::map<std::string, long long> load;
    for (const auto& [ws, unit] : plan.assignments) {
        bool known_unit = std::any_of(eff.begin(), eff.end(), [&](const BusinessUnit& u) { return u.id == unit; });
        if (!g.index_of(ws) || !known_unit) ++a.unknown_references;
        ++load[unit];
    }
    for (const auto& u : eff)
        if (load[u.id] > u.headcount) ++a.capacity_violations;
    for (const auto& e : g.edges())
        if (plan.assignments.contains(g.id(e.u)) && plan.assignments.contains(g.id(e.v))) ++a.conflict_violations;
    std::set<std::string> seen;
    for (const auto& ws : plan.unallocated)
        if (plan.assignments.contains(ws) || !g.index_of(ws) || !seen.insert(ws).second) ++a.unallocated_mismatch;
    if (seen.size() + plan.assignments.size() != g.node_count()) ++a.unallocated_mismatch;
    return a;
}

bool is_maximal(const ConstraintGraph& g, const AllocationPlan& plan) {
    for (int v = 0; v < static_cast<int>(g.node_count()); ++v) {
        if (plan.assignments.contains(g.id(v))) continue;
        bool covered = std::any_of(g.neighbors(v).begin(), g.neighbors(v).end(),
                                   [&](int u) { return plan.assignments.contains(g.id(u)); });
        if (!covered) return false;
    }
    return true;
}

}  // namespace seatplan
