#include "profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>

#include "mwis.hpp"

namespace seatplan::detail {

namespace {

constexpr double kNone = -std::numeric_limits<double>::infinity();

std::size_t at(int i) { return static_cast<std::size_t>(i); }

// One way to take a seat: into tracked load dimension `dim`, or (dim < 0)
// into the best unit whose headcount cannot bind.
struct Option {
    int dim;
    int unit;
    double weight;
};

// Load vectors over the tracked units, flattened with mixed-radix strides.
struct LoadGrid {
    std::vector<int> limit;
    std::vector<std::size_t> stride;
    std::size_t cells = 1;

    explicit LoadGrid(std::vector<int> lim) : limit(std::move(lim)) {
        for (int l : limit) {
            stride.push_back(cells);
            cells *= static_cast<std::size_t>(l) + 1;
        }
    }
    int coord(std::size_t cell, std::size_t dim) const {
        return static_cast<int>(cell / stride[dim] % (static_cast<std::size_t>(limit[dim]) + 1));
    }
};

struct ComponentTable {
    std::vector<int> seats;  // local -> global
    std::vector<int> order;  // sweep order over local seats
    LoadGrid grid{{}};
    std::vector<double> best;  // per load cell
    struct Layer {
        std::vector<std::uint32_t> parent;  // per (state, cell): state in the previous layer
        std::vector<std::int8_t> choice;    // option index, -1 for skip
    };
    std::vector<Layer> layers;
};

// Frontier sweep as in the independent-set DP, with a row of load cells per
// frontier state instead of a single value.
std::optional<ComponentTable> sweep_component(const std::vector<std::vector<int>>& adj, std::vector<int> seats,
                                              const std::vector<std::vector<Option>>& options, std::vector<int> limit,
                                              std::size_t budget) {
    const int n = static_cast<int>(seats.size());
    ComponentTable t;
    t.seats = std::move(seats);
    t.grid = LoadGrid(std::move(limit));
    t.order = sweep_order(adj);
    const LoadGrid& grid = t.grid;
    const std::size_t cells = grid.cells;
    const std::size_t dims = grid.limit.size();

    std::vector<int> pos(at(n)), last(at(n));
    for (int i = 0; i < n; ++i) pos[at(t.order[at(i)])] = i;
    std::vector<int> width_delta(at(n) + 1, 0);
    for (int v = 0; v < n; ++v) {
        int l = pos[at(v)];
        for (int u : adj[at(v)]) l = std::max(l, pos[at(u)]);
        last[at(v)] = l;
        ++width_delta[at(pos[at(v)])];
        --width_delta[at(l)];
    }
    for (int i = 0, live = 0; i < n; ++i)
        if ((live += width_delta[at(i)]) > 64) return std::nullopt;

    // room[dim][cell]: the cell can take one more seat along dim.
    std::vector<std::vector<char>> room(dims, std::vector<char>(cells));
    for (std::size_t d = 0; d < dims; ++d)
        for (std::size_t c = 0; c < cells; ++c) room[d][c] = grid.coord(c, d) < grid.limit[d];

    std::vector<std::uint64_t> keys{0};
    std::vector<double> vals(cells, kNone);
    vals[0] = 0.0;
    std::vector<int> slot(at(n), -1);
    std::uint64_t free_slots = ~std::uint64_t{0};
    std::size_t total = 0;
    std::unordered_map<std::uint64_t, std::uint32_t> index;

    for (int i = 0; i < n; ++i) {
        const int v = t.order[at(i)];
        const int sv = __builtin_ctzll(free_slots);
        free_slots &= free_slots - 1;
        slot[at(v)] = sv;
        std::uint64_t blocking = 0, forget = 0;
        for (int u : adj[at(v)]) {
            if (pos[at(u)] >= i) continue;
            blocking |= std::uint64_t{1} << slot[at(u)];
            if (last[at(u)] == i) forget |= std::uint64_t{1} << slot[at(u)];
        }
        if (last[at(v)] == i) forget |= std::uint64_t{1} << sv;

        ComponentTable::Layer layer;
        std::vector<std::uint64_t> next_keys;
        std::vector<double> next_vals;
        index.clear();
        auto row_of = [&](std::uint64_t key) {
            key &= ~forget;
            auto [it, fresh] = index.emplace(key, static_cast<std::uint32_t>(next_keys.size()));
            if (fresh) {
                next_keys.push_back(key);
                next_vals.resize(next_vals.size() + cells, kNone);
                layer.parent.resize(layer.parent.size() + cells, 0);
                layer.choice.resize(layer.choice.size() + cells, -1);
            }
            return static_cast<std::size_t>(it->second) * cells;
        };
        auto offer = [&](std::size_t to, double value, std::uint32_t parent, std::int8_t choice) {
            if (value > next_vals[to]) {
                next_vals[to] = value;
                layer.parent[to] = parent;
                layer.choice[to] = choice;
            }
        };

        for (std::size_t k = 0; k < keys.size(); ++k) {
            const std::size_t from = k * cells;
            const auto parent = static_cast<std::uint32_t>(k);
            std::size_t to = row_of(keys[k]);
            for (std::size_t c = 0; c < cells; ++c)
                if (vals[from + c] != kNone) offer(to + c, vals[from + c], parent, -1);
            if (keys[k] & blocking) continue;
            const auto& opts = options[at(v)];
            for (std::size_t o = 0; o < opts.size(); ++o) {
                to = row_of(keys[k] | (std::uint64_t{1} << sv));
                const auto choice = static_cast<std::int8_t>(o);
                if (opts[o].dim < 0) {
                    for (std::size_t c = 0; c < cells; ++c)
                        if (vals[from + c] != kNone) offer(to + c, vals[from + c] + opts[o].weight, parent, choice);
                } else {
                    const auto d = static_cast<std::size_t>(opts[o].dim);
                    for (std::size_t c = 0; c < cells; ++c)
                        if (vals[from + c] != kNone && room[d][c])
                            offer(to + c + grid.stride[d], vals[from + c] + opts[o].weight, parent, choice);
                }
            }
        }
        total += next_vals.size();
        if (total > budget) return std::nullopt;
        free_slots |= forget;
        keys = std::move(next_keys);
        vals = std::move(next_vals);
        t.layers.push_back(std::move(layer));
    }
    // Every vertex has left the frontier, so a single empty state remains.
    t.best = std::move(vals);
    return t;
}

// Walks the sweep back from the given load cell, writing units of taken seats.
void reconstruct(const ComponentTable& t, const std::vector<std::vector<Option>>& options, std::size_t cell,
                 std::vector<int>& unit_of) {
    const std::size_t cells = t.grid.cells;
    std::size_t state = 0;
    for (std::size_t i = t.layers.size(); i-- > 0;) {
        const auto& layer = t.layers[i];
        const std::size_t entry = state * cells + cell;
        const int choice = layer.choice[entry];
        state = layer.parent[entry];
        if (choice < 0) continue;
        const int v = t.order[i];
        const Option& o = options[at(v)][at(choice)];
        unit_of[at(t.seats[at(v)])] = o.unit;
        if (o.dim >= 0) cell -= t.grid.stride[at(o.dim)];
    }
}

}  // namespace

std::optional<std::vector<int>> assign_by_profiles(const std::vector<std::vector<int>>& adj,
                                                   const std::vector<std::vector<int>>& components,
                                                   const std::vector<std::vector<double>>& weight,
                                                   const std::vector<long long>& capacity,
                                                   const ProfileLimits& limits) {
    const std::size_t seats = adj.size();
    const std::size_t J = capacity.size();
    std::vector<int> unit_of(seats, -1);

    // Live seats have some positive weight in a unit with headcount.
    auto usable = [&](std::size_t s, std::size_t j) { return capacity[j] > 0 && weight[s][j] > 0.0; };
    std::vector<char> live(seats, 0);
    for (std::size_t s = 0; s < seats; ++s)
        for (std::size_t j = 0; j < J; ++j) live[s] = live[s] || usable(s, j);

    struct Piece {
        std::vector<int> seats;
        std::vector<std::vector<int>> adj;
        long long alpha = 0;
    };
    std::vector<Piece> pieces;
    long long alpha_total = 0;
    std::vector<int> local(seats, -1);
    for (const auto& comp : components) {
        Piece p;
        for (int s : comp)
            if (live[at(s)]) {
                local[at(s)] = static_cast<int>(p.seats.size());
                p.seats.push_back(s);
            }
        if (p.seats.empty()) continue;
        p.adj.resize(p.seats.size());
        for (std::size_t i = 0; i < p.seats.size(); ++i)
            for (int u : adj[at(p.seats[i])])
                if (live[at(u)]) p.adj[i].push_back(local[at(u)]);
        p.alpha = std::llround(max_weight_independent_set(p.adj, std::vector<double>(p.seats.size(), 1.0)).value);
        alpha_total += p.alpha;
        pieces.push_back(std::move(p));
    }

    // Only headcounts below the independence number can bind.
    std::vector<int> tracked;
    std::vector<int> dim_of(J, -1);
    for (std::size_t j = 0; j < J; ++j)
        if (capacity[j] > 0 && capacity[j] < alpha_total) {
            dim_of[j] = static_cast<int>(tracked.size());
            tracked.push_back(static_cast<int>(j));
        }
    std::vector<std::vector<Option>> options(seats);
    for (std::size_t s = 0; s < seats; ++s) {
        Option loose{-1, -1, 0.0};
        for (std::size_t j = 0; j < J; ++j) {
            if (!usable(s, j)) continue;
            if (dim_of[j] >= 0)
                options[s].push_back({dim_of[j], static_cast<int>(j), weight[s][j]});
            else if (weight[s][j] > loose.weight)
                loose = {-1, static_cast<int>(j), weight[s][j]};
        }
        if (loose.unit >= 0) options[s].push_back(loose);
        if (options[s].size() > 127) return std::nullopt;
    }

    std::vector<int> global_limit;
    for (int j : tracked) global_limit.push_back(static_cast<int>(std::min<long long>(capacity[at(j)], alpha_total)));
    const LoadGrid global(global_limit);
    const std::size_t dims = tracked.size();
    if (global.cells * pieces.size() > limits.max_merge_entries) return std::nullopt;

    std::vector<ComponentTable> tables;
    std::vector<std::vector<std::vector<Option>>> local_options;
    std::size_t work = 0;
    for (const auto& p : pieces) {
        std::vector<int> limit;
        for (int j : tracked) limit.push_back(static_cast<int>(std::min<long long>(capacity[at(j)], p.alpha)));
        std::vector<std::vector<Option>> opts;
        for (int s : p.seats) opts.push_back(options[at(s)]);
        auto table = sweep_component(p.adj, p.seats, opts, limit, limits.max_component_entries);
        if (!table) return std::nullopt;
        work += global.cells * static_cast<std::size_t>(std::count_if(table->best.begin(), table->best.end(),
                                                                         [](double x) { return x != kNone; }));
        if (work > limits.max_merge_work) return std::nullopt;
        tables.push_back(std::move(*table));
        local_options.push_back(std::move(opts));
    }

    // Max-plus merge over the global load grid; choice[k][cell] is the load
    // cell of component k on the best path into `cell`.
    std::vector<double> cur(global.cells, kNone);
    cur[0] = 0.0;
    std::vector<std::vector<std::uint32_t>> choice(tables.size());
    std::vector<int> gcoord(dims);
    for (std::size_t k = 0; k < tables.size(); ++k) {
        const ComponentTable& t = tables[k];
        struct Entry {
            std::size_t cell;
            std::size_t offset;  // in global strides
            std::vector<int> coord;
            double value;
        };
        std::vector<Entry> entries;
        for (std::size_t c = 0; c < t.grid.cells; ++c) {
            if (t.best[c] == kNone) continue;
            Entry e{c, 0, std::vector<int>(dims), t.best[c]};
            for (std::size_t d = 0; d < dims; ++d) {
                e.coord[d] = t.grid.coord(c, d);
                e.offset += static_cast<std::size_t>(e.coord[d]) * global.stride[d];
            }
            entries.push_back(std::move(e));
        }
        std::vector<double> next(global.cells, kNone);
        choice[k].assign(global.cells, 0);
        for (std::size_t g = 0; g < global.cells; ++g) {
            if (cur[g] == kNone) continue;
            for (std::size_t d = 0; d < dims; ++d) gcoord[d] = global.coord(g, d);
            for (const Entry& e : entries) {
                bool fits = true;
                for (std::size_t d = 0; d < dims && fits; ++d) fits = gcoord[d] + e.coord[d] <= global.limit[d];
                if (!fits) continue;
                const std::size_t to = g + e.offset;
                if (cur[g] + e.value > next[to]) {
                    next[to] = cur[g] + e.value;
                    choice[k][to] = static_cast<std::uint32_t>(e.cell);
                }
            }
        }
        cur = std::move(next);
    }

    std::size_t cell = static_cast<std::size_t>(std::max_element(cur.begin(), cur.end()) - cur.begin());
    for (std::size_t k = tables.size(); k-- > 0;) {
        const ComponentTable& t = tables[k];
        const std::size_t c = choice[k][cell];
        reconstruct(t, local_options[k], c, unit_of);
        for (std::size_t d = 0; d < dims; ++d) cell -= static_cast<std::size_t>(t.grid.coord(c, d)) * global.stride[d];
    }
    return unit_of;
}

}  // namespace seatplan::detail
