#include "mwis.hpp"

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <unordered_map>

namespace seatplan::detail {

namespace {

constexpr double kEps = 1e-9;

// Compact graph used at every search node. `orig` maps to caller indices.
struct Sub {
    std::vector<std::vector<int>> adj;
    std::vector<double> w;
    std::vector<int> orig;

    int size() const { return static_cast<int>(w.size()); }
};

Sub induce(const Sub& g, const std::vector<char>& keep) {
    std::vector<int> local(static_cast<std::size_t>(g.size()), -1);
    Sub out;
    for (int v = 0; v < g.size(); ++v) {
        if (!keep[static_cast<std::size_t>(v)]) continue;
        local[static_cast<std::size_t>(v)] = out.size();
        out.w.push_back(g.w[static_cast<std::size_t>(v)]);
        out.orig.push_back(g.orig[static_cast<std::size_t>(v)]);
    }
    out.adj.resize(out.w.size());
    for (int v = 0; v < g.size(); ++v) {
        int lv = local[static_cast<std::size_t>(v)];
        if (lv < 0) continue;
        for (int u : g.adj[static_cast<std::size_t>(v)]) {
            int lu = local[static_cast<std::size_t>(u)];
            if (lu >= 0) out.adj[static_cast<std::size_t>(lv)].push_back(lu);
        }
    }
    return out;
}

// Solution expressed in caller indices plus its value in the current
// (possibly folded) weights.
struct Partial {
    std::vector<int> nodes;
    double value = 0.0;
};

double greedy_cover(const Sub& g) {
    const int n = g.size();
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (g.w[static_cast<std::size_t>(a)] != g.w[static_cast<std::size_t>(b)])
            return g.w[static_cast<std::size_t>(a)] > g.w[static_cast<std::size_t>(b)];
        return g.adj[static_cast<std::size_t>(a)].size() < g.adj[static_cast<std::size_t>(b)].size();
    });
    std::vector<int> clique_of(static_cast<std::size_t>(n), -1);
    std::vector<std::vector<int>> members;
    double bound = 0.0;
    for (int v : order) {
        const auto& nv = g.adj[static_cast<std::size_t>(v)];
        int chosen = -1;
        for (int u : nv) {
            int c = clique_of[static_cast<std::size_t>(u)];
            if (c < 0 || c == chosen) continue;
            bool all = std::all_of(members[static_cast<std::size_t>(c)].begin(), members[static_cast<std::size_t>(c)].end(),
                                   [&](int m) { return std::binary_search(nv.begin(), nv.end(), m); });
            if (all) {
                chosen = c;
                break;
            }
        }
        if (chosen < 0) {
            chosen = static_cast<int>(members.size());
            members.emplace_back();
            bound += g.w[static_cast<std::size_t>(v)];  // descending order: first member is the max
        }
        members[static_cast<std::size_t>(chosen)].push_back(v);
        clique_of[static_cast<std::size_t>(v)] = chosen;
    }
    return bound;
}

Partial greedy_solution(const Sub& g) {
    const int n = g.size();
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    auto score = [&](int v) { return g.w[static_cast<std::size_t>(v)] / (1.0 + g.adj[static_cast<std::size_t>(v)].size()); };
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return score(a) > score(b); });
    std::vector<char> blocked(static_cast<std::size_t>(n), 0);
    Partial p;
    for (int v : order) {
        if (blocked[static_cast<std::size_t>(v)]) continue;
        p.nodes.push_back(g.orig[static_cast<std::size_t>(v)]);
        p.value += g.w[static_cast<std::size_t>(v)];
        blocked[static_cast<std::size_t>(v)] = 1;
        for (int u : g.adj[static_cast<std::size_t>(v)]) blocked[static_cast<std::size_t>(u)] = 1;
    }
    return p;
}

// Two-coloring, or empty when an odd cycle exists.
std::vector<int> two_color(const Sub& g) {
    std::vector<int> color(static_cast<std::size_t>(g.size()), -1);
    for (int root = 0; root < g.size(); ++root) {
        if (color[static_cast<std::size_t>(root)] >= 0) continue;
        color[static_cast<std::size_t>(root)] = 0;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int u : g.adj[static_cast<std::size_t>(v)]) {
                if (color[static_cast<std::size_t>(u)] < 0) {
                    color[static_cast<std::size_t>(u)] = 1 - color[static_cast<std::size_t>(v)];
                    q.push(u);
                } else if (color[static_cast<std::size_t>(u)] == color[static_cast<std::size_t>(v)]) {
                    return {};
                }
            }
        }
    }
    return color;
}

// Dinic max-flow used for the bipartite case: source -> left (w), left ->
// right (inf), right -> sink (w). The source side of the min cut gives the
// independent set (left ∩ S) ∪ (right \ S).
class MaxFlow {
public:
    explicit MaxFlow(int n) : head_(static_cast<std::size_t>(n), -1), level_(static_cast<std::size_t>(n)), it_(static_cast<std::size_t>(n)) {}

    void add_edge(int a, int b, double cap) {
        to_.push_back(b); cap_.push_back(cap); next_.push_back(head_[static_cast<std::size_t>(a)]); head_[static_cast<std::size_t>(a)] = static_cast<int>(to_.size()) - 1;
        to_.push_back(a); cap_.push_back(0.0); next_.push_back(head_[static_cast<std::size_t>(b)]); head_[static_cast<std::size_t>(b)] = static_cast<int>(to_.size()) - 1;
    }

    void run(int s, int t) {
        while (bfs(s, t)) {
            for (std::size_t i = 0; i < it_.size(); ++i) it_[i] = head_[i];
            while (dfs(s, t, std::numeric_limits<double>::infinity()) > kFlowEps) {}
        }
    }

    std::vector<char> source_side(int s) const {
        std::vector<char> seen(head_.size(), 0);
        std::queue<int> q;
        q.push(s);
        seen[static_cast<std::size_t>(s)] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int e = head_[static_cast<std::size_t>(v)]; e >= 0; e = next_[static_cast<std::size_t>(e)]) {
                int u = to_[static_cast<std::size_t>(e)];
                if (!seen[static_cast<std::size_t>(u)] && cap_[static_cast<std::size_t>(e)] > kFlowEps) {
                    seen[static_cast<std::size_t>(u)] = 1;
                    q.push(u);
                }
            }
        }
        return seen;
    }

private:
    static constexpr double kFlowEps = 1e-12;

    bool bfs(int s, int t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<int> q;
        level_[static_cast<std::size_t>(s)] = 0;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int e = head_[static_cast<std::size_t>(v)]; e >= 0; e = next_[static_cast<std::size_t>(e)]) {
                int u = to_[static_cast<std::size_t>(e)];
                if (level_[static_cast<std::size_t>(u)] < 0 && cap_[static_cast<std::size_t>(e)] > kFlowEps) {
                    level_[static_cast<std::size_t>(u)] = level_[static_cast<std::size_t>(v)] + 1;
                    q.push(u);
                }
            }
        }
        return level_[static_cast<std::size_t>(t)] >= 0;
    }

    double dfs(int v, int t, double f) {
        if (v == t) return f;
        for (int& e = it_[static_cast<std::size_t>(v)]; e >= 0; e = next_[static_cast<std::size_t>(e)]) {
            int u = to_[static_cast<std::size_t>(e)];
            if (cap_[static_cast<std::size_t>(e)] <= kFlowEps || level_[static_cast<std::size_t>(u)] != level_[static_cast<std::size_t>(v)] + 1) continue;
            double pushed = dfs(u, t, std::min(f, cap_[static_cast<std::size_t>(e)]));
            if (pushed > kFlowEps) {
                cap_[static_cast<std::size_t>(e)] -= pushed;
                cap_[static_cast<std::size_t>(e ^ 1)] += pushed;
                return pushed;
            }
        }
        return 0.0;
    }

    std::vector<int> head_, to_, next_;
    std::vector<double> cap_;
    std::vector<int> level_, it_;
};

Partial solve_bipartite(const Sub& g, const std::vector<int>& color) {
    const int n = g.size();
    const int s = n, t = n + 1;
    MaxFlow flow(n + 2);
    double inf = 1.0;
    for (double w : g.w) inf += w;
    for (int v = 0; v < n; ++v) {
        if (color[static_cast<std::size_t>(v)] == 0) {
            flow.add_edge(s, v, g.w[static_cast<std::size_t>(v)]);
            for (int u : g.adj[static_cast<std::size_t>(v)]) flow.add_edge(v, u, inf);
        } else {
            flow.add_edge(v, t, g.w[static_cast<std::size_t>(v)]);
        }
    }
    flow.run(s, t);
    auto side = flow.source_side(s);
    Partial p;
    for (int v = 0; v < n; ++v) {
        bool in_s = side[static_cast<std::size_t>(v)] != 0;
        if ((color[static_cast<std::size_t>(v)] == 0) == in_s) {
            p.nodes.push_back(g.orig[static_cast<std::size_t>(v)]);
            p.value += g.w[static_cast<std::size_t>(v)];
        }
    }
    return p;
}

struct Fold {
    int leaf;     // caller index
    int partner;  // caller index
};

struct Reduced {
    Sub rest;
    std::vector<int> taken;  // caller indices
    std::vector<Fold> folds;
    double offset = 0.0;     // value already secured by taken nodes and folds
};

// N[v] ⊆ N[u] for adjacent u, v (both lists sorted, alive filter applied).
bool closed_subset(const Sub& g, const std::vector<char>& alive, int v, int u) {
    const auto& nu = g.adj[static_cast<std::size_t>(u)];
    for (int x : g.adj[static_cast<std::size_t>(v)]) {
        if (!alive[static_cast<std::size_t>(x)] || x == u) continue;
        if (!std::binary_search(nu.begin(), nu.end(), x)) return false;
    }
    return true;
}

Reduced reduce(Sub g) {
    const int n = g.size();
    std::vector<char> alive(static_cast<std::size_t>(n), 1);
    std::vector<int> deg(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) deg[static_cast<std::size_t>(v)] = static_cast<int>(g.adj[static_cast<std::size_t>(v)].size());
    Reduced r;

    auto kill = [&](int v) {
        alive[static_cast<std::size_t>(v)] = 0;
        for (int u : g.adj[static_cast<std::size_t>(v)])
            if (alive[static_cast<std::size_t>(u)]) --deg[static_cast<std::size_t>(u)];
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < n; ++v) {
            if (!alive[static_cast<std::size_t>(v)]) continue;
            double wv = g.w[static_cast<std::size_t>(v)];
            if (wv <= 0.0) {
                kill(v);
                changed = true;
                continue;
            }
            if (deg[static_cast<std::size_t>(v)] == 0) {
                r.taken.push_back(g.orig[static_cast<std::size_t>(v)]);
                r.offset += wv;
                kill(v);
                changed = true;
                continue;
            }
            if (deg[static_cast<std::size_t>(v)] == 1) {
                int u = -1;
                for (int x : g.adj[static_cast<std::size_t>(v)])
                    if (alive[static_cast<std::size_t>(x)]) u = x;
                if (wv >= g.w[static_cast<std::size_t>(u)]) {
                    kill(u);  // the leaf dominates its neighbor
                } else {
                    r.folds.push_back({g.orig[static_cast<std::size_t>(v)], g.orig[static_cast<std::size_t>(u)]});
                    r.offset += wv;
                    g.w[static_cast<std::size_t>(u)] -= wv;
                    kill(v);
                }
                changed = true;
                continue;
            }
            // Weighted domination: drop any neighbor u with N[v] ⊆ N[u] and w(u) <= w(v).
            for (int u : g.adj[static_cast<std::size_t>(v)]) {
                if (!alive[static_cast<std::size_t>(u)] || g.w[static_cast<std::size_t>(u)] > wv) continue;
                if (deg[static_cast<std::size_t>(u)] < deg[static_cast<std::size_t>(v)]) continue;
                if (closed_subset(g, alive, v, u)) {
                    kill(u);
                    changed = true;
                }
            }
        }
    }
    r.rest = induce(g, alive);
    return r;
}

std::vector<std::vector<int>> local_components(const Sub& g) {
    std::vector<int> label(static_cast<std::size_t>(g.size()), -1);
    std::vector<std::vector<int>> out;
    for (int root = 0; root < g.size(); ++root) {
        if (label[static_cast<std::size_t>(root)] >= 0) continue;
        out.emplace_back();
        std::queue<int> q;
        q.push(root);
        label[static_cast<std::size_t>(root)] = static_cast<int>(out.size()) - 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            out.back().push_back(v);
            for (int u : g.adj[static_cast<std::size_t>(v)])
                if (label[static_cast<std::size_t>(u)] < 0) {
                    label[static_cast<std::size_t>(u)] = label[static_cast<std::size_t>(root)];
                    q.push(u);
                }
        }
    }
    return out;
}

void unfold(std::vector<int>& nodes, const std::vector<Fold>& folds) {
    std::vector<int> sorted = nodes;
    std::sort(sorted.begin(), sorted.end());
    for (auto it = folds.rbegin(); it != folds.rend(); ++it) {
        if (!std::binary_search(sorted.begin(), sorted.end(), it->partner)) {
            nodes.push_back(it->leaf);
            sorted.insert(std::upper_bound(sorted.begin(), sorted.end(), it->leaf), it->leaf);
        }
    }
}

std::vector<int> bfs_depth(const std::vector<std::vector<int>>& adj, int root) {
    std::vector<int> depth(adj.size(), -1);
    std::queue<int> q;
    q.push(root);
    depth[static_cast<std::size_t>(root)] = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int u : adj[static_cast<std::size_t>(v)])
            if (depth[static_cast<std::size_t>(u)] < 0) {
                depth[static_cast<std::size_t>(u)] = depth[static_cast<std::size_t>(v)] + 1;
                q.push(u);
            }
    }
    return depth;
}

int separator_pivot(const Sub& g) {
    auto d0 = bfs_depth(g.adj, 0);
    int far = static_cast<int>(std::max_element(d0.begin(), d0.end()) - d0.begin());
    auto depth = bfs_depth(g.adj, far);
    int maxd = *std::max_element(depth.begin(), depth.end());
    std::vector<int> layer_size(static_cast<std::size_t>(maxd + 1), 0);
    for (int d : depth) ++layer_size[static_cast<std::size_t>(d)];
    int lo = maxd / 3, hi = std::max(lo, (2 * maxd + 2) / 3);
    int best_layer = lo;
    for (int d = lo; d <= hi; ++d) {
        int mid = maxd / 2;
        auto key = [&](int x) { return std::pair(layer_size[static_cast<std::size_t>(x)], std::abs(x - mid)); };
        if (key(d) < key(best_layer)) best_layer = d;
    }
    int pivot = -1;
    for (int v = 0; v < g.size(); ++v) {
        if (depth[static_cast<std::size_t>(v)] != best_layer) continue;
        if (pivot < 0 || g.adj[static_cast<std::size_t>(v)].size() > g.adj[static_cast<std::size_t>(pivot)].size()) pivot = v;
    }
    return pivot;
}

struct CacheEntry {
    std::vector<int> orig;
    std::vector<double> w;
    bool exact = false;
    double value = 0.0;  // exact optimum, or an upper bound when !exact
    std::vector<int> nodes;
};

// Subproblems recur across separator decisions; entries are keyed by node set
// and (possibly folded) weights. Survives a budget abort, since only finished
// subproblems are stored.
struct Cache {
    std::unordered_map<std::uint64_t, CacheEntry> map;
    std::size_t stored = 0;
    long long nodes = 0;
    long long node_limit = -1;  // negative: unbounded
    static constexpr std::size_t kMaxStored = 20'000'000;
};

struct BudgetExhausted {};

// Best independent set of `g` with value > lb + eps, or nullopt.
std::optional<Partial> search(const Sub& g, double lb, Cache& cache);

std::optional<Partial> solve_connected(const Sub& g, double lb, Cache& cache) {
    if (greedy_cover(g) <= lb + kEps) return std::nullopt;
    auto color = two_color(g);
    if (!color.empty()) {
        Partial p = solve_bipartite(g, color);
        if (p.value > lb + kEps) return p;
        return std::nullopt;
    }

    int pivot = separator_pivot(g);
    std::optional<Partial> best;
    double floor = lb;
    {
        std::vector<char> keep(static_cast<std::size_t>(g.size()), 1);
        keep[static_cast<std::size_t>(pivot)] = 0;
        for (int u : g.adj[static_cast<std::size_t>(pivot)]) keep[static_cast<std::size_t>(u)] = 0;
        double wp = g.w[static_cast<std::size_t>(pivot)];
        auto sub = search(induce(g, keep), floor - wp, cache);
        if (sub) {
            sub->nodes.push_back(g.orig[static_cast<std::size_t>(pivot)]);
            sub->value += wp;
            floor = sub->value;
            best = std::move(sub);
        }
    }
    {
        std::vector<char> keep(static_cast<std::size_t>(g.size()), 1);
        keep[static_cast<std::size_t>(pivot)] = 0;
        auto sub = search(induce(g, keep), floor, cache);
        if (sub) best = std::move(sub);
    }
    return best;
}

std::uint64_t key_of(const Sub& g) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](std::uint64_t x) {
        h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    for (int v = 0; v < g.size(); ++v) {
        mix(static_cast<std::uint64_t>(g.orig[static_cast<std::size_t>(v)]));
        std::uint64_t bits;
        std::memcpy(&bits, &g.w[static_cast<std::size_t>(v)], sizeof bits);
        mix(bits);
    }
    return h;
}

std::optional<Partial> search_uncached(const Sub& g, double lb, Cache& cache);

std::optional<Partial> search(const Sub& g, double lb, Cache& cache) {
    if (cache.node_limit >= 0 && ++cache.nodes > cache.node_limit) throw BudgetExhausted{};
    if (g.size() < 8) return search_uncached(g, lb, cache);
    std::uint64_t key = key_of(g);
    auto it = cache.map.find(key);
    if (it != cache.map.end() && it->second.orig == g.orig && it->second.w == g.w) {
        const CacheEntry& e = it->second;
        if (e.exact) {
            if (e.value > lb + kEps) return Partial{e.nodes, e.value};
            return std::nullopt;
        }
        if (e.value <= lb) return std::nullopt;
    }
    auto result = search_uncached(g, lb, cache);
    if (cache.stored < Cache::kMaxStored) {
        CacheEntry e{g.orig, g.w, result.has_value(), result ? result->value : lb, result ? result->nodes : std::vector<int>{}};
        cache.stored += e.orig.size() + e.nodes.size();
        cache.map[key] = std::move(e);
    }
    return result;
}

std::optional<Partial> search_uncached(const Sub& g, double lb, Cache& cache) {
    if (g.size() == 0) {
        if (0.0 > lb + kEps) return Partial{};
        return std::nullopt;
    }
    Reduced red = reduce(g);
    const Sub& rest = red.rest;
    double need = lb - red.offset;

    Partial total;
    total.nodes = red.taken;
    total.value = red.offset;

    if (rest.size() > 0) {
        auto comps = local_components(rest);
        if (comps.size() == 1) {
            auto sub = solve_connected(rest, need, cache);
            if (!sub) return std::nullopt;
            total.nodes.insert(total.nodes.end(), sub->nodes.begin(), sub->nodes.end());
            total.value += sub->value;
        } else {
            std::vector<Sub> parts;
            std::vector<double> ub;
            double ub_sum = 0.0;
            for (const auto& c : comps) {
                std::vector<char> keep(static_cast<std::size_t>(rest.size()), 0);
                for (int v : c) keep[static_cast<std::size_t>(v)] = 1;
                parts.push_back(induce(rest, keep));
                ub.push_back(greedy_cover(parts.back()));
                ub_sum += ub.back();
            }
            if (ub_sum <= need + kEps) return std::nullopt;
            double solved = 0.0, ub_left = ub_sum;
            for (std::size_t i = 0; i < parts.size(); ++i) {
                ub_left -= ub[i];
                Partial greedy = greedy_solution(parts[i]);
                double required = need - solved - ub_left;
                double floor = std::max(required, greedy.value - 2 * kEps);
                auto sub = search(parts[i], floor, cache);
                if (!sub) {
                    if (required > greedy.value - 2 * kEps) return std::nullopt;
                    sub = std::move(greedy);
                }
                solved += sub->value;
                total.nodes.insert(total.nodes.end(), sub->nodes.begin(), sub->nodes.end());
                total.value += sub->value;
            }
        }
    }
    if (total.value <= lb + kEps) return std::nullopt;
    unfold(total.nodes, red.folds);
    return total;
}

// Exact dynamic program along `sweep_order`. A state is the chosen subset of
// the current frontier, packed into 64 slots; each state keeps its best value
// and a back pointer for reconstruction. Returns nullopt when the frontier or
// the state count exceeds the limits.
std::optional<Partial> frontier_dp(const Sub& g, int max_width, std::size_t max_states) {
    const int n = g.size();
    if (n == 0) return Partial{};
    max_width = std::min(max_width, 64);
    auto order = sweep_order(g.adj);
    std::vector<int> pos(static_cast<std::size_t>(n)), last(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
    std::vector<int> width_delta(static_cast<std::size_t>(n) + 1, 0);
    for (int v = 0; v < n; ++v) {
        int l = pos[static_cast<std::size_t>(v)];
        for (int u : g.adj[static_cast<std::size_t>(v)]) l = std::max(l, pos[static_cast<std::size_t>(u)]);
        last[static_cast<std::size_t>(v)] = l;
        ++width_delta[static_cast<std::size_t>(pos[static_cast<std::size_t>(v)])];
        --width_delta[static_cast<std::size_t>(l)];
    }
    for (int i = 0, live = 0; i < n; ++i) {
        live += width_delta[static_cast<std::size_t>(i)];
        if (live > max_width) return std::nullopt;
    }

    struct Layer {
        std::vector<std::uint32_t> parent;  // index into the previous layer
        std::vector<char> took;
    };
    std::vector<Layer> layers;
    layers.reserve(static_cast<std::size_t>(n));
    std::vector<std::uint64_t> keys{0};
    std::vector<double> values{0.0};
    std::vector<int> slot(static_cast<std::size_t>(n), -1);
    std::uint64_t free_slots = ~std::uint64_t{0};
    std::size_t total = 0;
    std::unordered_map<std::uint64_t, std::uint32_t> index;

    for (int i = 0; i < n; ++i) {
        const int v = order[static_cast<std::size_t>(i)];
        const int sv = __builtin_ctzll(free_slots);
        free_slots &= free_slots - 1;
        slot[static_cast<std::size_t>(v)] = sv;
        std::uint64_t blocking = 0, forget = 0;
        for (int u : g.adj[static_cast<std::size_t>(v)]) {
            if (pos[static_cast<std::size_t>(u)] >= i) continue;
            blocking |= std::uint64_t{1} << slot[static_cast<std::size_t>(u)];
            if (last[static_cast<std::size_t>(u)] == i) forget |= std::uint64_t{1} << slot[static_cast<std::size_t>(u)];
        }
        if (last[static_cast<std::size_t>(v)] == i) forget |= std::uint64_t{1} << sv;
        const double wv = g.w[static_cast<std::size_t>(v)];

        Layer layer;
        std::vector<std::uint64_t> next_keys;
        std::vector<double> next_values;
        index.clear();
        index.reserve(keys.size() * 2);
        auto offer = [&](std::uint64_t key, double value, std::uint32_t parent, char took) {
            key &= ~forget;
            auto [it, fresh] = index.emplace(key, static_cast<std::uint32_t>(next_keys.size()));
            if (fresh) {
                next_keys.push_back(key);
                next_values.push_back(value);
                layer.parent.push_back(parent);
                layer.took.push_back(took);
            } else if (value > next_values[it->second]) {
                next_values[it->second] = value;
                layer.parent[it->second] = parent;
                layer.took[it->second] = took;
            }
        };
        for (std::size_t k = 0; k < keys.size(); ++k) {
            offer(keys[k], values[k], static_cast<std::uint32_t>(k), 0);
            if (wv > 0.0 && (keys[k] & blocking) == 0)
                offer(keys[k] | (std::uint64_t{1} << sv), values[k] + wv, static_cast<std::uint32_t>(k), 1);
        }
        total += next_keys.size();
        if (total > max_states) return std::nullopt;
        free_slots |= forget;
        keys = std::move(next_keys);
        values = std::move(next_values);
        layers.push_back(std::move(layer));
    }

    std::size_t at_state = static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
    Partial p;
    p.value = values[at_state];
    for (int i = n - 1; i >= 0; --i) {
        const Layer& layer = layers[static_cast<std::size_t>(i)];
        if (layer.took[at_state]) p.nodes.push_back(g.orig[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]);
        at_state = layer.parent[at_state];
    }
    return p;
}

}  // namespace

double clique_cover_bound(const std::vector<std::vector<int>>& adj, const std::vector<double>& weight) {
    Sub g{adj, weight, {}};
    g.orig.resize(weight.size());
    std::iota(g.orig.begin(), g.orig.end(), 0);
    for (auto& w : g.w) w = std::max(w, 0.0);
    return greedy_cover(g);
}

std::vector<int> sweep_order(const std::vector<std::vector<int>>& adj) {
    const int n = static_cast<int>(adj.size());
    auto d0 = bfs_depth(adj, 0);
    int start = static_cast<int>(std::max_element(d0.begin(), d0.end()) - d0.begin());
    auto depth = bfs_depth(adj, start);
    std::vector<int> open(static_cast<std::size_t>(n));  // unprocessed neighbors
    for (int v = 0; v < n; ++v) open[static_cast<std::size_t>(v)] = static_cast<int>(adj[static_cast<std::size_t>(v)].size());
    std::vector<char> done(static_cast<std::size_t>(n), 0), reached(static_cast<std::size_t>(n), 0);
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    reached[static_cast<std::size_t>(start)] = 1;
    for (int step = 0; step < n; ++step) {
        int best = -1;
        std::pair<int, int> best_key{0, 0};
        for (int v = 0; v < n; ++v) {
            if (done[static_cast<std::size_t>(v)] || !reached[static_cast<std::size_t>(v)]) continue;
            int growth = open[static_cast<std::size_t>(v)] > 0 ? 1 : 0;
            for (int u : adj[static_cast<std::size_t>(v)])
                if (done[static_cast<std::size_t>(u)] && open[static_cast<std::size_t>(u)] == 1) --growth;
            std::pair<int, int> key{growth, depth[static_cast<std::size_t>(v)]};
            if (best < 0 || key < best_key) {
                best = v;
                best_key = key;
            }
        }
        if (best < 0) {  // next component
            for (int v = 0; v < n && best < 0; ++v)
                if (!done[static_cast<std::size_t>(v)]) best = v;
        }
        done[static_cast<std::size_t>(best)] = 1;
        order.push_back(best);
        for (int u : adj[static_cast<std::size_t>(best)]) {
            --open[static_cast<std::size_t>(u)];
            reached[static_cast<std::size_t>(u)] = 1;
        }
    }
    return order;
}

MwisResult max_weight_independent_set(const std::vector<std::vector<int>>& adj, const std::vector<double>& weight,
                                      const MwisOptions& options) {
    Sub g{adj, weight, {}};
    g.orig.resize(weight.size());
    std::iota(g.orig.begin(), g.orig.end(), 0);
    for (auto& list : g.adj) std::sort(list.begin(), list.end());

    Partial greedy = greedy_solution(g);
    // Strip non-positive picks from the greedy start; they never help.
    Partial start;
    for (int v : greedy.nodes)
        if (weight[static_cast<std::size_t>(v)] > 0.0) {
            start.nodes.push_back(v);
            start.value += weight[static_cast<std::size_t>(v)];
        }
    const double lb = start.value - 2 * kEps;
    Cache cache;
    cache.node_limit = options.probe_nodes;
    std::optional<Partial> found;
    try {
        found = search(g, lb, cache);
    } catch (const BudgetExhausted&) {
        Reduced red = reduce(g);
        if (auto dp = frontier_dp(red.rest, options.dp_max_width, options.dp_max_states)) {
            Partial total{red.taken, red.offset + dp->value};
            total.nodes.insert(total.nodes.end(), dp->nodes.begin(), dp->nodes.end());
            unfold(total.nodes, red.folds);
            if (total.value > lb + kEps) found = std::move(total);
        } else {
            cache.node_limit = -1;
            found = search(g, lb, cache);
        }
    }
    Partial best = found ? std::move(*found) : std::move(start);

    MwisResult out;
    out.nodes = std::move(best.nodes);
    std::sort(out.nodes.begin(), out.nodes.end());
    for (int v : out.nodes) out.value += weight[static_cast<std::size_t>(v)];
    return out;
}

}  // namespace seatplan::detail
