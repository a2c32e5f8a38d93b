#include "seatplan/constraint_graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <unordered_map>

#include "seatplan/error.hpp"
#include "seatplan/natural_order.hpp"
#include "cycles.hpp"

namespace seatplan {

ConstraintGraph::ConstraintGraph(std::vector<std::string> ids, const std::vector<IdEdge>& edges, double d)
    : d_(d), ids_(std::move(ids)) {
    if (!(std::isfinite(d) && d > 0.0)) throw Error(ErrorCode::invalid_argument, "social distance must be positive");
    std::sort(ids_.begin(), ids_.end(), NaturalLess{});
    for (std::size_t i = 1; i < ids_.size(); ++i)
        if (ids_[i] == ids_[i - 1]) throw Error(ErrorCode::duplicate_id, "duplicate node id '" + ids_[i] + "'");

    adj_.assign(ids_.size(), {});
    edges_.reserve(edges.size());
    for (const auto& e : edges) {
        auto a = index_of(e.a), b = index_of(e.b);
        if (!a || !b) throw Error(ErrorCode::reference, "edge references unknown node '" + (a ? e.b : e.a) + "'");
        if (*a == *b) throw Error(ErrorCode::invalid_argument, "self-loop on '" + e.a + "'");
        if (!(e.weight < d)) throw Error(ErrorCode::invalid_argument, "edge weight must be below the social distance");
        edges_.push_back({std::min(*a, *b), std::max(*a, *b), e.weight});
    }
    std::sort(edges_.begin(), edges_.end(), [](const WeightedEdge& x, const WeightedEdge& y) {
        return std::tie(x.u, x.v) < std::tie(y.u, y.v);
    });
    for (std::size_t i = 1; i < edges_.size(); ++i)
        if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v)
            throw Error(ErrorCode::invalid_argument, "duplicate edge " + id(edges_[i].u) + "-" + id(edges_[i].v));
    for (const auto& e : edges_) {
        adj_[static_cast<std::size_t>(e.u)].push_back(e.v);
        adj_[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    for (auto& list : adj_) std::sort(list.begin(), list.end());
}

std::optional<int> ConstraintGraph::index_of(const std::string& id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id, NaturalLess{});
    if (it == ids_.end() || *it != id) return std::nullopt;
    return static_cast<int>(it - ids_.begin());
}

bool ConstraintGraph::adjacent(int a, int b) const {
    const auto& n = neighbors(a);
    return std::binary_search(n.begin(), n.end(), b);
}

ConstraintGraph ConstraintGraph::induced(const std::vector<int>& nodes) const {
    // Increasing index lists keep natural id order, so indices remap monotonically
    // and edges and neighbor lists stay sorted without going through the ids.
    if (std::is_sorted(nodes.begin(), nodes.end(), std::less_equal<int>{})) {
        std::vector<int> local(ids_.size(), -1);
        ConstraintGraph sub;
        sub.d_ = d_;
        for (int n : nodes) {
            local[static_cast<std::size_t>(n)] = static_cast<int>(sub.ids_.size());
            sub.ids_.push_back(id(n));
        }
        sub.adj_.assign(sub.ids_.size(), {});
        for (const auto& e : edges_) {
            int a = local[static_cast<std::size_t>(e.u)], b = local[static_cast<std::size_t>(e.v)];
            if (a < 0 || b < 0) continue;
            sub.edges_.push_back({a, b, e.weight});
            sub.adj_[static_cast<std::size_t>(a)].push_back(b);
            sub.adj_[static_cast<std::size_t>(b)].push_back(a);
        }
        for (auto& list : sub.adj_) std::sort(list.begin(), list.end());
        return sub;
    }
    std::vector<int> local(ids_.size(), -1);
    std::vector<std::string> sub_ids;
    for (int n : nodes) {
        if (local[static_cast<std::size_t>(n)] >= 0) continue;
        local[static_cast<std::size_t>(n)] = static_cast<int>(sub_ids.size());
        sub_ids.push_back(id(n));
    }
    std::vector<IdEdge> sub_edges;
    for (const auto& e : edges_)
        if (local[static_cast<std::size_t>(e.u)] >= 0 && local[static_cast<std::size_t>(e.v)] >= 0)
            sub_edges.push_back({id(e.u), id(e.v), e.weight});
    return ConstraintGraph(std::move(sub_ids), sub_edges, d_);
}

ConstraintGraph ConstraintGraph::without(const std::vector<int>& removed) const {
    std::vector<bool> drop(ids_.size(), false);
    for (int n : removed) drop[static_cast<std::size_t>(n)] = true;
    std::vector<int> keep;
    for (int n = 0; n < static_cast<int>(ids_.size()); ++n)
        if (!drop[static_cast<std::size_t>(n)]) keep.push_back(n);
    return induced(keep);
}

namespace {

void require_buildable(const Floorplan& fp, double d) {
    if (!(std::isfinite(d) && d > 0.0)) throw Error(ErrorCode::invalid_argument, "social distance must be positive");
    if (fp.workspaces.empty()) throw Error(ErrorCode::empty_floorplan, "floorplan has no workspaces");
}

std::vector<std::string> workspace_ids(const Floorplan& fp) {
    std::vector<std::string> ids;
    ids.reserve(fp.workspaces.size());
    for (const auto& ws : fp.workspaces) ids.push_back(ws.id);
    return ids;
}

}  // namespace

ConstraintGraph build_constraint_graph_brute_force(const Floorplan& fp, double d) {
    require_buildable(fp, d);
    std::vector<IdEdge> edges;
    const auto& ws = fp.workspaces;
    for (std::size_t i = 0; i < ws.size(); ++i)
        for (std::size_t k = i + 1; k < ws.size(); ++k) {
            double w = distance(ws[i].centroid, ws[k].centroid);
            if (w < d) edges.push_back({ws[i].id, ws[k].id, w});
        }
    return ConstraintGraph(workspace_ids(fp), edges, d);
}

ConstraintGraph build_constraint_graph(const Floorplan& fp, double d) {
    require_buildable(fp, d);
    const auto& ws = fp.workspaces;
    auto cell_of = [d](double v) { return static_cast<long long>(std::floor(v / d)); };
    std::map<std::pair<long long, long long>, std::vector<std::size_t>> grid;
    for (std::size_t i = 0; i < ws.size(); ++i)
        grid[{cell_of(ws[i].centroid.x), cell_of(ws[i].centroid.y)}].push_back(i);

    std::vector<IdEdge> edges;
    for (std::size_t i = 0; i < ws.size(); ++i) {
        long long cx = cell_of(ws[i].centroid.x), cy = cell_of(ws[i].centroid.y);
        for (long long dx = -1; dx <= 1; ++dx)
            for (long long dy = -1; dy <= 1; ++dy) {
                auto it = grid.find({cx + dx, cy + dy});
                if (it == grid.end()) continue;
                for (std::size_t k : it->second) {
                    if (k <= i) continue;
                    double w = distance(ws[i].centroid, ws[k].centroid);
                    if (w < d) edges.push_back({ws[i].id, ws[k].id, w});
                }
            }
    }
    return ConstraintGraph(workspace_ids(fp), edges, d);
}

std::vector<std::vector<int>> component_nodes(const ConstraintGraph& g) {
    const int n = static_cast<int>(g.node_count());
    std::vector<int> label(static_cast<std::size_t>(n), -1);
    std::vector<std::vector<int>> groups;
    for (int root = 0; root < n; ++root) {
        if (label[static_cast<std::size_t>(root)] >= 0) continue;
        int c = static_cast<int>(groups.size());
        groups.emplace_back();
        std::queue<int> q;
        q.push(root);
        label[static_cast<std::size_t>(root)] = c;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            groups.back().push_back(u);
            for (int v : g.neighbors(u))
                if (label[static_cast<std::size_t>(v)] < 0) {
                    label[static_cast<std::size_t>(v)] = c;
                    q.push(v);
                }
        }
        std::sort(groups.back().begin(), groups.back().end());
    }
    return groups;
}

std::vector<ConstraintGraph> components(const ConstraintGraph& g) {
    std::vector<ConstraintGraph> out;
    for (const auto& nodes : component_nodes(g)) out.push_back(g.induced(nodes));
    return out;
}

namespace {

struct BfsForest {
    std::vector<int> parent;
    std::vector<int> depth;
    std::vector<int> color;
};

BfsForest bfs_forest(const ConstraintGraph& g) {
    const std::size_t n = g.node_count();
    BfsForest f{std::vector<int>(n, -1), std::vector<int>(n, -1), std::vector<int>(n, -1)};
    for (int root = 0; root < static_cast<int>(n); ++root) {
        if (f.depth[static_cast<std::size_t>(root)] >= 0) continue;
        f.depth[static_cast<std::size_t>(root)] = 0;
        f.color[static_cast<std::size_t>(root)] = 0;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : g.neighbors(u)) {
                if (f.depth[static_cast<std::size_t>(v)] >= 0) continue;
                f.depth[static_cast<std::size_t>(v)] = f.depth[static_cast<std::size_t>(u)] + 1;
                f.parent[static_cast<std::size_t>(v)] = u;
                f.color[static_cast<std::size_t>(v)] = 1 - f.color[static_cast<std::size_t>(u)];
                q.push(v);
            }
        }
    }
    return f;
}

bool is_tree_edge(const BfsForest& f, int a, int b) {
    return f.parent[static_cast<std::size_t>(a)] == b || f.parent[static_cast<std::size_t>(b)] == a;
}

// Tree path a -> lca -> b, closing the cycle through the edge (b, a).
std::vector<int> fundamental_cycle(const BfsForest& f, int a, int b) {
    std::vector<int> left{a}, right{b};
    int x = a, y = b;
    while (x != y) {
        if (f.depth[static_cast<std::size_t>(x)] >= f.depth[static_cast<std::size_t>(y)]) {
            x = f.parent[static_cast<std::size_t>(x)];
            left.push_back(x);
        } else {
            y = f.parent[static_cast<std::size_t>(y)];
            right.push_back(y);
        }
    }
    right.pop_back();  // lca already in left
    left.insert(left.end(), right.rbegin(), right.rend());
    return left;
}

std::vector<std::string> to_ids(const ConstraintGraph& g, const std::vector<int>& nodes) {
    std::vector<std::string> out;
    out.reserve(nodes.size());
    for (int n : nodes) out.push_back(g.id(n));
    return out;
}

}  // namespace

CycleBasis cycle_basis(const ConstraintGraph& g) {
    BfsForest f = bfs_forest(g);
    CycleBasis basis;
    for (const auto& e : g.edges()) {
        if (is_tree_edge(f, e.u, e.v)) continue;
        basis.cycles.push_back(to_ids(g, fundamental_cycle(f, e.u, e.v)));
    }
    return basis;
}

BicolorResult bicolor(const ConstraintGraph& g) {
    BfsForest f = bfs_forest(g);
    for (const auto& e : g.edges()) {
        if (f.color[static_cast<std::size_t>(e.u)] == f.color[static_cast<std::size_t>(e.v)])
            return OddCycleWitness{to_ids(g, fundamental_cycle(f, e.u, e.v))};
    }
    Bicoloring out;
    for (int n = 0; n < static_cast<int>(g.node_count()); ++n)
        (f.color[static_cast<std::size_t>(n)] == 0 ? out.u : out.v).push_back(g.id(n));
    return out;
}

namespace detail {

std::vector<int> odd_cycle_participation(const ConstraintGraph& g) {
    BfsForest f = bfs_forest(g);
    std::vector<int> count(g.node_count(), 0);
    for (const auto& e : g.edges()) {
        // A non-tree edge closes an odd cycle exactly when its ends share a color.
        if (is_tree_edge(f, e.u, e.v) || f.color[static_cast<std::size_t>(e.u)] != f.color[static_cast<std::size_t>(e.v)])
            continue;
        for (int v : fundamental_cycle(f, e.u, e.v)) ++count[static_cast<std::size_t>(v)];
    }
    return count;
}

}  // namespace detail

}  // namespace seatplan
