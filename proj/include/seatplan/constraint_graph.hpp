#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "seatplan/ingest.hpp"

namespace seatplan {

struct WeightedEdge {
    int u = 0;  // u < v, node indices
    int v = 0;
    double weight = 0.0;
};

struct IdEdge {
    std::string a;
    std::string b;
    double weight = 0.0;
};

/// Conflict graph over workspaces: an edge joins two workspaces whose
/// centroids are strictly closer than `d`. Nodes are stored in natural id
/// order, so node index order is id order. Immutable after construction.
class ConstraintGraph {
public:
    ConstraintGraph() = default;

    /// Validates the invariants: unique ids, weight < d, no self-loops, no
    /// duplicate edges. Ids may be given in any order.
    ConstraintGraph(std::vector<std::string> ids, const std::vector<IdEdge>& edges, double d);

    double social_distance() const { return d_; }
    std::size_t node_count() const { return ids_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const std::vector<std::string>& ids() const { return ids_; }
    const std::string& id(int node) const { return ids_[static_cast<std::size_t>(node)]; }
    std::optional<int> index_of(const std::string& id) const;

    /// Ascending neighbor indices.
    const std::vector<int>& neighbors(int node) const { return adj_[static_cast<std::size_t>(node)]; }
    int degree(int node) const { return static_cast<int>(neighbors(node).size()); }
    bool adjacent(int a, int b) const;

    const std::vector<WeightedEdge>& edges() const { return edges_; }

    /// Induced subgraph over `nodes` (indices into this graph).
    ConstraintGraph induced(const std::vector<int>& nodes) const;
    ConstraintGraph without(const std::vector<int>& removed) const;

private:
    double d_ = 0.0;
    std::vector<std::string> ids_;
    std::vector<std::vector<int>> adj_;
    std::vector<WeightedEdge> edges_;
};

/// Uses spatial bucketing with cell size d; equal to the all-pairs result.
ConstraintGraph build_constraint_graph(const Floorplan& fp, double d);

/// All-pairs construction, kept for cross-checking.
ConstraintGraph build_constraint_graph_brute_force(const Floorplan& fp, double d);

/// Connected components (isolated nodes included), ordered by smallest id.
std::vector<ConstraintGraph> components(const ConstraintGraph& g);

/// Node-index groups of `components`, in the same order.
std::vector<std::vector<int>> component_nodes(const ConstraintGraph& g);

struct CycleBasis {
    std::vector<std::vector<std::string>> cycles;
};

/// Fundamental cycles of a breadth-first spanning forest rooted at the
/// smallest id of each component, neighbors visited in ascending order.
CycleBasis cycle_basis(const ConstraintGraph& g);

struct Bicoloring {
    std::vector<std::string> u;  // color class of the smallest id
    std::vector<std::string> v;
};

struct OddCycleWitness {
    std::vector<std::string> cycle;
};

using BicolorResult = std::variant<Bicoloring, OddCycleWitness>;

/// Breadth-first 2-coloring from the smallest id of each component.
BicolorResult bicolor(const ConstraintGraph& g);

}  // namespace seatplan
