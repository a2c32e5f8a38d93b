#pragma once

#include <vector>

namespace seatplan::detail {

struct MwisResult {
    std::vector<int> nodes;  // ascending
    double value = 0.0;
};

struct MwisOptions {
    // Search nodes the branch-and-bound may spend before the frontier DP is
    // tried; negative disables the DP stage.
    long long probe_nodes = 5'000;
    // Largest frontier (in vertices) and total state count the DP accepts.
    int dp_max_width = 60;
    std::size_t dp_max_states = 8'000'000;
};

/// Maximum-weight independent set over a simple undirected graph given as
/// adjacency lists. Exact: reductions (non-positive removal, isolated take,
/// weighted domination, degree-1 folding), component splitting, a min-cut
/// solve for bipartite pieces and branch-and-bound with a weighted greedy
/// clique-cover bound elsewhere. When the search runs long, a dynamic program
/// over a narrow vertex ordering is tried before the search resumes
/// unbudgeted.
MwisResult max_weight_independent_set(const std::vector<std::vector<int>>& adj, const std::vector<double>& weight,
                                      const MwisOptions& options = {});

/// Vertex order for frontier sweeps: grown from a pseudo-peripheral vertex,
/// each step takes the candidate that adds the fewest vertices to the
/// frontier (processed vertices with unprocessed neighbors).
std::vector<int> sweep_order(const std::vector<std::vector<int>>& adj);

/// Weighted greedy clique cover bound over the given adjacency.
double clique_cover_bound(const std::vector<std::vector<int>>& adj, const std::vector<double>& weight);

}  // namespace seatplan::detail
