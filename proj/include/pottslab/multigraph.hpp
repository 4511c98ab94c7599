#ifndef POTTSLAB_MULTIGRAPH_HPP
#define POTTSLAB_MULTIGRAPH_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace pottslab {

/// Labeled multigraph: dense vertex indices, ordered edge list that keeps
/// loops and parallel edges. Values are immutable after construction; every
/// operation below is pure and returns a new graph.
class Multigraph {
public:
    Multigraph() = default;
    Multigraph(int vertex_count, std::vector<std::pair<int, int>> edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::pair<int, int>& edge(int e) const;

    bool operator==(const Multigraph&) const = default;

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;  // endpoints stored as (min,max)
};

int components(const Multigraph& g);
int graph_rank(const Multigraph& g);     // |V| - k(G)
int graph_nullity(const Multigraph& g);  // |E| - |V| + k(G)

bool is_loop(const Multigraph& g, int e);
bool is_bridge(const Multigraph& g, int e);

// delete keeps both endpoints; contract merges into the smaller index and
// compacts vertex numbering, turning edges parallel to e into loops.
// Contracting a loop is rejected.
Multigraph delete_edge(const Multigraph& g, int e);
Multigraph contract_edge(const Multigraph& g, int e);

enum class Boundary { free, torus };

Multigraph cycle_graph(int n);
Multigraph path_graph(int n);
Multigraph complete_graph(int n);
// Row-major vertex numbering; torus requires rows, cols >= 3.
Multigraph grid_graph(int rows, int cols, Boundary boundary);

// Edge-list text format: "<vertex_count> <edge_count>" header line, then one
// "u v" pair per line, 0-based, LF endings. Loops are written "u u".
Multigraph parse_edge_list(const std::string& text);
std::string serialize(const Multigraph& g);

inline constexpr int kDefaultCanonicalBound = 12;

// Canonical keys for isomorphism tests and memoization. Graphs with at most
// `exact_bound` vertices get a "C|" key computed by individualization and
// refinement: equal keys <=> isomorphic. Larger graphs get an
// isomorphism-invariant "H|" hash; equal hashes there do NOT certify
// isomorphism and callers must confirm with a full comparison.
std::string canonical_key(const Multigraph& g, int exact_bound = kDefaultCanonicalBound);

// Loop / bridge / biconnected-block split used by the recursion engines.
// Every non-loop edge lands either in `bridges` or in exactly one block of
// two or more edges.
struct BlockDecomposition {
    std::vector<int> loops;
    std::vector<int> bridges;
    std::vector<std::vector<int>> blocks;
};
BlockDecomposition block_decomposition(const Multigraph& g);

// Subgraph on the given edges, vertices renumbered densely in increasing
// order of their original index. Isolated vertices are dropped.
Multigraph edge_subgraph(const Multigraph& g, const std::vector<int>& edge_idxs);

}  // namespace pottslab

#endif
