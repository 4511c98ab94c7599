#include "pottslab/multigraph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pottslab {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    // returns true if the sets were distinct
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

void check_edge_index(const Multigraph& g, int e) {
    if (e < 0 || e >= g.edge_count()) throw std::out_of_range("edge index out of range");
}

}  // namespace

Multigraph::Multigraph(int vertex_count, std::vector<std::pair<int, int>> edges)
    : n_(vertex_count), edges_(std::move(edges)) {
    if (n_ < 0) throw std::invalid_argument("vertex count must be nonnegative");
    for (auto& [u, v] : edges_) {
        if (u < 0 || u >= n_ || v < 0 || v >= n_)
            throw std::invalid_argument("edge endpoint out of range");
        if (u > v) std::swap(u, v);
    }
}

const std::pair<int, int>& Multigraph::edge(int e) const {
    check_edge_index(*this, e);
    return edges_[e];
}

int components(const Multigraph& g) {
    UnionFind uf(g.vertex_count());
    int k = g.vertex_count();
    for (const auto& [u, v] : g.edges())
        if (uf.unite(u, v)) --k;
    return k;
}

int graph_rank(const Multigraph& g) { return g.vertex_count() - components(g); }

int graph_nullity(const Multigraph& g) {
    return g.edge_count() - g.vertex_count() + components(g);
}

bool is_loop(const Multigraph& g, int e) {
    check_edge_index(g, e);
    return g.edges()[e].first == g.edges()[e].second;
}

bool is_bridge(const Multigraph& g, int e) {
    check_edge_index(g, e);
    if (is_loop(g, e)) return false;
    return components(delete_edge(g, e)) > components(g);
}

Multigraph delete_edge(const Multigraph& g, int e) {
    check_edge_index(g, e);
    auto edges = g.edges();
    edges.erase(edges.begin() + e);
    return Multigraph(g.vertex_count(), std::move(edges));
}

Multigraph contract_edge(const Multigraph& g, int e) {
    check_edge_index(g, e);
    auto [keep, gone] = g.edges()[e];  // keep <= gone
    if (keep == gone) throw std::invalid_argument("cannot contract a loop");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(g.edge_count() - 1);
    auto remap = [keep = keep, gone = gone](int x) {
        if (x == gone) return keep;
        return x > gone ? x - 1 : x;
    };
    for (int i = 0; i < g.edge_count(); ++i) {
        if (i == e) continue;
        const auto& [u, v] = g.edges()[i];
        edges.emplace_back(remap(u), remap(v));
    }
    return Multigraph(g.vertex_count() - 1, std::move(edges));
}

Multigraph cycle_graph(int n) {
    if (n < 1) throw std::invalid_argument("cycle size must be >= 1");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return Multigraph(n, std::move(edges));
}

Multigraph path_graph(int n) {
    if (n < 1) throw std::invalid_argument("path size must be >= 1");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Multigraph(n, std::move(edges));
}

Multigraph complete_graph(int n) {
    if (n < 1) throw std::invalid_argument("complete graph size must be >= 1");
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return Multigraph(n, std::move(edges));
}

Multigraph grid_graph(int rows, int cols, Boundary boundary) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("grid sides must be >= 1");
    if (boundary == Boundary::torus && (rows < 3 || cols < 3))
        throw std::invalid_argument("torus grid requires both sides >= 3");
    auto id = [cols](int r, int c) { return r * cols + c; };
    std::vector<std::pair<int, int>> edges;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            if (boundary == Boundary::torus) {
                edges.emplace_back(id(r, c), id(r, (c + 1) % cols));
                edges.emplace_back(id(r, c), id((r + 1) % rows, c));
            } else {
                if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
                if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
            }
        }
    }
    return Multigraph(rows * cols, std::move(edges));
}

Multigraph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    long long n = -1, m = -1;
    if (!(in >> n >> m) || n < 0 || m < 0)
        throw std::invalid_argument("malformed edge-list header");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<size_t>(m));
    for (long long i = 0; i < m; ++i) {
        long long u, v;
        if (!(in >> u >> v)) throw std::invalid_argument("truncated edge list");
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw std::invalid_argument("edge endpoint out of range");
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    std::string rest;
    if (in >> rest) throw std::invalid_argument("trailing content after edge list");
    return Multigraph(static_cast<int>(n), std::move(edges));
}

std::string serialize(const Multigraph& g) {
    std::ostringstream out;
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
    return out.str();
}

BlockDecomposition block_decomposition(const Multigraph& g) {
    const int n = g.vertex_count();
    BlockDecomposition out;

    // adjacency as (neighbor, edge index); loops kept aside
    std::vector<std::vector<std::pair<int, int>>> adj(n);
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edges()[e];
        if (u == v) {
            out.loops.push_back(e);
            continue;
        }
        adj[u].emplace_back(v, e);
        adj[v].emplace_back(u, e);
    }

    // iterative Tarjan; parallel edges are distinct by edge index
    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<int> edge_stack;
    int timer = 0;

    struct Frame {
        int v;
        int parent_edge;
        size_t next;
    };

    for (int root = 0; root < n; ++root) {
        if (disc[root] != -1 || adj[root].empty()) continue;
        std::vector<Frame> stack{{root, -1, 0}};
        disc[root] = low[root] = timer++;
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.next < adj[f.v].size()) {
                auto [w, e] = adj[f.v][f.next++];
                if (e == f.parent_edge) continue;
                if (disc[w] == -1) {
                    edge_stack.push_back(e);
                    disc[w] = low[w] = timer++;
                    stack.push_back({w, e, 0});
                } else if (disc[w] < disc[f.v]) {
                    edge_stack.push_back(e);
                    low[f.v] = std::min(low[f.v], disc[w]);
                }
            } else {
                stack.pop_back();
                if (stack.empty()) break;
                int parent = stack.back().v;
                low[parent] = std::min(low[parent], low[f.v]);
                if (low[f.v] >= disc[parent]) {
                    // pop one biconnected component off the edge stack
                    std::vector<int> block;
                    while (!edge_stack.empty()) {
                        int e = edge_stack.back();
                        edge_stack.pop_back();
                        block.push_back(e);
                        if (e == f.parent_edge) break;
                    }
                    std::sort(block.begin(), block.end());
                    if (block.size() == 1)
                        out.bridges.push_back(block[0]);
                    else
                        out.blocks.push_back(std::move(block));
                }
            }
        }
    }
    std::sort(out.bridges.begin(), out.bridges.end());
    return out;
}

Multigraph edge_subgraph(const Multigraph& g, const std::vector<int>& edge_idxs) {
    std::map<int, int> relabel;
    for (int e : edge_idxs) {
        check_edge_index(g, e);
        auto [u, v] = g.edges()[e];
        relabel.emplace(u, 0);
        relabel.emplace(v, 0);
    }
    int next = 0;
    for (auto& [old_id, new_id] : relabel) new_id = next++;
    std::vector<std::pair<int, int>> edges;
    edges.reserve(edge_idxs.size());
    for (int e : edge_idxs) {
        auto [u, v] = g.edges()[e];
        edges.emplace_back(relabel[u], relabel[v]);
    }
    return Multigraph(next, std::move(edges));
}

// ---------------------------------------------------------------------------
// Canonical keys
// ---------------------------------------------------------------------------

namespace {

// multiplicity matrix incl. loop counts on the diagonal
std::vector<std::vector<int>> multiplicity_matrix(const Multigraph& g) {
    std::vector<std::vector<int>> m(g.vertex_count(), std::vector<int>(g.vertex_count(), 0));
    for (const auto& [u, v] : g.edges()) {
        if (u == v) {
            m[u][u] += 1;
        } else {
            m[u][v] += 1;
            m[v][u] += 1;
        }
    }
    return m;
}

// Equitable refinement. Colors are ranks of isomorphism-invariant
// signatures, so the partition (and its cell order) is label-independent.
std::vector<int> refine_colors(const std::vector<std::vector<int>>& adj, std::vector<int> colors) {
    const int n = static_cast<int>(colors.size());
    for (;;) {
        using Sig = std::pair<int, std::vector<std::pair<int, int>>>;
        std::vector<Sig> sig(n);
        for (int v = 0; v < n; ++v) {
            std::vector<std::pair<int, int>> nb;
            for (int u = 0; u < n; ++u)
                if (u != v && adj[v][u] > 0) nb.emplace_back(colors[u], adj[v][u]);
            std::sort(nb.begin(), nb.end());
            sig[v] = {colors[v], std::move(nb)};
        }
        std::vector<Sig> uniq = sig;
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        std::vector<int> next(n);
        for (int v = 0; v < n; ++v)
            next[v] = static_cast<int>(
                std::lower_bound(uniq.begin(), uniq.end(), sig[v]) - uniq.begin());
        if (next == colors) return colors;
        colors = std::move(next);
    }
}

std::vector<int> initial_colors(const std::vector<std::vector<int>>& adj) {
    const int n = static_cast<int>(adj.size());
    std::vector<std::pair<int, int>> sig(n);  // (loop count, degree)
    for (int v = 0; v < n; ++v) {
        int deg = 0;
        for (int u = 0; u < n; ++u)
            if (u != v) deg += adj[v][u];
        sig[v] = {adj[v][v], deg};
    }
    auto uniq = sig;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    std::vector<int> colors(n);
    for (int v = 0; v < n; ++v)
        colors[v] =
            static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), sig[v]) - uniq.begin());
    return refine_colors(adj, colors);
}

// Flattened upper triangle (incl. diagonal) under the permutation implied by
// a discrete coloring.
std::vector<int> encode_discrete(const std::vector<std::vector<int>>& adj,
                                 const std::vector<int>& colors) {
    const int n = static_cast<int>(colors.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return colors[a] < colors[b]; });
    std::vector<int> enc;
    enc.reserve(n * (n + 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) enc.push_back(adj[order[i]][order[j]]);
    return enc;
}

void canonical_search(const std::vector<std::vector<int>>& adj, const std::vector<int>& colors,
                      std::vector<int>& best, bool& have_best) {
    const int n = static_cast<int>(colors.size());
    int max_color = *std::max_element(colors.begin(), colors.end());
    if (max_color == n - 1) {
        auto enc = encode_discrete(adj, colors);
        if (!have_best || enc < best) {
            best = std::move(enc);
            have_best = true;
        }
        return;
    }
    // first non-singleton cell, by color value
    int target = -1;
    std::vector<int> cell;
    for (int c = 0; c <= max_color && target < 0; ++c) {
        cell.clear();
        for (int v = 0; v < n; ++v)
            if (colors[v] == c) cell.push_back(v);
        if (cell.size() > 1) target = c;
    }
    // vertices in the cell with identical adjacency rows are swappable by a
    // transposition automorphism; individualizing one of them is enough
    std::vector<int> reps;
    for (int v : cell) {
        bool dup = false;
        for (int r : reps) {
            bool same = adj[v][v] == adj[r][r] && adj[v][r] == adj[r][v];
            for (int u = 0; same && u < n; ++u) {
                if (u == v || u == r) continue;
                same = adj[v][u] == adj[r][u];
            }
            if (same) {
                dup = true;
                break;
            }
        }
        if (!dup) reps.push_back(v);
    }
    for (int v : reps) {
        std::vector<int> split(colors.size());
        for (size_t i = 0; i < colors.size(); ++i)
            split[i] = colors[i] * 2 + (static_cast<int>(i) == v ? 0 : 1);
        canonical_search(adj, refine_colors(adj, split), best, have_best);
    }
}

std::string canonical_component(const Multigraph& comp) {
    auto adj = multiplicity_matrix(comp);
    auto colors = initial_colors(adj);
    std::vector<int> best;
    bool have_best = false;
    canonical_search(adj, colors, best, have_best);
    std::ostringstream out;
    out << comp.vertex_count() << ':';
    for (size_t i = 0; i < best.size(); ++i) {
        if (i) out << ',';
        out << best[i];
    }
    return out.str();
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

std::string canonical_key(const Multigraph& g, int exact_bound) {
    const int n = g.vertex_count();

    // split into components
    UnionFind uf(n);
    for (const auto& [u, v] : g.edges()) uf.unite(u, v);
    std::map<int, std::vector<int>> comp_edges;  // root -> edge indices
    for (int e = 0; e < g.edge_count(); ++e) comp_edges[uf.find(g.edges()[e].first)].push_back(e);
    int isolated = 0;
    for (int v = 0; v < n; ++v)
        if (uf.find(v) == v && comp_edges.find(v) == comp_edges.end()) ++isolated;

    if (n <= exact_bound) {
        std::vector<std::string> parts;
        for (const auto& [root, idxs] : comp_edges)
            parts.push_back(canonical_component(edge_subgraph(g, idxs)));
        std::sort(parts.begin(), parts.end());
        std::ostringstream out;
        out << "C|" << isolated;
        for (const auto& p : parts) out << '|' << p;
        return out.str();
    }

    // invariant hash for large graphs: vertex count, edge count, sorted
    // (loop count, degree) pairs, sorted refined color histogram
    auto adj = multiplicity_matrix(g);
    auto colors = refine_colors(adj, initial_colors(adj));
    std::vector<int> hist(n, 0);
    for (int c : colors) ++hist[c];
    std::sort(hist.begin(), hist.end());
    std::vector<std::pair<int, int>> degs(n);
    for (int v = 0; v < n; ++v) {
        int deg = 0;
        for (int u = 0; u < n; ++u)
            if (u != v) deg += adj[v][u];
        degs[v] = {adj[v][v], deg};
    }
    std::sort(degs.begin(), degs.end());
    std::ostringstream data;
    data << n << ';' << g.edge_count() << ';';
    for (auto [l, d] : degs) data << l << ',' << d << ';';
    for (int h : hist)
        if (h) data << h << ';';
    std::ostringstream out;
    out << "H|" << std::hex << fnv1a64(data.str());
    return out.str();
}

}  // namespace pottslab
