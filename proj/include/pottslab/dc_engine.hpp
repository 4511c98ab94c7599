#ifndef POTTSLAB_DC_ENGINE_HPP
#define POTTSLAB_DC_ENGINE_HPP

#include <cstdint>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "pottslab/multigraph.hpp"

namespace pottslab {

/// Thrown when an input exceeds a configured resource ceiling. Exact
/// partition-function computation is #P-hard, so oversized inputs are
/// refused up front instead of hanging.
class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EngineOptions {
    int max_edges = 64;        // refusal ceiling; override explicitly for larger runs
    int canonical_bound = kDefaultCanonicalBound;  // memoize only below this vertex count
    bool use_cache = true;     // no-cache mode exists for differential testing
    std::uint64_t pivot_seed = 0;  // 0: deterministic lowest-index pivot; else seeded random

    static EngineOptions from_env() {
        EngineOptions opt;
        if (const char* s = std::getenv("POTTSLAB_MAX_EDGES")) opt.max_edges = std::atoi(s);
        return opt;
    }
};

/// Recursion constants for a multiplicative deletion-contraction invariant f
/// normalized to f(single vertex) = 1:
///   f(G) = factor_del * f(G - e) + factor_con * f(G / e)   (e not loop/bridge)
///   f(K2) = bridge_value, f(loop) = loop_value,
///   f multiplicative over disjoint unions and one-point joins.
template <typename V>
struct DCParams {
    V one;
    V factor_del;
    V factor_con;
    V bridge_value;  // value on a single non-loop edge
    V loop_value;    // value on a single loop
};

/// Generic evaluator. Strips loops and bridges multiplicatively, splits on
/// biconnected blocks, recurses on a pivot edge inside each block, and
/// memoizes block values by canonical key. Cycle and parallel-bundle blocks
/// are unrolled without materializing intermediate graphs; they follow the
/// same recursion step for step.
template <typename V>
class DeletionContractionEngine {
public:
    DeletionContractionEngine(DCParams<V> params, EngineOptions opt)
        : p_(std::move(params)), opt_(opt), rng_(opt.pivot_seed) {}

    V run(const Multigraph& g) {
        if (g.edge_count() > opt_.max_edges)
            throw ResourceLimitError("graph exceeds the edge ceiling (" +
                                     std::to_string(opt_.max_edges) +
                                     "); raise max_edges or POTTSLAB_MAX_EDGES to override");
        return eval_graph(g);
    }

    std::size_t cache_size() const { return cache_.size(); }

private:
    V pow(const V& base, int k) const {
        V r = p_.one;
        for (int s = 0; s < k; ++s) r = r * base;
        return r;
    }

    V eval_graph(const Multigraph& g) {
        BlockDecomposition bd = block_decomposition(g);
        V result = p_.one;
        if (!bd.loops.empty()) result = result * pow(p_.loop_value, static_cast<int>(bd.loops.size()));
        if (!bd.bridges.empty())
            result = result * pow(p_.bridge_value, static_cast<int>(bd.bridges.size()));
        for (const auto& block : bd.blocks) result = result * eval_block(edge_subgraph(g, block));
        return result;
    }

    // b: biconnected, loop-free, >= 2 edges; every edge is a valid pivot.
    V eval_block(const Multigraph& b) {
        const bool cacheable = opt_.use_cache && b.vertex_count() <= opt_.canonical_bound;
        std::string key;
        if (cacheable) {
            key = canonical_key(b, opt_.canonical_bound);
            auto it = cache_.find(key);
            if (it != cache_.end()) return it->second;
        }
        V value = eval_block_uncached(b);
        if (cacheable) cache_.emplace(std::move(key), value);
        return value;
    }

    V eval_block_uncached(const Multigraph& b) {
        const int n = b.vertex_count();
        const int m = b.edge_count();
        if (opt_.pivot_seed == 0) {
            if (n == 2) return bundle_value(m);
            if (m == n) {
                // a biconnected block with |E| == |V| >= 3 is a cycle
                return cycle_value(n);
            }
        }
        int pivot = 0;
        if (opt_.pivot_seed != 0)
            pivot = static_cast<int>(std::uniform_int_distribution<int>(0, m - 1)(rng_));
        return p_.factor_del * eval_graph(delete_edge(b, pivot)) +
               p_.factor_con * eval_graph(contract_edge(b, pivot));
    }

    // parallel bundle on two vertices: f(B_m) = del*f(B_{m-1}) + con*loop^(m-1)
    V bundle_value(int m) {
        V value = p_.bridge_value;
        for (int k = 2; k <= m; ++k)
            value = p_.factor_del * value + p_.factor_con * pow(p_.loop_value, k - 1);
        return value;
    }

    // cycle: f(C_n) = del*bridge^(n-1) + con*f(C_{n-1}), f(C_2) = bundle
    V cycle_value(int n) {
        V value = bundle_value(2);
        for (int k = 3; k <= n; ++k)
            value = p_.factor_del * pow(p_.bridge_value, k - 1) + p_.factor_con * value;
        return value;
    }

    DCParams<V> p_;
    EngineOptions opt_;
    std::mt19937_64 rng_;
    std::unordered_map<std::string, V> cache_;
};

template <typename V>
V run_deletion_contraction(const Multigraph& g, DCParams<V> params, const EngineOptions& opt) {
    DeletionContractionEngine<V> engine(std::move(params), opt);
    return engine.run(g);
}

}  // namespace pottslab

#endif
