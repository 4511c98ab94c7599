#include "pottslab/tutte.hpp"

#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace pottslab {

namespace {

const BivarPoly::Vars kXY{"x", "y"};

DCParams<BivarPoly> tutte_params() {
    return {BivarPoly::constant(kXY, 1), BivarPoly::constant(kXY, 1),
            BivarPoly::constant(kXY, 1), BivarPoly::variable(kXY, 0),
            BivarPoly::variable(kXY, 1)};
}

}  // namespace

BivarPoly tutte(const Multigraph& g, const EngineOptions& opt) {
    return run_deletion_contraction(g, tutte_params(), opt);
}

BivarPoly tutte_subgraph_expansion(const Multigraph& g, int max_edges) {
    const int m = g.edge_count();
    if (m > max_edges)
        throw ResourceLimitError("subgraph expansion enumerates 2^|E| subsets; |E| > " +
                                 std::to_string(max_edges));
    const int n = g.vertex_count();
    const int kg = components(g);

    // counts indexed by (k(A)-k(G), nullity(A))
    std::map<std::pair<int, int>, BigInt> counts;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << m); ++mask) {
        std::vector<int> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        int k = n;
        int size = 0;
        for (int e = 0; e < m; ++e) {
            if (!(mask >> e & 1)) continue;
            ++size;
            int a = find(g.edges()[e].first), b = find(g.edges()[e].second);
            if (a != b) {
                parent[b] = a;
                --k;
            }
        }
        counts[{k - kg, size - n + k}] += 1;
    }

    const BivarPoly xm1 = BivarPoly::variable(kXY, 0) - BivarPoly::constant(kXY, 1);
    const BivarPoly ym1 = BivarPoly::variable(kXY, 1) - BivarPoly::constant(kXY, 1);
    std::vector<BivarPoly> xp{BivarPoly::constant(kXY, 1)}, yp{BivarPoly::constant(kXY, 1)};
    auto xpow = [&](int k) {
        while (static_cast<int>(xp.size()) <= k) xp.push_back(xp.back() * xm1);
        return xp[k];
    };
    auto ypow = [&](int k) {
        while (static_cast<int>(yp.size()) <= k) yp.push_back(yp.back() * ym1);
        return yp[k];
    };
    BivarPoly out(kXY);
    for (const auto& [e, c] : counts) out += (xpow(e.first) * ypow(e.second)).scale(c);
    return out;
}

BivarPoly dichromatic(const Multigraph& g, const EngineOptions& opt) {
    const BivarPoly::Vars uv{"u", "v"};
    const BivarPoly u = BivarPoly::variable(uv, 0);
    const BivarPoly v = BivarPoly::variable(uv, 1);
    const BivarPoly one = BivarPoly::constant(uv, 1);
    DCParams<BivarPoly> params{one, one, v, u + v, v + one};
    BivarPoly normalized = run_deletion_contraction(g, std::move(params), opt);
    return normalized * u.pow(components(g));
}

BivarPoly chromatic(const Multigraph& g, const EngineOptions& opt) {
    const BivarPoly x = BivarPoly::variable(kXY, 0);
    const BivarPoly one = BivarPoly::constant(kXY, 1);
    DCParams<BivarPoly> params{one, one, -one, x - one, BivarPoly(kXY)};
    BivarPoly normalized = run_deletion_contraction(g, std::move(params), opt);
    return normalized * x.pow(components(g));
}

BivarPoly chromatic_via_tutte(const Multigraph& g, const EngineOptions& opt) {
    BivarPoly t = tutte(g, opt);
    const BivarPoly x = BivarPoly::variable(kXY, 0);
    const BivarPoly one = BivarPoly::constant(kXY, 1);
    // t(G; 1-x, 0): kill y first, then substitute x := 1-x
    BivarPoly spec = t.substitute(1, BivarPoly(kXY)).substitute(0, one - x);
    const int k = components(g);
    const int r = graph_rank(g);
    BivarPoly out = spec * x.pow(k);
    return r % 2 == 0 ? out : -out;
}

BigRat dc_invariant_eval(const Multigraph& g, const DCInvariantSpec& spec,
                         const EngineOptions& opt) {
    if (spec.a == 0 || spec.b == 0)
        throw std::invalid_argument("dc invariant requires a*b != 0");
    BivarPoly t = tutte(g, opt);
    BigRat value = t.eval_exact(spec.x0 / spec.b, spec.y0 / spec.a);
    const int n = graph_nullity(g);
    const int r = graph_rank(g);
    for (int s = 0; s < n; ++s) value *= spec.a;
    for (int s = 0; s < r; ++s) value *= spec.b;
    return value;
}

BigRat dc_invariant_recursion(const Multigraph& g, const DCInvariantSpec& spec,
                              const EngineOptions& opt) {
    if (spec.a == 0 || spec.b == 0)
        throw std::invalid_argument("dc invariant requires a*b != 0");
    DCParams<BigRat> params{BigRat(1), spec.a, spec.b, spec.x0, spec.y0};
    return run_deletion_contraction(g, std::move(params), opt);
}

}  // namespace pottslab
