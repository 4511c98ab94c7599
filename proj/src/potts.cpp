#include "pottslab/potts.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pottslab/tutte.hpp"

namespace pottslab {

namespace {

const BivarPoly::Vars kQV{"q", "v"};

std::uint64_t checked_state_count(const Multigraph& g, int q, std::uint64_t max_states) {
    if (q < 1) throw std::invalid_argument("state sums require q >= 1");
    std::uint64_t count = 1;
    for (int i = 0; i < g.vertex_count(); ++i) {
        if (count > max_states / static_cast<std::uint64_t>(q))
            throw ResourceLimitError("q^|V| exceeds the brute-force state bound");
        count *= static_cast<std::uint64_t>(q);
    }
    return count;
}

// enumerate all q^n states, calling visit(state) for each
template <typename F>
void for_each_state(int n, int q, F&& visit) {
    SpinState state(static_cast<size_t>(n), 0);
    for (;;) {
        visit(state);
        int i = 0;
        while (i < n && ++state[static_cast<size_t>(i)] == q) {
            state[static_cast<size_t>(i)] = 0;
            ++i;
        }
        if (i == n) break;
    }
}

}  // namespace

void PottsParams::validate(const Multigraph& g) const {
    if (q < 1) throw std::invalid_argument("q must be >= 1");
    if (kappa <= 0) throw std::invalid_argument("kappa must be positive");
    if (!(T > 0)) throw std::invalid_argument("temperature must be positive");
    if (edge_J && static_cast<int>(edge_J->size()) != g.edge_count())
        throw std::invalid_argument("per-edge coupling list must match the edge count");
}

void validate_state(const Multigraph& g, const SpinState& state, int q) {
    if (static_cast<int>(state.size()) != g.vertex_count())
        throw std::invalid_argument("state size does not match the vertex count");
    for (int s : state)
        if (s < 0 || s >= q) throw std::invalid_argument("spin value out of range");
}

double hamiltonian(const Multigraph& g, const SpinState& state, const PottsParams& p) {
    p.validate(g);
    validate_state(g, state, p.q);
    double equal_sum = 0.0, unequal_sum = 0.0;
    for (int e = 0; e < g.edge_count(); ++e) {
        const auto& [u, v] = g.edges()[e];
        if (state[static_cast<size_t>(u)] == state[static_cast<size_t>(v)])
            equal_sum += p.coupling(e);
        else
            unequal_sum += p.coupling(e);
    }
    return p.ham == Hamiltonian::h1 ? -equal_sum : unequal_sum;
}

double partition_bruteforce(const Multigraph& g, const PottsParams& p,
                            std::uint64_t max_states) {
    p.validate(g);
    checked_state_count(g, p.q, max_states);
    const double beta = p.beta();
    double total = 0.0;
    for_each_state(g.vertex_count(), p.q, [&](const SpinState& state) {
        double equal_sum = 0.0, unequal_sum = 0.0;
        for (int e = 0; e < g.edge_count(); ++e) {
            const auto& [u, v] = g.edges()[e];
            if (state[static_cast<size_t>(u)] == state[static_cast<size_t>(v)])
                equal_sum += p.coupling(e);
            else
                unequal_sum += p.coupling(e);
        }
        double h = p.ham == Hamiltonian::h1 ? -equal_sum : unequal_sum;
        total += std::exp(-beta * h);
    });
    return total;
}

double log_partition_bruteforce(const Multigraph& g, const PottsParams& p,
                                std::uint64_t max_states) {
    p.validate(g);
    checked_state_count(g, p.q, max_states);
    const double beta = p.beta();
    double shift = -std::numeric_limits<double>::infinity();
    double acc = 0.0;
    for_each_state(g.vertex_count(), p.q, [&](const SpinState& state) {
        double equal_sum = 0.0, unequal_sum = 0.0;
        for (int e = 0; e < g.edge_count(); ++e) {
            const auto& [u, v] = g.edges()[e];
            if (state[static_cast<size_t>(u)] == state[static_cast<size_t>(v)])
                equal_sum += p.coupling(e);
            else
                unequal_sum += p.coupling(e);
        }
        double x = -beta * (p.ham == Hamiltonian::h1 ? -equal_sum : unequal_sum);
        if (x > shift) {
            acc = acc * std::exp(shift - x) + 1.0;
            shift = x;
        } else {
            acc += std::exp(x - shift);
        }
    });
    return shift + std::log(acc);
}

BivarPoly partition_polynomial(const Multigraph& g, const EngineOptions& opt) {
    const BivarPoly q = BivarPoly::variable(kQV, 0);
    const BivarPoly v = BivarPoly::variable(kQV, 1);
    const BivarPoly one = BivarPoly::constant(kQV, 1);
    DCParams<BivarPoly> params{one, one, v, q + v, v + one};
    BivarPoly normalized = run_deletion_contraction(g, std::move(params), opt);
    return normalized * q.pow(components(g));
}

BivarPoly partition_polynomial_fixed_q(const Multigraph& g, const BigInt& q0,
                                       const EngineOptions& opt) {
    const BivarPoly qc = BivarPoly::constant(kQV, q0);
    const BivarPoly v = BivarPoly::variable(kQV, 1);
    const BivarPoly one = BivarPoly::constant(kQV, 1);
    DCParams<BivarPoly> params{one, one, v, qc + v, v + one};
    BivarPoly normalized = run_deletion_contraction(g, std::move(params), opt);
    return normalized * qc.pow(components(g));
}

std::vector<BigInt> equal_edge_histogram(const Multigraph& g, int q, std::uint64_t max_states) {
    checked_state_count(g, q, max_states);
    std::vector<BigInt> hist(static_cast<size_t>(g.edge_count()) + 1, BigInt(0));
    for_each_state(g.vertex_count(), q, [&](const SpinState& state) {
        int equal = 0;
        for (const auto& [u, v] : g.edges())
            if (state[static_cast<size_t>(u)] == state[static_cast<size_t>(v)]) ++equal;
        hist[static_cast<size_t>(equal)] += 1;
    });
    return hist;
}

BivarPoly partition_polynomial_from_histogram(const std::vector<BigInt>& hist) {
    const BivarPoly v = BivarPoly::variable(kQV, 1);
    const BivarPoly one = BivarPoly::constant(kQV, 1);
    BivarPoly out(kQV);
    BivarPoly w = one;  // (1+v)^j
    for (size_t j = 0; j < hist.size(); ++j) {
        if (hist[j] != 0) out += w.scale(hist[j]);
        w = w * (one + v);
    }
    return out;
}

double partition_via_tutte(const Multigraph& g, const PottsParams& p, const EngineOptions& opt) {
    p.validate(g);
    if (p.edge_J)
        throw std::invalid_argument("the Tutte route requires a uniform coupling");
    const double v = p.v();
    const int n = g.vertex_count();
    const int k = components(g);
    double p1;
    if (std::abs(v) < 1e-12) {
        p1 = std::pow(static_cast<double>(p.q), n);
    } else {
        BivarPoly t = tutte(g, opt);
        double q = static_cast<double>(p.q);
        p1 = std::pow(q, k) * std::pow(v, n - k) * t.eval_real((q + v) / v, v + 1.0);
    }
    if (p.ham == Hamiltonian::h2) p1 *= std::exp(-p.K() * g.edge_count());
    return p1;
}

std::vector<double> edge_weighted_qcoeffs_subsets(const Multigraph& g,
                                                  const std::vector<double>& v_e,
                                                  int max_edges) {
    const int m = g.edge_count();
    const int n = g.vertex_count();
    if (static_cast<int>(v_e.size()) != m)
        throw std::invalid_argument("weight list must match the edge count");
    if (m > max_edges)
        throw ResourceLimitError("edge-weighted subset enumeration bounded at 2^" +
                                 std::to_string(max_edges));
    std::vector<double> coeffs(static_cast<size_t>(n) + 1, 0.0);
    std::vector<int> parent(static_cast<size_t>(n));
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << m); ++mask) {
        for (int i = 0; i < n; ++i) parent[static_cast<size_t>(i)] = i;
        auto find = [&](int x) {
            while (parent[static_cast<size_t>(x)] != x)
                x = parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            return x;
        };
        int k = n;
        double weight = 1.0;
        for (int e = 0; e < m; ++e) {
            if (!(mask >> e & 1)) continue;
            weight *= v_e[static_cast<size_t>(e)];
            int a = find(g.edges()[e].first), b = find(g.edges()[e].second);
            if (a != b) {
                parent[static_cast<size_t>(b)] = a;
                --k;
            }
        }
        coeffs[static_cast<size_t>(k)] += weight;
    }
    return coeffs;
}

namespace {

// dense polynomial in q, ascending coefficients
using QPoly = std::vector<double>;

QPoly qp_mul(const QPoly& a, const QPoly& b) {
    QPoly out(a.size() + b.size() - 1, 0.0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

QPoly qp_add(QPoly a, const QPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0.0);
    for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return a;
}

QPoly qp_scale(QPoly a, double s) {
    for (double& x : a) x *= s;
    return a;
}

// normalized weighted partition function f = Z / q^k(G): multiplicative over
// components and one-point joins, f(K2) = q + v_e, f(loop) = 1 + v_e,
// f(G) = f(G-e) + v_e f(G/e).
QPoly weighted_normalized(const Multigraph& g, const std::vector<double>& w) {
    BlockDecomposition bd = block_decomposition(g);
    QPoly result{1.0};
    for (int e : bd.loops) result = qp_scale(result, 1.0 + w[static_cast<size_t>(e)]);
    for (int e : bd.bridges) result = qp_mul(result, QPoly{w[static_cast<size_t>(e)], 1.0});
    for (const auto& block : bd.blocks) {
        std::vector<double> bw;
        bw.reserve(block.size());
        for (int e : block) bw.push_back(w[static_cast<size_t>(e)]);
        Multigraph b = edge_subgraph(g, block);
        // pivot on edge 0 of the block; every block edge is a valid pivot
        std::vector<double> w_del = bw;
        w_del.erase(w_del.begin());
        QPoly del = weighted_normalized(delete_edge(b, 0), w_del);
        QPoly con = weighted_normalized(contract_edge(b, 0), w_del);
        result = qp_mul(result, qp_add(del, qp_scale(con, bw[0])));
    }
    return result;
}

}  // namespace

std::vector<double> edge_weighted_qcoeffs_recursive(const Multigraph& g,
                                                    const std::vector<double>& v_e,
                                                    const EngineOptions& opt) {
    if (static_cast<int>(v_e.size()) != g.edge_count())
        throw std::invalid_argument("weight list must match the edge count");
    if (g.edge_count() > opt.max_edges)
        throw ResourceLimitError("graph exceeds the edge ceiling");
    QPoly f = weighted_normalized(g, v_e);
    // multiply by q^k(G)
    QPoly out(static_cast<size_t>(components(g)), 0.0);
    out.insert(out.end(), f.begin(), f.end());
    out.resize(static_cast<size_t>(g.vertex_count()) + 1, 0.0);
    return out;
}

double partition_edge_weighted(const Multigraph& g, double q, const std::vector<double>& v_e,
                               const EngineOptions& opt) {
    QPoly coeffs = edge_weighted_qcoeffs_recursive(g, v_e, opt);
    double z = 0.0;
    for (size_t i = coeffs.size(); i-- > 0;) z = z * q + coeffs[i];
    return z;
}

double state_probability(const Multigraph& g, const SpinState& state, const PottsParams& p,
                         double log_z) {
    return std::exp(-p.beta() * hamiltonian(g, state, p) - log_z);
}

double state_probability(const Multigraph& g, const SpinState& state, const PottsParams& p,
                         std::uint64_t max_states) {
    p.validate(g);
    validate_state(g, state, p.q);
    double log_z;
    bool in_bound = true;
    std::uint64_t count = 1;
    for (int i = 0; i < g.vertex_count() && in_bound; ++i) {
        if (count > max_states / static_cast<std::uint64_t>(p.q)) in_bound = false;
        count *= static_cast<std::uint64_t>(p.q);
    }
    if (in_bound)
        log_z = log_partition_bruteforce(g, p, max_states);
    else
        log_z = std::log(partition_via_tutte(g, p));
    return state_probability(g, state, p, log_z);
}

ChromaticConsistencyReport chromatic_consistency(const Multigraph& g, int q,
                                                 const EngineOptions& opt) {
    if (q < 0) throw std::invalid_argument("q must be nonnegative");
    ChromaticConsistencyReport report;

    // Z(G;q,-1) by the partition recursion with v fixed at -1
    DCParams<BigRat> zparams{BigRat(1), BigRat(1), BigRat(-1), BigRat(q - 1), BigRat(0)};
    BigRat z = run_deletion_contraction(g, std::move(zparams), opt);
    for (int s = 0; s < components(g); ++s) z *= q;
    report.via_partition = boost::multiprecision::numerator(z);

    // chromatic polynomial evaluated exactly at q
    auto coeffs = chromatic(g, opt).univariate(1, BigInt(0));
    BigInt c = 0;
    for (size_t i = coeffs.size(); i-- > 0;) c = c * q + coeffs[i];
    report.via_chromatic = c;

    // (-1)^(|V|-k) q^k t(G;1-q,0)
    BigRat t = tutte(g, opt).eval_exact(BigRat(1 - q), BigRat(0));
    for (int s = 0; s < components(g); ++s) t *= q;
    if (graph_rank(g) % 2 != 0) t = -t;
    report.via_tutte = boost::multiprecision::numerator(t);

    report.agree = report.via_partition == report.via_chromatic &&
                   report.via_chromatic == report.via_tutte;
    return report;
}

}  // namespace pottslab
