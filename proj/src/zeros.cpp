#include "pottslab/zeros.hpp"

#include <algorithm>
#include <cmath>

#include "pottslab/potts.hpp"
#include "pottslab/tutte.hpp"

namespace pottslab {

namespace {

using cd = std::complex<double>;

// p(z) and p'(z) by Horner
std::pair<cd, cd> eval_with_derivative(const std::vector<cd>& coeffs, cd z) {
    cd p = 0.0, dp = 0.0;
    for (size_t i = coeffs.size(); i-- > 0;) {
        dp = dp * z + p;
        p = p * z + coeffs[i];
    }
    return {p, dp};
}

double backward_error_scale(const std::vector<cd>& coeffs, cd z) {
    const double az = std::abs(z);
    double scale = 0.0, zp = 1.0;
    for (const cd& c : coeffs) {
        scale += std::abs(c) * zp;
        zp *= az;
    }
    return std::max(scale, std::numeric_limits<double>::min());
}

double residual_at(const std::vector<cd>& coeffs, cd z) {
    return std::abs(eval_with_derivative(coeffs, z).first) / backward_error_scale(coeffs, z);
}

}  // namespace

RootSet find_roots(const std::vector<cd>& coeffs, double tol, int max_iterations,
                   int polish_steps) {
    if (coeffs.size() < 2) throw std::invalid_argument("degree must be at least 1");
    if (coeffs.back() == cd(0.0)) throw std::invalid_argument("leading coefficient must be nonzero");
    const int n = static_cast<int>(coeffs.size()) - 1;

    // fixed initial configuration: Cauchy-bound circle, fixed angular offsets
    double cauchy = 0.0;
    for (int i = 0; i < n; ++i)
        cauchy = std::max(cauchy, std::abs(coeffs[static_cast<size_t>(i)]));
    const double radius = 1.0 + cauchy / std::abs(coeffs.back());
    std::vector<cd> z(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        double angle = 2.0 * M_PI * k / n + 0.45;
        z[static_cast<size_t>(k)] = radius * cd(std::cos(angle), std::sin(angle));
    }

    RootSet out;
    out.tolerance = tol;
    int iter = 0;
    for (; iter < max_iterations; ++iter) {
        bool all_converged = true;
        for (int k = 0; k < n; ++k) {
            cd zk = z[static_cast<size_t>(k)];
            auto [p, dp] = eval_with_derivative(coeffs, zk);
            if (std::abs(p) / backward_error_scale(coeffs, zk) <= tol) continue;
            all_converged = false;
            if (dp == cd(0.0)) {
                // flat spot: nudge deterministically and retry next pass
                z[static_cast<size_t>(k)] = zk + (1.0 + std::abs(zk)) * cd(1e-6, 1e-6);
                continue;
            }
            cd newton = p / dp;
            cd repulsion = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == k) continue;
                cd diff = zk - z[static_cast<size_t>(j)];
                if (diff == cd(0.0)) diff = cd(1e-12 * (1.0 + std::abs(zk)), 0.0);
                repulsion += 1.0 / diff;
            }
            cd denom = 1.0 - newton * repulsion;
            cd step = std::abs(denom) < 1e-300 ? newton : newton / denom;
            z[static_cast<size_t>(k)] = zk - step;
        }
        if (all_converged) break;
    }
    out.iterations = iter;

    // Newton polish, keeping an iterate only while the residual improves
    for (int k = 0; k < n; ++k) {
        cd best = z[static_cast<size_t>(k)];
        double best_res = residual_at(coeffs, best);
        cd cur = best;
        for (int s = 0; s < polish_steps; ++s) {
            auto [p, dp] = eval_with_derivative(coeffs, cur);
            if (dp == cd(0.0)) break;
            cur = cur - p / dp;
            double res = residual_at(coeffs, cur);
            if (res < best_res) {
                best = cur;
                best_res = res;
            } else {
                break;
            }
        }
        z[static_cast<size_t>(k)] = best;
    }

    // deterministic output order: by real part, then imaginary
    std::sort(z.begin(), z.end(), [](const cd& a, const cd& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    out.roots = std::move(z);
    out.residuals.reserve(out.roots.size());
    bool ok = true;
    for (const cd& root : out.roots) {
        double res = residual_at(coeffs, root);
        out.residuals.push_back(res);
        ok = ok && res <= tol;
    }
    out.converged = ok;
    return out;
}

RootSet find_roots(const std::vector<double>& coeffs, double tol, int max_iterations,
                   int polish_steps) {
    std::vector<cd> c(coeffs.begin(), coeffs.end());
    return find_roots(c, tol, max_iterations, polish_steps);
}

namespace {

std::vector<cd> to_complex(const std::vector<BigInt>& coeffs) {
    std::vector<cd> out;
    out.reserve(coeffs.size());
    for (const BigInt& c : coeffs) out.emplace_back(c.convert_to<double>(), 0.0);
    return out;
}

std::vector<cd> trim(std::vector<cd> coeffs) {
    while (coeffs.size() > 1 && coeffs.back() == cd(0.0)) coeffs.pop_back();
    return coeffs;
}

bool is_real_integer(cd x) {
    return x.imag() == 0.0 && x.real() == std::nearbyint(x.real()) &&
           std::abs(x.real()) < 1e15;
}

}  // namespace

RootSet chromatic_zeros(const Multigraph& g, const EngineOptions& opt) {
    BivarPoly c = chromatic(g, opt);
    if (c.is_zero())
        throw ZeroPolynomialError(
            "chromatic polynomial is identically zero (the graph has a loop)");
    auto coeffs = to_complex(c.univariate(1, BigInt(0)));
    return find_roots(trim(std::move(coeffs)));
}

RootSet partition_v_zeros(const Multigraph& g, cd q0, const EngineOptions& opt) {
    std::vector<cd> coeffs;
    if (is_real_integer(q0)) {
        BivarPoly z = partition_polynomial_fixed_q(g, BigInt(static_cast<long long>(q0.real())), opt);
        if (z.is_zero()) throw ZeroPolynomialError("partition polynomial vanishes at this q");
        coeffs = to_complex(z.univariate(0, BigInt(0)));
    } else {
        coeffs = partition_polynomial(g, opt).univariate(0, q0);
    }
    coeffs = trim(std::move(coeffs));
    if (coeffs.size() < 2)
        throw ZeroPolynomialError("partition function is constant in v for this graph");
    return find_roots(coeffs);
}

RootSet partition_q_zeros(const Multigraph& g, cd v0, const EngineOptions& opt) {
    auto coeffs = trim(partition_polynomial(g, opt).univariate(1, v0));
    bool all_zero = true;
    for (const cd& c : coeffs) all_zero = all_zero && c == cd(0.0);
    if (all_zero || coeffs.size() < 2)
        throw ZeroPolynomialError("partition function is constant or zero in q at this v");
    return find_roots(coeffs);
}

std::vector<double> fisher_circle_distance(const std::vector<cd>& roots) {
    const double r = std::sqrt(2.0);
    std::vector<double> out;
    out.reserve(roots.size());
    for (const cd& z : roots)
        out.push_back(std::min(std::abs(std::abs(z) - r), std::abs(std::abs(z + 2.0) - r)));
    return out;
}

}  // namespace pottslab
