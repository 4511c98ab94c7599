#ifndef POTTSLAB_POTTS_HPP
#define POTTSLAB_POTTS_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "pottslab/bivar_poly.hpp"
#include "pottslab/dc_engine.hpp"
#include "pottslab/multigraph.hpp"

namespace pottslab {

/// Boltzmann constant in joules/kelvin, for callers working in SI units.
/// kappa defaults to 1 so that K = J/T in dimensionless units.
inline constexpr double kBoltzmannJoulesPerKelvin = 1.380649e-23;

/// h1 counts equal-endpoint edges negatively, h2 counts unequal-endpoint
/// edges positively; h2 = J|E| + h1 for uniform coupling.
enum class Hamiltonian { h1, h2 };

struct PottsParams {
    int q = 2;             // number of spin values; state sums need q >= 1
    double J = 1.0;        // uniform coupling (energy units); > 0 ferromagnetic
    std::optional<std::vector<double>> edge_J;  // per-edge couplings, override J
    double kappa = 1.0;
    double T = 1.0;        // temperature; +infinity is accepted (beta = 0)
    Hamiltonian ham = Hamiltonian::h1;

    double beta() const { return std::isinf(T) ? 0.0 : 1.0 / (kappa * T); }
    double K() const { return J * beta(); }
    double v() const { return std::expm1(K()); }
    double coupling(int e) const { return edge_J ? (*edge_J)[static_cast<size_t>(e)] : J; }
    double edge_v(int e) const { return std::expm1(beta() * coupling(e)); }

    void validate(const Multigraph& g) const;
};

/// One spin in [0, q) per vertex.
using SpinState = std::vector<int>;

void validate_state(const Multigraph& g, const SpinState& state, int q);

/// Energy of a state. Loop edges always count as "equal endpoints".
double hamiltonian(const Multigraph& g, const SpinState& state, const PottsParams& p);

inline constexpr std::uint64_t kDefaultStateBound = std::uint64_t(1) << 31;

/// Full state sum  sum_omega exp(-beta h(omega)); q^|V| weighted states.
double partition_bruteforce(const Multigraph& g, const PottsParams& p,
                            std::uint64_t max_states = kDefaultStateBound);

/// log of the same sum, evaluated with a running max shift so extreme
/// couplings do not overflow.
double log_partition_bruteforce(const Multigraph& g, const PottsParams& p,
                                std::uint64_t max_states = kDefaultStateBound);

/// Z(G;q,v) = sum over edge subsets A of q^k(A) v^|A|, exact bivariate
/// polynomial computed by Z(G) = Z(G-e) + v Z(G/e) with Z(edgeless_n) = q^n.
BivarPoly partition_polynomial(const Multigraph& g, const EngineOptions& opt = {});

/// Z(G;q0,v) for a fixed integer q0, exact univariate polynomial in v
/// (returned in the ("q","v") labels with zero q-degree).
BivarPoly partition_polynomial_fixed_q(const Multigraph& g, const BigInt& q0,
                                       const EngineOptions& opt = {});

/// Exact count of states by number of equal-endpoint edges (uniform
/// coupling). hist[j] = #states with exactly j such edges, so
/// Z(G;q,v) = sum_j hist[j] (1+v)^j. Independent state-sum route.
std::vector<BigInt> equal_edge_histogram(const Multigraph& g, int q,
                                         std::uint64_t max_states = kDefaultStateBound);
BivarPoly partition_polynomial_from_histogram(const std::vector<BigInt>& hist);

/// P1 = q^k(G) v^(|V|-k) t(G;(q+v)/v, v+1); P2 = exp(-K|E|) P1.
/// Uses Z = q^|V| directly when |v| < 1e-12. Uniform coupling only.
double partition_via_tutte(const Multigraph& g, const PottsParams& p,
                           const EngineOptions& opt = {});

/// Edge-weighted partition function Z(G;q,v_e) = sum_A q^k(A) prod v_e as
/// dense coefficients of q^0..q^|V|. Two routes: explicit subset
/// enumeration (2^|E| bounded) and weighted deletion-contraction.
std::vector<double> edge_weighted_qcoeffs_subsets(const Multigraph& g,
                                                  const std::vector<double>& v_e,
                                                  int max_edges = 22);
std::vector<double> edge_weighted_qcoeffs_recursive(const Multigraph& g,
                                                    const std::vector<double>& v_e,
                                                    const EngineOptions& opt = {});
double partition_edge_weighted(const Multigraph& g, double q, const std::vector<double>& v_e,
                               const EngineOptions& opt = {});

/// Boltzmann probability exp(-beta h(state)) / Z. Independent of the
/// h1/h2 choice. The overload without log_z enumerates states when
/// q^|V| fits the bound and falls back to the Tutte route otherwise.
double state_probability(const Multigraph& g, const SpinState& state, const PottsParams& p,
                         std::uint64_t max_states = kDefaultStateBound);
double state_probability(const Multigraph& g, const SpinState& state, const PottsParams& p,
                         double log_z);

/// Zero-temperature antiferromagnet check: Z(G;q,-1), the chromatic value
/// C(G;q), and (-1)^(|V|-k) q^k t(G;1-q,0) computed independently; all
/// three must agree exactly.
struct ChromaticConsistencyReport {
    BigInt via_partition;
    BigInt via_chromatic;
    BigInt via_tutte;
    bool agree = false;
};
ChromaticConsistencyReport chromatic_consistency(const Multigraph& g, int q,
                                                 const EngineOptions& opt = {});

}  // namespace pottslab

#endif
