#ifndef POTTSLAB_MONTECARLO_HPP
#define POTTSLAB_MONTECARLO_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "pottslab/multigraph.hpp"
#include "pottslab/potts.hpp"

namespace pottslab {

// The chain RNG is pinned: mt19937_64 driven through the two samplers below,
// with per-chain streams derived by splitmix64. Trajectory determinism for a
// fixed (seed, config, build) is part of the external contract.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t chain_seed(std::uint64_t seed, int chain_index) {
    return splitmix64(seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(chain_index));
}

/// Unbiased integer in [0, n) by rejection sampling.
inline std::uint64_t rng_below(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
        std::uint64_t r = rng();
        if (r >= threshold) return r % n;
    }
}

/// Uniform double in [0, 1) with 53 random bits.
inline double rng_unit(std::mt19937_64& rng) {
    return static_cast<double>(std::mt19937_64::result_type(rng()) >> 11) * 0x1.0p-53;
}

enum class Algorithm { metropolis, heatbath, wolff };
enum class InitKind { random, uniform, given };

struct SimConfig {
    Multigraph graph;
    int q = 2;
    double J = 1.0;
    std::optional<std::vector<double>> edge_J;
    double H = 0.0;      // external field, coupled to spins equal to field_spin
    int field_spin = 0;  // the designated spin value s*
    double T = 1.0;
    double kappa = 1.0;
    Hamiltonian energy_convention = Hamiltonian::h1;  // affects reported energies only
    Algorithm algorithm = Algorithm::metropolis;
    long sweeps = 10000;
    long equilibration_sweeps = 1000;
    long measure_every = 1;
    std::uint64_t seed = 1;
    InitKind init = InitKind::random;
    int init_spin = 0;
    SpinState init_state;
    bool random_visit_order = false;  // default: fixed scan order, reproducible

    double beta() const { return std::isinf(T) ? 0.0 : 1.0 / (kappa * T); }
    void validate() const;
};

struct Observables {
    double mean_energy = 0.0;
    double energy_std_error = 0.0;           // binning, 16 bins
    double specific_heat_estimate = 0.0;     // (<E^2>-<E>^2)/(kappa T^2)
    double order_parameter = 0.0;            // mean of (q max_frac - 1)/(q - 1)
    double integrated_autocorrelation_time = 0.0;  // in units of measurements
    long samples_used = 0;
    bool binning_ok = false;  // false: fewer than 16 samples, errors are partial
};

struct RunResult {
    Observables observables;
    std::vector<long> sample_sweeps;
    std::vector<double> energy_series;  // configured convention, field included
    std::vector<double> order_series;
    SpinState final_state;
};

/// One full pass of |V| single-site proposals in scan order; each proposal
/// picks a uniformly random different spin, energy deltas come from the
/// incident edges only.
void metropolis_sweep(SpinState& state, const SimConfig& cfg, std::mt19937_64& rng);

/// Per visited vertex, resample the spin from the exact conditional
/// Boltzmann distribution given its neighbors.
void heatbath_sweep(SpinState& state, const SimConfig& cfg, std::mt19937_64& rng);

/// One cluster update: grow from a random seed through equal-spin edges,
/// each admitted independently with probability 1 - exp(-K), then assign
/// the cluster a uniformly random different spin. Requires uniform J > 0
/// and H = 0.
void wolff_step(SpinState& state, const SimConfig& cfg, std::mt19937_64& rng);

/// Equilibrate, then sample every measure_every sweeps (a Wolff "sweep" is
/// one cluster update). Incrementally tracked energy is cross-checked
/// against a from-scratch recomputation every 1000 sweeps.
RunResult run_simulation(const SimConfig& cfg);

/// Independent restarts; chain i draws its stream from chain_seed(seed, i).
std::vector<RunResult> run_restarts(const SimConfig& cfg, int restarts);

struct AutocorrelationResult {
    std::vector<double> rho;      // normalized autocovariance, lags 0..max_lag
    double integrated_time;       // 1/2 + sum of rho over the chosen window
    int window;                   // self-consistent: smallest W >= 6 tau(W)
};

/// Requires series.size() > 4 * max_lag and a nonconstant series.
AutocorrelationResult autocorrelation(const std::vector<double>& series, int max_lag);

}  // namespace pottslab

#endif
