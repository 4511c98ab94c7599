#ifndef POTTSLAB_THERMO_HPP
#define POTTSLAB_THERMO_HPP

#include <string>
#include <utility>
#include <vector>

#include "pottslab/multigraph.hpp"
#include "pottslab/potts.hpp"

namespace pottslab {

/// Exact thermodynamic observables at one temperature.
///   U = -d ln Z / d beta          internal energy
///   C = dU/dT = kappa beta^2 d^2 ln Z / d beta^2
///   S = -kappa beta dlnZ/dbeta + kappa ln Z
///   F = -kappa T ln Z = U - T S
///   f = ln(P1) / |V|              reduced free energy per vertex
/// All derivatives are taken symbolically on the exact polynomial Z(G;q,v)
/// through the chain rule dv/dbeta = J(v+1); numerical differentiation
/// exists only as a test oracle.
struct ThermoPoint {
    double T;
    double U;
    double C;
    double S;
    double F;
    double f;
};

/// Holds Z(G;q,v) at fixed integer q together with its v-derivatives so a
/// temperature sweep differentiates once and evaluates many times.
class ThermoModel {
public:
    ThermoModel(const Multigraph& g, int q, const EngineOptions& opt = {});

    /// p.q must match the model's q; p.T may be +infinity (beta = 0).
    /// Throws std::domain_error when Z is not positive and finite at the
    /// evaluation point (reported, never clamped).
    ThermoPoint at(const PottsParams& p) const;

    const BivarPoly& partition_poly() const { return z_; }

private:
    int q_;
    int vertices_;
    int edges_;
    BivarPoly z_, zv_, zvv_;  // Z and its first two v-derivatives
};

ThermoPoint observables(const Multigraph& g, const PottsParams& p, const EngineOptions& opt = {});

/// One exact ThermoPoint per grid temperature (ascending positive grid).
/// Points are independent; `threads` > 1 computes them in parallel with
/// order-preserving output.
std::vector<ThermoPoint> temperature_sweep(const Multigraph& g, const PottsParams& p,
                                           const std::vector<double>& t_grid,
                                           const EngineOptions& opt = {}, int threads = 1);

/// CSV with header "T,U,C,S,F,f", one row per point, 12 significant digits,
/// LF endings.
std::string sweep_csv(const std::vector<ThermoPoint>& points);

/// Ferromagnetic square-lattice reference kappa T_c = J / ln(1 + sqrt(q)).
double critical_temperature_reference(double q, double J, double kappa);

/// ln C(grid(n,n,free); q) / n^2 for each requested n. A graph with no
/// proper q-coloring reports -infinity.
std::vector<std::pair<int, double>> ground_state_entropy_sequence(
    int q, const std::vector<int>& sizes, const EngineOptions& opt = {});

/// Residual zero-temperature disorder reference for q = 3 on the square
/// lattice: ln W with W = (4/3)^(3/2).
double ground_state_entropy_reference_q3();

}  // namespace pottslab

#endif
