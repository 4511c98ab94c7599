#ifndef POTTSLAB_ZEROS_HPP
#define POTTSLAB_ZEROS_HPP

#include <complex>
#include <stdexcept>
#include <vector>

#include "pottslab/dc_engine.hpp"
#include "pottslab/multigraph.hpp"

namespace pottslab {

/// Thrown when a zero polynomial is handed to a root finder (for example
/// the chromatic polynomial of a graph with a loop).
class ZeroPolynomialError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// All complex roots of one polynomial. residuals[i] is the backward-error
/// style measure |p(root_i)| / sum_j |a_j| |root_i|^j; a correct root is a
/// few ulps, so the default acceptance tolerance is 1e-10.
struct RootSet {
    std::vector<std::complex<double>> roots;  // degree entries, multiplicity included
    std::vector<double> residuals;
    double tolerance = 0.0;
    int iterations = 0;
    bool converged = false;  // false: iteration cap hit; best iterates returned
};

/// Simultaneous-iteration (Aberth-Ehrlich) all-roots solver with Newton
/// polishing. Deterministic: roots start on the Cauchy-bound circle at
/// fixed angular offsets. `coeffs` is the dense ascending coefficient list;
/// the leading coefficient must be nonzero and the degree at least 1.
RootSet find_roots(const std::vector<std::complex<double>>& coeffs, double tol = 1e-10,
                   int max_iterations = 1000, int polish_steps = 20);
RootSet find_roots(const std::vector<double>& coeffs, double tol = 1e-10,
                   int max_iterations = 1000, int polish_steps = 20);

/// Zeros of C(G;x) in the complex q-plane.
RootSet chromatic_zeros(const Multigraph& g, const EngineOptions& opt = {});

/// Zeros of Z(G;q0,v) in the complex v-plane for fixed q0. Real integer q0
/// specializes the exact polynomial; other values go through the bivariate
/// polynomial.
RootSet partition_v_zeros(const Multigraph& g, std::complex<double> q0,
                          const EngineOptions& opt = {});

/// Zeros of Z(G;q,v0) in the complex q-plane for fixed v0.
RootSet partition_q_zeros(const Multigraph& g, std::complex<double> v0,
                          const EngineOptions& opt = {});

/// Distance from each root to the union of the two square-lattice Ising
/// reference circles |v| = sqrt(2) and |v+2| = sqrt(2). Diagnostic only:
/// the circle picture is an infinite-volume statement.
std::vector<double> fisher_circle_distance(const std::vector<std::complex<double>>& roots);

}  // namespace pottslab

#endif
