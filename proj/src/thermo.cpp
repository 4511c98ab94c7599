#include "pottslab/thermo.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "pottslab/format.hpp"
#include "pottslab/tutte.hpp"

namespace pottslab {

namespace {

double log_bigint(const BigInt& x) {
    if (x <= 0) throw std::domain_error("log of a nonpositive integer");
    const unsigned bits = boost::multiprecision::msb(x);
    if (bits <= 52) return std::log(x.convert_to<double>());
    BigInt shifted = x >> (bits - 52);
    return std::log(shifted.convert_to<double>()) +
           static_cast<double>(bits - 52) * std::log(2.0);
}

}  // namespace

ThermoModel::ThermoModel(const Multigraph& g, int q, const EngineOptions& opt)
    : q_(q), vertices_(g.vertex_count()), edges_(g.edge_count()) {
    if (q < 1) throw std::invalid_argument("q must be >= 1");
    z_ = partition_polynomial_fixed_q(g, BigInt(q), opt);
    zv_ = z_.partial(1);
    zvv_ = zv_.partial(1);
}

ThermoPoint ThermoModel::at(const PottsParams& p) const {
    if (p.q != q_) throw std::invalid_argument("params.q does not match the model");
    if (p.edge_J) throw std::invalid_argument("observables require a uniform coupling");
    if (p.kappa <= 0) throw std::invalid_argument("kappa must be positive");
    if (!(p.T > 0)) throw std::invalid_argument("temperature must be positive");

    const double q = static_cast<double>(q_);
    const double beta = p.beta();
    const double v = p.v();
    const double z = z_.eval_real(q, v);
    if (!(z > 0) || !std::isfinite(z))
        throw std::domain_error("partition function is not positive and finite at this point");
    const double zp = zv_.eval_real(q, v);
    const double zpp = zvv_.eval_real(q, v);

    const double dv = p.J * (v + 1.0);         // dv/dbeta
    const double d2v = p.J * dv;               // d^2 v / d beta^2
    const double dlnz = zp / z * dv;
    const double d2lnz = (zpp * dv * dv + zp * d2v) / z - dlnz * dlnz;

    const double log_z1 = std::log(z);
    const bool shifted = p.ham == Hamiltonian::h2;
    ThermoPoint out;
    out.T = p.T;
    out.U = -dlnz + (shifted ? p.J * edges_ : 0.0);
    out.C = p.kappa * beta * beta * d2lnz;
    const double log_z_conv = log_z1 - (shifted ? p.K() * edges_ : 0.0);
    out.S = p.kappa * (beta * out.U + log_z_conv);
    out.F = std::isinf(p.T) ? -std::numeric_limits<double>::infinity()
                            : -p.kappa * p.T * log_z_conv;
    out.f = log_z1 / vertices_;
    return out;
}

ThermoPoint observables(const Multigraph& g, const PottsParams& p, const EngineOptions& opt) {
    return ThermoModel(g, p.q, opt).at(p);
}

std::vector<ThermoPoint> temperature_sweep(const Multigraph& g, const PottsParams& p,
                                           const std::vector<double>& t_grid,
                                           const EngineOptions& opt, int threads) {
    for (size_t i = 0; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > 0)) throw std::invalid_argument("grid temperatures must be positive");
        if (i > 0 && t_grid[i] <= t_grid[i - 1])
            throw std::invalid_argument("temperature grid must be strictly ascending");
    }
    ThermoModel model(g, p.q, opt);
    std::vector<ThermoPoint> out(t_grid.size());
    auto compute = [&](size_t i) {
        PottsParams pi = p;
        pi.T = t_grid[i];
        out[i] = model.at(pi);
    };
    if (threads <= 1 || t_grid.size() < 2) {
        for (size_t i = 0; i < t_grid.size(); ++i) compute(i);
    } else {
        std::vector<std::future<void>> futures;
        const size_t nthreads = std::min<size_t>(static_cast<size_t>(threads), t_grid.size());
        for (size_t w = 0; w < nthreads; ++w)
            futures.push_back(std::async(std::launch::async, [&, w] {
                for (size_t i = w; i < t_grid.size(); i += nthreads) compute(i);
            }));
        for (auto& f : futures) f.get();
    }
    return out;
}

std::string sweep_csv(const std::vector<ThermoPoint>& points) {
    std::ostringstream out;
    out << "T,U,C,S,F,f\n";
    for (const auto& pt : points)
        out << format_g12(pt.T) << ',' << format_g12(pt.U) << ',' << format_g12(pt.C) << ','
            << format_g12(pt.S) << ',' << format_g12(pt.F) << ',' << format_g12(pt.f) << '\n';
    return out.str();
}

double critical_temperature_reference(double q, double J, double kappa) {
    if (q < 1) throw std::invalid_argument("the ferromagnetic reference requires q >= 1");
    if (J <= 0) throw std::invalid_argument("the critical-temperature formula is ferromagnetic-only (J > 0)");
    if (kappa <= 0) throw std::invalid_argument("kappa must be positive");
    return J / (kappa * std::log1p(std::sqrt(q)));
}

std::vector<std::pair<int, double>> ground_state_entropy_sequence(int q,
                                                                  const std::vector<int>& sizes,
                                                                  const EngineOptions& opt) {
    if (q < 0) throw std::invalid_argument("q must be nonnegative");
    std::vector<std::pair<int, double>> out;
    out.reserve(sizes.size());
    for (int n : sizes) {
        if (n < 1) throw std::invalid_argument("grid sizes must be >= 1");
        Multigraph g = grid_graph(n, n, Boundary::free);
        auto coeffs = chromatic(g, opt).univariate(1, BigInt(0));
        BigInt count = 0;
        for (size_t i = coeffs.size(); i-- > 0;) count = count * q + coeffs[i];
        double value = count == 0 ? -std::numeric_limits<double>::infinity()
                                  : log_bigint(count) / (static_cast<double>(n) * n);
        out.emplace_back(n, value);
    }
    return out;
}

double ground_state_entropy_reference_q3() { return 1.5 * std::log(4.0 / 3.0); }

}  // namespace pottslab
