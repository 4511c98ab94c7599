#include "pottslab/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pottslab {

namespace {

struct Site {
    int neighbor;
    double coupling;
};

struct Lattice {
    int n = 0;
    int q = 0;
    double beta = 0.0;
    double H = 0.0;
    int field_spin = 0;
    bool uniform = true;
    double J = 1.0;
    std::vector<std::vector<Site>> adj;  // non-loop incident edges, parallels repeated
    int loop_count = 0;
    double loop_coupling_sum = 0.0;
    double total_coupling = 0.0;
    int edge_count = 0;

    static Lattice build(const SimConfig& cfg) {
        Lattice lat;
        const Multigraph& g = cfg.graph;
        lat.n = g.vertex_count();
        lat.q = cfg.q;
        lat.beta = cfg.beta();
        lat.H = cfg.H;
        lat.field_spin = cfg.field_spin;
        lat.uniform = !cfg.edge_J.has_value();
        lat.J = cfg.J;
        lat.adj.resize(static_cast<size_t>(lat.n));
        lat.edge_count = g.edge_count();
        for (int e = 0; e < g.edge_count(); ++e) {
            const double coupling = cfg.edge_J ? (*cfg.edge_J)[static_cast<size_t>(e)] : cfg.J;
            lat.total_coupling += coupling;
            const auto& [u, v] = g.edges()[e];
            if (u == v) {
                ++lat.loop_count;
                lat.loop_coupling_sum += coupling;
                continue;
            }
            lat.adj[static_cast<size_t>(u)].push_back({v, coupling});
            lat.adj[static_cast<size_t>(v)].push_back({u, coupling});
        }
        return lat;
    }
};

// Exact bookkeeping carried through a run. Uniform couplings track the
// equal-edge count as an integer, so the periodic cross-check is exact.
struct Counters {
    bool uniform = true;
    long eq_count = 0;
    double eq_sum = 0.0;
    long star_count = 0;
    std::vector<long> spin_counts;

    static Counters compute(const Lattice& lat, const SpinState& state) {
        Counters c;
        c.uniform = lat.uniform;
        c.spin_counts.assign(static_cast<size_t>(lat.q), 0);
        for (int v = 0; v < lat.n; ++v) {
            ++c.spin_counts[static_cast<size_t>(state[static_cast<size_t>(v)])];
            if (state[static_cast<size_t>(v)] == lat.field_spin) ++c.star_count;
            for (const Site& s : lat.adj[static_cast<size_t>(v)]) {
                if (s.neighbor < v) continue;  // count each non-loop edge once
                if (state[static_cast<size_t>(s.neighbor)] == state[static_cast<size_t>(v)]) {
                    ++c.eq_count;
                    c.eq_sum += s.coupling;
                }
            }
        }
        return c;
    }

    bool matches(const Counters& other, double tol) const {
        if (star_count != other.star_count || spin_counts != other.spin_counts) return false;
        if (uniform) return eq_count == other.eq_count;
        return std::abs(eq_sum - other.eq_sum) <= tol * (1.0 + std::abs(other.eq_sum));
    }
};

double reported_energy(const Lattice& lat, const Counters& c, Hamiltonian ham) {
    const double eq_total =
        (lat.uniform ? lat.J * static_cast<double>(c.eq_count) : c.eq_sum) + lat.loop_coupling_sum;
    const double interaction = ham == Hamiltonian::h1 ? -eq_total : lat.total_coupling - eq_total;
    return interaction - lat.H * static_cast<double>(c.star_count);
}

void apply_single_flip(const Lattice& lat, const SpinState& state, Counters* c, int vertex,
                       int old_spin, int new_spin) {
    if (c == nullptr) return;
    for (const Site& s : lat.adj[static_cast<size_t>(vertex)]) {
        const int sj = state[static_cast<size_t>(s.neighbor)];
        if (sj == old_spin) {
            --c->eq_count;
            c->eq_sum -= s.coupling;
        }
        if (sj == new_spin) {
            ++c->eq_count;
            c->eq_sum += s.coupling;
        }
    }
    if (old_spin == lat.field_spin) --c->star_count;
    if (new_spin == lat.field_spin) ++c->star_count;
    --c->spin_counts[static_cast<size_t>(old_spin)];
    ++c->spin_counts[static_cast<size_t>(new_spin)];
}

struct Scratch {
    std::vector<double> weights;      // heat-bath conditional weights
    std::vector<double> local;        // heat-bath per-spin coupling sums
    std::vector<int> order;           // visit order
    std::vector<int> cluster;         // Wolff
    std::vector<char> in_cluster;
    std::mt19937_64* order_rng = nullptr;

    void prepare(const Lattice& lat) {
        weights.assign(static_cast<size_t>(lat.q), 0.0);
        local.assign(static_cast<size_t>(lat.q), 0.0);
        order.resize(static_cast<size_t>(lat.n));
        for (int i = 0; i < lat.n; ++i) order[static_cast<size_t>(i)] = i;
        in_cluster.assign(static_cast<size_t>(lat.n), 0);
    }
};

void visit_order(const Lattice& lat, bool random_order, std::mt19937_64& rng, Scratch& s) {
    if (!random_order) return;
    for (int i = lat.n - 1; i > 0; --i) {
        int j = static_cast<int>(rng_below(rng, static_cast<std::uint64_t>(i) + 1));
        std::swap(s.order[static_cast<size_t>(i)], s.order[static_cast<size_t>(j)]);
    }
}

void metropolis_core(const Lattice& lat, SpinState& state, std::mt19937_64& rng, Counters* c,
                     bool random_order, Scratch& scratch) {
    visit_order(lat, random_order, rng, scratch);
    for (int idx = 0; idx < lat.n; ++idx) {
        const int i = scratch.order[static_cast<size_t>(idx)];
        const int s = state[static_cast<size_t>(i)];
        const int t = static_cast<int>((static_cast<std::uint64_t>(s) + 1 +
                                        rng_below(rng, static_cast<std::uint64_t>(lat.q) - 1)) %
                                       static_cast<std::uint64_t>(lat.q));
        double gain = 0.0, loss = 0.0;
        for (const Site& site : lat.adj[static_cast<size_t>(i)]) {
            const int sj = state[static_cast<size_t>(site.neighbor)];
            if (sj == t) gain += site.coupling;
            if (sj == s) loss += site.coupling;
        }
        double delta = -(gain - loss);
        delta += -lat.H * (static_cast<double>(t == lat.field_spin) -
                           static_cast<double>(s == lat.field_spin));
        bool accept = delta <= 0.0;
        if (!accept) accept = rng_unit(rng) < std::exp(-lat.beta * delta);
        if (accept) {
            apply_single_flip(lat, state, c, i, s, t);
            state[static_cast<size_t>(i)] = t;
        }
    }
}

void heatbath_core(const Lattice& lat, SpinState& state, std::mt19937_64& rng, Counters* c,
                   bool random_order, Scratch& scratch) {
    visit_order(lat, random_order, rng, scratch);
    for (int idx = 0; idx < lat.n; ++idx) {
        const int i = scratch.order[static_cast<size_t>(idx)];
        std::fill(scratch.local.begin(), scratch.local.end(), 0.0);
        for (const Site& site : lat.adj[static_cast<size_t>(i)])
            scratch.local[static_cast<size_t>(state[static_cast<size_t>(site.neighbor)])] +=
                site.coupling;
        double x_max = -std::numeric_limits<double>::infinity();
        for (int t = 0; t < lat.q; ++t) {
            double x = lat.beta * (scratch.local[static_cast<size_t>(t)] +
                                   lat.H * (t == lat.field_spin ? 1.0 : 0.0));
            scratch.weights[static_cast<size_t>(t)] = x;
            x_max = std::max(x_max, x);
        }
        double total = 0.0;
        for (int t = 0; t < lat.q; ++t) {
            double w = std::exp(scratch.weights[static_cast<size_t>(t)] - x_max);
            scratch.weights[static_cast<size_t>(t)] = w;
            total += w;
        }
        const double u = rng_unit(rng) * total;
        double cum = 0.0;
        int t = lat.q - 1;
        for (int candidate = 0; candidate < lat.q; ++candidate) {
            cum += scratch.weights[static_cast<size_t>(candidate)];
            if (u < cum) {
                t = candidate;
                break;
            }
        }
        const int s = state[static_cast<size_t>(i)];
        if (t != s) {
            apply_single_flip(lat, state, c, i, s, t);
            state[static_cast<size_t>(i)] = t;
        }
    }
}

void wolff_core(const Lattice& lat, SpinState& state, std::mt19937_64& rng, Counters* c,
                Scratch& scratch) {
    const double p_add = -std::expm1(-lat.beta * lat.J);
    const int seed_vertex = static_cast<int>(rng_below(rng, static_cast<std::uint64_t>(lat.n)));
    const int s = state[static_cast<size_t>(seed_vertex)];

    scratch.cluster.clear();
    scratch.cluster.push_back(seed_vertex);
    std::fill(scratch.in_cluster.begin(), scratch.in_cluster.end(), 0);
    scratch.in_cluster[static_cast<size_t>(seed_vertex)] = 1;
    for (size_t head = 0; head < scratch.cluster.size(); ++head) {
        const int u = scratch.cluster[head];
        for (const Site& site : lat.adj[static_cast<size_t>(u)]) {
            const int w = site.neighbor;
            if (scratch.in_cluster[static_cast<size_t>(w)]) continue;
            if (state[static_cast<size_t>(w)] != s) continue;
            if (rng_unit(rng) < p_add) {
                scratch.in_cluster[static_cast<size_t>(w)] = 1;
                scratch.cluster.push_back(w);
            }
        }
    }

    const int t = static_cast<int>((static_cast<std::uint64_t>(s) + 1 +
                                    rng_below(rng, static_cast<std::uint64_t>(lat.q) - 1)) %
                                   static_cast<std::uint64_t>(lat.q));
    if (c != nullptr) {
        // only boundary edges change their equality status
        for (int u : scratch.cluster) {
            for (const Site& site : lat.adj[static_cast<size_t>(u)]) {
                if (scratch.in_cluster[static_cast<size_t>(site.neighbor)]) continue;
                const int sj = state[static_cast<size_t>(site.neighbor)];
                if (sj == s) {
                    --c->eq_count;
                    c->eq_sum -= site.coupling;
                }
                if (sj == t) {
                    ++c->eq_count;
                    c->eq_sum += site.coupling;
                }
            }
        }
        const long size = static_cast<long>(scratch.cluster.size());
        c->spin_counts[static_cast<size_t>(s)] -= size;
        c->spin_counts[static_cast<size_t>(t)] += size;
        if (s == lat.field_spin) c->star_count -= size;
        if (t == lat.field_spin) c->star_count += size;
    }
    for (int u : scratch.cluster) state[static_cast<size_t>(u)] = t;
}

void one_sweep(const Lattice& lat, const SimConfig& cfg, SpinState& state, std::mt19937_64& rng,
               Counters* c, Scratch& scratch) {
    switch (cfg.algorithm) {
        case Algorithm::metropolis:
            metropolis_core(lat, state, rng, c, cfg.random_visit_order, scratch);
            break;
        case Algorithm::heatbath:
            heatbath_core(lat, state, rng, c, cfg.random_visit_order, scratch);
            break;
        case Algorithm::wolff:
            wolff_core(lat, state, rng, c, scratch);
            break;
    }
}

SpinState initial_state(const SimConfig& cfg, std::mt19937_64& rng) {
    const int n = cfg.graph.vertex_count();
    switch (cfg.init) {
        case InitKind::uniform:
            return SpinState(static_cast<size_t>(n), cfg.init_spin);
        case InitKind::given:
            return cfg.init_state;
        case InitKind::random:
        default: {
            SpinState s(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i)
                s[static_cast<size_t>(i)] =
                    static_cast<int>(rng_below(rng, static_cast<std::uint64_t>(cfg.q)));
            return s;
        }
    }
}

RunResult run_one(const SimConfig& cfg, std::uint64_t stream_seed) {
    cfg.validate();
    std::mt19937_64 rng(stream_seed);
    const Lattice lat = Lattice::build(cfg);
    SpinState state = initial_state(cfg, rng);
    Counters counters = Counters::compute(lat, state);
    Scratch scratch;
    scratch.prepare(lat);

    for (long s = 0; s < cfg.equilibration_sweeps; ++s)
        one_sweep(lat, cfg, state, rng, &counters, scratch);

    RunResult result;
    for (long sweep = 1; sweep <= cfg.sweeps; ++sweep) {
        one_sweep(lat, cfg, state, rng, &counters, scratch);
        if (sweep % 1000 == 0) {
            Counters fresh = Counters::compute(lat, state);
            if (!counters.matches(fresh, 1e-9))
                throw std::logic_error("incremental energy bookkeeping diverged");
            counters = fresh;
        }
        if (sweep % cfg.measure_every == 0) {
            result.sample_sweeps.push_back(sweep);
            result.energy_series.push_back(
                reported_energy(lat, counters, cfg.energy_convention));
            const long max_count =
                *std::max_element(counters.spin_counts.begin(), counters.spin_counts.end());
            const double max_frac = static_cast<double>(max_count) / static_cast<double>(lat.n);
            result.order_series.push_back((cfg.q * max_frac - 1.0) / (cfg.q - 1.0));
        }
    }
    result.final_state = state;

    Observables& obs = result.observables;
    const long n_samples = static_cast<long>(result.energy_series.size());
    obs.samples_used = n_samples;
    if (n_samples == 0) return result;

    double mean = 0.0;
    for (double e : result.energy_series) mean += e;
    mean /= static_cast<double>(n_samples);
    obs.mean_energy = mean;
    double var = 0.0;
    for (double e : result.energy_series) var += (e - mean) * (e - mean);
    var /= static_cast<double>(n_samples);
    obs.specific_heat_estimate = var / (cfg.kappa * cfg.T * cfg.T);

    double order_mean = 0.0;
    for (double m : result.order_series) order_mean += m;
    obs.order_parameter = order_mean / static_cast<double>(n_samples);

    constexpr long kBins = 16;
    if (n_samples >= kBins) {
        obs.binning_ok = true;
        const long bin_size = n_samples / kBins;
        double bin_means[kBins];
        for (long b = 0; b < kBins; ++b) {
            double acc = 0.0;
            for (long i = b * bin_size; i < (b + 1) * bin_size; ++i)
                acc += result.energy_series[static_cast<size_t>(i)];
            bin_means[b] = acc / static_cast<double>(bin_size);
        }
        double bm = 0.0;
        for (double m : bin_means) bm += m;
        bm /= kBins;
        double bvar = 0.0;
        for (double m : bin_means) bvar += (m - bm) * (m - bm);
        obs.energy_std_error = std::sqrt(bvar / (kBins * (kBins - 1.0)));
    } else {
        // too few samples for binning; flag and fall back to the naive error
        obs.binning_ok = false;
        obs.energy_std_error =
            n_samples > 1 ? std::sqrt(var / static_cast<double>(n_samples - 1)) : 0.0;
    }

    const int max_lag = static_cast<int>(std::min<long>(n_samples / 5, 1000));
    if (max_lag >= 1 && n_samples > 4L * max_lag) {
        try {
            obs.integrated_autocorrelation_time =
                autocorrelation(result.energy_series, max_lag).integrated_time;
        } catch (const std::domain_error&) {
            obs.integrated_autocorrelation_time = std::numeric_limits<double>::quiet_NaN();
        }
    } else {
        obs.integrated_autocorrelation_time = std::numeric_limits<double>::quiet_NaN();
    }
    return result;
}

}  // namespace

void SimConfig::validate() const {
    if (graph.vertex_count() < 1) throw std::invalid_argument("simulation graph is empty");
    if (q < 2) throw std::invalid_argument("simulation requires q >= 2");
    if (!(T > 0)) throw std::invalid_argument("temperature must be positive");
    if (kappa <= 0) throw std::invalid_argument("kappa must be positive");
    if (sweeps < 1) throw std::invalid_argument("sweeps must be >= 1");
    if (equilibration_sweeps < 0) throw std::invalid_argument("equilibration must be >= 0");
    if (measure_every < 1) throw std::invalid_argument("measure_every must be >= 1");
    if (field_spin < 0 || field_spin >= q)
        throw std::invalid_argument("field spin value out of range");
    if (edge_J && static_cast<int>(edge_J->size()) != graph.edge_count())
        throw std::invalid_argument("per-edge coupling list must match the edge count");
    if (init == InitKind::uniform && (init_spin < 0 || init_spin >= q))
        throw std::invalid_argument("initial spin value out of range");
    if (init == InitKind::given) validate_state(graph, init_state, q);
    if (algorithm == Algorithm::wolff) {
        if (edge_J) throw std::invalid_argument("Wolff requires a uniform coupling");
        if (J <= 0) throw std::invalid_argument("Wolff requires ferromagnetic J > 0");
        if (H != 0.0) throw std::invalid_argument("Wolff requires zero external field");
    }
}

void metropolis_sweep(SpinState& state, const SimConfig& cfg, std::mt19937_64& rng) {
    cfg.validate();
    validate_state(cfg.graph, state, cfg.q);
    const Lattice lat = Lattice::build(cfg);
    Scratch scratch;
    scratch.prepare(lat);
    metropolis_core(lat, state, rng, nullptr, cfg.random_visit_order, scratch);
}

void heatbath_sweep(SpinState& state, const SimConfig& cfg, std::mt19937_64& rng) {
    cfg.validate();
    validate_state(cfg.graph, state, cfg.q);
    const Lattice lat = Lattice::build(cfg);
    Scratch scratch;
    scratch.prepare(lat);
    heatbath_core(lat, state, rng, nullptr, cfg.random_visit_order, scratch);
}

void wolff_step(SpinState& state, const SimConfig& cfg, std::mt19937_64& rng) {
    cfg.validate();
    if (cfg.algorithm != Algorithm::wolff) {
        SimConfig check = cfg;
        check.algorithm = Algorithm::wolff;
        check.validate();
    }
    validate_state(cfg.graph, state, cfg.q);
    const Lattice lat = Lattice::build(cfg);
    Scratch scratch;
    scratch.prepare(lat);
    wolff_core(lat, state, rng, nullptr, scratch);
}

RunResult run_simulation(const SimConfig& cfg) { return run_one(cfg, chain_seed(cfg.seed, 0)); }

std::vector<RunResult> run_restarts(const SimConfig& cfg, int restarts) {
    if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
    std::vector<RunResult> out;
    out.reserve(static_cast<size_t>(restarts));
    for (int i = 0; i < restarts; ++i) out.push_back(run_one(cfg, chain_seed(cfg.seed, i)));
    return out;
}

AutocorrelationResult autocorrelation(const std::vector<double>& series, int max_lag) {
    const long n = static_cast<long>(series.size());
    if (max_lag < 1) throw std::invalid_argument("max_lag must be >= 1");
    if (n <= 4L * max_lag)
        throw std::invalid_argument("series length must exceed 4 * max_lag");
    double mean = 0.0;
    for (double x : series) mean += x;
    mean /= static_cast<double>(n);
    double c0 = 0.0;
    for (double x : series) c0 += (x - mean) * (x - mean);
    c0 /= static_cast<double>(n);
    if (c0 == 0.0) throw std::domain_error("autocorrelation of a constant series is undefined");

    AutocorrelationResult out;
    out.rho.resize(static_cast<size_t>(max_lag) + 1);
    out.rho[0] = 1.0;
    for (int t = 1; t <= max_lag; ++t) {
        double c = 0.0;
        for (long i = 0; i + t < n; ++i)
            c += (series[static_cast<size_t>(i)] - mean) *
                 (series[static_cast<size_t>(i + t)] - mean);
        c /= static_cast<double>(n - t);
        out.rho[static_cast<size_t>(t)] = c / c0;
    }

    // self-consistent window: smallest W with W >= 6 tau(W)
    double tau = 0.5;
    int window = max_lag;
    for (int w = 1; w <= max_lag; ++w) {
        tau += out.rho[static_cast<size_t>(w)];
        if (static_cast<double>(w) >= 6.0 * tau) {
            window = w;
            break;
        }
    }
    out.integrated_time = tau;
    out.window = window;
    return out;
}

}  // namespace pottslab
