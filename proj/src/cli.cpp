#include "pottslab/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pottslab/format.hpp"
#include "pottslab/montecarlo.hpp"
#include "pottslab/potts.hpp"
#include "pottslab/thermo.hpp"
#include "pottslab/tutte.hpp"
#include "pottslab/zeros.hpp"

namespace pottslab {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kToolVersion = "1.0.0";

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string digest(const std::string& data) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                  static_cast<unsigned long long>(fnv1a64(data)));
    return buf;
}

// SOURCE_DATE_EPOCH makes the timestamp (and so the whole output file)
// reproducible.
std::string timestamp_utc() {
    std::time_t t;
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"))
        t = static_cast<std::time_t>(std::atoll(epoch));
    else
        t = std::time(nullptr);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// round-trip through %.12g so emitted JSON numbers carry 12 significant digits
json json_num12(double x) {
    if (!std::isfinite(x)) return json(format_g12(x));  // "inf"/"nan" as strings
    return json(std::strtod(format_g12(x).c_str(), nullptr));
}

json make_manifest(const std::string& subcommand, json parameters, const std::string& input) {
    json m;
    m["subcommand"] = subcommand;
    m["parameters"] = std::move(parameters);
    m["input_digest"] = digest(input);
    m["tool_version"] = kToolVersion;
    m["timestamp"] = timestamp_utc();
    return m;
}

void write_text_output(const std::string& path, const std::string& content,
                       const json& manifest) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write output file: " + path);
    out << content;
    std::ofstream mout(path + ".manifest.json", std::ios::binary);
    if (!mout) throw std::runtime_error("cannot write manifest for: " + path);
    mout << manifest.dump(2) << '\n';
}

void write_json_output(const std::string& path, json payload, const json& manifest) {
    payload["manifest"] = manifest;
    std::string text = payload.dump(2) + "\n";
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write output file: " + path);
    out << text;
}

json poly_json(const BivarPoly& p) { return json::parse(p.to_json()); }

struct GraphInput {
    Multigraph graph;
    std::string raw;
};

GraphInput load_graph(const std::string& path) {
    GraphInput in;
    in.raw = read_file(path);
    in.graph = parse_edge_list(in.raw);
    return in;
}

std::vector<double> load_weights(const std::string& path, const Multigraph& g, double beta) {
    // per-edge couplings: one "e_index J_e" pair per line
    std::istringstream in(read_file(path));
    std::vector<double> coupling(static_cast<size_t>(g.edge_count()), 0.0);
    std::vector<bool> seen(static_cast<size_t>(g.edge_count()), false);
    long long e;
    double j;
    while (in >> e >> j) {
        if (e < 0 || e >= g.edge_count())
            throw std::invalid_argument("weights file: edge index out of range");
        if (seen[static_cast<size_t>(e)])
            throw std::invalid_argument("weights file: duplicate edge index");
        seen[static_cast<size_t>(e)] = true;
        coupling[static_cast<size_t>(e)] = j;
    }
    if (!in.eof()) throw std::invalid_argument("weights file: malformed line");
    for (bool s : seen)
        if (!s) throw std::invalid_argument("weights file: missing edge index");
    (void)beta;
    return coupling;
}

double resolve_temperature(bool has_T, double T, bool has_K, double K, double J, double kappa) {
    if (has_T && has_K) throw std::invalid_argument("give either --T or --K, not both");
    if (has_K) {
        if (K == 0.0) return std::numeric_limits<double>::infinity();
        double T_from_K = J / (kappa * K);
        if (!(T_from_K > 0))
            throw std::invalid_argument("--K must have the same sign as J");
        return T_from_K;
    }
    if (!has_T) throw std::invalid_argument("one of --T or --K is required");
    return T;
}

// ---------------------------------------------------------------------------
// subcommand state
// ---------------------------------------------------------------------------

struct CommonNumbers {
    double q = 2.0;
    double J = 1.0;
    double kappa = 1.0;
    double T = 0.0;
    double K = 0.0;
    std::string hamiltonian = "h1";

    Hamiltonian ham() const { return hamiltonian == "h2" ? Hamiltonian::h2 : Hamiltonian::h1; }
    int int_q(const char* what) const {
        if (q < 1 || q != std::nearbyint(q))
            throw std::invalid_argument(std::string(what) + " requires a positive integer q");
        return static_cast<int>(q);
    }
};

EngineOptions engine_options(int max_edges_flag, bool no_cache) {
    EngineOptions opt = EngineOptions::from_env();
    if (max_edges_flag > 0) opt.max_edges = max_edges_flag;
    if (no_cache) opt.use_cache = false;
    return opt;
}

void setup_graph_gen(CLI::App& app) {
    auto* graph = app.add_subcommand("graph", "multigraph utilities");
    auto* gen = graph->add_subcommand("gen", "generate a named graph as an edge list");
    graph->require_subcommand(1);

    auto kind = std::make_shared<std::string>();
    auto n = std::make_shared<int>(0);
    auto rows = std::make_shared<int>(0);
    auto cols = std::make_shared<int>(0);
    auto boundary = std::make_shared<std::string>("free");
    auto out_path = std::make_shared<std::string>();

    gen->add_option("--kind", *kind, "cycle | path | complete | grid")
        ->required()
        ->check(CLI::IsMember({"cycle", "path", "complete", "grid"}));
    gen->add_option("--n", *n, "size for cycle/path/complete");
    gen->add_option("--rows", *rows, "grid rows");
    gen->add_option("--cols", *cols, "grid columns");
    gen->add_option("--boundary", *boundary, "grid boundary: free | torus (default free)")
        ->check(CLI::IsMember({"free", "torus"}));
    gen->add_option("-o,--output", *out_path, "output file (default stdout)");

    gen->callback([=] {
        Multigraph g;
        json params;
        params["kind"] = *kind;
        if (*kind == "grid") {
            if (*rows < 1 || *cols < 1)
                throw std::invalid_argument("grid generation needs --rows and --cols");
            Boundary b = *boundary == "torus" ? Boundary::torus : Boundary::free;
            g = grid_graph(*rows, *cols, b);
            params["rows"] = *rows;
            params["cols"] = *cols;
            params["boundary"] = *boundary;
        } else {
            if (*n < 1) throw std::invalid_argument("--n is required and must be >= 1");
            params["n"] = *n;
            if (*kind == "cycle") g = cycle_graph(*n);
            if (*kind == "path") g = path_graph(*n);
            if (*kind == "complete") g = complete_graph(*n);
        }
        write_text_output(*out_path, serialize(g), make_manifest("graph gen", params, ""));
    });
}

void setup_polynomial_command(CLI::App& app, const std::string& name, const std::string& help) {
    auto* cmd = app.add_subcommand(name, help);
    auto input = std::make_shared<std::string>();
    auto out_path = std::make_shared<std::string>();
    auto max_edges = std::make_shared<int>(0);
    auto no_cache = std::make_shared<bool>(false);

    cmd->add_option("graph", *input, "edge-list file")->required();
    cmd->add_option("-o,--output", *out_path, "output file (default stdout)");
    cmd->add_option("--max-edges", *max_edges, "override the edge ceiling");
    cmd->add_flag("--no-cache", *no_cache, "disable isomorphism memoization");

    cmd->callback([=, &app] {
        (void)app;
        GraphInput in = load_graph(*input);
        EngineOptions opt = engine_options(*max_edges, *no_cache);
        BivarPoly p;
        if (name == "tutte")
            p = tutte(in.graph, opt);
        else
            p = chromatic(in.graph, opt);
        json params;
        params["graph"] = *input;
        params["max_edges"] = opt.max_edges;
        params["cache"] = opt.use_cache;
        write_json_output(*out_path, poly_json(p), make_manifest(name, params, in.raw));
    });
}

void setup_potts(CLI::App& app) {
    auto* potts = app.add_subcommand("potts", "partition functions");
    potts->require_subcommand(1);

    // potts eval
    auto* eval = potts->add_subcommand("eval", "evaluate the partition function numerically");
    auto input = std::make_shared<std::string>();
    auto nums = std::make_shared<CommonNumbers>();
    auto method = std::make_shared<std::string>("brute");
    auto weights_path = std::make_shared<std::string>();
    auto out_path = std::make_shared<std::string>();
    auto max_edges = std::make_shared<int>(0);

    eval->add_option("graph", *input, "edge-list file")->required();
    eval->add_option("--q", nums->q, "number of spin states")->required();
    eval->add_option("--J", nums->J, "uniform coupling (default 1)");
    eval->add_option("--kappa", nums->kappa, "Boltzmann-constant analogue (default 1)");
    auto* t_opt = eval->add_option("--T", nums->T, "temperature");
    auto* k_opt = eval->add_option("--K", nums->K, "dimensionless coupling K = J/(kappa T)");
    t_opt->excludes(k_opt);
    eval->add_option("--hamiltonian", nums->hamiltonian, "h1 | h2 (default h1)")
        ->check(CLI::IsMember({"h1", "h2"}));
    eval->add_option("--method", *method, "brute | tutte | poly (default brute)")
        ->check(CLI::IsMember({"brute", "tutte", "poly"}));
    eval->add_option("--weights", *weights_path, "per-edge couplings file: 'e_index J_e' lines");
    eval->add_option("-o,--output", *out_path, "output file (default stdout)");
    eval->add_option("--max-edges", *max_edges, "override the edge ceiling");

    eval->callback([=] {
        GraphInput in = load_graph(*input);
        double T = resolve_temperature(t_opt->count() > 0, nums->T, k_opt->count() > 0, nums->K,
                                       nums->J, nums->kappa);
        EngineOptions opt = engine_options(*max_edges, false);
        json params;
        params["graph"] = *input;
        params["q"] = nums->q;
        params["J"] = nums->J;
        params["kappa"] = nums->kappa;
        params["T"] = json_num12(T);
        params["hamiltonian"] = nums->hamiltonian;
        params["method"] = *method;

        double z;
        const double beta = std::isinf(T) ? 0.0 : 1.0 / (nums->kappa * T);
        if (!weights_path->empty()) {
            params["weights"] = *weights_path;
            std::vector<double> coupling = load_weights(*weights_path, in.graph, beta);
            if (*method == "brute") {
                PottsParams p;
                p.q = nums->int_q("state sums");
                p.J = nums->J;
                p.edge_J = coupling;
                p.kappa = nums->kappa;
                p.T = T;
                p.ham = nums->ham();
                z = partition_bruteforce(in.graph, p);
            } else if (*method == "poly") {
                std::vector<double> v_e(coupling.size());
                for (size_t i = 0; i < coupling.size(); ++i) v_e[i] = std::expm1(beta * coupling[i]);
                z = partition_edge_weighted(in.graph, nums->q, v_e, opt);
                if (nums->ham() == Hamiltonian::h2) {
                    double total = 0.0;
                    for (double c : coupling) total += c;
                    z *= std::exp(-beta * total);
                }
            } else {
                throw std::invalid_argument("--method tutte requires a uniform coupling");
            }
        } else if (*method == "poly") {
            BivarPoly zp = partition_polynomial(in.graph, opt);
            z = zp.eval_real(nums->q, std::expm1(beta * nums->J));
            if (nums->ham() == Hamiltonian::h2)
                z *= std::exp(-beta * nums->J * in.graph.edge_count());
        } else {
            PottsParams p;
            p.q = nums->int_q("this method");
            p.J = nums->J;
            p.kappa = nums->kappa;
            p.T = T;
            p.ham = nums->ham();
            z = *method == "brute" ? partition_bruteforce(in.graph, p)
                                   : partition_via_tutte(in.graph, p, opt);
        }
        json payload;
        payload["Z"] = json_num12(z);
        payload["log_Z"] = json_num12(std::log(z));
        write_json_output(*out_path, payload, make_manifest("potts eval", params, in.raw));
    });

    // potts poly
    auto* poly = potts->add_subcommand("poly", "exact partition polynomial Z(G;q,v)");
    auto pinput = std::make_shared<std::string>();
    auto pout = std::make_shared<std::string>();
    auto pmax = std::make_shared<int>(0);
    auto pnocache = std::make_shared<bool>(false);
    poly->add_option("graph", *pinput, "edge-list file")->required();
    poly->add_option("-o,--output", *pout, "output file (default stdout)");
    poly->add_option("--max-edges", *pmax, "override the edge ceiling");
    poly->add_flag("--no-cache", *pnocache, "disable isomorphism memoization");
    poly->callback([=] {
        GraphInput in = load_graph(*pinput);
        EngineOptions opt = engine_options(*pmax, *pnocache);
        BivarPoly z = partition_polynomial(in.graph, opt);
        json params;
        params["graph"] = *pinput;
        params["max_edges"] = opt.max_edges;
        write_json_output(*pout, poly_json(z), make_manifest("potts poly", params, in.raw));
    });
}

void setup_thermo(CLI::App& app) {
    auto* thermo = app.add_subcommand("thermo", "exact thermodynamic observables");
    thermo->require_subcommand(1);
    auto* sweep = thermo->add_subcommand("sweep", "temperature sweep CSV: T,U,C,S,F,f");

    auto input = std::make_shared<std::string>();
    auto nums = std::make_shared<CommonNumbers>();
    auto t_min = std::make_shared<double>(0.0);
    auto t_max = std::make_shared<double>(0.0);
    auto points = std::make_shared<int>(0);
    auto out_path = std::make_shared<std::string>();
    auto threads = std::make_shared<int>(1);
    auto max_edges = std::make_shared<int>(0);

    sweep->add_option("graph", *input, "edge-list file")->required();
    sweep->add_option("--q", nums->q, "number of spin states")->required();
    sweep->add_option("--J", nums->J, "uniform coupling (default 1)");
    sweep->add_option("--kappa", nums->kappa, "Boltzmann-constant analogue (default 1)");
    sweep->add_option("--hamiltonian", nums->hamiltonian, "h1 | h2 (default h1)")
        ->check(CLI::IsMember({"h1", "h2"}));
    sweep->add_option("--Tmin", *t_min, "lowest temperature")->required();
    sweep->add_option("--Tmax", *t_max, "highest temperature")->required();
    sweep->add_option("--points", *points, "number of grid points")->required();
    sweep->add_option("--threads", *threads, "worker threads (default 1)");
    sweep->add_option("-o,--output", *out_path, "output file (default stdout)");
    sweep->add_option("--max-edges", *max_edges, "override the edge ceiling");

    sweep->callback([=] {
        GraphInput in = load_graph(*input);
        if (*points < 1) throw std::invalid_argument("--points must be >= 1");
        if (!(*t_min > 0) || *t_max < *t_min)
            throw std::invalid_argument("need 0 < Tmin <= Tmax");
        std::vector<double> grid;
        grid.reserve(static_cast<size_t>(*points));
        for (int i = 0; i < *points; ++i)
            grid.push_back(*points == 1
                               ? *t_min
                               : *t_min + (*t_max - *t_min) * i / (*points - 1));
        PottsParams p;
        p.q = nums->int_q("thermodynamics");
        p.J = nums->J;
        p.kappa = nums->kappa;
        p.T = grid.front();
        p.ham = nums->ham();
        EngineOptions opt = engine_options(*max_edges, false);
        auto pts = temperature_sweep(in.graph, p, grid, opt, *threads);
        json params;
        params["graph"] = *input;
        params["q"] = p.q;
        params["J"] = p.J;
        params["kappa"] = p.kappa;
        params["hamiltonian"] = nums->hamiltonian;
        params["Tmin"] = *t_min;
        params["Tmax"] = *t_max;
        params["points"] = *points;
        write_text_output(*out_path, sweep_csv(pts),
                          make_manifest("thermo sweep", params, in.raw));
    });
}

void setup_zeros(CLI::App& app) {
    auto* cmd = app.add_subcommand("zeros", "complex zeros of partition/chromatic polynomials");
    auto input = std::make_shared<std::string>();
    auto plane = std::make_shared<std::string>();
    auto fixed_re = std::make_shared<double>(std::numeric_limits<double>::quiet_NaN());
    auto fixed_im = std::make_shared<double>(0.0);
    auto fisher = std::make_shared<bool>(false);
    auto out_path = std::make_shared<std::string>();
    auto max_edges = std::make_shared<int>(0);

    cmd->add_option("graph", *input, "edge-list file")->required();
    cmd->add_option("--plane", *plane, "q: zeros in q at fixed v | v: zeros in v at fixed q")
        ->required()
        ->check(CLI::IsMember({"q", "v"}));
    cmd->add_option("--fixed", *fixed_re,
                    "fixed value of the other variable (default: v=-1 for --plane q, q=2 for "
                    "--plane v)");
    cmd->add_option("--fixed-imag", *fixed_im, "imaginary part of the fixed value (default 0)");
    cmd->add_flag("--fisher", *fisher, "append distance to the |v|=sqrt2, |v+2|=sqrt2 circles");
    cmd->add_option("-o,--output", *out_path, "output file (default stdout)");
    cmd->add_option("--max-edges", *max_edges, "override the edge ceiling");

    cmd->callback([=] {
        GraphInput in = load_graph(*input);
        EngineOptions opt = engine_options(*max_edges, false);
        double re = *fixed_re;
        if (std::isnan(re)) re = *plane == "q" ? -1.0 : 2.0;
        std::complex<double> fixed(re, *fixed_im);
        RootSet roots = *plane == "q" ? partition_q_zeros(in.graph, fixed, opt)
                                      : partition_v_zeros(in.graph, fixed, opt);
        if (!roots.converged)
            std::cerr << "warning: root finder hit the iteration cap; residuals reported\n";
        std::ostringstream csv;
        csv << (*fisher ? "re,im,residual,fisher_distance\n" : "re,im,residual\n");
        std::vector<double> fd;
        if (*fisher) fd = fisher_circle_distance(roots.roots);
        for (size_t i = 0; i < roots.roots.size(); ++i) {
            csv << format_g12(roots.roots[i].real()) << ',' << format_g12(roots.roots[i].imag())
                << ',' << format_g12(roots.residuals[i]);
            if (*fisher) csv << ',' << format_g12(fd[i]);
            csv << '\n';
        }
        json params;
        params["graph"] = *input;
        params["plane"] = *plane;
        params["fixed"] = json_num12(re);
        params["fixed_imag"] = json_num12(*fixed_im);
        params["converged"] = roots.converged;
        write_text_output(*out_path, csv.str(), make_manifest("zeros", params, in.raw));
    });
}

void setup_simulate(CLI::App& app) {
    auto* cmd = app.add_subcommand("simulate", "Markov-chain Monte Carlo sampling");
    auto input = std::make_shared<std::string>();
    auto nums = std::make_shared<CommonNumbers>();
    auto algorithm = std::make_shared<std::string>("metropolis");
    auto H = std::make_shared<double>(0.0);
    auto field_spin = std::make_shared<int>(0);
    auto sweeps = std::make_shared<long>(10000);
    auto equil = std::make_shared<long>(1000);
    auto measure_every = std::make_shared<long>(1);
    auto seed = std::make_shared<std::uint64_t>(1);
    auto restarts = std::make_shared<int>(1);
    auto series_path = std::make_shared<std::string>();
    auto init = std::make_shared<std::string>("random");
    auto out_path = std::make_shared<std::string>();

    cmd->add_option("graph", *input, "edge-list file")->required();
    cmd->add_option("--algorithm", *algorithm, "metropolis | heatbath | wolff")
        ->check(CLI::IsMember({"metropolis", "heatbath", "wolff"}));
    cmd->add_option("--q", nums->q, "number of spin states")->required();
    cmd->add_option("--J", nums->J, "uniform coupling (default 1)");
    cmd->add_option("--kappa", nums->kappa, "Boltzmann-constant analogue (default 1)");
    auto* t_opt = cmd->add_option("--T", nums->T, "temperature");
    auto* k_opt = cmd->add_option("--K", nums->K, "dimensionless coupling K = J/(kappa T)");
    t_opt->excludes(k_opt);
    cmd->add_option("--hamiltonian", nums->hamiltonian, "h1 | h2 energy convention (default h1)")
        ->check(CLI::IsMember({"h1", "h2"}));
    cmd->add_option("--H", *H, "external field strength (default 0)");
    cmd->add_option("--field-spin", *field_spin, "spin value the field couples to (default 0)");
    cmd->add_option("--sweeps", *sweeps, "measured sweeps (default 10000)");
    cmd->add_option("--equil", *equil, "equilibration sweeps (default 1000)");
    cmd->add_option("--measure-every", *measure_every, "sweeps between samples (default 1)");
    cmd->add_option("--seed", *seed, "RNG seed (default 1)");
    cmd->add_option("--restarts", *restarts, "independent chains (default 1)");
    cmd->add_option("--emit-series", *series_path,
                    "CSV 'sweep,energy,order_parameter' for the first chain");
    cmd->add_option("--init", *init, "random | uniform:<spin> (default random)");
    cmd->add_option("-o,--output", *out_path, "output file (default stdout)");

    cmd->callback([=] {
        GraphInput in = load_graph(*input);
        SimConfig cfg;
        cfg.graph = in.graph;
        cfg.q = nums->int_q("simulation");
        cfg.J = nums->J;
        cfg.kappa = nums->kappa;
        cfg.T = resolve_temperature(t_opt->count() > 0, nums->T, k_opt->count() > 0, nums->K,
                                    nums->J, nums->kappa);
        cfg.energy_convention = nums->ham();
        cfg.H = *H;
        cfg.field_spin = *field_spin;
        cfg.sweeps = *sweeps;
        cfg.equilibration_sweeps = *equil;
        cfg.measure_every = *measure_every;
        cfg.seed = *seed;
        if (*algorithm == "metropolis") cfg.algorithm = Algorithm::metropolis;
        if (*algorithm == "heatbath") cfg.algorithm = Algorithm::heatbath;
        if (*algorithm == "wolff") cfg.algorithm = Algorithm::wolff;
        if (init->rfind("uniform:", 0) == 0) {
            cfg.init = InitKind::uniform;
            cfg.init_spin = std::atoi(init->c_str() + 8);
        } else if (*init != "random") {
            throw std::invalid_argument("--init must be random or uniform:<spin>");
        }

        auto results = run_restarts(cfg, *restarts);

        json payload;
        payload["chains"] = json::array();
        for (const auto& r : results) {
            const Observables& o = r.observables;
            json c;
            c["mean_energy"] = json_num12(o.mean_energy);
            c["energy_std_error"] = json_num12(o.energy_std_error);
            c["specific_heat_estimate"] = json_num12(o.specific_heat_estimate);
            c["order_parameter"] = json_num12(o.order_parameter);
            c["integrated_autocorrelation_time"] = json_num12(o.integrated_autocorrelation_time);
            c["samples_used"] = o.samples_used;
            c["binning_ok"] = o.binning_ok;
            payload["chains"].push_back(std::move(c));
        }
        // per-restart agreement: worst pairwise energy difference in units of
        // the combined standard error
        double worst = 0.0;
        for (size_t i = 0; i < results.size(); ++i)
            for (size_t j = i + 1; j < results.size(); ++j) {
                const auto& a = results[i].observables;
                const auto& b = results[j].observables;
                double err = std::hypot(a.energy_std_error, b.energy_std_error);
                if (err > 0)
                    worst = std::max(worst, std::abs(a.mean_energy - b.mean_energy) / err);
            }
        if (results.size() > 1) payload["restart_agreement_sigma"] = json_num12(worst);

        json params;
        params["graph"] = *input;
        params["algorithm"] = *algorithm;
        params["q"] = cfg.q;
        params["J"] = cfg.J;
        params["kappa"] = cfg.kappa;
        params["T"] = json_num12(cfg.T);
        params["H"] = cfg.H;
        params["hamiltonian"] = nums->hamiltonian;
        params["sweeps"] = cfg.sweeps;
        params["equil"] = cfg.equilibration_sweeps;
        params["measure_every"] = cfg.measure_every;
        params["seed"] = cfg.seed;
        params["restarts"] = *restarts;
        params["init"] = *init;
        json manifest = make_manifest("simulate", params, in.raw);

        if (!series_path->empty()) {
            std::ostringstream csv;
            csv << "sweep,energy,order_parameter\n";
            const RunResult& r = results.front();
            for (size_t i = 0; i < r.sample_sweeps.size(); ++i)
                csv << r.sample_sweeps[i] << ',' << format_g12(r.energy_series[i]) << ','
                    << format_g12(r.order_series[i]) << '\n';
            write_text_output(*series_path, csv.str(), manifest);
        }
        write_json_output(*out_path, payload, manifest);
    });
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"exact Potts partition functions, Tutte/chromatic polynomials, "
                 "thermodynamics, zeros, and Monte Carlo sampling on multigraphs"};
    app.require_subcommand(1);
    setup_graph_gen(app);
    setup_polynomial_command(app, "tutte", "Tutte polynomial t(G;x,y) as JSON");
    setup_polynomial_command(app, "chromatic", "chromatic polynomial C(G;x) as JSON");
    setup_potts(app);
    setup_thermo(app);
    setup_zeros(app);
    setup_simulate(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const ResourceLimitError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace pottslab
