// orwlat: mean-latency experiments for random-walk forwarding.
//
//   orwlat <kind> [options]       kind: cycle-sweep, torus-sweep, dimension-sweep,
//                                 bounds-check, epd-eta-sweep, epd-pmin-sweep,
//                                 epd-threshold-sweep, walk-validate
//   orwlat spectrum [options]     Laplacian eigenvalues, one per line
//   orwlat topology [options]     wireless topology export
//
// Exit status: 0 success, 1 runtime failure, 2 usage error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "orw/orw.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct Options {
    std::string out;
    std::string config;
    std::uint64_t seed = 42;
    std::uint64_t trials = 0;
    bool oracle = false;
    std::size_t node_cap = orw::default_node_cap();
    std::uint64_t resample = 1;
    std::size_t ensemble = 20;
    std::size_t pairs = 0;
    std::string n, r, k1, k2, eta, p_min, tau;
    std::vector<std::size_t> dims;
    std::string graph;
    std::size_t complete = 0;
    bool wireless = false;
    bool numeric = false;
    bool normalized = false;
    std::string prefix = "topology";
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--out", o.out, "Output CSV path (default: stdout)");
    cmd->add_option("--seed", o.seed, "Seed for placements and walks");
    cmd->add_option("--trials", o.trials, "Monte-Carlo walks per graph (0: none)");
    cmd->add_option("--config", o.config, "Wireless key=value config file");
    cmd->add_flag("--oracle", o.oracle, "Add the first-step linear-system oracle column");
    cmd->add_option("--node-cap", o.node_cap, "Skip oracle/MC columns above this node count (env ORWLAT_NODE_CAP)");
    cmd->add_option("--resample-until-connected", o.resample, "Placement attempts per wireless topology");
    cmd->add_option("--ensemble", o.ensemble, "Wireless topologies per sweep point");
    cmd->add_option("--pairs", o.pairs, "Sample this many ordered pairs for walks (0: all pairs)");
    cmd->add_option("--n", o.n, "Node count range start[:stop[:step]]");
    cmd->add_option("--r", o.r, "Neighbor radius range");
    cmd->add_option("--k1", o.k1, "First torus side range");
    cmd->add_option("--k2", o.k2, "Second torus side range");
    cmd->add_option("--eta", o.eta, "Path-loss exponent range");
    cmd->add_option("--p-min", o.p_min, "Minimum received power range");
    cmd->add_option("--tau", o.tau, "Connectivity threshold range");
    cmd->add_option("--dims", o.dims, "Torus sides, comma separated")->delimiter(',');
    cmd->add_option("--graph", o.graph, "Edge-list file (walk-validate)");
    cmd->add_option("--complete", o.complete, "Use the complete graph K_n (walk-validate)");
    cmd->add_flag("--wireless", o.wireless, "Validate on seeded wireless topologies (walk-validate)");
}

std::optional<orw::Range> range_of(const std::string& text) {
    if (text.empty()) {
        return std::nullopt;
    }
    return orw::Range::parse(text);
}

std::size_t single_count(const std::string& text, const char* name, std::size_t fallback) {
    if (text.empty()) {
        return fallback;
    }
    const auto values = orw::Range::parse(text).counts(name, 1);
    if (values.size() != 1) {
        throw orw::UsageError(std::string(name) + " must be a single value here");
    }
    return values.front();
}

orw::ExperimentSpec build_spec(orw::ExperimentKind kind, const Options& o) {
    orw::ExperimentSpec spec;
    spec.kind = kind;
    spec.n = range_of(o.n);
    spec.r = range_of(o.r);
    spec.k1 = range_of(o.k1);
    spec.k2 = range_of(o.k2);
    spec.eta = range_of(o.eta);
    spec.p_min = range_of(o.p_min);
    spec.tau = range_of(o.tau);
    spec.dims = o.dims;
    spec.seed = o.seed;
    spec.trials = o.trials;
    spec.oracle = o.oracle;
    spec.node_cap = o.node_cap;
    spec.resample_attempts = o.resample;
    spec.ensemble = o.ensemble;
    spec.sampled_pairs = o.pairs;
    if (!o.config.empty()) {
        try {
            spec.wireless = orw::load_wireless_config(o.config);
        } catch (const std::invalid_argument& e) {
            throw orw::UsageError(e.what());
        }
    }
    if (kind == orw::ExperimentKind::WalkValidate) {
        const int sources = !o.graph.empty() + (o.complete > 0) + o.wireless + !o.dims.empty();
        if (sources > 1) {
            throw orw::UsageError("walk-validate takes exactly one of --graph, --complete, --wireless, --dims");
        }
        if (!o.graph.empty()) {
            spec.graph.type = orw::GraphSource::Type::File;
            spec.graph.path = o.graph;
        } else if (o.complete > 0) {
            spec.graph.type = orw::GraphSource::Type::Complete;
            spec.graph.complete_n = o.complete;
        } else if (o.wireless) {
            spec.graph.type = orw::GraphSource::Type::Wireless;
        } else if (!o.dims.empty()) {
            spec.graph.type = orw::GraphSource::Type::Torus;
            spec.graph.torus = {o.dims, single_count(o.r, "r", 1)};
        }
    }
    return spec;
}

int emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream file(o.out, std::ios::binary);
    if (!file) {
        std::cerr << "error: cannot write '" << o.out << "'\n";
        return kExitRuntime;
    }
    file << text;
    return 0;
}

int run_kind(orw::ExperimentKind kind, const Options& o) {
    const auto spec = build_spec(kind, o);
    std::ostringstream csv;
    const auto summary = orw::run(spec, csv);
    if (int rc = emit(o, csv.str()); rc != 0) {
        return rc;
    }
    for (const auto& f : summary.failures) {
        std::cerr << "check failed: " << f << '\n';
    }
    return summary.failed_checks == 0 ? 0 : kExitRuntime;
}

int run_spectrum(const Options& o) {
    orw::Spectrum spectrum;
    if (!o.graph.empty()) {
        const auto g = orw::load_edge_list(o.graph);
        spectrum = orw::symmetric_eigendecomposition(o.normalized ? orw::normalized_laplacian(g) : g.laplacian_matrix(),
                                                     false);
    } else {
        const std::size_t r = single_count(o.r, "r", 1);
        orw::TorusSpec t;
        t.r = r;
        t.dims = o.dims.empty() ? std::vector<std::size_t>{single_count(o.n, "n", 0)} : o.dims;
        try {
            t.validate();
        } catch (const orw::ParameterError& e) {
            throw orw::UsageError(e.what());
        }
        if (o.numeric) {
            const auto g = orw::build_torus(t);
            spectrum = orw::symmetric_eigendecomposition(
                o.normalized ? orw::normalized_laplacian(g) : g.laplacian_matrix(), false);
        } else {
            if (o.normalized) {
                throw orw::UsageError("--normalized needs --numeric or --graph");
            }
            spectrum = orw::torus_laplacian_spectrum(t);
        }
    }
    std::ostringstream csv;
    orw::write_spectrum_csv(csv, spectrum);
    return emit(o, csv.str());
}

int run_topology(const Options& o) {
    orw::WirelessConfig cfg;
    if (!o.config.empty()) {
        try {
            cfg = orw::load_wireless_config(o.config);
        } catch (const std::invalid_argument& e) {
            throw orw::UsageError(e.what());
        }
    }
    const auto topo = orw::generate_wireless_topology(cfg, o.seed, o.resample);
    std::ofstream edges(o.prefix + ".edges");
    std::ofstream coeff(o.prefix + ".coeff.edges");
    std::ofstream pos(o.prefix + ".positions.csv");
    if (!edges || !coeff || !pos) {
        std::cerr << "error: cannot write files with prefix '" << o.prefix << "'\n";
        return kExitRuntime;
    }
    orw::write_edge_list(edges, topo.graph);
    orw::write_coefficients(coeff, topo);
    orw::write_positions_csv(pos, topo.placement);
    std::cerr << "nodes=" << topo.graph.node_count() << " edges=" << topo.graph.edge_count()
              << " connected=" << (topo.connected ? "yes" : "no") << " attempts=" << topo.attempts << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mean latency of random-walk (stateless opportunistic) routing"};
    app.require_subcommand(1);
    Options o;

    std::vector<std::pair<CLI::App*, orw::ExperimentKind>> kinds;
    for (const auto& [kind, name] : orw::kExperimentKinds) {
        auto* cmd = app.add_subcommand(std::string(name), "Run the " + std::string(name) + " experiment");
        add_common(cmd, o);
        kinds.emplace_back(cmd, kind);
    }
    auto* spectrum = app.add_subcommand("spectrum", "Print Laplacian eigenvalues, one per line");
    spectrum->add_option("--n", o.n, "Cycle length");
    spectrum->add_option("--r", o.r, "Neighbor radius");
    spectrum->add_option("--dims", o.dims, "Torus sides, comma separated")->delimiter(',');
    spectrum->add_option("--graph", o.graph, "Edge-list file (numeric spectrum)");
    spectrum->add_flag("--numeric", o.numeric, "Eigensolver on the constructed graph instead of the closed form");
    spectrum->add_flag("--normalized", o.normalized, "Normalized Laplacian (numeric only)");
    spectrum->add_option("--out", o.out, "Output path (default: stdout)");

    auto* topology = app.add_subcommand("topology", "Generate and export a wireless topology");
    topology->add_option("--config", o.config, "Wireless key=value config file");
    topology->add_option("--seed", o.seed, "Placement seed");
    topology->add_option("--resample-until-connected", o.resample, "Placement attempts");
    topology->add_option("--prefix", o.prefix, "Output prefix for .edges, .coeff.edges, .positions.csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        for (const auto& [cmd, kind] : kinds) {
            if (cmd->parsed()) {
                return run_kind(kind, o);
            }
        }
        if (spectrum->parsed()) {
            return run_spectrum(o);
        }
        if (topology->parsed()) {
            return run_topology(o);
        }
    } catch (const orw::UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitUsage;
}
