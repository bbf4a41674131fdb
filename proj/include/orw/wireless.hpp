#pragma once

// Wireless topologies from a path-loss model: random placement in a square,
// received power, coverage radius, soft topology coefficients in [0, 1], and
// thresholding into a binary symmetric graph.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "orw/errors.hpp"
#include "orw/format.hpp"
#include "orw/graph.hpp"
#include "orw/rng.hpp"

namespace orw {

struct WirelessConfig {
    std::size_t n = 30;
    double area_side = 1.0;
    double eta = 2.0;        // path-loss exponent
    double alpha = 2.0;      // topology-coefficient exponent
    double p_min = 0.1;      // minimum received power for communication
    double c_n = 0.0;        // reference-distance constant
    double threshold = 0.5;  // connectivity threshold tau
    double power = 1.0;      // uniform transmit power
    std::optional<Eigen::MatrixXd> power_matrix;  // per-pair powers, overrides `power`

    double pair_power(std::size_t i, std::size_t j) const {
        return power_matrix ? (*power_matrix)(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) : power;
    }

    void validate() const {
        if (n < 2) {
            throw ParameterError("wireless config needs n >= 2");
        }
        if (!(area_side > 0.0)) {
            throw ParameterError("wireless config needs area_side > 0");
        }
        if (!(eta >= 1.0)) {
            throw ParameterError("wireless config needs eta >= 1");
        }
        if (!(alpha > 0.0)) {
            throw ParameterError("wireless config needs alpha > 0");
        }
        if (!(p_min > 0.0)) {
            throw ParameterError("wireless config needs p_min > 0");
        }
        if (!(threshold > 0.0 && threshold < 1.0)) {
            throw ParameterError("wireless config needs 0 < threshold < 1");
        }
        if (power_matrix) {
            const auto& p = *power_matrix;
            if (p.rows() != static_cast<Eigen::Index>(n) || p.cols() != static_cast<Eigen::Index>(n)) {
                throw ParameterError("power matrix must be n x n");
            }
            if ((p - p.transpose()).cwiseAbs().maxCoeff() != 0.0) {
                throw ParameterError("power matrix must be symmetric (p_ij == p_ji)");
            }
            if (!(p.minCoeff() > 0.0)) {
                throw ParameterError("power matrix entries must be positive");
            }
        } else if (!(power > 0.0)) {
            throw ParameterError("wireless config needs power > 0");
        }
    }
};

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

struct Placement {
    std::vector<Point2> positions;

    double distance(std::size_t i, std::size_t j) const {
        return std::hypot(positions[i].x - positions[j].x, positions[i].y - positions[j].y);
    }
};

inline constexpr std::uint64_t kPlacementStream = 0x706C6163656D656EULL;

/// n i.i.d. uniform positions in [0, area_side]^2. `attempt` selects an
/// independent placement for the same seed.
inline Placement place_nodes(const WirelessConfig& config, std::uint64_t seed, std::uint64_t attempt = 0) {
    if (config.n < 2) {
        throw ParameterError("placement needs n >= 2");
    }
    SplitMix64 rng = substream(seed, kPlacementStream, attempt);
    Placement p;
    p.positions.resize(config.n);
    for (auto& pt : p.positions) {
        pt.x = uniform_unit(rng) * config.area_side;
        pt.y = uniform_unit(rng) * config.area_side;
    }
    return p;
}

/// r_0 = sqrt((ln n + c_n) / (pi n)).
inline double reference_distance(std::size_t n, double c_n) {
    if (n < 2) {
        throw ParameterError("reference distance needs n >= 2");
    }
    const double radicand = (std::log(static_cast<double>(n)) + c_n) / (std::numbers::pi * static_cast<double>(n));
    if (!(radicand > 0.0)) {
        throw ParameterError("reference distance needs ln(n) + c_n > 0");
    }
    return std::sqrt(radicand);
}

/// p_ij / (1 + (r_ij / r_0)^eta).
inline double received_power(double p_ij, double r_ij, double r_0, double eta) {
    return p_ij / (1.0 + std::pow(r_ij / r_0, eta));
}

/// Distance at which the received power falls to p_min: r_0 (p_ij/p_min - 1)^(1/eta).
inline double coverage_radius(double p_ij, double p_min, double r_0, double eta) {
    if (p_ij < p_min) {
        throw ParameterError("transmit power below p_min: no link possible");
    }
    return r_0 * std::pow(p_ij / p_min - 1.0, 1.0 / eta);
}

/// a_ij = 1 / (1 + (r_ij / r_c)^alpha).
inline double topology_coefficient(double r_ij, double r_c, double alpha) {
    if (r_c == 0.0) {
        if (r_ij == 0.0) {
            throw DegeneracyError("topology coefficient undefined for r_ij = r_c = 0");
        }
        return 0.0;
    }
    return 1.0 / (1.0 + std::pow(r_ij / r_c, alpha));
}

/// Same coefficient written directly in the transmit power:
///   r_0^a (p - p_min)^(a/eta) / (r_0^a (p - p_min)^(a/eta) + r_ij^a p_min^(a/eta)).
inline double topology_coefficient_from_power(double p_ij, double p_min, double r_0, double r_ij, double eta,
                                              double alpha) {
    const double reach = std::pow(r_0, alpha) * std::pow(p_ij - p_min, alpha / eta);
    const double loss = std::pow(r_ij, alpha) * std::pow(p_min, alpha / eta);
    if (reach + loss == 0.0) {
        throw DegeneracyError("topology coefficient undefined for r_ij = 0 and p_ij = p_min");
    }
    return reach / (reach + loss);
}

struct WirelessTopology {
    Placement placement;
    Eigen::MatrixXd coefficients;  // symmetric, zero diagonal
    Graph graph;                   // edge iff coefficient >= threshold
    bool connected = false;
    std::uint64_t attempts = 1;
};

/// Coefficient matrix and thresholded binary graph for a placement. Pairs whose
/// transmit power is below p_min get coefficient 0.
inline WirelessTopology build_wireless_graph(const WirelessConfig& config, const Placement& placement) {
    config.validate();
    if (placement.positions.size() != config.n) {
        throw ParameterError("placement size does not match config n");
    }
    const std::size_t n = config.n;
    const double r_0 = reference_distance(n, config.c_n);
    WirelessTopology topo;
    topo.placement = placement;
    topo.coefficients = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double p = config.pair_power(i, j);
            double a = 0.0;
            if (p >= config.p_min) {
                const double r_c = coverage_radius(p, config.p_min, r_0, config.eta);
                a = topology_coefficient(placement.distance(i, j), r_c, config.alpha);
            }
            topo.coefficients(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a;
            topo.coefficients(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = a;
            if (a >= config.threshold) {
                edges.push_back({i, j, 1.0});
            }
        }
    }
    topo.graph = Graph::from_edges(n, edges);
    topo.connected = is_connected(topo.graph);
    return topo;
}

/// Places and builds a topology for `seed`. With max_attempts > 1, further
/// independent placements are tried until one is connected; the last one is
/// returned (flagged) if none is.
inline WirelessTopology generate_wireless_topology(const WirelessConfig& config, std::uint64_t seed,
                                                   std::uint64_t max_attempts = 1) {
    if (max_attempts == 0) {
        max_attempts = 1;
    }
    WirelessTopology topo;
    for (std::uint64_t attempt = 0; attempt < max_attempts; ++attempt) {
        topo = build_wireless_graph(config, place_nodes(config, seed, attempt));
        topo.attempts = attempt + 1;
        if (topo.connected) {
            break;
        }
    }
    return topo;
}

/// Flat key=value reader. Keys: n, area_side, eta, alpha, p_min, c_n,
/// threshold, power, power_matrix (path to a whitespace-separated n x n matrix).
inline WirelessConfig read_wireless_config(std::istream& is, const std::string& base_dir = ".") {
    WirelessConfig cfg;
    std::string matrix_path;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) {
            continue;
        }
        const auto eq = line.find('=');
        const auto where = "config line " + std::to_string(line_no) + ": ";
        if (eq == std::string::npos) {
            throw ValidationError(where + "expected key=value");
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        auto number = [&](double& out) {
            if (!parse_double(value, out)) {
                throw ValidationError(where + "'" + key + "' needs a number, got '" + value + "'");
            }
        };
        if (key == "n") {
            if (!parse_integer(value, cfg.n)) {
                throw ValidationError(where + "'n' needs an integer");
            }
        } else if (key == "area_side") {
            number(cfg.area_side);
        } else if (key == "eta") {
            number(cfg.eta);
        } else if (key == "alpha") {
            number(cfg.alpha);
        } else if (key == "p_min") {
            number(cfg.p_min);
        } else if (key == "c_n") {
            number(cfg.c_n);
        } else if (key == "threshold") {
            number(cfg.threshold);
        } else if (key == "power") {
            number(cfg.power);
        } else if (key == "power_matrix") {
            matrix_path = value;
        } else {
            throw ValidationError(where + "unknown key '" + key + "'");
        }
    }
    if (!matrix_path.empty()) {
        const std::string path = matrix_path.starts_with('/') ? matrix_path : base_dir + "/" + matrix_path;
        std::ifstream in(path);
        if (!in) {
            throw ValidationError("cannot open power matrix '" + path + "'");
        }
        Eigen::MatrixXd p(static_cast<Eigen::Index>(cfg.n), static_cast<Eigen::Index>(cfg.n));
        for (Eigen::Index i = 0; i < p.rows(); ++i) {
            for (Eigen::Index j = 0; j < p.cols(); ++j) {
                std::string tok;
                if (!(in >> tok) || !parse_double(tok, p(i, j))) {
                    throw ValidationError("power matrix '" + path + "' is not a valid n x n matrix");
                }
            }
        }
        cfg.power_matrix = std::move(p);
    }
    cfg.validate();
    return cfg;
}

inline WirelessConfig load_wireless_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open config '" + path + "'");
    }
    const auto slash = path.find_last_of('/');
    return read_wireless_config(in, slash == std::string::npos ? "." : path.substr(0, slash));
}

inline void write_positions_csv(std::ostream& os, const Placement& placement) {
    os << "i,x,y\n";
    for (std::size_t i = 0; i < placement.positions.size(); ++i) {
        os << i << ',' << format_double(placement.positions[i].x) << ',' << format_double(placement.positions[i].y)
           << '\n';
    }
}

/// Coefficient matrix in the edge-list format (nonzero entries, i < j).
inline void write_coefficients(std::ostream& os, const WirelessTopology& topo) {
    write_edge_list(os, Graph::from_dense(topo.coefficients));
}

}  // namespace orw
