#pragma once

// Experiment runner: parameter sweeps over the regular families and over
// wireless ensembles, written as LatencyReport CSV rows in sweep order.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "orw/errors.hpp"
#include "orw/format.hpp"
#include "orw/graph.hpp"
#include "orw/latency.hpp"
#include "orw/report.hpp"
#include "orw/spectral.hpp"
#include "orw/walker.hpp"
#include "orw/wireless.hpp"

namespace orw {

/// Invalid experiment specification (CLI exit status 2).
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

/// Failure while evaluating a sweep point (CLI exit status 1).
class RunError : public std::runtime_error {
public:
    explicit RunError(const std::string& what) : std::runtime_error(what) {}
};

enum class ExperimentKind {
    CycleSweep,
    TorusSweep,
    DimensionSweep,
    BoundsCheck,
    EpdEtaSweep,
    EpdPminSweep,
    EpdThresholdSweep,
    WalkValidate,
};

inline constexpr std::array<std::pair<ExperimentKind, std::string_view>, 8> kExperimentKinds{{
    {ExperimentKind::CycleSweep, "cycle-sweep"},
    {ExperimentKind::TorusSweep, "torus-sweep"},
    {ExperimentKind::DimensionSweep, "dimension-sweep"},
    {ExperimentKind::BoundsCheck, "bounds-check"},
    {ExperimentKind::EpdEtaSweep, "epd-eta-sweep"},
    {ExperimentKind::EpdPminSweep, "epd-pmin-sweep"},
    {ExperimentKind::EpdThresholdSweep, "epd-threshold-sweep"},
    {ExperimentKind::WalkValidate, "walk-validate"},
}};

inline std::string_view kind_name(ExperimentKind kind) {
    for (const auto& [k, name] : kExperimentKinds) {
        if (k == kind) {
            return name;
        }
    }
    return "unknown";
}

inline std::optional<ExperimentKind> parse_kind(std::string_view name) {
    for (const auto& [k, n] : kExperimentKinds) {
        if (n == name) {
            return k;
        }
    }
    return std::nullopt;
}

/// Inclusive arithmetic range written `start`, `start:stop` or `start:stop:step`.
struct Range {
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;

    static Range single(double v) { return {v, v, 1.0}; }

    static Range parse(std::string_view text) {
        std::vector<std::string_view> parts;
        std::size_t begin = 0;
        while (true) {
            const auto colon = text.find(':', begin);
            parts.push_back(text.substr(begin, colon == std::string_view::npos ? std::string_view::npos : colon - begin));
            if (colon == std::string_view::npos) {
                break;
            }
            begin = colon + 1;
        }
        Range r;
        auto number = [&](std::string_view p, double& out) {
            if (!parse_double(p, out) || !std::isfinite(out)) {
                throw UsageError("invalid range '" + std::string(text) + "'");
            }
        };
        if (parts.size() > 3) {
            throw UsageError("invalid range '" + std::string(text) + "' (expected start[:stop[:step]])");
        }
        number(parts[0], r.start);
        r.stop = r.start;
        if (parts.size() >= 2) {
            number(parts[1], r.stop);
        }
        if (parts.size() == 3) {
            number(parts[2], r.step);
        }
        r.values();  // validates
        return r;
    }

    std::vector<double> values() const {
        if (step == 0.0) {
            throw UsageError("range step must be nonzero");
        }
        const double span = (stop - start) / step;
        if (span < -1e-9) {
            throw UsageError("empty range: step sign does not lead from " + format_double(start) + " to " +
                             format_double(stop));
        }
        const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
        std::vector<double> out;
        out.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            // Snap to 12 significant digits so 0.1 steps print as 0.3, not 0.30000000000000004.
            const double raw = start + static_cast<double>(i) * step;
            std::array<char, 64> buf{};
            auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), raw, std::chars_format::general, 12);
            double snapped = raw;
            if (ec == std::errc{}) {
                parse_double(std::string_view(buf.data(), static_cast<std::size_t>(end - buf.data())), snapped);
            }
            out.push_back(snapped);
        }
        return out;
    }

    std::vector<std::size_t> counts(std::string_view name, std::size_t minimum) const {
        std::vector<std::size_t> out;
        for (double v : values()) {
            if (v != std::floor(v) || v < static_cast<double>(minimum)) {
                throw UsageError(std::string(name) + " values must be integers >= " + std::to_string(minimum));
            }
            out.push_back(static_cast<std::size_t>(v));
        }
        return out;
    }
};

/// Node cap above which numeric-oracle and Monte-Carlo columns are skipped.
/// ORWLAT_NODE_CAP overrides the built-in default of 4096.
inline std::size_t default_node_cap() {
    if (const char* env = std::getenv("ORWLAT_NODE_CAP")) {
        std::size_t cap = 0;
        if (parse_integer(std::string_view(env), cap) && cap > 0) {
            return cap;
        }
    }
    return 4096;
}

/// Graph for walk-validate.
struct GraphSource {
    enum class Type { None, File, Torus, Complete, Wireless };
    Type type = Type::None;
    std::string path;
    TorusSpec torus;
    std::size_t complete_n = 0;
};

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::CycleSweep;

    // Swept variables; unset ones take the per-kind defaults.
    std::optional<Range> n;
    std::optional<Range> r;
    std::optional<Range> k1;
    std::optional<Range> k2;
    std::optional<Range> eta;
    std::optional<Range> p_min;
    std::optional<Range> tau;
    std::vector<std::size_t> dims;  // dimension-sweep axes, or a torus for bounds-check

    WirelessConfig wireless;
    std::uint64_t seed = 42;
    std::uint64_t trials = 0;  // 0: no Monte-Carlo columns (walk-validate defaults to 1e5)
    bool oracle = false;
    std::size_t node_cap = default_node_cap();
    std::uint64_t resample_attempts = 1;
    std::size_t ensemble = 20;
    std::size_t sampled_pairs = 0;  // 0: all pairs when trials allow
    GraphSource graph;
};

namespace detail {

inline std::string point_label(std::initializer_list<std::pair<std::string_view, std::string>> kv) {
    std::string out;
    for (const auto& [k, v] : kv) {
        if (!out.empty()) {
            out += ';';
        }
        out += std::string(k) + "=" + v;
    }
    return out;
}

inline WalkConfig walk_config(const ExperimentSpec& spec, std::size_t n, std::uint64_t trials, std::uint64_t seed) {
    WalkConfig cfg;
    cfg.trials = trials;
    cfg.seed = seed;
    const std::uint64_t ordered_pairs = static_cast<std::uint64_t>(n) * (n - 1);
    if (spec.sampled_pairs > 0) {
        cfg.pair_mode = PairMode::Sampled;
        cfg.sampled_pairs = spec.sampled_pairs;
    } else if (trials < 2 * ordered_pairs) {
        cfg.pair_mode = PairMode::Sampled;
        cfg.sampled_pairs = static_cast<std::size_t>(std::max<std::uint64_t>(2, std::min(ordered_pairs, trials / 50)));
    }
    return cfg;
}

/// Regular-family row: T, its bounds, and optionally the numeric oracle and a
/// walk estimate expressed in T units (EPD * 2 / vol).
inline LatencyReport regular_row(const ExperimentSpec& spec, std::string family, std::string params,
                                 std::size_t nodes, double analytic, LatencyBounds bounds,
                                 const std::function<Graph()>& build) {
    LatencyReport row;
    row.family = std::move(family);
    row.params = std::move(params);
    row.analytic = analytic;
    row.lower_bound = bounds.lower;
    row.upper_bound = bounds.upper;
    const bool small = nodes <= spec.node_cap;
    if (!small) {
        row.oracle = Cell::skipped();
        if (spec.trials > 0) {
            row.mc_mean = row.mc_ci = row.trials = Cell::skipped();
        }
        return row;
    }
    const Graph g = build();
    row.oracle = Cell::of(mean_latency_spectral(g));
    if (spec.trials > 0) {
        const WalkEstimate est = estimate_mean_latency(g, walk_config(spec, nodes, spec.trials, spec.seed));
        const double to_t = 2.0 / g.volume();
        row.mc_mean = Cell::of(est.mean * to_t);
        row.mc_ci = Cell::of(est.ci_halfwidth * to_t);
        row.trials = Cell::count(est.trials_used);
    }
    return row;
}

/// EPD-scale row for one connected graph: analytic EPD, the latency bounds
/// scaled by vol/2, the first-step oracle and a walk estimate when requested.
struct EpdSample {
    double epd = 0.0;
    LatencyBounds bounds;
    std::optional<double> oracle;
    std::optional<WalkEstimate> mc;
};

inline EpdSample epd_sample(const ExperimentSpec& spec, const Graph& g, std::uint64_t walk_seed) {
    EpdSample s;
    s.epd = expected_packet_delay(hitting_times(g));
    const auto b = latency_bounds(g);
    const double scale = g.volume() / 2.0;
    s.bounds = {b.lower * scale, b.upper * scale};
    const bool small = g.node_count() <= spec.node_cap;
    if (spec.oracle && small) {
        s.oracle = expected_packet_delay(hitting_times_first_step(g));
    }
    if (spec.trials > 0 && small) {
        s.mc = estimate_mean_latency(g, walk_config(spec, g.node_count(), spec.trials, walk_seed));
    }
    return s;
}

inline LatencyReport epd_row(const ExperimentSpec& spec, std::string family, std::string params,
                             const std::vector<EpdSample>& samples, std::size_t nodes) {
    LatencyReport row;
    row.family = std::move(family);
    row.params = std::move(params);
    const double count = static_cast<double>(samples.size());
    double oracle = 0.0;
    double mc = 0.0;
    double mc_var = 0.0;
    std::uint64_t walks = 0;
    for (const auto& s : samples) {
        row.analytic += s.epd / count;
        row.lower_bound += s.bounds.lower / count;
        row.upper_bound += s.bounds.upper / count;
        if (s.oracle) {
            oracle += *s.oracle / count;
        }
        if (s.mc) {
            mc += s.mc->mean / count;
            mc_var += s.mc->ci_halfwidth * s.mc->ci_halfwidth;
            walks += s.mc->trials_used;
        }
    }
    const bool small = nodes <= spec.node_cap;
    if (spec.oracle) {
        row.oracle = small ? Cell::of(oracle) : Cell::skipped();
    }
    if (spec.trials > 0) {
        if (small) {
            row.mc_mean = Cell::of(mc);
            row.mc_ci = Cell::of(std::sqrt(mc_var) / count);
            row.trials = Cell::count(walks);
        } else {
            row.mc_mean = row.mc_ci = row.trials = Cell::skipped();
        }
    }
    return row;
}

template <typename Fn>
auto at_point(const std::string& label, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        throw RunError("sweep point " + label + ": " + e.what());
    }
}

inline void check_cycle_point(std::size_t n, std::size_t r) {
    try {
        validate_cycle_parameters(n, r);
    } catch (const ParameterError& e) {
        throw UsageError(e.what());
    }
}

inline void check_torus(const TorusSpec& t) {
    try {
        t.validate();
    } catch (const ParameterError& e) {
        throw UsageError(e.what());
    }
}

inline LatencyReport cycle_report(const ExperimentSpec& spec, std::size_t n, std::size_t r) {
    const auto label = point_label({{"n", std::to_string(n)}, {"r", std::to_string(r)}});
    return at_point(label, [&] {
        return regular_row(spec, "cycle", label, n, mean_latency_cycle(n, r), latency_bounds_cycle(n, r),
                           [&] { return build_cycle(n, r); });
    });
}

inline LatencyReport torus_report(const ExperimentSpec& spec, const TorusSpec& t) {
    const auto label = t.label();
    return at_point(label, [&] {
        return regular_row(spec, "torus", label, t.node_count(), mean_latency_torus(t), latency_bounds_torus(t),
                           [&] { return build_torus(t); });
    });
}

inline std::vector<LatencyReport> run_wireless_grid(const ExperimentSpec& spec, const Range& default_eta,
                                                    const Range& default_pmin, const Range& default_tau) {
    const auto etas = spec.eta.value_or(default_eta).values();
    const auto pmins = spec.p_min.value_or(default_pmin).values();
    const auto taus = spec.tau.value_or(default_tau).values();
    if (spec.ensemble < 1) {
        throw UsageError("ensemble size must be >= 1");
    }
    std::vector<WirelessConfig> points;
    for (double eta : etas) {
        for (double pmin : pmins) {
            for (double tau : taus) {
                WirelessConfig cfg = spec.wireless;
                cfg.eta = eta;
                cfg.p_min = pmin;
                cfg.threshold = tau;
                try {
                    cfg.validate();
                } catch (const ParameterError& e) {
                    throw UsageError(e.what());
                }
                points.push_back(cfg);
            }
        }
    }
    std::vector<LatencyReport> rows;
    for (const auto& cfg : points) {
        const auto label = point_label({{"n", std::to_string(cfg.n)},
                                        {"eta", format_double(cfg.eta)},
                                        {"p_min", format_double(cfg.p_min)},
                                        {"tau", format_double(cfg.threshold)},
                                        {"alpha", format_double(cfg.alpha)},
                                        {"ensemble", std::to_string(spec.ensemble)}});
        rows.push_back(at_point(label, [&] {
            std::vector<EpdSample> samples;
            for (std::size_t e = 0; e < spec.ensemble; ++e) {
                const std::uint64_t topo_seed = spec.seed + e;
                const auto topo = generate_wireless_topology(cfg, topo_seed, spec.resample_attempts);
                if (!topo.connected) {
                    throw DisconnectedGraphError("ensemble member " + std::to_string(e) +
                                                 " is disconnected (try --resample-until-connected)");
                }
                samples.push_back(epd_sample(spec, topo.graph, SplitMix64::mix(topo_seed)));
            }
            return epd_row(spec, "wireless", label, samples, cfg.n);
        }));
    }
    return rows;
}

inline std::vector<LatencyReport> run_walk_validate(const ExperimentSpec& spec) {
    ExperimentSpec local = spec;
    if (local.trials == 0) {
        local.trials = 100000;
    }
    std::vector<std::pair<std::string, std::pair<std::string, Graph>>> graphs;
    switch (spec.graph.type) {
        case GraphSource::Type::None:
            throw UsageError("walk-validate needs a graph (--graph, --dims/--r, --complete or --wireless)");
        case GraphSource::Type::File:
            graphs.push_back({"graph", {"path=" + spec.graph.path, load_edge_list(spec.graph.path)}});
            break;
        case GraphSource::Type::Torus:
            check_torus(spec.graph.torus);
            graphs.push_back({spec.graph.torus.dims.size() == 1 ? "cycle" : "torus",
                              {spec.graph.torus.label(), build_torus(spec.graph.torus)}});
            break;
        case GraphSource::Type::Complete:
            if (spec.graph.complete_n < 2) {
                throw UsageError("complete graph needs n >= 2");
            }
            graphs.push_back({"complete", {"n=" + std::to_string(spec.graph.complete_n),
                                           build_complete(spec.graph.complete_n)}});
            break;
        case GraphSource::Type::Wireless:
            for (std::size_t e = 0; e < spec.ensemble; ++e) {
                const std::uint64_t topo_seed = spec.seed + e;
                auto topo = generate_wireless_topology(spec.wireless, topo_seed, spec.resample_attempts);
                graphs.push_back({"wireless", {"n=" + std::to_string(spec.wireless.n) + ";seed=" +
                                                   std::to_string(topo_seed),
                                               std::move(topo.graph)}});
            }
            break;
    }
    std::vector<LatencyReport> rows;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        const auto& [family, labelled] = graphs[i];
        const auto& [label, g] = labelled;
        rows.push_back(at_point(label, [&] {
            const std::uint64_t walk_seed = spec.graph.type == GraphSource::Type::Wireless
                                                ? SplitMix64::mix(spec.seed + i)
                                                : spec.seed;
            return epd_row(local, family, label, {epd_sample(local, g, walk_seed)}, g.node_count());
        }));
    }
    return rows;
}

}  // namespace detail

struct RunSummary {
    std::size_t rows = 0;
    std::size_t failed_checks = 0;
    std::vector<std::string> failures;
};

/// Evaluates the experiment and writes the CSV (header + one row per sweep
/// point) to `out`. Throws UsageError for an invalid spec and RunError when a
/// sweep point cannot be evaluated. bounds-check reports violated checks in
/// the summary instead of throwing.
inline RunSummary run(const ExperimentSpec& spec, std::ostream& out) {
    using detail::check_cycle_point;
    std::vector<LatencyReport> rows;
    RunSummary summary;

    switch (spec.kind) {
        case ExperimentKind::CycleSweep: {
            const auto ns = spec.n.value_or(Range::single(300)).counts("n", 3);
            const auto rs = spec.r.value_or(Range{1, 10, 1}).counts("r", 1);
            for (auto n : ns) {
                for (auto r : rs) {
                    check_cycle_point(n, r);
                }
            }
            for (auto n : ns) {
                for (auto r : rs) {
                    rows.push_back(detail::cycle_report(spec, n, r));
                }
            }
            break;
        }
        case ExperimentKind::TorusSweep: {
            const auto k1s = spec.k1.value_or(Range::single(1000)).counts("k1", 3);
            const auto k2s = spec.k2.value_or(Range::single(1000)).counts("k2", 3);
            const auto rs = spec.r.value_or(Range{1, 10, 1}).counts("r", 1);
            std::vector<TorusSpec> grid;
            for (auto a : k1s) {
                for (auto b : k2s) {
                    for (auto r : rs) {
                        grid.push_back({{a, b}, r});
                        detail::check_torus(grid.back());
                    }
                }
            }
            for (const auto& t : grid) {
                rows.push_back(detail::torus_report(spec, t));
            }
            break;
        }
        case ExperimentKind::DimensionSweep: {
            const std::vector<std::size_t> axes =
                spec.dims.empty() ? std::vector<std::size_t>{16, 18, 20, 22} : spec.dims;
            const auto rs = spec.r.value_or(Range{1, 4, 1}).counts("r", 1);
            std::vector<TorusSpec> grid;
            for (std::size_t m = 1; m <= axes.size(); ++m) {
                for (auto r : rs) {
                    grid.push_back({{axes.begin(), axes.begin() + static_cast<std::ptrdiff_t>(m)}, r});
                    detail::check_torus(grid.back());
                }
            }
            for (const auto& t : grid) {
                rows.push_back(detail::torus_report(spec, t));
            }
            break;
        }
        case ExperimentKind::BoundsCheck: {
            // Every valid (n, r) in the grid; combinations with 2r+1 > n are skipped.
            const auto ns = spec.n.value_or(Range{4, 64, 1}).counts("n", 3);
            const auto rs = spec.r.value_or(Range{1, 3, 1}).counts("r", 1);
            for (auto n : ns) {
                for (auto r : rs) {
                    if (2 * r + 1 <= n) {
                        rows.push_back(detail::cycle_report(spec, n, r));
                    }
                }
            }
            if (!spec.dims.empty()) {
                for (auto r : rs) {
                    TorusSpec t{spec.dims, r};
                    if (2 * r + 1 <= *std::min_element(t.dims.begin(), t.dims.end())) {
                        rows.push_back(detail::torus_report(spec, t));
                    }
                }
            }
            if (rows.empty()) {
                throw UsageError("bounds-check grid contains no valid (n, r) combination");
            }
            for (const auto& row : rows) {
                const double slack = 1e-12 * row.upper_bound;
                if (row.lower_bound > row.analytic + slack || row.analytic > row.upper_bound + slack) {
                    summary.failures.push_back(row.params + ": bound sandwich violated");
                }
                if (row.oracle.has_value() &&
                    std::abs(row.oracle.value - row.analytic) > 1e-9 * std::max(1.0, row.analytic)) {
                    summary.failures.push_back(row.params + ": closed form disagrees with numeric oracle");
                }
            }
            break;
        }
        case ExperimentKind::EpdEtaSweep:
            rows = detail::run_wireless_grid(spec, Range{2, 6, 0.5}, Range::single(spec.wireless.p_min),
                                             Range::single(spec.wireless.threshold));
            break;
        case ExperimentKind::EpdPminSweep:
            rows = detail::run_wireless_grid(spec, Range::single(spec.wireless.eta), Range{0.05, 0.5, 0.05},
                                             Range::single(spec.wireless.threshold));
            break;
        case ExperimentKind::EpdThresholdSweep:
            rows = detail::run_wireless_grid(spec, Range::single(spec.wireless.eta),
                                             Range::single(spec.wireless.p_min), Range{0.1, 0.9, 0.1});
            break;
        case ExperimentKind::WalkValidate:
            rows = detail::run_walk_validate(spec);
            break;
    }

    out << kReportCsvHeader << '\n';
    for (const auto& row : rows) {
        write_report_row(out, row);
    }
    summary.rows = rows.size();
    summary.failed_checks = summary.failures.size();
    return summary;
}

/// One eigenvalue per line.
inline void write_spectrum_csv(std::ostream& os, const Spectrum& spectrum) {
    for (double v : spectrum.values) {
        os << format_double(v) << '\n';
    }
}

}  // namespace orw
