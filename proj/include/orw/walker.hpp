#pragma once

// Monte-Carlo simulation of stateless opportunistic forwarding: the packet
// moves to a neighbor chosen with probability w(u,v)/deg(u) until it first
// reaches its destination.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "orw/errors.hpp"
#include "orw/graph.hpp"
#include "orw/rng.hpp"

namespace orw {

enum class PairMode { AllPairs, Sampled };

struct WalkConfig {
    std::uint64_t trials = 100000;
    std::uint64_t max_steps = 0;  // 0 selects 100 * n^2
    std::uint64_t seed = 42;
    PairMode pair_mode = PairMode::AllPairs;
    std::size_t sampled_pairs = 0;  // used when pair_mode == Sampled

    std::uint64_t effective_max_steps(std::size_t n) const {
        return max_steps != 0 ? max_steps : 100ULL * n * n;
    }

    void validate(std::size_t n) const {
        if (trials < 1) {
            throw ParameterError("walk config needs trials >= 1");
        }
        if (effective_max_steps(n) < n) {
            throw ParameterError("walk config needs max_steps >= n");
        }
        if (pair_mode == PairMode::Sampled && sampled_pairs < 2) {
            throw ParameterError("sampled pair mode needs at least two pairs");
        }
    }
};

struct WalkResult {
    std::uint64_t steps = 0;
    bool truncated = false;
};

/// 95% normal-approximation interval around the mean hop count.
struct WalkEstimate {
    double mean = 0.0;
    double ci_halfwidth = 0.0;
    std::uint64_t trials_used = 0;
    std::uint64_t truncated = 0;
};

inline constexpr double kNormal95 = 1.959963984540054;

/// Next hop from u: uniform over neighbors on binary graphs, weight-proportional otherwise.
inline NodeId next_hop(const Graph& g, NodeId u, SplitMix64& rng) {
    auto nb = g.neighbors(u);
    if (nb.empty()) {
        throw DegeneracyError("walk reached node " + std::to_string(u) + " which has no neighbors");
    }
    if (g.is_binary()) {
        return nb[uniform_below(rng, nb.size())];
    }
    auto w = g.weights(u);
    double target = uniform_unit(rng) * g.degree(u);
    for (std::size_t k = 0; k + 1 < nb.size(); ++k) {
        target -= w[k];
        if (target < 0.0) {
            return nb[k];
        }
    }
    return nb.back();
}

/// Hops taken from s until the first arrival at t, capped at max_steps.
inline WalkResult simulate_walk(const Graph& g, NodeId s, NodeId t, SplitMix64& rng, std::uint64_t max_steps) {
    if (s >= g.node_count() || t >= g.node_count()) {
        throw ParameterError("walk endpoint outside the graph");
    }
    WalkResult result;
    NodeId u = s;
    while (u != t) {
        if (result.steps == max_steps) {
            result.truncated = true;
            break;
        }
        u = next_hop(g, u, rng);
        ++result.steps;
    }
    return result;
}

namespace detail {

struct RunningStats {
    std::uint64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++count;
        const double delta = x - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (x - mean);
    }
    double variance() const {
        return count > 1 ? m2 / static_cast<double>(count - 1) : std::numeric_limits<double>::infinity();
    }
};

inline RunningStats run_pair(const Graph& g, NodeId s, NodeId t, std::uint64_t walks, std::uint64_t seed,
                             std::uint64_t max_steps, std::uint64_t& truncated) {
    RunningStats stats;
    const std::uint64_t pair_key = static_cast<std::uint64_t>(s) * g.node_count() + t;
    for (std::uint64_t k = 0; k < walks; ++k) {
        SplitMix64 rng = substream(seed, pair_key, k);
        const WalkResult r = simulate_walk(g, s, t, rng, max_steps);
        if (r.truncated) {
            ++truncated;
        } else {
            stats.add(static_cast<double>(r.steps));
        }
    }
    if (walks > 0 && stats.count == 0) {
        throw EstimationError("every walk from " + std::to_string(s) + " to " + std::to_string(t) +
                              " hit the step cap");
    }
    return stats;
}

}  // namespace detail

/// Hitting-time estimate for one ordered pair. Walk k uses the substream
/// (seed, s*n + t, k); truncated walks are excluded from the mean and counted.
inline WalkEstimate estimate_hitting(const Graph& g, NodeId s, NodeId t, const WalkConfig& config) {
    config.validate(g.node_count());
    if (s >= g.node_count() || t >= g.node_count()) {
        throw ParameterError("walk endpoint outside the graph");
    }
    WalkEstimate est;
    if (s == t) {
        est.trials_used = config.trials;
        return est;
    }
    const auto stats = detail::run_pair(g, s, t, config.trials, config.seed,
                                        config.effective_max_steps(g.node_count()), est.truncated);
    est.mean = stats.mean;
    est.trials_used = stats.count;
    est.ci_halfwidth = kNormal95 * std::sqrt(stats.variance() / static_cast<double>(stats.count));
    return est;
}

/// Average hitting time over ordered pairs, in hops.
///
/// AllPairs: the trials are spread evenly over all n(n-1) ordered pairs and the
/// estimate is the stratified mean of per-pair means. Requires trials >= 2n(n-1).
///
/// Sampled: config.sampled_pairs ordered pairs are drawn uniformly (with
/// replacement) and share the trials evenly; the interval comes from the spread
/// of the per-pair means, which covers both sampling stages.
inline WalkEstimate estimate_mean_latency(const Graph& g, const WalkConfig& config) {
    const std::size_t n = g.node_count();
    config.validate(n);
    if (n < 2) {
        throw ParameterError("mean latency estimate needs at least two nodes");
    }
    if (!is_connected(g)) {
        throw DisconnectedGraphError("mean latency estimate is undefined on a disconnected graph");
    }
    const std::uint64_t max_steps = config.effective_max_steps(n);

    std::vector<std::pair<NodeId, NodeId>> pairs;
    if (config.pair_mode == PairMode::AllPairs) {
        for (NodeId s = 0; s < n; ++s) {
            for (NodeId t = 0; t < n; ++t) {
                if (s != t) {
                    pairs.emplace_back(s, t);
                }
            }
        }
        if (config.trials < 2 * pairs.size()) {
            throw ParameterError("all-pairs estimate needs trials >= 2n(n-1) = " +
                                 std::to_string(2 * pairs.size()));
        }
    } else {
        SplitMix64 picker = substream(config.seed, std::numeric_limits<std::uint64_t>::max());
        for (std::size_t i = 0; i < config.sampled_pairs; ++i) {
            const auto flat = uniform_below(picker, n * (n - 1));
            const NodeId s = flat / (n - 1);
            NodeId t = flat % (n - 1);
            if (t >= s) {
                ++t;
            }
            pairs.emplace_back(s, t);
        }
        if (config.trials < pairs.size()) {
            throw ParameterError("sampled estimate needs trials >= number of sampled pairs");
        }
    }

    const std::uint64_t per_pair = config.trials / pairs.size();
    const std::uint64_t remainder = config.trials % pairs.size();
    WalkEstimate est;
    detail::RunningStats pair_means;
    double stratified_var = 0.0;
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const std::uint64_t walks = per_pair + (p < remainder ? 1 : 0);
        // Sampled pairs may repeat, so key their streams by draw index.
        const std::uint64_t seed =
            config.pair_mode == PairMode::AllPairs ? config.seed : SplitMix64::mix(config.seed + p);
        const auto stats = detail::run_pair(g, pairs[p].first, pairs[p].second, walks, seed, max_steps, est.truncated);
        est.trials_used += stats.count;
        pair_means.add(stats.mean);
        stratified_var += stats.variance() / static_cast<double>(stats.count);
    }
    const double count = static_cast<double>(pairs.size());
    est.mean = pair_means.mean;
    if (config.pair_mode == PairMode::AllPairs) {
        est.ci_halfwidth = kNormal95 * std::sqrt(stratified_var) / count;
    } else {
        est.ci_halfwidth = kNormal95 * std::sqrt(pair_means.variance() / count);
    }
    return est;
}

}  // namespace orw
