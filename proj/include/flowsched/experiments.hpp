#pragma once

// Instance generation, the WSPT-vs-optimum gap study, portfolio benchmarks
// with anytime traces, and summary statistics.

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flowsched/anytime.hpp"
#include "flowsched/core.hpp"

namespace flowsched {

struct GeneratorConfig {
    std::size_t n = 20;
    std::size_t m = 1;
    std::int64_t value_min = 1;
    std::int64_t value_max = 100;
    /// Exactly one deadline rule is used, in this precedence: explicit
    /// deadline, grid index (fraction index/10), fraction.
    std::optional<Time> deadline;
    std::optional<int> deadline_index;
    double deadline_fraction = 0.5;
    /// All weights set to this value instead of being drawn.
    std::optional<Weight> fixed_weight;
    std::uint64_t seed = 0;
};

/// Processing times and weights uniform on [value_min, value_max];
/// d = floor(fraction · Σp / m).
[[nodiscard]] Instance generate_instance(const GeneratorConfig& config);

/// Seed for a sub-run derived from a master seed and a path of indices.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

/// `count` evenly spaced values strictly inside (0, 1): i/(count+1).
[[nodiscard]] std::vector<double> interior_fractions(std::size_t count);

struct GapStudyConfig {
    std::size_t n_min = 4;
    std::size_t n_max = 9;
    std::vector<double> fractions = interior_fractions(50);
    std::size_t samples = 1000;
    std::optional<Weight> fixed_weight;
    std::uint64_t seed = 0;
};

struct GapStudyRow {
    std::size_t n;
    double fraction;
    std::size_t samples;
    double mean;
    double q75;
    double q90;
    double max;
};

/// Per (n, fraction) cell: statistics of (naive WSPT cost − OPT) / OPT on single
/// machine instances, OPT from brute_force. Throws InstanceTooLarge when n_max
/// exceeds the brute force cap.
[[nodiscard]] std::vector<GapStudyRow> gap_study(const GapStudyConfig& config);

[[nodiscard]] std::string gap_study_csv(std::span<const GapStudyRow> rows);

/// Linear-interpolation quantile of the sorted sample at probability q.
[[nodiscard]] double quantile(std::vector<double> values, double q);

/// Drops floor(trim·N/2) values from each tail and averages the rest. Throws
/// InvalidInput on an empty list or trim outside [0, 1).
[[nodiscard]] double trimmed_mean(std::vector<double> values, double trim_fraction);

/// (cost − reference) / reference; infinite when there is no cost.
[[nodiscard]] double relative_gap(std::optional<Cost> cost, Cost reference);

// Portfolio ------------------------------------------------------------------

/// naive, wspt-rr, wspt-ff, ga, ga-rr, ga-ff, ga-rr-ff, ils, mcts, exact.
[[nodiscard]] const std::vector<std::string>& known_algorithms();

struct SolveOptions {
    Budget budget = Budget::wall_ms(1000);
    std::uint64_t seed = 0;
    std::uint64_t search_cap = std::uint64_t{1} << 24;
};

/// Runs one algorithm by name. Throws InvalidInput for unknown names and
/// InstanceTooLarge when exact is out of reach.
[[nodiscard]] SolveResult solve(const Instance& instance, const std::string& algorithm, const SolveOptions& options,
                                const AnytimeObserver& observer = {});

struct TracePoint {
    double elapsed_ms;
    std::uint64_t iteration;
    Cost cost;
};

struct BenchRecord {
    std::string instance_id;
    std::string algorithm;
    std::uint64_t seed = 0;
    std::optional<Cost> final_cost;  ///< empty when the algorithm found no solution
    double gap = std::numeric_limits<double>::infinity();
    std::vector<TracePoint> trace;
};

struct NamedInstance {
    std::string id;
    Instance instance;
};

struct BenchConfig {
    std::vector<std::string> portfolio;
    /// Wall budget per run: scale_ms · m · n milliseconds.
    double budget_scale_ms = 4.0;
    /// Fixed wall budget per run; overrides the scale rule.
    std::optional<std::int64_t> budget_ms;
    /// When set, runs use this iteration budget instead and are reproducible.
    std::optional<std::uint64_t> iterations;
    std::uint64_t seed = 0;
    std::size_t threads = 1;
};

/// Runs every algorithm on every instance with its own derived seed and
/// computes gaps to the per-instance best. Records come back ordered by
/// instance, then portfolio position, whatever the thread count.
[[nodiscard]] std::vector<BenchRecord> run_benchmark(const BenchConfig& config,
                                                     const std::vector<NamedInstance>& instances);

/// instance_id,algo,seed,final_cost,gap
[[nodiscard]] std::string bench_csv(std::span<const BenchRecord> records);
/// instance_id,algo,elapsed_ms,best_cost (or iteration instead of elapsed_ms).
[[nodiscard]] std::string anytime_csv(std::span<const BenchRecord> records, bool iteration_axis);

struct AlgorithmSummary {
    std::string algorithm;
    double trimmed_mean_gap;
    double max_gap;
};

/// Per algorithm: trimmed mean (10% cut) and maximum of the gaps.
[[nodiscard]] std::vector<AlgorithmSummary> summarize(std::span<const BenchRecord> records,
                                                      double trim_fraction = 0.1);

[[nodiscard]] std::string format_double(double value);

}  // namespace flowsched
