#include "flowsched/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include <fmt/format.h>

#include "flowsched/errors.hpp"
#include "flowsched/exact.hpp"
#include "flowsched/mcts.hpp"
#include "flowsched/metaheuristics.hpp"
#include "flowsched/rules.hpp"

namespace flowsched {

Instance generate_instance(const GeneratorConfig& config) {
    if (config.n < 1) throw InvalidInput("generator needs n >= 1");
    if (config.m < 1) throw InvalidInput("generator needs m >= 1");
    if (config.value_min < 1 || config.value_min > config.value_max) {
        throw InvalidInput("generator value range must satisfy 1 <= min <= max");
    }
    if (config.fixed_weight && *config.fixed_weight < 1) throw InvalidInput("fixed weight must be >= 1");

    Rng rng(config.seed);
    std::uniform_int_distribution<std::int64_t> value(config.value_min, config.value_max);
    std::vector<Job> jobs(config.n);
    Time total = 0;
    for (Job& job : jobs) {
        job.p = value(rng);
        job.w = value(rng);
        if (config.fixed_weight) job.w = *config.fixed_weight;
        total += job.p;
    }

    const Time m = static_cast<Time>(config.m);
    Time d = 0;
    if (config.deadline) {
        d = *config.deadline;
    } else if (config.deadline_index) {
        const int idx = *config.deadline_index;
        if (idx < 1 || idx > 8) throw InvalidInput("deadline index must be in 1..8");
        d = (idx * total) / (10 * m);
    } else {
        const double f = config.deadline_fraction;
        if (!(f > 0.0) || !std::isfinite(f)) throw InvalidInput("deadline fraction must be positive");
        // The epsilon keeps products like 0.29·100 from flooring to 28.
        d = static_cast<Time>(std::floor(f * static_cast<double>(total) / static_cast<double>(m) + 1e-9));
    }
    return Instance(std::move(jobs), config.m, d);
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
    std::vector<std::uint32_t> words;
    words.reserve(2 * (path.size() + 1));
    auto push = [&](std::uint64_t v) {
        words.push_back(static_cast<std::uint32_t>(v));
        words.push_back(static_cast<std::uint32_t>(v >> 32U));
    };
    push(master);
    for (std::uint64_t v : path) push(v);
    std::seed_seq seq(words.begin(), words.end());
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return (static_cast<std::uint64_t>(out[1]) << 32U) | out[0];
}

std::vector<double> interior_fractions(std::size_t count) {
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = static_cast<double>(i + 1) / static_cast<double>(count + 1);
    return out;
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw InvalidInput("quantile of an empty sample");
    if (!(q >= 0.0 && q <= 1.0)) throw InvalidInput("quantile probability must be in [0, 1]");
    std::sort(values.begin(), values.end());
    const double h = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    if (lo == hi || values[lo] == values[hi]) return values[lo];
    return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

double trimmed_mean(std::vector<double> values, double trim_fraction) {
    if (values.empty()) throw InvalidInput("trimmed mean of an empty list");
    if (!(trim_fraction >= 0.0 && trim_fraction < 1.0)) throw InvalidInput("trim fraction must be in [0, 1)");
    std::sort(values.begin(), values.end());
    const auto cut = static_cast<std::size_t>(std::floor(trim_fraction * static_cast<double>(values.size()) / 2.0));
    const auto first = values.begin() + static_cast<std::ptrdiff_t>(cut);
    const auto last = values.end() - static_cast<std::ptrdiff_t>(cut);
    if (*std::prev(last) == std::numeric_limits<double>::infinity()) return std::numeric_limits<double>::infinity();
    return std::accumulate(first, last, 0.0) / static_cast<double>(last - first);
}

double relative_gap(std::optional<Cost> cost, Cost reference) {
    if (!cost) return std::numeric_limits<double>::infinity();
    if (reference == 0) return *cost == 0 ? 0.0 : std::numeric_limits<double>::infinity();
    return static_cast<double>(*cost - reference) / static_cast<double>(reference);
}

std::string format_double(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (std::isnan(value)) return "nan";
    return fmt::format("{:.6f}", value);
}

std::vector<GapStudyRow> gap_study(const GapStudyConfig& config) {
    if (config.n_min < 1 || config.n_min > config.n_max) throw InvalidInput("gap study needs 1 <= n_min <= n_max");
    if (config.samples < 1) throw InvalidInput("gap study needs at least one sample per cell");
    if (config.fractions.empty()) throw InvalidInput("gap study needs at least one deadline fraction");
    if (config.n_max >= 63 || (std::uint64_t{1} << config.n_max) > default_search_cap) {
        throw InstanceTooLarge(fmt::format("gap study with n = {} exceeds the brute force cap", config.n_max));
    }

    std::vector<GapStudyRow> rows;
    std::vector<double> gaps(config.samples);
    for (std::size_t n = config.n_min; n <= config.n_max; ++n) {
        for (std::size_t f = 0; f < config.fractions.size(); ++f) {
            for (std::size_t s = 0; s < config.samples; ++s) {
                GeneratorConfig gen;
                gen.n = n;
                gen.m = 1;
                gen.deadline_fraction = config.fractions[f];
                gen.fixed_weight = config.fixed_weight;
                gen.seed = derive_seed(config.seed, {n, f, s});
                const Instance instance = generate_instance(gen);
                const Cost opt = brute_force(instance).cost.total;
                const Cost wspt = evaluate_genome(instance, naive_single(instance)).total;
                gaps[s] = relative_gap(wspt, opt);
            }
            rows.push_back({n, config.fractions[f], config.samples,
                            std::accumulate(gaps.begin(), gaps.end(), 0.0) / static_cast<double>(gaps.size()),
                            quantile(gaps, 0.75), quantile(gaps, 0.9), *std::max_element(gaps.begin(), gaps.end())});
        }
    }
    return rows;
}

std::string gap_study_csv(std::span<const GapStudyRow> rows) {
    std::string out = "n,fraction,samples,mean,q75,q90,max\n";
    for (const GapStudyRow& r : rows) {
        out += fmt::format("{},{},{},{},{},{},{}\n", r.n, format_double(r.fraction), r.samples, format_double(r.mean),
                           format_double(r.q75), format_double(r.q90), format_double(r.max));
    }
    return out;
}

const std::vector<std::string>& known_algorithms() {
    static const std::vector<std::string> names{"naive", "wspt-rr", "wspt-ff", "ga",   "ga-rr",
                                                "ga-ff", "ga-rr-ff", "ils",    "mcts", "exact"};
    return names;
}

namespace {

SolveResult single_shot(const Instance& instance, const Genome& genome, const Budget& budget,
                        const AnytimeObserver& observer) {
    RunMonitor monitor(budget, observer);
    monitor.offer(genome, evaluate_genome(instance, genome));
    return monitor.result();
}

Genome naive_genome(const Instance& instance) {
    return instance.machines() == 1 ? naive_single(instance) : naive(instance);
}

}  // namespace

SolveResult solve(const Instance& instance, const std::string& algorithm, const SolveOptions& options,
                  const AnytimeObserver& observer) {
    Rng rng(options.seed);
    if (algorithm == "naive") return single_shot(instance, naive_genome(instance), options.budget, observer);
    if (algorithm == "wspt-rr") return single_shot(instance, assign_round_robin(instance), options.budget, observer);
    if (algorithm == "wspt-ff") return single_shot(instance, assign_first_free(instance), options.budget, observer);
    if (algorithm == "exact") {
        const ExactResult exact = brute_force(instance, options.search_cap);
        return single_shot(instance, exact.genome, options.budget, observer);
    }
    if (algorithm.rfind("ga", 0) == 0) {
        GaConfig config;
        if (algorithm == "ga-rr" || algorithm == "ga-rr-ff") config.seeds.push_back(assign_round_robin(instance));
        if (algorithm == "ga-ff" || algorithm == "ga-rr-ff") config.seeds.push_back(assign_first_free(instance));
        if (algorithm == "ga" || !config.seeds.empty()) return run_ga(instance, config, rng, options.budget, observer);
    }
    if (algorithm == "ils") {
        IlsConfig config;
        config.seed = naive_genome(instance);
        return run_ils(instance, config, rng, options.budget, observer);
    }
    if (algorithm == "mcts") return run_mcts(instance, MctsConfig{}, rng, options.budget, observer);
    throw InvalidInput(fmt::format("unknown algorithm '{}'", algorithm));
}

std::vector<BenchRecord> run_benchmark(const BenchConfig& config, const std::vector<NamedInstance>& instances) {
    if (config.portfolio.empty()) throw InvalidInput("benchmark portfolio is empty");
    for (const std::string& algo : config.portfolio) {
        const auto& known = known_algorithms();
        if (std::find(known.begin(), known.end(), algo) == known.end()) {
            throw InvalidInput(fmt::format("unknown algorithm '{}'", algo));
        }
    }
    const std::size_t per_instance = config.portfolio.size();
    std::vector<BenchRecord> records(instances.size() * per_instance);

    auto run_cell = [&](std::size_t cell) {
        const std::size_t i = cell / per_instance;
        const std::size_t a = cell % per_instance;
        const Instance& instance = instances[i].instance;
        BenchRecord& rec = records[cell];
        rec.instance_id = instances[i].id;
        rec.algorithm = config.portfolio[a];
        rec.seed = derive_seed(config.seed, {i, a});

        SolveOptions options;
        options.seed = rec.seed;
        if (config.iterations) {
            options.budget = Budget::iteration_count(*config.iterations);
        } else if (config.budget_ms) {
            options.budget = Budget::wall_ms(*config.budget_ms);
        } else {
            const double ms = config.budget_scale_ms * static_cast<double>(instance.machines() * instance.size());
            options.budget = Budget::wall_ms(std::max<std::int64_t>(1, std::llround(ms)));
        }
        auto record = [&rec](const AnytimeEvent& e) { rec.trace.push_back({e.elapsed_ms, e.iteration, e.cost}); };
        try {
            rec.final_cost = solve(instance, rec.algorithm, options, record).cost.total;
        } catch (const InstanceTooLarge&) {
            rec.final_cost.reset();  // out of reach counts as no solution
        }
    };

    std::size_t threads = std::max<std::size_t>(1, config.threads);
    threads = std::min(threads, records.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t cell = next++; cell < records.size(); cell = next++) {
            try {
                run_cell(cell);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    for (std::size_t i = 0; i < instances.size(); ++i) {
        std::optional<Cost> best;
        for (std::size_t a = 0; a < per_instance; ++a) {
            const auto& cost = records[i * per_instance + a].final_cost;
            if (cost && (!best || *cost < *best)) best = cost;
        }
        for (std::size_t a = 0; a < per_instance; ++a) {
            BenchRecord& rec = records[i * per_instance + a];
            if (best) rec.gap = relative_gap(rec.final_cost, *best);
        }
    }
    return records;
}

std::string bench_csv(std::span<const BenchRecord> records) {
    std::string out = "instance_id,algo,seed,final_cost,gap\n";
    for (const BenchRecord& r : records) {
        out += fmt::format("{},{},{},{},{}\n", r.instance_id, r.algorithm, r.seed,
                           r.final_cost ? fmt::format("{}", *r.final_cost) : std::string(), format_double(r.gap));
    }
    return out;
}

std::string anytime_csv(std::span<const BenchRecord> records, bool iteration_axis) {
    std::string out = iteration_axis ? "instance_id,algo,iteration,best_cost\n" : "instance_id,algo,elapsed_ms,best_cost\n";
    for (const BenchRecord& r : records) {
        for (const TracePoint& p : r.trace) {
            out += iteration_axis ? fmt::format("{},{},{},{}\n", r.instance_id, r.algorithm, p.iteration, p.cost)
                                  : fmt::format("{},{},{:.3f},{}\n", r.instance_id, r.algorithm, p.elapsed_ms, p.cost);
        }
    }
    return out;
}

std::vector<AlgorithmSummary> summarize(std::span<const BenchRecord> records, double trim_fraction) {
    std::vector<std::string> order;
    for (const BenchRecord& r : records) {
        if (std::find(order.begin(), order.end(), r.algorithm) == order.end()) order.push_back(r.algorithm);
    }
    std::vector<AlgorithmSummary> out;
    for (const std::string& algo : order) {
        std::vector<double> gaps;
        for (const BenchRecord& r : records) {
            if (r.algorithm == algo) gaps.push_back(r.gap);
        }
        out.push_back({algo, trimmed_mean(gaps, trim_fraction), *std::max_element(gaps.begin(), gaps.end())});
    }
    return out;
}

}  // namespace flowsched
