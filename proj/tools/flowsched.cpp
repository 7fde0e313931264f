// flowsched: command-line front end for the solver library.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "flowsched/bounds.hpp"
#include "flowsched/errors.hpp"
#include "flowsched/experiments.hpp"
#include "flowsched/io.hpp"
#include "flowsched/milp_export.hpp"
#include "flowsched/reduction.hpp"

namespace fs = flowsched;

namespace {

constexpr int exit_malformed = 2;
constexpr int exit_unsolvable = 3;
constexpr std::uint64_t default_solve_iterations = 1000;

std::string read_text(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw fs::InvalidInput(fmt::format("cannot read {}", path));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(fmt::format("cannot write {}", path));
    out << text;
}

std::string with_newline(std::string s) {
    s += '\n';
    return s;
}

std::size_t default_threads() {
    if (const char* env = std::getenv("FLOWSCHED_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    return 1;
}

struct Common {
    std::uint64_t seed = 0;
    std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--seed", c.seed, "Master RNG seed");
    cmd->add_option("--out", c.out, "Output file (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted-flowtime scheduling with a common arrival deadline"};
    app.require_subcommand(1);

    Common common;

    // generate
    fs::GeneratorConfig gen;
    int gen_index = 0;
    fs::Time gen_deadline = -1;
    fs::Weight gen_weight = 0;
    auto* generate = app.add_subcommand("generate", "Draw a random instance");
    add_common(generate, common);
    generate->add_option("-n,--jobs", gen.n, "Number of jobs")->check(CLI::PositiveNumber);
    generate->add_option("-m,--machines", gen.m, "Number of machines")->check(CLI::PositiveNumber);
    generate->add_option("--min", gen.value_min, "Smallest p and w");
    generate->add_option("--max", gen.value_max, "Largest p and w");
    auto* opt_deadline = generate->add_option("-d,--deadline", gen_deadline, "Explicit deadline");
    auto* opt_index = generate->add_option("--deadline-index", gen_index, "Deadline grid point 1..8 (fraction i/10)");
    generate->add_option("--fraction", gen.deadline_fraction, "d = floor(fraction * sum(p) / m)");
    auto* opt_weight = generate->add_option("--fixed-weight", gen_weight, "Give every job this weight");

    // solve
    std::string instance_path;
    std::string algo = "ils";
    std::int64_t budget_ms = 0;
    std::uint64_t iterations = 0;
    auto* solve = app.add_subcommand("solve", "Solve an instance and print the schedule");
    add_common(solve, common);
    solve->add_option("instance", instance_path, "Instance JSON ('-' for stdin)")->required();
    solve->add_option("--algo", algo, "Algorithm")->check(CLI::IsMember(fs::known_algorithms()));
    auto* solve_ms = solve->add_option("--budget-ms", budget_ms, "Wall-clock budget")->check(CLI::PositiveNumber);
    auto* solve_it = solve->add_option("--iterations", iterations, "Iteration budget (default 1000)");

    // lb
    auto* lb = app.add_subcommand("lb", "Lower bound for a single-machine instance");
    add_common(lb, common);
    lb->add_option("instance", instance_path, "Instance JSON ('-' for stdin)")->required();

    // gap-study
    fs::GapStudyConfig gap;
    std::size_t gap_fractions = 50;
    fs::Weight gap_weight = 0;
    auto* gap_study = app.add_subcommand("gap-study", "Naive WSPT versus optimum on small instances");
    add_common(gap_study, common);
    gap_study->add_option("--n-min", gap.n_min);
    gap_study->add_option("--n-max", gap.n_max);
    gap_study->add_option("--fractions", gap_fractions, "Number of evenly spaced deadline fractions");
    gap_study->add_option("--samples", gap.samples, "Instances per cell");
    auto* gap_weight_opt = gap_study->add_option("--fixed-weight", gap_weight);

    // bench
    fs::BenchConfig bench;
    std::string bench_algos = "naive,wspt-rr,wspt-ff,ga,ils,mcts";
    std::vector<std::string> bench_files;
    std::size_t bench_count = 10;
    fs::GeneratorConfig bench_gen;
    int bench_index = 0;
    std::string anytime_path;
    auto* bench_cmd = app.add_subcommand("bench", "Run a portfolio over an instance set");
    add_common(bench_cmd, common);
    bench_cmd->add_option("--algos", bench_algos, "Comma-separated portfolio");
    bench_cmd->add_option("--instances", bench_files, "Instance files (otherwise generated)");
    bench_cmd->add_option("--count", bench_count, "Generated instances");
    bench_cmd->add_option("-n,--jobs", bench_gen.n)->check(CLI::PositiveNumber);
    bench_cmd->add_option("-m,--machines", bench_gen.m)->check(CLI::PositiveNumber);
    bench_cmd->add_option("--deadline-index", bench_index, "Fixed grid point; default cycles through 1..8");
    bench_cmd->add_option("--budget-scale", bench.budget_scale_ms, "Per-run wall budget is scale * m * n ms");
    auto* bench_ms = bench_cmd->add_option("--budget-ms", budget_ms, "Fixed per-run wall budget")->check(CLI::PositiveNumber);
    auto* bench_it = bench_cmd->add_option("--iterations", iterations, "Iteration budget per run (reproducible)");
    bench_cmd->add_option("--threads", bench.threads, "Worker threads (env FLOWSCHED_THREADS)")->default_val(default_threads());
    bench_cmd->add_option("--anytime", anytime_path, "Write the anytime traces here");

    // reduce-subsetsum
    std::string subset_json;
    std::int64_t reduce_cap = fs::default_reduction_magnitude_cap;
    auto* reduce = app.add_subcommand("reduce-subsetsum", "Encode a subset-sum instance");
    add_common(reduce, common);
    reduce->add_option("subsetsum", subset_json, R"(JSON such as {"values":[1,2,3],"target":3})")->required();
    reduce->add_option("--cap", reduce_cap, "Largest accepted value total");

    // export-milp
    bool wspt_cuts = false;
    auto* milp = app.add_subcommand("export-milp", "Write the MILP model in LP format");
    add_common(milp, common);
    milp->add_option("instance", instance_path, "Instance JSON ('-' for stdin)")->required();
    milp->add_flag("--wspt-cuts", wspt_cuts, "Add the WSPT cut block");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_malformed;
    }

    try {
        if (*generate) {
            gen.seed = common.seed;
            if (*opt_deadline) gen.deadline = gen_deadline;
            if (*opt_index) gen.deadline_index = gen_index;
            if (*opt_weight) gen.fixed_weight = gen_weight;
            write_text(common.out, with_newline(fs::instance_to_json(fs::generate_instance(gen))));
        } else if (*solve) {
            const fs::Instance instance = fs::parse_instance(read_text(instance_path));
            fs::SolveOptions options;
            options.seed = common.seed;
            options.budget = fs::Budget{};
            if (*solve_ms) options.budget.wall = std::chrono::milliseconds{budget_ms};
            if (*solve_it) options.budget.iterations = iterations;
            if (!*solve_ms && !*solve_it) options.budget.iterations = default_solve_iterations;
            const fs::SolveResult result = fs::solve(instance, algo, options);
            write_text(common.out, with_newline(fs::solution_to_json(fs::make_solution(instance, result.genome))));
        } else if (*lb) {
            const fs::Instance instance = fs::parse_instance(read_text(instance_path));
            write_text(common.out, fmt::format("{}\n", fs::lower_bound(instance).value));
        } else if (*gap_study) {
            gap.seed = common.seed;
            gap.fractions = fs::interior_fractions(gap_fractions);
            if (*gap_weight_opt) gap.fixed_weight = gap_weight;
            write_text(common.out, fs::gap_study_csv(fs::gap_study(gap)));
        } else if (*bench_cmd) {
            bench.seed = common.seed;
            std::stringstream list(bench_algos);
            for (std::string a; std::getline(list, a, ',');) {
                if (!a.empty()) bench.portfolio.push_back(a);
            }
            if (*bench_ms) bench.budget_ms = budget_ms;
            if (*bench_it) bench.iterations = iterations;
            std::vector<fs::NamedInstance> instances;
            if (!bench_files.empty()) {
                for (const std::string& path : bench_files) instances.push_back({path, fs::parse_instance(read_text(path))});
            } else {
                for (std::size_t k = 0; k < bench_count; ++k) {
                    fs::GeneratorConfig g = bench_gen;
                    g.deadline_index = bench_index > 0 ? bench_index : static_cast<int>(k % 8) + 1;
                    g.seed = fs::derive_seed(common.seed, {k});
                    instances.push_back({fmt::format("gen{}", k), fs::generate_instance(g)});
                }
            }
            const auto records = fs::run_benchmark(bench, instances);
            write_text(common.out, fs::bench_csv(records));
            if (!anytime_path.empty()) write_text(anytime_path, fs::anytime_csv(records, bench.iterations.has_value()));
            for (const auto& s : fs::summarize(records)) {
                std::cerr << fmt::format("{:<10} trimmed mean gap {}  max gap {}\n", s.algorithm,
                                         fs::format_double(s.trimmed_mean_gap), fs::format_double(s.max_gap));
            }
        } else if (*reduce) {
            const auto out = fs::encode_subset_sum(fs::parse_subset_sum(subset_json), reduce_cap);
            write_text(common.out, with_newline(fs::reduction_to_json(out)));
        } else if (*milp) {
            write_text(common.out, fs::export_milp(fs::parse_instance(read_text(instance_path)), wspt_cuts));
        }
    } catch (const fs::InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_malformed;
    } catch (const fs::InstanceTooLarge& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_unsolvable;
    } catch (const fs::ContractViolation& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_unsolvable;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
