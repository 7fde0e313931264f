#include <doctest.h>

#include <cmath>

#include "flowsched/errors.hpp"
#include "flowsched/exact.hpp"
#include "flowsched/experiments.hpp"
#include "flowsched/io.hpp"
#include "flowsched/rules.hpp"
#include "oracle.hpp"

using namespace flowsched;

TEST_CASE("instance generator") {
    GeneratorConfig cfg;
    cfg.n = 10;
    cfg.m = 2;
    cfg.value_min = 10;
    cfg.value_max = 10;
    cfg.deadline_index = 4;
    CHECK(generate_instance(cfg).deadline() == 20);

    cfg.deadline = 0;
    CHECK(generate_instance(cfg).deadline() == 0);

    GeneratorConfig frac;
    frac.n = 10;
    frac.value_min = frac.value_max = 10;
    frac.deadline_fraction = 0.29;
    CHECK(generate_instance(frac).deadline() == 29);

    GeneratorConfig r;
    r.n = 50;
    r.m = 3;
    r.seed = 42;
    const Instance a = generate_instance(r);
    CHECK(instance_to_json(a) == instance_to_json(generate_instance(r)));
    for (const Job& j : a.jobs()) {
        CHECK(j.p >= 1);
        CHECK(j.p <= 100);
        CHECK(j.w >= 1);
        CHECK(j.w <= 100);
    }
    CHECK(a.deadline() == static_cast<Time>(0.5 * a.total_processing() / 3));
    r.seed = 43;
    CHECK(instance_to_json(a) != instance_to_json(generate_instance(r)));

    r.fixed_weight = 7;
    const Instance fixed = generate_instance(r);
    for (const Job& j : fixed.jobs()) CHECK(j.w == 7);

    GeneratorConfig bad;
    bad.deadline_index = 9;
    CHECK_THROWS_AS((void)generate_instance(bad), InvalidInput);
    bad.deadline_index.reset();
    bad.value_min = 0;
    CHECK_THROWS_AS((void)generate_instance(bad), InvalidInput);
}

TEST_CASE("derived seeds") {
    CHECK(derive_seed(1, {2, 3}) == derive_seed(1, {2, 3}));
    CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
    CHECK(derive_seed(1, {2}) != derive_seed(2, {2}));
    const auto f = interior_fractions(4);
    REQUIRE(f.size() == 4);
    CHECK(f[0] == doctest::Approx(0.2));
    CHECK(f[3] == doctest::Approx(0.8));
}

TEST_CASE("summary statistics") {
    CHECK(trimmed_mean({1, 2, 3}, 0) == 2);
    std::vector<double> twenty(20, 1.0);
    twenty[0] = -100;
    twenty[19] = 100;
    CHECK(trimmed_mean(twenty, 0.1) == 1.0);
    CHECK(trimmed_mean(twenty, 0.0) == doctest::Approx(18.0 / 20));
    twenty[19] = 1000;
    CHECK(trimmed_mean(twenty, 0.0) == doctest::Approx(918.0 / 20));
    CHECK(trimmed_mean({5, 5, 5, 5}, 0.5) == 5);
    CHECK_THROWS_AS((void)trimmed_mean({}, 0.1), InvalidInput);
    CHECK_THROWS_AS((void)trimmed_mean({1}, 1.0), InvalidInput);

    const double inf = std::numeric_limits<double>::infinity();
    CHECK(std::isinf(trimmed_mean({0, 0, inf}, 0.0)));
    CHECK(trimmed_mean({0, 0, 0, 0, 0, 0, 0, 0, 0, inf}, 0.2) == 0.0);

    CHECK(quantile({1, 2, 3, 4, 5}, 0.5) == 3);
    CHECK(quantile({1, 2, 3, 4}, 0.75) == doctest::Approx(3.25));
    CHECK(quantile({4, 1}, 0.9) == doctest::Approx(3.7));
    CHECK(quantile({7}, 0.3) == 7);

    CHECK(relative_gap(110, 100) == doctest::Approx(0.1));
    CHECK(std::isinf(relative_gap(std::nullopt, 100)));
    CHECK(format_double(inf) == "inf");
    CHECK(format_double(0.125) == "0.125000");
}

TEST_CASE("gap study") {
    GapStudyConfig eq;
    eq.n_min = eq.n_max = 4;
    eq.fractions = interior_fractions(5);
    eq.samples = 50;
    eq.fixed_weight = 1;
    for (const auto& row : gap_study(eq)) {
        CHECK(row.max == 0.0);
        CHECK(row.mean == 0.0);
    }

    GapStudyConfig full;
    full.n_min = 3;
    full.n_max = 6;
    full.fractions = {1.0};
    full.samples = 50;
    for (const auto& row : gap_study(full)) CHECK(row.max == 0.0);

    GapStudyConfig eight;
    eight.n_min = eight.n_max = 8;
    eight.samples = 200;
    const auto rows = gap_study(eight);
    CHECK(rows.size() == 50);
    for (const auto& row : rows) {
        CHECK(row.mean <= 0.05);
        CHECK(row.mean >= 0.0);
        CHECK(row.q75 <= row.q90);
        CHECK(row.q90 <= row.max);
    }
    const std::string csv = gap_study_csv(rows);
    CHECK(csv.rfind("n,fraction,samples,mean,q75,q90,max\n", 0) == 0);
    CHECK(csv == gap_study_csv(gap_study(eight)));

    GapStudyConfig big;
    big.n_max = 30;
    CHECK_THROWS_AS((void)gap_study(big), InstanceTooLarge);
}

TEST_CASE("the mean gap peaks at an interior deadline") {
    for (std::size_t n = 4; n <= 7; ++n) {
        GapStudyConfig cfg;
        cfg.n_min = cfg.n_max = n;
        cfg.fractions = interior_fractions(19);
        cfg.samples = 200;
        cfg.seed = n;
        const auto rows = gap_study(cfg);
        const auto peak = std::max_element(rows.begin(), rows.end(),
                                           [](const auto& a, const auto& b) { return a.mean < b.mean; });
        MESSAGE("n = " << n << " peak at " << peak->fraction);
        CHECK(peak->fraction > 0.1);
        CHECK(peak->fraction < 0.6);
    }
}

TEST_CASE("solver dispatch") {
    SolveOptions opt;
    opt.budget = Budget::iteration_count(50);
    for (const std::string& algo : known_algorithms()) {
        const auto r = solve(oracle::i4(), algo, opt);
        CHECK(is_feasible(oracle::i4(), r.genome));
        if (algo != "naive") CHECK(r.cost.total == 76);
    }
    CHECK(solve(oracle::i4(), "naive", opt).cost.total == 78);
    CHECK_THROWS_AS((void)solve(oracle::i4(), "cplex", opt), InvalidInput);
    CHECK_THROWS_AS((void)solve(oracle::i4(), "ga-xx", opt), InvalidInput);
    opt.search_cap = 4;
    CHECK_THROWS_AS((void)solve(oracle::i4(), "exact", opt), InstanceTooLarge);
}

TEST_CASE("benchmark harness") {
    std::vector<NamedInstance> small;
    std::vector<NamedInstance> medium;
    for (std::uint64_t k = 0; k < 6; ++k) {
        GeneratorConfig g;
        g.n = 5;
        g.m = 1 + k % 2;
        g.deadline_index = static_cast<int>(k % 8) + 1;
        g.seed = k;
        small.push_back({"s" + std::to_string(k), generate_instance(g)});
        g.n = 9;
        g.m = 2;
        medium.push_back({"m" + std::to_string(k), generate_instance(g)});
    }

    BenchConfig exact;
    exact.portfolio = {"exact"};
    exact.iterations = 1;
    for (const auto& r : run_benchmark(exact, small)) CHECK(r.gap == 0.0);

    BenchConfig cfg;
    cfg.portfolio = {"naive", "ils", "ga", "mcts", "exact"};
    cfg.iterations = 30;
    cfg.seed = 5;
    const auto records = run_benchmark(cfg, medium);
    REQUIRE(records.size() == 30);
    for (std::size_t i = 0; i < medium.size(); ++i) {
        const auto* row = &records[i * 5];
        CHECK(row[0].instance_id == medium[i].id);
        CHECK(row[1].gap <= row[0].gap);
        double best = std::numeric_limits<double>::infinity();
        for (int a = 0; a < 5; ++a) {
            CHECK(row[a].gap >= 0.0);
            best = std::min(best, row[a].gap);
            for (std::size_t k = 1; k < row[a].trace.size(); ++k) CHECK(row[a].trace[k].cost < row[a].trace[k - 1].cost);
            CHECK(row[a].trace.back().cost == *row[a].final_cost);
        }
        CHECK(best == 0.0);
        CHECK(row[4].gap == 0.0);
    }

    const std::string csv = bench_csv(records);
    CHECK(csv.rfind("instance_id,algo,seed,final_cost,gap\n", 0) == 0);
    BenchConfig threaded = cfg;
    threaded.threads = 3;
    const auto again = run_benchmark(threaded, medium);
    CHECK(bench_csv(again) == csv);
    CHECK(anytime_csv(again, true) == anytime_csv(records, true));
    CHECK(anytime_csv(records, true).rfind("instance_id,algo,iteration,best_cost\n", 0) == 0);
    CHECK(anytime_csv(records, false).rfind("instance_id,algo,elapsed_ms,best_cost\n", 0) == 0);

    const auto summary = summarize(records);
    REQUIRE(summary.size() == 5);
    CHECK(summary[0].algorithm == "naive");
    CHECK(summary[4].max_gap == 0.0);

    // Out of reach for the exact oracle: recorded without a cost.
    BenchConfig wide;
    wide.portfolio = {"naive", "exact"};
    wide.iterations = 1;
    GeneratorConfig g;
    g.n = 20;
    g.m = 3;
    const auto rec = run_benchmark(wide, {{"big", generate_instance(g)}});
    CHECK_FALSE(rec[1].final_cost.has_value());
    CHECK(std::isinf(rec[1].gap));
    CHECK(rec[0].gap == 0.0);
    CHECK(bench_csv(rec).find("big,exact,") != std::string::npos);

    BenchConfig none;
    CHECK_THROWS_AS((void)run_benchmark(none, small), InvalidInput);
    none.portfolio = {"simplex"};
    CHECK_THROWS_AS((void)run_benchmark(none, small), InvalidInput);
}
