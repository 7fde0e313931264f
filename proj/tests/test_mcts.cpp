#include <doctest.h>

#include <cmath>

#include "flowsched/exact.hpp"
#include "flowsched/errors.hpp"
#include "flowsched/mcts.hpp"
#include "oracle.hpp"

using namespace flowsched;

TEST_CASE("normal-gamma update") {
    NormalGamma g;
    g.observe(-0.5);
    // mu' = (0.01·(−1) − 0.5)/1.01, beta' = 0.1 + 0.01·0.25/(2·1.01)
    CHECK(g.mu == doctest::Approx((-0.01 - 0.5) / 1.01));
    CHECK(g.lambda == doctest::Approx(1.01));
    CHECK(g.alpha == doctest::Approx(1.5));
    CHECK(g.beta == doctest::Approx(0.1 + 0.0025 / 2.02));

    // A long run of identical rewards concentrates the posterior on them.
    NormalGamma h;
    for (int t = 0; t < 2000; ++t) h.observe(-0.3);
    Rng rng(1);
    double sum = 0;
    for (int t = 0; t < 1000; ++t) sum += h.sample_mean(rng);
    CHECK(sum / 1000 == doctest::Approx(-0.3).epsilon(0.01));

    // The prior is wide enough to explore.
    double lo = 0, hi = -2;
    for (int t = 0; t < 1000; ++t) {
        const double x = NormalGamma{}.sample_mean(rng);
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    CHECK(hi - lo > 5);
}

TEST_CASE("tree search on the worked examples") {
    Rng rng(2);
    const Instance single = oracle::make({{4, 7}}, 1, 3);
    const auto one = run_mcts(single, {}, rng, Budget::iteration_count(1));
    CHECK(one.genome.priority[0] == 1);
    CHECK(one.cost.total == 28);
    CHECK(one.iterations == 1);

    CHECK(run_mcts(oracle::i2(), {}, rng, Budget::iteration_count(200)).cost.total == 21);
    CHECK(run_mcts(oracle::i4(), {}, rng, Budget::iteration_count(2000)).cost.total == 76);

    MctsConfig bad;
    bad.prior.beta = 0;
    CHECK_THROWS_AS((void)run_mcts(oracle::i2(), bad, rng, Budget::iteration_count(1)), InvalidInput);
}

TEST_CASE("tree search traces and determinism") {
    std::mt19937_64 gen(3);
    for (int t = 0; t < 5; ++t) {
        const Instance inst = oracle::random_instance(gen, 12, 2, 100, 0.6);
        std::vector<Cost> trace;
        Rng a(t);
        const auto r = run_mcts(inst, {}, a, Budget::iteration_count(3000), [&](const AnytimeEvent& e) {
            REQUIRE(oracle::feasible(inst, e.genome));
            REQUIRE_FALSE(oracle::dominated(inst, e.genome));
            REQUIRE(evaluate_genome(inst, e.genome).total == e.cost);
            if (!trace.empty()) REQUIRE(e.cost < trace.back());
            trace.push_back(e.cost);
        });
        CHECK(trace.back() == r.cost.total);
        Rng b(t);
        CHECK(run_mcts(inst, {}, b, Budget::iteration_count(3000)).genome == r.genome);
    }
}

TEST_CASE("a small node limit falls back to rollouts") {
    Rng rng(4);
    MctsConfig cfg;
    cfg.max_nodes = 3;
    CHECK(run_mcts(oracle::i4(), cfg, rng, Budget::iteration_count(3000)).cost.total == 76);
}

TEST_CASE("tree search finds small optima") {
    // Soft statistical property: the optimum in at least 95 of 100 runs.
    std::mt19937_64 gen(5);
    int hits = 0;
    for (int t = 0; t < 100; ++t) {
        const std::size_t m = 1 + gen() % 2;
        const Instance inst = oracle::random_instance(gen, 2 + gen() % 5, m, 100, 0.7);
        Rng rng(gen());
        hits += run_mcts(inst, {}, rng, Budget::iteration_count(100000)).cost.total == brute_force(inst).cost.total;
    }
    MESSAGE("optimum reached in " << hits << " of 100 runs");
    CHECK(hits >= 95);
}
