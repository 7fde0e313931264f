#include <doctest.h>

#include <limits>
#include <optional>

#include "flowsched/core.hpp"
#include "flowsched/errors.hpp"
#include "flowsched/exact.hpp"
#include "flowsched/rules.hpp"
#include "oracle.hpp"

using namespace flowsched;

namespace {

Genome bits(std::initializer_list<int> priority) {
    Genome g(priority.size());
    std::size_t j = 0;
    for (int b : priority) g.priority[j++] = static_cast<std::uint8_t>(b);
    return g;
}

}  // namespace

TEST_CASE("literal objective on the small worked examples") {
    CHECK(evaluate_sequences(oracle::i2(), {{0, 1}}).total == 22);
    CHECK(evaluate_sequences(oracle::i2(), {{1, 0}}).total == 21);
    CHECK(evaluate_sequences(oracle::i4(), {{0, 1, 2, 3}}).total == 78);
    CHECK(evaluate_sequences(oracle::i4(), {{0, 2, 3, 1}}).total == 76);
    CHECK(evaluate_sequences(oracle::i5(), {{0, 1, 2, 3, 4}}).total == 17969);
    CHECK(evaluate_sequences(oracle::i5(), {{2, 4, 1, 0, 3}}).total == 15980);

    const auto c = evaluate_sequences(oracle::i2(), {{1, 0}});
    CHECK(c.priority_term == 1);
    CHECK(c.late_term == 20);
}

TEST_CASE("sequences must partition the jobs") {
    const Instance inst = oracle::i2();
    CHECK_THROWS_AS((void)evaluate_sequences(inst, {{0, 0}}), InvalidInput);
    CHECK_THROWS_AS((void)evaluate_sequences(inst, {{0}}), InvalidInput);
    CHECK_THROWS_AS((void)evaluate_sequences(inst, {{0, 1, 2}}), InvalidInput);
    CHECK_THROWS_AS((void)evaluate_sequences(inst, {{0}, {1}}), InvalidInput);
}

TEST_CASE("instance validation") {
    CHECK_THROWS_AS(Instance({}, 1, 0), InvalidInput);
    CHECK_THROWS_AS(Instance({{0, 1}}, 1, 0), InvalidInput);
    CHECK_THROWS_AS(Instance({{1, 0}}, 1, 0), InvalidInput);
    CHECK_THROWS_AS(Instance({{1, 1}}, 0, 0), InvalidInput);
    CHECK_THROWS_AS(Instance({{1, 1}}, 1, -1), InvalidInput);
    const Time huge = Time{1} << 40;
    CHECK_THROWS_AS(Instance({{huge, huge}, {huge, huge}}, 1, 0), InstanceTooLarge);
    const Instance ok({{3, 4}, {5, 6}}, 2, 7);
    CHECK(ok.total_processing() == 8);
    CHECK(ok.trivial_cost() == 42);
}

TEST_CASE("feasibility closed form") {
    CHECK_FALSE(is_feasible(oracle::i2(), bits({1, 1})));
    CHECK(is_feasible(oracle::i2(), bits({0, 0})));
    CHECK(is_feasible(oracle::i4(), bits({1, 1, 1, 1})));
    CHECK(is_feasible(oracle::i5(), bits({0, 0, 0, 0, 0})));

    Genome bad = bits({1, 0});
    bad.machine[1] = 1;
    CHECK_THROWS_AS((void)is_feasible(oracle::i2(), bad), InvalidInput);
    CHECK_THROWS_AS((void)is_feasible(oracle::i2(), bits({1})), InvalidInput);
}

TEST_CASE("feasibility agrees with enumerating priority orders") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 2000; ++t) {
        const Instance inst = oracle::random_instance(rng, 1 + rng() % 6, 1 + rng() % 2, 12);
        const Genome g = oracle::random_genome(rng, inst);
        REQUIRE(is_feasible(inst, g) == oracle::feasible(inst, g));
        if (oracle::feasible(inst, g)) REQUIRE(is_dominated(inst, g) == oracle::dominated(inst, g));
    }
}

TEST_CASE("dominance") {
    CHECK_FALSE(is_dominated(oracle::i2(), bits({0, 1})));
    CHECK_FALSE(is_dominated(oracle::i4(), bits({1, 1, 1, 1})));
    CHECK(is_dominated(oracle::i4(), bits({1, 0, 1, 1})));
    CHECK_THROWS_AS((void)is_dominated(oracle::i2(), bits({1, 1})), ContractViolation);
}

TEST_CASE("genome evaluation") {
    CHECK(evaluate_genome(oracle::i2(), bits({0, 1})).total == 21);
    CHECK(evaluate_genome(oracle::i2(), bits({0, 0})).total == 23);
    CHECK_THROWS_AS((void)evaluate_genome(oracle::i2(), bits({1, 1})), ContractViolation);

    // With d = 0 and everything late the objective is plain weighted completion time.
    const Instance zero = oracle::make({{3, 1}, {1, 4}, {2, 2}}, 1, 0);
    Cost expected = 0;
    Time t = 0;
    for (std::size_t j : oracle::ratio_order(zero)) {
        t += zero.job(j).p;
        expected += zero.job(j).w * t;
    }
    CHECK(evaluate_genome(zero, Genome(3)).total == expected);
}

TEST_CASE("canonical layout") {
    const Schedule s = canonicalize(oracle::i2(), bits({0, 1}));
    REQUIRE(s.machines.size() == 1);
    CHECK(s.machines[0] == std::vector<ScheduledJob>{{1, 0, 0}, {0, 1, 1}});
    CHECK(physical_flowtime(oracle::i2(), s) == 21);

    const Instance late = oracle::make({{2, 1}, {3, 1}}, 1, 5);
    const Schedule all_late = canonicalize(late, Genome(2));
    CHECK(all_late.machines[0].front().start == 5);
    for (const auto& sj : all_late.machines[0]) CHECK(sj.release == 5);

    const Schedule packed = canonicalize(oracle::i4(), bits({1, 1, 1, 1}));
    std::vector<JobId> order;
    std::vector<Time> starts;
    for (const auto& sj : packed.machines[0]) {
        order.push_back(sj.job);
        starts.push_back(sj.start);
    }
    CHECK(order == std::vector<JobId>{2, 0, 3, 1});
    CHECK(starts == std::vector<Time>{0, 2, 5, 8});
    CHECK(physical_flowtime(oracle::i4(), packed) == 76);

    CHECK(physical_flowtime(oracle::i5(), canonicalize(oracle::i5(), bits({1, 1, 1, 0, 1}))) == 15980);

    const Instance single = oracle::make({{4, 3}}, 1, 2);
    CHECK(physical_flowtime(single, canonicalize(single, bits({1}))) == 12);
}

TEST_CASE("physical flowtime rejects broken timetables") {
    const Instance inst = oracle::i2();
    CHECK_THROWS_AS((void)physical_flowtime(inst, Schedule{{{{0, 0, 0}, {1, 1, 1}}}}), InvalidSchedule);
    CHECK_THROWS_AS((void)physical_flowtime(inst, Schedule{{{{1, 0, 0}, {0, 2, 2}}}}), InvalidSchedule);
    CHECK_THROWS_AS((void)physical_flowtime(inst, Schedule{{{{1, 0, 0}}}}), InvalidSchedule);
    CHECK_THROWS_AS((void)physical_flowtime(inst, Schedule{{{{1, 0, 1}, {0, 1, 1}}}}), InvalidSchedule);
    // A legal but non-canonical release passes the physical check.
    CHECK(physical_flowtime(inst, Schedule{{{{1, 0, 0}, {0, 1, 0}}}}) == 1 + 30);
    CHECK_FALSE(schedule_violations(inst, Schedule{{{{1, 0, 0}, {0, 1, 0}}}}).empty());
}

TEST_CASE("genome, timetable and literal objective agree") {
    std::mt19937_64 rng(5);
    int literal_checks = 0;
    for (int t = 0; t < 3000; ++t) {
        const Instance inst = oracle::random_instance(rng, 1 + rng() % 7, 1 + rng() % 3, 20);
        Genome g = oracle::random_genome(rng, inst);
        if (!is_feasible(inst, g)) continue;
        const CostBreakdown c = evaluate_genome(inst, g);
        const Schedule s = canonicalize(inst, g);
        REQUIRE(schedule_violations(inst, s).empty());
        REQUIRE(physical_flowtime(inst, s) == c.total);
        REQUIRE(c.total == c.priority_term + c.late_term);
        REQUIRE(c.total >= inst.trivial_cost());
        REQUIRE(GenomeEvaluator(inst)(g) == c.total);

        bool literal = true;
        for (std::size_t i = 0; i < inst.machines(); ++i) {
            Time T = 0;
            bool any_late = false;
            for (std::size_t j = 0; j < g.size(); ++j) {
                if (g.machine[j] != i) continue;
                if (g.priority[j]) T += inst.job(j).p;
                else any_late = true;
            }
            literal = literal && (!any_late || T >= inst.deadline());
        }
        if (literal) {
            ++literal_checks;
            REQUIRE(evaluate_sequences(inst, sequences_of(s)) == c);
        }

        // Promoting the WSPT-first late job of a machine never costs more:
        // it finished at least p after d, and everything behind it only moves earlier.
        for (MachineId i = 0; i < inst.machines(); ++i) {
            std::optional<JobId> first;
            for (JobId j : wspt_order(inst.jobs())) {
                if (!g.priority[j] && g.machine[j] == i) {
                    first = j;
                    break;
                }
            }
            if (!first) continue;
            Genome h = g;
            h.priority[*first] = 1;
            if (is_feasible(inst, h)) REQUIRE(evaluate_genome(inst, h).total <= c.total);
        }
    }
    CHECK(literal_checks > 500);
}

TEST_CASE("promoting an arbitrary late job can cost more") {
    // With a long priority block the late group starts at T > d; pulling a
    // cheap job ahead of a heavy one hurts the heavy one more than it saves.
    const Instance inst = oracle::make({{12, 1}, {1, 100}, {10, 10}}, 1, 12);
    Genome a(3), b(3);
    a.priority = {1, 0, 0};
    b.priority = {1, 0, 1};
    REQUIRE(is_feasible(inst, b));
    CHECK(evaluate_genome(inst, a).total == 222);
    CHECK(evaluate_genome(inst, b).total == 1212);
    CHECK(brute_force(inst).cost.total == 212);
}

TEST_CASE("some instances have only dominated optima") {
    const Instance inst = oracle::make({{85, 5}, {29, 3}, {57, 53}, {74, 43}, {8, 92}, {40, 48}, {90, 46}}, 1, 166);
    CHECK(oracle::physical_optimum(inst) == 15078);
    Cost best_nd = std::numeric_limits<Cost>::max();
    oracle::for_each_genome(inst, [&](const Genome& g) {
        if (is_feasible(inst, g) && !is_dominated(inst, g)) best_nd = std::min(best_nd, evaluate_genome(inst, g).total);
    });
    CHECK(best_nd == 16103);
}

TEST_CASE("literal objective ignores the order inside the early prefix") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 2000; ++t) {
        const Instance inst = oracle::random_instance(rng, 2 + rng() % 6, 1, 20);
        std::vector<JobId> seq(inst.size());
        std::iota(seq.begin(), seq.end(), 0);
        std::shuffle(seq.begin(), seq.end(), rng);
        auto early_set = [&](const std::vector<JobId>& s) {
            std::vector<JobId> out;
            Time at = 0;
            for (JobId j : s) {
                if (at < inst.deadline()) out.push_back(j);
                at += inst.job(j).p;
            }
            std::sort(out.begin(), out.end());
            return out;
        };
        const auto set = early_set(seq);
        std::vector<JobId> other = seq;
        std::shuffle(other.begin(), other.begin() + static_cast<std::ptrdiff_t>(set.size()), rng);
        if (early_set(other) != set) continue;
        REQUIRE(evaluate_sequences(inst, {other}) == evaluate_sequences(inst, {seq}));
    }
}

TEST_CASE("lexicographic genome order") {
    Genome a(2), b(2);
    b.priority[1] = 1;
    CHECK(lexicographic_less(a, b));
    CHECK_FALSE(lexicographic_less(b, a));
    a.machine[0] = 1;
    CHECK(lexicographic_less(b, a));
}
