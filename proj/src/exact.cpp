#include "flowsched/exact.hpp"

#include <algorithm>
#include <limits>

#include <fmt/format.h>

#include "flowsched/errors.hpp"
#include "flowsched/rules.hpp"

namespace flowsched {

std::uint64_t search_space_size(const Instance& instance) {
    const std::uint64_t radix = 2 * static_cast<std::uint64_t>(instance.machines());
    std::uint64_t size = 1;
    for (std::size_t j = 0; j < instance.size(); ++j) {
        if (size > std::numeric_limits<std::uint64_t>::max() / radix) return std::numeric_limits<std::uint64_t>::max();
        size *= radix;
    }
    return size;
}

ExactResult brute_force(const Instance& instance, std::uint64_t cap) {
    const std::uint64_t states = search_space_size(instance);
    if (states > cap) {
        throw InstanceTooLarge(fmt::format("brute force over {} jobs and {} machines exceeds the cap of {} states",
                                           instance.size(), instance.machines(), cap));
    }
    const std::size_t n = instance.size();
    const std::size_t m = instance.machines();
    const Time d = instance.deadline();
    const auto order = wspt_order(instance.jobs());

    // digit[j] = 2·machine + priority; job 0 is the most significant digit, so
    // counting upwards visits genomes in lexicographic order.
    std::vector<std::size_t> digit(n, 0);
    std::vector<Time> sum(m), longest(m), clock(m);
    Genome best;
    Cost best_cost = std::numeric_limits<Cost>::max();
    Genome current(n);

    for (std::uint64_t state = 0; state < states; ++state) {
        std::fill(sum.begin(), sum.end(), 0);
        std::fill(longest.begin(), longest.end(), 0);
        Cost cost = 0;
        for (JobId j = 0; j < n; ++j) {
            if (digit[j] & 1U) {
                const Job& job = instance.job(j);
                const std::size_t i = digit[j] >> 1U;
                sum[i] += job.p;
                longest[i] = std::max(longest[i], job.p);
                cost += job.w * job.p;
            }
        }
        bool feasible = true;
        for (std::size_t i = 0; i < m && feasible; ++i) {
            feasible = sum[i] == 0 || sum[i] - longest[i] < d;
        }
        if (feasible) {
            for (std::size_t i = 0; i < m; ++i) clock[i] = std::max(sum[i], d);
            for (JobId j : order) {
                if (digit[j] & 1U) continue;
                const Job& job = instance.job(j);
                Time& t = clock[digit[j] >> 1U];
                t += job.p;
                cost += job.w * (t - d);
            }
            if (cost < best_cost) {
                best_cost = cost;
                for (JobId j = 0; j < n; ++j) {
                    current.machine[j] = digit[j] >> 1U;
                    current.priority[j] = static_cast<std::uint8_t>(digit[j] & 1U);
                }
                best = current;
            }
        }
        for (std::size_t pos = n; pos-- > 0;) {
            if (++digit[pos] < 2 * m) break;
            digit[pos] = 0;
        }
    }
    return {best, evaluate_genome(instance, best)};
}

bool subset_sum_solvable(std::span<const std::int64_t> values, std::int64_t target) {
    if (target < 0) return false;
    std::vector<std::uint8_t> reachable(static_cast<std::size_t>(target) + 1, 0);
    reachable[0] = 1;
    for (std::int64_t v : values) {
        if (v <= 0) throw InvalidInput("subset sum values must be positive");
        if (v > target) continue;
        for (std::int64_t s = target; s >= v; --s) {
            if (reachable[static_cast<std::size_t>(s - v)]) reachable[static_cast<std::size_t>(s)] = 1;
        }
    }
    return reachable[static_cast<std::size_t>(target)] != 0;
}

}  // namespace flowsched
