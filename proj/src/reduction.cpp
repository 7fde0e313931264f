#include "flowsched/reduction.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "flowsched/errors.hpp"

namespace flowsched {

namespace {

struct OthersTotals {
    BigInt sum_p = 0;
    BigInt sum_w = 0;
    BigInt max_w = 0;
};

OthersTotals totals_without(const Instance& instance, JobId g) {
    OthersTotals out;
    for (JobId j = 0; j < instance.size(); ++j) {
        if (j == g) continue;
        out.sum_p += instance.job(j).p;
        out.sum_w += instance.job(j).w;
        out.max_w = std::max(out.max_w, BigInt(instance.job(j).w));
    }
    return out;
}

JobId require_giant(const Instance& instance, const char* op) {
    const auto g = find_giant(instance);
    if (!g) throw ContractViolation(fmt::format("{}: instance has no giant job", op));
    return *g;
}

}  // namespace

bool is_giant(const Instance& instance, JobId job) {
    if (job >= instance.size() || instance.size() < 2) return false;
    const OthersTotals others = totals_without(instance, job);
    const BigInt p_g = instance.job(job).p;
    const BigInt w_g = instance.job(job).w;
    return p_g > 2 * others.sum_w * others.sum_p && w_g > p_g * others.max_w;
}

std::optional<JobId> find_giant(const Instance& instance) {
    for (JobId j = 0; j < instance.size(); ++j) {
        if (is_giant(instance, j)) return j;
    }
    return std::nullopt;
}

ReductionOutput encode_subset_sum(const SubsetSumInstance& ssi, std::int64_t magnitude_cap) {
    if (ssi.values.empty()) throw InvalidInput("subset sum instance has no values");
    if (ssi.target < 1) throw InvalidInput("subset sum target must be positive");
    BigInt total = 0;
    std::int64_t largest = 0;
    for (std::int64_t a : ssi.values) {
        if (a < 1) throw InvalidInput("subset sum values must be positive");
        total += a;
        largest = std::max(largest, a);
    }
    if (total > magnitude_cap) {
        throw InstanceTooLarge(fmt::format("subset sum total {} exceeds the magnitude cap {}", total.str(), magnitude_cap));
    }
    const BigInt p_g = 2 * total * total + 1;
    const BigInt w_g = p_g * largest + 1;
    const BigInt y = total * total + p_g * (total - ssi.target + w_g);

    std::vector<Job> jobs;
    jobs.reserve(ssi.values.size() + 1);
    for (std::int64_t a : ssi.values) jobs.push_back({a, a});
    jobs.push_back({static_cast<Time>(p_g), static_cast<Weight>(w_g)});
    Instance instance(std::move(jobs), 1, ssi.target);
    const JobId giant = instance.size() - 1;
    return {std::move(instance), y, giant};
}

BigInt giant_upper_bound(const Instance& instance, const std::vector<JobId>& late_without_giant) {
    const JobId g = require_giant(instance, "giant_upper_bound");
    const OthersTotals others = totals_without(instance, g);
    const BigInt p_g = instance.job(g).p;
    BigInt late_weight = 0;
    for (JobId k : late_without_giant) {
        if (k >= instance.size() || k == g) {
            throw ContractViolation(fmt::format("giant_upper_bound: {} is not a non-giant job", k));
        }
        late_weight += instance.job(k).w;
    }
    return BigInt(instance.job(g).w) * p_g + others.sum_w * others.sum_p + p_g * late_weight;
}

std::string to_string(GiantRule rule) {
    switch (rule) {
        case GiantRule::starts_after_deadline: return "giant-starts-after-deadline";
        case GiantRule::fits_before_giant: return "job-fits-before-giant";
    }
    return "unknown";
}

std::vector<GiantViolation> giant_dominance_violations(const Instance& instance, const Schedule& schedule) {
    if (instance.size() == 1) return {};
    const JobId g = require_giant(instance, "giant_dominance_violations");
    if (schedule.machines.size() != 1) {
        throw ContractViolation("giant_dominance_violations expects a single machine schedule");
    }
    const auto& row = schedule.machines.front();
    const auto at = std::find_if(row.begin(), row.end(), [&](const ScheduledJob& s) { return s.job == g; });
    if (at == row.end()) throw ContractViolation("schedule does not contain the giant job");

    std::vector<GiantViolation> out;
    const Time d = instance.deadline();
    if (at->start > d) out.push_back({GiantRule::starts_after_deadline, g});
    for (auto it = std::next(at); it != row.end(); ++it) {
        // Moved directly in front of the giant, the job would run [s_g, s_g + p).
        if (at->start + instance.job(it->job).p <= d) out.push_back({GiantRule::fits_before_giant, it->job});
    }
    return out;
}

}  // namespace flowsched
