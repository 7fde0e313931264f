#include "flowsched/bounds.hpp"

#include <algorithm>
#include <numeric>

#include "flowsched/errors.hpp"

namespace flowsched {

namespace {

void require_single_machine(const Instance& instance, const char* op) {
    if (instance.machines() != 1) throw ContractViolation(std::string(op) + " requires a single machine");
}

}  // namespace

std::size_t max_priority_count(const Instance& instance) {
    require_single_machine(instance, "max_priority_count");
    std::vector<Time> p;
    p.reserve(instance.size());
    for (const Job& job : instance.jobs()) p.push_back(job.p);
    std::sort(p.begin(), p.end());
    // k jobs fit iff the k − 1 shortest finish before d; the k-th may overrun.
    std::size_t k = 0;
    Time prefix = 0;
    while (k < p.size() && prefix < instance.deadline()) {
        prefix += p[k];
        ++k;
    }
    return k;
}

LowerBoundDetail lower_bound(const Instance& instance) {
    require_single_machine(instance, "lower_bound");
    LowerBoundDetail out;
    out.trivial = instance.trivial_cost();
    out.late_count = instance.size() - max_priority_count(instance);
    out.min_p = std::min_element(instance.jobs().begin(), instance.jobs().end(),
                                 [](const Job& a, const Job& b) { return a.p < b.p; })->p;
    out.sigma.resize(instance.size());
    std::iota(out.sigma.begin(), out.sigma.end(), JobId{0});
    std::stable_sort(out.sigma.begin(), out.sigma.end(),
                     [&](JobId a, JobId b) { return instance.job(a).w < instance.job(b).w; });

    const std::size_t b = out.late_count;
    Cost waits = 0;
    for (std::size_t t = 0; t < b; ++t) {
        waits += static_cast<Cost>(b - 1 - t) * instance.job(out.sigma[t]).w;
    }
    out.value = out.trivial + out.min_p * waits;
    return out;
}

}  // namespace flowsched
