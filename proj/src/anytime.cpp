#include "flowsched/anytime.hpp"

namespace flowsched {

RunMonitor::RunMonitor(const Budget& budget, AnytimeObserver observer)
    : budget_(budget), observer_(std::move(observer)), start_(std::chrono::steady_clock::now()) {}

double RunMonitor::elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
}

bool RunMonitor::out_of_time() const {
    return budget_.wall && std::chrono::steady_clock::now() - start_ >= *budget_.wall;
}

bool RunMonitor::exhausted() const {
    return (budget_.iterations && iterations_ >= *budget_.iterations) || out_of_time();
}

bool RunMonitor::offer(const Genome& genome, const CostBreakdown& cost) {
    if (has_best_ && cost.total >= best_cost_.total) return false;
    has_best_ = true;
    best_ = genome;
    best_cost_ = cost;
    if (observer_) observer_(AnytimeEvent{elapsed_ms(), iterations_, cost.total, best_});
    return true;
}

}  // namespace flowsched
