#include "flowsched/mcts.hpp"

#include <cmath>
#include <limits>

#include "flowsched/errors.hpp"
#include "flowsched/rules.hpp"

namespace flowsched {

void NormalGamma::observe(double x) {
    const double delta = x - mu;
    beta += lambda * delta * delta / (2.0 * (lambda + 1.0));
    mu = (lambda * mu + x) / (lambda + 1.0);
    lambda += 1.0;
    alpha += 0.5;
}

double NormalGamma::sample_mean(Rng& rng) const {
    const double tau = std::gamma_distribution<double>(alpha, 1.0 / beta)(rng);
    const double sd = 1.0 / std::sqrt(lambda * std::max(tau, std::numeric_limits<double>::min()));
    return std::normal_distribution<double>(mu, sd)(rng);
}

namespace {

constexpr std::uint32_t no_child = std::numeric_limits<std::uint32_t>::max();

struct Node {
    NodeStats stats;
    std::vector<std::uint32_t> children;  // indexed by 2·machine + bit, allocated on first expansion
};

bool valid_prior(const NormalGamma& g) {
    return std::isfinite(g.mu) && g.lambda > 0 && g.alpha > 0 && g.beta > 0;
}

}  // namespace

SolveResult run_mcts(const Instance& instance, const MctsConfig& config, Rng& rng, const Budget& budget,
                     const AnytimeObserver& observer) {
    if (!valid_prior(config.prior)) throw InvalidInput("MCTS prior needs lambda, alpha and beta > 0");
    if (config.max_nodes < 1) throw InvalidInput("MCTS needs room for at least the root node");

    const std::size_t n = instance.size();
    const std::size_t m = instance.machines();
    const std::size_t actions = 2 * m;
    const Time d = instance.deadline();
    const auto order = wspt_order(instance.jobs());
    const GenomeEvaluator evaluate(instance);

    double scale = config.normalization;
    if (scale <= 0) scale = static_cast<double>(evaluate(m == 1 ? naive_single(instance) : naive(instance)));

    RunMonitor monitor(budget, observer);
    std::vector<Node> tree;
    tree.reserve(std::min<std::size_t>(config.max_nodes, 1 << 16));
    tree.push_back({NodeStats{config.prior, 0}, {}});

    Genome genome(n);
    std::vector<PriorityLoad> loads(m);
    std::vector<std::size_t> legal;
    std::vector<std::uint32_t> path;

    auto apply = [&](std::size_t depth, std::size_t action) {
        const JobId j = order[depth];
        const MachineId i = action / 2;
        genome.machine[j] = i;
        genome.priority[j] = static_cast<std::uint8_t>(action % 2);
        if (action % 2) loads[i].add(instance.job(j).p);
    };
    auto legal_actions = [&](std::size_t depth) {
        legal.clear();
        const Time p = instance.job(order[depth]).p;
        for (std::size_t a = 0; a < actions; ++a) {
            if (a % 2 == 0 || loads[a / 2].admits(p, d)) legal.push_back(a);
        }
    };

    // At least one simulation, so there is always a complete genome to return.
    while (!monitor.has_best() || !monitor.exhausted()) {
        std::fill(loads.begin(), loads.end(), PriorityLoad{});
        path.assign(1, 0);
        std::uint32_t node = 0;
        std::size_t depth = 0;

        // Selection and at most one expansion.
        while (depth < n) {
            legal_actions(depth);
            std::size_t chosen = legal.front();
            double best_sample = -std::numeric_limits<double>::infinity();
            for (std::size_t a : legal) {
                const std::uint32_t child = tree[node].children.empty() ? no_child : tree[node].children[a];
                const NormalGamma& posterior = child == no_child ? config.prior : tree[child].stats.posterior;
                const double sample = posterior.sample_mean(rng);
                if (sample > best_sample) {
                    best_sample = sample;
                    chosen = a;
                }
            }
            apply(depth, chosen);
            ++depth;
            if (tree[node].children.empty()) tree[node].children.assign(actions, no_child);
            std::uint32_t child = tree[node].children[chosen];
            if (child == no_child) {
                if (tree.size() >= config.max_nodes) break;
                child = static_cast<std::uint32_t>(tree.size());
                tree[node].children[chosen] = child;
                tree.push_back({NodeStats{config.prior, 0}, {}});
                path.push_back(child);
                break;
            }
            node = child;
            path.push_back(node);
        }

        // Uniform rollout over the remaining jobs.
        for (; depth < n; ++depth) {
            legal_actions(depth);
            apply(depth, legal[std::uniform_int_distribution<std::size_t>(0, legal.size() - 1)(rng)]);
        }

        const Genome leaf = promote_in_wspt_order(instance, genome);
        const CostBreakdown cost = evaluate.breakdown(leaf);
        const double reward = -static_cast<double>(cost.total) / scale;
        for (std::uint32_t v : path) {
            tree[v].stats.posterior.observe(reward);
            ++tree[v].stats.visits;
        }
        monitor.next_iteration();
        monitor.offer(leaf, cost);
    }
    return monitor.result();
}

}  // namespace flowsched
