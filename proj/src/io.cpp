#include "flowsched/io.hpp"

#include <algorithm>
#include <limits>

#include <fmt/format.h>
#include <json.hpp>

#include "flowsched/errors.hpp"

namespace flowsched {

namespace {

using Json = nlohmann::ordered_json;

Json parse_json(std::string_view text, const char* what) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        throw InvalidInput(fmt::format("{} is not valid JSON: {}", what, e.what()));
    }
}

const Json& field(const Json& obj, const char* key, const char* what) {
    if (!obj.is_object()) throw InvalidInput(fmt::format("{} must be a JSON object", what));
    const auto it = obj.find(key);
    if (it == obj.end()) throw InvalidInput(fmt::format("{} is missing \"{}\"", what, key));
    return *it;
}

void only_keys(const Json& obj, std::initializer_list<const char*> keys, const char* what) {
    for (const auto& [key, value] : obj.items()) {
        if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; })) {
            throw InvalidInput(fmt::format("{} has unexpected key \"{}\"", what, key));
        }
    }
}

std::int64_t integer(const Json& value, const char* name) {
    if (value.is_number_unsigned()) {
        const auto v = value.get<std::uint64_t>();
        if (v > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
            throw InvalidInput(fmt::format("{} is out of range", name));
        }
        return static_cast<std::int64_t>(v);
    }
    if (value.is_number_integer()) return value.get<std::int64_t>();
    throw InvalidInput(fmt::format("{} must be an integer", name));
}

std::size_t count(const Json& value, const char* name) {
    const std::int64_t v = integer(value, name);
    if (v < 0) throw InvalidInput(fmt::format("{} must be non-negative", name));
    return static_cast<std::size_t>(v);
}

Json instance_json(const Instance& instance) {
    Json jobs = Json::array();
    for (const Job& job : instance.jobs()) jobs.push_back(Json{{"p", job.p}, {"w", job.w}});
    return Json{{"m", instance.machines()}, {"d", instance.deadline()}, {"jobs", std::move(jobs)}};
}

}  // namespace

Instance parse_instance(std::string_view text) {
    const Json doc = parse_json(text, "instance");
    const Json& jobs = field(doc, "jobs", "instance");
    only_keys(doc, {"m", "d", "jobs"}, "instance");
    if (!jobs.is_array()) throw InvalidInput("instance \"jobs\" must be an array");
    std::vector<Job> parsed;
    parsed.reserve(jobs.size());
    for (const Json& job : jobs) {
        only_keys(job, {"p", "w"}, "job");
        parsed.push_back({integer(field(job, "p", "job"), "p"), integer(field(job, "w", "job"), "w")});
    }
    return Instance(std::move(parsed), count(field(doc, "m", "instance"), "m"), integer(field(doc, "d", "instance"), "d"));
}

std::string instance_to_json(const Instance& instance) { return instance_json(instance).dump(); }

SolutionDocument make_solution(const Instance& instance, const Genome& genome) {
    return {evaluate_genome(instance, genome), canonicalize(instance, genome)};
}

std::string solution_to_json(const SolutionDocument& solution) {
    Json machines = Json::array();
    for (const auto& row : solution.schedule.machines) {
        Json jobs = Json::array();
        for (const ScheduledJob& s : row) jobs.push_back(Json{{"job", s.job}, {"start", s.start}, {"release", s.release}});
        machines.push_back(std::move(jobs));
    }
    return Json{{"objective", solution.cost.total},
                {"priority_term", solution.cost.priority_term},
                {"late_term", solution.cost.late_term},
                {"machines", std::move(machines)}}
        .dump();
}

SolutionDocument parse_solution(std::string_view text) {
    const Json doc = parse_json(text, "solution");
    SolutionDocument out;
    out.cost.total = integer(field(doc, "objective", "solution"), "objective");
    out.cost.priority_term = integer(field(doc, "priority_term", "solution"), "priority_term");
    out.cost.late_term = integer(field(doc, "late_term", "solution"), "late_term");
    only_keys(doc, {"objective", "priority_term", "late_term", "machines"}, "solution");
    const Json& machines = field(doc, "machines", "solution");
    if (!machines.is_array()) throw InvalidInput("solution \"machines\" must be an array");
    for (const Json& row : machines) {
        if (!row.is_array()) throw InvalidInput("each machine must be an array of jobs");
        auto& out_row = out.schedule.machines.emplace_back();
        for (const Json& s : row) {
            only_keys(s, {"job", "start", "release"}, "scheduled job");
            out_row.push_back({count(field(s, "job", "scheduled job"), "job"),
                               integer(field(s, "start", "scheduled job"), "start"),
                               integer(field(s, "release", "scheduled job"), "release")});
        }
    }
    return out;
}

std::vector<std::string> validate_solution(const Instance& instance, const SolutionDocument& solution) {
    std::vector<std::string> out = schedule_violations(instance, solution.schedule, true);
    if (!out.empty()) return out;
    const Cost flow = physical_flowtime(instance, solution.schedule);
    if (flow != solution.cost.total) {
        out.push_back(fmt::format("objective {} differs from the recomputed flowtime {}", solution.cost.total, flow));
    }
    Cost priority = 0;
    for (const auto& row : solution.schedule.machines) {
        for (const ScheduledJob& s : row) {
            if (s.start < instance.deadline()) priority += instance.job(s.job).w * instance.job(s.job).p;
        }
    }
    if (priority != solution.cost.priority_term) {
        out.push_back(fmt::format("priority_term {} differs from the recomputed {}", solution.cost.priority_term, priority));
    }
    if (solution.cost.priority_term + solution.cost.late_term != solution.cost.total) {
        out.push_back("priority_term + late_term differs from the objective");
    }
    return out;
}

SubsetSumInstance parse_subset_sum(std::string_view text) {
    const Json doc = parse_json(text, "subset sum instance");
    only_keys(doc, {"values", "target"}, "subset sum instance");
    const Json& values = field(doc, "values", "subset sum instance");
    if (!values.is_array()) throw InvalidInput("subset sum \"values\" must be an array");
    SubsetSumInstance out;
    for (const Json& v : values) out.values.push_back(integer(v, "value"));
    out.target = integer(field(doc, "target", "subset sum instance"), "target");
    return out;
}

std::string reduction_to_json(const ReductionOutput& output) {
    // y can outgrow 64 bits, so its digits are spliced in verbatim.
    return fmt::format("{{\"giant\":{},\"instance\":{},\"y\":{}}}", output.giant_id, instance_to_json(output.instance),
                       output.threshold.str());
}

}  // namespace flowsched
