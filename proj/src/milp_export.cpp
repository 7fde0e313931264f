#include "flowsched/milp_export.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "flowsched/errors.hpp"

namespace flowsched {

namespace {

constexpr std::size_t wrap_width = 100;

struct Term {
    Cost coef;
    std::string var;
};

std::string C(JobId j) { return fmt::format("C_{}", j); }
std::string r(JobId j) { return fmt::format("r_{}", j); }
std::string z(MachineId i, JobId j) { return fmt::format("z_{}_{}", i, j); }
std::string y(JobId j, JobId k) { return fmt::format("y_{}_{}", j, k); }
std::string rh(JobId j) { return fmt::format("rh_{}", j); }

// Writes ` name: t1 + t2 ... op rhs`, continuing long rows on indented lines.
void write_row(std::string& out, const std::string& name, const std::vector<Term>& terms, const char* op, Cost rhs) {
    std::string line = fmt::format(" {}:", name);
    bool first = true;
    auto push = [&](const std::string& piece) {
        if (line.size() + piece.size() > wrap_width) {
            out += line;
            out += '\n';
            line = "  ";
        }
        line += piece;
    };
    for (const Term& t : terms) {
        if (t.coef == 0) continue;
        const char* sign = t.coef < 0 ? "-" : (first ? "" : "+");
        const Cost mag = t.coef < 0 ? -t.coef : t.coef;
        push(mag == 1 ? fmt::format(" {}{}{}", sign, first && t.coef > 0 ? "" : " ", t.var)
                      : fmt::format(" {}{}{} {}", sign, first && t.coef > 0 ? "" : " ", mag, t.var));
        first = false;
    }
    if (first) push(" 0 " + terms.front().var);
    if (*op) push(fmt::format(" {} {}", op, rhs));
    out += line;
    out += '\n';
}

}  // namespace

MilpConstants milp_constants(const Instance& instance) {
    Time max_p = 0;
    Weight max_w = 0;
    for (const Job& job : instance.jobs()) {
        max_p = std::max(max_p, job.p);
        max_w = std::max(max_w, job.w);
    }
    return {instance.total_processing() + instance.deadline() + 1, 2 * max_p * max_w};
}

std::string export_milp(const Instance& instance, bool with_wspt_cuts) {
    const std::size_t n = instance.size();
    const std::size_t m = instance.machines();
    const Time d = instance.deadline();
    const auto [M, M2] = milp_constants(instance);
    const auto& jobs = instance.jobs();

    std::string out;
    out += fmt::format("\\ flowsched n={} m={} d={} wspt_cuts={}\n", n, m, d, with_wspt_cuts ? 1 : 0);
    out += "Minimize\n";
    std::vector<Term> objective;
    for (JobId j = 0; j < n; ++j) {
        objective.push_back({jobs[j].w, C(j)});
        objective.push_back({-jobs[j].w, r(j)});
    }
    write_row(out, "obj", objective, "", 0);

    out += "Subject To\n";
    for (JobId j = 0; j < n; ++j) {
        std::vector<Term> terms;
        for (MachineId i = 0; i < m; ++i) terms.push_back({1, z(i, j)});
        write_row(out, fmt::format("c1_{}", j), terms, "=", 1);
    }
    for (JobId j = 0; j < n; ++j) write_row(out, fmt::format("c2_{}", j), {{1, C(j)}, {-1, r(j)}}, ">=", jobs[j].p);
    for (JobId j = 0; j < n; ++j) {
        for (JobId k = j + 1; k < n; ++k) {
            for (MachineId i = 0; i < m; ++i) {
                write_row(out, fmt::format("c3_{}_{}_{}", j, k, i),
                          {{1, C(k)}, {-1, C(j)}, {-M, y(j, k)}, {-M, z(i, j)}, {-M, z(i, k)}}, ">=",
                          jobs[k].p - 3 * M);
            }
        }
    }
    for (JobId j = 0; j < n; ++j) {
        for (JobId k = j + 1; k < n; ++k) {
            for (MachineId i = 0; i < m; ++i) {
                write_row(out, fmt::format("c4_{}_{}_{}", j, k, i),
                          {{1, C(j)}, {-1, C(k)}, {M, y(j, k)}, {-M, z(i, j)}, {-M, z(i, k)}}, ">=",
                          jobs[j].p - 2 * M);
            }
        }
    }
    for (JobId j = 0; j < n; ++j) write_row(out, fmt::format("c5_{}", j), {{1, r(j)}}, "<=", d);

    if (with_wspt_cuts) {
        for (JobId j = 0; j < n; ++j) write_row(out, fmt::format("c8_{}", j), {{M, rh(j)}, {-1, r(j)}}, "<=", M - d);
        for (JobId j = 0; j < n; ++j) write_row(out, fmt::format("c9_{}", j), {{1, r(j)}, {-M, rh(j)}}, "<=", d);
        // Ratio rows multiplied through by w_j·w_k.
        for (JobId j = 0; j < n; ++j) {
            for (JobId k = j + 1; k < n; ++k) {
                for (MachineId i = 0; i < m; ++i) {
                    write_row(out, fmt::format("c10_{}_{}_{}", j, k, i),
                              {{M2, y(j, k)}, {M2, z(i, j)}, {M2, z(i, k)}, {M2, rh(j)}}, "<=",
                              4 * M2 + jobs[j].w * jobs[k].p - jobs[k].w * jobs[j].p);
                }
            }
        }
        for (JobId j = 0; j < n; ++j) {
            for (JobId k = j + 1; k < n; ++k) {
                for (MachineId i = 0; i < m; ++i) {
                    write_row(out, fmt::format("c11_{}_{}_{}", j, k, i),
                              {{-M2, y(j, k)}, {M2, z(i, j)}, {M2, z(i, k)}, {M2, rh(k)}}, "<=",
                              3 * M2 + jobs[k].w * jobs[j].p - jobs[j].w * jobs[k].p);
                }
            }
        }
    }

    out += "Bounds\n";
    for (JobId j = 0; j < n; ++j) out += fmt::format(" {} >= 0\n {} >= 0\n", C(j), r(j));

    out += "Binaries\n";
    for (MachineId i = 0; i < m; ++i) {
        for (JobId j = 0; j < n; ++j) out += fmt::format(" {}\n", z(i, j));
    }
    for (JobId j = 0; j < n; ++j) {
        for (JobId k = j + 1; k < n; ++k) out += fmt::format(" {}\n", y(j, k));
    }
    if (with_wspt_cuts) {
        for (JobId j = 0; j < n; ++j) out += fmt::format(" {}\n", rh(j));
    }
    out += "End\n";
    return out;
}

// Linting -------------------------------------------------------------------

namespace {

enum class Section { none, objective, constraints, bounds, binaries, end };

std::string lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string> tokenize(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '<' || c == '>' || c == '=') {
            std::size_t len = (i + 1 < s.size() && s[i + 1] == '=') ? 2 : 1;
            out.emplace_back(s.substr(i, len));
            i += len;
        } else if (c == '+' || c == '-' || c == ':') {
            out.emplace_back(1, c);
            ++i;
        } else {
            std::size_t j = i;
            while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) &&
                   std::string_view("<>=+-:").find(s[j]) == std::string_view::npos) {
                ++j;
            }
            out.emplace_back(s.substr(i, j - i));
            i = j;
        }
    }
    return out;
}

bool is_number(const std::string& t) {
    double v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    return ec == std::errc() && ptr == t.data() + t.size();
}

bool is_name(const std::string& t) {
    if (t.empty() || !(std::isalpha(static_cast<unsigned char>(t[0])) || t[0] == '_')) return false;
    return std::all_of(t.begin(), t.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

bool is_relation(const std::string& t) { return t == "<=" || t == ">=" || t == "=" || t == "<" || t == ">" || t == "=<" || t == "=>"; }

[[noreturn]] void fail(std::size_t line, const std::string& what) {
    throw InvalidInput(fmt::format("LP line {}: {}", line, what));
}

// Parses `[+|-] [coef] var ...` and returns the tokens after the last term.
std::size_t parse_terms(const std::vector<std::string>& tok, std::size_t pos, std::size_t line,
                        std::set<std::string>& vars) {
    bool any = false;
    while (pos < tok.size() && !is_relation(tok[pos])) {
        if (tok[pos] == "+" || tok[pos] == "-") {
            ++pos;
        } else if (any) {
            fail(line, fmt::format("expected + or - before '{}'", tok[pos]));
        }
        if (pos < tok.size() && is_number(tok[pos])) ++pos;
        if (pos >= tok.size() || !is_name(tok[pos])) fail(line, "term without a variable");
        vars.insert(tok[pos]);
        ++pos;
        any = true;
    }
    if (!any) fail(line, "expression has no terms");
    return pos;
}

}  // namespace

LpSummary lint_lp(std::string_view text) {
    LpSummary summary;
    Section section = Section::none;
    std::set<std::string> row_names;

    // Rows may continue over several lines; gather them with their first line number.
    std::string pending;
    std::size_t pending_line = 0;
    auto flush = [&] {
        if (pending.empty()) return;
        const auto tok = tokenize(pending);
        if (tok.size() < 2 || tok[1] != ":" || !is_name(tok[0])) fail(pending_line, "row without a name");
        if (section == Section::objective) {
            parse_terms(tok, 2, pending_line, summary.variables);
        } else {
            if (!row_names.insert(tok[0]).second) fail(pending_line, fmt::format("duplicate row {}", tok[0]));
            std::size_t pos = parse_terms(tok, 2, pending_line, summary.variables);
            if (pos >= tok.size()) fail(pending_line, "row without a relation");
            ++pos;
            if (pos < tok.size() && tok[pos] == "-") ++pos;
            if (pos + 1 != tok.size() || !is_number(tok[pos])) fail(pending_line, "row needs a numeric right-hand side");
            ++summary.rows;
            ++summary.rows_per_set[tok[0].substr(0, tok[0].find('_'))];
        }
        pending.clear();
    };

    std::size_t line_no = 0;
    std::size_t begin = 0;
    bool objective_seen = false;
    while (begin <= text.size()) {
        std::size_t end = text.find('\n', begin);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view raw = text.substr(begin, end - begin);
        begin = end + 1;
        ++line_no;
        const std::string_view body = trim(raw.substr(0, raw.find('\\')));
        if (body.empty()) {
            if (end == text.size()) break;
            continue;
        }
        const std::string key = lower(body);
        Section next = Section::none;
        if (key == "minimize" || key == "maximize" || key == "minimum" || key == "maximum") {
            next = Section::objective;
        } else if (key == "subject to" || key == "st" || key == "s.t.") {
            next = Section::constraints;
        } else if (key == "bounds") {
            next = Section::bounds;
        } else if (key == "binaries" || key == "binary") {
            next = Section::binaries;
        } else if (key == "end") {
            next = Section::end;
        }
        if (next != Section::none) {
            flush();
            if (next <= section) fail(line_no, fmt::format("section '{}' out of order", body));
            if (next != Section::objective && section == Section::none) fail(line_no, "model must start with an objective sense");
            if (next == Section::objective) summary.sense = key.substr(0, 3) == "min" ? "minimize" : "maximize";
            section = next;
            continue;
        }
        switch (section) {
            case Section::none: fail(line_no, "text before the objective sense");
            case Section::end: fail(line_no, "text after End");
            case Section::objective:
            case Section::constraints: {
                const auto head = tokenize(body);
                const bool starts_row = head.size() >= 2 && head[1] == ":";
                if (starts_row) flush();
                if (pending.empty()) pending_line = line_no;
                pending += ' ';
                pending += body;
                if (section == Section::objective) objective_seen = true;
                break;
            }
            case Section::bounds: {
                const auto tok = tokenize(body);
                if (tok.size() == 2 && is_name(tok[0]) && lower(tok[1]) == "free") {
                    summary.bounded.insert(tok[0]);
                    break;
                }
                // var op num | num op var | num op var op num, with optional unary minus on numbers.
                std::vector<std::string> merged;
                for (std::size_t t = 0; t < tok.size(); ++t) {
                    if (tok[t] == "-" && t + 1 < tok.size() && is_number(tok[t + 1])) {
                        merged.push_back("-" + tok[++t]);
                    } else {
                        merged.push_back(tok[t]);
                    }
                }
                const bool simple = merged.size() == 3 && is_relation(merged[1]) &&
                                    ((is_name(merged[0]) && is_number(merged[2])) ||
                                     (is_number(merged[0]) && is_name(merged[2])));
                const bool ranged = merged.size() == 5 && is_number(merged[0]) && is_relation(merged[1]) &&
                                    is_name(merged[2]) && is_relation(merged[3]) && is_number(merged[4]);
                if (!simple && !ranged) fail(line_no, "malformed bound");
                const std::string& var = is_name(merged[0]) ? merged[0] : merged[2];
                summary.bounded.insert(var);
                break;
            }
            case Section::binaries: {
                for (const std::string& t : tokenize(body)) {
                    if (!is_name(t)) fail(line_no, fmt::format("'{}' is not a variable name", t));
                    if (!summary.variables.count(t)) fail(line_no, fmt::format("binary {} does not occur in the model", t));
                    summary.binaries.insert(t);
                }
                break;
            }
        }
    }
    flush();
    if (section != Section::end) fail(line_no, "missing End");
    if (!objective_seen) fail(line_no, "missing objective");
    for (const std::string& v : summary.bounded) {
        if (!summary.variables.count(v)) fail(line_no, fmt::format("bound on unknown variable {}", v));
    }
    return summary;
}

}  // namespace flowsched
