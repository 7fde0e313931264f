#pragma once

// Linear-ordering MILP in CPLEX LP text format.
//
// Variables: C_j, r_j >= 0; binaries z_i_j (job j on machine i), y_j_k for
// j < k (j before k) and, with WSPT cuts, rh_j (job j arrives at d). Rows are
// named c<set>_<indices> after the constraint set they belong to.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>

#include "flowsched/core.hpp"

namespace flowsched {

struct MilpConstants {
    Cost timing_big_m;  ///< Σp + d + 1
    Cost ratio_big_m;   ///< 2·max p·max w
};

[[nodiscard]] MilpConstants milp_constants(const Instance& instance);

[[nodiscard]] std::string export_milp(const Instance& instance, bool with_wspt_cuts);

/// What a syntactically valid LP file declares.
struct LpSummary {
    std::string sense;
    std::map<std::string, std::size_t> rows_per_set;  ///< row-name prefix before the first '_' -> count
    std::size_t rows = 0;
    std::set<std::string> variables;
    std::set<std::string> binaries;
    std::set<std::string> bounded;
};

/// Tokenizes an LP file and checks its structure: section order, named rows
/// of the form `name: terms <=|>=|= rhs`, bounds lines, and binaries that
/// occur in the model. Throws InvalidInput with a line number on error.
[[nodiscard]] LpSummary lint_lp(std::string_view text);

}  // namespace flowsched
