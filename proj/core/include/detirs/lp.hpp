#pragma once

#include <optional>
#include <string>
#include <vector>

#include "detirs/rational.hpp"

namespace detirs {

enum class Relation { le, eq, ge };

/// Maximization LP with exact rational data. Rows are sparse; bounds are
/// optional per variable (absent = free on that side).
struct LinearProgram {
    struct Row {
        std::vector<std::pair<int, Rat>> terms;  // (variable index, coefficient)
        Relation rel = Relation::le;
        Rat rhs;
        std::string tag;
    };

    std::vector<std::string> var_names;
    std::vector<Rat> objective;  // maximize
    std::vector<Row> rows;
    std::vector<std::optional<Rat>> lower;
    std::vector<std::optional<Rat>> upper;

    int add_variable(const std::string& name, std::optional<Rat> lo = std::nullopt,
                     std::optional<Rat> hi = std::nullopt);
    void add_row(std::vector<std::pair<int, Rat>> terms, Relation rel, Rat rhs,
                 std::string tag = "");
    int variable_count() const { return static_cast<int>(var_names.size()); }
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpOutcome {
    LpStatus status = LpStatus::infeasible;
    Rat optimum;                // meaningful when optimal
    std::vector<Rat> witness;   // basic feasible solution in original variables
    long iterations = 0;
};

/// Two-phase simplex over exact rationals with Bland's lowest-index rule.
/// Throws budget_exceeded (distinct from the three statuses) when the pivot
/// budget runs out.
LpOutcome solve(const LinearProgram& lp, long iteration_budget = 2'000'000);

/// Exact re-check of every row and bound at the witness; zero tolerance.
bool verify(const LinearProgram& lp, const std::vector<Rat>& witness);

/// Exact value of the objective at a point.
Rat objective_value(const LinearProgram& lp, const std::vector<Rat>& point);

/// One-line-per-constraint text dump for reproducibility and external checks.
std::string dump(const LinearProgram& lp);

}  // namespace detirs
