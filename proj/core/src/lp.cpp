#include "detirs/lp.hpp"

#include <algorithm>
#include <sstream>

namespace detirs {

int LinearProgram::add_variable(const std::string& name, std::optional<Rat> lo,
                                std::optional<Rat> hi) {
    var_names.push_back(name);
    objective.push_back(Rat(0));
    lower.push_back(std::move(lo));
    upper.push_back(std::move(hi));
    return static_cast<int>(var_names.size()) - 1;
}

void LinearProgram::add_row(std::vector<std::pair<int, Rat>> terms, Relation rel, Rat rhs,
                            std::string tag) {
    for (const auto& [idx, coeff] : terms)
        if (idx < 0 || idx >= variable_count())
            throw std::invalid_argument("lp row references unknown variable");
    rows.push_back(Row{std::move(terms), rel, std::move(rhs), std::move(tag)});
}

namespace {

/// Mapping from an original variable to its nonnegative tableau columns.
struct VarMap {
    enum class Kind { shifted, mirrored, split } kind;
    int col = -1;       // primary column
    int col_neg = -1;   // second column for split variables
    Rat offset;         // x = offset + x' (shifted), x = offset - x' (mirrored)
};

struct Tableau {
    int cols = 0;
    std::vector<std::vector<Rat>> a;  // each row has cols + 1 entries, last = rhs
    std::vector<int> basis;

    void pivot(int r, int c) {
        auto& row = a[static_cast<std::size_t>(r)];
        const Rat inv = Rat(1) / row[static_cast<std::size_t>(c)];
        for (auto& x : row) x *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (static_cast<int>(i) == r) continue;
            const Rat factor = a[i][static_cast<std::size_t>(c)];
            if (factor == 0) continue;
            for (std::size_t j = 0; j < row.size(); ++j) a[i][j] -= factor * row[j];
        }
        basis[static_cast<std::size_t>(r)] = c;
    }
};

void eliminate_basic(std::vector<Rat>& cost, const Tableau& t) {
    for (std::size_t r = 0; r < t.a.size(); ++r) {
        const int b = t.basis[r];
        const Rat factor = cost[static_cast<std::size_t>(b)];
        if (factor == 0) continue;
        for (std::size_t j = 0; j < cost.size(); ++j) cost[j] -= factor * t.a[r][j];
    }
}

/// Bland's rule iteration on a maximization cost row. Returns the status.
enum class PhaseResult { optimal, unbounded };

PhaseResult run_phase(Tableau& t, std::vector<Rat>& cost, const std::vector<bool>& allowed,
                      long& iterations, long budget) {
    const std::size_t rhs = static_cast<std::size_t>(t.cols);
    while (true) {
        int entering = -1;
        for (int j = 0; j < t.cols; ++j)
            if (allowed[static_cast<std::size_t>(j)] && cost[static_cast<std::size_t>(j)] > 0) {
                entering = j;
                break;
            }
        if (entering < 0) return PhaseResult::optimal;
        int leaving = -1;
        Rat best_ratio;
        for (std::size_t r = 0; r < t.a.size(); ++r) {
            const Rat& coef = t.a[r][static_cast<std::size_t>(entering)];
            if (coef <= 0) continue;
            const Rat ratio = t.a[r][rhs] / coef;
            if (leaving < 0 || ratio < best_ratio ||
                (ratio == best_ratio && t.basis[r] < t.basis[static_cast<std::size_t>(leaving)])) {
                leaving = static_cast<int>(r);
                best_ratio = ratio;
            }
        }
        if (leaving < 0) return PhaseResult::unbounded;
        if (++iterations > budget) throw budget_exceeded("lp solve: pivot budget exceeded");
        t.pivot(leaving, entering);
        const Rat factor = cost[static_cast<std::size_t>(entering)];
        if (factor != 0) {
            const auto& row = t.a[static_cast<std::size_t>(leaving)];
            for (std::size_t j = 0; j < cost.size(); ++j) cost[j] -= factor * row[j];
        }
    }
}

}  // namespace

LpOutcome solve(const LinearProgram& lp, long iteration_budget) {
    const int n = lp.variable_count();
    std::vector<VarMap> vmap(static_cast<std::size_t>(n));

    // Transformed rows: start from the user rows, append bound rows created by
    // two-sided variables, then slacks and artificials.
    struct WorkRow {
        std::vector<Rat> dense;  // over transformed variable columns
        Relation rel;
        Rat rhs;
    };

    int cols = 0;
    for (int i = 0; i < n; ++i) {
        auto& vm = vmap[static_cast<std::size_t>(i)];
        const auto& lo = lp.lower[static_cast<std::size_t>(i)];
        const auto& hi = lp.upper[static_cast<std::size_t>(i)];
        if (lo) {
            vm.kind = VarMap::Kind::shifted;
            vm.offset = *lo;
            vm.col = cols++;
        } else if (hi) {
            vm.kind = VarMap::Kind::mirrored;
            vm.offset = *hi;
            vm.col = cols++;
        } else {
            vm.kind = VarMap::Kind::split;
            vm.col = cols++;
            vm.col_neg = cols++;
        }
    }

    std::vector<WorkRow> work;
    auto substitute = [&](const std::vector<std::pair<int, Rat>>& terms, Relation rel,
                          const Rat& rhs) {
        WorkRow wr{std::vector<Rat>(static_cast<std::size_t>(cols), Rat(0)), rel, rhs};
        for (const auto& [idx, coeff] : terms) {
            const auto& vm = vmap[static_cast<std::size_t>(idx)];
            switch (vm.kind) {
                case VarMap::Kind::shifted:
                    wr.dense[static_cast<std::size_t>(vm.col)] += coeff;
                    wr.rhs -= coeff * vm.offset;
                    break;
                case VarMap::Kind::mirrored:
                    wr.dense[static_cast<std::size_t>(vm.col)] -= coeff;
                    wr.rhs -= coeff * vm.offset;
                    break;
                case VarMap::Kind::split:
                    wr.dense[static_cast<std::size_t>(vm.col)] += coeff;
                    wr.dense[static_cast<std::size_t>(vm.col_neg)] -= coeff;
                    break;
            }
        }
        work.push_back(std::move(wr));
    };

    for (const auto& row : lp.rows) substitute(row.terms, row.rel, row.rhs);
    for (int i = 0; i < n; ++i) {
        const auto& lo = lp.lower[static_cast<std::size_t>(i)];
        const auto& hi = lp.upper[static_cast<std::size_t>(i)];
        if (lo && hi) substitute({{i, Rat(1)}}, Relation::le, *hi);
    }

    const int m = static_cast<int>(work.size());
    // Columns: transformed vars, one slack per inequality row, artificials last.
    std::vector<int> slack_col(static_cast<std::size_t>(m), -1);
    int total = cols;
    for (int r = 0; r < m; ++r)
        if (work[static_cast<std::size_t>(r)].rel != Relation::eq) slack_col[static_cast<std::size_t>(r)] = total++;
    const int first_artificial = total;

    Tableau t;
    std::vector<int> artificial_rows;
    t.basis.assign(static_cast<std::size_t>(m), -1);
    std::vector<std::vector<Rat>> rows_built;
    for (int r = 0; r < m; ++r) {
        auto& wr = work[static_cast<std::size_t>(r)];
        std::vector<Rat> dense(static_cast<std::size_t>(total), Rat(0));
        std::copy(wr.dense.begin(), wr.dense.end(), dense.begin());
        if (slack_col[static_cast<std::size_t>(r)] >= 0)
            dense[static_cast<std::size_t>(slack_col[static_cast<std::size_t>(r)])] =
                wr.rel == Relation::le ? Rat(1) : Rat(-1);
        Rat rhs = wr.rhs;
        if (rhs < 0) {
            for (auto& x : dense) x = -x;
            rhs = -rhs;
        }
        // Slack usable as initial basis only when its coefficient stayed +1.
        if (slack_col[static_cast<std::size_t>(r)] >= 0 &&
            dense[static_cast<std::size_t>(slack_col[static_cast<std::size_t>(r)])] == 1)
            t.basis[static_cast<std::size_t>(r)] = slack_col[static_cast<std::size_t>(r)];
        else
            artificial_rows.push_back(r);
        dense.push_back(rhs);
        rows_built.push_back(std::move(dense));
    }
    const int artificial_count = static_cast<int>(artificial_rows.size());
    total += artificial_count;
    for (int r = 0; r < m; ++r) {
        auto& dense = rows_built[static_cast<std::size_t>(r)];
        Rat rhs = dense.back();
        dense.pop_back();
        dense.resize(static_cast<std::size_t>(total), Rat(0));
        dense.push_back(rhs);
    }
    for (int i = 0; i < artificial_count; ++i) {
        const int r = artificial_rows[static_cast<std::size_t>(i)];
        rows_built[static_cast<std::size_t>(r)][static_cast<std::size_t>(first_artificial + i)] =
            Rat(1);
        t.basis[static_cast<std::size_t>(r)] = first_artificial + i;
    }
    t.cols = total;
    t.a = std::move(rows_built);

    long iterations = 0;
    std::vector<bool> allowed(static_cast<std::size_t>(total), true);
    for (int j = first_artificial; j < total; ++j) allowed[static_cast<std::size_t>(j)] = false;

    // Phase 1: maximize minus the sum of artificials.
    if (artificial_count > 0) {
        std::vector<Rat> cost1(static_cast<std::size_t>(total) + 1, Rat(0));
        for (int j = first_artificial; j < total; ++j) cost1[static_cast<std::size_t>(j)] = Rat(-1);
        eliminate_basic(cost1, t);
        run_phase(t, cost1, allowed, iterations, iteration_budget);
        Rat infeasibility(0);
        for (std::size_t r = 0; r < t.a.size(); ++r)
            if (t.basis[r] >= first_artificial) infeasibility += t.a[r][static_cast<std::size_t>(total)];
        if (infeasibility > 0) return LpOutcome{LpStatus::infeasible, Rat(0), {}, iterations};
        // Drive remaining artificials out of the basis where possible.
        for (std::size_t r = 0; r < t.a.size(); ++r) {
            if (t.basis[r] < first_artificial) continue;
            int col = -1;
            for (int j = 0; j < first_artificial; ++j)
                if (t.a[r][static_cast<std::size_t>(j)] != 0) {
                    col = j;
                    break;
                }
            if (col >= 0) t.pivot(static_cast<int>(r), col);
        }
    }

    // Phase 2: the original objective in transformed variables.
    std::vector<Rat> cost(static_cast<std::size_t>(total) + 1, Rat(0));
    for (int i = 0; i < n; ++i) {
        const auto& vm = vmap[static_cast<std::size_t>(i)];
        const Rat& c = lp.objective[static_cast<std::size_t>(i)];
        switch (vm.kind) {
            case VarMap::Kind::shifted:
                cost[static_cast<std::size_t>(vm.col)] += c;
                break;
            case VarMap::Kind::mirrored:
                cost[static_cast<std::size_t>(vm.col)] -= c;
                break;
            case VarMap::Kind::split:
                cost[static_cast<std::size_t>(vm.col)] += c;
                cost[static_cast<std::size_t>(vm.col_neg)] -= c;
                break;
        }
    }
    eliminate_basic(cost, t);
    const PhaseResult res = run_phase(t, cost, allowed, iterations, iteration_budget);
    if (res == PhaseResult::unbounded)
        return LpOutcome{LpStatus::unbounded, Rat(0), {}, iterations};

    std::vector<Rat> transformed(static_cast<std::size_t>(total), Rat(0));
    for (std::size_t r = 0; r < t.a.size(); ++r)
        transformed[static_cast<std::size_t>(t.basis[r])] = t.a[r][static_cast<std::size_t>(total)];

    LpOutcome out;
    out.status = LpStatus::optimal;
    out.iterations = iterations;
    out.witness.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto& vm = vmap[static_cast<std::size_t>(i)];
        switch (vm.kind) {
            case VarMap::Kind::shifted:
                out.witness[static_cast<std::size_t>(i)] =
                    vm.offset + transformed[static_cast<std::size_t>(vm.col)];
                break;
            case VarMap::Kind::mirrored:
                out.witness[static_cast<std::size_t>(i)] =
                    vm.offset - transformed[static_cast<std::size_t>(vm.col)];
                break;
            case VarMap::Kind::split:
                out.witness[static_cast<std::size_t>(i)] =
                    transformed[static_cast<std::size_t>(vm.col)] -
                    transformed[static_cast<std::size_t>(vm.col_neg)];
                break;
        }
    }
    out.optimum = objective_value(lp, out.witness);
    return out;
}

Rat objective_value(const LinearProgram& lp, const std::vector<Rat>& point) {
    if (point.size() != lp.objective.size())
        throw std::invalid_argument("objective_value: dimension mismatch");
    Rat acc(0);
    for (std::size_t i = 0; i < point.size(); ++i) acc += lp.objective[i] * point[i];
    return acc;
}

bool verify(const LinearProgram& lp, const std::vector<Rat>& witness) {
    if (static_cast<int>(witness.size()) != lp.variable_count()) return false;
    for (int i = 0; i < lp.variable_count(); ++i) {
        if (lp.lower[static_cast<std::size_t>(i)] &&
            witness[static_cast<std::size_t>(i)] < *lp.lower[static_cast<std::size_t>(i)])
            return false;
        if (lp.upper[static_cast<std::size_t>(i)] &&
            witness[static_cast<std::size_t>(i)] > *lp.upper[static_cast<std::size_t>(i)])
            return false;
    }
    for (const auto& row : lp.rows) {
        Rat acc(0);
        for (const auto& [idx, coeff] : row.terms)
            acc += coeff * witness[static_cast<std::size_t>(idx)];
        switch (row.rel) {
            case Relation::le:
                if (acc > row.rhs) return false;
                break;
            case Relation::eq:
                if (acc != row.rhs) return false;
                break;
            case Relation::ge:
                if (acc < row.rhs) return false;
                break;
        }
    }
    return true;
}

std::string dump(const LinearProgram& lp) {
    std::ostringstream os;
    os << "# lp: " << lp.variable_count() << " variables, " << lp.rows.size() << " rows\n";
    os << "max:";
    bool first = true;
    for (int i = 0; i < lp.variable_count(); ++i) {
        if (lp.objective[static_cast<std::size_t>(i)] == 0) continue;
        os << (first ? " " : " + ") << rat_to_string(lp.objective[static_cast<std::size_t>(i)])
           << ' ' << lp.var_names[static_cast<std::size_t>(i)];
        first = false;
    }
    if (first) os << " 0/1";
    os << "\n";
    for (std::size_t r = 0; r < lp.rows.size(); ++r) {
        const auto& row = lp.rows[r];
        os << 'r' << r;
        if (!row.tag.empty()) os << '[' << row.tag << ']';
        os << ':';
        if (row.terms.empty()) os << " 0/1";
        for (std::size_t i = 0; i < row.terms.size(); ++i)
            os << (i == 0 ? " " : " + ") << rat_to_string(row.terms[i].second) << ' '
               << lp.var_names[static_cast<std::size_t>(row.terms[i].first)];
        os << ' ' << (row.rel == Relation::le ? "<=" : row.rel == Relation::eq ? "=" : ">=")
           << ' ' << rat_to_string(row.rhs) << "\n";
    }
    for (int i = 0; i < lp.variable_count(); ++i) {
        const auto& lo = lp.lower[static_cast<std::size_t>(i)];
        const auto& hi = lp.upper[static_cast<std::size_t>(i)];
        if (!lo && !hi) continue;
        os << "bound: ";
        if (lo) os << rat_to_string(*lo) << " <= ";
        os << lp.var_names[static_cast<std::size_t>(i)];
        if (hi) os << " <= " << rat_to_string(*hi);
        os << "\n";
    }
    return os.str();
}

}  // namespace detirs
