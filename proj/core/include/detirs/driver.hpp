#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "detirs/hierarchy.hpp"
#include "detirs/permstrat.hpp"

namespace detirs {

/// Exit codes shared by every command: 0 success/accept, 2 reject,
/// 3 budget exhausted, 1 error, 4 failed post-solve verification.
enum ExitCode : int {
    exit_ok = 0,
    exit_error = 1,
    exit_reject = 2,
    exit_budget = 3,
    exit_verification = 4,
};

struct RunConfig {
    std::string game_path;
    HierarchyOptions hierarchy;
    Rat theta_accept = make_rat(1, 2);
    Rat theta_reject = Rat(1);
    int max_rounds = 2;
    int beta_max_degree = 4;
    long beta_budget = 20000;
    std::uint64_t seed = 1;
    std::string out_dir;  // empty: no files persisted

    void validate() const;
};

/// Round-robin driver over the two bound streams: per round, alpha_n is
/// computed and checked against theta_reject first, then beta up to the round's
/// degree schedule against theta_accept. Monotone bounds make the verdict
/// independent of the interleaving inside the promise gap; the fixed order
/// makes it deterministic outside it.
enum class Verdict { accept, reject, budget_exhausted };

struct DovetailRound {
    int round = 0;
    Rat alpha_value;
    Rat beta_value;
    bool beta_ran = false;
};

struct DovetailResult {
    Verdict verdict = Verdict::budget_exhausted;
    int decided_round = 0;
    std::vector<DovetailRound> rounds;
    std::string transcript;
};

int cmd_alpha(const RunConfig& config, int level, std::ostream& out);
int cmd_beta(const RunConfig& config, int max_degree, std::ostream& out);
int cmd_dovetail(const RunConfig& config, std::ostream& out);
DovetailResult run_dovetail(const RunConfig& config);

int cmd_value(const std::string& game_path, const std::string& action_path, std::ostream& out);
int cmd_fkdet(const std::string& matrix_path, const std::string& action_path, std::ostream& out);
int cmd_lnpoly(int level, const Rat& interval_end, int degree_cap, bool strict, int grid,
               const std::string& out_dir, std::ostream& out);
int cmd_ball(const GroupParams& params, int radius, bool with_central, std::ostream& out);
int cmd_validate(const std::string& game_path, const std::string& action_path, std::ostream& out);

/// Matrix file format for fkdet: a questions/bits header followed by the
/// bracketed row-major matrix of `p/q * word` sums.
struct MatrixFile {
    GroupParams params;
    AlgebraMatrix matrix;
};
MatrixFile parse_matrix_file(const std::string& path);
std::string format_matrix_file(const GroupParams& params, const AlgebraMatrix& matrix);

/// Output directory resolution: explicit config value, else the DETIRS_OUT
/// environment variable, else none.
std::string resolve_out_dir(const std::string& configured);

}  // namespace detirs
