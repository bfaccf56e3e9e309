// Command-line surface for the determinant-IRS game-bound toolkit: certified
// upper bounds (alpha), permutation-strategy lower bounds (beta), the exact
// Fuglede-Kadison determinant check, and the dovetailing driver.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "detirs/driver.hpp"

namespace {

using namespace detirs;

struct CommonArgs {
    RunConfig config;
    std::string mode = "trace";
    bool cumulative = true;
    bool no_det = false;

    void apply() {
        if (mode == "subset")
            config.hierarchy.mode = HierarchyMode::subset;
        else if (mode == "trace")
            config.hierarchy.mode = HierarchyMode::trace;
        else
            throw CLI::ValidationError("--mode must be 'subset' or 'trace'");
        config.hierarchy.cumulative = cumulative;
        config.hierarchy.include_det = !no_det;
    }
};

void add_hierarchy_flags(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--mode", args.mode, "Relaxation mode: subset | trace")
        ->default_val("trace");
    cmd->add_flag("--cumulative,!--no-cumulative", args.cumulative,
                  "Fold lower-level constraints in (default; required for exact "
                  "alpha monotonicity)");
    cmd->add_flag("--no-det", args.no_det, "Omit the determinant constraint family");
    cmd->add_option("--deg-cap", args.config.hierarchy.deg_cap,
                    "Bernstein degree cap for the g polynomials");
    cmd->add_option("--matrix-budget", args.config.hierarchy.matrix_budget,
                    "Distinct A*A forms per level");
    cmd->add_option("--ball-radius-start", args.config.hierarchy.ball_radius_start,
                    "Radius of B_1 (default: smallest covering the strategy support)");
    cmd->add_option("--support-budget", args.config.hierarchy.support_budget,
                    "Admissible-support cap in subset mode");
    cmd->add_option("--workers", args.config.hierarchy.workers,
                    "Worker threads for constraint generation");
    cmd->add_option("--out", args.config.out_dir,
                    "Output directory (default: $DETIRS_OUT when set)");
    cmd->add_option("--seed", args.config.seed, "Seed for the beta search");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"determinant-IRS bounds for synchronous non-local games"};
    app.require_subcommand(1);

    CommonArgs alpha_args;
    int alpha_level = 1;
    auto* alpha_cmd = app.add_subcommand("alpha", "Level-n LP upper bound");
    alpha_cmd->add_option("game", alpha_args.config.game_path, "Game file")->required();
    alpha_cmd->add_option("-n,--level", alpha_level, "Hierarchy level")->default_val(1);
    add_hierarchy_flags(alpha_cmd, alpha_args);

    CommonArgs beta_args;
    int beta_degree = 4;
    auto* beta_cmd = app.add_subcommand("beta", "Permutation-strategy lower bound");
    beta_cmd->add_option("game", beta_args.config.game_path, "Game file")->required();
    beta_cmd->add_option("-d,--max-degree", beta_degree, "Largest action degree")->default_val(4);
    beta_cmd->add_option("--budget", beta_args.config.beta_budget, "Evaluation budget");
    beta_cmd->add_option("--seed", beta_args.config.seed, "Search seed");
    beta_cmd->add_option("--out", beta_args.config.out_dir, "Output directory");

    CommonArgs dove_args;
    std::string theta_accept = "1/2", theta_reject = "1/1";
    auto* dove_cmd = app.add_subcommand("dovetail", "Interleave alpha and beta until a verdict");
    dove_cmd->add_option("game", dove_args.config.game_path, "Game file")->required();
    dove_cmd->add_option("--theta-accept", theta_accept, "Accept when beta reaches this");
    dove_cmd->add_option("--theta-reject", theta_reject, "Reject when alpha drops below this");
    dove_cmd->add_option("--max-rounds", dove_args.config.max_rounds, "Round budget");
    dove_cmd->add_option("--beta-degree", dove_args.config.beta_max_degree,
                         "Degree ceiling for the beta stream");
    dove_cmd->add_option("--beta-budget", dove_args.config.beta_budget, "Beta evaluation budget");
    add_hierarchy_flags(dove_cmd, dove_args);

    std::string value_game, value_action;
    auto* value_cmd = app.add_subcommand("value", "Evaluate a permutation strategy on a game");
    value_cmd->add_option("game", value_game, "Game file")->required();
    value_cmd->add_option("action", value_action, "Action file")->required();

    std::string fk_matrix, fk_action;
    auto* fk_cmd = app.add_subcommand("fkdet", "Exact Fuglede-Kadison determinant check");
    fk_cmd->add_option("matrix", fk_matrix, "Matrix file")->required();
    fk_cmd->add_option("action", fk_action, "Action file")->required();

    int ln_level = 1, ln_cap = 64, ln_grid = 64;
    std::string ln_end = "4", ln_out;
    bool ln_strict = false;
    auto* ln_cmd = app.add_subcommand("lnpoly", "Certified polynomial upper bound for ln_+");
    ln_cmd->add_option("-n,--level", ln_level, "Approximation level")->default_val(1);
    ln_cmd->add_option("-N,--interval-end", ln_end, "Right end of the domain")->default_val("4");
    ln_cmd->add_option("--deg-cap", ln_cap, "Degree cap")->default_val(64);
    ln_cmd->add_option("--grid", ln_grid, "Certificate grid size")->default_val(64);
    ln_cmd->add_flag("--strict", ln_strict, "Fail instead of relaxing the accuracy target");
    ln_cmd->add_option("--out", ln_out, "Output directory");

    std::vector<std::string> ball_questions{"x", "y"};
    int ball_bits = 1, ball_radius = 1;
    bool ball_no_central = false;
    auto* ball_cmd = app.add_subcommand("ball", "Enumerate a word-metric ball");
    ball_cmd->add_option("-q,--questions", ball_questions, "Question labels");
    ball_cmd->add_option("-m,--bits", ball_bits, "Answer width")->default_val(1);
    ball_cmd->add_option("-r,--radius", ball_radius, "Radius")->required();
    ball_cmd->add_flag("--no-central", ball_no_central, "Omit the central generator");

    std::string val_game, val_action;
    auto* validate_cmd = app.add_subcommand("validate", "Validate a game and optional action");
    validate_cmd->add_option("game", val_game, "Game file")->required();
    validate_cmd->add_option("action", val_action, "Action file (optional)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*alpha_cmd) {
            alpha_args.apply();
            return cmd_alpha(alpha_args.config, alpha_level, std::cout);
        }
        if (*beta_cmd) {
            beta_args.apply();
            return cmd_beta(beta_args.config, beta_degree, std::cout);
        }
        if (*dove_cmd) {
            dove_args.apply();
            dove_args.config.theta_accept = rat_from_string(theta_accept);
            dove_args.config.theta_reject = rat_from_string(theta_reject);
            return cmd_dovetail(dove_args.config, std::cout);
        }
        if (*value_cmd) return cmd_value(value_game, value_action, std::cout);
        if (*fk_cmd) return cmd_fkdet(fk_matrix, fk_action, std::cout);
        if (*ln_cmd)
            return cmd_lnpoly(ln_level, rat_from_string(ln_end), ln_cap, ln_strict, ln_grid,
                              ln_out, std::cout);
        if (*ball_cmd) {
            GroupParams params{ball_questions, ball_bits};
            return cmd_ball(params, ball_radius, !ball_no_central, std::cout);
        }
        if (*validate_cmd) return cmd_validate(val_game, val_action, std::cout);
    } catch (const budget_exceeded& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return exit_budget;
    } catch (const verification_error& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return exit_verification;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_error;
    }
    return exit_error;
}
