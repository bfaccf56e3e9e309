#include "detirs/driver.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace detirs {

namespace {

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
    if (dir.empty()) return;
    std::filesystem::create_directories(dir);
    std::ofstream out(std::filesystem::path(dir) / name, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write to output directory '" + dir + "'");
    out << content;
}

void append_file(const std::string& dir, const std::string& name, const std::string& content) {
    if (dir.empty()) return;
    std::filesystem::create_directories(dir);
    std::ofstream out(std::filesystem::path(dir) / name, std::ios::app);
    if (!out) throw std::runtime_error("cannot write to output directory '" + dir + "'");
    out << content;
}

std::string game_stem(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

std::string witness_text(const AlphaResult& result) {
    std::ostringstream os;
    if (result.dist_witness) {
        const auto& dist = *result.dist_witness;
        for (std::size_t s = 0; s < dist.supports.size(); ++s) {
            os << "support " << s << " (weight " << rat_to_string(dist.weights[s]) << "):";
            for (int idx : dist.supports[s])
                os << ' '
                   << word_to_string(dist.domain.params,
                                     dist.domain.elements[static_cast<std::size_t>(idx)]);
            os << "\n";
        }
    }
    for (const auto& [w, v] : result.tau_witness)
        os << "tau[" << word_to_string(result.level.domain.params, w)
           << "] = " << rat_to_string(v) << "\n";
    return os.str();
}

std::string rat_pretty(const Rat& x) { return rat_to_string(x) + " (~" + rat_to_decimal(x) + ")"; }

}  // namespace

void RunConfig::validate() const {
    if (!(theta_accept > 0 && theta_accept <= theta_reject && theta_reject <= 1))
        throw std::invalid_argument("thresholds must satisfy 0 < theta_accept <= theta_reject <= 1");
    if (max_rounds < 1) throw std::invalid_argument("max rounds must be >= 1");
}

std::string resolve_out_dir(const std::string& configured) {
    if (!configured.empty()) return configured;
    const char* env = std::getenv("DETIRS_OUT");
    return env ? std::string(env) : std::string();
}

int cmd_alpha(const RunConfig& config, int level, std::ostream& out) {
    config.validate();
    const GameSpec game = parse_game_file(config.game_path);
    const AlphaResult result = alpha(game, level, config.hierarchy);
    const std::string dir = resolve_out_dir(config.out_dir);
    const std::string stem = game_stem(config.game_path);
    out << "alpha_" << level << " = " << rat_pretty(result.alpha) << "\n";
    for (const auto& note : result.level.notes) out << "# " << note << "\n";
    write_file(dir, stem + ".alpha" + std::to_string(level) + ".lp", dump(result.level.lp));
    write_file(dir, stem + ".alpha" + std::to_string(level) + ".witness", witness_text(result));
    append_file(dir, stem + ".bounds.log",
                "alpha[" + std::to_string(level) + "] = " + rat_to_string(result.alpha) + "\n");
    return exit_ok;
}

int cmd_beta(const RunConfig& config, int max_degree, std::ostream& out) {
    config.validate();
    const GameSpec game = parse_game_file(config.game_path);
    const BetaResult result = search_beta(game, max_degree, config.beta_budget, config.seed);
    // Re-verify through the independent evaluation path before reporting.
    const Rat direct = perm_value_direct(game, result.best_action);
    if (direct != result.beta) {
        out << "error: functional and direct evaluations disagree\n";
        return exit_verification;
    }
    const std::string dir = resolve_out_dir(config.out_dir);
    const std::string stem = game_stem(config.game_path);
    out << "beta[<=" << max_degree << "] = " << rat_pretty(result.beta) << "\n";
    out << "# evaluations: " << result.evaluations
        << (result.exhausted ? " (budget exhausted)" : "") << "\n";
    write_file(dir, stem + ".beta.action", format_action(result.best_action));
    append_file(dir, stem + ".bounds.log",
                "beta[<=" + std::to_string(max_degree) + "] = " + rat_to_string(result.beta) + "\n");
    return result.exhausted ? exit_budget : exit_ok;
}

DovetailResult run_dovetail(const RunConfig& config) {
    config.validate();
    const GameSpec game = parse_game_file(config.game_path);
    DovetailResult result;
    std::ostringstream transcript;
    transcript << "dovetail: game=" << game_stem(config.game_path)
               << " theta_accept=" << rat_to_string(config.theta_accept)
               << " theta_reject=" << rat_to_string(config.theta_reject)
               << " max_rounds=" << config.max_rounds << "\n";
    for (int round = 1; round <= config.max_rounds; ++round) {
        DovetailRound r;
        r.round = round;
        const AlphaResult a = alpha(game, round, config.hierarchy);
        r.alpha_value = a.alpha;
        transcript << "round " << round << ": alpha[" << round
                   << "] = " << rat_to_string(a.alpha) << "\n";
        if (a.alpha < config.theta_reject) {
            result.rounds.push_back(r);
            result.verdict = Verdict::reject;
            result.decided_round = round;
            transcript << "verdict: reject (round " << round << ", alpha "
                       << rat_to_string(a.alpha) << " < " << rat_to_string(config.theta_reject)
                       << ")\n";
            result.transcript = transcript.str();
            return result;
        }
        const int degree = std::min(config.beta_max_degree, 2 * round);
        const BetaResult b = search_beta(game, degree, config.beta_budget, config.seed);
        r.beta_value = b.beta;
        r.beta_ran = true;
        result.rounds.push_back(r);
        transcript << "round " << round << ": beta[<=" << degree
                   << "] = " << rat_to_string(b.beta) << "\n";
        if (b.beta >= config.theta_accept) {
            result.verdict = Verdict::accept;
            result.decided_round = round;
            transcript << "verdict: accept (round " << round << ", beta "
                       << rat_to_string(b.beta) << " >= " << rat_to_string(config.theta_accept)
                       << ")\n";
            result.transcript = transcript.str();
            return result;
        }
    }
    result.verdict = Verdict::budget_exhausted;
    result.decided_round = config.max_rounds;
    transcript << "verdict: budget-exhausted (" << config.max_rounds << " rounds)\n";
    result.transcript = transcript.str();
    return result;
}

int cmd_dovetail(const RunConfig& config, std::ostream& out) {
    const DovetailResult result = run_dovetail(config);
    out << result.transcript;
    const std::string dir = resolve_out_dir(config.out_dir);
    write_file(dir, game_stem(config.game_path) + ".dovetail.log", result.transcript);
    switch (result.verdict) {
        case Verdict::accept:
            return exit_ok;
        case Verdict::reject:
            return exit_reject;
        case Verdict::budget_exhausted:
            return exit_budget;
    }
    return exit_error;
}

int cmd_value(const std::string& game_path, const std::string& action_path, std::ostream& out) {
    const GameSpec game = parse_game_file(game_path);
    const PermutationAction action = parse_action_file(game.params, action_path);
    const std::string violation = validate_action(action, game.params);
    if (!violation.empty()) {
        out << "invalid action: " << violation << "\n";
        return exit_error;
    }
    const Rat via_functional = perm_value(game, action);
    const Rat via_table = perm_value_direct(game, action);
    if (via_functional != via_table) {
        out << "error: evaluation paths disagree (" << rat_to_string(via_functional) << " vs "
            << rat_to_string(via_table) << ")\n";
        return exit_verification;
    }
    out << "value = " << rat_pretty(via_functional) << "\n";
    return exit_ok;
}

MatrixFile parse_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file '" + path + "'");
    GroupParams params;
    bool have_questions = false, have_bits = false;
    std::string line, body;
    while (std::getline(in, line)) {
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream is(line);
        std::string key;
        if (!(is >> key)) continue;
        if (key == "questions:") {
            std::string label;
            while (is >> label) params.questions.push_back(label);
            have_questions = true;
        } else if (key == "bits:") {
            is >> params.answer_width;
            have_bits = true;
        } else {
            body += line + "\n";
        }
    }
    if (!have_questions || !have_bits)
        throw std::invalid_argument("matrix file: missing questions/bits header");
    validate_params(params);
    return MatrixFile{params, matrix_from_string(params, body)};
}

std::string format_matrix_file(const GroupParams& params, const AlgebraMatrix& matrix) {
    std::ostringstream os;
    os << "questions:";
    for (const auto& q : params.questions) os << ' ' << q;
    os << "\nbits: " << params.answer_width << "\n" << matrix_to_string(matrix) << "\n";
    return os.str();
}

int cmd_fkdet(const std::string& matrix_path, const std::string& action_path, std::ostream& out) {
    const MatrixFile mf = parse_matrix_file(matrix_path);
    const PermutationAction action = parse_action_file(mf.params, action_path);
    const std::string violation = validate_action(action, mf.params);
    if (!violation.empty()) {
        out << "invalid action: " << violation << "\n";
        return exit_error;
    }
    const FkResult fk = fk_logdet(action, mf.matrix);
    out << "matrix size: " << fk.matrix_size << "\n";
    out << "char poly coefficients (constant first):";
    for (const auto& c : fk.char_poly_coeffs) out << ' ' << c.get_str();
    out << "\n";
    out << "nullity: " << fk.nullity << "\n";
    out << "lowest nonzero coefficient: " << fk.lowest_nonzero_coeff.get_str() << "\n";
    out << "normalized logdet: ln(" << fk.abs_coeff.get_str() << ")/" << fk.matrix_size << " = "
        << fk.logdet_decimal() << "\n";
    if (!fk.nonnegative()) {
        out << "DETERMINANT BOUND VIOLATED\n";
        return exit_verification;
    }
    return exit_ok;
}

int cmd_lnpoly(int level, const Rat& interval_end, int degree_cap, bool strict, int grid,
               const std::string& out_dir, std::ostream& out) {
    LnPolyOptions opts;
    opts.grid_size = grid;
    opts.strict_accuracy = strict;
    CertifiedUpperPoly g;
    try {
        g = g_poly(level, interval_end, degree_cap, opts);
    } catch (const accuracy_unreachable& e) {
        out << "error: " << e.what() << "\n";
        out << "minimal feasible degree estimate: " << e.minimal_degree_estimate << "\n";
        return exit_error;
    }
    const std::string report = certificate_report(g);
    out << poly_to_string(g.poly) << "\n" << report;
    const std::string dir = resolve_out_dir(out_dir);
    const std::string stem =
        "g" + std::to_string(level) + "_N" + rat_to_decimal(interval_end, 3);
    write_file(dir, stem + ".poly", poly_to_string(g.poly) + "\n");
    write_file(dir, stem + ".cert", report);
    return g.certificate.passed ? exit_ok : exit_verification;
}

int cmd_ball(const GroupParams& params, int radius, bool with_central, std::ostream& out) {
    const WordSet b = ball(params, radius, with_central);
    for (const auto& w : b.elements) out << word_to_string(params, w) << "\n";
    out << "# size: " << b.size() << "\n";
    return exit_ok;
}

int cmd_validate(const std::string& game_path, const std::string& action_path,
                 std::ostream& out) {
    const GameSpec game = parse_game_file(game_path);
    out << "game ok: " << game.params.question_count() << " questions, "
        << game.params.answer_width << " bit(s)\n";
    if (action_path.empty()) return exit_ok;
    const PermutationAction action = parse_action_file(game.params, action_path);
    const std::string violation = validate_action(action, game.params);
    if (!violation.empty()) {
        out << "action violation: " << violation << "\n";
        return exit_error;
    }
    out << "action ok: degree " << action.degree
        << (action.central_image.fixed_points() == 0 ? ", J fixed-point-free" : ", J has fixed points")
        << "\n";
    return exit_ok;
}

}  // namespace detirs
