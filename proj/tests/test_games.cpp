#include <doctest.h>

#include <random>
#include <sstream>

#include "detirs/games.hpp"
#include "detirs/permstrat.hpp"
#include "oracles.hpp"

using namespace detirs;

namespace {

GroupParams two_questions() { return GroupParams{{"x", "y"}, 1}; }

GameSpec consistency_game() { return test::corpus_consistency(); }
GameSpec triangle_game() { return test::corpus_triangle(); }

}  // namespace

TEST_SUITE("games") {

TEST_CASE("spectral projection expansion") {
    const auto p = two_questions();
    // m = 1, a = 0: (e + u_x)/2.
    const AlgebraElement e0 = expand_projection(p, 0, 0);
    CHECK(e0.terms.size() == 2);
    CHECK(e0.coefficient(identity_word()) == make_rat(1, 2));
    CHECK(e0.coefficient(generator_word(p, 0, 1)) == make_rat(1, 2));

    const GroupParams wide{{"x", "y"}, 2};
    for (int q = 0; q < 2; ++q) {
        AlgebraElement total = algebra_zero(wide);
        for (std::uint32_t a = 0; a < 4; ++a) total = add(total, expand_projection(wide, q, a));
        CHECK(total.terms == algebra_one(wide).terms);  // resolution of identity
        for (std::uint32_t a = 0; a < 4; ++a)
            for (std::uint32_t b = 0; b < 4; ++b) {
                const AlgebraElement prod =
                    mul(expand_projection(wide, q, a), expand_projection(wide, q, b));
                if (a == b)
                    CHECK(prod.terms == expand_projection(wide, q, a).terms);
                else
                    CHECK(prod.is_zero());
            }
    }
}

TEST_CASE("strategy functional for the constant deciders") {
    const auto p = two_questions();
    CHECK(strategy_functional(all_rejecting_game(p)).coeffs.empty());

    const auto f = strategy_functional(all_accepting_game(p));
    std::map<Word, Rat, WordLess> expect{{identity_word(), Rat(1)}, {central_word(), Rat(-1)}};
    CHECK(f.coeffs == expect);
}

TEST_CASE("strategy functional of the consistency game, against the expansion oracle") {
    const GameSpec g = consistency_game();
    // Independent route: expand sum q(x,y) sum_accepted (1-J) e_x^a e_y^b with
    // the oracle convolution.
    AlgebraElement acc = algebra_zero(g.params);
    const AlgebraElement one_minus_j =
        sub(algebra_one(g.params), algebra_word(g.params, central_word()));
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (std::uint32_t a = 0; a < 2; ++a)
                for (std::uint32_t b = 0; b < 2; ++b)
                    if (g.accepts(x, y, a, b))
                        acc = add(acc,
                                  scale(test::convolution_oracle(
                                            one_minus_j,
                                            test::convolution_oracle(expand_projection(g.params, x, a),
                                                                     expand_projection(g.params, y, b))),
                                        g.q(x, y)));
    const auto f = strategy_functional(g);
    CHECK(f.coeffs == acc.terms);

    // The singles cancel: support is exactly {e, J, xy, yx, J xy, J yx}.
    CHECK(f.coeffs.size() == 6);
    CHECK(f.coeffs.at(identity_word()) == make_rat(3, 4));
    CHECK(f.coeffs.at(central_word()) == make_rat(-3, 4));
    const Word xy = multiply(g.params, generator_word(g.params, 0, 1),
                             generator_word(g.params, 1, 1));
    CHECK(f.coeffs.at(xy) == make_rat(-1, 8));
    Word jxy = xy;
    jxy.j_flag = true;
    CHECK(f.coeffs.at(jxy) == make_rat(1, 8));
}

TEST_CASE("support sets") {
    const auto p = two_questions();
    CHECK(support_set(all_rejecting_game(p)).size() == 1);
    CHECK(support_set(all_accepting_game(p)).size() == 2);
    // Functional support of the consistency game (plus identity, symmetric).
    CHECK(support_set(consistency_game()).size() == 6);
    // The words every p(a,b|x,y) expression needs: for two questions and one
    // bit these are {e, u_x, u_y, u_x u_y, u_y u_x} and their J copies.
    CHECK(strategy_support(consistency_game()).size() == 10);
    CHECK(strategy_support(all_accepting_game(p)).size() == 10);
    CHECK(support_set(consistency_game()).is_subset_of(strategy_support(consistency_game())));
}

TEST_CASE("supports live inside the short-word ball") {
    std::mt19937_64 rng(59);
    for (int i = 0; i < 20; ++i) {
        const int bits = 1 + static_cast<int>(rng() % 2);
        const GameSpec g = test::random_game(rng, 2 + static_cast<int>(rng() % 2), bits);
        const int radius = 2 * bits + 1;
        CHECK(strategy_support(g).is_subset_of(ball(g.params, radius)));
        CHECK(support_set(g).is_subset_of(ball(g.params, 4 * bits + 1)));
    }
}

TEST_CASE("value pairing and its error on missing words") {
    const auto p = two_questions();
    const GameSpec accepting = all_accepting_game(p);
    std::map<Word, Rat, WordLess> tau{{identity_word(), Rat(1)}, {central_word(), Rat(0)}};
    CHECK(value(accepting, tau) == 1);
    CHECK(value(all_rejecting_game(p), {}) == 0);
    std::map<Word, Rat, WordLess> missing{{identity_word(), Rat(1)}};
    CHECK_THROWS_AS(value(accepting, missing), std::invalid_argument);
}

TEST_CASE("value from a degree-2 action, cross-checked against direct summation") {
    const GameSpec g = consistency_game();
    PermutationAction action = trivial_action(g.params, 2);
    const Permutation swap = perm_from_cycles(2, "(1 2)");
    action.generator_image(0, 1) = swap;
    action.generator_image(1, 1) = swap;
    action.central_image = swap;
    REQUIRE(validate_action(action, g.params).empty());
    const Rat via_tau = value(g, induced_trace(action, support_set(g)));
    const Rat via_table = perm_value_direct(g, action);
    CHECK(via_tau == via_table);
    // Both players answer f(x) = f(y) = 1: diagonal pairs accepted, the two
    // off-diagonal pairs rejected.
    CHECK(via_tau == make_rat(1, 2));
}

TEST_CASE("value of the regular trace is the uniform-answer acceptance rate") {
    // tau = 1 at the identity and 0 everywhere else (the regular trace, with
    // the J part explicitly 0): each answer pair then carries weight 4^-m, so
    // the value must equal sum q(x,y) #accepted / 4^m, computed independently.
    std::mt19937_64 rng(61);
    for (int i = 0; i < 30; ++i) {
        const GameSpec g = test::random_game(rng, 2, 1 + static_cast<int>(rng() % 2));
        std::map<Word, Rat, WordLess> tau;
        for (const auto& w : support_set(g).elements) tau[w] = w.is_identity() ? Rat(1) : Rat(0);
        // Distinct questions sample answers uniformly and independently;
        // equal questions are forced synchronous by e_x^a e_x^b = delta e_x^a,
        // with a uniform marginal.
        Rat expected(0);
        const std::uint32_t n = g.answer_count();
        for (const auto& [pair, prob] : g.q_dist) {
            long accepted = 0;
            if (pair.first == pair.second) {
                for (std::uint32_t a = 0; a < n; ++a)
                    if (g.accepts(pair.first, pair.second, a, a)) ++accepted;
                expected += prob * make_rat(accepted, static_cast<long>(n));
            } else {
                for (std::uint32_t a = 0; a < n; ++a)
                    for (std::uint32_t b = 0; b < n; ++b)
                        if (g.accepts(pair.first, pair.second, a, b)) ++accepted;
                expected += prob * make_rat(accepted, static_cast<long>(n) * n);
            }
        }
        CHECK(value(g, tau) == expected);
    }
}

TEST_CASE("value is linear in tau") {
    const GameSpec g = consistency_game();
    std::mt19937_64 rng(67);
    const auto words = support_set(g).elements;
    for (int i = 0; i < 20; ++i) {
        std::map<Word, Rat, WordLess> tau1, tau2, mix;
        const Rat lambda = make_rat(static_cast<long>(rng() % 5), 7);
        for (const auto& w : words) {
            tau1[w] = make_rat(static_cast<long>(rng() % 9) - 4, 3);
            tau2[w] = make_rat(static_cast<long>(rng() % 9) - 4, 5);
            mix[w] = lambda * tau1[w] + (1 - lambda) * tau2[w];
        }
        CHECK(value(g, mix) == lambda * value(g, tau1) + (1 - lambda) * value(g, tau2));
    }
}

TEST_CASE("classical brute force") {
    const auto p = two_questions();
    CHECK(classical_value_bruteforce(all_accepting_game(p)) == 1);
    CHECK(classical_value_bruteforce(all_rejecting_game(p)) == 0);
    CHECK(classical_value_bruteforce(consistency_game()) == 1);
    // Triangle two-colouring: at best one of the nine ordered pairs fails on
    // each of the two same-colour endpoints.
    CHECK(classical_value_bruteforce(triangle_game()) == make_rat(7, 9));
    CHECK_THROWS_AS(classical_value_bruteforce(triangle_game(), 4), budget_exceeded);
}

TEST_CASE("game file parsing, formatting, and validation") {
    const GameSpec g = consistency_game();
    const std::string text = format_game(g);
    std::istringstream in(text);
    const GameSpec parsed = parse_game(in);
    CHECK(parsed.params == g.params);
    CHECK(parsed.q_dist == g.q_dist);
    CHECK(parsed.accept_table == g.accept_table);

    auto parse_text = [](const std::string& s) {
        std::istringstream is(s);
        return parse_game(is);
    };
    CHECK_THROWS_AS(parse_text("questions: x y\nbits: 1\nq: x y 1/2\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_text("questions: x y\nbits: 1\nq: x y 1/2\nq: y x 1/2\nq: x y 1/4\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_text("questions: x y\nbits: 1\nq: x z 1/1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_text("bits: 1\nq: x y 1/1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_text("questions: x y\nbits: 1\nq: x y 1/1\naccept: x y 00 0\n"),
                    std::invalid_argument);
    // Comments and zero-probability omissions are fine.
    const GameSpec minimal =
        parse_text("# comment\nquestions: x y\nbits: 1\nq: x y 1/1\naccept: x y 0 1\n");
    CHECK(minimal.q(0, 0) == 0);
    CHECK(minimal.accepts(0, 1, 0, 1));
    CHECK_FALSE(minimal.accepts(0, 1, 1, 1));
}

TEST_CASE("answer bit strings are little-endian over answer indices") {
    GroupParams p{{"x"}, 3};
    CHECK(format_answer_bits(p, 0b001) == "100");
    CHECK(parse_answer_bits(p, "100") == 0b001);
    CHECK(parse_answer_bits(p, "011") == 0b110);
    CHECK_THROWS_AS(parse_answer_bits(p, "10"), std::invalid_argument);
    CHECK_THROWS_AS(parse_answer_bits(p, "1x0"), std::invalid_argument);
}

TEST_CASE("strategy tables validate") {
    const GameSpec g = consistency_game();
    StrategyTable t = make_strategy_table(g.params);
    CHECK_FALSE(validate_strategy_table(g, t).empty());  // sums are zero
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (std::uint32_t a = 0; a < 2; ++a)
                for (std::uint32_t b = 0; b < 2; ++b) t.at(x, y, a, b) = make_rat(1, 4);
    CHECK(validate_strategy_table(g, t).empty());
    CHECK(table_value(g, t) == make_rat(1, 2));
    t.at(0, 0, 0, 0) = make_rat(-1, 4);
    CHECK_FALSE(validate_strategy_table(g, t).empty());
}

}  // TEST_SUITE
