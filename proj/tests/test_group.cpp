#include <doctest.h>

#include <random>

#include "detirs/group.hpp"
#include "oracles.hpp"

using namespace detirs;

namespace {

GroupParams two_questions() { return GroupParams{{"x", "y"}, 1}; }
GroupParams wide() { return GroupParams{{"x", "y", "z"}, 2}; }

Word gen(const GroupParams& p, const char* label, int i = 1) {
    return generator_word(p, p.question_index(label), i);
}

}  // namespace

TEST_SUITE("group") {

TEST_CASE("generators square to the identity") {
    const auto p = two_questions();
    const Word ux = gen(p, "x");
    CHECK(multiply(p, ux, ux).is_identity());
    CHECK(multiply(p, central_word(), central_word()).is_identity());
}

TEST_CASE("same-question blocks merge by symmetric difference") {
    const auto p = wide();
    const Word u1 = gen(p, "x", 1);
    const Word u2 = gen(p, "x", 2);
    const Word merged = multiply(p, u1, u2);
    REQUIRE(merged.blocks.size() == 1);
    CHECK(merged.blocks[0].bits == 0b11);
    CHECK(multiply(p, merged, u1) == u2);
}

TEST_CASE("cascading cancellation collapses the commutator of inverse pairs") {
    const auto p = two_questions();
    const Word xy = multiply(p, gen(p, "x"), gen(p, "y"));
    const Word yx = multiply(p, gen(p, "y"), gen(p, "x"));
    const Word prod = multiply(p, xy, yx);
    CHECK(prod.is_identity());
    CHECK(test::word_mult_oracle(p, xy, yx).is_identity());
}

TEST_CASE("multiplication agrees with the string-reduction oracle") {
    const auto p = wide();
    std::mt19937_64 rng(42);
    for (int i = 0; i < 500; ++i) {
        const Word a = test::random_word(p, rng, 3);
        const Word b = test::random_word(p, rng, 3);
        CHECK(multiply(p, a, b) == test::word_mult_oracle(p, a, b));
    }
}

TEST_CASE("inverse reverses blocks and is a two-sided inverse") {
    const auto p = two_questions();
    CHECK(inverse(identity_word()).is_identity());
    const Word ux = gen(p, "x");
    CHECK(inverse(ux) == ux);  // block elements are involutions

    const Word w = multiply(p, ux, gen(p, "y"));
    const Word wi = inverse(w);
    REQUIRE(wi.blocks.size() == 2);
    CHECK(wi.blocks[0].question == p.question_index("y"));
    CHECK(multiply(p, w, wi).is_identity());
    CHECK(multiply(p, wi, w).is_identity());

    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const Word r = test::random_word(p, rng, 4);
        CHECK(multiply(p, r, inverse(r)).is_identity());
    }
}

TEST_CASE("conjugation basics") {
    const auto p = two_questions();
    std::mt19937_64 rng(11);
    const Word g = multiply(p, gen(p, "x"), gen(p, "y"));
    for (int i = 0; i < 100; ++i) {
        const Word w = test::random_word(p, rng, 3);
        CHECK(conjugate(p, w, identity_word()) == w);
        // J is central: conjugation preserves the flag.
        CHECK(conjugate(p, w, central_word()) == w);
        CHECK(conjugate(p, w, g).j_flag == w.j_flag);
    }
    // conjugate(u_y, u_x) = u_x u_y u_x.
    const Word expect = multiply(p, multiply(p, gen(p, "x"), gen(p, "y")), gen(p, "x"));
    CHECK(conjugate(p, gen(p, "y"), gen(p, "x")) == expect);
    CHECK(expect.blocks.size() == 3);
}

TEST_CASE("associativity, involutivity, centrality at scale") {
    const auto p = wide();
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 10000; ++i) {
        const Word a = test::random_word(p, rng, 2);
        const Word b = test::random_word(p, rng, 2);
        const Word c = test::random_word(p, rng, 2);
        CHECK(multiply(p, multiply(p, a, b), c) == multiply(p, a, multiply(p, b, c)));
        if (i % 10 == 0) {
            CHECK(multiply(p, multiply(p, central_word(), a), inverse(central_word())) == a);
            CHECK(multiply(p, central_word(), a) == multiply(p, a, central_word()));
        }
    }
}

TEST_CASE("ball sizes for two questions, one bit") {
    const auto p = two_questions();
    CHECK(ball(p, 0).size() == 1);
    CHECK(ball(p, 1).size() == 4);
    CHECK(ball(p, 2).size() == 8);
    const auto oracle2 = test::ball_oracle(p, 2);
    CHECK(ball(p, 2).elements == oracle2);
    const auto oracle3 = test::ball_oracle(p, 3);
    CHECK(ball(p, 3).elements == oracle3);
    CHECK(ball(p, 3).size() == 12);
}

TEST_CASE("balls nest, are symmetric, and contain the identity") {
    const auto p = wide();
    WordSet prev = ball(p, 0);
    for (int r = 1; r <= 3; ++r) {
        const WordSet b = ball(p, r);
        CHECK(prev.is_subset_of(b));
        CHECK(b.contains(identity_word()));
        for (const auto& w : b.elements) CHECK(b.contains(inverse(w)));
        prev = b;
    }
}

TEST_CASE("ball without the central generator stays in the plain free product") {
    const auto p = two_questions();
    const WordSet b = ball(p, 3, false);
    for (const auto& w : b.elements) CHECK_FALSE(w.j_flag);
    CHECK(b.size() == 7);
}

TEST_CASE("product_closure basics") {
    const auto p = two_questions();
    const WordSet b1 = ball(p, 1);
    CHECK(product_closure(b1, 1).elements == b1.elements);
    CHECK(product_closure(b1, 2).elements == ball(p, 2).elements);
    CHECK(product_closure(ball(p, 1), 3).elements == ball(p, 3).elements);
    // Subadditivity of word length.
    const WordSet pc = product_closure(ball(p, 2), 3);
    CHECK(pc.is_subset_of(ball(p, 6)));
    CHECK(ball(p, 5).is_subset_of(pc));
    CHECK(pc.elements == ball(p, 6).elements);
    CHECK_THROWS_AS(product_closure(ball(p, 2), 6, 10), budget_exceeded);
}

TEST_CASE("normal-form uniqueness across bracketings") {
    const auto p = wide();
    std::mt19937_64 rng(99);
    for (int i = 0; i < 200; ++i) {
        std::vector<Word> gens;
        for (int g = 0; g < 5; ++g) gens.push_back(test::random_word(p, rng, 1));
        Word left = identity_word();
        for (const auto& g : gens) left = multiply(p, left, g);
        Word right = identity_word();
        for (auto it = gens.rbegin(); it != gens.rend(); ++it) right = multiply(p, *it, right);
        CHECK(left == right);
    }
}

TEST_CASE("serialization round-trips and matches the documented format") {
    const auto p = wide();
    CHECK(word_to_string(p, identity_word()) == "e");
    CHECK(word_to_string(p, central_word()) == "e*J");
    const Word w = multiply(p, multiply(p, gen(p, "x", 1), gen(p, "x", 2)),
                            multiply(p, gen(p, "y", 1), central_word()));
    CHECK(word_to_string(p, w) == "x{1,2}.y{1}*J");
    std::mt19937_64 rng(5);
    for (int i = 0; i < 300; ++i) {
        const Word r = test::random_word(p, rng, 3);
        CHECK(word_from_string(p, word_to_string(p, r)) == r);
    }
    CHECK_THROWS_AS(word_from_string(p, "w{1}"), std::invalid_argument);
    CHECK_THROWS_AS(word_from_string(p, "x{9}"), std::invalid_argument);
    CHECK_THROWS_AS(word_from_string(p, "x{1}.x{2}"), std::invalid_argument);
    CHECK_THROWS_AS(word_from_string(p, "x{}"), std::invalid_argument);
}

TEST_CASE("enumeration order is deterministic and canonical") {
    const auto p = two_questions();
    const WordSet b = ball(p, 3);
    for (int i = 1; i < b.size(); ++i)
        CHECK(word_less(b.elements[static_cast<std::size_t>(i - 1)],
                        b.elements[static_cast<std::size_t>(i)]));
    CHECK(b.index_of(identity_word()) == 0);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(validate_params(GroupParams{{}, 1}), std::invalid_argument);
    CHECK_THROWS_AS(validate_params(GroupParams{{"x"}, 0}), std::invalid_argument);
    CHECK_THROWS_AS(validate_params(GroupParams{{"x", "x"}, 1}), std::invalid_argument);
    CHECK_THROWS_AS(validate_params(GroupParams{{"a.b"}, 1}), std::invalid_argument);
    const auto p = two_questions();
    Word bad;
    bad.blocks.push_back({5, 1});
    CHECK_THROWS_AS(multiply(p, bad, identity_word()), std::invalid_argument);
}

}  // TEST_SUITE
