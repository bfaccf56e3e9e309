#include <doctest.h>

#include <random>

#include "detirs/algebra.hpp"
#include "detirs/permstrat.hpp"
#include "oracles.hpp"

using namespace detirs;

namespace {

GroupParams two_questions() { return GroupParams{{"x", "y"}, 1}; }

AlgebraElement gen_elem(const GroupParams& p, const char* label, const Rat& c = Rat(1)) {
    return algebra_word(p, generator_word(p, p.question_index(label), 1), c);
}

AlgebraElement random_element(const GroupParams& p, std::mt19937_64& rng, int terms) {
    AlgebraElement e = algebra_zero(p);
    for (int t = 0; t < terms; ++t) {
        const long num = static_cast<long>(rng() % 9) - 4;
        if (num == 0) continue;
        const long den = 1 + static_cast<long>(rng() % 3);
        e = add(e, algebra_word(p, detirs::test::random_word(p, rng, 2), make_rat(num, den)));
    }
    return e;
}

}  // namespace

TEST_SUITE("algebra") {

TEST_CASE("add and scale are coefficientwise and zero-pruned") {
    const auto p = two_questions();
    const AlgebraElement a = add(gen_elem(p, "x"), gen_elem(p, "y"));
    CHECK(add(a, algebra_zero(p)).terms == a.terms);
    CHECK(add(a, scale(a, Rat(-1))).is_zero());
    const AlgebraElement scaled = scale(a, make_rat(2, 3));
    for (const auto& [w, c] : scaled.terms) CHECK(c == make_rat(2, 3));
}

TEST_CASE("unital convolution and the averaging projection is idempotent") {
    const auto p = two_questions();
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        const AlgebraElement a = random_element(p, rng, 4);
        CHECK(mul(algebra_one(p), a).terms == a.terms);
        CHECK(mul(a, algebra_one(p)).terms == a.terms);
    }
    // (1 + u_x)/2 squares to itself.
    const AlgebraElement e0 = scale(add(algebra_one(p), gen_elem(p, "x")), make_rat(1, 2));
    CHECK(mul(e0, e0).terms == e0.terms);
}

TEST_CASE("convolution matches the oracle on random sparse elements") {
    const auto p = GroupParams{{"x", "y", "z"}, 2};
    std::mt19937_64 rng(17);
    for (int i = 0; i < 120; ++i) {
        const AlgebraElement a = random_element(p, rng, 3);
        const AlgebraElement b = random_element(p, rng, 3);
        CHECK(mul(a, b).terms == test::convolution_oracle(a, b).terms);
    }
    // (u_x + u_y)(u_x - u_y) expands with the constant terms cancelling.
    const AlgebraElement s = add(gen_elem(p, "x"), gen_elem(p, "y"));
    const AlgebraElement d = add(gen_elem(p, "x"), gen_elem(p, "y", Rat(-1)));
    CHECK(mul(s, d).terms == test::convolution_oracle(s, d).terms);
}

TEST_CASE("mul is associative on random triples") {
    const auto p = two_questions();
    std::mt19937_64 rng(23);
    for (int i = 0; i < 60; ++i) {
        const AlgebraElement a = random_element(p, rng, 3);
        const AlgebraElement b = random_element(p, rng, 3);
        const AlgebraElement c = random_element(p, rng, 3);
        CHECK(mul(mul(a, b), c).terms == mul(a, mul(b, c)).terms);
    }
}

TEST_CASE("mul respects the term budget") {
    const auto p = GroupParams{{"x", "y", "z"}, 2};
    std::mt19937_64 rng(29);
    const AlgebraElement a = random_element(p, rng, 8);
    const AlgebraElement b = random_element(p, rng, 8);
    CHECK_THROWS_AS(mul(a, b, 2), budget_exceeded);
}

TEST_CASE("adjoint is an involutive anti-homomorphism") {
    const auto p = two_questions();
    CHECK(matrix_to_string(adjoint(matrix_identity(p, 2))) ==
          matrix_to_string(matrix_identity(p, 2)));

    // adjoint([u_x u_y]) = [u_y u_x] for the 1x1 matrix.
    const Word xy = multiply(p, generator_word(p, 0, 1), generator_word(p, 1, 1));
    AlgebraMatrix m = matrix_zero(p, 1);
    m.at(0, 0) = algebra_word(p, xy);
    const Word yx = inverse(xy);
    CHECK(adjoint(m).at(0, 0).terms.count(yx) == 1);

    std::mt19937_64 rng(31);
    for (int i = 0; i < 25; ++i) {
        AlgebraMatrix a = matrix_zero(p, 2);
        AlgebraMatrix b = matrix_zero(p, 2);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                a.at(r, c) = random_element(p, rng, 2);
                b.at(r, c) = random_element(p, rng, 2);
            }
        CHECK(matrix_to_string(adjoint(adjoint(a))) == matrix_to_string(a));
        CHECK(matrix_to_string(adjoint(mat_mul(a, b))) ==
              matrix_to_string(mat_mul(adjoint(b), adjoint(a))));
    }
}

TEST_CASE("matrix product against the schoolbook oracle") {
    const auto p = two_questions();
    std::mt19937_64 rng(37);
    const AlgebraMatrix id = matrix_identity(p, 2);
    for (int i = 0; i < 20; ++i) {
        AlgebraMatrix a = matrix_zero(p, 2);
        AlgebraMatrix b = matrix_zero(p, 2);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                a.at(r, c) = random_element(p, rng, 2);
                b.at(r, c) = random_element(p, rng, 2);
            }
        CHECK(matrix_to_string(mat_mul(a, b)) == matrix_to_string(test::mat_mul_oracle(a, b)));
        CHECK(matrix_to_string(mat_mul(id, a)) == matrix_to_string(a));
        CHECK(matrix_to_string(mat_mul(a, matrix_zero(p, 2))) ==
              matrix_to_string(matrix_zero(p, 2)));
    }
}

TEST_CASE("poly_apply built-ins") {
    const auto p = two_questions();
    AlgebraMatrix x = matrix_zero(p, 1);
    x.at(0, 0) = gen_elem(p, "x");

    RationalPolynomial t;
    t.coefficients = {Rat(0), Rat(1)};
    CHECK(matrix_to_string(poly_apply(t, x)) == matrix_to_string(x));

    RationalPolynomial c;
    c.coefficients = {make_rat(5, 2)};
    CHECK(matrix_to_string(poly_apply(c, x)) ==
          matrix_to_string(mat_scale(matrix_identity(p, 1), make_rat(5, 2))));

    RationalPolynomial t2;
    t2.coefficients = {Rat(0), Rat(0), Rat(1)};
    CHECK(matrix_to_string(poly_apply(t2, x)) == matrix_to_string(matrix_identity(p, 1)));
}

TEST_CASE("poly_apply is additive in the polynomial") {
    const auto p = two_questions();
    std::mt19937_64 rng(43);
    AlgebraMatrix x = matrix_zero(p, 2);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) x.at(r, c) = random_element(p, rng, 2);
    RationalPolynomial q1, q2;
    for (int j = 0; j < 4; ++j) {
        q1.coefficients.push_back(make_rat(static_cast<long>(rng() % 7) - 3, 2));
        q2.coefficients.push_back(make_rat(static_cast<long>(rng() % 7) - 3, 3));
    }
    q1.trim();
    q2.trim();
    CHECK(matrix_to_string(poly_apply(poly_add(q1, q2), x)) ==
          matrix_to_string(mat_add(poly_apply(q1, x), poly_apply(q2, x))));
}

TEST_CASE("trace functional aggregates the diagonal with 1/k weight") {
    const auto p = two_questions();
    const auto identity_only = std::map<Word, Rat, WordLess>{{identity_word(), Rat(1)}};
    CHECK(trace_functional(matrix_identity(p, 3)).coeffs == identity_only);

    AlgebraMatrix offdiag = matrix_zero(p, 2);
    offdiag.at(0, 1) = gen_elem(p, "x");
    offdiag.at(1, 0) = gen_elem(p, "y");
    CHECK(trace_functional(offdiag).coeffs.empty());

    // diag(1 + u_x, 1 - u_x) traces to the identity alone.
    AlgebraMatrix m = matrix_zero(p, 2);
    m.at(0, 0) = add(algebra_one(p), gen_elem(p, "x"));
    m.at(1, 1) = add(algebra_one(p), gen_elem(p, "x", Rat(-1)));
    CHECK(trace_functional(m).coeffs == identity_only);
}

TEST_CASE("trace property at the functional level") {
    // The functionals of AB and BA differ wordwise only up to conjugacy, so
    // the equality is asserted through genuine traces: fixed-point traces of
    // permutation actions are conjugation invariant.
    const auto p = two_questions();
    std::mt19937_64 rng(47);
    const WordSet domain = ball(p, 6);
    std::vector<std::map<Word, Rat, WordLess>> traces;
    for (int d : {1, 2, 3, 4}) {
        const PermutationAction action = test::random_action(p, d, rng, false);
        traces.push_back(induced_trace(action, domain));
    }
    for (int i = 0; i < 25; ++i) {
        AlgebraMatrix a = matrix_zero(p, 2);
        AlgebraMatrix b = matrix_zero(p, 2);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                a.at(r, c) = random_element(p, rng, 2);
                b.at(r, c) = random_element(p, rng, 2);
            }
        const auto f_ab = trace_functional(mat_mul(a, b));
        const auto f_ba = trace_functional(mat_mul(b, a));
        for (const auto& tau : traces) CHECK(f_ab.pair(tau) == f_ba.pair(tau));
    }
}

TEST_CASE("functional pairing requires every supported word") {
    const auto p = two_questions();
    LinearFunctionalOnWords f{p, {}};
    f.coeffs[identity_word()] = Rat(1);
    f.coeffs[central_word()] = Rat(-1);
    std::map<Word, Rat, WordLess> tau{{identity_word(), Rat(1)}};
    CHECK_THROWS_AS(f.pair(tau), std::invalid_argument);
    tau[central_word()] = make_rat(1, 3);
    CHECK(f.pair(tau) == make_rat(2, 3));
}

TEST_CASE("element and polynomial serialization round-trip") {
    const auto p = two_questions();
    std::mt19937_64 rng(53);
    CHECK(element_to_string(algebra_zero(p)) == "0");
    CHECK(element_from_string(p, "0").is_zero());
    for (int i = 0; i < 100; ++i) {
        const AlgebraElement e = random_element(p, rng, 3);
        CHECK(element_from_string(p, element_to_string(e)).terms == e.terms);
    }
    for (int i = 0; i < 30; ++i) {
        AlgebraMatrix m = matrix_zero(p, 2);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) m.at(r, c) = random_element(p, rng, 2);
        CHECK(matrix_to_string(matrix_from_string(p, matrix_to_string(m))) ==
              matrix_to_string(m));
    }
    RationalPolynomial q;
    q.coefficients = {make_rat(1, 2), Rat(0), make_rat(-7, 3)};
    CHECK(poly_to_string(q) == "deg 2: 1/2 0/1 -7/3");
    CHECK(poly_from_string(poly_to_string(q)).coefficients == q.coefficients);
}

TEST_CASE("integer coefficient detection") {
    const auto p = two_questions();
    AlgebraMatrix m = matrix_identity(p, 2);
    CHECK(m.has_integer_coefficients());
    m.at(0, 1) = algebra_word(p, generator_word(p, 0, 1), make_rat(1, 2));
    CHECK_FALSE(m.has_integer_coefficients());
}

}  // TEST_SUITE
