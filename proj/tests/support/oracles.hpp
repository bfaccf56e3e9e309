#pragma once

// Test-only oracles, independent of the library code paths they check.

#include <cstdint>
#include <random>
#include <vector>

#include "detirs/algebra.hpp"
#include "detirs/games.hpp"
#include "detirs/group.hpp"
#include "detirs/lp.hpp"
#include "detirs/permstrat.hpp"

namespace detirs::test {

/// A single generator: (question, answer index) or the central J.
struct Gen {
    bool central = false;
    int question = 0;
    int index = 1;
};

/// Word as an explicit generator string.
std::vector<Gen> generator_string(const Word& w);

/// Normal form by repeated local rewriting of a generator string: swap
/// same-question generators toward each other, cancel equal neighbours, pull
/// J to the end. Quadratic and dumb on purpose.
Word reduce_string(const GroupParams& params, std::vector<Gen> gens);

/// Product by concatenating generator strings and reducing.
Word word_mult_oracle(const GroupParams& params, const Word& a, const Word& b);

/// Ball by enumerating all generator strings of length <= radius.
std::vector<Word> ball_oracle(const GroupParams& params, int radius);

/// Convolution product over the string-reduction oracle.
AlgebraElement convolution_oracle(const AlgebraElement& a, const AlgebraElement& b);

/// Schoolbook matrix product over the convolution oracle.
AlgebraMatrix mat_mul_oracle(const AlgebraMatrix& a, const AlgebraMatrix& b);

/// Certified ln enclosure via a different route: reduction to [2/3, 4/3) and
/// the alternating Mercator series with its tail bound.
struct LnInterval {
    Rat lower, upper;
};
LnInterval ln_oracle(const Rat& q, int terms);

/// Exact LP optimum by enumerating candidate vertices (all maximal tight
/// subsets); valid for LPs whose variables are fully boxed.
struct VertexEnumResult {
    bool feasible = false;
    Rat optimum;
    std::vector<Rat> argmax;
};
VertexEnumResult vertex_enum_oracle(const LinearProgram& lp);

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations (doubles).
std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> m);

/// Seeded random normal-form word with at most max_syllables blocks.
Word random_word(const GroupParams& params, std::mt19937_64& rng, int max_syllables);

/// Seeded random game: every pair gets a rational weight, random decider.
GameSpec random_game(std::mt19937_64& rng, int questions, int bits);

/// Seeded random valid action (rejection-sampled involutions).
PermutationAction random_action(const GroupParams& params, int degree, std::mt19937_64& rng,
                                bool fpf_central);

/// Seeded random boxed LP for the solver/oracle comparison.
LinearProgram random_boxed_lp(std::mt19937_64& rng, int max_vars, int max_rows);

/// The test corpus: two-question all-accepting / all-rejecting games, the
/// two-question consistency game (equal answers on equal questions, distinct
/// otherwise), and the triangle two-colouring game.
GameSpec corpus_all_accepting();
GameSpec corpus_all_rejecting();
GameSpec corpus_consistency();
GameSpec corpus_triangle();

}  // namespace detirs::test
