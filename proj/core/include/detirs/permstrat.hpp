#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "detirs/algebra.hpp"
#include "detirs/games.hpp"
#include "detirs/group.hpp"
#include "detirs/hierarchy_types.hpp"

namespace detirs {

/// Permutation of {0..d-1} by images.
struct Permutation {
    std::vector<int> images;

    int degree() const { return static_cast<int>(images.size()); }
    int apply(int i) const { return images[static_cast<std::size_t>(i)]; }
    bool is_identity() const;
    bool is_involution() const;
    int fixed_points() const;
    bool operator==(const Permutation&) const = default;
};

Permutation perm_identity(int degree);
Permutation perm_compose(const Permutation& a, const Permutation& b);  // a after b
Permutation perm_inverse(const Permutation& a);
bool perms_commute(const Permutation& a, const Permutation& b);

/// Cycle notation, 1-based: "(1 2)(3 4)"; identity prints as "id".
std::string perm_to_cycles(const Permutation& p);
Permutation perm_from_cycles(int degree, const std::string& text);

/// Degree-d images of the generators u_{x,i} and J, subject to the group
/// relations: every image an involution, same-question images commuting, the
/// image of J commuting with everything.
struct PermutationAction {
    GroupParams params;
    int degree = 0;
    std::vector<Permutation> question_images;  // indexed by question * m + (i-1)
    Permutation central_image;

    const Permutation& generator_image(int question, int answer_index) const;
    Permutation& generator_image(int question, int answer_index);
    /// Image of a word under the action.
    Permutation act(const Word& w) const;
};

PermutationAction trivial_action(const GroupParams& params, int degree);

/// Empty string when all relations hold; otherwise describes the first
/// violated relation.
std::string validate_action(const PermutationAction& action, const GroupParams& params);

/// tau(w) = #fix(act(w)) / degree for every word of ws, exact.
std::map<Word, Rat, WordLess> induced_trace(const PermutationAction& action, const WordSet& ws);

/// Stabilizer local data: for each point, the support {w in B : act(w) fixes
/// the point} with weight 1/d, merged over equal supports.
LocalDistribution local_data(const PermutationAction& action, const WordSet& domain);

/// Game value of the permutation strategy, via the strategy-functional
/// pairing. Requires the image of J to be fixed-point-free.
Rat perm_value(const GameSpec& game, const PermutationAction& action);

/// Same value through the independent route: build the projections as d x d
/// rational matrices, read off p(a,b|x,y) = tr((1-J) E_x^a E_y^b)/d, and sum.
StrategyTable strategy_table(const GameSpec& game, const PermutationAction& action);
Rat perm_value_direct(const GameSpec& game, const PermutationAction& action);

/// Exhaustive enumeration of valid actions of the exact degree, optionally
/// restricted to fixed-point-free J. Deterministic order.
std::vector<PermutationAction> enumerate_actions(const GroupParams& params, int degree,
                                                 bool require_fpf_central,
                                                 std::size_t budget = 5'000'000);

struct BetaResult {
    Rat beta;
    PermutationAction best_action;
    bool exhausted = false;  // true when the exhaustive stage hit the budget
    long evaluations = 0;
};

/// Lower bound by brute force over permutation strategies: exhaustive over
/// small degrees, then seeded local search over involutions commuting with a
/// fixed fixed-point-free J. Deterministic given the seed; best-so-far
/// semantics, monotone in the budget.
BetaResult search_beta(const GameSpec& game, int max_degree, long budget, std::uint64_t seed);

/// (alpha x id_k)(A): the kd x kd integer matrix image of an integer-matrix
/// algebra element under the action.
struct IntegerMatrixImage {
    int size = 0;
    std::vector<Int> entries;  // row-major

    Int& at(int i, int j) { return entries[static_cast<std::size_t>(i) * size + j]; }
    const Int& at(int i, int j) const { return entries[static_cast<std::size_t>(i) * size + j]; }
};

IntegerMatrixImage action_image(const PermutationAction& action, const AlgebraMatrix& a);

/// Characteristic polynomial det(lambda I - M) by Faddeev-LeVerrier over
/// exact integers (every division is exact and checked). Constant term first.
std::vector<Int> char_poly(const IntegerMatrixImage& m);

struct FkResult {
    int nullity = 0;
    Int lowest_nonzero_coeff;       // coefficient of lambda^nullity in char(M^T M)
    Int abs_coeff;                  // |c| >= 1
    int matrix_size = 0;            // kd
    std::vector<Int> char_poly_coeffs;  // constant term first

    /// ln|c| / (kd), certified enclosure midpoint, for display.
    std::string logdet_decimal(int digits = 9) const;
    /// Exact nonnegativity statement: ln|c| >= 0 iff |c| >= 1.
    bool nonnegative() const { return abs_coeff >= 1; }
};

/// The determinant lower-bound witness: builds M = (alpha x id)(A), computes
/// char(M^T M) exactly, locates the nullity r and the coefficient c of
/// lambda^r. |c| is the product of the nonzero eigenvalues; for integer data
/// it is a positive integer, so the normalized log-determinant ln|c|/(kd) is
/// nonnegative. Throws on non-integer coefficients.
FkResult fk_logdet(const PermutationAction& action, const AlgebraMatrix& a);

struct DetCheckReport {
    int samples = 0;
    int passed = 0;
    Int min_abs_coeff;
    std::string first_failure;  // empty when all passed

    bool all_passed() const { return first_failure.empty(); }
};

/// Randomized harness: samples integer matrices (k <= k_max, words from
/// ball(radius), |coeff| <= coeff_bound) and checks |c| >= 1 for each.
DetCheckReport det_check_suite(const PermutationAction& action, int samples, std::uint64_t seed,
                               int k_max = 3, int radius = 2, int coeff_bound = 2);

/// Action file format: "degree d" then one line per generator in cycle
/// notation ("x.1: (1 2)(3 4)", "J: (1 2)"); omitted generators act as the
/// identity. Group parameters come from the accompanying game or matrix file.
PermutationAction parse_action(const GroupParams& params, std::istream& in);
PermutationAction parse_action_file(const GroupParams& params, const std::string& path);
std::string format_action(const PermutationAction& action);

}  // namespace detirs
