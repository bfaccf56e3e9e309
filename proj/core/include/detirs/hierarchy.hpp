#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "detirs/games.hpp"
#include "detirs/group.hpp"
#include "detirs/hierarchy_types.hpp"
#include "detirs/lnplus.hpp"
#include "detirs/lp.hpp"

namespace detirs {

enum class HierarchyMode { subset, trace };

struct HierarchyOptions {
    HierarchyMode mode = HierarchyMode::trace;
    bool cumulative = true;
    bool include_det = true;
    int deg_cap = 1;               // Bernstein degree cap for the g polynomials
    int ball_radius_start = -1;    // -1: smallest radius covering the strategy support
    std::size_t matrix_budget = 400;      // distinct A*A forms per level
    std::size_t entry_budget = 4096;      // candidate entries per level
    std::size_t support_budget = 250000;  // admissible supports (subset mode)
    std::size_t wordset_budget = 250000;  // product-closure size cap
    long lp_iteration_budget = 2'000'000;
    int certificate_grid = 64;
    int workers = 1;
};

/// Linear constraint over word variables of a fixed domain, tagged by origin.
struct TauConstraint {
    std::vector<std::pair<int, Rat>> terms;  // (word index in domain, coefficient)
    Relation rel = Relation::ge;
    Rat rhs;
    std::string tag;
};

struct ConstraintSet {
    std::vector<TauConstraint> rows;
};

/// Pushforward of subset-weights under intersection with B. Requires B to be
/// a subset of the distribution's domain.
LocalDistribution restrict_distribution(const LocalDistribution& dist, const WordSet& b);

/// tau_pi(w) = total weight of supports containing w, for each domain word.
std::map<Word, Rat, WordLess> induced_trace(const LocalDistribution& dist);

/// All partial subgroups of the domain, in canonical order. Throws
/// budget_exceeded (reporting the count reached) past the budget.
std::vector<std::vector<int>> enumerate_supports(const WordSet& domain, std::size_t budget);

/// The local-IRS polytope stand-in over a single word set: inverse symmetry,
/// pointwise conjugation by generators, and superadditivity, as word-level
/// rows. Support admissibility and the windowed marginal equalities live in
/// the subset-mode LP assembly.
ConstraintSet irs_local_constraints(const WordSet& domain);

/// One inequality per enumerated A in M_k(Z[B]) (k <= level, per-entry l1
/// norm of coefficients < level): pairing of trace_functional(g(A*A)) with
/// tau >= 0, deduplicated by the canonical form of A*A, budgeted in
/// deterministic priority order. Rows are indexed into `domain`, which must
/// contain product_closure(B, 2 deg g).
struct DetConstraints {
    ConstraintSet rows;                                // nontrivial rows only
    std::vector<LinearFunctionalOnWords> functionals;  // all enumerated, for re-verification
    std::size_t enumerated = 0;
    bool budget_hit = false;
};

DetConstraints det_constraints(int level, const WordSet& b, const CertifiedUpperPoly& g,
                               const WordSet& domain, std::size_t matrix_budget,
                               std::size_t entry_budget, int workers = 1);

/// p(a,b|x,y) >= 0 for every answer pair over pairs with q > 0, plus
/// tau(J) = 0. Throws std::invalid_argument when the needed words are not all
/// inside the domain.
ConstraintSet strategy_constraints(const GameSpec& game, const WordSet& domain);

/// Fully assembled level: the word domain, the tau-level rows, the subset-mode
/// support list and window bases, and the LP as handed to the solver.
struct HierarchyLevel {
    int level = 0;
    HierarchyMode mode = HierarchyMode::trace;
    WordSet b;                        // B_n
    std::vector<WordSet> window_bases;  // B_m for the levels folded in
    std::optional<CertifiedUpperPoly> g;
    WordSet domain;                   // B~_n
    ConstraintSet tau_rows;
    std::vector<LinearFunctionalOnWords> det_functionals;
    std::vector<std::vector<int>> supports;  // subset mode only
    LinearProgram lp;
    std::vector<int> var_of_word;     // trace mode: domain index -> lp variable
    std::vector<std::string> notes;
};

HierarchyLevel build_level(const GameSpec& game, int level, const HierarchyOptions& opts);

struct AlphaResult {
    Rat alpha;
    HierarchyLevel level;
    LpOutcome outcome;
    std::map<Word, Rat, WordLess> tau_witness;
    std::optional<LocalDistribution> dist_witness;  // subset mode
};

/// Thrown when a bound fails its post-solve exact re-verification.
struct verification_error : std::runtime_error {
    explicit verification_error(const std::string& what) : std::runtime_error(what) {}
};

/// The level-n upper bound: assembles the constraints, solves the exact LP,
/// re-verifies the witness and every determinant functional, and returns the
/// optimum with its certificate.
AlphaResult alpha(const GameSpec& game, int level, const HierarchyOptions& opts);

/// Exact feasibility of a trace assignment against the level's constraints.
/// Returns the first violation, or nullopt when feasible.
std::optional<std::string> check_trace_feasibility(const HierarchyLevel& level,
                                                   const std::map<Word, Rat, WordLess>& tau);

/// Exact feasibility of subset-mode local data: well-formedness, admissibility,
/// windowed conjugation invariance for each base, and the tau-level rows.
std::optional<std::string> check_local_data_feasibility(const HierarchyLevel& level,
                                                        const LocalDistribution& dist);

}  // namespace detirs
