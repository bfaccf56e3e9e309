#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "detirs/algebra.hpp"
#include "detirs/group.hpp"

namespace detirs {

/// A synchronous non-local game: question set and answer width (as group
/// parameters), a question-pair distribution, and a total decider table.
struct GameSpec {
    GroupParams params;
    /// q(x, y) by question indices; omitted pairs have probability zero.
    std::map<std::pair<int, int>, Rat> q_dist;
    /// Accept table indexed by (x, y, a, b); total on |Q|^2 * 4^m inputs.
    std::vector<std::uint8_t> accept_table;

    std::uint32_t answer_count() const { return 1u << params.answer_width; }
    Rat q(int x, int y) const;
    bool accepts(int x, int y, std::uint32_t a, std::uint32_t b) const;
    void set_accept(int x, int y, std::uint32_t a, std::uint32_t b, bool value);
};

/// Validated construction; checks q >= 0 and sum q == 1 exactly.
GameSpec make_game(GroupParams params, std::map<std::pair<int, int>, Rat> q_dist,
                   std::vector<std::uint8_t> accept_table);

GameSpec all_accepting_game(const GroupParams& params);
GameSpec all_rejecting_game(const GroupParams& params);

/// Conditional-probability table p(a,b|x,y) of a concrete strategy.
struct StrategyTable {
    GroupParams params;
    std::vector<Rat> p;  // indexed like the accept table

    Rat at(int x, int y, std::uint32_t a, std::uint32_t b) const;
    Rat& at(int x, int y, std::uint32_t a, std::uint32_t b);
};

StrategyTable make_strategy_table(const GroupParams& params);
/// Checks entries >= 0 and, for every pair with q(x,y) > 0, sum_{a,b} p = 1.
/// Returns an explanation of the first violation, empty string when valid.
std::string validate_strategy_table(const GameSpec& game, const StrategyTable& table);

/// Winning probability sum q(x,y) * D(a,b|x,y) * p(a,b|x,y).
Rat table_value(const GameSpec& game, const StrategyTable& table);

/// Spectral projection e_x^a = prod_i (1 + (-1)^{a_i} U_{x,i}) / 2, expanded
/// into its 2^m word terms.
AlgebraElement expand_projection(const GroupParams& params, int question, std::uint32_t answer);

/// Word expansion of p(a,b|x,y) = tau((1-J) e_x^a e_y^b).
LinearFunctionalOnWords answer_probability_functional(const GroupParams& params, int x, int y,
                                                      std::uint32_t a, std::uint32_t b);

/// Word coefficients c_w with Val(G, tau) = sum_w c_w tau(w): the expansion of
/// sum_{x,y} q(x,y) sum_{D(a,b|x,y)=1} (1-J) e_x^a e_y^b.
LinearFunctionalOnWords strategy_functional(const GameSpec& game);

/// Support of the strategy functional plus the identity, symmetrically closed.
WordSet support_set(const GameSpec& game);

/// All words appearing in any p(a,b|x,y) expansion over pairs with q > 0 —
/// the set that must be contained in B for the strategy constraints to be
/// expressible. Always a superset of support_set's words.
WordSet strategy_support(const GameSpec& game);

/// Exact pairing of the strategy functional against tau. Every word in the
/// functional's support must be present in tau; there is no implicit zero.
Rat value(const GameSpec& game, const std::map<Word, Rat, WordLess>& tau);

/// Best deterministic strategy: max over f: Q -> {0,1}^m of
/// sum q(x,y) D(f(x), f(y) | x, y). Throws budget_exceeded when (2^m)^|Q|
/// exceeds the budget.
Rat classical_value_bruteforce(const GameSpec& game, std::size_t budget = 1u << 22);

/// Little-endian bit strings: character at position i-1 is answer bit i.
std::string format_answer_bits(const GroupParams& params, std::uint32_t a);
std::uint32_t parse_answer_bits(const GroupParams& params, const std::string& text);

/// Game file format:
///   questions: x y
///   bits: 1
///   q: x y 1/4
///   accept: x y 0 1
/// Omitted q pairs are zero, unlisted answer tuples are rejected, '#' starts a
/// comment. The parser rejects non-normalized q.
GameSpec parse_game(std::istream& in);
GameSpec parse_game_file(const std::string& path);
std::string format_game(const GameSpec& game);

}  // namespace detirs
