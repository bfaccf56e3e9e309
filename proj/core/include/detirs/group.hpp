#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "detirs/rational.hpp"

namespace detirs {

/// Parameters of the group *_Q Z_2^m x Z_2: an ordered question set Q and the
/// answer width m. The generators are u_{x,i} (x in Q, 1 <= i <= m), each an
/// involution, with same-question generators commuting, plus the central
/// involution J.
struct GroupParams {
    std::vector<std::string> questions;
    int answer_width = 1;

    int question_count() const { return static_cast<int>(questions.size()); }
    /// Index of a question label, -1 if absent.
    int question_index(const std::string& label) const;
    bool operator==(const GroupParams&) const = default;
};

/// Throws std::invalid_argument unless |Q| >= 1, 1 <= m <= 31, and all labels
/// are distinct and free of the characters used by the word serialization.
void validate_params(const GroupParams& params);

/// One syllable of a normal-form word: a question and a nonempty subset of
/// {1..m} encoded as a bitmask (bit i-1 = answer index i). The subset bitmask
/// describes which u_{x,i} occur; they commute, so the subset is all there is.
struct Block {
    int question = 0;
    std::uint32_t bits = 0;

    friend auto operator<=>(const Block&, const Block&) = default;
};

/// Normal-form element of *_Q Z_2^m x Z_2: alternating blocks (adjacent blocks
/// carry distinct questions, no block is empty) plus the central J flag.
/// The identity is {no blocks, j_flag = false}.
struct Word {
    std::vector<Block> blocks;
    bool j_flag = false;

    bool is_identity() const { return blocks.empty() && !j_flag; }
    /// Number of generators in the reduced expression: sum of subset sizes
    /// plus the J flag.
    int generator_length() const;

    bool operator==(const Word&) const = default;
};

/// Canonical total order: generator length first, then the block sequence
/// lexicographically by (question index, subset bitmask), then the J flag.
/// This is the deterministic enumeration order used everywhere.
bool word_less(const Word& a, const Word& b);

struct WordLess {
    bool operator()(const Word& a, const Word& b) const { return word_less(a, b); }
};

struct WordHash {
    std::size_t operator()(const Word& w) const;
};

/// Throws std::invalid_argument if w is not a normal form over params
/// (question index range, bits within the answer width, nonempty blocks,
/// adjacent blocks with distinct questions).
void validate_word(const GroupParams& params, const Word& w);

Word identity_word();
/// The generator u_{x,i}; question by index, i in [1, m].
Word generator_word(const GroupParams& params, int question, int answer_index);
/// The central generator J.
Word central_word();

/// Group law in normal form: concatenation with cascading merges (adjacent
/// same-question blocks combine by symmetric difference; empty results are
/// deleted and merging cascades); J flags add mod 2.
Word multiply(const GroupParams& params, const Word& a, const Word& b);

/// Blocks reversed, subsets unchanged, J flag unchanged.
Word inverse(const Word& w);

/// Normal form of g * w * g^-1.
Word conjugate(const GroupParams& params, const Word& w, const Word& g);

std::string word_to_string(const GroupParams& params, const Word& w);
Word word_from_string(const GroupParams& params, const std::string& text);

/// A finite symmetric set of words containing the identity, kept sorted in
/// canonical order for deterministic indexing.
struct WordSet {
    GroupParams params;
    std::vector<Word> elements;

    int size() const { return static_cast<int>(elements.size()); }
    bool contains(const Word& w) const;
    /// Position in canonical order, -1 if absent.
    int index_of(const Word& w) const;
    bool is_subset_of(const WordSet& other) const;
};

/// Builds the symmetric closure of the given words plus the identity.
WordSet make_wordset(const GroupParams& params, std::vector<Word> words);

/// Word-metric ball of the given radius over the generators {u_{x,i}} ∪ {J}
/// (J omitted when with_central is false, covering the plain free-product
/// family). Deterministic enumeration order.
WordSet ball(const GroupParams& params, int radius, bool with_central = true);

/// All normal forms of products of at most `depth` elements of B (depth >= 1);
/// contains B, symmetric. Throws budget_exceeded when the result would grow
/// beyond size_budget.
WordSet product_closure(const WordSet& base, int depth, std::size_t size_budget = 2'000'000);

}  // namespace detirs
