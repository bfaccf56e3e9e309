#pragma once

#include <map>
#include <string>
#include <vector>

#include "detirs/group.hpp"
#include "detirs/rational.hpp"

namespace detirs {

/// Finite rational combination of words, stored sparsely with canonical word
/// keys and no zero coefficients.
struct AlgebraElement {
    GroupParams params;
    std::map<Word, Rat, WordLess> terms;

    bool is_zero() const { return terms.empty(); }
    Rat coefficient(const Word& w) const;
    /// True when every coefficient is an integer.
    bool has_integer_coefficients() const;
};

AlgebraElement algebra_zero(const GroupParams& params);
AlgebraElement algebra_one(const GroupParams& params);
AlgebraElement algebra_word(const GroupParams& params, const Word& w, const Rat& coeff = Rat(1));

AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement sub(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement scale(const AlgebraElement& a, const Rat& c);

/// Convolution product (bilinear extension of the word multiplication).
/// Throws budget_exceeded when the result would have more than term_budget terms.
AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b,
                   std::size_t term_budget = 4'000'000);

/// The star of a single element: rational conjugation is trivial, words invert.
AlgebraElement star(const AlgebraElement& a);

std::string element_to_string(const AlgebraElement& a);
AlgebraElement element_from_string(const GroupParams& params, const std::string& text);

/// Square matrix over the group algebra.
struct AlgebraMatrix {
    int k = 0;
    GroupParams params;
    std::vector<AlgebraElement> entries;  // row-major, k*k

    AlgebraElement& at(int i, int j) { return entries[static_cast<std::size_t>(i) * k + j]; }
    const AlgebraElement& at(int i, int j) const {
        return entries[static_cast<std::size_t>(i) * k + j];
    }
    bool has_integer_coefficients() const;
};

AlgebraMatrix matrix_zero(const GroupParams& params, int k);
AlgebraMatrix matrix_identity(const GroupParams& params, int k);

AlgebraMatrix mat_add(const AlgebraMatrix& a, const AlgebraMatrix& b);
AlgebraMatrix mat_scale(const AlgebraMatrix& a, const Rat& c);
AlgebraMatrix mat_mul(const AlgebraMatrix& a, const AlgebraMatrix& b,
                      std::size_t term_budget = 4'000'000);

/// (A*)_{ij} = star(A_{ji}); an involution and an anti-homomorphism.
AlgebraMatrix adjoint(const AlgebraMatrix& a);

std::string matrix_to_string(const AlgebraMatrix& a);
AlgebraMatrix matrix_from_string(const GroupParams& params, const std::string& text);

/// Polynomial with exact rational coefficients, constant term first, trailing
/// zeros trimmed.
struct RationalPolynomial {
    std::vector<Rat> coefficients;

    int degree() const { return static_cast<int>(coefficients.size()) - 1; }
    Rat eval(const Rat& t) const;
    RationalPolynomial derivative() const;
    void trim();
};

RationalPolynomial poly_add(const RationalPolynomial& p, const RationalPolynomial& q);
RationalPolynomial poly_scale(const RationalPolynomial& p, const Rat& c);

std::string poly_to_string(const RationalPolynomial& p);
RationalPolynomial poly_from_string(const std::string& text);

/// Sum_j p_j X^j with X^0 the identity matrix; powers are computed once and
/// reused. Exact.
AlgebraMatrix poly_apply(const RationalPolynomial& p, const AlgebraMatrix& x,
                         std::size_t term_budget = 4'000'000);

/// Word-coefficient functional: tau |-> Sum_w coeffs[w] * tau(w).
struct LinearFunctionalOnWords {
    GroupParams params;
    std::map<Word, Rat, WordLess> coeffs;

    std::vector<Word> support() const;
    /// Exact pairing against a word-indexed assignment; throws
    /// std::invalid_argument naming the first word missing from tau.
    Rat pair(const std::map<Word, Rat, WordLess>& tau) const;
};

/// Word-level expansion of (tau ⊗ tr_k)(M): coefficients c_w with
/// (tau ⊗ tr_k)(M) = Sum_w c_w tau(w), i.e. c_w = (1/k) Sum_i coeff of w in M_ii.
LinearFunctionalOnWords trace_functional(const AlgebraMatrix& m);

}  // namespace detirs
