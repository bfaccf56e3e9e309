#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace detirs {

using Int = mpz_class;
using Rat = mpq_class;

/// Thrown when a configurable size/iteration budget is exceeded.
/// Budgets signal desk-scale infeasibility; nothing is ever silently truncated.
struct budget_exceeded : std::runtime_error {
    explicit budget_exceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Canonicalized rational from a numerator/denominator pair.
inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat make_rat(long num, long den) { return make_rat(Int(num), Int(den)); }

/// 2^k as a rational, k may be negative.
inline Rat pow2(long k) {
    Int p(1);
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(k < 0 ? -k : k));
    return k >= 0 ? Rat(p) : make_rat(Int(1), p);
}

inline Rat rat_pow(const Rat& base, unsigned e) {
    Rat r(1);
    Rat b = base;
    while (e) {
        if (e & 1u) r *= b;
        b *= b;
        e >>= 1u;
    }
    return r;
}

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

/// Always renders an explicit denominator, e.g. "3/4", "1/1", "-2/5".
inline std::string rat_to_string(const Rat& x) {
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

/// Parses "p/q" or "p"; throws std::invalid_argument on malformed input.
Rat rat_from_string(const std::string& text);

/// Decimal rendering for display only; truncates toward zero after `digits`
/// fractional digits and trims trailing zeros.
std::string rat_to_decimal(const Rat& x, int digits = 9);

/// Display-only conversion (exact values are what the library reports).
inline double rat_to_double(const Rat& x) { return x.get_d(); }

}  // namespace detirs
