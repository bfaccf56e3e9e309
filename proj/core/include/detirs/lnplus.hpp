#pragma once

#include <optional>
#include <string>
#include <vector>

#include "detirs/algebra.hpp"
#include "detirs/rational.hpp"

namespace detirs {

/// Certified interval: lower <= ln(argument) <= upper.
struct LnEnclosure {
    Rat lower;
    Rat upper;

    Rat width() const { return upper - lower; }
};

/// Certified enclosure of ln(q) for q > 0, width <= tol. Argument reduction
/// q = 2^k * r with r in [1,2), then the atanh series with an explicit tail
/// bound, all in directed rational arithmetic.
LnEnclosure ln_enclosure(const Rat& q, const Rat& tol);

/// Certified enclosure of f_n(t) = max(-n, ln(t)/t + 2^-n); at t = 0 the clip
/// value [-n, -n] (the limit from the right).
LnEnclosure f_clipped_eval(int n, const Rat& t, const Rat& tol);

/// Bernstein metadata kept alongside a constructed polynomial. It yields the
/// uniform bounds |p| <= max|v_k| and |p'| <= (d/N) max|v_{k+1}-v_k| used by
/// the domination certificates; coefficient sums are hopeless at these degrees.
struct BernsteinData {
    int degree = 0;
    Rat interval_end;
    std::vector<Rat> node_values;  // upper-rounded f values, shift included
    Rat max_abs_value;
    Rat max_step;
};

/// Outcome of a domination check: certified margins of g - ln at the reporting
/// grid nodes, with adaptive refinement between nodes.
struct DominationReport {
    bool passed = false;
    std::vector<std::pair<Rat, Rat>> node_margins;  // (node, certified margin)
    Rat worst_margin;
    Rat worst_node;
    std::string failure_reason;  // empty on success; names the violating node otherwise

    std::string text() const;
};

/// A rational polynomial together with the data certifying what it dominates.
/// For the f-part, poly(t) >= ln(t)/t on (0, N]; for the g-part (is_g_part),
/// poly(t) >= ln_+(t) on [0, N] with poly(0) = 0.
struct CertifiedUpperPoly {
    RationalPolynomial poly;
    Rat interval_end;  // N
    int level = 0;     // n
    bool is_g_part = false;
    std::optional<BernsteinData> bernstein;
    Rat shift;                  // upward shift applied to the node layer
    Rat accuracy_target;        // 2^{-2n-1}
    Rat accuracy_on_grid;       // certified bound for |p - f_2n| at the grid nodes
    bool accuracy_certified = false;
    DominationReport certificate;
};

struct LnPolyOptions {
    int grid_size = 64;         // reporting grid for certificates
    Rat node_tol;               // enclosure width for node values; default set per level
    bool strict_accuracy = false;
    std::size_t refine_budget = 200000;  // adaptive subdivision budget
};

/// Thrown in strict mode when the degree cap cannot reach the 2^{-2n-1}
/// accuracy target; carries a minimal feasible degree estimate.
struct accuracy_unreachable : std::runtime_error {
    long minimal_degree_estimate;
    accuracy_unreachable(const std::string& what, long estimate)
        : std::runtime_error(what), minimal_degree_estimate(estimate) {}
};

/// Monomial form of the Bernstein sum over [0, N] with the given node values:
/// sum_k values[k] C(d,k) (t/N)^k (1 - t/N)^{d-k} with d = values.size() - 1.
/// Reproduces constants and affine node data exactly.
RationalPolynomial bernstein_polynomial(const std::vector<Rat>& values, const Rat& interval_end);

/// Bernstein polynomial of f_{2n} on [0, N] at degree min(cap, required),
/// node values upper-rounded so the one-sided bounds survive rounding.
/// In strict mode, throws accuracy_unreachable when the cap is below the
/// Lipschitz degree estimate for the 2^{-2n-1} target.
CertifiedUpperPoly bernstein_upper(int n, const Rat& interval_end, int degree_cap,
                                   const LnPolyOptions& opts = {});

/// g(t) = t * p(t) with p from bernstein_upper, certified g >= ln_+ on [0, N]
/// by an adaptive grid certificate; when the certificate finds a deficit the
/// node layer is shifted up by a certified amount and re-checked (the shift
/// keeps g(0) = 0). The returned certificate is the passing one.
CertifiedUpperPoly g_poly(int n, const Rat& interval_end, int degree_cap,
                          const LnPolyOptions& opts = {});

/// Verifies poly >= ln_+ on [0, N] at a grid of the given size, with an
/// adaptive derivative-bound margin between nodes and a monotonicity argument
/// on the cell touching zero. Does not modify g.
DominationReport check_domination(const CertifiedUpperPoly& g, int grid_size,
                                  std::size_t refine_budget = 200000);

/// True when a(t) >= b(t) at all `count`+1 equispaced nodes of
/// [0, min(Na, Nb)]. Exact comparisons.
bool dominates_at_shared_nodes(const CertifiedUpperPoly& a, const CertifiedUpperPoly& b,
                               int count);

/// Wraps an arbitrary polynomial for check_domination (tests, external input).
CertifiedUpperPoly unchecked_poly(RationalPolynomial poly, const Rat& interval_end, int level);

std::string certificate_report(const CertifiedUpperPoly& g);

}  // namespace detirs
