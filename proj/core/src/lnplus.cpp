#include "detirs/lnplus.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

namespace detirs {

namespace {

Rat dyadic_round_up(const Rat& x, unsigned bits) {
    Int scaled;
    Int num = x.get_num() << bits;
    mpz_cdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), x.get_den().get_mpz_t());
    return make_rat(scaled, Int(1) << bits);
}

Rat dyadic_round_down(const Rat& x, unsigned bits) {
    Int scaled;
    Int num = x.get_num() << bits;
    mpz_fdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), x.get_den().get_mpz_t());
    return make_rat(scaled, Int(1) << bits);
}

/// Partial sum of atanh: sum_{i<terms} z^{2i+1}/(2i+1).
Rat atanh_partial(const Rat& z, int terms) {
    Rat acc(0);
    Rat power = z;
    const Rat z2 = z * z;
    for (int i = 0; i < terms; ++i) {
        acc += power / Rat(2 * i + 1);
        power *= z2;
    }
    return acc;
}

/// Upper bound for the series tail after `terms` terms at argument z in [0,1).
Rat atanh_tail(const Rat& z, int terms) {
    const Rat z2 = z * z;
    Rat power = rat_pow(z, static_cast<unsigned>(2 * terms + 1));
    return power / (Rat(2 * terms + 1) * (Rat(1) - z2));
}

LnEnclosure atanh_enclosure_scaled(const Rat& z_lo, const Rat& z_hi, int terms) {
    return LnEnclosure{Rat(2) * atanh_partial(z_lo, terms),
                       Rat(2) * (atanh_partial(z_hi, terms) + atanh_tail(z_hi, terms))};
}

int terms_for(const Rat& z_hi, const Rat& tol) {
    int terms = 4;
    while (terms < 20000 && Rat(2) * atanh_tail(z_hi, terms) > tol) terms += 4;
    return terms;
}

unsigned bits_for(const Rat& tol) {
    // Smallest P with 2^-P <= tol / 8, capped to something sane.
    unsigned bits = 4;
    Rat budget = tol / 8;
    Rat step = make_rat(1, 16);
    while (bits < 4096 && step > budget) {
        step /= 2;
        ++bits;
    }
    return bits;
}

LnEnclosure ln2_enclosure(const Rat& tol) {
    const Rat z = make_rat(1, 3);
    return atanh_enclosure_scaled(z, z, terms_for(z, tol));
}

}  // namespace

LnEnclosure ln_enclosure(const Rat& q, const Rat& tol) {
    if (q <= 0) throw std::invalid_argument("ln_enclosure: argument must be positive");
    if (tol <= 0) throw std::invalid_argument("ln_enclosure: tolerance must be positive");
    if (q == 1) return LnEnclosure{Rat(0), Rat(0)};

    // q = 2^k * r, r in [1, 2).
    long k = static_cast<long>(mpz_sizeinbase(q.get_num().get_mpz_t(), 2)) -
             static_cast<long>(mpz_sizeinbase(q.get_den().get_mpz_t(), 2));
    auto scaled = [&q](long e) { return e >= 0 ? Rat(q / pow2(e)) : Rat(q * pow2(-e)); };
    while (scaled(k) >= 2) ++k;
    while (scaled(k) < 1) --k;
    const Rat r = scaled(k);

    const long abs_k = k < 0 ? -k : k;
    const Rat tol_r = abs_k > 0 ? Rat(tol / 2) : tol;
    const Rat tol_2 = abs_k > 0 ? Rat(tol / (2 * Rat(abs_k))) : Rat(1);

    LnEnclosure ln_r{Rat(0), Rat(0)};
    if (r != 1) {
        const Rat z = (r - 1) / (r + 1);
        const unsigned bits = bits_for(tol_r);
        const Rat z_lo = dyadic_round_down(z, bits);
        const Rat z_hi = dyadic_round_up(z, bits);
        ln_r = atanh_enclosure_scaled(z_lo, z_hi, terms_for(z_hi, tol_r / 2));
    }
    if (k == 0) return ln_r;

    const LnEnclosure l2 = ln2_enclosure(tol_2);
    const Rat k_rat(k);
    if (k > 0)
        return LnEnclosure{k_rat * l2.lower + ln_r.lower, k_rat * l2.upper + ln_r.upper};
    return LnEnclosure{k_rat * l2.upper + ln_r.lower, k_rat * l2.lower + ln_r.upper};
}

LnEnclosure f_clipped_eval(int n, const Rat& t, const Rat& tol) {
    if (n < 1) throw std::invalid_argument("f_clipped_eval: n must be positive");
    if (t < 0) throw std::invalid_argument("f_clipped_eval: t must be nonnegative");
    const Rat clip(-n);
    if (t == 0) return LnEnclosure{clip, clip};
    const Rat margin = pow2(-n);
    LnEnclosure ln = ln_enclosure(t, tol * std::min(t, Rat(1)));
    Rat lo = ln.lower / t + margin;
    Rat hi = ln.upper / t + margin;
    return LnEnclosure{std::max(clip, lo), std::max(clip, hi)};
}

std::string DominationReport::text() const {
    std::ostringstream os;
    for (const auto& [node, margin] : node_margins)
        os << "node " << rat_to_string(node) << ": margin " << rat_to_string(margin)
           << (margin >= 0 ? " ok" : " VIOLATED") << "\n";
    if (!node_margins.empty())
        os << "worst margin: " << rat_to_string(worst_margin) << " at node "
           << rat_to_string(worst_node) << "\n";
    os << (passed ? "PASS" : "FAIL: " + failure_reason) << "\n";
    return os.str();
}

namespace {

struct LnCache {
    Rat tol;
    std::map<Rat, LnEnclosure> values;

    const LnEnclosure& get(const Rat& t) {
        auto it = values.find(t);
        if (it == values.end()) it = values.emplace(t, ln_enclosure(t, tol)).first;
        return it->second;
    }
};

/// Upper bound for |g'| on [low, high] ⊂ [0, N].
Rat derivative_bound(const CertifiedUpperPoly& g, const Rat& low, const Rat& high) {
    if (g.bernstein) {
        // g = t p: |g'| <= |p| + t |p'| <= max|v| + N * (d/N) max|dv|.
        const auto& bd = *g.bernstein;
        return bd.max_abs_value + Rat(bd.degree) * bd.max_step;
    }
    (void)low;
    Rat acc(0);
    Rat power(1);  // high^{j-1}
    for (std::size_t j = 1; j < g.poly.coefficients.size(); ++j) {
        acc += Rat(static_cast<long>(j)) * rat_abs(g.poly.coefficients[j]) * power;
        power *= high;
    }
    return acc;
}

/// Upper bound for t * g'(t) on (0, t1].
Rat near_zero_slope_bound(const CertifiedUpperPoly& g, const Rat& t1) {
    if (g.bernstein) {
        const auto& bd = *g.bernstein;
        return t1 * bd.max_abs_value +
               t1 * t1 * Rat(bd.degree) / bd.interval_end * bd.max_step;
    }
    Rat acc(0);
    Rat power = t1;  // t1^j
    for (std::size_t j = 1; j < g.poly.coefficients.size(); ++j) {
        acc += Rat(static_cast<long>(j)) * rat_abs(g.poly.coefficients[j]) * power;
        power *= t1;
    }
    return acc;
}

struct CertifyState {
    LnCache* cache = nullptr;
    std::size_t evals = 0;
    std::size_t budget = 0;
    std::vector<std::pair<Rat, Rat>> deficits;  // (t, amount g must gain at t)

    void record_deficit(const Rat& t, const Rat& amount) {
        if (deficits.size() < 512) deficits.emplace_back(t, amount);
    }
};

Rat phi_lower(const CertifiedUpperPoly& g, const Rat& t, CertifyState& st) {
    ++st.evals;
    Rat margin = g.poly.eval(t) - st.cache->get(t).upper;
    if (margin < 0) st.record_deficit(t, -margin);
    return margin;
}

/// Certifies phi = g - ln >= 0 on [a, b] given certified endpoint margins.
/// Returns false when the refinement budget runs out or a violation is found.
bool certify_cell(const CertifiedUpperPoly& g, const Rat& a, const Rat& b, const Rat& phi_a,
                  const Rat& phi_b, CertifyState& st, std::string& reason) {
    if (phi_a < 0 || phi_b < 0) {
        reason = "violation at node " + rat_to_string(phi_a < 0 ? a : b);
        return false;
    }
    const Rat slope = derivative_bound(g, a, b) + Rat(1) / a;
    if (phi_a + phi_b >= slope * (b - a)) return true;
    if (st.evals >= st.budget) {
        reason = "refinement budget exhausted near " + rat_to_string(a);
        // Record how much lift would close the cell so the repair loop can respond.
        st.record_deficit(a, Rat(slope * (b - a) / 2 - std::min(phi_a, phi_b)));
        return false;
    }
    const Rat mid = (a + b) / 2;
    const Rat phi_m = phi_lower(g, mid, st);
    return certify_cell(g, a, mid, phi_a, phi_m, st, reason) &&
           certify_cell(g, mid, b, phi_m, phi_b, st, reason);
}

DominationReport run_certificate(const CertifiedUpperPoly& g, int grid_size,
                                 std::size_t refine_budget,
                                 std::vector<std::pair<Rat, Rat>>* deficits,
                                 LnCache* shared_cache = nullptr) {
    DominationReport report;
    const Rat N = g.interval_end;
    LnCache local_cache;
    local_cache.tol = pow2(-34);
    CertifyState st;
    st.cache = shared_cache ? shared_cache : &local_cache;
    st.budget = refine_budget;

    // Node 0: ln_+(0) = 0, so the constant coefficient must be >= 0.
    const Rat g0 = g.poly.coefficients.empty() ? Rat(0) : g.poly.coefficients.front();
    report.node_margins.emplace_back(Rat(0), g0);
    if (g0 < 0) {
        report.failure_reason = "violation at node 0/1 (g(0) = " + rat_to_string(g0) + " < 0)";
        report.worst_margin = g0;
        report.worst_node = Rat(0);
        return report;
    }

    bool ok = true;
    std::string reason;

    // Cell touching zero: shrink t1 until phi is provably decreasing on (0, t1],
    // so phi >= phi(t1) there; the skipped segments become ordinary cells.
    Rat t1 = N / grid_size;
    std::vector<std::pair<Rat, Rat>> pending;
    const Rat t1_floor = N / pow2(44);
    while (near_zero_slope_bound(g, t1) >= 1) {
        if (t1 <= t1_floor) {
            ok = false;
            reason = "cannot certify monotonicity on (0, " + rat_to_string(t1) + "]";
            break;
        }
        pending.emplace_back(t1 / 2, t1);
        t1 /= 2;
    }
    Rat phi_t1 = phi_lower(g, t1, st);
    if (ok && phi_t1 < 0) {
        ok = false;
        reason = "violation at node " + rat_to_string(t1);
    }
    for (auto it = pending.rbegin(); ok && it != pending.rend(); ++it) {
        const Rat pa = phi_lower(g, it->first, st);
        const Rat pb = phi_lower(g, it->second, st);
        ok = certify_cell(g, it->first, it->second, pa, pb, st, reason);
    }

    // Reporting grid.
    Rat prev_node = t1;
    Rat prev_phi = phi_t1;
    bool have_worst = false;
    Rat worst_margin(0), worst_node(0);
    for (int i = 1; i <= grid_size; ++i) {
        const Rat node = N * Rat(i) / grid_size;
        if (node < prev_node) continue;
        const Rat phi_node = node == prev_node ? prev_phi : phi_lower(g, node, st);
        report.node_margins.emplace_back(node, phi_node);
        if (!have_worst || phi_node < worst_margin) {
            worst_margin = phi_node;
            worst_node = node;
            have_worst = true;
        }
        if (ok && node != prev_node)
            ok = certify_cell(g, prev_node, node, prev_phi, phi_node, st, reason);
        prev_node = node;
        prev_phi = phi_node;
    }

    report.passed = ok;
    report.failure_reason = ok ? "" : reason;
    report.worst_margin = have_worst ? worst_margin : g0;
    report.worst_node = have_worst ? worst_node : Rat(0);
    if (deficits) *deficits = std::move(st.deficits);
    return report;
}

struct DegreeEstimate {
    Int minimal_degree;
    Rat lipschitz;
};

/// Lipschitz bound for f_{2n} on [0, N] and the Bernstein degree estimate for
/// uniform accuracy 2^{-2n-1} (via |B_d f - f| <= (3/2) L N / sqrt(d)).
DegreeEstimate accuracy_degree_estimate(int n, const Rat& N) {
    const int order = 2 * n;
    const Rat threshold = Rat(-order) - pow2(-order);
    // Certified lower bound for the clip boundary: ln(t)/t < threshold there.
    Rat t_lb = Rat(std::min(Rat(1), N) / 2);
    for (int i = 0; i < 200; ++i) {
        const LnEnclosure ln = ln_enclosure(t_lb, pow2(-20));
        if (ln.upper / t_lb < threshold) break;
        t_lb /= 2;
    }
    const Rat lip =
        dyadic_round_up((Rat(1) - ln_enclosure(t_lb, pow2(-20)).lower) / (t_lb * t_lb), 12);
    const Rat target = pow2(-2 * n - 1);
    const Rat root = Rat(3) * lip * N / (2 * target);
    Int d_min;
    Int num = root.get_num() * root.get_num();
    mpz_cdiv_q(d_min.get_mpz_t(), num.get_mpz_t(),
               Int(root.get_den() * root.get_den()).get_mpz_t());
    return DegreeEstimate{d_min, lip};
}

}  // namespace

namespace {

RationalPolynomial expand_bernstein(const std::vector<Rat>& values, const Rat& N) {
    const int d = static_cast<int>(values.size()) - 1;
    std::vector<Rat> coeff(static_cast<std::size_t>(d) + 1, Rat(0));
    for (int k = 0; k <= d; ++k) {
        if (values[static_cast<std::size_t>(k)] == 0) continue;
        Int binom_dk;
        mpz_bin_uiui(binom_dk.get_mpz_t(), static_cast<unsigned long>(d),
                     static_cast<unsigned long>(k));
        for (int j = k; j <= d; ++j) {
            Int binom_tail;
            mpz_bin_uiui(binom_tail.get_mpz_t(), static_cast<unsigned long>(d - k),
                         static_cast<unsigned long>(j - k));
            Rat term = values[static_cast<std::size_t>(k)] * Rat(binom_dk * binom_tail);
            if ((j - k) % 2 == 1) term = -term;
            coeff[static_cast<std::size_t>(j)] += term / rat_pow(N, static_cast<unsigned>(j));
        }
    }
    RationalPolynomial out;
    out.coefficients = std::move(coeff);
    out.trim();
    return out;
}

/// Smallest multiple of 2^-8 whose square is at least x.
Rat dyadic_sqrt_upper(const Rat& x) {
    if (x <= 0) return Rat(0);
    Int scaled;
    Int num = x.get_num() << 16;
    mpz_cdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), x.get_den().get_mpz_t());
    Int root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    Rat r = make_rat(root, Int(256));
    while (r * r < x) r += make_rat(1, 256);
    return r;
}

struct BuiltPair {
    CertifiedUpperPoly f_part;
    CertifiedUpperPoly g_part;
};

CertifiedUpperPoly assemble_f_part(int n, const Rat& N, const std::vector<Rat>& values,
                                   const Rat& max_lift, bool accuracy_possible,
                                   const LnPolyOptions& opts, const Rat& node_tol,
                                   bool with_accuracy) {
    CertifiedUpperPoly out;
    out.interval_end = N;
    out.level = n;
    out.accuracy_target = pow2(-2 * n - 1);
    out.shift = max_lift;
    out.poly = expand_bernstein(values, N);

    BernsteinData bd;
    bd.degree = static_cast<int>(values.size()) - 1;
    bd.interval_end = N;
    bd.max_abs_value = Rat(0);
    bd.max_step = Rat(0);
    for (std::size_t k = 0; k < values.size(); ++k) {
        bd.max_abs_value = std::max(bd.max_abs_value, rat_abs(values[k]));
        if (k > 0) bd.max_step = std::max(bd.max_step, rat_abs(values[k] - values[k - 1]));
    }
    bd.node_values = values;
    out.bernstein = std::move(bd);

    Rat acc(0);
    if (with_accuracy) {
        for (int i = 0; i <= opts.grid_size; ++i) {
            const Rat node = N * Rat(i) / opts.grid_size;
            const LnEnclosure f = f_clipped_eval(2 * n, node, node_tol);
            const Rat p_val = out.poly.eval(node);
            acc = std::max(acc, std::max(rat_abs(p_val - f.lower), rat_abs(p_val - f.upper)));
        }
    }
    out.accuracy_on_grid = acc;
    out.accuracy_certified = with_accuracy && accuracy_possible && acc <= out.accuracy_target;
    return out;
}

/// Builds the Bernstein layer for f_{2n}, then repairs any domination deficits
/// of g(t) = t p(t) against ln by lifting node values near each deficit. The
/// Bernstein operator is monotone in the node values, so lifted layers still
/// dominate. For n >= 2 the layer is capped nodewise by the level-(n-1) layer
/// built at the same degree: that keeps g_n <= g_{n-1} pointwise, and the
/// repair always converges because lifting everything to the ceiling
/// reproduces the previous level, whose certificate passes.
BuiltPair build_certified(int n, const Rat& interval_end, int degree_cap,
                          const LnPolyOptions& opts, int forced_degree = -1) {
    if (n < 1) throw std::invalid_argument("bernstein_upper: n must be positive");
    if (interval_end <= 0) throw std::invalid_argument("bernstein_upper: N must be positive");
    if (degree_cap < 1) throw std::invalid_argument("bernstein_upper: degree cap must be >= 1");

    const int order = 2 * n;
    const Rat N = interval_end;
    const DegreeEstimate est = accuracy_degree_estimate(n, N);
    if (est.minimal_degree > degree_cap && opts.strict_accuracy) {
        const long rendered = est.minimal_degree.fits_slong_p()
                                  ? est.minimal_degree.get_si()
                                  : std::numeric_limits<long>::max();
        throw accuracy_unreachable(
            "bernstein_upper: degree cap " + std::to_string(degree_cap) +
                " below the estimate " + est.minimal_degree.get_str() +
                " needed for accuracy 2^-" + std::to_string(2 * n + 1),
            rendered);
    }
    const int d = forced_degree > 0 ? forced_degree
                  : est.minimal_degree <= degree_cap
                      ? std::max(1, static_cast<int>(est.minimal_degree.get_si()))
                      : degree_cap;

    // The ceiling sits a fixed slack below the previous level, so the levels
    // of the family stay strictly ordered even across nearby domain choices.
    std::vector<Rat> ceiling;
    const Rat ceiling_slack = pow2(-5);
    if (n >= 2) {
        LnPolyOptions inner = opts;
        inner.strict_accuracy = false;
        const BuiltPair below = build_certified(n - 1, interval_end, degree_cap, inner, d);
        ceiling = below.f_part.bernstein->node_values;
        for (auto& v : ceiling) v -= ceiling_slack;
    }

    const Rat node_tol = opts.node_tol > 0 ? opts.node_tol : pow2(-order - 6);
    std::vector<Rat> base;
    base.reserve(static_cast<std::size_t>(d) + 1);
    for (int k = 0; k <= d; ++k) {
        const Rat node = N * Rat(k) / d;
        base.push_back(dyadic_round_up(f_clipped_eval(order, node, node_tol).upper, order + 10));
    }

    std::vector<Rat> lifts(static_cast<std::size_t>(d) + 1, Rat(0));
    const Rat min_spread = Rat(4) * N / d;
    LnCache cache;
    cache.tol = pow2(-34);
    for (int round = 0; round < 300; ++round) {
        std::vector<Rat> values(base.size());
        Rat max_lift(0);
        for (std::size_t k = 0; k < base.size(); ++k) {
            values[k] = base[k] + lifts[k];
            if (!ceiling.empty() && values[k] > ceiling[k]) values[k] = ceiling[k];
            max_lift = std::max(max_lift, Rat(values[k] - base[k]));
        }
        BuiltPair pair;
        pair.f_part = assemble_f_part(n, N, values, max_lift,
                                      est.minimal_degree <= degree_cap, opts, node_tol,
                                      /*with_accuracy=*/false);
        pair.g_part = pair.f_part;
        pair.g_part.is_g_part = true;
        pair.g_part.poly.coefficients.insert(pair.g_part.poly.coefficients.begin(), Rat(0));
        pair.g_part.poly.trim();

        std::vector<std::pair<Rat, Rat>> deficits;
        pair.g_part.certificate = run_certificate(pair.g_part, opts.grid_size,
                                                  opts.refine_budget, &deficits, &cache);
        if (pair.g_part.certificate.passed) {
            CertifiedUpperPoly finished = assemble_f_part(
                n, N, values, max_lift, est.minimal_degree <= degree_cap, opts, node_tol,
                /*with_accuracy=*/true);
            finished.certificate = pair.g_part.certificate;
            pair.g_part.accuracy_on_grid = finished.accuracy_on_grid;
            pair.g_part.accuracy_certified = finished.accuracy_certified;
            pair.f_part = std::move(finished);
            return pair;
        }
        if (opts.strict_accuracy)
            throw std::logic_error("g_poly: domination certificate failed in strict mode: " +
                                   pair.g_part.certificate.failure_reason);
        if (deficits.empty())
            throw std::logic_error("g_poly: certificate failed without a measurable deficit: " +
                                   pair.g_part.certificate.failure_reason);

        // Capped by the ceiling, overshooting is harmless; lift hard and widen
        // the window every round so stalls cannot happen.
        std::vector<Rat> increment(lifts.size(), Rat(0));
        const Rat widen = Rat(1) + Rat(round) / 4;
        for (const auto& [t, amount] : deficits) {
            const Rat floor_t = std::max(t, Rat(N / (4 * Rat(d))));
            const Rat need = dyadic_round_up(Rat(4) * amount / floor_t, order + 10);
            Rat spread = dyadic_sqrt_upper(Rat(t * (N - t) / d)) * 3;
            spread = std::max(Rat(spread * widen), Rat(min_spread * widen));
            for (int k = 0; k <= d; ++k) {
                const Rat node = N * Rat(k) / d;
                if (rat_abs(node - t) <= spread)
                    increment[static_cast<std::size_t>(k)] =
                        std::max(increment[static_cast<std::size_t>(k)], need);
            }
        }
        for (std::size_t k = 0; k < lifts.size(); ++k) lifts[k] += increment[k];
    }
    throw std::logic_error("g_poly: domination repair did not converge");
}

}  // namespace

RationalPolynomial bernstein_polynomial(const std::vector<Rat>& values,
                                        const Rat& interval_end) {
    if (values.size() < 2) throw std::invalid_argument("bernstein_polynomial: need degree >= 1");
    if (interval_end <= 0)
        throw std::invalid_argument("bernstein_polynomial: interval end must be positive");
    return expand_bernstein(values, interval_end);
}

CertifiedUpperPoly bernstein_upper(int n, const Rat& interval_end, int degree_cap,
                                   const LnPolyOptions& opts) {
    return build_certified(n, interval_end, degree_cap, opts).f_part;
}

CertifiedUpperPoly g_poly(int n, const Rat& interval_end, int degree_cap,
                          const LnPolyOptions& opts) {
    return build_certified(n, interval_end, degree_cap, opts).g_part;
}

DominationReport check_domination(const CertifiedUpperPoly& g, int grid_size,
                                  std::size_t refine_budget) {
    if (grid_size < 2) throw std::invalid_argument("check_domination: grid too small");
    return run_certificate(g, grid_size, refine_budget, nullptr);
}

bool dominates_at_shared_nodes(const CertifiedUpperPoly& a, const CertifiedUpperPoly& b,
                               int count) {
    const Rat limit = std::min(a.interval_end, b.interval_end);
    for (int i = 0; i <= count; ++i) {
        const Rat t = limit * Rat(i) / count;
        if (a.poly.eval(t) < b.poly.eval(t)) return false;
    }
    return true;
}

CertifiedUpperPoly unchecked_poly(RationalPolynomial poly, const Rat& interval_end, int level) {
    CertifiedUpperPoly g;
    g.poly = std::move(poly);
    g.interval_end = interval_end;
    g.level = level;
    g.is_g_part = true;
    return g;
}

std::string certificate_report(const CertifiedUpperPoly& g) {
    std::ostringstream os;
    os << "# domination certificate: n=" << g.level << " N=" << rat_to_string(g.interval_end)
       << " degree=" << g.poly.degree() << " shift=" << rat_to_string(g.shift) << "\n";
    os << "# accuracy target " << rat_to_string(g.accuracy_target) << ", on grid "
       << rat_to_string(g.accuracy_on_grid)
       << (g.accuracy_certified ? " (certified)" : " (relaxed)") << "\n";
    os << g.certificate.text();
    return os.str();
}

}  // namespace detirs
