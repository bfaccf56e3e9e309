#include "detirs/permstrat.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "detirs/lnplus.hpp"

namespace detirs {

bool Permutation::is_identity() const {
    for (int i = 0; i < degree(); ++i)
        if (images[static_cast<std::size_t>(i)] != i) return false;
    return true;
}

bool Permutation::is_involution() const {
    for (int i = 0; i < degree(); ++i) {
        const int j = images[static_cast<std::size_t>(i)];
        if (j < 0 || j >= degree() || images[static_cast<std::size_t>(j)] != i) return false;
    }
    return true;
}

int Permutation::fixed_points() const {
    int count = 0;
    for (int i = 0; i < degree(); ++i)
        if (images[static_cast<std::size_t>(i)] == i) ++count;
    return count;
}

Permutation perm_identity(int degree) {
    Permutation p;
    p.images.resize(static_cast<std::size_t>(degree));
    std::iota(p.images.begin(), p.images.end(), 0);
    return p;
}

Permutation perm_compose(const Permutation& a, const Permutation& b) {
    if (a.degree() != b.degree()) throw std::invalid_argument("perm_compose: degree mismatch");
    Permutation out;
    out.images.resize(a.images.size());
    for (int i = 0; i < a.degree(); ++i) out.images[static_cast<std::size_t>(i)] = a.apply(b.apply(i));
    return out;
}

Permutation perm_inverse(const Permutation& a) {
    Permutation out;
    out.images.resize(a.images.size());
    for (int i = 0; i < a.degree(); ++i) out.images[static_cast<std::size_t>(a.apply(i))] = i;
    return out;
}

bool perms_commute(const Permutation& a, const Permutation& b) {
    for (int i = 0; i < a.degree(); ++i)
        if (a.apply(b.apply(i)) != b.apply(a.apply(i))) return false;
    return true;
}

std::string perm_to_cycles(const Permutation& p) {
    std::vector<bool> seen(p.images.size(), false);
    std::ostringstream os;
    bool any = false;
    for (int i = 0; i < p.degree(); ++i) {
        if (seen[static_cast<std::size_t>(i)] || p.apply(i) == i) continue;
        os << '(';
        int j = i;
        bool first = true;
        while (!seen[static_cast<std::size_t>(j)]) {
            seen[static_cast<std::size_t>(j)] = true;
            if (!first) os << ' ';
            os << (j + 1);
            first = false;
            j = p.apply(j);
        }
        os << ')';
        any = true;
    }
    return any ? os.str() : "id";
}

Permutation perm_from_cycles(int degree, const std::string& text) {
    Permutation p = perm_identity(degree);
    const std::string& body = text;
    std::size_t pos = 0;
    auto skip_ws = [&]() {
        while (pos < body.size() && std::isspace(static_cast<unsigned char>(body[pos]))) ++pos;
    };
    skip_ws();
    if (body.substr(pos) == "id" || body.substr(pos) == "e" || body.substr(pos) == "()" ||
        pos >= body.size())
        return p;
    while (pos < body.size()) {
        skip_ws();
        if (pos >= body.size()) break;
        if (body[pos] != '(')
            throw std::invalid_argument("permutation parse: expected '(' in '" + text + "'");
        ++pos;
        std::vector<int> cycle;
        while (true) {
            skip_ws();
            if (pos >= body.size())
                throw std::invalid_argument("permutation parse: unterminated cycle in '" + text + "'");
            if (body[pos] == ')') {
                ++pos;
                break;
            }
            std::size_t end = pos;
            while (end < body.size() && std::isdigit(static_cast<unsigned char>(body[end]))) ++end;
            if (end == pos)
                throw std::invalid_argument("permutation parse: expected point in '" + text + "'");
            const int point = std::stoi(body.substr(pos, end - pos));
            if (point < 1 || point > degree)
                throw std::invalid_argument("permutation parse: point out of range in '" + text + "'");
            cycle.push_back(point - 1);
            pos = end;
        }
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            const int from = cycle[i];
            const int to = cycle[(i + 1) % cycle.size()];
            p.images[static_cast<std::size_t>(from)] = to;
        }
    }
    // Reject overlapping cycles that silently overwrote an image.
    std::vector<int> check(p.images.begin(), p.images.end());
    std::sort(check.begin(), check.end());
    for (int i = 0; i < degree; ++i)
        if (check[static_cast<std::size_t>(i)] != i)
            throw std::invalid_argument("permutation parse: not a bijection in '" + text + "'");
    return p;
}

const Permutation& PermutationAction::generator_image(int question, int answer_index) const {
    return question_images[static_cast<std::size_t>(question) * params.answer_width +
                           (answer_index - 1)];
}

Permutation& PermutationAction::generator_image(int question, int answer_index) {
    return question_images[static_cast<std::size_t>(question) * params.answer_width +
                           (answer_index - 1)];
}

Permutation PermutationAction::act(const Word& w) const {
    Permutation out = perm_identity(degree);
    for (const auto& block : w.blocks) {
        for (int i = 1; i <= params.answer_width; ++i)
            if (block.bits & (1u << (i - 1)))
                out = perm_compose(out, generator_image(block.question, i));
    }
    if (w.j_flag) out = perm_compose(out, central_image);
    return out;
}

PermutationAction trivial_action(const GroupParams& params, int degree) {
    validate_params(params);
    if (degree < 1) throw std::invalid_argument("action: degree must be positive");
    PermutationAction a;
    a.params = params;
    a.degree = degree;
    a.question_images.assign(
        static_cast<std::size_t>(params.question_count()) * params.answer_width,
        perm_identity(degree));
    a.central_image = perm_identity(degree);
    return a;
}

std::string validate_action(const PermutationAction& action, const GroupParams& params) {
    if (!(action.params == params)) return "action parameters do not match the group parameters";
    const std::size_t expected =
        static_cast<std::size_t>(params.question_count()) * params.answer_width;
    if (action.question_images.size() != expected) return "wrong number of generator images";
    auto name = [&params](int q, int i) {
        return params.questions[static_cast<std::size_t>(q)] + "." + std::to_string(i);
    };
    for (int q = 0; q < params.question_count(); ++q)
        for (int i = 1; i <= params.answer_width; ++i) {
            const Permutation& p = action.generator_image(q, i);
            if (p.degree() != action.degree) return name(q, i) + ": wrong degree";
            if (!p.is_involution()) return name(q, i) + ": not an involution";
        }
    if (action.central_image.degree() != action.degree) return "J: wrong degree";
    if (!action.central_image.is_involution()) return "J: not an involution";
    for (int q = 0; q < params.question_count(); ++q)
        for (int i = 1; i <= params.answer_width; ++i) {
            for (int j = i + 1; j <= params.answer_width; ++j)
                if (!perms_commute(action.generator_image(q, i), action.generator_image(q, j)))
                    return "same-question images " + name(q, i) + " and " + name(q, j) +
                           " do not commute";
            if (!perms_commute(action.generator_image(q, i), action.central_image))
                return name(q, i) + " does not commute with J";
        }
    return "";
}

std::map<Word, Rat, WordLess> induced_trace(const PermutationAction& action, const WordSet& ws) {
    std::map<Word, Rat, WordLess> tau;
    for (const auto& w : ws.elements)
        tau[w] = make_rat(action.act(w).fixed_points(), action.degree);
    return tau;
}

LocalDistribution local_data(const PermutationAction& action, const WordSet& domain) {
    std::map<std::vector<int>, int> counts;
    for (int point = 0; point < action.degree; ++point) {
        std::vector<int> support;
        for (int idx = 0; idx < domain.size(); ++idx)
            if (action.act(domain.elements[static_cast<std::size_t>(idx)]).apply(point) == point)
                support.push_back(idx);
        ++counts[support];
    }
    LocalDistribution dist;
    dist.domain = domain;
    for (const auto& [support, count] : counts) {
        dist.supports.push_back(support);
        dist.weights.push_back(make_rat(count, action.degree));
    }
    return dist;
}

Rat perm_value(const GameSpec& game, const PermutationAction& action) {
    const std::string violation = validate_action(action, game.params);
    if (!violation.empty()) throw std::invalid_argument("perm_value: invalid action: " + violation);
    if (action.central_image.fixed_points() != 0)
        throw std::invalid_argument("perm_value: J image has fixed points; strategy not normalized");
    return value(game, induced_trace(action, support_set(game)));
}

namespace {

using RatMatrix = std::vector<std::vector<Rat>>;

RatMatrix perm_matrix(const Permutation& p) {
    const int d = p.degree();
    RatMatrix m(static_cast<std::size_t>(d), std::vector<Rat>(static_cast<std::size_t>(d), Rat(0)));
    for (int t = 0; t < d; ++t) m[static_cast<std::size_t>(p.apply(t))][static_cast<std::size_t>(t)] = 1;
    return m;
}

RatMatrix rat_identity(int d) {
    RatMatrix m(static_cast<std::size_t>(d), std::vector<Rat>(static_cast<std::size_t>(d), Rat(0)));
    for (int i = 0; i < d; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    return m;
}

RatMatrix rat_mul(const RatMatrix& a, const RatMatrix& b) {
    const std::size_t d = a.size();
    RatMatrix out(d, std::vector<Rat>(d, Rat(0)));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t l = 0; l < d; ++l) {
            if (a[i][l] == 0) continue;
            for (std::size_t j = 0; j < d; ++j) out[i][j] += a[i][l] * b[l][j];
        }
    return out;
}

RatMatrix projection_matrix(const PermutationAction& action, int question, std::uint32_t answer) {
    const int d = action.degree;
    RatMatrix acc = rat_identity(d);
    for (int i = 1; i <= action.params.answer_width; ++i) {
        const RatMatrix u = perm_matrix(action.generator_image(question, i));
        const int sign = (answer & (1u << (i - 1))) ? -1 : 1;
        RatMatrix factor = rat_identity(d);
        for (std::size_t r = 0; r < factor.size(); ++r)
            for (std::size_t c = 0; c < factor.size(); ++c)
                factor[r][c] = (factor[r][c] + Rat(sign) * u[r][c]) / 2;
        acc = rat_mul(acc, factor);
    }
    return acc;
}

}  // namespace

StrategyTable strategy_table(const GameSpec& game, const PermutationAction& action) {
    const std::string violation = validate_action(action, game.params);
    if (!violation.empty())
        throw std::invalid_argument("strategy_table: invalid action: " + violation);
    if (action.central_image.fixed_points() != 0)
        throw std::invalid_argument("strategy_table: J image has fixed points");
    const int d = action.degree;
    const std::uint32_t n = game.answer_count();
    StrategyTable table = make_strategy_table(game.params);
    const RatMatrix j = perm_matrix(action.central_image);
    std::vector<std::vector<RatMatrix>> proj(
        static_cast<std::size_t>(game.params.question_count()));
    for (int q = 0; q < game.params.question_count(); ++q) {
        proj[static_cast<std::size_t>(q)].reserve(n);
        for (std::uint32_t a = 0; a < n; ++a)
            proj[static_cast<std::size_t>(q)].push_back(projection_matrix(action, q, a));
    }
    for (int x = 0; x < game.params.question_count(); ++x)
        for (int y = 0; y < game.params.question_count(); ++y)
            for (std::uint32_t a = 0; a < n; ++a)
                for (std::uint32_t b = 0; b < n; ++b) {
                    const RatMatrix prod = rat_mul(proj[static_cast<std::size_t>(x)][a],
                                                   proj[static_cast<std::size_t>(y)][b]);
                    Rat tr(0);
                    for (int i = 0; i < d; ++i) {
                        tr += prod[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
                        for (int l = 0; l < d; ++l)
                            tr -= j[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] *
                                  prod[static_cast<std::size_t>(l)][static_cast<std::size_t>(i)];
                    }
                    table.at(x, y, a, b) = tr / d;
                }
    return table;
}

Rat perm_value_direct(const GameSpec& game, const PermutationAction& action) {
    return table_value(game, strategy_table(game, action));
}

namespace {

/// All involutions of S_d, identity included, in a deterministic order.
void involutions_rec(int d, int next, std::vector<int>& partial,
                     std::vector<Permutation>& out) {
    while (next < d && partial[static_cast<std::size_t>(next)] >= 0) ++next;
    if (next == d) {
        Permutation p;
        p.images = partial;
        out.push_back(std::move(p));
        return;
    }
    partial[static_cast<std::size_t>(next)] = next;  // fixed point
    involutions_rec(d, next + 1, partial, out);
    partial[static_cast<std::size_t>(next)] = -1;
    for (int partner = next + 1; partner < d; ++partner) {
        if (partial[static_cast<std::size_t>(partner)] >= 0) continue;
        partial[static_cast<std::size_t>(next)] = partner;
        partial[static_cast<std::size_t>(partner)] = next;
        involutions_rec(d, next + 1, partial, out);
        partial[static_cast<std::size_t>(next)] = -1;
        partial[static_cast<std::size_t>(partner)] = -1;
    }
}

std::vector<Permutation> all_involutions(int d) {
    std::vector<Permutation> out;
    std::vector<int> partial(static_cast<std::size_t>(d), -1);
    involutions_rec(d, 0, partial, out);
    return out;
}

}  // namespace

std::vector<PermutationAction> enumerate_actions(const GroupParams& params, int degree,
                                                 bool require_fpf_central, std::size_t budget) {
    validate_params(params);
    const std::vector<Permutation> involutions = all_involutions(degree);
    std::vector<Permutation> central_candidates;
    for (const auto& p : involutions)
        if (!require_fpf_central || p.fixed_points() == 0) central_candidates.push_back(p);

    std::vector<PermutationAction> out;
    const int slots = params.question_count() * params.answer_width;
    for (const auto& central : central_candidates) {
        std::vector<Permutation> allowed;
        for (const auto& p : involutions)
            if (perms_commute(p, central)) allowed.push_back(p);
        std::vector<int> choice(static_cast<std::size_t>(slots), 0);
        while (true) {
            PermutationAction a = trivial_action(params, degree);
            a.central_image = central;
            bool ok = true;
            for (int s = 0; s < slots && ok; ++s) {
                a.question_images[static_cast<std::size_t>(s)] =
                    allowed[static_cast<std::size_t>(choice[static_cast<std::size_t>(s)])];
                // Same-question images must commute pairwise.
                const int q = s / params.answer_width;
                for (int prev = q * params.answer_width; prev < s; ++prev)
                    if (!perms_commute(a.question_images[static_cast<std::size_t>(prev)],
                                       a.question_images[static_cast<std::size_t>(s)]))
                        ok = false;
            }
            if (ok) {
                out.push_back(std::move(a));
                if (out.size() > budget)
                    throw budget_exceeded("enumerate_actions: budget exceeded");
            }
            int s = 0;
            for (; s < slots; ++s) {
                if (++choice[static_cast<std::size_t>(s)] <
                    static_cast<int>(allowed.size()))
                    break;
                choice[static_cast<std::size_t>(s)] = 0;
            }
            if (s == slots) break;
        }
    }
    return out;
}

namespace {

/// Canonical fixed-point-free J on an even degree: (1 2)(3 4)...
Permutation canonical_fpf(int degree) {
    Permutation p = perm_identity(degree);
    for (int i = 0; i + 1 < degree; i += 2) {
        p.images[static_cast<std::size_t>(i)] = i + 1;
        p.images[static_cast<std::size_t>(i + 1)] = i;
    }
    return p;
}

/// Random involution commuting with the canonical J: the J-pairs are matched
/// (possibly to themselves), matched distinct pairs get one of two wirings,
/// a pair matched to itself is either fixed pointwise or swapped.
Permutation random_centralizer_involution(int degree, std::mt19937_64& rng) {
    const int pairs = degree / 2;
    std::vector<int> pool(static_cast<std::size_t>(pairs));
    std::iota(pool.begin(), pool.end(), 0);
    Permutation p = perm_identity(degree);
    while (!pool.empty()) {
        const int a = pool.back();
        pool.pop_back();
        const std::uint64_t roll = rng();
        if (pool.empty() || roll % 3 == 0) {
            if (roll % 2 == 0) {  // swap inside the pair
                p.images[static_cast<std::size_t>(2 * a)] = 2 * a + 1;
                p.images[static_cast<std::size_t>(2 * a + 1)] = 2 * a;
            }
            continue;
        }
        const std::size_t pick = roll % pool.size();
        const int b = pool[pick];
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
        if (rng() % 2 == 0) {
            p.images[static_cast<std::size_t>(2 * a)] = 2 * b;
            p.images[static_cast<std::size_t>(2 * b)] = 2 * a;
            p.images[static_cast<std::size_t>(2 * a + 1)] = 2 * b + 1;
            p.images[static_cast<std::size_t>(2 * b + 1)] = 2 * a + 1;
        } else {
            p.images[static_cast<std::size_t>(2 * a)] = 2 * b + 1;
            p.images[static_cast<std::size_t>(2 * b + 1)] = 2 * a;
            p.images[static_cast<std::size_t>(2 * a + 1)] = 2 * b;
            p.images[static_cast<std::size_t>(2 * b)] = 2 * a + 1;
        }
    }
    return p;
}

}  // namespace

BetaResult search_beta(const GameSpec& game, int max_degree, long budget, std::uint64_t seed) {
    if (max_degree < 2)
        throw std::invalid_argument("search_beta: need degree >= 2 for a fixed-point-free J");
    BetaResult result;
    result.beta = Rat(-1);
    long evaluations = 0;
    auto consider = [&](const PermutationAction& a) -> Rat {
        const Rat v = perm_value(game, a);
        ++evaluations;
        if (v > result.beta) {
            result.beta = v;
            result.best_action = a;
        }
        return v;
    };

    const int exhaustive_limit = std::min(max_degree, 4);
    for (int d = 2; d <= exhaustive_limit; d += 2) {
        std::vector<PermutationAction> actions;
        try {
            actions = enumerate_actions(game.params, d, true,
                                        static_cast<std::size_t>(std::max<long>(budget, 1)));
        } catch (const budget_exceeded&) {
            result.exhausted = true;
            break;
        }
        for (const auto& a : actions) {
            if (evaluations >= budget) {
                result.exhausted = true;
                break;
            }
            consider(a);
        }
        if (result.exhausted) break;
    }

    // Seeded local search on larger even degrees: J fixed to the canonical
    // fixed-point-free involution (conjugating the whole action preserves the
    // value), question images kept inside its centralizer.
    std::mt19937_64 rng(seed);
    const int slots = game.params.question_count() * game.params.answer_width;
    for (int d = 6; d <= max_degree && evaluations < budget; d += 2) {
        PermutationAction current = trivial_action(game.params, d);
        current.central_image = canonical_fpf(d);
        for (auto& img : current.question_images) img = random_centralizer_involution(d, rng);
        if (!validate_action(current, game.params).empty()) continue;
        Rat current_value = consider(current);
        const long steps = std::max<long>(16, (budget - evaluations) / ((max_degree - 4) / 2 + 1));
        for (long step = 0; step < steps && evaluations < budget; ++step) {
            PermutationAction candidate = current;
            const int slot = static_cast<int>(rng() % static_cast<std::uint64_t>(slots));
            candidate.question_images[static_cast<std::size_t>(slot)] =
                random_centralizer_involution(d, rng);
            if (!validate_action(candidate, game.params).empty()) continue;
            const Rat v = perm_value(game, candidate);
            ++evaluations;
            if (v > result.beta) {
                result.beta = v;
                result.best_action = candidate;
            }
            if (v >= current_value) {
                current = std::move(candidate);
                current_value = v;
            }
        }
    }

    result.evaluations = evaluations;
    if (result.beta < 0) throw std::logic_error("search_beta: no valid action evaluated");
    return result;
}

IntegerMatrixImage action_image(const PermutationAction& action, const AlgebraMatrix& a) {
    if (!a.has_integer_coefficients())
        throw std::invalid_argument("action_image: matrix has non-integer coefficients");
    const std::string violation = validate_action(action, a.params);
    if (!violation.empty()) throw std::invalid_argument("action_image: invalid action: " + violation);
    const int d = action.degree;
    const int size = a.k * d;
    IntegerMatrixImage m;
    m.size = size;
    m.entries.assign(static_cast<std::size_t>(size) * size, Int(0));
    for (int bi = 0; bi < a.k; ++bi)
        for (int bj = 0; bj < a.k; ++bj)
            for (const auto& [w, c] : a.at(bi, bj).terms) {
                const Permutation p = action.act(w);
                const Int coeff = c.get_num();
                for (int t = 0; t < d; ++t)
                    m.at(bi * d + p.apply(t), bj * d + t) += coeff;
            }
    return m;
}

std::vector<Int> char_poly(const IntegerMatrixImage& m) {
    const int n = m.size;
    // Faddeev-LeVerrier: M_1 = M, c_k = -tr(M M_{k-1} ...)/k; all divisions exact.
    std::vector<Int> coeffs(static_cast<std::size_t>(n) + 1, Int(0));
    coeffs[static_cast<std::size_t>(n)] = 1;
    IntegerMatrixImage work = m;
    Int c_k;
    for (int k = 1; k <= n; ++k) {
        if (k > 1) {
            // work = M * (work + c_{k-1} I)
            IntegerMatrixImage shifted = work;
            for (int i = 0; i < n; ++i) shifted.at(i, i) += c_k;
            IntegerMatrixImage next;
            next.size = n;
            next.entries.assign(static_cast<std::size_t>(n) * n, Int(0));
            for (int i = 0; i < n; ++i)
                for (int l = 0; l < n; ++l) {
                    const Int& a_il = m.at(i, l);
                    if (a_il == 0) continue;
                    for (int j = 0; j < n; ++j) next.at(i, j) += a_il * shifted.at(l, j);
                }
            work = std::move(next);
        }
        Int trace(0);
        for (int i = 0; i < n; ++i) trace += work.at(i, i);
        Int q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), Int(-trace).get_mpz_t(), Int(k).get_mpz_t());
        if (r != 0) throw std::logic_error("char_poly: inexact division in Faddeev-LeVerrier");
        c_k = q;
        coeffs[static_cast<std::size_t>(n - k)] = c_k;
    }
    return coeffs;
}

std::string FkResult::logdet_decimal(int digits) const {
    if (abs_coeff == 1) return "0";
    const LnEnclosure enc = ln_enclosure(Rat(abs_coeff), pow2(-50));
    const Rat mid = (enc.lower + enc.upper) / 2 / Rat(matrix_size);
    return rat_to_decimal(mid, digits);
}

FkResult fk_logdet(const PermutationAction& action, const AlgebraMatrix& a) {
    const IntegerMatrixImage m = action_image(action, a);
    IntegerMatrixImage gram;
    gram.size = m.size;
    gram.entries.assign(static_cast<std::size_t>(m.size) * m.size, Int(0));
    for (int i = 0; i < m.size; ++i)
        for (int l = 0; l < m.size; ++l) {
            const Int& v = m.at(l, i);
            if (v == 0) continue;
            for (int j = 0; j < m.size; ++j) gram.at(i, j) += v * m.at(l, j);
        }
    FkResult out;
    out.matrix_size = m.size;
    out.char_poly_coeffs = char_poly(gram);
    int r = 0;
    while (r <= m.size && out.char_poly_coeffs[static_cast<std::size_t>(r)] == 0) ++r;
    out.nullity = r;
    out.lowest_nonzero_coeff = out.char_poly_coeffs[static_cast<std::size_t>(r)];
    out.abs_coeff = abs(out.lowest_nonzero_coeff);
    if (out.abs_coeff < 1)
        throw std::logic_error("fk_logdet: lowest nonzero coefficient vanished");
    return out;
}

DetCheckReport det_check_suite(const PermutationAction& action, int samples, std::uint64_t seed,
                               int k_max, int radius, int coeff_bound) {
    std::mt19937_64 rng(seed);
    const WordSet words = ball(action.params, radius);
    DetCheckReport report;
    report.min_abs_coeff = 0;
    for (int s = 0; s < samples; ++s) {
        const int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(k_max));
        AlgebraMatrix a = matrix_zero(action.params, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                const int terms = static_cast<int>(rng() % 3);
                AlgebraElement e = algebra_zero(action.params);
                for (int t = 0; t < terms; ++t) {
                    const auto& w =
                        words.elements[static_cast<std::size_t>(rng() % words.elements.size())];
                    const long c = static_cast<long>(rng() % (2 * coeff_bound + 1)) - coeff_bound;
                    if (c != 0) e = add(e, algebra_word(action.params, w, Rat(c)));
                }
                a.at(i, j) = std::move(e);
            }
        ++report.samples;
        const FkResult fk = fk_logdet(action, a);
        if (fk.nonnegative()) {
            ++report.passed;
            if (report.min_abs_coeff == 0 || fk.abs_coeff < report.min_abs_coeff)
                report.min_abs_coeff = fk.abs_coeff;
        } else if (report.first_failure.empty()) {
            report.first_failure = "sample " + std::to_string(s) + ": |c| = " +
                                   fk.abs_coeff.get_str() + " < 1 for A = " + matrix_to_string(a);
        }
    }
    return report;
}

PermutationAction parse_action(const GroupParams& params, std::istream& in) {
    validate_params(params);
    std::string line;
    int degree = -1;
    struct Line {
        std::string name, cycles;
    };
    std::vector<Line> lines;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream is(line);
        std::string first;
        if (!(is >> first)) continue;
        if (first == "degree") {
            if (!(is >> degree) || degree < 1)
                throw std::invalid_argument("action parse line " + std::to_string(lineno) +
                                            ": bad degree");
            continue;
        }
        if (first.empty() || first.back() != ':')
            throw std::invalid_argument("action parse line " + std::to_string(lineno) +
                                        ": expected 'name: cycles'");
        Line l;
        l.name = first.substr(0, first.size() - 1);
        std::getline(is, l.cycles);
        lines.push_back(std::move(l));
    }
    if (degree < 1) throw std::invalid_argument("action parse: missing 'degree d' line");
    PermutationAction action = trivial_action(params, degree);
    for (const auto& l : lines) {
        if (l.name == "J") {
            action.central_image = perm_from_cycles(degree, l.cycles);
            continue;
        }
        std::size_t dot = l.name.rfind('.');
        if (dot == std::string::npos)
            throw std::invalid_argument("action parse: generator '" + l.name +
                                        "' is not 'question.index' or 'J'");
        const int q = params.question_index(l.name.substr(0, dot));
        if (q < 0)
            throw std::invalid_argument("action parse: unknown question in '" + l.name + "'");
        const int idx = std::stoi(l.name.substr(dot + 1));
        if (idx < 1 || idx > params.answer_width)
            throw std::invalid_argument("action parse: answer index out of range in '" + l.name +
                                        "'");
        action.generator_image(q, idx) = perm_from_cycles(degree, l.cycles);
    }
    return action;
}

PermutationAction parse_action_file(const GroupParams& params, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open action file '" + path + "'");
    return parse_action(params, in);
}

std::string format_action(const PermutationAction& action) {
    std::ostringstream os;
    os << "degree " << action.degree << "\n";
    for (int q = 0; q < action.params.question_count(); ++q)
        for (int i = 1; i <= action.params.answer_width; ++i)
            os << action.params.questions[static_cast<std::size_t>(q)] << '.' << i << ": "
               << perm_to_cycles(action.generator_image(q, i)) << "\n";
    os << "J: " << perm_to_cycles(action.central_image) << "\n";
    return os.str();
}

}  // namespace detirs
