#include "detirs/hierarchy.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <thread>

namespace detirs {

namespace {

/// Index tables for a word set: products, inverses, generator conjugates.
struct DomainTables {
    const WordSet* domain = nullptr;
    std::vector<std::vector<int>> mult;  // mult[i][j] = index of w_i w_j, -1 outside
    std::vector<int> inv;

    explicit DomainTables(const WordSet& d) : domain(&d) {
        const int n = d.size();
        mult.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
        inv.assign(static_cast<std::size_t>(n), -1);
        for (int i = 0; i < n; ++i) {
            inv[static_cast<std::size_t>(i)] =
                d.index_of(inverse(d.elements[static_cast<std::size_t>(i)]));
            for (int j = 0; j < n; ++j)
                mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = d.index_of(
                    multiply(d.params, d.elements[static_cast<std::size_t>(i)],
                             d.elements[static_cast<std::size_t>(j)]));
        }
    }
};

std::vector<Word> group_generators(const GroupParams& params, bool with_central = true) {
    std::vector<Word> gens;
    for (int q = 0; q < params.question_count(); ++q)
        for (int i = 1; i <= params.answer_width; ++i) gens.push_back(generator_word(params, q, i));
    if (with_central) gens.push_back(central_word());
    return gens;
}

template <typename F>
void parallel_for(std::size_t count, int workers, F&& fn) {
    if (workers <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto body = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) break;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    const int spawn = std::min<int>(workers, static_cast<int>(count));
    pool.reserve(static_cast<std::size_t>(spawn));
    for (int w = 0; w < spawn; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
}

}  // namespace

bool is_partial_subgroup(const WordSet& domain, const std::vector<int>& subset) {
    const int id = domain.index_of(identity_word());
    std::vector<char> member(static_cast<std::size_t>(domain.size()), 0);
    for (int idx : subset) {
        if (idx < 0 || idx >= domain.size()) return false;
        member[static_cast<std::size_t>(idx)] = 1;
    }
    if (id < 0 || !member[static_cast<std::size_t>(id)]) return false;
    for (int i : subset) {
        const Word wi = domain.elements[static_cast<std::size_t>(i)];
        const int ii = domain.index_of(inverse(wi));
        if (ii < 0 || !member[static_cast<std::size_t>(ii)]) return false;
        for (int j : subset) {
            const int p = domain.index_of(
                multiply(domain.params, wi, domain.elements[static_cast<std::size_t>(j)]));
            if (p >= 0 && !member[static_cast<std::size_t>(p)]) return false;
        }
    }
    return true;
}

std::string validate_local_distribution(const LocalDistribution& dist) {
    if (dist.supports.size() != dist.weights.size()) return "support/weight count mismatch";
    Rat total(0);
    for (const auto& w : dist.weights) {
        if (w < 0) return "negative weight";
        total += w;
    }
    if (total != 1) return "weights sum to " + rat_to_string(total) + ", not 1";
    for (std::size_t s = 0; s < dist.supports.size(); ++s) {
        if (!std::is_sorted(dist.supports[s].begin(), dist.supports[s].end()))
            return "support " + std::to_string(s) + " is not sorted";
        if (!is_partial_subgroup(dist.domain, dist.supports[s]))
            return "support " + std::to_string(s) + " is not a partial subgroup";
    }
    return "";
}

LocalDistribution restrict_distribution(const LocalDistribution& dist, const WordSet& b) {
    if (!b.is_subset_of(dist.domain))
        throw std::invalid_argument("restrict: target is not a subset of the domain");
    std::map<std::vector<int>, Rat> merged;
    for (std::size_t s = 0; s < dist.supports.size(); ++s) {
        std::vector<int> restricted;
        for (int idx : dist.supports[s]) {
            const int t = b.index_of(dist.domain.elements[static_cast<std::size_t>(idx)]);
            if (t >= 0) restricted.push_back(t);
        }
        std::sort(restricted.begin(), restricted.end());
        merged[restricted] += dist.weights[s];
    }
    LocalDistribution out;
    out.domain = b;
    for (auto& [support, weight] : merged) {
        if (weight == 0) continue;
        out.supports.push_back(support);
        out.weights.push_back(weight);
    }
    return out;
}

std::map<Word, Rat, WordLess> induced_trace(const LocalDistribution& dist) {
    std::map<Word, Rat, WordLess> tau;
    for (const auto& w : dist.domain.elements) tau[w] = Rat(0);
    for (std::size_t s = 0; s < dist.supports.size(); ++s)
        for (int idx : dist.supports[s])
            tau[dist.domain.elements[static_cast<std::size_t>(idx)]] += dist.weights[s];
    return tau;
}

std::vector<std::vector<int>> enumerate_supports(const WordSet& domain, std::size_t budget) {
    const DomainTables tables(domain);
    const int n = domain.size();
    const int id = domain.index_of(identity_word());
    if (id < 0) throw std::invalid_argument("enumerate_supports: domain lacks the identity");

    auto close = [&](std::vector<int> seed) {
        std::vector<char> member(static_cast<std::size_t>(n), 0);
        std::vector<int> stack;
        auto push = [&](int idx) {
            if (idx >= 0 && !member[static_cast<std::size_t>(idx)]) {
                member[static_cast<std::size_t>(idx)] = 1;
                stack.push_back(idx);
            }
        };
        push(id);
        for (int idx : seed) push(idx);
        std::vector<int> members;
        while (!stack.empty()) {
            const int x = stack.back();
            stack.pop_back();
            members.push_back(x);
            push(tables.inv[static_cast<std::size_t>(x)]);
            for (int y : members) {
                push(tables.mult[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]);
                push(tables.mult[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)]);
            }
        }
        std::sort(members.begin(), members.end());
        return members;
    };

    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> queue;
    queue.push_back(close({}));
    seen.insert(queue.front());
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::vector<int> current = queue[head];
        for (int idx = 0; idx < n; ++idx) {
            if (std::binary_search(current.begin(), current.end(), idx)) continue;
            std::vector<int> seed = current;
            seed.push_back(idx);
            auto closed = close(std::move(seed));
            if (seen.insert(closed).second) {
                if (seen.size() > budget)
                    throw budget_exceeded("enumerate_supports: more than " +
                                          std::to_string(budget) + " admissible supports");
                queue.push_back(std::move(closed));
            }
        }
    }
    return std::vector<std::vector<int>>(seen.begin(), seen.end());
}

namespace {

void append_inverse_rows(const WordSet& domain, const DomainTables& tables, ConstraintSet& out) {
    for (int i = 0; i < domain.size(); ++i) {
        const int j = tables.inv[static_cast<std::size_t>(i)];
        if (j < 0 || j <= i) continue;
        out.rows.push_back(TauConstraint{{{i, Rat(1)}, {j, Rat(-1)}}, Relation::eq, Rat(0),
                                         "inverse"});
    }
}

void append_conjugation_rows(const WordSet& domain, ConstraintSet& out) {
    const auto gens = group_generators(domain.params, false);  // J is central: vacuous
    for (const auto& g : gens) {
        const std::string tag = "conjugation:" + word_to_string(domain.params, g);
        for (int i = 0; i < domain.size(); ++i) {
            const int j =
                domain.index_of(conjugate(domain.params, domain.elements[static_cast<std::size_t>(i)], g));
            if (j < 0 || j <= i) continue;
            out.rows.push_back(
                TauConstraint{{{i, Rat(1)}, {j, Rat(-1)}}, Relation::eq, Rat(0), tag});
        }
    }
}

void append_superadditivity_rows(const WordSet& domain, const DomainTables& tables,
                                 ConstraintSet& out) {
    const int id = domain.index_of(identity_word());
    for (int i = 0; i < domain.size(); ++i) {
        if (i == id) continue;
        for (int j = 0; j < domain.size(); ++j) {
            if (j == id) continue;
            const int k = tables.mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (k < 0) continue;
            // tau(ij) >= tau(i) + tau(j) - 1, products inside a subgroup stay inside.
            std::map<int, Rat> coeff;
            coeff[k] += 1;
            coeff[i] -= 1;
            coeff[j] -= 1;
            TauConstraint row;
            for (const auto& [idx, c] : coeff)
                if (c != 0) row.terms.emplace_back(idx, c);
            row.rel = Relation::ge;
            row.rhs = Rat(-1);
            row.tag = "superadditivity";
            if (row.terms.empty()) continue;
            out.rows.push_back(std::move(row));
        }
    }
}

}  // namespace

ConstraintSet irs_local_constraints(const WordSet& domain) {
    const DomainTables tables(domain);
    ConstraintSet out;
    const int id = domain.index_of(identity_word());
    out.rows.push_back(TauConstraint{{{id, Rat(1)}}, Relation::eq, Rat(1), "normalization"});
    append_inverse_rows(domain, tables, out);
    append_conjugation_rows(domain, out);
    append_superadditivity_rows(domain, tables, out);
    return out;
}

ConstraintSet strategy_constraints(const GameSpec& game, const WordSet& domain) {
    ConstraintSet out;
    const WordSet needed = strategy_support(game);
    if (!needed.is_subset_of(domain))
        throw std::invalid_argument(
            "strategy_constraints: strategy support is not contained in the domain");
    const std::uint32_t n = game.answer_count();
    for (const auto& [pair, prob] : game.q_dist) {
        if (prob == 0) continue;
        for (std::uint32_t a = 0; a < n; ++a)
            for (std::uint32_t b = 0; b < n; ++b) {
                const auto f =
                    answer_probability_functional(game.params, pair.first, pair.second, a, b);
                TauConstraint row;
                for (const auto& [w, c] : f.coeffs)
                    row.terms.emplace_back(domain.index_of(w), c);
                row.rel = Relation::ge;
                row.rhs = Rat(0);
                row.tag = "strategy:p(" + format_answer_bits(game.params, a) + "," +
                          format_answer_bits(game.params, b) + "|" +
                          game.params.questions[pair.first] + "," +
                          game.params.questions[pair.second] + ")";
                out.rows.push_back(std::move(row));
            }
    }
    const int j_idx = domain.index_of(central_word());
    if (j_idx < 0)
        throw std::invalid_argument("strategy_constraints: central word missing from the domain");
    out.rows.push_back(TauConstraint{{{j_idx, Rat(1)}}, Relation::eq, Rat(0), "strategy:tauJ"});
    return out;
}

namespace {

/// Entry candidates for the determinant matrices: 0 first, then all integer
/// combinations over the base with l1 norm up to max_l1, in (norm, support,
/// coefficient) order.
std::vector<AlgebraElement> entry_candidates(const WordSet& base, int max_l1,
                                             std::size_t budget) {
    std::vector<AlgebraElement> out;
    out.push_back(algebra_zero(base.params));
    std::vector<std::pair<int, long>> chosen;  // (word index, signed coefficient)
    auto emit = [&]() {
        AlgebraElement e = algebra_zero(base.params);
        for (const auto& [idx, c] : chosen)
            e = add(e, algebra_word(base.params, base.elements[static_cast<std::size_t>(idx)],
                                    Rat(c)));
        out.push_back(std::move(e));
    };
    // DFS over ascending word indices; total |coeff| fixed to l1 per round.
    std::function<void(int, int)> rec = [&](int from, int remaining) {
        if (out.size() > budget) return;
        if (remaining == 0) {
            emit();
            return;
        }
        for (int idx = from; idx < base.size(); ++idx) {
            for (int mag = 1; mag <= remaining; ++mag) {
                for (int sign = 0; sign < 2; ++sign) {
                    chosen.emplace_back(idx, sign == 0 ? mag : -mag);
                    rec(idx + 1, remaining - mag);
                    chosen.pop_back();
                    if (out.size() > budget) return;
                }
            }
        }
    };
    for (int l1 = 1; l1 <= max_l1 && out.size() <= budget; ++l1) rec(0, l1);
    if (out.size() > budget) out.resize(budget);
    return out;
}

}  // namespace

DetConstraints det_constraints(int level, const WordSet& b, const CertifiedUpperPoly& g,
                               const WordSet& domain, std::size_t matrix_budget,
                               std::size_t entry_budget, int workers) {
    DetConstraints out;
    if (level < 2) return out;  // per-entry l1 norm < 1 leaves only the zero matrix
    const auto entries = entry_candidates(b, level - 1, entry_budget);
    std::set<std::string> seen;
    std::vector<AlgebraMatrix> grams;

    const std::size_t iteration_cap = std::max<std::size_t>(matrix_budget * 64, 4096);
    std::size_t iterations = 0;
    bool stop = false;
    for (int k = 1; k <= level && !stop; ++k) {
        const std::size_t cells = static_cast<std::size_t>(k) * k;
        std::vector<std::size_t> choice(cells, 0);
        while (!stop) {
            ++iterations;
            bool all_zero = true;
            for (std::size_t c : choice)
                if (c != 0) all_zero = false;
            if (!all_zero) {
                AlgebraMatrix a = matrix_zero(b.params, k);
                for (std::size_t cell = 0; cell < cells; ++cell)
                    a.entries[cell] = entries[choice[cell]];
                ++out.enumerated;
                AlgebraMatrix gram = mat_mul(adjoint(a), a);
                if (seen.insert(matrix_to_string(gram)).second) {
                    grams.push_back(std::move(gram));
                    if (grams.size() >= matrix_budget) {
                        out.budget_hit = true;
                        stop = true;
                    }
                }
            }
            if (iterations >= iteration_cap) {
                out.budget_hit = true;
                stop = true;
            }
            // Mixed-radix increment, last cell fastest.
            bool rolled_over = true;
            for (std::size_t cell = cells; cell-- > 0;) {
                if (++choice[cell] < entries.size()) {
                    rolled_over = false;
                    break;
                }
                choice[cell] = 0;
            }
            if (rolled_over) break;
        }
    }

    std::vector<LinearFunctionalOnWords> functionals(grams.size());
    std::atomic<bool> escape{false};
    parallel_for(grams.size(), workers, [&](std::size_t i) {
        functionals[i] = trace_functional(poly_apply(g.poly, grams[i]));
        for (const auto& [w, c] : functionals[i].coeffs)
            if (domain.index_of(w) < 0) escape.store(true);
    });
    if (escape.load())
        throw std::logic_error("det_constraints: words of g(A*A) escape the domain; "
                               "B~ sized wrongly");

    for (std::size_t i = 0; i < functionals.size(); ++i) {
        const auto& f = functionals[i];
        if (f.coeffs.empty()) continue;
        out.functionals.push_back(f);
        bool can_bind = false;
        for (const auto& [w, c] : f.coeffs)
            if (c < 0) can_bind = true;
        if (!can_bind) continue;  // nonnegative pairing is implied by tau >= 0
        TauConstraint row;
        for (const auto& [w, c] : f.coeffs) row.terms.emplace_back(domain.index_of(w), c);
        row.rel = Relation::ge;
        row.rhs = Rat(0);
        row.tag = "det:" + std::to_string(level) + "," + std::to_string(i);
        out.rows.rows.push_back(std::move(row));
    }
    return out;
}

namespace {

struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
        for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);  // keep the smallest index as representative
        parent[static_cast<std::size_t>(b)] = a;
    }
};

std::string row_key(const std::vector<std::pair<int, Rat>>& terms, Relation rel, const Rat& rhs) {
    std::ostringstream os;
    for (const auto& [idx, c] : terms) os << idx << ':' << rat_to_string(c) << ';';
    os << static_cast<int>(rel) << '|' << rat_to_string(rhs);
    return os.str();
}

/// True for rows that cannot bind given variable bounds [0, 1].
bool row_trivial(const std::vector<std::pair<int, Rat>>& terms, Relation rel, const Rat& rhs) {
    if (rel == Relation::eq) return terms.empty() && rhs == 0;
    // With every variable bounded to [0, 1], the extreme row values are the
    // signed sums of the negative and positive coefficients.
    Rat min_value(0), max_value(0);
    for (const auto& [idx, c] : terms) {
        (void)idx;
        if (c < 0)
            min_value += c;
        else
            max_value += c;
    }
    if (rel == Relation::ge) return min_value >= rhs;
    return max_value <= rhs;
}

}  // namespace

HierarchyLevel build_level(const GameSpec& game, int level, const HierarchyOptions& opts) {
    if (level < 1) throw std::invalid_argument("hierarchy: level must be >= 1");
    HierarchyLevel out;
    out.level = level;
    out.mode = opts.mode;

    const WordSet needed = strategy_support(game);
    int radius = opts.ball_radius_start;
    if (radius <= 0) {
        radius = 1;
        for (const auto& w : needed.elements) radius = std::max(radius, w.generator_length());
    }
    out.b = ball(game.params, radius + level - 1);
    if (!needed.is_subset_of(out.b))
        throw std::invalid_argument("hierarchy: strategy support not contained in B_1; "
                                    "increase the starting ball radius");

    const int first_level = opts.cumulative ? 1 : level;
    std::vector<WordSet> bases;
    for (int m = first_level; m <= level; ++m) bases.push_back(ball(game.params, radius + m - 1));
    out.window_bases = bases;

    // Determinant data. Level m contributes matrices only for m >= 2.
    struct DetLevel {
        int m;
        WordSet base;
        CertifiedUpperPoly g;
    };
    std::vector<DetLevel> det_levels;
    if (opts.include_det) {
        for (int m = std::max(2, first_level); m <= level; ++m) {
            LnPolyOptions lopts;
            lopts.grid_size = opts.certificate_grid;
            const Rat interval_end = rat_pow(Rat(m), 6);
            det_levels.push_back(
                DetLevel{m, ball(game.params, radius + m - 1),
                         g_poly(m, interval_end, opts.deg_cap, lopts)});
        }
    }
    int max_deg = 0;
    for (const auto& dl : det_levels) max_deg = std::max(max_deg, dl.g.poly.degree());
    out.domain = det_levels.empty()
                     ? out.b
                     : product_closure(out.b, std::max(1, 2 * max_deg), opts.wordset_budget);
    if (!det_levels.empty()) out.g = det_levels.back().g;

    // Word-level rows.
    ConstraintSet rows;
    const int id_idx = out.domain.index_of(identity_word());
    rows.rows.push_back(TauConstraint{{{id_idx, Rat(1)}}, Relation::eq, Rat(1), "normalization"});
    {
        ConstraintSet strat = strategy_constraints(game, out.domain);
        for (auto& r : strat.rows) rows.rows.push_back(std::move(r));
    }
    const DomainTables tables(out.domain);
    append_inverse_rows(out.domain, tables, rows);
    append_conjugation_rows(out.domain, rows);
    if (opts.mode == HierarchyMode::trace)
        append_superadditivity_rows(out.domain, tables, rows);
    for (const auto& dl : det_levels) {
        DetConstraints det = det_constraints(dl.m, dl.base, dl.g, out.domain, opts.matrix_budget,
                                             opts.entry_budget, opts.workers);
        for (auto& r : det.rows.rows) rows.rows.push_back(std::move(r));
        for (auto& f : det.functionals) out.det_functionals.push_back(std::move(f));
        out.notes.push_back("det level " + std::to_string(dl.m) + ": " +
                            std::to_string(det.functionals.size()) + " distinct forms (" +
                            std::to_string(det.enumerated) + " matrices enumerated" +
                            (det.budget_hit ? ", budget hit" : "") + "), g degree " +
                            std::to_string(dl.g.poly.degree()));
    }
    out.tau_rows = std::move(rows);

    // Objective.
    const LinearFunctionalOnWords objective = strategy_functional(game);

    if (opts.mode == HierarchyMode::trace) {
        // Merge variables identified by two-term equalities, then emit the rest.
        UnionFind uf(out.domain.size());
        for (const auto& row : out.tau_rows.rows)
            if (row.rel == Relation::eq && row.rhs == 0 && row.terms.size() == 2 &&
                row.terms[0].second == -row.terms[1].second)
                uf.unite(row.terms[0].first, row.terms[1].first);
        std::vector<int> var_of_class(static_cast<std::size_t>(out.domain.size()), -1);
        out.var_of_word.assign(static_cast<std::size_t>(out.domain.size()), -1);
        for (int i = 0; i < out.domain.size(); ++i) {
            const int rep = uf.find(i);
            if (var_of_class[static_cast<std::size_t>(rep)] < 0)
                var_of_class[static_cast<std::size_t>(rep)] = out.lp.add_variable(
                    "tau[" + word_to_string(out.domain.params,
                                            out.domain.elements[static_cast<std::size_t>(rep)]) +
                        "]",
                    Rat(0), Rat(1));
            out.var_of_word[static_cast<std::size_t>(i)] =
                var_of_class[static_cast<std::size_t>(rep)];
        }
        std::set<std::string> emitted;
        for (const auto& row : out.tau_rows.rows) {
            std::map<int, Rat> combined;
            for (const auto& [idx, c] : row.terms)
                combined[out.var_of_word[static_cast<std::size_t>(idx)]] += c;
            std::vector<std::pair<int, Rat>> terms;
            for (const auto& [var, c] : combined)
                if (c != 0) terms.emplace_back(var, c);
            if (row_trivial(terms, row.rel, row.rhs)) continue;
            const std::string key = row_key(terms, row.rel, row.rhs);
            if (!emitted.insert(key).second) continue;
            out.lp.add_row(std::move(terms), row.rel, row.rhs, row.tag);
        }
        for (const auto& [w, c] : objective.coeffs) {
            const int idx = out.domain.index_of(w);
            if (idx < 0)
                throw std::logic_error("hierarchy: objective word outside the domain");
            out.lp.objective[static_cast<std::size_t>(
                out.var_of_word[static_cast<std::size_t>(idx)])] += c;
        }
        out.notes.push_back("trace mode: " + std::to_string(out.domain.size()) + " words, " +
                            std::to_string(out.lp.variable_count()) + " variables, " +
                            std::to_string(out.lp.rows.size()) + " rows");
    } else {
        out.supports = enumerate_supports(out.domain, opts.support_budget);
        const int count = static_cast<int>(out.supports.size());
        std::vector<std::vector<char>> member(
            static_cast<std::size_t>(count),
            std::vector<char>(static_cast<std::size_t>(out.domain.size()), 0));
        for (int s = 0; s < count; ++s) {
            out.lp.add_variable("pi[" + std::to_string(s) + "]", Rat(0), Rat(1));
            for (int idx : out.supports[static_cast<std::size_t>(s)])
                member[static_cast<std::size_t>(s)][static_cast<std::size_t>(idx)] = 1;
        }
        std::set<std::string> emitted;
        auto add_support_row = [&](const std::vector<std::pair<int, Rat>>& tau_terms, Relation rel,
                                   const Rat& rhs, const std::string& tag) {
            std::vector<std::pair<int, Rat>> terms;
            for (int s = 0; s < count; ++s) {
                Rat coeff(0);
                for (const auto& [idx, c] : tau_terms)
                    if (member[static_cast<std::size_t>(s)][static_cast<std::size_t>(idx)])
                        coeff += c;
                if (coeff != 0) terms.emplace_back(s, coeff);
            }
            if (row_trivial(terms, rel, rhs)) return;
            const std::string key = row_key(terms, rel, rhs);
            if (!emitted.insert(key).second) return;
            out.lp.add_row(std::move(terms), rel, rhs, tag);
        };
        for (const auto& row : out.tau_rows.rows) add_support_row(row.terms, row.rel, row.rhs, row.tag);

        // Windowed conjugation marginals per base set and generator.
        const auto gens = group_generators(game.params, false);
        for (std::size_t bi = 0; bi < bases.size(); ++bi) {
            const WordSet& base = bases[bi];
            for (const auto& g : gens) {
                std::vector<std::pair<int, int>> window;  // (domain idx, conj domain idx)
                for (const auto& w : base.elements) {
                    const Word cw = conjugate(game.params, w, g);
                    if (base.contains(cw))
                        window.emplace_back(out.domain.index_of(w), out.domain.index_of(cw));
                }
                std::map<std::vector<int>, std::pair<std::vector<int>, std::vector<int>>> buckets;
                for (int s = 0; s < count; ++s) {
                    std::vector<int> direct, conj;
                    for (std::size_t wi = 0; wi < window.size(); ++wi) {
                        if (member[static_cast<std::size_t>(s)]
                                  [static_cast<std::size_t>(window[wi].first)])
                            direct.push_back(static_cast<int>(wi));
                        if (member[static_cast<std::size_t>(s)]
                                  [static_cast<std::size_t>(window[wi].second)])
                            conj.push_back(static_cast<int>(wi));
                    }
                    buckets[direct].first.push_back(s);
                    buckets[std::move(conj)].second.push_back(s);
                }
                const std::string tag = "conjugation-window:" +
                                        std::to_string(first_level + static_cast<int>(bi)) + ":" +
                                        word_to_string(game.params, g);
                for (const auto& [pattern, sides] : buckets) {
                    if (sides.first == sides.second) continue;
                    std::map<int, Rat> coeff;
                    for (int s : sides.first) coeff[s] += 1;
                    for (int s : sides.second) coeff[s] -= 1;
                    std::vector<std::pair<int, Rat>> terms;
                    for (const auto& [s, c] : coeff)
                        if (c != 0) terms.emplace_back(s, c);
                    if (terms.empty()) continue;
                    const std::string key = row_key(terms, Relation::eq, Rat(0));
                    if (!emitted.insert(key).second) continue;
                    out.lp.add_row(std::move(terms), Relation::eq, Rat(0), tag);
                }
            }
        }

        for (const auto& [w, c] : objective.coeffs) {
            const int idx = out.domain.index_of(w);
            if (idx < 0)
                throw std::logic_error("hierarchy: objective word outside the domain");
            for (int s = 0; s < count; ++s)
                if (member[static_cast<std::size_t>(s)][static_cast<std::size_t>(idx)])
                    out.lp.objective[static_cast<std::size_t>(s)] += c;
        }
        out.notes.push_back("subset mode: " + std::to_string(out.domain.size()) + " words, " +
                            std::to_string(count) + " admissible supports, " +
                            std::to_string(out.lp.rows.size()) + " rows");
    }
    return out;
}

AlphaResult alpha(const GameSpec& game, int level, const HierarchyOptions& opts) {
    AlphaResult out;
    out.level = build_level(game, level, opts);
    out.outcome = solve(out.level.lp, opts.lp_iteration_budget);
    if (out.outcome.status == LpStatus::infeasible)
        throw std::logic_error("alpha: LP infeasible; constraint generation must be wrong "
                               "(the trivial-subgroup datum is always feasible)");
    if (out.outcome.status == LpStatus::unbounded)
        throw std::logic_error("alpha: LP unbounded despite [0,1] variable bounds");
    if (!verify(out.level.lp, out.outcome.witness))
        throw verification_error("alpha: optimal witness failed exact re-verification");
    out.alpha = out.outcome.optimum;

    if (opts.mode == HierarchyMode::trace) {
        for (int i = 0; i < out.level.domain.size(); ++i)
            out.tau_witness[out.level.domain.elements[static_cast<std::size_t>(i)]] =
                out.outcome.witness[static_cast<std::size_t>(
                    out.level.var_of_word[static_cast<std::size_t>(i)])];
    } else {
        LocalDistribution dist;
        dist.domain = out.level.domain;
        for (std::size_t s = 0; s < out.level.supports.size(); ++s) {
            const Rat& weight = out.outcome.witness[s];
            if (weight == 0) continue;
            dist.supports.push_back(out.level.supports[s]);
            dist.weights.push_back(weight);
        }
        out.tau_witness = induced_trace(dist);
        out.dist_witness = std::move(dist);
    }

    // Exact post-solve consistency of every enumerated determinant functional.
    for (const auto& f : out.level.det_functionals)
        if (f.pair(out.tau_witness) < 0)
            throw verification_error("alpha: determinant functional negative at the witness");
    return out;
}

namespace {

std::optional<std::string> check_rows(const ConstraintSet& rows, const WordSet& domain,
                                      const std::map<Word, Rat, WordLess>& tau) {
    for (const auto& row : rows.rows) {
        Rat acc(0);
        for (const auto& [idx, c] : row.terms) {
            auto it = tau.find(domain.elements[static_cast<std::size_t>(idx)]);
            if (it == tau.end())
                return "tau missing word " +
                       word_to_string(domain.params,
                                      domain.elements[static_cast<std::size_t>(idx)]);
            acc += c * it->second;
        }
        const bool ok = row.rel == Relation::le   ? acc <= row.rhs
                        : row.rel == Relation::eq ? acc == row.rhs
                                                  : acc >= row.rhs;
        if (!ok)
            return "row '" + row.tag + "' violated: value " + rat_to_string(acc) + " vs rhs " +
                   rat_to_string(row.rhs);
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::string> check_trace_feasibility(const HierarchyLevel& level,
                                                   const std::map<Word, Rat, WordLess>& tau) {
    for (const auto& w : level.domain.elements) {
        auto it = tau.find(w);
        if (it == tau.end())
            return "tau missing word " + word_to_string(level.domain.params, w);
        if (it->second < 0 || it->second > 1)
            return "tau out of [0,1] at " + word_to_string(level.domain.params, w);
    }
    return check_rows(level.tau_rows, level.domain, tau);
}

std::optional<std::string> check_local_data_feasibility(const HierarchyLevel& level,
                                                        const LocalDistribution& dist) {
    if (!(dist.domain.params == level.domain.params) ||
        dist.domain.elements != level.domain.elements)
        return "distribution domain differs from the level domain";
    const std::string shape = validate_local_distribution(dist);
    if (!shape.empty()) return shape;

    const auto gens = group_generators(level.domain.params, false);
    for (const auto& base : level.window_bases) {
        for (const auto& g : gens) {
            std::vector<std::pair<int, int>> window;
            for (const auto& w : base.elements) {
                const Word cw = conjugate(level.domain.params, w, g);
                if (base.contains(cw))
                    window.emplace_back(level.domain.index_of(w), level.domain.index_of(cw));
            }
            std::map<std::vector<int>, Rat> direct_measure, conj_measure;
            for (std::size_t s = 0; s < dist.supports.size(); ++s) {
                std::vector<char> member(static_cast<std::size_t>(level.domain.size()), 0);
                for (int idx : dist.supports[s]) member[static_cast<std::size_t>(idx)] = 1;
                std::vector<int> direct, conj;
                for (std::size_t wi = 0; wi < window.size(); ++wi) {
                    if (member[static_cast<std::size_t>(window[wi].first)])
                        direct.push_back(static_cast<int>(wi));
                    if (member[static_cast<std::size_t>(window[wi].second)])
                        conj.push_back(static_cast<int>(wi));
                }
                direct_measure[direct] += dist.weights[s];
                conj_measure[std::move(conj)] += dist.weights[s];
            }
            for (auto& [pattern, weight] : direct_measure) {
                auto it = conj_measure.find(pattern);
                const Rat other = it == conj_measure.end() ? Rat(0) : it->second;
                if (weight != other)
                    return "window marginal mismatch under " +
                           word_to_string(level.domain.params, g);
            }
            for (auto& [pattern, weight] : conj_measure)
                if (!direct_measure.count(pattern) && weight != 0)
                    return "window marginal mismatch under " +
                           word_to_string(level.domain.params, g);
        }
    }
    return check_rows(level.tau_rows, level.domain, induced_trace(dist));
}

}  // namespace detirs
