#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace detirs::test {

std::vector<Gen> generator_string(const Word& w) {
    std::vector<Gen> out;
    for (const auto& block : w.blocks)
        for (int i = 1; i <= 31; ++i)
            if (block.bits & (1u << (i - 1))) out.push_back(Gen{false, block.question, i});
    if (w.j_flag) out.push_back(Gen{true, 0, 0});
    return out;
}

Word reduce_string(const GroupParams& params, std::vector<Gen> gens) {
    // Move every J to the end (it commutes with everything), cancelling pairs.
    int j_count = 0;
    std::vector<Gen> plain;
    for (const auto& g : gens)
        if (g.central)
            ++j_count;
        else
            plain.push_back(g);

    // Repeatedly: sort same-question runs, cancel adjacent equal generators.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < plain.size(); ++i) {
            if (plain[i].question == plain[i + 1].question) {
                if (plain[i].index == plain[i + 1].index) {
                    plain.erase(plain.begin() + static_cast<std::ptrdiff_t>(i),
                                plain.begin() + static_cast<std::ptrdiff_t>(i) + 2);
                    changed = true;
                    break;
                }
                if (plain[i].index > plain[i + 1].index) {
                    std::swap(plain[i], plain[i + 1]);
                    changed = true;
                    break;
                }
            }
        }
    }

    Word w;
    for (const auto& g : plain) {
        if (!w.blocks.empty() && w.blocks.back().question == g.question)
            w.blocks.back().bits |= 1u << (g.index - 1);
        else
            w.blocks.push_back({g.question, 1u << (g.index - 1)});
    }
    w.j_flag = j_count % 2 == 1;
    validate_word(params, w);
    return w;
}

Word word_mult_oracle(const GroupParams& params, const Word& a, const Word& b) {
    std::vector<Gen> gens = generator_string(a);
    const std::vector<Gen> more = generator_string(b);
    gens.insert(gens.end(), more.begin(), more.end());
    return reduce_string(params, gens);
}

std::vector<Word> ball_oracle(const GroupParams& params, int radius) {
    std::vector<Gen> alphabet;
    for (int q = 0; q < params.question_count(); ++q)
        for (int i = 1; i <= params.answer_width; ++i) alphabet.push_back(Gen{false, q, i});
    alphabet.push_back(Gen{true, 0, 0});

    std::set<Word, WordLess> seen;
    std::vector<std::vector<Gen>> frontier{{}};
    seen.insert(identity_word());
    for (int r = 0; r < radius; ++r) {
        std::vector<std::vector<Gen>> next;
        for (const auto& s : frontier)
            for (const auto& g : alphabet) {
                auto longer = s;
                longer.push_back(g);
                seen.insert(reduce_string(params, longer));
                next.push_back(std::move(longer));
            }
        frontier = std::move(next);
    }
    return std::vector<Word>(seen.begin(), seen.end());
}

AlgebraElement convolution_oracle(const AlgebraElement& a, const AlgebraElement& b) {
    AlgebraElement out{a.params, {}};
    for (const auto& [wa, ca] : a.terms)
        for (const auto& [wb, cb] : b.terms) {
            const Word p = word_mult_oracle(a.params, wa, wb);
            out.terms[p] += ca * cb;
            if (out.terms[p] == 0) out.terms.erase(p);
        }
    return out;
}

AlgebraMatrix mat_mul_oracle(const AlgebraMatrix& a, const AlgebraMatrix& b) {
    AlgebraMatrix out = matrix_zero(a.params, a.k);
    for (int i = 0; i < a.k; ++i)
        for (int j = 0; j < a.k; ++j)
            for (int l = 0; l < a.k; ++l)
                out.at(i, j) = add(out.at(i, j), convolution_oracle(a.at(i, l), b.at(l, j)));
    return out;
}

LnInterval ln_oracle(const Rat& q, int terms) {
    if (q <= 0) throw std::invalid_argument("ln_oracle: positive arguments only");
    // Reduce to r in [2/3, 4/3): q = 2^m r.
    long m = 0;
    Rat r = q;
    while (r >= make_rat(4, 3)) {
        r /= 2;
        ++m;
    }
    while (r < make_rat(2, 3)) {
        r *= 2;
        --m;
    }
    const Rat x = r - 1;  // |x| <= 1/3
    Rat sum(0);
    Rat power(1);
    for (int k = 1; k <= terms; ++k) {
        power *= x;
        sum += (k % 2 == 1 ? power : -power) / k;
    }
    Rat tail = rat_abs(rat_pow(x, static_cast<unsigned>(terms + 1))) / (terms + 1);
    // Alternating series: truncation error within the first omitted term.
    LnInterval ln_r{sum - tail, sum + tail};

    // ln 2 = sum 1/(k 2^k); tail after T terms is below 2^-T / (T+1) * 2.
    const int T = 64;
    Rat l2(0);
    for (int k = 1; k <= T; ++k) l2 += make_rat(1, k) * pow2(-k);
    const Rat l2_tail = pow2(-T) * make_rat(2, T + 1);
    LnInterval ln2{l2, l2 + l2_tail};

    if (m >= 0)
        return LnInterval{ln_r.lower + m * ln2.lower, ln_r.upper + m * ln2.upper};
    return LnInterval{ln_r.lower + m * ln2.upper, ln_r.upper + m * ln2.lower};
}

VertexEnumResult vertex_enum_oracle(const LinearProgram& lp) {
    const int n = lp.variable_count();
    // Gather every constraint as (row, rel, rhs) including variable bounds.
    struct Facet {
        std::vector<Rat> row;
        Relation rel;
        Rat rhs;
    };
    std::vector<Facet> facets;
    for (const auto& row : lp.rows) {
        Facet f{std::vector<Rat>(static_cast<std::size_t>(n), Rat(0)), row.rel, row.rhs};
        for (const auto& [idx, c] : row.terms) f.row[static_cast<std::size_t>(idx)] += c;
        facets.push_back(std::move(f));
    }
    for (int i = 0; i < n; ++i) {
        if (lp.lower[static_cast<std::size_t>(i)]) {
            Facet f{std::vector<Rat>(static_cast<std::size_t>(n), Rat(0)), Relation::ge,
                    *lp.lower[static_cast<std::size_t>(i)]};
            f.row[static_cast<std::size_t>(i)] = 1;
            facets.push_back(std::move(f));
        }
        if (lp.upper[static_cast<std::size_t>(i)]) {
            Facet f{std::vector<Rat>(static_cast<std::size_t>(n), Rat(0)), Relation::le,
                    *lp.upper[static_cast<std::size_t>(i)]};
            f.row[static_cast<std::size_t>(i)] = 1;
            facets.push_back(std::move(f));
        }
    }

    auto feasible = [&](const std::vector<Rat>& x) {
        for (const auto& f : facets) {
            Rat acc(0);
            for (int i = 0; i < n; ++i) acc += f.row[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
            if (f.rel == Relation::le && acc > f.rhs) return false;
            if (f.rel == Relation::ge && acc < f.rhs) return false;
            if (f.rel == Relation::eq && acc != f.rhs) return false;
        }
        return true;
    };

    VertexEnumResult result;
    const int total = static_cast<int>(facets.size());
    std::vector<int> pick(static_cast<std::size_t>(n), 0);
    // Iterate over all n-subsets of facets; solve the tight system; test.
    std::vector<int> subset;
    std::function<void(int)> rec = [&](int from) {
        if (static_cast<int>(subset.size()) == n) {
            // Solve facets[subset] * x = rhs by Gaussian elimination.
            std::vector<std::vector<Rat>> m(static_cast<std::size_t>(n),
                                            std::vector<Rat>(static_cast<std::size_t>(n) + 1, Rat(0)));
            for (int r = 0; r < n; ++r) {
                for (int c = 0; c < n; ++c)
                    m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                        facets[static_cast<std::size_t>(subset[static_cast<std::size_t>(r)])]
                            .row[static_cast<std::size_t>(c)];
                m[static_cast<std::size_t>(r)][static_cast<std::size_t>(n)] =
                    facets[static_cast<std::size_t>(subset[static_cast<std::size_t>(r)])].rhs;
            }
            for (int col = 0; col < n; ++col) {
                int pivot = -1;
                for (int r = col; r < n; ++r)
                    if (m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) {
                        pivot = r;
                        break;
                    }
                if (pivot < 0) return;  // singular: no vertex from this subset
                std::swap(m[static_cast<std::size_t>(col)], m[static_cast<std::size_t>(pivot)]);
                const Rat inv = Rat(1) / m[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
                for (auto& x : m[static_cast<std::size_t>(col)]) x *= inv;
                for (int r = 0; r < n; ++r) {
                    if (r == col) continue;
                    const Rat f = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
                    if (f == 0) continue;
                    for (int c = 0; c <= n; ++c)
                        m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
                            f * m[static_cast<std::size_t>(col)][static_cast<std::size_t>(c)];
                }
            }
            std::vector<Rat> x(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)];
            if (!feasible(x)) return;
            const Rat value = objective_value(lp, x);
            if (!result.feasible || value > result.optimum) {
                result.feasible = true;
                result.optimum = value;
                result.argmax = std::move(x);
            }
            return;
        }
        for (int f = from; f < total; ++f) {
            subset.push_back(f);
            rec(f + 1);
            subset.pop_back();
        }
    };
    rec(0);
    return result;
}

std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> m) {
    const std::size_t n = m.size();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += m[i][j] * m[i][j];
        if (off < 1e-24) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(m[p][q]) < 1e-18) continue;
                const double theta = (m[q][q] - m[p][p]) / (2 * m[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1));
                const double c = 1 / std::sqrt(t * t + 1);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double mkp = m[k][p], mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double mpk = m[p][k], mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
            }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = m[i][i];
    std::sort(eig.begin(), eig.end());
    return eig;
}

Word random_word(const GroupParams& params, std::mt19937_64& rng, int max_syllables) {
    Word w;
    const int blocks = static_cast<int>(rng() % static_cast<std::uint64_t>(max_syllables + 1));
    const std::uint32_t full = (1u << params.answer_width) - 1u;
    for (int b = 0; b < blocks; ++b) {
        int q = static_cast<int>(rng() % static_cast<std::uint64_t>(params.question_count()));
        if (!w.blocks.empty() && w.blocks.back().question == q)
            q = (q + 1) % params.question_count();
        if (!w.blocks.empty() && w.blocks.back().question == q) break;  // single question
        const std::uint32_t bits = 1u + static_cast<std::uint32_t>(rng() % full);
        w.blocks.push_back({q, bits});
    }
    w.j_flag = rng() % 2 == 0;
    validate_word(params, w);
    return w;
}

GameSpec random_game(std::mt19937_64& rng, int questions, int bits) {
    GroupParams params;
    for (int i = 0; i < questions; ++i) params.questions.push_back("q" + std::to_string(i));
    params.answer_width = bits;
    std::map<std::pair<int, int>, Rat> q;
    Int total(0);
    std::map<std::pair<int, int>, long> raw;
    for (int x = 0; x < questions; ++x)
        for (int y = 0; y < questions; ++y) {
            const long weight = 1 + static_cast<long>(rng() % 4);
            raw[{x, y}] = weight;
            total += weight;
        }
    for (const auto& [pair, weight] : raw) q[pair] = make_rat(Int(weight), total);
    const std::size_t n = 1u << bits;
    std::vector<std::uint8_t> table(static_cast<std::size_t>(questions) * questions * n * n);
    for (auto& cell : table) cell = rng() % 2;
    return make_game(params, std::move(q), std::move(table));
}

PermutationAction random_action(const GroupParams& params, int degree, std::mt19937_64& rng,
                                bool fpf_central) {
    auto random_involution = [&](int d) {
        Permutation p = perm_identity(d);
        std::vector<int> pool(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) pool[static_cast<std::size_t>(i)] = i;
        while (pool.size() >= 2) {
            const int a = pool.back();
            pool.pop_back();
            if (!fpf_central && rng() % 2 == 0) continue;  // leave fixed
            const std::size_t pick = rng() % pool.size();
            const int b = pool[pick];
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
            p.images[static_cast<std::size_t>(a)] = b;
            p.images[static_cast<std::size_t>(b)] = a;
        }
        return p;
    };
    for (int attempt = 0; attempt < 100000; ++attempt) {
        PermutationAction a = trivial_action(params, degree);
        if (fpf_central) {
            if (degree % 2 != 0)
                throw std::invalid_argument("random_action: fixed-point-free J needs even degree");
            a.central_image = random_involution(degree);
            if (a.central_image.fixed_points() != 0) continue;
        } else if (rng() % 2 == 0) {
            Permutation p = perm_identity(degree);
            for (int i = 0; i + 1 < degree; i += 2) {
                if (rng() % 2 == 0) continue;
                p.images[static_cast<std::size_t>(i)] = i + 1;
                p.images[static_cast<std::size_t>(i + 1)] = i;
            }
            a.central_image = p;
        }
        for (auto& img : a.question_images) {
            Permutation p = perm_identity(degree);
            for (int tries = 0; tries < 50; ++tries) {
                p = [&] {
                    Permutation cand = perm_identity(degree);
                    for (int i = 0; i < degree; ++i) {
                        if (cand.images[static_cast<std::size_t>(i)] != i) continue;
                        if (rng() % 2 == 0) continue;
                        for (int j = i + 1; j < degree; ++j)
                            if (cand.images[static_cast<std::size_t>(j)] == j) {
                                cand.images[static_cast<std::size_t>(i)] = j;
                                cand.images[static_cast<std::size_t>(j)] = i;
                                break;
                            }
                    }
                    return cand;
                }();
                if (perms_commute(p, a.central_image)) break;
                p = perm_identity(degree);
            }
            img = p;
        }
        if (validate_action(a, params).empty()) return a;
    }
    throw std::logic_error("random_action: rejection sampling failed");
}

GameSpec corpus_all_accepting() { return all_accepting_game(GroupParams{{"x", "y"}, 1}); }

GameSpec corpus_all_rejecting() { return all_rejecting_game(GroupParams{{"x", "y"}, 1}); }

GameSpec corpus_consistency() {
    GameSpec g = all_rejecting_game(GroupParams{{"x", "y"}, 1});
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (std::uint32_t a = 0; a < 2; ++a)
                for (std::uint32_t b = 0; b < 2; ++b)
                    g.set_accept(x, y, a, b, x == y ? a == b : a != b);
    return g;
}

GameSpec corpus_triangle() {
    GameSpec g = all_rejecting_game(GroupParams{{"0", "1", "2"}, 1});
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            for (std::uint32_t a = 0; a < 2; ++a)
                for (std::uint32_t b = 0; b < 2; ++b)
                    g.set_accept(x, y, a, b, x == y ? a == b : a != b);
    return g;
}

LinearProgram random_boxed_lp(std::mt19937_64& rng, int max_vars, int max_rows) {
    LinearProgram lp;
    const int n = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_vars - 1));
    for (int i = 0; i < n; ++i) {
        const long lo = -static_cast<long>(rng() % 4);
        const long hi = lo + 1 + static_cast<long>(rng() % 6);
        lp.add_variable("x" + std::to_string(i), Rat(lo), Rat(hi));
        lp.objective[static_cast<std::size_t>(i)] = Rat(static_cast<long>(rng() % 11) - 5);
    }
    // An anchor point inside the box keeps most instances feasible; a minority
    // of rows ignore it so infeasible cases still occur.
    std::vector<Rat> anchor(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const Rat lo = *lp.lower[static_cast<std::size_t>(i)];
        const Rat hi = *lp.upper[static_cast<std::size_t>(i)];
        anchor[static_cast<std::size_t>(i)] = lo + Rat(static_cast<long>(rng() % 3)) * (hi - lo) / 2;
    }
    const int rows = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_rows - 1));
    for (int r = 0; r < rows; ++r) {
        std::vector<std::pair<int, Rat>> terms;
        Rat at_anchor(0);
        for (int i = 0; i < n; ++i) {
            const long c = static_cast<long>(rng() % 7) - 3;
            if (c != 0) {
                terms.emplace_back(i, Rat(c));
                at_anchor += Rat(c) * anchor[static_cast<std::size_t>(i)];
            }
        }
        if (terms.empty()) continue;
        const int kind = static_cast<int>(rng() % 8);
        const Relation rel = kind < 4 ? Relation::le : kind < 7 ? Relation::ge : Relation::eq;
        Rat rhs;
        if (rng() % 4 != 0) {
            const Rat slack = Rat(static_cast<long>(rng() % 5));
            rhs = rel == Relation::le ? at_anchor + slack
                  : rel == Relation::ge ? at_anchor - slack
                                        : at_anchor;
        } else {
            rhs = Rat(static_cast<long>(rng() % 17) - 4);
        }
        lp.add_row(std::move(terms), rel, std::move(rhs));
    }
    return lp;
}

}  // namespace detirs::test
