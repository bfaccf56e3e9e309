#include <benchmark/benchmark.h>

#include <random>

#include "detirs/games.hpp"
#include "detirs/hierarchy.hpp"
#include "detirs/lnplus.hpp"
#include "detirs/lp.hpp"
#include "detirs/permstrat.hpp"

namespace {

using namespace detirs;

GroupParams two_questions() { return GroupParams{{"x", "y"}, 1}; }

GameSpec consistency_game() {
    GameSpec g = all_rejecting_game(two_questions());
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (std::uint32_t a = 0; a < 2; ++a)
                for (std::uint32_t b = 0; b < 2; ++b)
                    g.set_accept(x, y, a, b, x == y ? a == b : a != b);
    return g;
}

void BM_WordMultiply(benchmark::State& state) {
    const auto p = GroupParams{{"x", "y", "z"}, 2};
    const WordSet b = ball(p, 3);
    std::size_t i = 0;
    for (auto _ : state) {
        const Word& lhs = b.elements[i % b.elements.size()];
        const Word& rhs = b.elements[(i * 7 + 3) % b.elements.size()];
        benchmark::DoNotOptimize(multiply(p, lhs, rhs));
        ++i;
    }
}
BENCHMARK(BM_WordMultiply);

void BM_Ball4(benchmark::State& state) {
    const auto p = two_questions();
    for (auto _ : state) benchmark::DoNotOptimize(ball(p, 4));
}
BENCHMARK(BM_Ball4);

void BM_ProjectionExpansion(benchmark::State& state) {
    const GroupParams p{{"x", "y"}, 3};
    for (auto _ : state) {
        const AlgebraElement prod =
            mul(expand_projection(p, 0, 5), expand_projection(p, 1, 2));
        benchmark::DoNotOptimize(prod);
    }
}
BENCHMARK(BM_ProjectionExpansion);

void BM_CharPoly12(benchmark::State& state) {
    const auto p = two_questions();
    PermutationAction a = trivial_action(p, 4);
    a.generator_image(0, 1) = perm_from_cycles(4, "(1 2)(3 4)");
    a.generator_image(1, 1) = perm_from_cycles(4, "(1 3)(2 4)");
    a.central_image = perm_from_cycles(4, "(1 4)(2 3)");
    AlgebraMatrix m = matrix_zero(p, 3);
    m.at(0, 0) = add(algebra_one(p), algebra_word(p, generator_word(p, 0, 1)));
    m.at(0, 1) = algebra_word(p, generator_word(p, 1, 1), Rat(-2));
    m.at(1, 2) = algebra_word(p, central_word());
    m.at(2, 0) = algebra_word(p, multiply(p, generator_word(p, 0, 1), generator_word(p, 1, 1)));
    m.at(2, 2) = algebra_word(p, identity_word(), Rat(2));
    for (auto _ : state) benchmark::DoNotOptimize(fk_logdet(a, m));
}
BENCHMARK(BM_CharPoly12);

void BM_LpSolve(benchmark::State& state) {
    LinearProgram lp;
    std::mt19937_64 rng(5);
    for (int i = 0; i < 12; ++i) {
        lp.add_variable("x" + std::to_string(i), Rat(0), Rat(1));
        lp.objective[static_cast<std::size_t>(i)] = Rat(static_cast<long>(rng() % 9) - 4);
    }
    for (int r = 0; r < 20; ++r) {
        std::vector<std::pair<int, Rat>> terms;
        for (int i = 0; i < 12; ++i) {
            const long c = static_cast<long>(rng() % 5) - 2;
            if (c != 0) terms.emplace_back(i, Rat(c));
        }
        lp.add_row(std::move(terms), Relation::le, Rat(2));
    }
    for (auto _ : state) benchmark::DoNotOptimize(solve(lp));
}
BENCHMARK(BM_LpSolve);

void BM_GPolyDegree32(benchmark::State& state) {
    LnPolyOptions opts;
    for (auto _ : state) benchmark::DoNotOptimize(g_poly(1, Rat(4), 32, opts));
}
BENCHMARK(BM_GPolyDegree32);

void BM_AlphaLevel1Subset(benchmark::State& state) {
    const GameSpec game = consistency_game();
    HierarchyOptions opts;
    opts.mode = HierarchyMode::subset;
    opts.include_det = false;
    for (auto _ : state) benchmark::DoNotOptimize(alpha(game, 1, opts));
}
BENCHMARK(BM_AlphaLevel1Subset);

void BM_AlphaLevel2TraceDet(benchmark::State& state) {
    const GameSpec game = consistency_game();
    HierarchyOptions opts;
    opts.mode = HierarchyMode::trace;
    opts.deg_cap = 1;
    opts.matrix_budget = 60;
    for (auto _ : state) benchmark::DoNotOptimize(alpha(game, 2, opts));
}
BENCHMARK(BM_AlphaLevel2TraceDet);

void BM_BetaDegree4(benchmark::State& state) {
    const GameSpec game = consistency_game();
    for (auto _ : state) benchmark::DoNotOptimize(search_beta(game, 4, 500, 7));
}
BENCHMARK(BM_BetaDegree4);

}  // namespace

BENCHMARK_MAIN();
