#include "detirs/games.hpp"

#include <bit>
#include <fstream>
#include <sstream>

namespace detirs {

namespace {

std::size_t table_index(const GroupParams& params, int x, int y, std::uint32_t a,
                        std::uint32_t b) {
    const std::size_t n = 1u << params.answer_width;
    const std::size_t qn = static_cast<std::size_t>(params.question_count());
    return ((static_cast<std::size_t>(x) * qn + y) * n + a) * n + b;
}

void require_inputs(const GroupParams& params, int x, int y, std::uint32_t a, std::uint32_t b) {
    if (x < 0 || x >= params.question_count() || y < 0 || y >= params.question_count())
        throw std::invalid_argument("game: question index out of range");
    const std::uint32_t n = 1u << params.answer_width;
    if (a >= n || b >= n) throw std::invalid_argument("game: answer out of range");
}

}  // namespace

Rat GameSpec::q(int x, int y) const {
    auto it = q_dist.find({x, y});
    return it == q_dist.end() ? Rat(0) : it->second;
}

bool GameSpec::accepts(int x, int y, std::uint32_t a, std::uint32_t b) const {
    require_inputs(params, x, y, a, b);
    return accept_table[table_index(params, x, y, a, b)] != 0;
}

void GameSpec::set_accept(int x, int y, std::uint32_t a, std::uint32_t b, bool value) {
    require_inputs(params, x, y, a, b);
    accept_table[table_index(params, x, y, a, b)] = value ? 1 : 0;
}

GameSpec make_game(GroupParams params, std::map<std::pair<int, int>, Rat> q_dist,
                   std::vector<std::uint8_t> accept_table) {
    validate_params(params);
    if (params.answer_width > 12)
        throw budget_exceeded("game: decider table too large for answer width " +
                              std::to_string(params.answer_width));
    const std::size_t n = 1u << params.answer_width;
    const std::size_t expected =
        static_cast<std::size_t>(params.question_count()) * params.question_count() * n * n;
    if (accept_table.size() != expected)
        throw std::invalid_argument("game: decider table has wrong size");
    Rat total(0);
    for (const auto& [pair, prob] : q_dist) {
        if (pair.first < 0 || pair.first >= params.question_count() || pair.second < 0 ||
            pair.second >= params.question_count())
            throw std::invalid_argument("game: q references unknown question");
        if (prob < 0) throw std::invalid_argument("game: negative question probability");
        total += prob;
    }
    if (total != 1) throw std::invalid_argument("game: question distribution sums to " +
                                                rat_to_string(total) + ", not 1");
    return GameSpec{std::move(params), std::move(q_dist), std::move(accept_table)};
}

namespace {

GameSpec constant_game(const GroupParams& params, bool accept) {
    const std::size_t n = 1u << params.answer_width;
    const int qn = params.question_count();
    std::vector<std::uint8_t> table(static_cast<std::size_t>(qn) * qn * n * n, accept ? 1 : 0);
    std::map<std::pair<int, int>, Rat> q;
    const Rat each = make_rat(1, static_cast<long>(qn) * qn);
    for (int x = 0; x < qn; ++x)
        for (int y = 0; y < qn; ++y) q[{x, y}] = each;
    return make_game(params, std::move(q), std::move(table));
}

}  // namespace

GameSpec all_accepting_game(const GroupParams& params) { return constant_game(params, true); }
GameSpec all_rejecting_game(const GroupParams& params) { return constant_game(params, false); }

Rat StrategyTable::at(int x, int y, std::uint32_t a, std::uint32_t b) const {
    require_inputs(params, x, y, a, b);
    return p[table_index(params, x, y, a, b)];
}

Rat& StrategyTable::at(int x, int y, std::uint32_t a, std::uint32_t b) {
    require_inputs(params, x, y, a, b);
    return p[table_index(params, x, y, a, b)];
}

StrategyTable make_strategy_table(const GroupParams& params) {
    const std::size_t n = 1u << params.answer_width;
    const std::size_t qn = static_cast<std::size_t>(params.question_count());
    return StrategyTable{params, std::vector<Rat>(qn * qn * n * n, Rat(0))};
}

std::string validate_strategy_table(const GameSpec& game, const StrategyTable& table) {
    const std::uint32_t n = game.answer_count();
    for (int x = 0; x < game.params.question_count(); ++x)
        for (int y = 0; y < game.params.question_count(); ++y) {
            Rat sum(0);
            for (std::uint32_t a = 0; a < n; ++a)
                for (std::uint32_t b = 0; b < n; ++b) {
                    const Rat v = table.at(x, y, a, b);
                    if (v < 0)
                        return "p(" + format_answer_bits(game.params, a) + "," +
                               format_answer_bits(game.params, b) + "|" +
                               game.params.questions[x] + "," + game.params.questions[y] +
                               ") is negative";
                    sum += v;
                }
            if (game.q(x, y) > 0 && sum != 1)
                return "p(.|" + game.params.questions[x] + "," + game.params.questions[y] +
                       ") sums to " + rat_to_string(sum);
        }
    return "";
}

Rat table_value(const GameSpec& game, const StrategyTable& table) {
    Rat acc(0);
    const std::uint32_t n = game.answer_count();
    for (const auto& [pair, prob] : game.q_dist) {
        if (prob == 0) continue;
        for (std::uint32_t a = 0; a < n; ++a)
            for (std::uint32_t b = 0; b < n; ++b)
                if (game.accepts(pair.first, pair.second, a, b))
                    acc += prob * table.at(pair.first, pair.second, a, b);
    }
    return acc;
}

AlgebraElement expand_projection(const GroupParams& params, int question, std::uint32_t answer) {
    require_inputs(params, question, question, answer, answer);
    AlgebraElement out{params, {}};
    const std::uint32_t subsets = 1u << params.answer_width;
    const Rat norm = make_rat(Int(1), pow2(params.answer_width).get_num());
    for (std::uint32_t s = 0; s < subsets; ++s) {
        Word w;
        if (s != 0) w.blocks.push_back({question, s});
        const int sign = std::popcount(answer & s) % 2 == 0 ? 1 : -1;
        out.terms[w] += norm * sign;
        if (out.terms[w] == 0) out.terms.erase(w);
    }
    return out;
}

LinearFunctionalOnWords answer_probability_functional(const GroupParams& params, int x, int y,
                                                      std::uint32_t a, std::uint32_t b) {
    AlgebraElement prod =
        mul(expand_projection(params, x, a), expand_projection(params, y, b));
    AlgebraElement one_minus_j =
        sub(algebra_one(params), algebra_word(params, central_word()));
    AlgebraElement expanded = mul(one_minus_j, prod);
    return LinearFunctionalOnWords{params, std::move(expanded.terms)};
}

LinearFunctionalOnWords strategy_functional(const GameSpec& game) {
    AlgebraElement acc = algebra_zero(game.params);
    const std::uint32_t n = game.answer_count();
    AlgebraElement one_minus_j =
        sub(algebra_one(game.params), algebra_word(game.params, central_word()));
    for (const auto& [pair, prob] : game.q_dist) {
        if (prob == 0) continue;
        AlgebraElement pair_sum = algebra_zero(game.params);
        for (std::uint32_t a = 0; a < n; ++a)
            for (std::uint32_t b = 0; b < n; ++b)
                if (game.accepts(pair.first, pair.second, a, b))
                    pair_sum = add(pair_sum, mul(expand_projection(game.params, pair.first, a),
                                                 expand_projection(game.params, pair.second, b)));
        acc = add(acc, scale(mul(one_minus_j, pair_sum), prob));
    }
    return LinearFunctionalOnWords{game.params, std::move(acc.terms)};
}

WordSet support_set(const GameSpec& game) {
    return make_wordset(game.params, strategy_functional(game).support());
}

WordSet strategy_support(const GameSpec& game) {
    std::vector<Word> words;
    for (const auto& [pair, prob] : game.q_dist) {
        if (prob == 0) continue;
        // The word set of the p expansion does not depend on (a, b).
        auto f = answer_probability_functional(game.params, pair.first, pair.second, 0, 0);
        for (auto& w : f.support()) words.push_back(std::move(w));
    }
    return make_wordset(game.params, std::move(words));
}

Rat value(const GameSpec& game, const std::map<Word, Rat, WordLess>& tau) {
    return strategy_functional(game).pair(tau);
}

Rat classical_value_bruteforce(const GameSpec& game, std::size_t budget) {
    const int qn = game.params.question_count();
    const std::uint32_t n = game.answer_count();
    double total = 1;
    for (int i = 0; i < qn; ++i) {
        total *= n;
        if (total > static_cast<double>(budget))
            throw budget_exceeded("classical value: assignment space exceeds budget");
    }
    std::vector<std::uint32_t> f(static_cast<std::size_t>(qn), 0);
    Rat best(0);
    bool first = true;
    while (true) {
        Rat v(0);
        for (const auto& [pair, prob] : game.q_dist)
            if (prob != 0 && game.accepts(pair.first, pair.second, f[pair.first], f[pair.second]))
                v += prob;
        if (first || v > best) best = v;
        first = false;
        int i = 0;
        for (; i < qn; ++i) {
            if (++f[i] < n) break;
            f[i] = 0;
        }
        if (i == qn) break;
    }
    return best;
}

std::string format_answer_bits(const GroupParams& params, std::uint32_t a) {
    std::string s;
    for (int i = 0; i < params.answer_width; ++i) s += (a & (1u << i)) ? '1' : '0';
    return s;
}

std::uint32_t parse_answer_bits(const GroupParams& params, const std::string& text) {
    if (static_cast<int>(text.size()) != params.answer_width)
        throw std::invalid_argument("answer bits '" + text + "' do not match width " +
                                    std::to_string(params.answer_width));
    std::uint32_t a = 0;
    for (int i = 0; i < params.answer_width; ++i) {
        if (text[i] == '1')
            a |= 1u << i;
        else if (text[i] != '0')
            throw std::invalid_argument("answer bits '" + text + "' contain non-binary digit");
    }
    return a;
}

GameSpec parse_game(std::istream& in) {
    GroupParams params;
    bool have_questions = false, have_bits = false;
    std::map<std::pair<int, int>, Rat> q_dist;
    struct AcceptLine {
        std::string x, y, a, b;
    };
    std::vector<AcceptLine> accepts;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream is(line);
        std::string key;
        if (!(is >> key)) continue;
        auto fail = [&](const std::string& msg) -> void {
            throw std::invalid_argument("game parse line " + std::to_string(lineno) + ": " + msg);
        };
        if (key == "questions:") {
            std::string label;
            while (is >> label) params.questions.push_back(label);
            if (params.questions.empty()) fail("no question labels");
            have_questions = true;
        } else if (key == "bits:") {
            if (!(is >> params.answer_width)) fail("missing bit count");
            have_bits = true;
        } else if (key == "q:") {
            if (!have_questions || !have_bits) fail("q before questions/bits header");
            std::string lx, ly, prob;
            if (!(is >> lx >> ly >> prob)) fail("expected 'q: x y p/q'");
            const int x = params.question_index(lx);
            const int y = params.question_index(ly);
            if (x < 0 || y < 0) fail("unknown question label");
            if (q_dist.count({x, y})) fail("duplicate q entry");
            q_dist[{x, y}] = rat_from_string(prob);
        } else if (key == "accept:") {
            if (!have_questions || !have_bits) fail("accept before questions/bits header");
            AcceptLine al;
            if (!(is >> al.x >> al.y >> al.a >> al.b)) fail("expected 'accept: x y a b'");
            accepts.push_back(al);
        } else {
            fail("unknown directive '" + key + "'");
        }
    }
    if (!have_questions || !have_bits)
        throw std::invalid_argument("game parse: missing questions/bits header");
    validate_params(params);
    const std::size_t n = 1u << params.answer_width;
    std::vector<std::uint8_t> table(
        static_cast<std::size_t>(params.question_count()) * params.question_count() * n * n, 0);
    GameSpec game = make_game(params, std::move(q_dist), std::move(table));
    for (const auto& al : accepts) {
        const int x = params.question_index(al.x);
        const int y = params.question_index(al.y);
        if (x < 0 || y < 0)
            throw std::invalid_argument("game parse: accept references unknown question");
        game.set_accept(x, y, parse_answer_bits(params, al.a), parse_answer_bits(params, al.b),
                        true);
    }
    return game;
}

GameSpec parse_game_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open game file '" + path + "'");
    return parse_game(in);
}

std::string format_game(const GameSpec& game) {
    std::ostringstream os;
    os << "questions:";
    for (const auto& label : game.params.questions) os << ' ' << label;
    os << "\nbits: " << game.params.answer_width << "\n";
    for (const auto& [pair, prob] : game.q_dist)
        if (prob != 0)
            os << "q: " << game.params.questions[pair.first] << ' '
               << game.params.questions[pair.second] << ' ' << rat_to_string(prob) << "\n";
    const std::uint32_t n = game.answer_count();
    for (int x = 0; x < game.params.question_count(); ++x)
        for (int y = 0; y < game.params.question_count(); ++y)
            for (std::uint32_t a = 0; a < n; ++a)
                for (std::uint32_t b = 0; b < n; ++b)
                    if (game.accepts(x, y, a, b))
                        os << "accept: " << game.params.questions[x] << ' '
                           << game.params.questions[y] << ' ' << format_answer_bits(game.params, a)
                           << ' ' << format_answer_bits(game.params, b) << "\n";
    return os.str();
}

}  // namespace detirs
