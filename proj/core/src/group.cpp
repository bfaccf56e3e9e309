#include "detirs/group.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <unordered_set>

namespace detirs {

int GroupParams::question_index(const std::string& label) const {
    for (std::size_t i = 0; i < questions.size(); ++i)
        if (questions[i] == label) return static_cast<int>(i);
    return -1;
}

void validate_params(const GroupParams& params) {
    if (params.questions.empty()) throw std::invalid_argument("group params: empty question set");
    if (params.answer_width < 1 || params.answer_width > 31)
        throw std::invalid_argument("group params: answer width must be in [1, 31]");
    for (const auto& q : params.questions) {
        if (q.empty()) throw std::invalid_argument("group params: empty question label");
        for (char c : q)
            if (c == '.' || c == '{' || c == '}' || c == '*' || c == ',' || std::isspace(static_cast<unsigned char>(c)))
                throw std::invalid_argument("group params: label '" + q + "' contains reserved characters");
    }
    for (std::size_t i = 0; i < params.questions.size(); ++i)
        for (std::size_t j = i + 1; j < params.questions.size(); ++j)
            if (params.questions[i] == params.questions[j])
                throw std::invalid_argument("group params: duplicate question label '" + params.questions[i] + "'");
}

int Word::generator_length() const {
    int len = j_flag ? 1 : 0;
    for (const auto& b : blocks) len += std::popcount(b.bits);
    return len;
}

bool word_less(const Word& a, const Word& b) {
    const int la = a.generator_length();
    const int lb = b.generator_length();
    if (la != lb) return la < lb;
    if (a.blocks != b.blocks) return a.blocks < b.blocks;
    return a.j_flag < b.j_flag;
}

std::size_t WordHash::operator()(const Word& w) const {
    std::size_t h = 1469598103934665603ull;
    auto mix = [&h](std::size_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    for (const auto& b : w.blocks) {
        mix(static_cast<std::size_t>(b.question) + 0x9e3779b9u);
        mix(b.bits);
    }
    mix(w.j_flag ? 2u : 1u);
    return h;
}

void validate_word(const GroupParams& params, const Word& w) {
    const std::uint32_t full = (params.answer_width >= 31)
                                   ? 0x7fffffffu
                                   : ((1u << params.answer_width) - 1u);
    for (std::size_t i = 0; i < w.blocks.size(); ++i) {
        const Block& b = w.blocks[i];
        if (b.question < 0 || b.question >= params.question_count())
            throw std::invalid_argument("word: question index out of range");
        if (b.bits == 0) throw std::invalid_argument("word: empty block");
        if (b.bits & ~full) throw std::invalid_argument("word: block bits exceed answer width");
        if (i > 0 && w.blocks[i - 1].question == b.question)
            throw std::invalid_argument("word: adjacent blocks share a question");
    }
}

Word identity_word() { return Word{}; }

Word generator_word(const GroupParams& params, int question, int answer_index) {
    if (question < 0 || question >= params.question_count())
        throw std::invalid_argument("generator_word: question index out of range");
    if (answer_index < 1 || answer_index > params.answer_width)
        throw std::invalid_argument("generator_word: answer index out of range");
    Word w;
    w.blocks.push_back({question, 1u << (answer_index - 1)});
    return w;
}

Word central_word() {
    Word w;
    w.j_flag = true;
    return w;
}

Word multiply(const GroupParams& params, const Word& a, const Word& b) {
    validate_word(params, a);
    validate_word(params, b);
    Word out;
    out.blocks = a.blocks;
    for (const auto& blk : b.blocks) {
        if (!out.blocks.empty() && out.blocks.back().question == blk.question) {
            // Deleting a merged-to-empty block exposes the previous block to the
            // next factor, so the cascade happens through this same branch.
            out.blocks.back().bits ^= blk.bits;
            if (out.blocks.back().bits == 0) out.blocks.pop_back();
        } else {
            out.blocks.push_back(blk);
        }
    }
    out.j_flag = a.j_flag != b.j_flag;
    return out;
}

Word inverse(const Word& w) {
    Word out = w;
    std::reverse(out.blocks.begin(), out.blocks.end());
    return out;
}

Word conjugate(const GroupParams& params, const Word& w, const Word& g) {
    return multiply(params, multiply(params, g, w), inverse(g));
}

std::string word_to_string(const GroupParams& params, const Word& w) {
    validate_word(params, w);
    std::ostringstream os;
    if (w.blocks.empty()) {
        os << 'e';
    } else {
        for (std::size_t i = 0; i < w.blocks.size(); ++i) {
            if (i > 0) os << '.';
            os << params.questions[static_cast<std::size_t>(w.blocks[i].question)] << '{';
            bool first = true;
            for (int bit = 0; bit < params.answer_width; ++bit) {
                if (w.blocks[i].bits & (1u << bit)) {
                    if (!first) os << ',';
                    os << (bit + 1);
                    first = false;
                }
            }
            os << '}';
        }
    }
    if (w.j_flag) os << "*J";
    return os.str();
}

Word word_from_string(const GroupParams& params, const std::string& text) {
    std::string body = text;
    Word w;
    auto fail = [&text]() -> void {
        throw std::invalid_argument("word parse: malformed '" + text + "'");
    };
    if (body.size() >= 2 && body.substr(body.size() - 2) == "*J") {
        w.j_flag = true;
        body = body.substr(0, body.size() - 2);
    }
    if (body == "e") {
        validate_word(params, w);
        return w;
    }
    std::size_t pos = 0;
    while (pos < body.size()) {
        std::size_t brace = body.find('{', pos);
        if (brace == std::string::npos) fail();
        const std::string label = body.substr(pos, brace - pos);
        const int q = params.question_index(label);
        if (q < 0) throw std::invalid_argument("word parse: unknown question '" + label + "'");
        std::size_t close = body.find('}', brace);
        if (close == std::string::npos) fail();
        std::uint32_t bits = 0;
        std::string inner = body.substr(brace + 1, close - brace - 1);
        std::istringstream is(inner);
        std::string item;
        while (std::getline(is, item, ',')) {
            const int idx = std::stoi(item);
            if (idx < 1 || idx > params.answer_width) fail();
            bits |= 1u << (idx - 1);
        }
        if (bits == 0) fail();
        w.blocks.push_back({q, bits});
        pos = close + 1;
        if (pos < body.size()) {
            if (body[pos] != '.') fail();
            ++pos;
        }
    }
    validate_word(params, w);
    return w;
}

bool WordSet::contains(const Word& w) const { return index_of(w) >= 0; }

int WordSet::index_of(const Word& w) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), w, WordLess{});
    if (it != elements.end() && *it == w) return static_cast<int>(it - elements.begin());
    return -1;
}

bool WordSet::is_subset_of(const WordSet& other) const {
    if (!(params == other.params)) return false;
    for (const auto& w : elements)
        if (!other.contains(w)) return false;
    return true;
}

WordSet make_wordset(const GroupParams& params, std::vector<Word> words) {
    validate_params(params);
    words.push_back(identity_word());
    const std::size_t n = words.size();
    for (std::size_t i = 0; i < n; ++i) words.push_back(inverse(words[i]));
    for (const auto& w : words) validate_word(params, w);
    std::sort(words.begin(), words.end(), WordLess{});
    words.erase(std::unique(words.begin(), words.end()), words.end());
    return WordSet{params, std::move(words)};
}

WordSet ball(const GroupParams& params, int radius, bool with_central) {
    validate_params(params);
    if (radius < 0) throw std::invalid_argument("ball: negative radius");
    std::vector<Word> generators;
    for (int q = 0; q < params.question_count(); ++q)
        for (int i = 1; i <= params.answer_width; ++i)
            generators.push_back(generator_word(params, q, i));
    if (with_central) generators.push_back(central_word());

    std::unordered_set<Word, WordHash> seen;
    std::vector<Word> frontier{identity_word()};
    seen.insert(identity_word());
    for (int r = 0; r < radius; ++r) {
        std::vector<Word> next;
        for (const auto& w : frontier) {
            for (const auto& g : generators) {
                Word p = multiply(params, w, g);
                if (seen.insert(p).second) next.push_back(p);
            }
        }
        frontier = std::move(next);
    }
    std::vector<Word> all(seen.begin(), seen.end());
    std::sort(all.begin(), all.end(), WordLess{});
    return WordSet{params, std::move(all)};
}

WordSet product_closure(const WordSet& base, int depth, std::size_t size_budget) {
    if (depth < 1) throw std::invalid_argument("product_closure: depth must be >= 1");
    std::unordered_set<Word, WordHash> seen(base.elements.begin(), base.elements.end());
    seen.insert(identity_word());
    std::vector<Word> frontier(seen.begin(), seen.end());
    for (int d = 1; d < depth; ++d) {
        std::vector<Word> next;
        for (const auto& w : frontier) {
            for (const auto& g : base.elements) {
                Word p = multiply(base.params, w, g);
                if (seen.insert(p).second) {
                    if (seen.size() > size_budget)
                        throw budget_exceeded("product_closure: size budget " +
                                              std::to_string(size_budget) + " exceeded");
                    next.push_back(p);
                }
            }
        }
        if (next.empty()) break;
        frontier = std::move(next);
    }
    std::vector<Word> all(seen.begin(), seen.end());
    std::sort(all.begin(), all.end(), WordLess{});
    return WordSet{base.params, std::move(all)};
}

}  // namespace detirs
