#include "detirs/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace detirs {

namespace {

void require_same_params(const GroupParams& a, const GroupParams& b, const char* where) {
    if (!(a == b)) throw std::invalid_argument(std::string(where) + ": group parameter mismatch");
}

void insert_term(std::map<Word, Rat, WordLess>& terms, const Word& w, const Rat& c) {
    if (c == 0) return;
    auto [it, inserted] = terms.emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

}  // namespace

Rat AlgebraElement::coefficient(const Word& w) const {
    auto it = terms.find(w);
    return it == terms.end() ? Rat(0) : it->second;
}

bool AlgebraElement::has_integer_coefficients() const {
    for (const auto& [w, c] : terms)
        if (c.get_den() != 1) return false;
    return true;
}

AlgebraElement algebra_zero(const GroupParams& params) { return AlgebraElement{params, {}}; }

AlgebraElement algebra_one(const GroupParams& params) {
    return algebra_word(params, identity_word());
}

AlgebraElement algebra_word(const GroupParams& params, const Word& w, const Rat& coeff) {
    validate_word(params, w);
    AlgebraElement e{params, {}};
    if (coeff != 0) e.terms.emplace(w, coeff);
    return e;
}

AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b) {
    require_same_params(a.params, b.params, "algebra add");
    AlgebraElement out = a;
    for (const auto& [w, c] : b.terms) insert_term(out.terms, w, c);
    return out;
}

AlgebraElement sub(const AlgebraElement& a, const AlgebraElement& b) {
    return add(a, scale(b, Rat(-1)));
}

AlgebraElement scale(const AlgebraElement& a, const Rat& c) {
    AlgebraElement out{a.params, {}};
    if (c == 0) return out;
    for (const auto& [w, coeff] : a.terms) out.terms.emplace(w, coeff * c);
    return out;
}

AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b, std::size_t term_budget) {
    require_same_params(a.params, b.params, "algebra mul");
    AlgebraElement out{a.params, {}};
    for (const auto& [wa, ca] : a.terms) {
        for (const auto& [wb, cb] : b.terms) {
            insert_term(out.terms, multiply(a.params, wa, wb), ca * cb);
            if (out.terms.size() > term_budget)
                throw budget_exceeded("algebra mul: term budget exceeded");
        }
    }
    return out;
}

AlgebraElement star(const AlgebraElement& a) {
    AlgebraElement out{a.params, {}};
    for (const auto& [w, c] : a.terms) out.terms.emplace(inverse(w), c);
    return out;
}

std::string element_to_string(const AlgebraElement& a) {
    if (a.terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : a.terms) {
        if (!first) os << " + ";
        os << rat_to_string(c) << " * " << word_to_string(a.params, w);
        first = false;
    }
    return os.str();
}

namespace {

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

AlgebraElement element_from_string(const GroupParams& params, const std::string& text) {
    AlgebraElement out{params, {}};
    const std::string body = strip(text);
    if (body.empty()) throw std::invalid_argument("element parse: empty input");
    if (body == "0") return out;
    std::size_t pos = 0;
    while (pos < body.size()) {
        std::size_t next = body.find(" + ", pos);
        const std::string piece =
            strip(next == std::string::npos ? body.substr(pos) : body.substr(pos, next - pos));
        std::size_t starpos = piece.find('*');
        if (starpos == std::string::npos)
            throw std::invalid_argument("element parse: term '" + piece + "' lacks 'coeff * word'");
        const Rat coeff = rat_from_string(strip(piece.substr(0, starpos)));
        const Word w = word_from_string(params, strip(piece.substr(starpos + 1)));
        insert_term(out.terms, w, coeff);
        if (next == std::string::npos) break;
        pos = next + 3;
    }
    return out;
}

bool AlgebraMatrix::has_integer_coefficients() const {
    for (const auto& e : entries)
        if (!e.has_integer_coefficients()) return false;
    return true;
}

AlgebraMatrix matrix_zero(const GroupParams& params, int k) {
    if (k < 1) throw std::invalid_argument("matrix: size must be positive");
    AlgebraMatrix m{k, params, {}};
    m.entries.assign(static_cast<std::size_t>(k) * k, algebra_zero(params));
    return m;
}

AlgebraMatrix matrix_identity(const GroupParams& params, int k) {
    AlgebraMatrix m = matrix_zero(params, k);
    for (int i = 0; i < k; ++i) m.at(i, i) = algebra_one(params);
    return m;
}

AlgebraMatrix mat_add(const AlgebraMatrix& a, const AlgebraMatrix& b) {
    require_same_params(a.params, b.params, "mat_add");
    if (a.k != b.k) throw std::invalid_argument("mat_add: size mismatch");
    AlgebraMatrix out = a;
    for (std::size_t i = 0; i < out.entries.size(); ++i)
        out.entries[i] = add(out.entries[i], b.entries[i]);
    return out;
}

AlgebraMatrix mat_scale(const AlgebraMatrix& a, const Rat& c) {
    AlgebraMatrix out = a;
    for (auto& e : out.entries) e = scale(e, c);
    return out;
}

AlgebraMatrix mat_mul(const AlgebraMatrix& a, const AlgebraMatrix& b, std::size_t term_budget) {
    require_same_params(a.params, b.params, "mat_mul");
    if (a.k != b.k) throw std::invalid_argument("mat_mul: size mismatch");
    AlgebraMatrix out = matrix_zero(a.params, a.k);
    for (int i = 0; i < a.k; ++i)
        for (int j = 0; j < a.k; ++j) {
            AlgebraElement acc = algebra_zero(a.params);
            for (int l = 0; l < a.k; ++l)
                acc = add(acc, mul(a.at(i, l), b.at(l, j), term_budget));
            out.at(i, j) = std::move(acc);
        }
    return out;
}

AlgebraMatrix adjoint(const AlgebraMatrix& a) {
    AlgebraMatrix out = matrix_zero(a.params, a.k);
    for (int i = 0; i < a.k; ++i)
        for (int j = 0; j < a.k; ++j) out.at(i, j) = star(a.at(j, i));
    return out;
}

std::string matrix_to_string(const AlgebraMatrix& a) {
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < a.k; ++i) {
        if (i > 0) os << ", ";
        os << '[';
        for (int j = 0; j < a.k; ++j) {
            if (j > 0) os << ", ";
            os << element_to_string(a.at(i, j));
        }
        os << ']';
    }
    os << ']';
    return os.str();
}

AlgebraMatrix matrix_from_string(const GroupParams& params, const std::string& text) {
    const std::string body = strip(text);
    if (body.size() < 2 || body.front() != '[' || body.back() != ']')
        throw std::invalid_argument("matrix parse: missing outer brackets");
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> current_row;
    std::string current;
    int depth = 0;
    for (std::size_t i = 1; i + 1 < body.size(); ++i) {
        const char c = body[i];
        if (c == '[') {
            if (depth != 0) throw std::invalid_argument("matrix parse: nested too deep");
            ++depth;
            current_row.clear();
            current.clear();
        } else if (c == ']') {
            if (depth != 1) throw std::invalid_argument("matrix parse: stray ']'");
            --depth;
            current_row.push_back(strip(current));
            rows.push_back(current_row);
            current.clear();
        } else if (c == ',' && depth == 1) {
            current_row.push_back(strip(current));
            current.clear();
        } else if (depth == 1) {
            current += c;
        } else if (!std::isspace(static_cast<unsigned char>(c)) && c != ',') {
            throw std::invalid_argument("matrix parse: unexpected character between rows");
        }
    }
    if (rows.empty()) throw std::invalid_argument("matrix parse: no rows");
    const int k = static_cast<int>(rows.size());
    for (const auto& r : rows)
        if (static_cast<int>(r.size()) != k)
            throw std::invalid_argument("matrix parse: matrix must be square");
    AlgebraMatrix m = matrix_zero(params, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            m.at(i, j) = element_from_string(params, rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    return m;
}

Rat RationalPolynomial::eval(const Rat& t) const {
    Rat acc(0);
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * t + *it;
    return acc;
}

RationalPolynomial RationalPolynomial::derivative() const {
    RationalPolynomial d;
    for (std::size_t j = 1; j < coefficients.size(); ++j)
        d.coefficients.push_back(coefficients[j] * Rat(static_cast<long>(j)));
    d.trim();
    return d;
}

void RationalPolynomial::trim() {
    while (!coefficients.empty() && coefficients.back() == 0) coefficients.pop_back();
}

RationalPolynomial poly_add(const RationalPolynomial& p, const RationalPolynomial& q) {
    RationalPolynomial out;
    out.coefficients.resize(std::max(p.coefficients.size(), q.coefficients.size()), Rat(0));
    for (std::size_t i = 0; i < p.coefficients.size(); ++i) out.coefficients[i] += p.coefficients[i];
    for (std::size_t i = 0; i < q.coefficients.size(); ++i) out.coefficients[i] += q.coefficients[i];
    out.trim();
    return out;
}

RationalPolynomial poly_scale(const RationalPolynomial& p, const Rat& c) {
    RationalPolynomial out = p;
    for (auto& x : out.coefficients) x *= c;
    out.trim();
    return out;
}

std::string poly_to_string(const RationalPolynomial& p) {
    std::ostringstream os;
    os << "deg " << p.degree() << ":";
    for (const auto& c : p.coefficients) os << ' ' << rat_to_string(c);
    if (p.coefficients.empty()) os << " 0/1";
    return os.str();
}

RationalPolynomial poly_from_string(const std::string& text) {
    std::size_t colon = text.find(':');
    if (colon == std::string::npos || text.substr(0, 4) != "deg ")
        throw std::invalid_argument("polynomial parse: expected 'deg d: c0 c1 ...'");
    RationalPolynomial p;
    std::istringstream is(text.substr(colon + 1));
    std::string tok;
    while (is >> tok) p.coefficients.push_back(rat_from_string(tok));
    p.trim();
    return p;
}

AlgebraMatrix poly_apply(const RationalPolynomial& p, const AlgebraMatrix& x,
                         std::size_t term_budget) {
    AlgebraMatrix acc = matrix_zero(x.params, x.k);
    AlgebraMatrix power = matrix_identity(x.params, x.k);
    for (std::size_t j = 0; j < p.coefficients.size(); ++j) {
        if (j > 0) power = mat_mul(power, x, term_budget);
        if (p.coefficients[j] != 0) acc = mat_add(acc, mat_scale(power, p.coefficients[j]));
    }
    return acc;
}

std::vector<Word> LinearFunctionalOnWords::support() const {
    std::vector<Word> out;
    out.reserve(coeffs.size());
    for (const auto& [w, c] : coeffs) out.push_back(w);
    return out;
}

Rat LinearFunctionalOnWords::pair(const std::map<Word, Rat, WordLess>& tau) const {
    Rat acc(0);
    for (const auto& [w, c] : coeffs) {
        auto it = tau.find(w);
        if (it == tau.end())
            throw std::invalid_argument("functional pairing: tau missing word " +
                                        word_to_string(params, w));
        acc += c * it->second;
    }
    return acc;
}

LinearFunctionalOnWords trace_functional(const AlgebraMatrix& m) {
    LinearFunctionalOnWords f{m.params, {}};
    const Rat inv_k = make_rat(1, m.k);
    for (int i = 0; i < m.k; ++i)
        for (const auto& [w, c] : m.at(i, i).terms) insert_term(f.coeffs, w, c * inv_k);
    return f;
}

}  // namespace detirs
