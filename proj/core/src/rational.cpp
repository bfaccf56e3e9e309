#include "detirs/rational.hpp"

namespace detirs {

Rat rat_from_string(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("rational parse: empty input");
    std::size_t slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            Int num(text);
            return Rat(num);
        }
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        return make_rat(num, den);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("rational parse: malformed '" + text + "'");
    }
}

std::string rat_to_decimal(const Rat& x, int digits) {
    Int num = x.get_num();
    Int den = x.get_den();
    std::string sign;
    if (num < 0) {
        sign = "-";
        num = -num;
    }
    Int whole = num / den;
    Int rem = num % den;
    std::string out = sign + whole.get_str();
    if (rem == 0 || digits <= 0) return out;
    std::string frac;
    for (int i = 0; i < digits && rem != 0; ++i) {
        rem *= 10;
        Int d = rem / den;
        rem %= den;
        frac += d.get_str();
    }
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) out += "." + frac;
    return out;
}

}  // namespace detirs
