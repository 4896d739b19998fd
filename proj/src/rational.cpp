#include "bcs/rational.hpp"

#include <cctype>

namespace bcs {

std::string to_string(const Rational& r) {
    const Int num = boost::multiprecision::numerator(r);
    const Int den = boost::multiprecision::denominator(r);
    std::string out = num.str();
    if (den != 1) {
        out += '/';
        out += den.str();
    }
    return out;
}

Rational parse_rational(std::string_view text) {
    const auto fail = [&text]() -> Rational {
        throw ParseError("not a rational literal: \"" + std::string(text) + "\"");
    };
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && text[pos] == '-') {
        negative = true;
        ++pos;
    }
    const std::size_t num_begin = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        ++pos;
    }
    if (pos == num_begin) return fail();
    Int num{std::string(text.substr(num_begin, pos - num_begin))};
    Int den = 1;
    if (pos < text.size()) {
        if (text[pos] != '/') return fail();
        ++pos;
        const std::size_t den_begin = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
        if (pos == den_begin || pos != text.size()) return fail();
        den = Int{std::string(text.substr(den_begin))};
        if (den == 0) {
            throw ParseError("zero denominator in \"" + std::string(text) + "\"");
        }
    }
    if (negative) num = -num;
    return Rational(num, den);
}

Rational pow2(long k) {
    if (k >= 0) return Rational(Int(1) << k);
    return Rational(Int(1), Int(1) << (-k));
}

Rational largest_power_of_half_below(const Rational& bound) {
    if (!(bound > 0)) {
        throw DomainError("largest power of 1/2 below " + to_string(bound) +
                          " is undefined; a positive bound is required");
    }
    long e = 0;
    while (pow2(e) < bound) ++e;
    while (pow2(e) >= bound) --e;
    return pow2(e);
}

}  // namespace bcs
