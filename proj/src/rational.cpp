#include "esp/rational.hpp"

#include <stdexcept>

namespace esp {

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator: " + text);
        return Rational(num, den);
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        const std::size_t places = text.size() - dot - 1;
        if (digits.empty() || digits == "-") throw std::invalid_argument("bad rational: " + text);
        BigInt num(digits);
        BigInt den = 1;
        for (std::size_t i = 0; i < places; ++i) den *= 10;
        return Rational(num, den);
    }
    return Rational(BigInt(text));
}

BigInt ceil_rational(const Rational& r) {
    BigInt num = numerator(r);
    BigInt den = denominator(r);
    BigInt q = num / den;
    if (q * den < num) ++q;
    return q;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

} // namespace esp
