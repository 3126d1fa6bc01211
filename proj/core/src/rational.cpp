#include "vcreg/rational.hpp"

#include "vcreg/errors.hpp"

#include <cctype>

namespace vcreg {

Rational make_rational(std::int64_t num, std::int64_t den)
{
    if (den == 0)
        throw DomainError("rational with zero denominator");
    Rational q{Integer{static_cast<long>(num)}, Integer{static_cast<long>(den)}};
    q.canonicalize();
    return q;
}

Rational make_rational(const Integer& num, const Integer& den)
{
    if (den == 0)
        throw DomainError("rational with zero denominator");
    Rational q{num, den};
    q.canonicalize();
    return q;
}

Rational parse_rational(const std::string& text)
{
    if (text.empty())
        throw ParseError("empty rational literal");

    if (const auto slash = text.find('/'); slash != std::string::npos) {
        Integer num, den;
        if (num.set_str(text.substr(0, slash), 10) != 0 || den.set_str(text.substr(slash + 1), 10) != 0)
            throw ParseError("malformed rational literal: " + text);
        return make_rational(num, den);
    }

    // Decimal literal, parsed digit by digit so that "0.1" is exactly 1/10.
    std::size_t i = 0;
    bool negative = false;
    if (text[i] == '-' || text[i] == '+') {
        negative = text[i] == '-';
        ++i;
    }
    Integer num = 0;
    Integer den = 1;
    bool seen_digit = false;
    bool seen_point = false;
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '.' && !seen_point) {
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            seen_digit = true;
            num = num * 10 + (c - '0');
            if (seen_point)
                den *= 10;
        } else {
            throw ParseError("malformed rational literal: " + text);
        }
    }
    if (!seen_digit)
        throw ParseError("malformed rational literal: " + text);
    if (negative)
        num = -num;
    return make_rational(num, den);
}

std::string to_string(const Rational& q)
{
    return q.get_str();
}

} // namespace vcreg
