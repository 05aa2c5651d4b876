#include "frugal/rational.hpp"

#include "frugal/errors.hpp"

#include <cctype>
#include <cmath>

namespace frugal {

namespace {

bool is_integer_literal(std::string_view text)
{
    if (!text.empty() && (text.front() == '-' || text.front() == '+'))
        text.remove_prefix(1);
    if (text.empty())
        return false;
    for (char ch : text)
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            return false;
    return true;
}

BigInt parse_integer(std::string_view text)
{
    if (!is_integer_literal(text))
        throw InputError("malformed rational component '" + std::string(text) + "'");
    if (text.front() == '+')
        text.remove_prefix(1);
    return BigInt(std::string(text), 10);
}

} // namespace

Rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_integer(text));

    BigInt num = parse_integer(text.substr(0, slash));
    BigInt den = parse_integer(text.substr(slash + 1));
    if (den == 0)
        throw InputError("zero denominator in '" + std::string(text) + "'");
    Rational result(num, den);
    result.canonicalize();
    return result;
}

std::string format_rational(const Rational& value)
{
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational rational_from_double(double value)
{
    if (!std::isfinite(value))
        throw InputError("non-finite value cannot be converted to a rational");
    return Rational(value);
}

} // namespace frugal
