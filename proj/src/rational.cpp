#include "nodal/rational.hpp"

#include "nodal/errors.hpp"

#include <limits>

namespace nodal {

Rational make_rational(const BigInt& num, const BigInt& den)
{
    if (den == 0) throw ValidationError("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& value)
{
    return value.get_str();
}

std::string to_string(const BigInt& value)
{
    return value.get_str();
}

Rational parse_rational(std::string_view text)
{
    const auto bad = [&] { return ValidationError("malformed rational \"" + std::string(text) + "\""); };
    const auto valid_integer = [](std::string_view s, bool allow_sign) {
        if (s.empty()) return false;
        std::size_t i = 0;
        if (allow_sign && s[0] == '-') i = 1;
        if (i == s.size()) return false;
        if (s[i] == '0' && s.size() > i + 1) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };

    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!valid_integer(text, true) || text == "-0") throw bad();
        return Rational(BigInt(std::string(text)));
    }
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!valid_integer(num, true) || !valid_integer(den, false)) throw bad();
    const BigInt n{std::string(num)};
    const BigInt d{std::string(den)};
    if (d == 0) throw bad();
    Rational canon{n, d};
    canon.canonicalize();
    if (canon.get_den() == 1 || canon.get_num() != n || canon.get_den() != d) throw bad();
    return canon;
}

bool is_integral(const Rational& value)
{
    return value.get_den() == 1;
}

BigInt to_integer(const Rational& value)
{
    NODAL_CHECK(is_integral(value), "expected an integral rational, got " + to_string(value));
    return value.get_num();
}

long to_long(const BigInt& value)
{
    NODAL_CHECK(value.fits_slong_p(), "integer does not fit in a machine word: " + to_string(value));
    return value.get_si();
}

} // namespace nodal
