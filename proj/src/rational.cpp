#include "gptcompat/rational.hpp"

#include <cctype>

namespace gptcompat {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char ch : s)
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            return false;
    return true;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && body.front() == '-') {
        negative = true;
        body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        throw ParseError("malformed rational: \"" + std::string(text) + "\"");

    mpz_class p(std::string(num), 10);
    mpz_class q(std::string(den), 10);
    if (q == 0)
        throw ParseError("zero denominator in rational: \"" + std::string(text) + "\"");
    Rational out(negative ? mpz_class(-p) : p, q);
    out.canonicalize();
    return out;
}

std::string to_string(const Rational& q)
{
    return q.get_str(10);
}

Rational make_rational(long num, long den)
{
    if (den == 0)
        throw std::invalid_argument("make_rational: zero denominator");
    Rational out(num, den);
    out.canonicalize();
    return out;
}

Rational abs(const Rational& q)
{
    return sgn(q) < 0 ? Rational(-q) : q;
}

Rational dot(const RationalVector& a, const RationalVector& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("dot: length mismatch");
    Rational acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += a[i] * b[i];
    return acc;
}

} // namespace gptcompat
