#ifndef GPTCOMPAT_RATIONAL_HPP
#define GPTCOMPAT_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gptcompat {

/// Exact rational scalar. GMP keeps every value in lowest terms with a
/// positive denominator.
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

class ParseError : public std::runtime_error
{
  public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Parses "p", "-p" or "p/q" (decimal digits only). Zero denominators,
/// signs on the denominator, whitespace and decimal points are rejected.
Rational parse_rational(std::string_view text);

/// Renders as "p" or "p/q" in lowest terms.
std::string to_string(const Rational& q);

/// num/den in lowest terms; the two-argument mpq_class constructor does not
/// reduce, and unreduced values break comparisons.
Rational make_rational(long num, long den);

Rational abs(const Rational& q);

Rational dot(const RationalVector& a, const RationalVector& b);

} // namespace gptcompat

#endif
