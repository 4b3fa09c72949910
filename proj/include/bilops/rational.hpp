#ifndef BILOPS_RATIONAL_HPP
#define BILOPS_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

#include "bilops/errors.hpp"

namespace bilops {

// Exact rational scalar.  mpq_class keeps gcd(|num|, den) = 1 and den > 0
// canonical through arithmetic; parsing re-canonicalizes explicitly.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw ConfigError("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Accepts "p", "-p", "p/q" with optional sign; q > 0 after canonicalization.
Rational parse_rational(const std::string& text);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

bool is_integer(const Rational& q);
bool is_nonneg_integer(const Rational& q);
// Precondition: is_integer and fits a long.
long to_long(const Rational& q);

// Falling factorial x(x-1)...(x-k+1); k = 0 gives 1.
Rational falling_factorial(const Rational& x, int k);

std::vector<Rational> parse_rational_list(const std::string& text, char sep = ',');

}  // namespace bilops

#endif
