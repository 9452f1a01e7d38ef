#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace mhaar {

using Rational = mpq_class;
using Integer = mpz_class;

// Strict "a/b" form; the slash is mandatory and b > 0.
Rational parse_rational(std::string_view text);

// Canonical "num/den" (den = 1 is still printed).
std::string to_string(const Rational& q);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);
double to_double(const Rational& q);

// m^k for any integer k.
Rational m_power(int m, long k);
Integer ipow(int base, unsigned long e);

// True when every prime factor of the reduced denominator divides m.
bool is_madic(const Rational& x, int m);

// Smallest k >= 0 with x * m^k integral. Throws InvalidArgument for non-m-adic x.
long madic_depth(const Rational& x, int m);

// Exact rational power q^e for integer e; q = 0 with e < 0 throws.
Rational rpow(const Rational& q, long e);

// Exact square root if q is a perfect rational square.
bool exact_sqrt(const Rational& q, Rational& out);

std::int64_t to_int64(const Integer& z);

} // namespace mhaar
