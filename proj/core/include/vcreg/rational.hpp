#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace vcreg {

/// Exact rational backed by GMP. All measures, densities and energies use it.
using Rational = mpq_class;
using Integer = mpz_class;

/// num/den, canonicalized. Throws DomainError on den == 0.
Rational make_rational(std::int64_t num, std::int64_t den);
Rational make_rational(const Integer& num, const Integer& den);

/// Parses "p/q", an integer, or a decimal literal such as "0.25" exactly.
Rational parse_rational(const std::string& text);

inline double to_double(const Rational& q) { return q.get_d(); }

std::string to_string(const Rational& q);

} // namespace vcreg
