#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace obata {

/// Exact arbitrary-precision arithmetic. mpq_class keeps every value in
/// lowest terms with a positive denominator, which is exactly the invariant
/// the rest of the library leans on. No floating point anywhere.
using Integer = mpz_class;
using Rational = mpq_class;

using Vec = std::vector<Rational>;
using IVec = std::vector<Integer>;

/// Parse "p", "-p", or "p/q". Throws std::invalid_argument on malformed
/// input or zero denominator.
Rational rational_from_string(const std::string& s);

/// Canonical text form: "p" when the denominator is 1, else "p/q".
std::string rational_to_string(const Rational& q);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

/// Least common multiple of the denominators of v (>= 1).
Integer common_denominator(const Vec& v);

/// gcd of the entries' absolute values; 0 for the zero vector.
Integer content(const IVec& v);

}  // namespace obata
