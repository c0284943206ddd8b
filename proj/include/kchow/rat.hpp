#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace kchow::exact {

// mpq_class keeps every value canonical: positive denominator, reduced.
using Int = mpz_class;
using Rat = mpq_class;
using RatVec = std::vector<Rat>;

/// Canonical num/den. Throws std::invalid_argument on a zero denominator.
Rat make_rat(const Int& num, const Int& den);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rat& q);

/// Accepts integers ("-4"), fractions ("3/2") and finite decimals ("0.5",
/// "-1.25e-3"). Throws std::invalid_argument on anything else.
Rat parse_rat(std::string_view text);

inline int sign(const Rat& q) { return sgn(q); }
inline double to_double(const Rat& q) { return q.get_d(); }

bool is_zero(const RatVec& v);

/// Lexicographic order on coordinate vectors.
bool lex_less(const RatVec& a, const RatVec& b);

Rat dot(const RatVec& a, const RatVec& b);

/// Least common multiple of the denominators.
Int denominator_lcm(const RatVec& v);

}  // namespace kchow::exact
