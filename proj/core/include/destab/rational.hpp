#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "destab/errors.hpp"

namespace destab {

// All arithmetic in this library is exact. Rat is an arbitrary-precision
// rational kept in canonical (lowest-terms) form by GMP.
using Rat = mpq_class;
using Int = mpz_class;
using Vec = std::vector<Rat>;

/// Builds p/q in canonical form (the two-argument mpq_class constructor
/// does not reduce on its own).
inline Rat frac(long num, long den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "p", "-p" or "p/q" into a canonical rational.
Rat parse_rat(const std::string& text);

/// Lowest-terms rendering: "p" when the denominator is 1, else "p/q".
std::string rat_str(const Rat& value);

double rat_to_double(const Rat& value);

Rat dot(const Vec& a, const Vec& b);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Rat& t, const Vec& v);
bool vec_is_zero(const Vec& v);

/// Canonical primitive integer form of a rational direction: multiply by the
/// unique positive rational making the entries coprime integers. The sign of
/// every entry is preserved, so a direction and its opposite stay distinct.
std::vector<Int> primitive_integer(const Vec& v);

/// Lexicographic order on integer vectors, used for deterministic sorts.
bool lex_less(const std::vector<Int>& a, const std::vector<Int>& b);

std::string int_vec_str(const std::vector<Int>& v);

} // namespace destab
