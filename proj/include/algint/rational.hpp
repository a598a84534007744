#ifndef ALGINT_RATIONAL_HPP
#define ALGINT_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "algint/errors.hpp"

namespace algint {

// Exact rationals.  mpq_class keeps values canonical (reduced, positive
// denominator), which is exactly the normalization the rest of the library
// assumes.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long n) { return Rational(n); }
inline Rational rat(long n, long d) {
    if (d == 0) throw DegenerateInput("rational with zero denominator");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

// In a field every division by a nonzero element is exact; named to satisfy
// generic ring code that insists on exactness.
inline Rational exact_div(const Rational& a, const Rational& b) {
    if (sgn(b) == 0) throw DegenerateInput("division by zero");
    return a / b;
}

// Canonical text form, e.g. "-3/2", "5".
inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& n) { return n.get_str(); }

inline Rational rational_from_string(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw DegenerateInput("bad rational literal '" + s + "'");
    q.canonicalize();
    return q;
}

// FNV-1a, used for problem hashes and deterministic seeds.
inline std::uint64_t fnv1a64(const std::string& data, std::uint64_t h = 14695981039346656037ULL) {
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace algint

#endif
