#ifndef ALGINT_ZFACTOR_HPP
#define ALGINT_ZFACTOR_HPP

#include <utility>
#include <vector>

#include "algint/poly.hpp"
#include "algint/rational.hpp"

namespace algint {

struct QFactorization {
    Rational unit; // f = unit * prod factors[i].first ^ factors[i].second
    std::vector<std::pair<QPoly, int>> factors; // monic irreducible, deterministic order
};

// Complete factorization over Q (Zassenhaus: squarefree split, Berlekamp mod a
// small prime, Hensel lifting, subset recombination).
QFactorization factor_rational_poly(const QPoly& f);

bool is_irreducible_q(const QPoly& f);

// Rational roots of f (exact), deterministic order.
std::vector<Rational> rational_roots(const QPoly& f);

} // namespace algint

#endif
