#ifndef ALGINT_QUOTIENT_HPP
#define ALGINT_QUOTIENT_HPP

#include <string>
#include <vector>

#include "algint/trace.hpp"

namespace algint {

// outer after inner; inner's target must be outer's source
Morphism compose_morphism(const Morphism& outer, const Morphism& inner);

// Substitute coordinates into a function: f(tx, ty).
FnElem compose_fn(const FnElem& f, const FnElem& tx, const FnElem& ty);

// Isomorphism from a genus-one hyperelliptic curve onto a short Weierstrass
// model v^2 = u^3 + a u + b, produced by expanding around one place at
// infinity.  For an even-degree model whose leading coefficient is not a
// square the computation passes through an extension of the coefficient
// field, and the target is defined there.
Morphism normalize_to_weierstrass(const CurvePtr& c, const std::string& label, FieldTower& tower);

struct QuotientSearch {
    // degree-two (or, for a genus-one input, degree-one) maps onto short
    // Weierstrass curves, deduplicated up to the sign of the v coordinate
    std::vector<Morphism> maps;
    // true when every elliptic quotient is guaranteed to appear; the
    // involution search below genus two makes no such promise
    bool complete = false;
};

// Involutions of y^2 = P(x) lying over x -> mu - x and x -> c/x, their
// genus-one quotients with an odd-degree model, and the composites of those
// quotient maps with the curve's involutions.
QuotientSearch find_elliptic_quotients(const CurvePtr& c, FieldTower& tower);

} // namespace algint

#endif
