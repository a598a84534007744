#ifndef ALGINT_NUMERIC_HPP
#define ALGINT_NUMERIC_HPP

#include <optional>
#include <vector>

#include "algint/bigfloat.hpp"
#include "algint/differential.hpp"
#include "algint/numberfield.hpp"

namespace algint {

// Complex roots of sum c[k] z^k, found simultaneously and returned sorted by
// (re, im).  The input must be squarefree for full accuracy.
std::vector<BigComplex> poly_roots(const std::vector<BigComplex>& coeffs, long prec);

// A fixed complex embedding of a number field, anchored at one root of the
// field's defining polynomial.  Every algebraic number that lives in the
// field (or below it) maps through the same root, so arithmetic identities
// survive the embedding.
class Embedding {
public:
    // leaf == nullptr embeds plain rationals only.
    Embedding(const NumberField::Ptr& leaf, long digits, size_t root_index = 0);

    BigComplex operator()(const AlgebraicNumber& a) const;
    BigComplex operator()(const Rational& q) const { return BigComplex::from_rational(q, prec_); }

    long prec() const { return prec_; }
    const BigComplex& gen() const { return gen_; }

private:
    NumberField::Ptr leaf_;
    BigComplex gen_;
    long prec_ = 64;
};

// Piecewise-linear path in the x-plane.  On a hyperelliptic curve y0 selects
// the branch above xs[0]; the branch is then continued node by node.
struct NumericPath {
    std::vector<BigComplex> xs;
    BigComplex y0;
};

// f(x, y) for given coordinate values.
BigComplex eval_fn(const FnElem& f, const BigComplex& x, const BigComplex& y, const Embedding& emb);

// Value of a truncated local series at a complex parameter value.
BigComplex eval_series(const LaurentSeries& s, const BigComplex& t, const Embedding& emb);

// Integral of w along the path, by tanh-sinh quadrature on each segment.
// Integrable singularities at path endpoints are fine; a pole or branch
// point in the interior of a segment is not.  If y_end is non-null it
// receives the tracked branch value above the final vertex.
BigComplex integrate_form(const Differential& w, const NumericPath& path, const Embedding& emb,
                          long digits, BigComplex* y_end = nullptr);

// Residue of w at a place, as a contour integral over a small polygon that
// winds ramification() times around the place, counterclockwise around a
// finite center and clockwise around infinity.
BigComplex numeric_residue(const Differential& w, const Place& p, const Embedding& emb, long digits);

// x-values over which w can be singular: zeros of its denominator plus, on a
// hyperelliptic curve, the branch points.
std::vector<BigComplex> singular_x_values(const Differential& w, const Embedding& emb);

// Integer relation sum m_i vals_i = 0 with |m_i| <= height_bound, detected by
// lattice reduction and confirmed against the values; nullopt when no
// relation of that height exists at this precision.  Throws PrecisionTooLow
// when a candidate is too close to call.
std::optional<std::vector<Integer>> integer_relation(const std::vector<BigComplex>& vals,
                                                     long digits, const Integer& height_bound);

// Deterministic random polyline with every segment kept away from the given
// points, seeded for reproducibility.  On a hyperelliptic curve y0 is the
// principal branch above the start.
NumericPath random_path(const CurvePtr& c, const Embedding& emb, unsigned long seed,
                        const std::vector<BigComplex>& avoid, long digits);

} // namespace algint

#endif
