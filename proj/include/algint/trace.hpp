#ifndef ALGINT_TRACE_HPP
#define ALGINT_TRACE_HPP

#include <optional>
#include <string>
#include <vector>

#include "algint/differential.hpp"

namespace algint {

// One monomial c * xl^a yl^b xr^c yr^d in the four affine coordinates of a
// product of two curves ("l" stands for the left factor, "r" for the right).
struct CorrMono {
    int xl = 0, yl = 0, xr = 0, yr = 0;
    AlgebraicNumber c;
};

struct CorrPoly {
    std::vector<CorrMono> terms;

    CorrPoly() = default;
    explicit CorrPoly(std::vector<CorrMono> t) : terms(std::move(t)) {}

    // partial derivative with respect to one coordinate slot (0..3 in the
    // order xl, yl, xr, yr)
    CorrPoly derivative(int slot) const;
    // coordinate slots actually present
    bool uses(int slot) const;
    CorrPoly swapped_sides() const;
};

// A curve in X_left x X_right cut out by polynomial relations.  Forms are
// traced from the left curve to the right one.
struct Correspondence {
    std::string label;
    CurvePtr left;
    CurvePtr right;
    std::vector<CorrPoly> rels;

    Correspondence transposed() const;
};

// The coordinate ring of the generic fiber of Z over the right curve: a
// finite-dimensional algebra over that curve's function field F, presented on
// the monomial basis x^i, x^j y in the left coordinates.  Components of Z
// sitting over a single right point do not meet the generic fiber, so they
// are invisible here; a zero-dimensional or infinite-dimensional outcome
// means the correspondence degenerates in this direction.
class FiberAlgebra {
public:
    explicit FiberAlgebra(const Correspondence& z);

    long dim() const { return n_; }

    // element q(x) + r(x) y reduced to coordinates on the monomial basis
    std::vector<FnElem> element(const Poly<FnElem>& q, const Poly<FnElem>& r) const;
    std::vector<FnElem> mul(const std::vector<FnElem>& a, const std::vector<FnElem>& b) const;
    std::vector<FnElem> one() const;
    // trace of multiplication by a
    FnElem trace_of(const std::vector<FnElem>& a) const;
    // unique b with a b = c, when it exists
    std::optional<std::vector<FnElem>> solve_mul(const std::vector<FnElem>& a,
                                                 const std::vector<FnElem>& c) const;
    // derivative dx_left / dx_right of the fiber coordinate, by implicit
    // differentiation of the relations
    std::vector<FnElem> coordinate_derivative() const;

private:
    CurvePtr base_, fiber_;
    bool has_y_ = false;          // fiber curve carries a y coordinate
    Poly<FnElem> p_, g_, alpha_;  // relation module is spanned by (p,0), (alpha,g)
    Poly<FnElem> rhs_;            // fiber curve's y^2 = rhs(x), lifted
    std::vector<CorrPoly> rels_;  // oriented so that the right side is the base
    long n_ = 0;

    std::pair<Poly<FnElem>, Poly<FnElem>> canonical(Poly<FnElem> u, Poly<FnElem> w) const;
    std::vector<FnElem> to_vec(const std::pair<Poly<FnElem>, Poly<FnElem>>& e) const;
    std::pair<Poly<FnElem>, Poly<FnElem>> from_vec(const std::vector<FnElem>& v) const;
};

// Checks that both projections of Z are generically finite of positive
// degree; throws FibralComponent otherwise.
void validate_correspondence(const Correspondence& z);

// Sum of f(P) dx_left/dx_right over the generic fiber P of Z above the right
// curve, as a differential there.  Inverse operation counts multiplicity: the
// graph of a morphism traces to the pullback in one orientation and to the
// pushforward in the other.
Differential trace_image(const Correspondence& z, const Differential& w);

// A morphism between curves, p |-> (x_image(p), y_image(p)); y_image is
// ignored when the target is a line.
struct Morphism {
    CurvePtr source, target;
    FnElem x_image, y_image;
};

// Checks that the coordinate images satisfy the target equation.
void validate_morphism(const Morphism& phi);

// w a form on phi's target; result lives on the source.
Differential pullback(const Morphism& phi, const Differential& w);

// Graph correspondence with left = source, right = target, so trace_image
// along it is the pushforward; transpose it to realize the pullback.
Correspondence graph_of(const Morphism& phi, const std::string& label);

long degree(const Morphism& phi);

// Evaluate a one-variable polynomial at a function-field element.
FnElem eval_poly_fn(const APoly& p, const FnElem& at);

} // namespace algint

#endif
