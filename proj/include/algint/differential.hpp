#ifndef ALGINT_DIFFERENTIAL_HPP
#define ALGINT_DIFFERENTIAL_HPP

#include <optional>
#include <string>
#include <vector>

#include "algint/fnelem.hpp"

namespace algint {

// A rational differential f dx on a curve (dx is the exterior derivative of
// the chosen affine coordinate; every differential is of this shape because
// the function field has transcendence degree one).
class Differential {
public:
    Differential() = default;
    explicit Differential(FnElem f) : f_(std::move(f)) {}

    static Differential dx(const CurvePtr& c) { return Differential(FnElem::one(c)); }
    // d(g) = g' dx
    static Differential d_of(const FnElem& g) { return Differential(g.derivative()); }
    // dlog(g) = (g'/g) dx
    static Differential dlog(const FnElem& g) { return Differential(g.derivative() / g); }

    const FnElem& fn() const { return f_; }
    CurvePtr curve() const { return f_.curve(); }
    bool is_zero() const { return f_.is_zero(); }

    friend Differential operator+(const Differential& a, const Differential& b) {
        return Differential(a.f_ + b.f_);
    }
    friend Differential operator-(const Differential& a, const Differential& b) {
        return Differential(a.f_ - b.f_);
    }
    Differential operator-() const { return Differential(-f_); }
    friend Differential operator*(const FnElem& g, const Differential& a) {
        return Differential(g * a.f_);
    }
    friend Differential operator*(const AlgebraicNumber& s, const Differential& a) {
        return Differential(FnElem(s) * a.f_);
    }
    friend bool operator==(const Differential& a, const Differential& b) { return a.f_ == b.f_; }
    friend bool operator!=(const Differential& a, const Differential& b) { return !(a == b); }

    // Series of f(x(t), y(t)) x'(t), correct at least to O(t^prec).
    LaurentSeries expand_at(const Place& p, long prec) const;
    long order_at(const Place& p) const;
    AlgebraicNumber residue_at(const Place& p) const;

    std::string str() const;

private:
    FnElem f_;
};

// Effective divisor of pole orders (supported above the denominator and at
// infinity; everywhere else f dx is regular).
Divisor pole_divisor(const Differential& w, FieldTower& tower);

struct PlaceValue {
    Place place;
    AlgebraicNumber value;
};

// Residues at every pole, in place order.  Their sum is always zero.
std::vector<PlaceValue> residues(const Differential& w, FieldTower& tower);

enum class FormKind { First, Second, Third, Mixed };
FormKind classify(const Differential& w, FieldTower& tower);
std::string to_string(FormKind k);

// Basis of L(D) = { f : div(f) + D >= 0 }, deterministic.
std::vector<FnElem> riemann_roch_basis(const CurvePtr& c, const Divisor& d, FieldTower& tower);

// Basis of the forms with pole divisor bounded by m: { f dx : f in L(m + div dx) }.
std::vector<Differential> form_space(const CurvePtr& c, const Divisor& m, FieldTower& tower);

// Decompose target = sum coeffs[j] * gens[j] in the function field; on
// failure optionally reports a functional w with w(gens) = 0, w(target) != 0.
std::optional<std::vector<AlgebraicNumber>> fn_linear_solve(
    const FnElem& target, const std::vector<FnElem>& gens,
    std::vector<AlgebraicNumber>* witness = nullptr);

// Is w = d(gamma) for a rational function gamma?  When yes, primitive holds
// gamma (unique up to an additive constant; normalized with zero constant
// coordinate).  When no: either a nonzero residue witness (simple poles are a
// special case) or a linear obstruction after all residues vanish.
struct Exactness {
    bool exact = false;
    FnElem primitive;
    bool residue_obstruction = false;
    Place witness_place;
    AlgebraicNumber witness_residue;
};
Exactness exactness(const Differential& w, FieldTower& tower);

} // namespace algint

#endif
