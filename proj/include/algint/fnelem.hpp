#ifndef ALGINT_FNELEM_HPP
#define ALGINT_FNELEM_HPP

#include <string>

#include "algint/curve.hpp"

namespace algint {

// Element of the function field of a curve, kept in the canonical form
// (a(x) + b(x) y) / c(x) with c monic and gcd(a, b, c) = 1; b = 0 on a line.
// This normal form is unique, so equality is componentwise.  A curveless
// constant (curve() == nullptr) mixes with elements of any curve, which lets
// Poly<FnElem> satisfy its field-element requirements.
class FnElem {
public:
    FnElem() : FnElem(AlgebraicNumber(0)) {}
    FnElem(long n) : FnElem(AlgebraicNumber(n)) {} // NOLINT
    explicit FnElem(const AlgebraicNumber& v);
    FnElem(CurvePtr curve, APoly a, APoly b, APoly c);

    static FnElem zero(const CurvePtr& c) { return FnElem(c, APoly(), APoly(), APoly(AlgebraicNumber(1))); }
    static FnElem one(const CurvePtr& c) { return FnElem(c, APoly(AlgebraicNumber(1)), APoly(), APoly(AlgebraicNumber(1))); }
    static FnElem constant(const CurvePtr& c, const AlgebraicNumber& v) {
        return FnElem(c, APoly(v), APoly(), APoly(AlgebraicNumber(1)));
    }
    static FnElem x_of(const CurvePtr& c) {
        return FnElem(c, APoly::var(), APoly(), APoly(AlgebraicNumber(1)));
    }
    static FnElem y_of(const CurvePtr& c);
    // a(x)/c(x) with no y part
    static FnElem rational(const CurvePtr& c, const APoly& a, const APoly& den) {
        return FnElem(c, a, APoly(), den);
    }

    const CurvePtr& curve() const { return curve_; }
    const APoly& num_x() const { return a_; }  // coefficient of 1
    const APoly& num_y() const { return b_; }  // coefficient of y
    const APoly& den() const { return c_; }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_constant() const { return b_.is_zero() && c_.degree() == 0 && a_.degree() <= 0; }
    AlgebraicNumber constant_value() const; // throws unless is_constant()

    friend FnElem operator+(const FnElem& a, const FnElem& b);
    friend FnElem operator-(const FnElem& a, const FnElem& b);
    friend FnElem operator*(const FnElem& a, const FnElem& b);
    friend FnElem operator/(const FnElem& a, const FnElem& b);
    FnElem operator-() const;
    FnElem inverse() const;
    FnElem& operator+=(const FnElem& o) { return *this = *this + o; }
    FnElem& operator-=(const FnElem& o) { return *this = *this - o; }
    FnElem& operator*=(const FnElem& o) { return *this = *this * o; }

    friend bool operator==(const FnElem& a, const FnElem& b);
    friend bool operator!=(const FnElem& a, const FnElem& b) { return !(a == b); }

    // Derivative with respect to x, using y' = P'(x) / (2y) on a curve.
    FnElem derivative() const;

    // Series value in the coordinates of a local expansion.
    LaurentSeries eval(const LocalExpansion& e) const;
    // Series value at a place, guaranteed correct to O(t^prec).
    LaurentSeries expand_at(const Place& p, long prec) const;
    // Valuation at a place (element must be nonzero).
    long order_at(const Place& p) const;

    std::string str() const;
    friend std::string to_string(const FnElem& f) { return f.str(); }

private:
    CurvePtr curve_; // nullptr: plain constant
    APoly a_, b_, c_;

    void normalize();
    static CurvePtr common_curve(const FnElem& a, const FnElem& b);
};

} // namespace algint

#endif
