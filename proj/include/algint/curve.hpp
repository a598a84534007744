#ifndef ALGINT_CURVE_HPP
#define ALGINT_CURVE_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "algint/numberfield.hpp"
#include "algint/series.hpp"

namespace algint {

class Curve;
using CurvePtr = std::shared_ptr<const Curve>;

// A smooth projective model of either the projective line or a hyperelliptic
// curve y^2 = P(x) with P squarefree of degree >= 3.  The affine equation is
// the input; points at infinity follow the standard smooth completion:
// odd degree has one ramified place at infinity, even degree has two.
class Curve {
public:
    enum class Kind { Line, Hyperelliptic };

    static CurvePtr line(std::string label, std::string xname = "x");
    static CurvePtr hyperelliptic(std::string label, APoly rhs, std::string xname = "x",
                                  std::string yname = "y");

    Kind kind() const { return kind_; }
    bool is_line() const { return kind_ == Kind::Line; }
    const APoly& rhs() const { return rhs_; } // P in y^2 = P(x); empty for a line
    int genus() const;
    const std::string& label() const { return label_; }
    const std::string& xname() const { return xname_; }
    const std::string& yname() const { return yname_; }
    NumberField::Ptr coeff_field() const { return field_of(rhs_); }

private:
    Curve() = default;
    Kind kind_ = Kind::Line;
    APoly rhs_;
    std::string label_, xname_, yname_;
};

// A closed point of the smooth model, always split to geometric points (the
// working field is grown until the center is rational over it).
struct Place {
    enum class Type {
        LineFinite,   // x = x0 + t
        LineInfinity, // x = 1/t
        Unramified,   // x = x0 + t, y = y0 sqrt-unit
        Ramified,     // y = t, x = x0 + O(t^2); P(x0) = 0
        InfEven,      // x = 1/t, y = y0 t^-(g+1) (1 + ...); y0^2 = lc(P)
        InfOdd        // x ~ t^-2, y ~ t^-(2g+1)
    };

    CurvePtr curve;
    Type type = Type::LineFinite;
    AlgebraicNumber x0; // finite types only
    AlgebraicNumber y0; // Unramified: y(x0); InfEven: the signed sqrt of lc(P)

    int ramification() const { return (type == Type::Ramified || type == Type::InfOdd) ? 2 : 1; }
    bool is_infinite() const {
        return type == Type::LineInfinity || type == Type::InfEven || type == Type::InfOdd;
    }
    std::string str() const;
};

bool operator==(const Place& a, const Place& b);
bool operator!=(const Place& a, const Place& b);
// Deterministic strict weak order, stable under field growth (values compare
// through unification, not through their printed coordinates).
bool operator<(const Place& a, const Place& b);

// Local coordinates at a place: exact truncated series in the uniformizer.
// y is the zero series on a line.
struct LocalExpansion {
    LaurentSeries x, y;
};

// Expansion with x and y correct at least up to O(t^prec).
LocalExpansion local_expand(const Place& p, long prec);

// The places with x-coordinate x0 (one or two; field may grow for the y
// square root).  Sum of ramification indices is 2 on a hyperelliptic curve
// and 1 on a line.
std::vector<Place> places_above(const CurvePtr& c, const AlgebraicNumber& x0, FieldTower& tower);

std::vector<Place> places_at_infinity(const CurvePtr& c, FieldTower& tower);

// All places over every root of m (the tower grows to split m fully).
std::vector<Place> places_above_roots(const CurvePtr& c, const APoly& m, FieldTower& tower);

// Formal Z-linear combination of places.
class Divisor {
public:
    Divisor() = default;

    void add(const Place& p, int m);
    int coeff(const Place& p) const;
    int degree() const;
    bool empty() const { return m_.empty(); }
    bool is_effective() const;
    size_t size() const { return m_.size(); }

    const std::map<Place, int>& entries() const { return m_; }

    friend Divisor operator+(const Divisor& a, const Divisor& b);
    friend Divisor operator-(const Divisor& a, const Divisor& b);
    Divisor operator-() const;
    friend Divisor operator*(int k, const Divisor& d);
    friend bool operator==(const Divisor& a, const Divisor& b) { return a.m_ == b.m_; }

    // Pointwise maximum (used to merge pole bounds).
    static Divisor sup(const Divisor& a, const Divisor& b);
    // Positive and negative parts: d = plus() - minus(), both effective.
    Divisor plus() const;
    Divisor minus() const;

    std::string str() const;

private:
    std::map<Place, int> m_;
};

// div(dx): degree 2g - 2.  Grows the tower to split the branch locus.
Divisor canonical_divisor(const CurvePtr& c, FieldTower& tower);

} // namespace algint

#endif
