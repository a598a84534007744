#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "algint/fnelem.hpp"

using namespace algint;

namespace {

APoly ap(std::vector<long> c) {
    std::vector<AlgebraicNumber> v;
    v.reserve(c.size());
    for (long x : c) v.emplace_back(x);
    return APoly(v);
}

CurvePtr ell() { return Curve::hyperelliptic("E", ap({0, -1, 0, 1})); } // y^2 = x^3 - x

} // namespace

TEST_CASE("normal form is canonical") {
    CurvePtr c = ell();
    FnElem x = FnElem::x_of(c), y = FnElem::y_of(c);
    // y^2 reduces to x^3 - x as a y-free element
    FnElem y2 = y * y;
    CHECK(y2.num_y().is_zero());
    CHECK(y2.num_x() == ap({0, -1, 0, 1}));
    CHECK(y2.den().degree() == 0);
    CHECK(y2 == x * x * x - x);

    // common factors cancel: (x^2 - 1)/(x - 1) = x + 1
    FnElem f = FnElem::rational(c, ap({-1, 0, 1}), ap({-1, 1}));
    CHECK(f == x + FnElem(1));

    // denominator is normalized monic
    FnElem g = FnElem::rational(c, ap({1}), ap({0, 2}));
    CHECK(g.den() == ap({0, 1}));
    CHECK(g.num_x() == APoly(AlgebraicNumber(rat(1, 2))));
}

TEST_CASE("field axioms spot checks") {
    CurvePtr c = ell();
    FnElem x = FnElem::x_of(c), y = FnElem::y_of(c);
    FnElem f = (x + y) * (x - y);
    CHECK(f == x * x - y * y);
    FnElem g = y / x;
    CHECK(g * x == y);
    CHECK((f / f) == FnElem::one(c));
    CHECK((x + FnElem(3)).inverse() * (x + FnElem(3)) == FnElem::one(c));
    // 1/y = y/(x^3 - x)
    CHECK(y.inverse() == y / (x * x * x - x));
    CHECK_THROWS_AS(FnElem::zero(c).inverse(), DegenerateInput);

    CurvePtr other = Curve::hyperelliptic("F", ap({1, 0, 0, 1}));
    CHECK_THROWS_AS(FnElem::x_of(c) + FnElem::x_of(other), DegenerateInput);
    // curveless constants mix freely
    CHECK(FnElem(2) * x == x + x);
}

TEST_CASE("derivatives") {
    CurvePtr c = ell();
    FnElem x = FnElem::x_of(c), y = FnElem::y_of(c);
    CHECK(x.derivative() == FnElem::one(c));
    CHECK((x * x).derivative() == FnElem(2) * x);
    // y' = P'/(2y) = (3x^2 - 1)/(2y)
    FnElem expect = FnElem::rational(c, ap({-1, 0, 3}), ap({2})) / y;
    CHECK(y.derivative() == expect);
    // product rule on x*y
    CHECK((x * y).derivative() == y + x * y.derivative());
    // quotient: d(1/x) = -1/x^2
    CHECK(x.inverse().derivative() == -(x * x).inverse());
    // chain on y^2 must equal P'
    CHECK((y * y).derivative() == FnElem::rational(c, ap({-1, 0, 3}), ap({1})));
}

TEST_CASE("series evaluation matches the curve") {
    CurvePtr c = ell();
    FnElem x = FnElem::x_of(c), y = FnElem::y_of(c);
    FieldTower tower;
    Place origin = places_above(c, AlgebraicNumber(0), tower)[0];

    // x/y at the ramified origin: x ~ -t^2, y = t, so x/y ~ -t
    FnElem f = x / y;
    LaurentSeries s = f.expand_at(origin, 10);
    CHECK(s.valuation() == 1);
    CHECK(s.coeff(1) == AlgebraicNumber(-1));
    CHECK(f.order_at(origin) == 1);

    // 1/x has a double pole there
    CHECK(x.inverse().order_at(origin) == -2);
    // y/x: t / (-t^2 - ...) has a simple pole
    CHECK((y / x).order_at(origin) == -1);

    Place inf = places_at_infinity(c, tower)[0];
    CHECK(x.order_at(inf) == -2);
    CHECK(y.order_at(inf) == -3);
    CHECK((y / x).order_at(inf) == -1);
    CHECK((x * x / y).order_at(inf) == -1);

    // dx/y is regular everywhere on a genus-1 curve; check its series at the
    // awkward places via f = 1/y times dx/dt
    for (const Place& p : {origin, inf}) {
        LocalExpansion e = local_expand(p, 12);
        LaurentSeries w = y.inverse().eval(e) * e.x.derivative();
        CHECK(w.valuation() == 0);
    }
}

TEST_CASE("printing") {
    CurvePtr c = ell();
    FnElem x = FnElem::x_of(c), y = FnElem::y_of(c);
    CHECK((x + FnElem(1)).str() == "x + 1");
    CHECK((y / x).str() == "(y)/(x)");
    CHECK(FnElem(rat(1, 2)).str() == "1/2");
    CHECK(((x * y + FnElem(2)) / (x + FnElem(5))).str() == "(2 + (x)*y)/(x + 5)");
}
