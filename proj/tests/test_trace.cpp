#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "algint/trace.hpp"

using namespace algint;

namespace {

APoly qp(const std::vector<long>& cs) {
    std::vector<AlgebraicNumber> v;
    for (long c : cs) v.push_back(AlgebraicNumber(c));
    return APoly(v);
}

CorrMono mono(long c, int xl, int yl, int xr, int yr) {
    CorrMono m;
    m.c = AlgebraicNumber(c);
    m.xl = xl;
    m.yl = yl;
    m.xr = xr;
    m.yr = yr;
    return m;
}

// u = x^2 double cover of the affine line by itself: left coordinate x,
// right coordinate u, relation x^2 - u = 0
Correspondence square_cover() {
    Correspondence z;
    z.label = "sq";
    z.left = Curve::line("S", "x");
    z.right = Curve::line("B", "u");
    z.rels.push_back(CorrPoly({mono(1, 2, 0, 0, 0), mono(-1, 0, 0, 1, 0)}));
    return z;
}

} // namespace

TEST_CASE("trace along the squaring cover of the line") {
    Correspondence z = square_cover();
    validate_correspondence(z);
    FiberAlgebra a(z);
    CHECK(a.dim() == 2);

    FnElem x = FnElem::x_of(z.left);
    FnElem u = FnElem::x_of(z.right);

    // odd powers survive, even powers cancel between the two sheets
    CHECK(trace_image(z, Differential::dx(z.left)).is_zero());
    CHECK(trace_image(z, Differential(x)) == Differential::dx(z.right));
    CHECK(trace_image(z, Differential(x * x)).is_zero());
    CHECK(trace_image(z, Differential(x * x * x)) == Differential(u));

    // residue pushforward: dx/x goes to du/u
    CHECK(trace_image(z, Differential(x.inverse())) == Differential(u.inverse()));

    // additivity
    Differential w1 = Differential(x + x * x * x);
    CHECK(trace_image(z, w1) == Differential(FnElem(1) + u));
}

TEST_CASE("transposed graph realizes the pullback") {
    Correspondence z = square_cover().transposed(); // now left = base line, right = cover
    FnElem x = FnElem::x_of(z.right);

    // u du pulled back through u = x^2 is x^2 * 2x dx
    Differential w = trace_image(z, Differential(FnElem::x_of(z.left)));
    CHECK(w == Differential(FnElem(2) * x * x * x));
    CHECK(trace_image(z, Differential::dx(z.left)) == Differential(FnElem(2) * x));
}

TEST_CASE("trace of an exact form stays exact") {
    Correspondence z = square_cover();
    FieldTower tower;
    FnElem x = FnElem::x_of(z.left);

    FnElem h = x * x * x * x; // even: survives the pushforward
    Differential traced = trace_image(z, Differential::d_of(h));
    Exactness r = exactness(traced, tower);
    REQUIRE(r.exact);
    // h = u^2 on the base, so the trace is d(2u^2)
    FnElem u = FnElem::x_of(z.right);
    CHECK((r.primitive - FnElem(2) * u * u).is_constant());
}

TEST_CASE("projection from an elliptic curve to the x-line") {
    Correspondence z;
    z.left = Curve::hyperelliptic("E", qp({0, -1, 0, 1})); // y^2 = x^3 - x
    z.right = Curve::line("B", "u");
    z.label = "pi";
    z.rels.push_back(CorrPoly({mono(1, 1, 0, 0, 0), mono(-1, 0, 0, 1, 0)})); // x - u
    validate_correspondence(z);
    FiberAlgebra a(z);
    CHECK(a.dim() == 2);

    FnElem x = FnElem::x_of(z.left), y = FnElem::y_of(z.left);
    FnElem u = FnElem::x_of(z.right);

    // forms odd under the hyperelliptic involution die
    CHECK(trace_image(z, Differential(y.inverse())).is_zero());
    CHECK(trace_image(z, Differential(y)).is_zero());
    // even ones double
    CHECK(trace_image(z, Differential(x)) == Differential(FnElem(2) * u));
    FnElem pu = u * u * u - u;
    CHECK(trace_image(z, Differential(y * y)) == Differential(FnElem(2) * pu));
}

TEST_CASE("quotient maps from the genus-two sextic to an elliptic curve") {
    CurvePtr sx = Curve::hyperelliptic("X0", qp({1, 0, 0, 0, 0, 0, 1})); // y^2 = x^6 + 1
    CurvePtr e1 = Curve::hyperelliptic("E1", qp({1, 0, 0, 1}), "u", "v"); // v^2 = u^3 + 1
    FnElem x = FnElem::x_of(sx), y = FnElem::y_of(sx);
    FnElem v = FnElem::y_of(e1);

    // (u, v) = (x^2, y)
    Morphism phi1{sx, e1, x * x, y};
    validate_morphism(phi1);
    CHECK(degree(phi1) == 2);

    // (u, v) = (1/x^2, y/x^3)
    Morphism phi2{sx, e1, (x * x).inverse(), y / (x * x * x)};
    validate_morphism(phi2);
    CHECK(degree(phi2) == 2);

    Differential holo = Differential(v.inverse()); // du/v on E1
    Differential half = Differential(FnElem(AlgebraicNumber(Rational(1, 2))) / v);

    CHECK(pullback(phi1, half) == Differential(x / y));
    CHECK(pullback(phi2, half) == Differential(-(y.inverse())));
    CHECK(pullback(phi1, holo) == Differential(FnElem(2) * x / y));

    // the transposed graph traces to the same pullback
    Correspondence g1 = graph_of(phi1, "Z1").transposed();
    Correspondence g2 = graph_of(phi2, "Z2").transposed();
    CHECK(trace_image(g1, half) == pullback(phi1, half));
    CHECK(trace_image(g2, half) == pullback(phi2, half));

    // pushing the pullback forward again multiplies by the degree
    Correspondence push1 = graph_of(phi1, "Z1");
    CHECK(trace_image(push1, pullback(phi1, holo)) == FnElem(2) * holo);
}

TEST_CASE("degenerate correspondences are rejected") {
    // left coordinate pinned to a constant: Z = {1} x B never dominates the
    // left curve
    Correspondence z;
    z.left = Curve::line("S", "x");
    z.right = Curve::line("B", "u");
    z.label = "bad";
    z.rels.push_back(CorrPoly({mono(1, 1, 0, 0, 0), mono(-1, 0, 0, 0, 0)})); // x - 1
    FiberAlgebra over_right(z);
    CHECK(over_right.dim() == 1);
    CHECK_THROWS_AS(validate_correspondence(z), FibralComponent);

    // no relation at all leaves infinite fibers
    Correspondence empty;
    empty.left = Curve::line("S", "x");
    empty.right = Curve::line("B", "u");
    empty.label = "none";
    CHECK_THROWS_AS(FiberAlgebra{empty}, FibralComponent);

    // on a hyperelliptic left curve, relations that never touch y leave the
    // y-line free only if they also miss x
    Correspondence vy;
    vy.left = Curve::hyperelliptic("E", qp({0, -1, 0, 1}));
    vy.right = Curve::line("B", "u");
    vy.label = "vy";
    vy.rels.push_back(CorrPoly({mono(1, 0, 0, 1, 0)})); // u = 0: fibral over left
    CHECK_THROWS_AS(FiberAlgebra{vy}, FibralComponent);
}

TEST_CASE("morphism validation catches wrong coordinates") {
    CurvePtr sx = Curve::hyperelliptic("X0", qp({1, 0, 0, 0, 0, 0, 1}));
    CurvePtr e1 = Curve::hyperelliptic("E1", qp({1, 0, 0, 1}), "u", "v");
    FnElem x = FnElem::x_of(sx), y = FnElem::y_of(sx);
    Morphism wrong{sx, e1, x * x, y + FnElem(1)};
    CHECK_THROWS_AS(validate_morphism(wrong), DegenerateInput);
    Morphism constant{sx, e1, FnElem(2), FnElem(3)};
    CHECK_THROWS_AS(validate_morphism(constant), DegenerateInput);
}
