#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "algint/curve.hpp"

using namespace algint;

namespace {

APoly ap(std::vector<long> c) {
    std::vector<AlgebraicNumber> v;
    v.reserve(c.size());
    for (long x : c) v.emplace_back(x);
    return APoly(v);
}

// y^2 = P(x) must hold identically in the local parameter, to order >= prec.
void check_expansion_identity(const Place& p, long prec) {
    long slack = prec + 16 + 4 * p.curve->genus();
    LocalExpansion e = local_expand(p, slack);
    if (p.curve->is_line()) {
        CHECK(e.y.is_zero());
        return;
    }
    LaurentSeries diff = e.y * e.y - eval_at_series(p.curve->rhs(), e.x);
    CHECK(diff.is_zero());
    CHECK(diff.prec() >= prec);
}

} // namespace

TEST_CASE("model validation") {
    CHECK_THROWS_AS(Curve::hyperelliptic("X", ap({0, 0, 1})), UnsupportedCurveClass); // degree 2
    CHECK_THROWS_AS(Curve::hyperelliptic("X", ap({0, 0, 0, 0, 1})), SingularModel);   // x^4
    CHECK_THROWS_AS(Curve::hyperelliptic("X", ap({0, 0, 1, 1})), SingularModel);      // x^2(x+1)
    CHECK(Curve::hyperelliptic("X", ap({0, -1, 0, 1}))->genus() == 1);
}

TEST_CASE("genus table") {
    CHECK(Curve::line("L")->genus() == 0);
    CHECK(Curve::hyperelliptic("A", ap({1, 0, 0, 1}))->genus() == 1);      // x^3 + 1
    CHECK(Curve::hyperelliptic("B", ap({-1, 0, 0, 0, 1}))->genus() == 1);  // x^4 - 1
    CHECK(Curve::hyperelliptic("C", ap({1, 0, 0, 0, 0, 1}))->genus() == 2); // x^5 + 1
    CHECK(Curve::hyperelliptic("D", ap({1, 0, 0, 0, 0, 0, 1}))->genus() == 2); // x^6 + 1
}

TEST_CASE("ramified expansion at the origin of y^2 = x^3 - x") {
    CurvePtr c = Curve::hyperelliptic("X", ap({0, -1, 0, 1}));
    FieldTower tower;
    auto ps = places_above(c, AlgebraicNumber(0), tower);
    REQUIRE(ps.size() == 1);
    CHECK(ps[0].type == Place::Type::Ramified);
    CHECK(ps[0].ramification() == 2);

    LocalExpansion e = local_expand(ps[0], 8);
    // x = -t^2 - t^6 + O(t^8); y = t exactly
    CHECK(e.x.coeff(0) == AlgebraicNumber(0));
    CHECK(e.x.coeff(2) == AlgebraicNumber(-1));
    CHECK(e.x.coeff(3) == AlgebraicNumber(0));
    CHECK(e.x.coeff(4) == AlgebraicNumber(0));
    CHECK(e.x.coeff(5) == AlgebraicNumber(0));
    CHECK(e.x.coeff(6) == AlgebraicNumber(-1));
    CHECK(e.y.coeff(1) == AlgebraicNumber(1));
    CHECK(e.y.exact());
    check_expansion_identity(ps[0], 20);
}

TEST_CASE("unramified places need a y square root") {
    CurvePtr c = Curve::hyperelliptic("X", ap({0, -1, 0, 1}));
    FieldTower tower;
    auto ps = places_above(c, AlgebraicNumber(2), tower); // P(2) = 6
    REQUIRE(ps.size() == 2);
    CHECK(ps[0].type == Place::Type::Unramified);
    CHECK(ps[0].y0 == -ps[1].y0);
    CHECK((ps[0].y0 * ps[0].y0).to_rational() == rat(6));
    REQUIRE(tower.top() != nullptr);
    CHECK(tower.top()->degree() == 2); // Q(sqrt 6)
    for (const auto& p : ps) check_expansion_identity(p, 15);

    // rational y needs no growth
    FieldTower t2;
    CurvePtr c6 = Curve::hyperelliptic("Y", ap({1, 0, 0, 0, 0, 0, 1}));
    auto qs = places_above(c6, AlgebraicNumber(2), t2); // P(2) = 65, not a square
    CHECK(t2.top()->degree() == 2);
    auto rs = places_above(c6, AlgebraicNumber(0), t2); // P(0) = 1: y0 = +-1, in Q
    REQUIRE(rs.size() == 2);
    CHECK(rs[0].y0.is_rational());
    for (const auto& p : rs) check_expansion_identity(p, 15);
}

TEST_CASE("odd infinity is one doubly ramified place") {
    CurvePtr c = Curve::hyperelliptic("X", ap({0, -1, 0, 1}));
    FieldTower tower;
    auto ps = places_at_infinity(c, tower);
    REQUIRE(ps.size() == 1);
    CHECK(ps[0].type == Place::Type::InfOdd);
    CHECK(ps[0].ramification() == 2);
    LocalExpansion e = local_expand(ps[0], 6);
    CHECK(e.x.valuation() == -2);
    CHECK(e.x.coeff(-2) == AlgebraicNumber(1)); // monic P
    CHECK(e.y.valuation() == -3);
    check_expansion_identity(ps[0], 12);

    // non-monic: leading coefficient shows up in x
    CurvePtr c2 = Curve::hyperelliptic("Z", ap({0, -1, 0, 4}));
    FieldTower t2;
    auto qs = places_at_infinity(c2, t2);
    LocalExpansion e2 = local_expand(qs[0], 6);
    CHECK(e2.x.coeff(-2) == AlgebraicNumber(rat(1, 4)));
    check_expansion_identity(qs[0], 12);
}

TEST_CASE("even infinity gives two places") {
    CurvePtr c = Curve::hyperelliptic("X", ap({1, 0, 0, 0, 0, 0, 1})); // x^6 + 1
    FieldTower tower;
    auto ps = places_at_infinity(c, tower);
    REQUIRE(ps.size() == 2);
    CHECK(ps[0].type == Place::Type::InfEven);
    CHECK(ps[0].y0 == -ps[1].y0);
    CHECK(tower.top() == nullptr); // lc = 1 is already a square
    for (const auto& p : ps) {
        LocalExpansion e = local_expand(p, 8);
        CHECK(e.x.valuation() == -1);
        CHECK(e.y.valuation() == -3); // g + 1 = 3
        check_expansion_identity(p, 12);
    }

    CurvePtr c2 = Curve::hyperelliptic("W", ap({1, 0, 0, 0, 3})); // 3x^4 + 1
    FieldTower t2;
    auto qs = places_at_infinity(c2, t2);
    REQUIRE(qs.size() == 2);
    CHECK(t2.top()->degree() == 2); // sqrt(3) adjoined
    for (const auto& p : qs) check_expansion_identity(p, 12);
}

TEST_CASE("ramification indices above any x sum to the covering degree") {
    CurvePtr c = Curve::hyperelliptic("X", ap({0, -1, 0, 1}));
    CurvePtr l = Curve::line("L");
    FieldTower tower;
    for (long v : {0L, 1L, -1L, 2L, 5L, 7L}) {
        int se = 0;
        for (const auto& p : places_above(c, AlgebraicNumber(v), tower)) se += p.ramification();
        CHECK(se == 2);
        int sl = 0;
        for (const auto& p : places_above(l, AlgebraicNumber(v), tower)) sl += p.ramification();
        CHECK(sl == 1);
    }
    int si = 0;
    for (const auto& p : places_at_infinity(c, tower)) si += p.ramification();
    CHECK(si == 2);
}

TEST_CASE("splitting the support of a polynomial grows the field") {
    CurvePtr c6 = Curve::hyperelliptic("X", ap({1, 0, 0, 0, 0, 0, 1}));
    FieldTower tower;
    // x^2 + 1: both roots are branch points of y^2 = x^6 + 1
    auto ps = places_above_roots(c6, ap({1, 0, 1}), tower);
    REQUIRE(ps.size() == 2);
    for (const auto& p : ps) {
        CHECK(p.type == Place::Type::Ramified);
        check_expansion_identity(p, 12);
    }
    REQUIRE(tower.top() != nullptr);
    CHECK(tower.top()->degree() == 2);

    // x^2 - 2 on the same curve: P(sqrt2) = 9, y0 = +-3 with no extra growth
    auto qs = places_above_roots(c6, ap({-2, 0, 1}), tower);
    REQUIRE(qs.size() == 4);
    int deg_before = tower.top()->degree();
    CHECK(deg_before == 4); // i and sqrt2 both present
    for (const auto& p : qs) {
        CHECK(p.type == Place::Type::Unramified);
        CHECK(p.y0 * p.y0 == AlgebraicNumber(9));
    }
}

TEST_CASE("divisor algebra") {
    CurvePtr l = Curve::line("L");
    FieldTower tower;
    Place p0 = places_above(l, AlgebraicNumber(0), tower)[0];
    Place p1 = places_above(l, AlgebraicNumber(1), tower)[0];
    Place pi = places_at_infinity(l, tower)[0];

    Divisor d;
    d.add(p0, 2);
    d.add(p1, -1);
    d.add(pi, 3);
    CHECK(d.degree() == 4);
    CHECK(d.coeff(p0) == 2);
    CHECK(!d.is_effective());
    CHECK(d.plus().degree() == 5);
    CHECK(d.minus().degree() == 1);
    CHECK((d - d).empty());

    Divisor e;
    e.add(p0, 1);
    e.add(p1, 4);
    Divisor s = Divisor::sup(d, e);
    CHECK(s.coeff(p0) == 2);
    CHECK(s.coeff(p1) == 4);
    CHECK(s.coeff(pi) == 3);

    Divisor twice = 2 * e;
    CHECK(twice.coeff(p1) == 8);

    d.add(p0, -2);
    CHECK(d.coeff(p0) == 0);
    CHECK(d.entries().size() == 2);
}

TEST_CASE("canonical divisor has degree 2g - 2 and matches dx valuations") {
    struct Fixture {
        CurvePtr c;
    };
    std::vector<CurvePtr> curves = {
        Curve::line("L"),
        Curve::hyperelliptic("E", ap({0, -1, 0, 1})),            // g = 1, odd
        Curve::hyperelliptic("F", ap({-1, 0, 0, 0, 1})),         // g = 1, even
        Curve::hyperelliptic("G", ap({1, 0, 0, 0, 0, 1})),       // g = 2, odd
        Curve::hyperelliptic("H", ap({1, 0, 0, 0, 0, 0, 1})),    // g = 2, even
    };
    for (const auto& c : curves) {
        FieldTower tower;
        Divisor k = canonical_divisor(c, tower);
        CHECK(k.degree() == 2 * c->genus() - 2);
        for (const auto& [p, m] : k.entries()) {
            LocalExpansion e = local_expand(p, 10);
            CHECK(e.x.derivative().valuation() == m);
        }
    }

    // dx is a unit at an ordinary finite place
    FieldTower tower;
    CurvePtr c = Curve::hyperelliptic("E", ap({0, -1, 0, 1}));
    for (const auto& p : places_above(c, AlgebraicNumber(3), tower)) {
        LocalExpansion e = local_expand(p, 8);
        CHECK(e.x.derivative().valuation() == 0);
    }
}

TEST_CASE("place identity is stable across field growth") {
    CurvePtr c = Curve::hyperelliptic("X", ap({0, -1, 0, 1}));
    FieldTower tower;
    auto before = places_above(c, AlgebraicNumber(2), tower); // adjoins sqrt(6)
    tower.sqrt(AlgebraicNumber(5));                           // deepen further
    auto after = places_above(c, AlgebraicNumber(2), tower);
    REQUIRE(before.size() == 2);
    REQUIRE(after.size() == 2);
    CHECK(before[0] == after[0]);
    CHECK(before[1] == after[1]);
    Divisor d;
    d.add(before[0], 1);
    d.add(after[0], 1);
    CHECK(d.entries().size() == 1);
    CHECK(d.coeff(before[0]) == 2);
}
