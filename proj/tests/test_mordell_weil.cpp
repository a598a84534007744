#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "algint/errors.hpp"
#include "algint/mordell_weil.hpp"

using namespace algint;

namespace {

ECPoint pt(long x, long y) { return ECPoint::affine(Rational(x), Rational(y)); }

ZMat zm(const std::vector<std::vector<long>>& rows) {
    ZMat m;
    for (const auto& r : rows) {
        std::vector<Integer> row;
        for (long v : r) row.push_back(Integer(v));
        m.push_back(std::move(row));
    }
    return m;
}

} // namespace

TEST_CASE("chord and tangent arithmetic") {
    EllipticQ e(Rational(0), Rational(-2)); // y^2 = x^3 - 2
    ECPoint q = pt(3, 5);
    REQUIRE(e.contains(q));

    ECPoint two_q = e.add(q, q);
    CHECK(two_q == ECPoint::affine(Rational(129, 100), Rational(-383, 1000)));
    CHECK(e.contains(two_q));

    CHECK(e.add(q, ECPoint::infinity()) == q);
    CHECK(e.add(q, e.negate(q)) == ECPoint::infinity());
    CHECK(e.add(e.add(q, q), q) == e.add(q, e.add(q, q)));
    CHECK(e.mul(Integer(4), q) == e.add(two_q, two_q));
    CHECK(e.mul(Integer(-1), q) == e.negate(q));
    CHECK(e.mul(Integer(0), q) == ECPoint::infinity());

    CHECK_THROWS_AS(EllipticQ(Rational(-3), Rational(2)), SingularModel); // (x-1)^2(x+2)
}

TEST_CASE("torsion subgroups of the standard fixtures") {
    EllipticQ e1(Rational(-1), Rational(0)); // y^2 = x^3 - x
    CHECK(e1.torsion_points().size() == 4);
    CHECK(e1.torsion_structure() == std::pair<int, int>(2, 2));
    for (const ECPoint& p : e1.torsion_points())
        CHECK(*e1.torsion_order(p) <= 2);

    EllipticQ e2(Rational(0), Rational(1)); // y^2 = x^3 + 1
    CHECK(e2.torsion_points().size() == 6);
    CHECK(e2.torsion_structure() == std::pair<int, int>(6, 1));
    CHECK(*e2.torsion_order(pt(2, 3)) == 6);
    CHECK(*e2.torsion_order(pt(0, 1)) == 3);
    CHECK(*e2.torsion_order(pt(-1, 0)) == 2);

    EllipticQ e3(Rational(0), Rational(-2)); // y^2 = x^3 - 2
    CHECK(e3.torsion_points().size() == 1);
    CHECK(e3.torsion_structure() == std::pair<int, int>(1, 1));
    CHECK(!e3.torsion_order(pt(3, 5)).has_value());
}

TEST_CASE("torsion search clears denominators first") {
    EllipticQ e(Rational(-1, 4), Rational(0)); // y^2 = x^3 - x/4
    CHECK(e.torsion_structure() == std::pair<int, int>(2, 2));
    const auto& tors = e.torsion_points();
    CHECK(std::find(tors.begin(), tors.end(),
                    ECPoint::affine(Rational(1, 2), Rational(0))) != tors.end());
}

TEST_CASE("relation lattice of pure torsion points") {
    EllipticQ e(Rational(-1), Rational(0));
    MwKernel k = mw_kernel(e, {pt(0, 0), pt(1, 0)});
    CHECK(k.complete);
    CHECK(k.basis == zm({{2, 0}, {0, 2}}));

    MwKernel k3 = mw_kernel(e, {pt(0, 0), pt(1, 0), pt(-1, 0)});
    CHECK(k3.complete);
    CHECK(k3.basis == zm({{1, 1, 1}, {0, 2, 0}, {0, 0, 2}}));

    EllipticQ e6(Rational(0), Rational(1));
    MwKernel k6 = mw_kernel(e6, {pt(0, 1), pt(2, 3)});
    CHECK(k6.complete);
    CHECK(k6.basis == zm({{1, 4}, {0, 6}}));
}

TEST_CASE("an infinite-order point has no relations") {
    EllipticQ e(Rational(0), Rational(-2));
    MwKernel k = mw_kernel(e, {pt(3, 5)});
    CHECK(k.complete);
    CHECK(k.basis.empty());
    CHECK(!k.primes_used.empty());
}

TEST_CASE("dependent infinite-order points are caught exactly") {
    EllipticQ e(Rational(0), Rational(-2));
    ECPoint q = pt(3, 5);
    MwKernel k = mw_kernel(e, {q, e.add(q, q)});
    CHECK(k.complete);
    CHECK(k.basis == zm({{2, -1}}));

    // torsion shifts must not hide inside the relation
    EllipticQ em(Rational(-1), Rational(0));
    // on y^2 = x^3 - x the point (2,sqrt6) is irrational, so build a mixed
    // instance on y^2 = x^3 + 1 instead: P = (2,3) torsion, no free part
    MwKernel km = mw_kernel(em, {pt(0, 0)});
    CHECK(km.complete);
    CHECK(km.basis == zm({{2}}));
}

TEST_CASE("an empty prime budget yields a verified partial answer") {
    EllipticQ e(Rational(0), Rational(-2));
    MwBudget tight;
    tight.prime_limit = 3; // 3 divides the discriminant, so no prime survives
    MwKernel k = mw_kernel(e, {pt(3, 5)}, tight);
    CHECK(!k.complete);
    CHECK(k.basis.empty());
    CHECK(k.primes_used.empty());
}

TEST_CASE("empty input is trivially complete") {
    EllipticQ e(Rational(0), Rational(-2));
    MwKernel k = mw_kernel(e, {});
    CHECK(k.complete);
    CHECK(k.basis.empty());
    CHECK_THROWS_AS(mw_kernel(e, {pt(1, 1)}), DegenerateInput);
}
