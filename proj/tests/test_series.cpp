#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "algint/series.hpp"

using namespace algint;

namespace {
AlgebraicNumber an(long v) { return AlgebraicNumber(v); }
AlgebraicNumber an(long n, long d) { return AlgebraicNumber(rat(n, d)); }
} // namespace

TEST_CASE("series construction and normalization") {
    LaurentSeries z;
    CHECK(z.is_zero());
    CHECK(z.exact());

    LaurentSeries s(2, {an(0), an(0), an(5)}, 10);
    CHECK(s.valuation() == 4);
    CHECK(s.coeff(4) == an(5));
    CHECK(s.coeff(3) == an(0));
    CHECK(s.prec() == 10);
    CHECK_THROWS_AS(s.coeff(10), PrecisionExhausted);

    LaurentSeries t = LaurentSeries::t_power(3);
    CHECK(t.valuation() == 3);
    CHECK(t.exact());
}

TEST_CASE("series addition respects precision") {
    LaurentSeries a(0, {an(1), an(2)}, 5);
    LaurentSeries b(0, {an(1), an(0), an(7)}, 3);
    LaurentSeries c = a + b;
    CHECK(c.prec() == 3);
    CHECK(c.coeff(0) == an(2));
    CHECK(c.coeff(1) == an(2));
    CHECK(c.coeff(2) == an(7));
    CHECK_THROWS_AS(c.coeff(3), PrecisionExhausted);

    // exact + exact stays exact
    LaurentSeries d = LaurentSeries::t_power(1) + LaurentSeries(an(1));
    CHECK(d.exact());
    CHECK(d.coeff(100000) == an(0));
}

TEST_CASE("series multiplication precision rule") {
    // prec(ab) = min(v_a + prec_b, v_b + prec_a)
    LaurentSeries a(2, {an(1)}, 6);  // t^2 + O(t^6)
    LaurentSeries b(-1, {an(3)}, 4); // 3 t^-1 + O(t^4)
    LaurentSeries c = a * b;
    CHECK(c.valuation() == 1);
    CHECK(c.coeff(1) == an(3));
    CHECK(c.prec() == 5); // min(v_a + prec_b, v_b + prec_a) = min(6, 5)
    CHECK(((a * b).prec() == (b * a).prec()));

    // exact zero annihilates
    CHECK((LaurentSeries(an(0)) * b).exact());
    // unknown-tail zero only vanishes up to its bound
    LaurentSeries uz = LaurentSeries::zero_to(5);
    CHECK((uz * b).prec() == 4);
    CHECK((uz * b).is_zero());
}

TEST_CASE("series inverse: geometric series") {
    LaurentSeries s = (LaurentSeries(an(1)) - LaurentSeries::t_power(1)).truncated(10);
    LaurentSeries inv = s.inverse();
    for (long k = 0; k < 10; ++k) CHECK(inv.coeff(k) == an(1));
    CHECK(inv.prec() == 10);
    CHECK((s * inv).coeff(0) == an(1));
    for (long k = 1; k < 10; ++k) CHECK((s * inv).coeff(k) == an(0));

    // monomial inverse is exact
    LaurentSeries m = an(2) * LaurentSeries::t_power(-3);
    CHECK(m.inverse().exact());
    CHECK(m.inverse().coeff(3) == an(1, 2));

}

TEST_CASE("exact non-monomial inverse demands truncation") {
    LaurentSeries s = LaurentSeries(an(1)) + LaurentSeries::t_power(1);
    CHECK_THROWS_AS(s.inverse(), PrecisionExhausted);
    CHECK(s.truncated(8).inverse().prec() == 8);
}

TEST_CASE("series square root") {
    LaurentSeries s = (LaurentSeries(an(1)) + LaurentSeries::t_power(1)).truncated(8);
    LaurentSeries r = s.sqrt_unit(an(1));
    CHECK(r.coeff(0) == an(1));
    CHECK(r.coeff(1) == an(1, 2));
    CHECK(r.coeff(2) == an(-1, 8));
    LaurentSeries sq = r * r;
    CHECK(sq.coeff(0) == an(1));
    CHECK(sq.coeff(1) == an(1));
    for (long k = 2; k < 8; ++k) CHECK(sq.coeff(k) == an(0));

    // the other branch
    LaurentSeries r2 = s.sqrt_unit(an(-1));
    CHECK(r2.coeff(0) == an(-1));
    CHECK((r2 * r2).coeff(1) == an(1));

    CHECK_THROWS_AS(s.sqrt_unit(an(2)), DegenerateInput);
    CHECK_THROWS_AS(LaurentSeries::t_power(1).sqrt_unit(an(1)), DegenerateInput);
}

TEST_CASE("series derivative") {
    LaurentSeries s(-1, {an(4), an(0), an(1), an(2)}, 6); // 4/t + t + 2t^2 + O(t^6)
    LaurentSeries d = s.derivative();
    CHECK(d.coeff(-2) == an(-4));
    CHECK(d.coeff(0) == an(1));
    CHECK(d.coeff(1) == an(4));
    CHECK(d.prec() == 5);
    CHECK(LaurentSeries(an(7)).derivative().is_zero());
}

TEST_CASE("polynomial evaluation at a series") {
    // (1+t)^3 - (1+t) = 2t + 3t^2 + t^3
    APoly p({AlgebraicNumber(0), AlgebraicNumber(-1), AlgebraicNumber(0), AlgebraicNumber(1)});
    LaurentSeries x = LaurentSeries(an(1)) + LaurentSeries::t_power(1);
    LaurentSeries v = eval_at_series(p, x);
    CHECK(v.exact());
    CHECK(v.coeff(0) == an(0));
    CHECK(v.coeff(1) == an(2));
    CHECK(v.coeff(2) == an(3));
    CHECK(v.coeff(3) == an(1));
    CHECK(v.coeff(4) == an(0));
}

TEST_CASE("series powers") {
    LaurentSeries s = (LaurentSeries(an(1)) + LaurentSeries::t_power(1)).truncated(6);
    LaurentSeries p3 = pow(s, 3);
    CHECK(p3.coeff(0) == an(1));
    CHECK(p3.coeff(1) == an(3));
    CHECK(p3.coeff(2) == an(3));
    CHECK(p3.coeff(3) == an(1));
    LaurentSeries pm2 = pow(s, -2);
    CHECK(pm2.coeff(0) == an(1));
    CHECK(pm2.coeff(1) == an(-2));
    CHECK(pm2.coeff(2) == an(3));
}
