#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "algint/linalg.hpp"
#include "algint/numberfield.hpp"
#include "algint/poly.hpp"
#include "algint/rational.hpp"
#include "algint/zfactor.hpp"

using namespace algint;

namespace {

QPoly qp(std::vector<long> c) {
    std::vector<Rational> v;
    v.reserve(c.size());
    for (long x : c) v.emplace_back(x);
    return QPoly(v);
}

QPoly random_poly(std::mt19937& rng, int maxdeg) {
    std::uniform_int_distribution<int> dd(0, maxdeg), dc(-5, 5);
    int d = dd(rng);
    std::vector<Rational> c(d + 1);
    for (auto& x : c) x = Rational(dc(rng));
    return QPoly(c);
}

} // namespace

TEST_CASE("rational helpers") {
    CHECK(rat(6, 4) == rat(3, 2));
    CHECK(is_integer(rat(8, 4)));
    CHECK(!is_integer(rat(1, 3)));
    CHECK(rational_from_string("-3/6") == rat(-1, 2));
    CHECK_THROWS_AS(rat(1, 0), DegenerateInput);
    CHECK(to_string(rat(-3, 2)) == "-3/2");
    // FNV-1a 64-bit reference vector
    CHECK(fnv1a64("abc") == 0xe71fa2190541574bULL);
}

TEST_CASE("polynomial arithmetic basics") {
    QPoly p = qp({-1, 0, 1});  // x^2 - 1
    QPoly q = qp({-1, 0, 0, 1}); // x^3 - 1
    CHECK(gcd(p, q) == qp({-1, 1}));
    CHECK(gcd(qp({0, 0, 1}), QPoly()) == qp({0, 0, 1}));
    CHECK(p.degree() == 2);
    CHECK(QPoly().degree() == -1);
    CHECK(p.eval(rat(3)) == rat(8));
    CHECK(qp({2, 0, 3}).derivative() == qp({0, 6}));
    CHECK(qp({1, 2, 1}) == qp({1, 1}) * qp({1, 1}));
    CHECK(qp({0, 1}).compose(qp({1, 1})) == qp({1, 1}));
    CHECK(qp({1, 2, 1}).compose(qp({-1, 1})) == qp({0, 0, 1}));
    CHECK(qp({1, 2, 3}).reversed() == qp({3, 2, 1}));
    CHECK(qp({1, 1}).shifted(2) == qp({0, 0, 1, 1}));
    CHECK(qp({2, 4}).monic() == qp({1, 2}).monic() * rat(2) / qp({2}));
    CHECK_THROWS_AS(exact_div(qp({1, 0, 1}), qp({-1, 1})), InternalInconsistency);
    CHECK(qp({-1, 0, 1}).to_string("x") == "x^2 - 1");
    CHECK(qp({0, -1}).to_string("x") == "-x");
}

TEST_CASE("division invariant on random inputs") {
    std::mt19937 rng(12345);
    for (int it = 0; it < 200; ++it) {
        QPoly a = random_poly(rng, 6);
        QPoly b = random_poly(rng, 4);
        if (b.is_zero()) continue;
        auto [quo, rem] = divmod(a, b);
        CHECK(a == quo * b + rem);
        CHECK(rem.degree() < b.degree());
    }
}

TEST_CASE("xgcd certifies the gcd") {
    std::mt19937 rng(777);
    for (int it = 0; it < 100; ++it) {
        QPoly a = random_poly(rng, 5);
        QPoly b = random_poly(rng, 5);
        if (a.is_zero() && b.is_zero()) continue;
        auto [g, s, t] = xgcd(a, b);
        CHECK(s * a + t * b == g);
        CHECK(g == gcd(a, b));
    }
}

TEST_CASE("resultants: eliminating y over Q[x]") {
    using YPoly = Poly<QPoly>;
    QPoly x = QPoly::var();
    // y^2 - (x^3 + 1) against y
    YPoly a(std::vector<QPoly>{QPoly() - (x * x * x + QPoly(1)), QPoly(), QPoly(1)});
    YPoly b(std::vector<QPoly>{QPoly(), QPoly(1)});
    CHECK(sylvester_resultant(a, b) == QPoly() - (x * x * x + QPoly(1)));
    // y^2 - x against y - 1
    YPoly c(std::vector<QPoly>{QPoly() - x, QPoly(), QPoly(1)});
    YPoly d(std::vector<QPoly>{QPoly(-1), QPoly(1)});
    CHECK(sylvester_resultant(c, d) == QPoly(1) - x);
    // y - x against y + x
    YPoly e(std::vector<QPoly>{QPoly() - x, QPoly(1)});
    YPoly f(std::vector<QPoly>{x, QPoly(1)});
    CHECK(sylvester_resultant(e, f) == QPoly(2) * x);
}

TEST_CASE("euclidean resultant agrees with the sylvester determinant") {
    CHECK(resultant(qp({-1, 0, 1}), qp({-1, 0, 0, 1})) == rat(0)); // share root 1
    CHECK(resultant(qp({1, 0, 1}), qp({-2, 1})) == rat(5));
    CHECK(resultant(qp({-2, 0, 1}), qp({0, 2})) == rat(-8));
    std::mt19937 rng(4242);
    for (int it = 0; it < 150; ++it) {
        QPoly a = random_poly(rng, 5);
        QPoly b = random_poly(rng, 5);
        if (a.is_zero() || b.is_zero()) continue;
        CHECK(resultant(a, b) == sylvester_resultant(a, b));
    }
}

TEST_CASE("squarefree factorization") {
    QPoly f = qp({1, 0, 0, 0, 0, 0, 1}); // x^6 + 1
    auto parts = squarefree_factor(f);
    REQUIRE(parts.size() == 1);
    CHECK(parts[0].first == f);
    CHECK(parts[0].second == 1);
    CHECK(is_squarefree(f));

    QPoly g = pow(qp({-1, 1}), 2) * pow(qp({2, 1}), 3);
    auto gp = squarefree_factor(g);
    REQUIRE(gp.size() == 2);
    CHECK(gp[0] == std::pair<QPoly, int>(qp({-1, 1}), 2));
    CHECK(gp[1] == std::pair<QPoly, int>(qp({2, 1}), 3));
    CHECK(!is_squarefree(g));
}

TEST_CASE("factorization over Q: fixed fixtures") {
    auto f1 = factor_rational_poly(qp({-1, 0, 0, 0, 1})); // x^4 - 1
    REQUIRE(f1.factors.size() == 3);
    CHECK(f1.unit == rat(1));
    CHECK(f1.factors[0].first == qp({-1, 1}));
    CHECK(f1.factors[1].first == qp({1, 1}));
    CHECK(f1.factors[2].first == qp({1, 0, 1}));

    auto f2 = factor_rational_poly(qp({1, 0, -1, 0, 1})); // x^4 - x^2 + 1
    REQUIRE(f2.factors.size() == 1);
    CHECK(f2.factors[0].first.degree() == 4);
    CHECK(is_irreducible_q(qp({1, 0, -1, 0, 1})));

    auto f3 = factor_rational_poly(qp({1, 0, 0, 0, 0, 0, 1})); // x^6 + 1
    REQUIRE(f3.factors.size() == 2);
    CHECK(f3.factors[0].first == qp({1, 0, 1}));
    CHECK(f3.factors[1].first == qp({1, 0, -1, 0, 1}));

    CHECK(is_irreducible_q(qp({1, 0, -10, 0, 1}))); // stays prime despite many modular splits

    auto f4 = factor_rational_poly(qp({1, -5, 6})); // 6x^2 - 5x + 1
    CHECK(f4.unit == rat(6));
    REQUIRE(f4.factors.size() == 2);
    CHECK(f4.factors[0].first == QPoly(std::vector<Rational>{rat(-1, 2), rat(1)}));
    CHECK(f4.factors[1].first == QPoly(std::vector<Rational>{rat(-1, 3), rat(1)}));

    auto roots = rational_roots(qp({1, -5, 6}));
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == rat(1, 3));
    CHECK(roots[1] == rat(1, 2));

    auto f5 = factor_rational_poly(qp({-1, 1}) * pow(qp({1, 0, 1}), 2));
    REQUIRE(f5.factors.size() == 2);
    CHECK(f5.factors[0] == std::pair<QPoly, int>(qp({-1, 1}), 1));
    CHECK(f5.factors[1] == std::pair<QPoly, int>(qp({1, 0, 1}), 2));

    auto f6 = factor_rational_poly(qp({-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1})); // x^12 - 1
    CHECK(f6.factors.size() == 6);
}

TEST_CASE("factorization over Q: reassembly property") {
    std::mt19937 rng(999);
    std::vector<QPoly> pool = {
        qp({-1, 1}), qp({1, 1}), qp({1, 0, 1}), qp({-2, 0, 1}),
        qp({1, 1, 1}), qp({-1, -1, 1}), qp({3, 1}),
    };
    std::uniform_int_distribution<int> pick(0, static_cast<int>(pool.size()) - 1);
    std::uniform_int_distribution<int> mult(1, 2), count(1, 3), unit(1, 4);
    for (int it = 0; it < 25; ++it) {
        QPoly f(rat(unit(rng)));
        int n = count(rng);
        for (int i = 0; i < n; ++i) f *= pow(pool[pick(rng)], mult(rng));
        auto fac = factor_rational_poly(f);
        QPoly back(fac.unit);
        for (const auto& [g, m] : fac.factors) {
            CHECK(g.lc() == rat(1));
            back *= pow(g, m);
        }
        CHECK(back == f);
    }
}

TEST_CASE("quadratic field arithmetic") {
    auto k = NumberField::create(qp({-2, 0, 1}), "a", nullptr, {});
    AlgebraicNumber r2 = k->generator();
    CHECK(k->degree() == 2);
    CHECK(k->level() == 1);

    AlgebraicNumber v = (AlgebraicNumber(1) + r2) * (AlgebraicNumber(1) + r2);
    CHECK(v == AlgebraicNumber(3) + AlgebraicNumber(2) * r2);
    CHECK((r2 * r2).is_rational());
    CHECK((r2 * r2).to_rational() == rat(2));
    CHECK((AlgebraicNumber(1) + r2).inverse() == r2 - AlgebraicNumber(1));
    CHECK((AlgebraicNumber(1) / r2) == r2 / AlgebraicNumber(2));
    CHECK_THROWS_AS(AlgebraicNumber(0).inverse(), DegenerateInput);
    CHECK((AlgebraicNumber(1) + r2).str() == "(a + 1)");

    CHECK(minpoly_over_q(AlgebraicNumber(1) + r2) == qp({-1, -2, 1}));
    CHECK(minpoly_over_q(AlgebraicNumber(rat(5, 3))) == QPoly(std::vector<Rational>{rat(-5, 3), rat(1)}));

    CHECK_THROWS_AS(NumberField::create(qp({-4, 0, 1}), "a", nullptr, {}), DegenerateInput);
}

TEST_CASE("factorization over an extension") {
    auto k = NumberField::create(qp({-2, 0, 1}), "a", nullptr, {});
    AlgebraicNumber r2 = k->generator();

    // x^2 - 2 splits over Q(a); the ambient field must be passed explicitly
    // because the coefficients alone live in Q
    APoly f({AlgebraicNumber(-2), AlgebraicNumber(0), AlgebraicNumber(1)});
    CHECK(roots_in_field(f).empty());
    auto roots = roots_in_field(f, k);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == -r2);
    CHECK(roots[1] == r2);

    // x^4 - 10x^2 + 1 becomes two conjugate quadratics
    APoly g({AlgebraicNumber(1), AlgebraicNumber(0), AlgebraicNumber(-10),
             AlgebraicNumber(0), AlgebraicNumber(1)});
    APoly g_lift = lift_poly(g, k);
    auto fac = factor_over_field(g_lift, k);
    REQUIRE(fac.factors.size() == 2);
    CHECK(fac.factors[0].first.degree() == 2);
    CHECK(fac.factors[1].first.degree() == 2);
    CHECK(fac.factors[0].first * fac.factors[1].first == g_lift);

    // x^2 - 3 stays prime over Q(a)
    APoly h({AlgebraicNumber(-3), AlgebraicNumber(0), AlgebraicNumber(1)});
    auto hfac = factor_over_field(h, k);
    CHECK(hfac.factors.size() == 1);
}

TEST_CASE("root adjunction builds a tower") {
    auto k = NumberField::create(qp({-2, 0, 1}), "a", nullptr, {});
    AlgebraicNumber r2 = k->generator();

    APoly h({AlgebraicNumber(-3), AlgebraicNumber(0), AlgebraicNumber(1)});
    AlgebraicNumber r3 = adjoin_root(h, k);
    REQUIRE(r3.field() != nullptr);
    CHECK(r3.field()->level() == 2);
    CHECK(r3.field()->degree() == 4);
    CHECK(r3.field()->minpoly() == qp({1, 0, -10, 0, 1}));
    CHECK((r3 * r3).to_rational() == rat(3));

    AlgebraicNumber r2_up = r2.lifted_to(r3.field());
    CHECK((r2_up * r2_up).to_rational() == rat(2));

    AlgebraicNumber r6 = r2 * r3; // mixed levels unify automatically
    CHECK(minpoly_over_q(r6) == qp({-6, 0, 1}));
    AlgebraicNumber s = r2 + r3;
    CHECK(s * s == AlgebraicNumber(5) + AlgebraicNumber(2) * r6);
    CHECK(minpoly_over_q(s) == qp({1, 0, -10, 0, 1}));
}

TEST_CASE("square roots stay in the field when possible") {
    auto k = NumberField::create(qp({-2, 0, 1}), "a", nullptr, {});
    AlgebraicNumber r2 = k->generator();

    CHECK(sqrt_in_or_adjoin(AlgebraicNumber(4)) == AlgebraicNumber(2));
    AlgebraicNumber u = sqrt_in_or_adjoin(AlgebraicNumber(3) + AlgebraicNumber(2) * r2);
    CHECK(u == AlgebraicNumber(1) + r2); // already present
    CHECK(u.level() == 1);

    AlgebraicNumber w = sqrt_in_or_adjoin(AlgebraicNumber(2));
    CHECK((w * w).to_rational() == rat(2));
    CHECK(w.level() == 1);

    AlgebraicNumber t = sqrt_in_or_adjoin(r2); // 2^(1/4) needs a new level
    CHECK(t.level() == 2);
    CHECK(t * t == r2.lifted_to(t.field()));
    CHECK(minpoly_over_q(t) == qp({-2, 0, 0, 0, 1}));
}

TEST_CASE("unrelated chains refuse to mix") {
    auto k1 = NumberField::create(qp({-2, 0, 1}), "a", nullptr, {});
    auto k2 = NumberField::create(qp({-3, 0, 1}), "b", nullptr, {});
    CHECK_THROWS_AS(k1->generator() + k2->generator(), UnsupportedBaseField);
}

TEST_CASE("gcd over an extension field") {
    auto k = NumberField::create(qp({-2, 0, 1}), "a", nullptr, {});
    AlgebraicNumber r2 = k->generator();
    APoly f({AlgebraicNumber(-2), AlgebraicNumber(0), AlgebraicNumber(1)});
    APoly g({-r2, AlgebraicNumber(1)});
    CHECK(gcd(f, g) == g);
}

TEST_CASE("linear solving and nullspaces") {
    Mat<Rational> A(2, 3);
    A.at(0, 0) = 1; A.at(0, 1) = 2; A.at(0, 2) = 3;
    A.at(1, 0) = 0; A.at(1, 1) = 1; A.at(1, 2) = 1;
    std::vector<Rational> b = {rat(6), rat(2)};
    auto sol = solve(A, b);
    REQUIRE(sol.has_value());
    for (int i = 0; i < 2; ++i) {
        Rational acc = 0;
        for (int j = 0; j < 3; ++j) acc += A.at(i, j) * (*sol)[j];
        CHECK(acc == b[i]);
    }

    Mat<Rational> B(2, 2);
    B.at(0, 0) = 1; B.at(0, 1) = 1;
    B.at(1, 0) = 1; B.at(1, 1) = 1;
    std::vector<Rational> c = {rat(1), rat(2)};
    std::vector<Rational> witness;
    auto nosol = solve(B, c, &witness);
    CHECK(!nosol.has_value());
    REQUIRE(witness.size() == 2);
    Rational wb = witness[0] * c[0] + witness[1] * c[1];
    CHECK(wb != rat(0));
    for (int j = 0; j < 2; ++j)
        CHECK(witness[0] * B.at(0, j) + witness[1] * B.at(1, j) == rat(0));

    Mat<Rational> C(1, 3);
    C.at(0, 0) = 1; C.at(0, 1) = 1; C.at(0, 2) = 1;
    auto ns = nullspace(C);
    REQUIRE(ns.size() == 2);
    for (const auto& v : ns)
        CHECK(v[0] + v[1] + v[2] == rat(0));
    CHECK(rank(C) == 1);
}
