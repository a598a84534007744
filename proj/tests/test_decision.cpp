#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "algint/decision.hpp"

#include "algint/errors.hpp"

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

AlgebraicNumber half() { return AlgebraicNumber(Rational(1) / Rational(2)); }

// y^2 = x^6 + 1 with target x dx/y, allowed du/(2v) on v^2 = u^3 + 1, joined
// by the correspondence u = x^2, v = y.
Problem sextic_problem() {
    Problem p;
    CurvePtr x0 = Curve::hyperelliptic("X0", qp({1, 0, 0, 0, 0, 0, 1}));
    CurvePtr e = Curve::hyperelliptic("E", qp({1, 0, 0, 1}), "u", "v");
    p.target = Differential(FnElem::x_of(x0) / FnElem::y_of(x0));
    p.allowed.push_back(Differential((FnElem(2) * FnElem::y_of(e)).inverse()));
    Correspondence z;
    z.label = "Z1";
    z.left = e;
    z.right = x0;
    z.rels.push_back(CorrPoly({mono(1, 1, 0, 0, 0), mono(-1, 0, 0, 2, 0)}));
    z.rels.push_back(CorrPoly({mono(1, 0, 1, 0, 0), mono(-1, 0, 0, 0, 1)}));
    p.correspondences.push_back({z, 0});
    return p;
}

bool has_key(const Verdict& v, const std::string& key) {
    for (const auto& q : v.qualifications)
        if (q.key == key) return true;
    return false;
}

} // namespace

TEST_CASE("span test resolves the partial fractions identity") {
    FieldTower tower;
    CurvePtr l = Curve::line("L");
    // dx/(x^2-1) against dlog((x-1)/(x+1)) inside poles at x = 1 and x = -1
    Differential w0(FnElem::rational(l, qp({1}), qp({-1, 0, 1})));
    FnElem f = FnElem::rational(l, qp({-1, 1}), qp({1, 1}));
    Divisor m;
    m.add(places_above(l, AlgebraicNumber(1), tower)[0], 1);
    m.add(places_above(l, AlgebraicNumber(-1), tower)[0], 1);

    auto sol = span_decide(w0, {Differential::dlog(f)}, m, tower);
    REQUIRE(sol.has_value());
    REQUIRE(sol->coeffs.size() == 1);
    CHECK(sol->coeffs[0] == half());
    CHECK(sol->gamma.is_zero());
}

TEST_CASE("span test finds a pure primitive") {
    FieldTower tower;
    CurvePtr l = Curve::line("L");
    Differential w0(FnElem(2) * FnElem::x_of(l)); // 2x dx
    Divisor m = pole_divisor(w0, tower);

    auto sol = span_decide(w0, {}, m, tower);
    REQUIRE(sol.has_value());
    CHECK(sol->coeffs.empty());
    CHECK(sol->gamma == FnElem::x_of(l) * FnElem::x_of(l));
}

TEST_CASE("span test refuses a first-kind form with no generators") {
    FieldTower tower;
    CurvePtr c = Curve::hyperelliptic("X", qp({0, -1, 0, 1})); // y^2 = x^3 - x
    Differential w0(FnElem::y_of(c).inverse());
    auto sol = span_decide(w0, {}, pole_divisor(w0, tower), tower);
    CHECK(!sol.has_value());
}

TEST_CASE("residueless decision traces the sextic onto its quotient") {
    FieldTower tower;
    Problem p = sextic_problem();
    Verdict v = decide_residueless(p, tower);
    REQUIRE(v.answer == Answer::Yes);
    REQUIRE(v.certificate.has_value());
    const Certificate& cert = *v.certificate;
    REQUIRE(cert.terms.size() == 1);
    CHECK(cert.terms[0].c == AlgebraicNumber(1));
    CHECK(cert.terms[0].allowed == size_t(0));
    CHECK(cert.logs.empty());
    CHECK(cert.gamma.is_zero());
    CHECK(replay(p, cert));
}

TEST_CASE("residueless decision integrates a bare polynomial form") {
    FieldTower tower;
    Problem p;
    CurvePtr l = Curve::line("L");
    p.target = Differential::dx(l);
    Verdict v = decide_residueless(p, tower);
    REQUIRE(v.answer == Answer::Yes);
    CHECK(v.certificate->terms.empty());
    CHECK(v.certificate->gamma == FnElem::x_of(l));
}

TEST_CASE("residueless refutation is bounded without the completeness assertion") {
    FieldTower tower;
    Problem p;
    CurvePtr c = Curve::hyperelliptic("X", qp({0, -1, 0, 1}));
    CurvePtr l = Curve::line("L", "u");
    p.target = Differential(FnElem::y_of(c).inverse());
    p.allowed.push_back(Differential::dx(l));
    Correspondence z;
    z.label = "Z1";
    z.left = l;
    z.right = c;
    z.rels.push_back(CorrPoly({mono(1, 1, 0, 0, 0), mono(-1, 0, 0, 1, 0)})); // u = x
    p.correspondences.push_back({z, 0});

    Verdict open = decide_residueless(p, tower);
    CHECK(open.answer == Answer::NoUpToBudget);
    CHECK(has_key(open, "correspondences"));

    p.correspondences_complete = true;
    Verdict closed = decide_residueless(p, tower);
    CHECK(closed.answer == Answer::No);
    CHECK(has_key(closed, "complete"));
    CHECK(!closed.refutation.empty());
}

TEST_CASE("a target residue against a residue-free allowed set refutes outright") {
    FieldTower tower;
    Problem p;
    CurvePtr l = Curve::line("L");
    p.target = Differential(FnElem::x_of(l).inverse());
    Verdict v = decide_residueless(p, tower);
    CHECK(v.answer == Answer::No);
    CHECK(v.refutation.find("residue") != std::string::npos);
    CHECK(has_key(v, "complete"));
}

TEST_CASE("residueless decision rejects a residue-bearing allowed form") {
    FieldTower tower;
    Problem p;
    CurvePtr l = Curve::line("L");
    p.target = Differential::dx(l);
    p.allowed.push_back(Differential(FnElem::x_of(l).inverse()));
    CHECK_THROWS_AS(decide_residueless(p, tower), DegenerateInput);
}

TEST_CASE("log mode integrates dx/(x^2-1) as half a logarithm") {
    FieldTower tower;
    Problem p;
    CurvePtr l = Curve::line("L");
    p.target = Differential(FnElem::rational(l, qp({1}), qp({-1, 0, 1})));
    p.mode = Mode::LogSet;
    Verdict v = decide_with_residues(p, tower);
    REQUIRE(v.answer == Answer::Yes);
    const Certificate& cert = *v.certificate;
    CHECK(cert.terms.empty());
    REQUIRE(cert.logs.size() == 1);
    CHECK(cert.logs[0].e == half());
    // e dlog f accounts for the whole target
    CHECK(FnElem(cert.logs[0].e) * (cert.logs[0].f.derivative() / cert.logs[0].f) ==
          p.target.fn());
    CHECK(cert.gamma.is_zero());
    CHECK(replay(p, cert));
}

TEST_CASE("an identity correspondence is preferred over a synthesized logarithm") {
    FieldTower tower;
    Problem p;
    CurvePtr l = Curve::line("L");
    CurvePtr lu = Curve::line("U", "u");
    p.target = Differential(FnElem::x_of(l).inverse());
    p.allowed.push_back(Differential(FnElem::x_of(lu).inverse()));
    Correspondence z;
    z.label = "Z1";
    z.left = lu;
    z.right = l;
    z.rels.push_back(CorrPoly({mono(1, 1, 0, 0, 0), mono(-1, 0, 0, 1, 0)}));
    p.correspondences.push_back({z, 0});

    Verdict v = decide_with_residues(p, tower);
    REQUIRE(v.answer == Answer::Yes);
    REQUIRE(v.certificate->terms.size() == 1);
    CHECK(v.certificate->terms[0].c == AlgebraicNumber(1));
    CHECK(v.certificate->logs.empty());
    CHECK(v.certificate->gamma.is_zero());
    CHECK(has_key(v, "log-terms"));
}

TEST_CASE("log mode refuses the second-kind class on an elliptic curve") {
    FieldTower tower;
    CurvePtr c = Curve::hyperelliptic("X", qp({0, -1, 0, 1})); // y^2 = x^3 - x
    FnElem x = FnElem::x_of(c), y = FnElem::y_of(c);

    Problem p;
    p.mode = Mode::LogSet;

    SUBCASE("first kind") { p.target = Differential(y.inverse()); }
    SUBCASE("second kind") { p.target = Differential(x / y); }

    Verdict v = decide_with_residues(p, tower);
    CHECK(v.answer == Answer::No);
    CHECK(has_key(v, "complete"));
}

TEST_CASE("log mode refutes a third-kind form at a non-torsion point") {
    FieldTower tower;
    CurvePtr c = Curve::hyperelliptic("X", qp({-2, 0, 0, 1})); // y^2 = x^3 - 2
    FnElem x = FnElem::x_of(c), y = FnElem::y_of(c);
    // +1 at (3,5), -1 at infinity
    FnElem num = y + FnElem::constant(c, AlgebraicNumber(5));
    FnElem den = FnElem(2) * y * (x - FnElem::constant(c, AlgebraicNumber(3)));

    Problem p;
    p.mode = Mode::LogSet;
    p.target = Differential(num / den);
    Verdict v = decide_with_residues(p, tower);
    CHECK(v.answer == Answer::No);
    CHECK(has_key(v, "complete"));
}

TEST_CASE("log mode writes an elliptic third-kind form as a torsion logarithm") {
    FieldTower tower;
    CurvePtr c = Curve::hyperelliptic("X", qp({1, 0, 0, 1})); // y^2 = x^3 + 1
    FnElem x = FnElem::x_of(c), y = FnElem::y_of(c);
    // residues +1 at (0,1), -1 at infinity; (0,1) is 3-torsion
    FnElem num = y + FnElem::constant(c, AlgebraicNumber(1));
    FnElem den = FnElem(2) * y * x;

    Problem p;
    p.mode = Mode::LogSet;
    p.target = Differential(num / den);
    Verdict v = decide_with_residues(p, tower);
    REQUIRE(v.answer == Answer::Yes);
    REQUIRE(v.certificate->logs.size() == 1);
    CHECK(v.certificate->logs[0].e == AlgebraicNumber(Rational(1) / Rational(3)));
    CHECK(replay(p, *v.certificate));
}

TEST_CASE("log mode sees the torsion class but the second-kind part still obstructs") {
    FieldTower tower;
    CurvePtr c = Curve::hyperelliptic("X", qp({1, 0, 0, 1})); // y^2 = x^3 + 1
    FnElem x = FnElem::x_of(c), y = FnElem::y_of(c);
    FnElem num = y + FnElem::constant(c, AlgebraicNumber(1));
    FnElem den = FnElem(2) * y * x;

    Problem p;
    p.mode = Mode::LogSet;
    p.target = Differential(num / den + x / y); // torsion logarithm plus a second-kind class
    Verdict v = decide_with_residues(p, tower);
    CHECK(v.answer == Answer::No);
    CHECK(has_key(v, "complete"));
}

TEST_CASE("log mode combines a torsion logarithm with traced second-kind forms") {
    FieldTower tower;
    CurvePtr c = Curve::hyperelliptic("X", qp({1, 0, 0, 1}));
    CurvePtr e = Curve::hyperelliptic("E2", qp({1, 0, 0, 1}), "u", "v");
    FnElem x = FnElem::x_of(c), y = FnElem::y_of(c);
    FnElem u = FnElem::x_of(e), w = FnElem::y_of(e);

    Problem p;
    p.mode = Mode::LogSet;
    p.target =
        Differential((y + FnElem::constant(c, AlgebraicNumber(1))) / (FnElem(2) * y * x) + x / y);
    p.allowed.push_back(Differential(w.inverse()));
    p.allowed.push_back(Differential(u / w));
    for (size_t i = 0; i < 2; ++i) {
        Correspondence z;
        z.label = "Z" + std::to_string(i + 1);
        z.left = e;
        z.right = c;
        z.rels.push_back(CorrPoly({mono(1, 1, 0, 0, 0), mono(-1, 0, 0, 1, 0)}));
        z.rels.push_back(CorrPoly({mono(1, 0, 1, 0, 0), mono(-1, 0, 0, 0, 1)}));
        p.correspondences.push_back({z, i});
    }

    Verdict v = decide_with_residues(p, tower);
    REQUIRE(v.answer == Answer::Yes);
    CHECK(!v.certificate->logs.empty());
    CHECK(!v.certificate->terms.empty());
    CHECK(replay(p, *v.certificate));
}

TEST_CASE("the genus-two principality search closes a support with a 5-torsion class") {
    FieldTower tower;
    CurvePtr c = Curve::hyperelliptic("X", qp({1, 0, 0, 0, 0, 1})); // y^2 = x^5 + 1
    FnElem y = FnElem::y_of(c);
    // div(y - 1) = 5 (0,1) - 5 (infinity)
    Problem p;
    p.mode = Mode::LogSet;
    p.target = Differential::dlog(y - FnElem::constant(c, AlgebraicNumber(1)));
    Verdict v = decide_with_residues(p, tower);
    REQUIRE(v.answer == Answer::Yes);
    REQUIRE(v.certificate->logs.size() == 1);
    CHECK(v.certificate->logs[0].e == AlgebraicNumber(1));
    CHECK(replay(p, *v.certificate));

    // same residue support, but now a holomorphic class rides along
    FnElem xx = FnElem::x_of(c);
    Problem q;
    q.mode = Mode::LogSet;
    q.target = Differential(
        (y + FnElem::constant(c, AlgebraicNumber(1))) / (FnElem(2) * y * xx) + xx / y);
    Verdict vq = decide_with_residues(q, tower);
    CHECK(vq.answer == Answer::No);
    CHECK(has_key(vq, "complete"));
}

TEST_CASE("elliptic mode accepts the lemniscatic integral on its own curve") {
    FieldTower tower;
    Problem p;
    CurvePtr c = Curve::hyperelliptic("X", qp({1, 0, 0, 0, -1})); // y^2 = 1 - x^4
    p.target = Differential(FnElem::y_of(c).inverse());
    p.mode = Mode::EllipticSet;
    Verdict v = decide_elliptic(p, tower);
    REQUIRE(v.answer == Answer::Yes);
    CHECK(!v.certificate->terms.empty());
    CHECK(replay(p, *v.certificate));
}

TEST_CASE("elliptic mode splits the symmetric sextic differential") {
    FieldTower tower;
    Problem p;
    CurvePtr c = Curve::hyperelliptic("X", qp({1, 0, 0, 0, 0, 0, 1}));
    p.target = Differential(FnElem::y_of(c).inverse()); // dx/y
    p.mode = Mode::EllipticSet;
    Verdict v = decide_elliptic(p, tower);
    REQUIRE(v.answer == Answer::Yes);
    REQUIRE(v.certificate->terms.size() == 1);
    CHECK((v.certificate->terms[0].c == half() || v.certificate->terms[0].c == -half()));
    CHECK(replay(p, *v.certificate));
}

TEST_CASE("elliptic mode stays bounded when no quotient is found") {
    FieldTower tower;
    Problem p;
    CurvePtr c = Curve::hyperelliptic("X", qp({1, 0, 0, 0, 0, 1})); // y^2 = x^5 + 1
    p.target = Differential(FnElem::y_of(c).inverse());
    p.mode = Mode::EllipticSet;
    Verdict v = decide_elliptic(p, tower);
    CHECK(v.answer == Answer::NoUpToBudget);
    CHECK(has_key(v, "quotients"));
}

TEST_CASE("elliptic mode rejects a line target") {
    FieldTower tower;
    Problem p;
    p.target = Differential::dx(Curve::line("L"));
    p.mode = Mode::EllipticSet;
    CHECK_THROWS_AS(decide_elliptic(p, tower), UnsupportedCurveClass);
}

TEST_CASE("the dispatcher refutes dx/x with an empty allowed set") {
    FieldTower tower;
    Problem p;
    CurvePtr l = Curve::line("L");
    p.target = Differential(FnElem::x_of(l).inverse());
    Verdict v = decide(p, tower);
    CHECK(v.answer == Answer::No);
    CHECK(has_key(v, "oracle"));
}

TEST_CASE("the dispatcher integrates x dx and cross-checks it") {
    FieldTower tower;
    Problem p;
    CurvePtr l = Curve::line("L");
    p.target = Differential(FnElem::x_of(l));
    Verdict v = decide(p, tower);
    REQUIRE(v.answer == Answer::Yes);
    CHECK(v.certificate->gamma == FnElem(half()) * FnElem::x_of(l) * FnElem::x_of(l));
    CHECK(has_key(v, "oracle"));
}

TEST_CASE("the dispatcher runs the traced sextic end to end") {
    FieldTower tower;
    Problem p = sextic_problem();
    Verdict v = decide(p, tower);
    REQUIRE(v.answer == Answer::Yes);
    bool oracle_ran = false;
    for (const auto& q : v.qualifications)
        if (q.key == "oracle") oracle_ran = q.detail.find("holds") != std::string::npos;
    CHECK(oracle_ran);
}

TEST_CASE("enlarging the allowed set never flips a yes") {
    FieldTower tower;
    Problem p = sextic_problem();
    // an extra pair that contributes nothing useful
    CurvePtr l = Curve::line("L", "s");
    p.allowed.push_back(Differential::dx(l));
    Correspondence z;
    z.label = "Z2";
    z.left = l;
    z.right = p.target.curve();
    z.rels.push_back(CorrPoly({mono(1, 1, 0, 0, 0), mono(-1, 0, 0, 1, 0)})); // s = x
    p.correspondences.push_back({z, 1});

    Verdict v = decide_residueless(p, tower);
    CHECK(v.answer == Answer::Yes);
    CHECK(replay(p, *v.certificate));
}

TEST_CASE("scaling the target scales the certificate") {
    FieldTower tower;
    Problem p = sextic_problem();
    AlgebraicNumber lam(Rational(3) / Rational(5));
    p.target = lam * p.target;
    Verdict v = decide_residueless(p, tower);
    REQUIRE(v.answer == Answer::Yes);
    REQUIRE(v.certificate->terms.size() == 1);
    CHECK(v.certificate->terms[0].c == lam);
}

TEST_CASE("stripping the completeness assertion demotes a refutation") {
    FieldTower tower;
    Problem p;
    CurvePtr c = Curve::hyperelliptic("X", qp({0, -1, 0, 1}));
    CurvePtr l = Curve::line("L", "u");
    p.target = Differential(FnElem::y_of(c).inverse());
    p.allowed.push_back(Differential::dx(l));
    Correspondence z;
    z.label = "Z1";
    z.left = l;
    z.right = c;
    z.rels.push_back(CorrPoly({mono(1, 1, 0, 0, 0), mono(-1, 0, 0, 1, 0)}));
    p.correspondences.push_back({z, 0});
    p.correspondences_complete = true;

    Verdict no = decide_residueless(p, tower);
    CHECK(no.answer == Answer::No);
    p.correspondences_complete = false;
    Verdict bounded = decide_residueless(p, tower);
    CHECK(bounded.answer == Answer::NoUpToBudget);
}

TEST_CASE("replay rejects a tampered certificate") {
    FieldTower tower;
    Problem p = sextic_problem();
    Verdict v = decide_residueless(p, tower);
    REQUIRE(v.answer == Answer::Yes);
    Certificate bad = *v.certificate;
    bad.terms[0].c = AlgebraicNumber(2);
    CHECK(!replay(p, bad));
    Certificate bad2 = *v.certificate;
    bad2.gamma = FnElem::x_of(p.target.curve());
    CHECK(!replay(p, bad2));
}

TEST_CASE("minimal polynomials over the rational subfield have the stated shape") {
    CurvePtr c = Curve::hyperelliptic("X", qp({1, 0, 0, 1}));
    FnElem x = FnElem::x_of(c), y = FnElem::y_of(c);

    auto lin = minpoly_over_x(x * x);
    REQUIRE(lin.size() == 2);
    CHECK(lin[0] == -(x * x));
    CHECK(lin[1] == FnElem(1));

    // T = y satisfies T^2 - (x^3 + 1) = 0
    auto quad = minpoly_over_x(y);
    REQUIRE(quad.size() == 3);
    CHECK(quad[0] == -(x * x * x + FnElem(1)));
    CHECK(quad[1].is_zero());
    CHECK(quad[2] == FnElem(1));

    // substitute back: sum quad[k] g^k = 0
    FnElem g = (FnElem(1) + y) / (x - FnElem(2));
    auto mp = minpoly_over_x(g);
    REQUIRE(mp.size() == 3);
    CHECK((mp[0] + mp[1] * g + mp[2] * g * g).is_zero());
}
