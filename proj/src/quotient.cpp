#include "algint/quotient.hpp"

#include <algorithm>

#include "algint/errors.hpp"

namespace algint {

namespace {

// largest rational lambda with a / lambda^4 and b / lambda^6 still integral at
// every small prime; dividing by it picks a reduced representative among the
// models v^2 = u^3 + (a/l^4) u + (b/l^6) of the same curve
Rational twist_scale(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    if (!a.is_rational() || !b.is_rational()) return Rational(1);
    Rational ra = a.to_rational(), rb = b.to_rational();
    Integer support = ra.get_num() * ra.get_den() * rb.get_num() * rb.get_den();
    if (support == 0) support = ra == 0 ? rb.get_num() * rb.get_den() : ra.get_num() * ra.get_den();
    support = abs(support);

    auto valuation = [](const Rational& q, const Integer& p) -> long {
        if (q == 0) return 1000000; // effectively +infinity for the min below
        long v = 0;
        Integer n = q.get_num();
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) { n /= p; ++v; }
        Integer d = q.get_den();
        while (mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t())) { d /= p; --v; }
        return v;
    };
    auto floor_div = [](long x, long y) { return x >= 0 ? x / y : -((-x + y - 1) / y); };

    Rational lambda(1);
    Integer p = 2;
    Integer rest = support;
    while (rest > 1 && p <= 1000000 && p * p <= rest) {
        if (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
            while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) rest /= p;
            long e = std::min(floor_div(valuation(ra, p), 4), floor_div(valuation(rb, p), 6));
            for (; e > 0; --e) lambda *= Rational(p);
            for (; e < 0; ++e) lambda /= Rational(p);
        }
        p += (p == 2) ? 1 : 2;
    }
    if (rest > 1) { // one large prime cofactor
        long e = std::min(floor_div(valuation(ra, rest), 4), floor_div(valuation(rb, rest), 6));
        for (; e > 0; --e) lambda *= Rational(rest);
        for (; e < 0; ++e) lambda /= Rational(rest);
    }
    return lambda;
}

} // namespace

FnElem compose_fn(const FnElem& f, const FnElem& tx, const FnElem& ty) {
    FnElem num = eval_poly_fn(f.num_x(), tx);
    if (!f.num_y().is_zero()) num += eval_poly_fn(f.num_y(), tx) * ty;
    return num / eval_poly_fn(f.den(), tx);
}

Morphism compose_morphism(const Morphism& outer, const Morphism& inner) {
    if (outer.source->label() != inner.target->label())
        throw DegenerateInput("morphisms do not compose");
    Morphism m;
    m.source = inner.source;
    m.target = outer.target;
    m.x_image = compose_fn(outer.x_image, inner.x_image, inner.y_image);
    m.y_image = outer.target->is_line()
                    ? FnElem(0)
                    : compose_fn(outer.y_image, inner.x_image, inner.y_image);
    return m;
}

Morphism normalize_to_weierstrass(const CurvePtr& c, const std::string& label, FieldTower& tower) {
    if (!c || c->is_line() || c->genus() != 1)
        throw DegenerateInput("only genus-one curves have a Weierstrass model");

    std::vector<Place> inf = places_at_infinity(c, tower);
    Place q = inf[0];

    Divisor d2, d3;
    d2.add(q, 2);
    d3.add(q, 3);

    // f has a double pole at q and nothing else; g a triple one
    std::vector<FnElem> l2 = riemann_roch_basis(c, d2, tower);
    FnElem f;
    for (const FnElem& e : l2)
        if (!e.is_constant()) {
            f = e;
            break;
        }
    std::vector<FnElem> l3 = riemann_roch_basis(c, d3, tower);
    FnElem g;
    for (const FnElem& e : l3) {
        if (fn_linear_solve(e, {FnElem(1), f}).has_value()) continue;
        g = e;
        break;
    }
    if (f.is_zero() || g.is_zero())
        throw InternalInconsistency("missing coordinate functions on a genus-one curve");

    // the seven functions 1, f, f^2, f^3, g, fg, g^2 live in the
    // six-dimensional space of functions with pole order at most 6 at q
    auto rel = fn_linear_solve(g * g, {FnElem(1), f, f * f, f * f * f, g, f * g});
    if (!rel) throw InternalInconsistency("no cubic relation between the coordinate functions");
    AlgebraicNumber c0 = (*rel)[0], c1 = (*rel)[1], c2 = (*rel)[2], c3 = (*rel)[3];
    AlgebraicNumber d0 = (*rel)[4], d1 = (*rel)[5];
    if (c3.is_zero()) throw InternalInconsistency("degenerate cubic relation");

    // complete the square in g, absorb the leading coefficient, depress
    AlgebraicNumber half(Rational(1, 2)), quarter(Rational(1, 4)), third(Rational(1, 3));
    AlgebraicNumber e0 = c0 + quarter * d0 * d0;
    AlgebraicNumber e1 = c1 + half * d0 * d1;
    AlgebraicNumber e2 = c2 + quarter * d1 * d1;
    AlgebraicNumber e3 = c3;
    AlgebraicNumber a = e1 * e3 - third * e2 * e2;
    AlgebraicNumber b = AlgebraicNumber(Rational(2, 27)) * e2 * e2 * e2 -
                        third * e1 * e2 * e3 + e0 * e3 * e3;

    AlgebraicNumber lam(twist_scale(a, b));
    AlgebraicNumber lam2 = lam * lam, lam3 = lam2 * lam;
    a = a / (lam2 * lam2);
    b = b / (lam3 * lam3);

    CurvePtr e = Curve::hyperelliptic(label, APoly({b, a, AlgebraicNumber(0), AlgebraicNumber(1)}),
                                      "u", "v");
    Morphism m;
    m.source = c;
    m.target = e;
    m.x_image = (FnElem(e3) * f + FnElem(third * e2)) / FnElem(lam2);
    m.y_image = FnElem(e3) * (g - FnElem(half) * (FnElem(d1) * f + FnElem(d0))) / FnElem(lam3);
    validate_morphism(m);
    return m;
}

namespace {

FnElem fn_pow(FnElem base, int e) {
    FnElem r(1);
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

// involutions of the curve other than y -> -y, as coordinate substitutions
struct Involution {
    FnElem tx, ty;
};

// express target as a polynomial in u; the caller promises this is possible
APoly poly_in(const FnElem& target, const FnElem& u, int degree_bound) {
    std::vector<FnElem> gens;
    FnElem p(1);
    for (int i = 0; i <= degree_bound; ++i) {
        gens.push_back(p);
        p *= u;
    }
    auto sol = fn_linear_solve(target, gens);
    if (!sol) throw InternalInconsistency("invariant is not polynomial in the quotient coordinate");
    return APoly(*sol);
}

} // namespace

QuotientSearch find_elliptic_quotients(const CurvePtr& c, FieldTower& tower) {
    QuotientSearch out;
    if (!c || c->is_line()) {
        out.complete = true;
        return out;
    }
    if (c->genus() == 1) {
        out.maps.push_back(normalize_to_weierstrass(c, c->label() + "_E1", tower));
        out.complete = true;
        return out;
    }
    out.complete = false;

    const APoly& p = c->rhs();
    int d = p.degree();
    FnElem x = FnElem::x_of(c), y = FnElem::y_of(c);

    std::vector<Involution> invs;
    if (d % 2 == 0) {
        // reflections x -> mu - x: the degree-(d-1) coefficient pins mu
        AlgebraicNumber mu = AlgebraicNumber(-2) * p[d - 1] / (AlgebraicNumber(d) * p.lc());
        APoly mirrored = p.compose(APoly({mu, AlgebraicNumber(-1)}));
        if (mirrored == p) {
            FnElem tx = FnElem(mu) - x;
            invs.push_back(Involution{tx, y});
            invs.push_back(Involution{tx, -y});
        }

        // inversions x -> c/x, y -> s y / x^m with s^2 = lam = c^m
        if (!p[0].is_zero()) {
            int m = d / 2;
            AlgebraicNumber ratio = p[0] / p.lc();
            APoly cpoly = APoly::monomial(AlgebraicNumber(1), d) - APoly(ratio * ratio);
            std::vector<AlgebraicNumber> cs = roots_in_field(cpoly, tower.top());
            std::sort(cs.begin(), cs.end());
            for (const AlgebraicNumber& cv : cs) {
                if (cv.is_zero()) continue;
                AlgebraicNumber lam = ratio;
                bool ok = true;
                AlgebraicNumber ci(1);
                for (int i = 0; i <= d && ok; ++i) {
                    ok = p[i] * ci == lam * p[d - i];
                    ci = ci * cv;
                }
                if (!ok) continue;
                // involution, not order four
                AlgebraicNumber cm(1);
                for (int i = 0; i < m; ++i) cm = cm * cv;
                if (!(lam == cm)) continue;
                APoly spoly = APoly::monomial(AlgebraicNumber(1), 2) - APoly(lam);
                std::vector<AlgebraicNumber> ss = roots_in_field(spoly, tower.top());
                std::sort(ss.begin(), ss.end());
                for (const AlgebraicNumber& s : ss) {
                    FnElem tx = FnElem(cv) / x;
                    FnElem ty = FnElem(s) * y / fn_pow(x, m);
                    invs.push_back(Involution{tx, ty});
                }
            }
        }
    }

    // quotient of each involution, kept when the reduced model is a cubic
    std::vector<Morphism> raw;
    for (const Involution& inv : invs) {
        // invariant coordinate: (x - mu/2)^2 for a reflection, x + c/x for an
        // inversion
        FnElem u;
        if (inv.tx.den().degree() == 0) {
            AlgebraicNumber mu = inv.tx.num_x()[0];
            FnElem sh = x - FnElem(mu * AlgebraicNumber(Rational(1, 2)));
            u = sh * sh;
        } else {
            u = x + inv.tx;
        }
        FnElem v = y + inv.ty;
        if (v.is_zero()) v = y * (x - inv.tx); // anti-invariant lift of a reflection
        // v^2 is invariant, hence polynomial in u
        APoly w = poly_in(v * v, u, d);
        auto parts = squarefree_factor(w);
        APoly wsf(w.lc()), s(AlgebraicNumber(1));
        for (const auto& [fac, mult] : parts) {
            if (mult % 2 == 1) wsf = wsf * fac;
            for (int i = 0; i < mult / 2; ++i) s = s * fac;
        }
        if (wsf.degree() != 3) continue;
        CurvePtr qc = Curve::hyperelliptic(c->label() + "_Q" + std::to_string(raw.size() + 1), wsf,
                                           "u", "v");
        Morphism quot;
        quot.source = c;
        quot.target = qc;
        quot.x_image = u;
        quot.y_image = v / eval_poly_fn(s, u);
        validate_morphism(quot);
        Morphism norm = normalize_to_weierstrass(qc, c->label() + "_E" + std::to_string(raw.size() + 1),
                                                 tower);
        raw.push_back(compose_morphism(norm, quot));
    }

    // composing with the automorphisms reaches the other sheets
    std::vector<Involution> autos;
    autos.push_back(Involution{x, -y});
    for (const Involution& inv : invs) autos.push_back(inv);

    auto push_unique = [&](const Morphism& m) {
        for (const Morphism& e : out.maps)
            if (e.target->label() == m.target->label() && e.x_image == m.x_image &&
                (e.y_image == m.y_image || e.y_image == -m.y_image))
                return;
        out.maps.push_back(m);
    };
    for (const Morphism& base : raw) {
        push_unique(base);
        for (const Involution& tau : autos) {
            Morphism comp;
            comp.source = c;
            comp.target = base.target;
            comp.x_image = compose_fn(base.x_image, tau.tx, tau.ty);
            comp.y_image = compose_fn(base.y_image, tau.tx, tau.ty);
            validate_morphism(comp);
            push_unique(comp);
        }
    }
    return out;
}

} // namespace algint
