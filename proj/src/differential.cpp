#include "algint/differential.hpp"

#include <algorithm>

#include "algint/errors.hpp"
#include "algint/linalg.hpp"

namespace algint {

LaurentSeries Differential::expand_at(const Place& p, long prec) const {
    if (curve() && p.curve->label() != curve()->label())
        throw DegenerateInput("expanding a differential at a place of a different curve");
    long base = std::max(prec, 1L) + 8;
    for (long work = base; work <= base * 512; work *= 2) {
        LocalExpansion e = local_expand(p, work);
        LaurentSeries s = f_.eval(e) * e.x.derivative();
        if (s.prec() >= prec) return s.truncated(prec);
    }
    throw PrecisionExhausted("differential expansion did not reach the requested precision");
}

long Differential::order_at(const Place& p) const {
    if (is_zero()) throw DegenerateInput("valuation of the zero differential");
    for (long prec = 16; prec <= 4096; prec *= 4) {
        LaurentSeries s = expand_at(p, prec);
        if (!s.is_zero()) return s.valuation();
    }
    throw InternalInconsistency("nonzero differential with unbounded vanishing order");
}

AlgebraicNumber Differential::residue_at(const Place& p) const {
    return expand_at(p, 1).coeff(-1);
}

std::string Differential::str() const {
    std::string xv = curve() ? curve()->xname() : "x";
    return "(" + f_.str() + ") d" + xv;
}

Divisor pole_divisor(const Differential& w, FieldTower& tower) {
    Divisor d;
    if (w.is_zero()) return d;
    CurvePtr c = w.curve();
    if (!c) throw DegenerateInput("differential not attached to a curve");
    std::vector<Place> cand;
    if (w.fn().den().degree() > 0) cand = places_above_roots(c, w.fn().den(), tower);
    for (const Place& p : places_at_infinity(c, tower)) cand.push_back(p);
    for (const Place& p : cand) {
        long k = w.order_at(p);
        if (k < 0) d.add(p, static_cast<int>(-k));
    }
    return d;
}

std::vector<PlaceValue> residues(const Differential& w, FieldTower& tower) {
    std::vector<PlaceValue> out;
    Divisor d = pole_divisor(w, tower);
    for (const auto& [p, n] : d.entries()) {
        (void)n;
        out.push_back(PlaceValue{p, w.residue_at(p)});
    }
    return out;
}

FormKind classify(const Differential& w, FieldTower& tower) {
    Divisor d = pole_divisor(w, tower);
    if (d.empty()) return FormKind::First;
    bool all_simple = true;
    for (const auto& [p, n] : d.entries()) {
        (void)p;
        if (n != 1) all_simple = false;
    }
    if (all_simple) return FormKind::Third;
    bool any_residue = false;
    for (const auto& [p, n] : d.entries()) {
        (void)n;
        if (!w.residue_at(p).is_zero()) any_residue = true;
    }
    return any_residue ? FormKind::Mixed : FormKind::Second;
}

std::string to_string(FormKind k) {
    switch (k) {
        case FormKind::First: return "first kind";
        case FormKind::Second: return "second kind";
        case FormKind::Third: return "third kind";
        case FormKind::Mixed: return "mixed";
    }
    return "?";
}

namespace {

long ceil_div(long n, long d) { return (n + d - 1) / d; }
long floor_div(long n, long d) { return n >= 0 ? n / d : -((-n + d - 1) / d); }

} // namespace

std::vector<FnElem> riemann_roch_basis(const CurvePtr& c, const Divisor& d, FieldTower& tower) {
    // gather the finite x-centers together with all their sibling places
    std::vector<AlgebraicNumber> centers;
    for (const auto& [p, n] : d.entries()) {
        (void)n;
        if (p.is_infinite()) continue;
        bool seen = false;
        for (const auto& x0 : centers)
            if (x0 == p.x0) { seen = true; break; }
        if (!seen) centers.push_back(p.x0);
    }

    std::vector<Place> constraint_places;
    APoly dpoly(AlgebraicNumber(1));
    for (const AlgebraicNumber& x0 : centers) {
        long m = 0;
        for (const Place& s : places_above(c, x0, tower)) {
            int n = d.coeff(s);
            if (n > 0) m = std::max(m, ceil_div(n, s.ramification()));
            constraint_places.push_back(s);
        }
        if (m > 0) dpoly = dpoly * pow(APoly({-x0, AlgebraicNumber(1)}), m);
    }
    std::vector<Place> inf = places_at_infinity(c, tower);
    for (const Place& p : inf) constraint_places.push_back(p);
    std::sort(constraint_places.begin(), constraint_places.end());

    // degree bounds: leading terms of the 1- and y-components cannot cancel
    // at every infinite place simultaneously, so componentwise bounds are safe
    long degd = dpoly.degree();
    long dega, degb;
    if (c->is_line()) {
        dega = degd + d.coeff(inf[0]);
        degb = -1;
    } else if (c->rhs().degree() % 2 == 0) {
        long g = c->genus();
        long m = std::max(d.coeff(inf[0]), d.coeff(inf[1]));
        dega = degd + m;
        degb = degd + m - (g + 1);
    } else {
        long g = c->genus();
        long n = d.coeff(inf[0]);
        dega = floor_div(2 * degd + n, 2);
        degb = floor_div(2 * degd + n - (2 * g + 1), 2);
    }
    if (dega < 0 && degb < 0) return {};

    std::vector<FnElem> cand;
    for (long i = 0; i <= dega; ++i)
        cand.push_back(FnElem(c, APoly::monomial(AlgebraicNumber(1), static_cast<int>(i)), APoly(),
                              dpoly));
    for (long i = 0; i <= degb; ++i)
        cand.push_back(FnElem(c, APoly(), APoly::monomial(AlgebraicNumber(1), static_cast<int>(i)),
                              dpoly));

    // vanishing constraints: at each relevant place every admissible f must
    // satisfy ord(f) >= -n, i.e. the series coefficients below -n vanish
    std::vector<std::vector<AlgebraicNumber>> rows;
    for (const Place& p : constraint_places) {
        long n = d.coeff(p);
        std::vector<LaurentSeries> exp;
        long vmin = -n;
        for (const FnElem& f : cand) {
            LaurentSeries s = f.expand_at(p, -n);
            vmin = std::min(vmin, s.valuation());
            exp.push_back(std::move(s));
        }
        for (long k = vmin; k < -n; ++k) {
            std::vector<AlgebraicNumber> row;
            row.reserve(cand.size());
            bool nonzero = false;
            for (const LaurentSeries& s : exp) {
                row.push_back(s.coeff(k));
                if (!row.back().is_zero()) nonzero = true;
            }
            if (nonzero) rows.push_back(std::move(row));
        }
    }

    Mat<AlgebraicNumber> a(static_cast<int>(rows.size()), static_cast<int>(cand.size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cand.size(); ++j) a.at(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];

    std::vector<FnElem> basis;
    for (const auto& v : nullspace(a)) {
        FnElem f = FnElem::zero(c);
        for (size_t j = 0; j < cand.size(); ++j)
            if (!v[j].is_zero()) f += FnElem(v[j]) * cand[j];
        basis.push_back(f);
    }
    return basis;
}

std::vector<Differential> form_space(const CurvePtr& c, const Divisor& m, FieldTower& tower) {
    Divisor bound = m + canonical_divisor(c, tower);
    std::vector<Differential> out;
    for (const FnElem& f : riemann_roch_basis(c, bound, tower)) out.push_back(Differential(f));
    return out;
}

std::optional<std::vector<AlgebraicNumber>> fn_linear_solve(
    const FnElem& target, const std::vector<FnElem>& gens,
    std::vector<AlgebraicNumber>* witness) {
    APoly den(AlgebraicNumber(1));
    den = lcm(den, target.den());
    for (const FnElem& g : gens) den = lcm(den, g.den());

    struct Pair {
        APoly a, b;
    };
    auto scaled = [&](const FnElem& f) {
        APoly m = exact_div(den, f.den());
        return Pair{f.num_x() * m, f.num_y() * m};
    };
    Pair t = scaled(target);
    std::vector<Pair> cols;
    cols.reserve(gens.size());
    long da = t.a.degree(), db = t.b.degree();
    for (const FnElem& g : gens) {
        cols.push_back(scaled(g));
        da = std::max(da, static_cast<long>(cols.back().a.degree()));
        db = std::max(db, static_cast<long>(cols.back().b.degree()));
    }
    long rows = (da + 1) + (db + 1);
    if (rows <= 0) return std::vector<AlgebraicNumber>(gens.size(), AlgebraicNumber(0));
    Mat<AlgebraicNumber> a(static_cast<int>(rows), static_cast<int>(gens.size()));
    std::vector<AlgebraicNumber> rhs(static_cast<size_t>(rows), AlgebraicNumber(0));
    auto fill = [&](const Pair& p, int col) {
        for (long i = 0; i <= da; ++i) {
            AlgebraicNumber v = p.a[static_cast<int>(i)];
            if (col < 0)
                rhs[static_cast<size_t>(i)] = v;
            else
                a.at(static_cast<int>(i), col) = v;
        }
        for (long i = 0; i <= db; ++i) {
            AlgebraicNumber v = p.b[static_cast<int>(i)];
            if (col < 0)
                rhs[static_cast<size_t>(da + 1 + i)] = v;
            else
                a.at(static_cast<int>(da + 1 + i), col) = v;
        }
    };
    fill(t, -1);
    for (size_t j = 0; j < cols.size(); ++j) fill(cols[j], static_cast<int>(j));
    return solve(a, rhs, witness);
}

Exactness exactness(const Differential& w, FieldTower& tower) {
    Exactness r;
    if (w.is_zero()) {
        r.exact = true;
        r.primitive = w.curve() ? FnElem::zero(w.curve()) : FnElem(0);
        return r;
    }
    Divisor d = pole_divisor(w, tower);
    if (d.empty()) return r; // a nonzero form without poles is never exact

    for (const auto& [p, n] : d.entries()) {
        (void)n;
        AlgebraicNumber res = w.residue_at(p);
        if (!res.is_zero()) {
            r.residue_obstruction = true;
            r.witness_place = p;
            r.witness_residue = res;
            return r;
        }
    }

    // every pole has order >= 2 here (an order-1 pole has nonzero residue),
    // and a primitive can only have poles one order lower
    Divisor dg;
    for (const auto& [p, n] : d.entries()) dg.add(p, n - 1);
    std::vector<FnElem> basis = riemann_roch_basis(w.curve(), dg, tower);
    std::vector<FnElem> gens;
    gens.reserve(basis.size());
    for (const FnElem& b : basis) gens.push_back(b.derivative());
    auto sol = fn_linear_solve(w.fn(), gens);
    if (!sol) return r;
    FnElem gamma = FnElem::zero(w.curve());
    for (size_t j = 0; j < basis.size(); ++j)
        if (!(*sol)[j].is_zero()) gamma += FnElem((*sol)[j]) * basis[j];
    r.exact = true;
    r.primitive = gamma;
    return r;
}

} // namespace algint
