#include "algint/trace.hpp"

#include <algorithm>

#include "algint/errors.hpp"
#include "algint/linalg.hpp"

namespace algint {

namespace {

using FPoly = Poly<FnElem>;
using Pair = std::pair<FPoly, FPoly>; // q(x) + r(x) y in the fiber coordinates

FnElem fn_pow(FnElem base, int e) {
    FnElem r(1);
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

FPoly lift_to_fn(const APoly& p) {
    FPoly r;
    for (int i = 0; i <= p.degree(); ++i)
        if (!p[i].is_zero()) r.set_coeff(i, FnElem(p[i]));
    return r;
}

// reduce a relation to q(x) + r(x) y: fiber coordinates stay formal, base
// coordinates become function-field scalars, y powers fold through y^2 = rhs
Pair eval_rel(const CorrPoly& rel, const CurvePtr& base, const FPoly& rhs) {
    FPoly q, r;
    for (const CorrMono& m : rel.terms) {
        if (m.c.is_zero()) continue;
        FnElem s = FnElem(m.c);
        if (m.xr > 0) s *= fn_pow(FnElem::x_of(base), m.xr);
        if (m.yr > 0) s *= fn_pow(FnElem::y_of(base), m.yr);
        FPoly part = FPoly::monomial(s, m.xl);
        if (m.yl >= 2) part *= pow(rhs, m.yl / 2);
        if (m.yl % 2 == 1)
            r += part;
        else
            q += part;
    }
    return Pair{q, r};
}

} // namespace

FnElem eval_poly_fn(const APoly& p, const FnElem& at) {
    FnElem r(0);
    for (int i = p.degree(); i >= 0; --i) r = r * at + FnElem(p[i]);
    return r;
}

CorrPoly CorrPoly::derivative(int slot) const {
    CorrPoly r;
    for (const CorrMono& m : terms) {
        int e = slot == 0 ? m.xl : slot == 1 ? m.yl : slot == 2 ? m.xr : m.yr;
        if (e == 0) continue;
        CorrMono d = m;
        d.c = d.c * AlgebraicNumber(e);
        (slot == 0 ? d.xl : slot == 1 ? d.yl : slot == 2 ? d.xr : d.yr) = e - 1;
        r.terms.push_back(d);
    }
    return r;
}

bool CorrPoly::uses(int slot) const {
    for (const CorrMono& m : terms) {
        int e = slot == 0 ? m.xl : slot == 1 ? m.yl : slot == 2 ? m.xr : m.yr;
        if (e > 0 && !m.c.is_zero()) return true;
    }
    return false;
}

CorrPoly CorrPoly::swapped_sides() const {
    CorrPoly r;
    for (CorrMono m : terms) {
        std::swap(m.xl, m.xr);
        std::swap(m.yl, m.yr);
        r.terms.push_back(m);
    }
    return r;
}

Correspondence Correspondence::transposed() const {
    Correspondence t;
    t.label = label;
    t.left = right;
    t.right = left;
    for (const CorrPoly& r : rels) t.rels.push_back(r.swapped_sides());
    return t;
}

FiberAlgebra::FiberAlgebra(const Correspondence& z) : base_(z.right), fiber_(z.left), rels_(z.rels) {
    if (!base_ || !fiber_) throw DegenerateInput("correspondence without curves");
    has_y_ = !fiber_->is_line();
    for (const CorrPoly& r : rels_) {
        if (!has_y_ && r.uses(1))
            throw DegenerateInput("relation uses a y coordinate the left curve does not have");
        if (base_->is_line() && r.uses(3))
            throw DegenerateInput("relation uses a y coordinate the right curve does not have");
    }
    if (has_y_) rhs_ = lift_to_fn(fiber_->rhs());

    std::vector<Pair> gens;
    for (const CorrPoly& rel : rels_) {
        Pair e = eval_rel(rel, base_, rhs_);
        if (e.first.is_zero() && e.second.is_zero()) continue;
        gens.push_back(e);
        if (has_y_) gens.push_back(Pair{e.second * rhs_, e.first});
    }

    const std::string dir = " over " + base_->label();
    if (has_y_) {
        // triangularize the relation module in F[x] + F[x] y
        FPoly g, alpha;
        for (const Pair& e : gens) {
            if (e.second.is_zero()) continue;
            if (g.is_zero()) {
                g = e.second;
                alpha = e.first;
            } else {
                auto [d, s, t] = xgcd(g, e.second);
                alpha = s * alpha + t * e.first;
                g = d;
            }
        }
        if (g.is_zero())
            throw FibralComponent("correspondence is not generically finite" + dir);
        FnElem ginv = FnElem(1) / g.lc();
        alpha = alpha * ginv;
        g = g * ginv;
        FPoly p;
        for (const Pair& e : gens) {
            FPoly c = e.first - exact_div(e.second, g) * alpha;
            p = gcd(p, c);
        }
        if (p.is_zero())
            throw FibralComponent("correspondence is not generically finite" + dir);
        p_ = p.monic();
        g_ = g;
        alpha_ = alpha % p_;
        n_ = p_.degree() + g_.degree();
    } else {
        FPoly p;
        for (const Pair& e : gens) p = gcd(p, e.first);
        if (p.is_zero())
            throw FibralComponent("correspondence is not generically finite" + dir);
        p_ = p.monic();
        g_ = FPoly(FnElem(1));
        n_ = p_.degree();
    }
    if (n_ == 0)
        throw FibralComponent("no component of the correspondence dominates" + dir);
}

std::pair<Poly<FnElem>, Poly<FnElem>> FiberAlgebra::canonical(FPoly u, FPoly w) const {
    if (has_y_) {
        auto [q, wr] = divmod(w, g_);
        u -= q * alpha_;
        w = wr;
    }
    u = u % p_;
    return {u, w};
}

std::vector<FnElem> FiberAlgebra::to_vec(const Pair& e) const {
    std::vector<FnElem> v(static_cast<size_t>(n_), FnElem(0));
    for (int i = 0; i < p_.degree(); ++i) v[static_cast<size_t>(i)] = e.first[i];
    for (int j = 0; j < g_.degree(); ++j) v[static_cast<size_t>(p_.degree() + j)] = e.second[j];
    return v;
}

std::pair<Poly<FnElem>, Poly<FnElem>> FiberAlgebra::from_vec(const std::vector<FnElem>& v) const {
    FPoly u, w;
    for (int i = 0; i < p_.degree(); ++i) u.set_coeff(i, v[static_cast<size_t>(i)]);
    for (int j = 0; j < g_.degree(); ++j) w.set_coeff(j, v[static_cast<size_t>(p_.degree() + j)]);
    return {u, w};
}

std::vector<FnElem> FiberAlgebra::element(const FPoly& q, const FPoly& r) const {
    if (!has_y_ && !r.is_zero())
        throw DegenerateInput("element uses a y coordinate the fiber does not have");
    return to_vec(canonical(q, r));
}

std::vector<FnElem> FiberAlgebra::one() const { return element(FPoly(FnElem(1)), FPoly()); }

std::vector<FnElem> FiberAlgebra::mul(const std::vector<FnElem>& a,
                                      const std::vector<FnElem>& b) const {
    auto [u1, w1] = from_vec(a);
    auto [u2, w2] = from_vec(b);
    FPoly u = u1 * u2;
    if (has_y_) u += w1 * w2 * rhs_;
    FPoly w = u1 * w2 + w1 * u2;
    return to_vec(canonical(u, w));
}

FnElem FiberAlgebra::trace_of(const std::vector<FnElem>& a) const {
    FnElem t(0);
    for (long k = 0; k < n_; ++k) {
        std::vector<FnElem> e(static_cast<size_t>(n_), FnElem(0));
        e[static_cast<size_t>(k)] = FnElem(1);
        t += mul(a, e)[static_cast<size_t>(k)];
    }
    return t;
}

std::optional<std::vector<FnElem>> FiberAlgebra::solve_mul(const std::vector<FnElem>& a,
                                                           const std::vector<FnElem>& c) const {
    Mat<FnElem> m(static_cast<int>(n_), static_cast<int>(n_));
    for (long k = 0; k < n_; ++k) {
        std::vector<FnElem> e(static_cast<size_t>(n_), FnElem(0));
        e[static_cast<size_t>(k)] = FnElem(1);
        std::vector<FnElem> col = mul(a, e);
        for (long i = 0; i < n_; ++i)
            m.at(static_cast<int>(i), static_cast<int>(k)) = col[static_cast<size_t>(i)];
    }
    if (!nullspace(m).empty()) return std::nullopt;
    return solve(m, c);
}

std::vector<FnElem> FiberAlgebra::coordinate_derivative() const {
    // implicit differentiation of each relation with respect to the base
    // coordinate, cleared of the y in dy/dx = rhs'/(2y)
    FnElem dv(0);
    if (!base_->is_line()) {
        FnElem y = FnElem::y_of(base_);
        dv = eval_poly_fn(base_->rhs().derivative(), FnElem::x_of(base_)) / (FnElem(2) * y);
    }

    std::vector<std::vector<FnElem>> ds, es;
    for (const CorrPoly& rel : rels_) {
        Pair rx = eval_rel(rel.derivative(0), base_, rhs_);
        Pair ru = eval_rel(rel.derivative(2), base_, rhs_);
        Pair rv = eval_rel(rel.derivative(3), base_, rhs_);
        Pair d, e;
        if (has_y_) {
            Pair ry = eval_rel(rel.derivative(1), base_, rhs_);
            // 2y rx + rhs' ry
            FPoly drv = rhs_.derivative();
            d.first = FnElem(2) * (rx.second * rhs_) + drv * ry.first;
            d.second = FnElem(2) * rx.first + drv * ry.second;
            // -2y (ru + dv rv)
            FPoly su = ru.first + rv.first * FPoly(dv);
            FPoly sw = ru.second + rv.second * FPoly(dv);
            e.first = FnElem(-2) * (sw * rhs_);
            e.second = FnElem(-2) * su;
        } else {
            d = rx;
            e.first = -(ru.first + rv.first * FPoly(dv));
            e.second = FPoly();
        }
        std::vector<FnElem> dval = to_vec(canonical(d.first, d.second));
        std::vector<FnElem> eval = to_vec(canonical(e.first, e.second));
        bool zero = true;
        for (const FnElem& x : dval) zero = zero && x.is_zero();
        for (const FnElem& x : eval) zero = zero && x.is_zero();
        if (zero) continue;
        ds.push_back(dval);
        es.push_back(eval);
    }

    long m = static_cast<long>(ds.size());
    Mat<FnElem> big(static_cast<int>(m * n_), static_cast<int>(n_));
    std::vector<FnElem> rhs(static_cast<size_t>(m * n_), FnElem(0));
    for (long k = 0; k < m; ++k) {
        for (long col = 0; col < n_; ++col) {
            std::vector<FnElem> e(static_cast<size_t>(n_), FnElem(0));
            e[static_cast<size_t>(col)] = FnElem(1);
            std::vector<FnElem> prod = mul(ds[static_cast<size_t>(k)], e);
            for (long i = 0; i < n_; ++i)
                big.at(static_cast<int>(k * n_ + i), static_cast<int>(col)) =
                    prod[static_cast<size_t>(i)];
        }
        for (long i = 0; i < n_; ++i)
            rhs[static_cast<size_t>(k * n_ + i)] = es[static_cast<size_t>(k)][static_cast<size_t>(i)];
    }
    if (!nullspace(big).empty())
        throw FibralComponent("correspondence does not determine a coordinate derivative over " +
                              base_->label());
    auto sol = solve(big, rhs);
    if (!sol)
        throw FibralComponent("correspondence relations differentiate inconsistently over " +
                              base_->label());
    return *sol;
}

void validate_correspondence(const Correspondence& z) {
    FiberAlgebra over_right(z);
    FiberAlgebra over_left(z.transposed());
    (void)over_right;
    (void)over_left;
}

Differential trace_image(const Correspondence& z, const Differential& w) {
    if (w.curve() && w.curve()->label() != z.left->label())
        throw DegenerateInput("differential does not live on the left curve of the correspondence");
    FiberAlgebra a(z);
    std::vector<FnElem> xi = a.coordinate_derivative();
    const FnElem& f = w.fn();
    std::vector<FnElem> num = a.element(lift_to_fn(f.num_x()), lift_to_fn(f.num_y()));
    std::vector<FnElem> den = a.element(lift_to_fn(f.den()), Poly<FnElem>());
    auto invden = a.solve_mul(den, a.one());
    if (!invden)
        throw DegenerateInput("differential has a pole along a fiber component of " + z.label);
    FnElem t = a.trace_of(a.mul(a.mul(num, *invden), xi));
    return Differential(FnElem::one(z.right) * t);
}

void validate_morphism(const Morphism& phi) {
    if (!phi.source || !phi.target) throw DegenerateInput("morphism without curves");
    if (phi.x_image.curve() && phi.x_image.curve()->label() != phi.source->label())
        throw DegenerateInput("morphism coordinates do not live on the source curve");
    if (phi.x_image.is_constant())
        throw DegenerateInput("morphism contracts the source curve to a point");
    if (!phi.target->is_line()) {
        FnElem want = eval_poly_fn(phi.target->rhs(), phi.x_image);
        if (!(phi.y_image * phi.y_image == want))
            throw DegenerateInput("morphism coordinates do not satisfy the target equation");
    }
}

Differential pullback(const Morphism& phi, const Differential& w) {
    validate_morphism(phi);
    if (w.curve() && w.curve()->label() != phi.target->label())
        throw DegenerateInput("differential does not live on the morphism target");
    const FnElem& f = w.fn();
    FnElem num = eval_poly_fn(f.num_x(), phi.x_image);
    if (!f.num_y().is_zero()) num += eval_poly_fn(f.num_y(), phi.x_image) * phi.y_image;
    FnElem den = eval_poly_fn(f.den(), phi.x_image);
    return Differential(num / den * phi.x_image.derivative());
}

namespace {

// relation xr * den(xl, yl) - num(xl, yl) for one coordinate of a graph
CorrPoly graph_relation(const FnElem& image, int target_slot, const CurvePtr& source,
                        const std::string& what) {
    // a 0/0 point of the map would put a spurious constant solution in every
    // fiber; the canonical form rules it out unless num and den share a zero
    // on the curve
    const APoly &na = image.num_x(), &nb = image.num_y(), &dc = image.den();
    if (dc.degree() > 0) {
        APoly norm_num = na * na;
        if (!nb.is_zero()) norm_num = norm_num - nb * nb * source->rhs();
        if (gcd(dc, norm_num).degree() > 0)
            throw DegenerateInput(what + " is indeterminate at a point of the source curve");
    }
    CorrPoly rel;
    for (int i = 0; i <= dc.degree(); ++i) {
        if (dc[i].is_zero()) continue;
        CorrMono m;
        m.xl = i;
        (target_slot == 2 ? m.xr : m.yr) = 1;
        m.c = dc[i];
        rel.terms.push_back(m);
    }
    for (int i = 0; i <= na.degree(); ++i) {
        if (na[i].is_zero()) continue;
        CorrMono m;
        m.xl = i;
        m.c = -na[i];
        rel.terms.push_back(m);
    }
    for (int i = 0; i <= nb.degree(); ++i) {
        if (nb[i].is_zero()) continue;
        CorrMono m;
        m.xl = i;
        m.yl = 1;
        m.c = -nb[i];
        rel.terms.push_back(m);
    }
    return rel;
}

} // namespace

Correspondence graph_of(const Morphism& phi, const std::string& label) {
    validate_morphism(phi);
    Correspondence z;
    z.label = label;
    z.left = phi.source;
    z.right = phi.target;
    z.rels.push_back(graph_relation(phi.x_image, 2, phi.source, "x coordinate of " + label));
    if (!phi.target->is_line())
        z.rels.push_back(graph_relation(phi.y_image, 3, phi.source, "y coordinate of " + label));
    return z;
}

long degree(const Morphism& phi) { return FiberAlgebra(graph_of(phi, "graph")).dim(); }

} // namespace algint
