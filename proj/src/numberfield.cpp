#include "algint/numberfield.hpp"

#include <algorithm>

#include "algint/errors.hpp"
#include "algint/linalg.hpp"
#include "algint/zfactor.hpp"

namespace algint {

namespace {

// coordinate arithmetic mod a monic rational minimal polynomial
QPoly coords_to_poly(const std::vector<Rational>& c) { return QPoly(c); }

std::vector<Rational> poly_to_coords(const QPoly& p, int degree) {
    std::vector<Rational> c(degree, Rational(0));
    for (int i = 0; i <= p.degree(); ++i) c[i] = p[i];
    return c;
}

QPoly mulmod(const QPoly& a, const QPoly& b, const QPoly& m) { return (a * b) % m; }

QPoly invmod(const QPoly& a, const QPoly& m) {
    auto [g, s, t] = xgcd(a, m);
    (void)t;
    if (g.degree() != 0) throw DegenerateInput("division by zero divisor in number field");
    return s % m;
}

std::string default_gen_name(int level) {
    if (level <= 26) return std::string(1, static_cast<char>('a' + level - 1));
    return "g" + std::to_string(level);
}

} // namespace

NumberField::Ptr NumberField::create(QPoly minpoly, std::string gen_name, Ptr parent,
                                     std::vector<Rational> parent_embed) {
    if (minpoly.degree() < 2) throw DegenerateInput("number field needs a minimal polynomial of degree >= 2");
    minpoly = minpoly.monic();
    if (!is_irreducible_q(minpoly))
        throw DegenerateInput("minimal polynomial is reducible over Q: " + minpoly.to_string("t"));
    if (parent && static_cast<int>(parent_embed.size()) != minpoly.degree())
        throw DegenerateInput("parent embedding has wrong length");
    if (!parent && !parent_embed.empty())
        throw DegenerateInput("embedding supplied without a parent field");
    auto f = std::shared_ptr<NumberField>(new NumberField());
    f->minpoly_ = std::move(minpoly);
    f->parent_ = std::move(parent);
    f->parent_embed_ = std::move(parent_embed);
    f->level_ = f->parent_ ? f->parent_->level() + 1 : 1;
    f->gen_name_ = gen_name.empty() ? default_gen_name(f->level_) : std::move(gen_name);
    return f;
}

AlgebraicNumber NumberField::generator() const {
    std::vector<Rational> c(degree(), Rational(0));
    c[1] = 1;
    return AlgebraicNumber(shared_from_this(), std::move(c));
}

AlgebraicNumber::AlgebraicNumber(NumberField::Ptr f, std::vector<Rational> coords)
    : field_(std::move(f)), coords_(std::move(coords)) {
    if (!field_) throw DegenerateInput("null field in algebraic number");
    coords_.resize(field_->degree(), Rational(0));
    normalize();
}

void AlgebraicNumber::normalize() {
    if (!field_) return;
    bool tail_zero = true;
    for (size_t i = 1; i < coords_.size(); ++i)
        if (sgn(coords_[i]) != 0) { tail_zero = false; break; }
    if (tail_zero) {
        Rational q = coords_.empty() ? Rational(0) : coords_[0];
        field_.reset();
        coords_.assign(1, q);
    }
}

bool AlgebraicNumber::is_zero() const {
    for (const Rational& c : coords_)
        if (sgn(c) != 0) return false;
    return true;
}

bool AlgebraicNumber::is_rational() const { return field_ == nullptr; }

Rational AlgebraicNumber::to_rational() const {
    if (!is_rational()) throw DegenerateInput("value is not rational: " + str());
    return coords_[0];
}

AlgebraicNumber AlgebraicNumber::lifted_to(const NumberField::Ptr& target) const {
    if (field_ == target) return *this;
    if (!target) {
        if (is_rational()) return *this;
        throw DegenerateInput("cannot lower a proper algebraic number to Q");
    }
    // collect the chain from target down to our field
    std::vector<NumberField::Ptr> chain;
    NumberField::Ptr cur = target;
    while (cur && cur != field_) {
        chain.push_back(cur);
        cur = cur->parent();
    }
    if (cur != field_)
        throw UnsupportedBaseField("values from unrelated number field chains");
    // lift step by step from our level upward
    AlgebraicNumber v = *this;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        const NumberField::Ptr& child = *it;
        const QPoly& m = child->minpoly();
        QPoly embed = coords_to_poly(child->parent_embed());
        QPoly acc; // Horner in the child's coordinates
        if (v.is_rational()) {
            acc = QPoly(v.to_rational());
        } else {
            const auto& cs = v.coords();
            for (size_t i = cs.size(); i-- > 0;) acc = mulmod(acc, embed, m) + QPoly(cs[i]);
        }
        v = AlgebraicNumber(child, poly_to_coords(acc, child->degree()));
    }
    return v;
}

std::pair<AlgebraicNumber, AlgebraicNumber> unify(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    if (a.field() == b.field()) return {a, b};
    if (!a.field() || !b.field()) return {a, b}; // rationals mix with anything
    if (a.level() >= b.level()) return {a, b.lifted_to(a.field())};
    return {a.lifted_to(b.field()), b};
}

namespace {

// Coordinates of v in the field f (f deep enough; nullptr means plain Q).
std::vector<Rational> coords_in(const AlgebraicNumber& v, const NumberField::Ptr& f) {
    if (!f) return {v.to_rational()};
    if (v.field() == f) return v.coords();
    if (v.is_rational()) {
        std::vector<Rational> c(f->degree(), Rational(0));
        c[0] = v.to_rational();
        return c;
    }
    return v.lifted_to(f).coords();
}

NumberField::Ptr deeper_field(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    if (!a.field()) return b.field();
    if (!b.field()) return a.field();
    return a.level() >= b.level() ? a.field() : b.field();
}

} // namespace

AlgebraicNumber operator+(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    auto [x, y] = unify(a, b);
    NumberField::Ptr f = deeper_field(x, y);
    if (!f) return AlgebraicNumber(x.to_rational() + y.to_rational());
    std::vector<Rational> c = coords_in(x, f);
    std::vector<Rational> d = coords_in(y, f);
    for (size_t i = 0; i < c.size(); ++i) c[i] += d[i];
    return AlgebraicNumber(f, std::move(c));
}

AlgebraicNumber operator-(const AlgebraicNumber& a, const AlgebraicNumber& b) { return a + (-b); }

AlgebraicNumber AlgebraicNumber::operator-() const {
    AlgebraicNumber r = *this;
    for (Rational& c : r.coords_) c = -c;
    return r;
}

AlgebraicNumber operator*(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    auto [x, y] = unify(a, b);
    NumberField::Ptr f = deeper_field(x, y);
    if (!f) return AlgebraicNumber(x.to_rational() * y.to_rational());
    QPoly p = mulmod(coords_to_poly(coords_in(x, f)), coords_to_poly(coords_in(y, f)), f->minpoly());
    return AlgebraicNumber(f, poly_to_coords(p, f->degree()));
}

AlgebraicNumber AlgebraicNumber::inverse() const {
    if (is_zero()) throw DegenerateInput("inverse of zero");
    if (!field_) return AlgebraicNumber(Rational(1) / to_rational());
    QPoly inv = invmod(coords_to_poly(coords_), field_->minpoly());
    return AlgebraicNumber(field_, poly_to_coords(inv, field_->degree()));
}

AlgebraicNumber operator/(const AlgebraicNumber& a, const AlgebraicNumber& b) { return a * b.inverse(); }

bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    if (a.field() == b.field()) return a.coords() == b.coords();
    auto [x, y] = unify(a, b);
    NumberField::Ptr f = deeper_field(x, y);
    return coords_in(x, f) == coords_in(y, f);
}

bool operator<(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    auto [x, y] = unify(a, b);
    NumberField::Ptr f = deeper_field(x, y);
    return coords_in(x, f) < coords_in(y, f);
}

std::string AlgebraicNumber::str() const {
    if (!field_) return to_string(coords_[0]);
    return "(" + coords_to_poly(coords_).to_string(field_->gen_name()) + ")";
}

NumberField::Ptr field_of(const APoly& f) {
    NumberField::Ptr best;
    for (const AlgebraicNumber& c : f.coeffs())
        if (c.field() && (!best || c.field()->level() > best->level())) best = c.field();
    return best;
}

APoly lift_poly(const APoly& f, const NumberField::Ptr& target) {
    std::vector<AlgebraicNumber> c;
    c.reserve(f.degree() + 1);
    for (int i = 0; i <= f.degree(); ++i) c.push_back(f[i].lifted_to(target));
    return APoly(c);
}

QPoly rational_poly(const APoly& f) {
    std::vector<Rational> c;
    c.reserve(f.degree() + 1);
    for (int i = 0; i <= f.degree(); ++i) c.push_back(f[i].to_rational());
    return QPoly(c);
}

APoly from_rational_poly(const QPoly& f) {
    std::vector<AlgebraicNumber> c;
    c.reserve(f.degree() + 1);
    for (int i = 0; i <= f.degree(); ++i) c.emplace_back(f[i]);
    return APoly(c);
}

namespace {

// Trager norm: Res_t(M(t), sum_i coord_i(t) * (x - s t)^i) as element of Q[x].
QPoly trager_norm(const APoly& f, const NumberField::Ptr& k, long s) {
    using TPoly = Poly<QPoly>; // polynomial in t with Q[x] coefficients
    TPoly x_elem(QPoly::var()); // x as a constant in t
    TPoly t_elem = TPoly::monomial(QPoly(Rational(1)), 1);
    TPoly shift = x_elem - QPoly(Rational(s)) * t_elem; // x - s t
    TPoly G;
    TPoly power(QPoly(Rational(1)));
    for (int i = 0; i <= f.degree(); ++i) {
        const AlgebraicNumber& ci = f[i].lifted_to(k);
        QPoly coord = ci.is_rational() ? QPoly(ci.to_rational()) : QPoly(ci.coords());
        // coord is a polynomial in t with rational coefficients
        TPoly coord_t;
        for (int j = 0; j <= coord.degree(); ++j)
            coord_t += TPoly::monomial(QPoly(coord[j]), j);
        G += coord_t * power;
        power = power * shift;
    }
    TPoly M;
    for (int j = 0; j <= k->minpoly().degree(); ++j)
        M += TPoly::monomial(QPoly(k->minpoly()[j]), j);
    return sylvester_resultant(M, G);
}

std::string coeff_key(const APoly& p) {
    std::string s;
    for (int i = p.degree(); i >= 0; --i) s += p[i].str() + ",";
    return s;
}

// factor a squarefree monic polynomial over its coefficient field
std::vector<APoly> factor_squarefree(const APoly& f, const NumberField::Ptr& k) {
    if (!k) {
        QFactorization qf = factor_rational_poly(rational_poly(f));
        std::vector<APoly> out;
        for (const auto& [g, mult] : qf.factors) {
            (void)mult; // squarefree input: all multiplicities 1
            out.push_back(from_rational_poly(g));
        }
        return out;
    }
    for (long trial = 0; trial < 40; ++trial) {
        long s = (trial % 2 == 0) ? trial / 2 : -(trial / 2 + 1); // 0, -1, 1, -2, 2, ...
        QPoly norm = trager_norm(f, k, s);
        if (norm.degree() != f.degree() * k->degree()) continue;
        if (!is_squarefree(norm)) continue;
        QFactorization qf = factor_rational_poly(norm);
        std::vector<APoly> out;
        AlgebraicNumber alpha = k->generator();
        for (const auto& [h, mult] : qf.factors) {
            (void)mult;
            // factor of f: gcd(f, h(x + s*alpha)) over k
            APoly hx = lift_poly(from_rational_poly(h), k);
            APoly shift = APoly::var() + APoly(AlgebraicNumber(Rational(s)) * alpha);
            APoly g = gcd(f, hx.compose(shift));
            if (g.degree() > 0) out.push_back(g.monic());
        }
        // validation: degrees must add up
        int total = 0;
        for (const auto& g : out) total += g.degree();
        if (total != f.degree()) continue;
        std::sort(out.begin(), out.end(), [](const APoly& a, const APoly& b) {
            if (a.degree() != b.degree()) return a.degree() < b.degree();
            return coeff_key(a) < coeff_key(b);
        });
        return out;
    }
    throw PrecisionExhausted("no squarefree Trager norm found");
}

} // namespace

AFactorization factor_over_field(const APoly& f) { return factor_over_field(f, nullptr); }

AFactorization factor_over_field(const APoly& f, const NumberField::Ptr& ambient) {
    if (f.is_zero()) throw DegenerateInput("factorization of the zero polynomial");
    AFactorization res;
    res.unit = f.lc();
    if (f.degree() == 0) return res;
    NumberField::Ptr k = field_of(f);
    if (ambient && (!k || ambient->level() > k->level())) k = ambient;
    APoly fm = lift_poly(f, k).monic();
    for (const auto& [part, mult] : squarefree_factor(fm)) {
        if (part.degree() == 0) continue;
        for (const APoly& g : factor_squarefree(part, k))
            res.factors.emplace_back(g, mult);
    }
    std::sort(res.factors.begin(), res.factors.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        return coeff_key(a.first) < coeff_key(b.first);
    });
    return res;
}

std::vector<AlgebraicNumber> roots_in_field(const APoly& f) { return roots_in_field(f, nullptr); }

std::vector<AlgebraicNumber> roots_in_field(const APoly& f, const NumberField::Ptr& ambient) {
    AFactorization fac = factor_over_field(f, ambient);
    std::vector<AlgebraicNumber> roots;
    for (const auto& [g, mult] : fac.factors) {
        (void)mult;
        if (g.degree() == 1) roots.push_back(-(g[0] / g[1]));
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

AlgebraicNumber adjoin_root(const APoly& f_in, const NumberField::Ptr& base,
                            const std::string& gen_name_hint) {
    APoly f = lift_poly(f_in, base).monic();
    if (f.degree() < 1) throw DegenerateInput("cannot adjoin a root of a constant");
    if (f.degree() == 1) return -(f[0]);
    if (!base) {
        QPoly m = rational_poly(f);
        auto nf = NumberField::create(m, gen_name_hint, nullptr, {});
        return nf->generator();
    }
    const QPoly& M = base->minpoly();
    for (long s = 1; s < 40; ++s) {
        QPoly norm = trager_norm(f, base, s);
        if (norm.degree() != f.degree() * base->degree()) continue;
        if (!is_squarefree(norm)) continue;
        QFactorization qf = factor_rational_poly(norm);
        if (qf.factors.size() != 1 || qf.factors[0].second != 1)
            throw DegenerateInput("root adjunction requires an irreducible polynomial");
        QPoly H = qf.factors[0].first; // minimal polynomial of beta = gamma + s*alpha
        // express alpha in Q[x]/(H): the linear gcd of (M(t), G(beta, t)) over L
        int dL = H.degree();
        // arithmetic in L = Q[x]/(H) done on raw coordinate polynomials
        auto mul_l = [&](const QPoly& a, const QPoly& b) { return (a * b) % H; };
        // G(beta, t) coefficients: f(x - s t) with alpha -> t, evaluated at x = beta
        // build t-polynomial with L-coefficients
        std::vector<QPoly> G; // G[j] = coefficient of t^j, an element of L
        {
            // (beta - s t)^i expanded: maintain as vector over t of L-elements
            std::vector<QPoly> power{QPoly(Rational(1))}; // power[j] coeff of t^j
            for (int i = 0; i <= f.degree(); ++i) {
                const AlgebraicNumber& ci = f[i].lifted_to(base);
                QPoly coord = ci.is_rational() ? QPoly(ci.to_rational()) : QPoly(ci.coords());
                // contribution: coord(t) * power(t): coord has rational coefficients
                for (int j = 0; j <= coord.degree(); ++j) {
                    if (coord[j] == Rational(0)) continue;
                    for (size_t l = 0; l < power.size(); ++l) {
                        size_t idx = j + l;
                        if (G.size() <= idx) G.resize(idx + 1);
                        G[idx] += QPoly(coord[j]) * power[l];
                    }
                }
                // power *= (beta - s t)
                std::vector<QPoly> np(power.size() + 1);
                QPoly beta = QPoly::var();
                for (size_t l = 0; l < power.size(); ++l) {
                    np[l] += mul_l(power[l], beta);
                    np[l + 1] += QPoly(Rational(-s)) * power[l];
                }
                for (auto& q : np) q = q % H;
                power = std::move(np);
            }
        }
        // Euclid over L[t] for gcd(M(t), G(t)); elements of L are QPolys mod H
        struct LPoly { std::vector<QPoly> c; };
        auto ltrim = [](LPoly& p) { while (!p.c.empty() && p.c.back().is_zero()) p.c.pop_back(); };
        auto linv = [&](const QPoly& a) { return invmod(a, H); };
        auto lrem = [&](LPoly a, const LPoly& b) {
            QPoly invl = linv(b.c.back());
            while (a.c.size() >= b.c.size() && !a.c.empty()) {
                QPoly coef = mul_l(a.c.back(), invl);
                size_t k = a.c.size() - b.c.size();
                for (size_t i = 0; i < b.c.size(); ++i)
                    a.c[k + i] = (a.c[k + i] - coef * b.c[i] % H) % H;
                // force exact cancellation of the leading term
                a.c.back() = QPoly();
                ltrim(a);
            }
            return a;
        };
        LPoly A, B;
        for (int j = 0; j <= M.degree(); ++j) A.c.push_back(QPoly(M[j]));
        B.c = G;
        ltrim(A);
        ltrim(B);
        while (!B.c.empty()) {
            LPoly r = lrem(A, B);
            A = B;
            B = r;
        }
        if (A.c.size() != 2) continue; // beta not primitive for this s; try next
        QPoly alpha_img = (QPoly() - mul_l(A.c[0], linv(A.c[1]))) % H;
        std::vector<Rational> embed(dL, Rational(0));
        for (int i = 0; i <= alpha_img.degree(); ++i) embed[i] = alpha_img[i];
        auto L = NumberField::create(H, gen_name_hint.empty() ? default_gen_name(base->level() + 1)
                                                              : gen_name_hint,
                                     base, embed);
        AlgebraicNumber beta = L->generator();
        AlgebraicNumber alpha_in_l(L, embed);
        AlgebraicNumber gamma = beta - AlgebraicNumber(Rational(s)) * alpha_in_l;
        // safety: verify f(gamma) == 0
        AlgebraicNumber check = lift_poly(f, L).eval(gamma);
        if (!check.is_zero()) throw InternalInconsistency("adjoined root fails its polynomial");
        return gamma;
    }
    throw PrecisionExhausted("no primitive element found for root adjunction");
}

AlgebraicNumber sqrt_in_or_adjoin(const AlgebraicNumber& a) {
    if (a.is_zero()) return a;
    APoly f({-a, AlgebraicNumber(0), AlgebraicNumber(1)}); // x^2 - a
    std::vector<AlgebraicNumber> roots = roots_in_field(f);
    if (!roots.empty()) return roots.back(); // deterministic: larger in coord order
    return adjoin_root(f, a.field());
}

void FieldTower::absorb(const NumberField::Ptr& f) {
    if (!f) return;
    if (!top_) {
        top_ = f;
        return;
    }
    for (NumberField::Ptr cur = f; cur; cur = cur->parent())
        if (cur == top_) {
            top_ = f;
            return;
        }
    for (NumberField::Ptr cur = top_; cur; cur = cur->parent())
        if (cur == f) return;
    throw UnsupportedBaseField("field from an unrelated chain");
}

AlgebraicNumber FieldTower::lift(const AlgebraicNumber& a) const {
    absorb_check(a);
    return top_ ? a.lifted_to(top_) : a;
}

void FieldTower::absorb_check(const AlgebraicNumber& a) const {
    if (!a.field()) return;
    for (NumberField::Ptr cur = top_; cur; cur = cur->parent())
        if (cur == a.field()) return;
    throw UnsupportedBaseField("value from outside the tower");
}

AlgebraicNumber FieldTower::sqrt(const AlgebraicNumber& a) {
    if (a.is_zero()) return a;
    absorb(a.field());
    AlgebraicNumber al = lift(a);
    APoly f({-al, AlgebraicNumber(0), AlgebraicNumber(1)});
    std::vector<AlgebraicNumber> rs = roots_in_field(f, top_);
    if (!rs.empty()) return rs.back();
    AlgebraicNumber r = adjoin_root(f, top_);
    top_ = r.field();
    return r;
}

AlgebraicNumber FieldTower::root(const APoly& f) {
    absorb(field_of(f));
    APoly fl = top_ ? lift_poly(f, top_) : f;
    AFactorization fac = factor_over_field(fl, top_);
    if (fac.factors.empty()) throw DegenerateInput("root of a constant polynomial");
    for (const auto& [g, m] : fac.factors) {
        (void)m;
        if (g.degree() == 1) return lift(-(g[0] / g[1]));
    }
    AlgebraicNumber r = adjoin_root(fac.factors.front().first, top_);
    top_ = r.field();
    return r;
}

std::vector<AlgebraicNumber> FieldTower::split_roots(const APoly& f) {
    if (f.degree() < 1) return {};
    absorb(field_of(f));
    for (int guard = 0; guard < 64; ++guard) {
        AFactorization fac = factor_over_field(top_ ? lift_poly(f, top_) : f, top_);
        const APoly* nonlinear = nullptr;
        for (const auto& [g, m] : fac.factors) {
            (void)m;
            if (g.degree() > 1) {
                nonlinear = &g;
                break;
            }
        }
        if (!nonlinear) {
            std::vector<AlgebraicNumber> roots;
            for (const auto& [g, m] : fac.factors) {
                (void)m;
                roots.push_back(lift(-(g[0] / g[1])));
            }
            std::sort(roots.begin(), roots.end());
            roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
            return roots;
        }
        AlgebraicNumber r = adjoin_root(*nonlinear, top_);
        top_ = r.field();
    }
    throw PrecisionExhausted("splitting field construction did not stabilize");
}

QPoly minpoly_over_q(const AlgebraicNumber& a) {
    if (a.is_rational()) {
        return QPoly({-a.to_rational(), Rational(1)});
    }
    int d = a.field()->degree();
    // find the first power of a that is a Q-linear combination of lower powers
    std::vector<std::vector<Rational>> pows;
    AlgebraicNumber p(Rational(1));
    for (int j = 0; j <= d; ++j) {
        std::vector<Rational> v = p.is_rational()
            ? [&] { std::vector<Rational> w(d, Rational(0)); w[0] = p.to_rational(); return w; }()
            : p.lifted_to(a.field()).coords();
        pows.push_back(v);
        if (j >= 1) {
            Mat<Rational> A(d, j);
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < j; ++c) A.at(r, c) = pows[c][r];
            std::vector<Rational> b(v.begin(), v.end());
            if (auto sol = solve(A, b)) {
                std::vector<Rational> mc(j + 1, Rational(0));
                for (int c = 0; c < j; ++c) mc[c] = -(*sol)[c];
                mc[j] = 1;
                return QPoly(mc);
            }
        }
        p = p * a;
    }
    throw InternalInconsistency("minimal polynomial search failed");
}

} // namespace algint
