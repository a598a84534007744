#include "algint/numeric.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <utility>

#include "algint/errors.hpp"
#include "algint/zlattice.hpp"

namespace algint {

namespace {

BigComplex horner(const std::vector<BigComplex>& cs, const BigComplex& x) {
    if (cs.empty()) return BigComplex::zero(x.re.prec());
    BigComplex acc = cs.back();
    for (size_t i = cs.size() - 1; i-- > 0;) acc = acc * x + cs[i];
    return acc;
}

std::vector<BigComplex> embed_poly(const APoly& p, const Embedding& emb) {
    std::vector<BigComplex> v;
    for (int k = 0; k <= p.degree(); ++k) v.push_back(emb(p[k]));
    return v;
}

// Of the two square roots of s2, the one closer to the previous branch value.
BigComplex track_branch(const BigComplex& s2, const BigComplex& prev) {
    BigComplex s = sqrt(s2);
    return abs(s - prev) <= abs(s + prev) ? s : -s;
}

// Tanh-sinh abscissas t_k and weights w_k on (-1, 1), cached per digit count.
// The substitution t = tanh((pi/2) sinh u) turns endpoint singularities into
// doubly exponential decay, so a fixed cutoff |u| <= 5 covers far more than
// a hundred digits.
struct QuadNodes {
    std::vector<std::pair<BigFloat, BigFloat>> tw;
    BigFloat h;
};

// Working precision for quadrature.  The floor keeps tanh from saturating
// to exactly 1 anywhere on the node grid (max argument pi/2 sinh 5 = 117,
// saturation needs about 0.35 prec), so no abscissa ever collapses onto a
// segment endpoint.
long quad_prec(long digits) { return std::max(bits_for_digits(digits + 10), 420L); }

const QuadNodes& quad_nodes(long digits) {
    static std::map<long, QuadNodes> cache;
    auto it = cache.find(digits);
    if (it != cache.end()) return it->second;

    long prec = quad_prec(digits);
    long m = 6 * digits + 60;
    QuadNodes q;
    q.h = BigFloat::from_long(5, prec) / BigFloat::from_long(m, prec);
    BigFloat half_pi = BigFloat::pi(prec) / BigFloat::from_long(2, prec);
    for (long k = -m; k <= m; ++k) {
        BigFloat u = BigFloat::from_long(k, prec) * q.h;
        BigFloat a = half_pi * sinh(u);
        BigFloat c = cosh(a);
        q.tw.emplace_back(tanh(a), half_pi * cosh(u) / (c * c));
    }
    return cache.emplace(digits, std::move(q)).first->second;
}

struct FormEvaluator {
    std::vector<BigComplex> num_x, num_y, den, rhs;
    bool hyper = false;
    BigComplex y_prev;

    FormEvaluator(const Differential& w, const Embedding& emb) {
        const FnElem& f = w.fn();
        num_x = embed_poly(f.num_x(), emb);
        num_y = embed_poly(f.num_y(), emb);
        den = embed_poly(f.den(), emb);
        CurvePtr c = w.curve();
        hyper = c && !c->is_line();
        if (hyper) rhs = embed_poly(c->rhs(), emb);
    }

    void seed(const BigComplex& x0, const BigComplex& y0) {
        if (!hyper) return;
        BigComplex gap = y0 * y0 - horner(rhs, x0);
        BigFloat scale = BigFloat::from_long(1, y0.re.prec()) + abs(y0) * abs(y0) + abs(horner(rhs, x0));
        if (abs(gap) > BigFloat::from_double(1e-6, 64) * scale)
            throw DegenerateInput("the branch seed does not lie on the curve");
        y_prev = y0;
    }

    BigComplex operator()(const BigComplex& x) {
        BigComplex d = horner(den, x);
        if (d.re.is_zero() && d.im.is_zero())
            throw PathTooCloseToSingularity("a quadrature node hit a pole of the integrand");
        BigComplex n = horner(num_x, x);
        if (hyper && !num_y.empty()) {
            step(x);
            n += horner(num_y, x) * y_prev;
        } else if (hyper) {
            step(x);
        }
        return n / d;
    }

    void step(const BigComplex& x) { y_prev = track_branch(horner(rhs, x), y_prev); }
};

} // namespace

std::vector<BigComplex> poly_roots(const std::vector<BigComplex>& coeffs, long prec) {
    std::vector<BigComplex> cs = coeffs;
    while (!cs.empty() && cs.back().re.is_zero() && cs.back().im.is_zero()) cs.pop_back();
    if (cs.size() <= 1) return {};
    size_t d = cs.size() - 1;
    for (size_t k = 0; k < d; ++k) cs[k] = cs[k] / cs[d];
    cs[d] = BigComplex::from_rational(Rational(1), prec);

    BigFloat radius = BigFloat::from_long(1, prec);
    for (size_t k = 0; k < d; ++k) radius = std::max(radius, abs(cs[k]));
    radius = radius + BigFloat::from_long(1, prec);

    // Simultaneous Newton iteration from points spread on a circle; the
    // angular offset breaks conjugation symmetry, which otherwise stalls on
    // real polynomials.
    std::vector<BigComplex> z(d);
    for (size_t j = 0; j < d; ++j) {
        BigFloat ang = BigFloat::from_long(2, prec) * BigFloat::pi(prec) * BigFloat::from_long(static_cast<long>(j), prec) /
                           BigFloat::from_long(static_cast<long>(d), prec) +
                       BigFloat::from_double(0.5, prec);
        z[j] = radius * BigComplex(cos(ang), sin(ang));
    }

    BigFloat eps = BigFloat::pow2(-prec + 16, prec) * (radius + BigFloat::from_long(1, prec));
    for (int round = 0; round < 400; ++round) {
        BigFloat worst = BigFloat::zero(prec);
        for (size_t j = 0; j < d; ++j) {
            BigComplex numv = horner(cs, z[j]);
            BigComplex denv = BigComplex::from_rational(Rational(1), prec);
            for (size_t k = 0; k < d; ++k)
                if (k != j) denv *= z[j] - z[k];
            BigComplex delta = numv / denv;
            z[j] -= delta;
            worst = std::max(worst, abs(delta));
        }
        if (worst < eps) break;
    }

    BigFloat check_tol = BigFloat::pow2(-prec / 2, prec);
    for (size_t j = 0; j < d; ++j) {
        check_tol = check_tol * (radius + BigFloat::from_long(1, prec));
        if (!z[j].is_finite()) throw PrecisionTooLow("root finding diverged");
    }
    for (size_t j = 0; j < d; ++j)
        if (abs(horner(cs, z[j])) > check_tol)
            throw PrecisionTooLow("root finding did not converge");

    std::sort(z.begin(), z.end(), [](const BigComplex& a, const BigComplex& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    });
    return z;
}

Embedding::Embedding(const NumberField::Ptr& leaf, long digits, size_t root_index)
    : leaf_(leaf), prec_(bits_for_digits(digits + 10)) {
    if (!leaf_) {
        gen_ = BigComplex::zero(prec_);
        return;
    }
    std::vector<BigComplex> cs;
    const QPoly& mp = leaf_->minpoly();
    for (int k = 0; k <= mp.degree(); ++k) cs.push_back(BigComplex::from_rational(mp[k], prec_));
    std::vector<BigComplex> roots = poly_roots(cs, prec_);
    if (root_index >= roots.size()) throw DegenerateInput("embedding root index out of range");
    gen_ = roots[root_index];
}

BigComplex Embedding::operator()(const AlgebraicNumber& a) const {
    if (a.is_rational()) return BigComplex::from_rational(a.to_rational(), prec_);
    if (!leaf_) throw DegenerateInput("this embedding only covers rational values");
    AlgebraicNumber lifted = a.lifted_to(leaf_);
    const std::vector<Rational>& co = lifted.coords();
    BigComplex acc = BigComplex::zero(prec_);
    for (size_t i = co.size(); i-- > 0;) acc = acc * gen_ + BigComplex::from_rational(co[i], prec_);
    return acc;
}

BigComplex eval_fn(const FnElem& f, const BigComplex& x, const BigComplex& y, const Embedding& emb) {
    BigComplex n = horner(embed_poly(f.num_x(), emb), x) + horner(embed_poly(f.num_y(), emb), x) * y;
    BigComplex d = horner(embed_poly(f.den(), emb), x);
    if (d.re.is_zero() && d.im.is_zero()) throw PathTooCloseToSingularity("function evaluated at a pole");
    return n / d;
}

BigComplex eval_series(const LaurentSeries& s, const BigComplex& t, const Embedding& emb) {
    long v = s.valuation();
    if (v >= s.prec()) return BigComplex::zero(t.re.prec());
    long hi = std::min(s.prec(), v + 64);
    BigComplex acc = BigComplex::zero(t.re.prec());
    for (long k = hi - 1; k >= v; --k) acc = acc * t + emb(s.coeff(k));
    BigComplex lead = BigComplex::from_rational(Rational(1), t.re.prec());
    BigComplex base = v >= 0 ? t : BigComplex::from_rational(Rational(1), t.re.prec()) / t;
    for (long k = 0; k < (v >= 0 ? v : -v); ++k) lead *= base;
    return acc * lead;
}

BigComplex integrate_form(const Differential& w, const NumericPath& path, const Embedding& emb,
                          long digits, BigComplex* y_end) {
    if (path.xs.size() < 2) throw DegenerateInput("a numeric path needs at least two vertices");
    long prec = quad_prec(digits);
    const QuadNodes& q = quad_nodes(digits);
    BigFloat two = BigFloat::from_long(2, prec);

    FormEvaluator f(w, emb);
    f.seed(path.xs[0], path.y0);

    // Backstop only: at this precision no node weight on the grid is that
    // small, so nothing real is ever dropped.
    BigFloat weight_floor = BigFloat::pow2(-prec + 16, prec);

    // The quadrature error is governed by the singularity distance relative
    // to the segment length, so long segments that pass near a singularity
    // are split until each piece is no longer than that distance.
    // Singularities at the far ends of a whole path segment do not count:
    // the variable change soaks up endpoint singularities.
    std::vector<BigComplex> sings = singular_x_values(w, emb);
    BigFloat edge_tol = BigFloat::from_double(1e-9, 64);

    BigComplex total = BigComplex::zero(prec);
    for (size_t s = 0; s + 1 < path.xs.size(); ++s) {
        const BigComplex& a = path.xs[s];
        const BigComplex& b = path.xs[s + 1];
        BigFloat len = abs(b - a);
        if (len.is_zero()) continue;
        BigFloat gap = len;
        for (const BigComplex& z : sings) {
            if (abs(z - a) < edge_tol || abs(z - b) < edge_tol) continue;
            BigComplex v = b - a, u = z - a;
            BigFloat t = (u.re * v.re + u.im * v.im) / (len * len);
            if (t.sign() < 0) t = BigFloat::zero(prec);
            if (t > BigFloat::from_long(1, prec)) t = BigFloat::from_long(1, prec);
            gap = std::min(gap, abs(u - BigComplex(t) * v));
        }
        if (gap < edge_tol * len)
            throw PathTooCloseToSingularity("the path passes through a singular point");
        long pieces = 1;
        BigFloat ratio = len / gap;
        while (pieces < 64 && BigFloat::from_long(pieces, prec) < ratio) ++pieces;
        for (long piece = 0; piece < pieces; ++piece) {
            BigComplex pa = a + BigFloat::from_rational(Rational(piece) / Rational(pieces), prec) * (b - a);
            BigComplex pb = a + BigFloat::from_rational(Rational(piece + 1) / Rational(pieces), prec) * (b - a);
            BigComplex mid = (pa + pb) / BigComplex(two);
            BigComplex half = (pb - pa) / BigComplex(two);
            BigComplex acc = BigComplex::zero(prec);
            for (const auto& [t, wt] : q.tw) {
                if (wt < weight_floor) continue;
                acc += wt * f(mid + t * half);
            }
            total += q.h * (acc * half);
        }
    }
    if (f.hyper) f.step(path.xs.back());
    if (y_end) *y_end = f.y_prev;
    if (!total.is_finite()) throw PathTooCloseToSingularity("quadrature overflowed near a singular point");
    return total;
}

std::vector<BigComplex> singular_x_values(const Differential& w, const Embedding& emb) {
    std::vector<BigComplex> out;
    auto add_roots = [&](const APoly& p) {
        if (p.degree() <= 0) return;
        APoly sf = exact_div(p, gcd(p, p.derivative()));
        std::vector<BigComplex> rs = poly_roots(embed_poly(sf, emb), emb.prec());
        out.insert(out.end(), rs.begin(), rs.end());
    };
    add_roots(w.fn().den());
    CurvePtr c = w.curve();
    if (c && !c->is_line()) add_roots(c->rhs());
    return out;
}

BigComplex numeric_residue(const Differential& w, const Place& p, const Embedding& emb, long digits) {
    long prec = bits_for_digits(digits + 10);
    bool finite = !p.is_infinite();
    CurvePtr c = w.curve();
    bool hyper = c && !c->is_line();

    BigComplex center = finite ? emb(p.x0) : BigComplex::zero(prec);

    // Contour radius: a third of the gap to the nearest other singular
    // x-value for a finite place, and an enclosing radius at infinity.
    std::vector<BigComplex> sings = singular_x_values(w, emb);
    BigFloat tiny = BigFloat::from_double(1e-12, 64);
    BigFloat rho = BigFloat::from_rational(Rational(1, 2), prec);
    if (finite) {
        bool found = false;
        for (const BigComplex& s : sings) {
            BigFloat d = abs(s - center);
            if (d < tiny) continue;
            if (!found || d < rho) rho = d, found = true;
        }
        if (found) rho = rho / BigFloat::from_long(3, prec);
    } else {
        BigFloat top = BigFloat::zero(prec);
        for (const BigComplex& s : sings) top = std::max(top, abs(s));
        rho = BigFloat::from_long(2, prec) + BigFloat::from_long(2, prec) * top;
    }

    // Start vertex and branch seed from the local expansion: x(t0), y(t0) at
    // a small real parameter value chosen so that x(t0) sits near the
    // intended circle.  When the truncated series is still inaccurate there
    // (the target radius can sit near its convergence edge) retry with more
    // terms and a smaller parameter; the contour only has to keep enclosing
    // its center, so shrinking it is always allowed.
    for (int attempt = 0;; ++attempt) {
        long xprec = 26L << attempt;
        LocalExpansion le = local_expand(p, xprec);
        long e = 0;
        if (finite) {
            for (long k = 1; k <= 8 && e == 0; ++k)
                if (!le.x.coeff(k).is_zero()) e = k;
        } else {
            e = -le.x.valuation();
        }
        if (e <= 0 || e > 2) throw InternalInconsistency("unexpected local degree of the coordinate");

        BigComplex lead = emb(le.x.coeff(finite ? e : -e));
        BigFloat mag = finite ? rho / abs(lead) : abs(lead) / rho;
        if (e == 2) mag = sqrt(mag);
        for (int k = 0; k < attempt; ++k) mag = mag / BigFloat::from_long(2, prec);
        BigComplex t0(mag, BigFloat::zero(prec));

        BigComplex x_start = eval_series(le.x, t0, emb);
        BigComplex y_start = hyper ? eval_series(le.y, t0, emb) : BigComplex::zero(prec);
        if (hyper) {
            BigComplex gap = y_start * y_start - horner(embed_poly(c->rhs(), emb), x_start);
            BigFloat scale = BigFloat::from_long(1, prec) + abs(y_start) * abs(y_start);
            if (abs(gap) > BigFloat::from_double(1e-6, 64) * scale) {
                if (attempt >= 3) throw InternalInconsistency("local expansion failed to seed a branch");
                continue;
            }
        }

        BigFloat rho_used = abs(x_start - center);
        BigFloat theta0 = atan2((x_start - center).im, (x_start - center).re);
        int winds = p.ramification();
        int edges = 16;
        BigFloat step = BigFloat::from_long(2, prec) * BigFloat::pi(prec) / BigFloat::from_long(edges, prec);
        if (!finite) step = -step;

        NumericPath loop;
        loop.xs.push_back(x_start);
        for (int j = 1; j < winds * edges; ++j) {
            BigFloat ang = theta0 + BigFloat::from_long(j, prec) * step;
            loop.xs.push_back(center + BigComplex(rho_used * cos(ang), rho_used * sin(ang)));
        }
        loop.xs.push_back(x_start);
        loop.y0 = y_start;

        BigComplex val = integrate_form(w, loop, emb, digits);
        BigComplex two_pi_i(BigFloat::zero(prec), BigFloat::from_long(2, prec) * BigFloat::pi(prec));
        return val / two_pi_i;
    }
}

std::optional<std::vector<Integer>> integer_relation(const std::vector<BigComplex>& vals,
                                                     long digits, const Integer& height_bound) {
    size_t n = vals.size();
    if (n == 0) return std::nullopt;
    long prec = bits_for_digits(digits);

    BigFloat scale = BigFloat::zero(prec);
    for (const BigComplex& v : vals) scale = std::max(scale, abs(v));
    BigFloat tol_strong = BigFloat::pow2(-static_cast<long>(digits * 1.6609640474436813), prec) *
                          (BigFloat::from_long(1, prec) + scale);
    BigFloat tol_weak = BigFloat::pow2(-static_cast<long>(digits * 0.8304820237218406), prec) *
                        (BigFloat::from_long(1, prec) + scale);
    if (scale < tol_strong) throw PrecisionTooLow("all values vanish at this precision");

    auto residual = [&](const std::vector<Integer>& m) {
        BigComplex acc = BigComplex::zero(prec);
        for (size_t i = 0; i < n; ++i) acc += BigComplex(BigFloat::from_integer(m[i], prec)) * vals[i];
        return abs(acc);
    };

    // Two reduction passes.  The full-precision pass surfaces genuine
    // relations.  A relation perturbed by noise above tol_strong is not a
    // short vector at that scaling (plain rational-approximation vectors
    // beat it), so a second pass at half the scaling is needed to surface
    // near misses and flag them instead of silently reporting "none".
    long full_bits = static_cast<long>(static_cast<double>(digits) * 3.3219280948873626);
    bool near_miss = false;
    for (long bits : {full_bits, full_bits / 2}) {
        BigFloat mult = BigFloat::pow2(bits, prec) / scale;
        ZMat rows(n, std::vector<Integer>(n + 2, Integer(0)));
        for (size_t i = 0; i < n; ++i) {
            rows[i][i] = 1;
            rows[i][n] = (mult * vals[i].re).round_to_integer();
            rows[i][n + 1] = (mult * vals[i].im).round_to_integer();
        }
        for (const std::vector<Integer>& row : lll_reduce(rows)) {
            std::vector<Integer> m(row.begin(), row.begin() + static_cast<long>(n));
            bool zero = true, small = true;
            for (const Integer& v : m) {
                if (v != 0) zero = false;
                if (abs(v) > height_bound) small = false;
            }
            if (zero || !small) continue;
            BigFloat r = residual(m);
            if (r < tol_strong) return m;
            if (r < tol_weak) near_miss = true;
        }
    }
    if (near_miss) throw PrecisionTooLow("an integer relation candidate is too close to call");
    return std::nullopt;
}

NumericPath random_path(const CurvePtr& c, const Embedding& emb, unsigned long seed,
                        const std::vector<BigComplex>& avoid, long digits) {
    long prec = bits_for_digits(digits + 10);
    std::mt19937_64 rng(seed);
    auto coord = [&]() {
        long r = static_cast<long>(rng() & 0xFFFu);
        return BigFloat::from_rational((Rational(6) * Rational(r) - Rational(3 * 4095)) / Rational(4095), prec);
    };
    BigFloat min_gap = BigFloat::from_rational(Rational(1, 4), prec);
    BigFloat min_len = BigFloat::from_rational(Rational(1, 2), prec);

    auto seg_dist = [&](const BigComplex& a, const BigComplex& b, const BigComplex& s) {
        BigComplex v = b - a, w = s - a;
        BigFloat len2 = v.re * v.re + v.im * v.im;
        BigFloat t = (w.re * v.re + w.im * v.im) / len2;
        if (t < BigFloat::zero(prec)) t = BigFloat::zero(prec);
        if (t > BigFloat::from_long(1, prec)) t = BigFloat::from_long(1, prec);
        return abs(w - BigComplex(t) * v);
    };

    for (int attempt = 0; attempt < 500; ++attempt) {
        size_t nv = 3 + (rng() % 2);
        std::vector<BigComplex> xs;
        for (size_t i = 0; i < nv; ++i) xs.emplace_back(coord(), coord());
        bool ok = true;
        for (size_t i = 0; ok && i + 1 < nv; ++i) {
            if (abs(xs[i + 1] - xs[i]) < min_len) ok = false;
            for (const BigComplex& s : avoid)
                if (ok && seg_dist(xs[i], xs[i + 1], s) < min_gap) ok = false;
        }
        if (!ok) continue;
        NumericPath p;
        p.xs = std::move(xs);
        if (c && !c->is_line()) {
            std::vector<BigComplex> rhs;
            for (int k = 0; k <= c->rhs().degree(); ++k) rhs.push_back(emb(c->rhs()[k]));
            p.y0 = sqrt(horner(rhs, p.xs[0]));
        } else {
            p.y0 = BigComplex::zero(prec);
        }
        return p;
    }
    throw DegenerateInput("could not draw a path clear of the marked points");
}

} // namespace algint
