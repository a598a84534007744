#include "algint/zfactor.hpp"

#include <algorithm>
#include <map>

#include "algint/errors.hpp"

namespace algint {
namespace {

// ---- arithmetic mod a small prime (fits in long) ----

long pmod(long a, long p) {
    long r = a % p;
    return r < 0 ? r + p : r;
}

long ppow(long b, long e, long p) {
    long r = 1 % p;
    b = pmod(b, p);
    while (e > 0) {
        if (e & 1) r = (r * b) % p;
        b = (b * b) % p;
        e >>= 1;
    }
    return r;
}

long pinv(long a, long p) { return ppow(pmod(a, p), p - 2, p); }

using PPoly = std::vector<long>; // coeffs mod p, trimmed

void ptrim(PPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int pdeg(const PPoly& f) { return static_cast<int>(f.size()) - 1; }

PPoly pmul(const PPoly& a, const PPoly& b, long p) {
    if (a.empty() || b.empty()) return {};
    PPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    ptrim(r);
    return r;
}

PPoly psub(PPoly a, const PPoly& b, long p) {
    if (b.size() > a.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] = pmod(a[i] - b[i], p);
    ptrim(a);
    return a;
}

// division with remainder mod p
std::pair<PPoly, PPoly> pdivmod(PPoly a, const PPoly& b, long p) {
    PPoly q;
    int db = pdeg(b);
    long inv = pinv(b.back(), p);
    while (pdeg(a) >= db) {
        int k = pdeg(a) - db;
        long c = (a.back() * inv) % p;
        if (static_cast<int>(q.size()) < k + 1) q.resize(k + 1, 0);
        q[k] = (q[k] + c) % p;
        for (int i = 0; i <= db; ++i) a[k + i] = pmod(a[k + i] - c * b[i], p);
        ptrim(a);
    }
    ptrim(q);
    return {q, a};
}

PPoly pmod_poly(const PPoly& a, const PPoly& b, long p) { return pdivmod(a, b, p).second; }

PPoly pgcd(PPoly a, PPoly b, long p) {
    while (!b.empty()) {
        PPoly r = pmod_poly(a, b, p);
        a = b;
        b = r;
    }
    if (!a.empty()) {
        long inv = pinv(a.back(), p);
        for (auto& c : a) c = (c * inv) % p;
    }
    return a;
}

PPoly pderiv(const PPoly& f, long p) {
    PPoly r;
    for (size_t i = 1; i < f.size(); ++i) r.push_back((static_cast<long>(i) % p) * f[i] % p);
    ptrim(r);
    return r;
}

PPoly ppow_mod(PPoly base, long e, const PPoly& m, long p) {
    PPoly r{1};
    base = pmod_poly(base, m, p);
    while (e > 0) {
        if (e & 1) r = pmod_poly(pmul(r, base, p), m, p);
        base = pmod_poly(pmul(base, base, p), m, p);
        e >>= 1;
    }
    return r;
}

// Berlekamp factorization of a monic squarefree f mod p.  Classic small-p
// version: kernel of (Frobenius - id), then gcd splits over all c in F_p.
std::vector<PPoly> berlekamp(const PPoly& f, long p) {
    int n = pdeg(f);
    if (n <= 1) return {f};
    // Q matrix: row i = x^(i*p) mod f
    std::vector<PPoly> xp(n);
    PPoly x{0, 1};
    PPoly xpow = ppow_mod(x, p, f, p); // x^p mod f
    xp[0] = PPoly{1};
    for (int i = 1; i < n; ++i) xp[i] = pmod_poly(pmul(xp[i - 1], xpow, p), f, p);
    // Build (Q - I)^T linear system; kernel over F_p by Gaussian elimination.
    std::vector<std::vector<long>> m(n, std::vector<long>(n, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m[j][i] = (j < static_cast<int>(xp[i].size())) ? xp[i][j] : 0;
        m[i][i] = pmod(m[i][i] - 1, p);
    }
    // eliminate: find kernel basis
    std::vector<int> pivot_col(n, -1);
    int row = 0;
    for (int col = 0; col < n && row < n; ++col) {
        int sel = -1;
        for (int i = row; i < n; ++i)
            if (m[i][col] != 0) { sel = i; break; }
        if (sel < 0) continue;
        std::swap(m[sel], m[row]);
        long inv = pinv(m[row][col], p);
        for (int j = 0; j < n; ++j) m[row][j] = (m[row][j] * inv) % p;
        for (int i = 0; i < n; ++i) {
            if (i == row || m[i][col] == 0) continue;
            long c = m[i][col];
            for (int j = 0; j < n; ++j) m[i][j] = pmod(m[i][j] - c * m[row][j], p);
        }
        pivot_col[row] = col;
        ++row;
    }
    std::vector<bool> is_piv(n, false);
    for (int r = 0; r < row; ++r) is_piv[pivot_col[r]] = true;
    std::vector<PPoly> kernel;
    for (int free = 0; free < n; ++free) {
        if (is_piv[free]) continue;
        std::vector<long> v(n, 0);
        v[free] = 1;
        for (int r = 0; r < row; ++r) v[pivot_col[r]] = pmod(-m[r][free], p);
        PPoly vp(v.begin(), v.end());
        ptrim(vp);
        kernel.push_back(vp);
    }
    size_t k = kernel.size(); // number of irreducible factors
    std::vector<PPoly> factors{f};
    for (const PPoly& v : kernel) {
        if (factors.size() == k) break;
        if (pdeg(v) < 1) continue; // the all-ones kernel vector splits nothing
        std::vector<PPoly> next;
        for (const PPoly& u : factors) {
            if (pdeg(u) == 1) {
                next.push_back(u);
                continue;
            }
            PPoly rem = u;
            for (long c = 0; c < p && pdeg(rem) > 0; ++c) {
                PPoly vc = v;
                if (vc.empty()) vc.push_back(0);
                vc[0] = pmod(vc[0] - c, p);
                ptrim(vc);
                PPoly g = pgcd(rem, vc, p);
                if (pdeg(g) > 0 && pdeg(g) < pdeg(rem)) {
                    next.push_back(g);
                    rem = pdivmod(rem, g, p).first;
                }
            }
            if (pdeg(rem) > 0) next.push_back(rem);
        }
        factors = next;
    }
    if (factors.size() != k) throw InternalInconsistency("modular factor count mismatch");
    return factors;
}

// ---- integer polynomials as Poly<Rational> with integer coefficients ----

Integer content_z(const QPoly& f) {
    Integer g = 0;
    for (const Rational& c : f.coeffs()) g = gcd(g, c.get_num());
    return g;
}

// clear denominators and divide by content; sign normalized to positive lc
QPoly primitive_part(const QPoly& f) {
    if (f.is_zero()) return f;
    Integer den = 1;
    for (const Rational& c : f.coeffs()) den = lcm(den, c.get_den());
    QPoly g = f * Rational(den);
    Integer cont = content_z(g);
    if (sgn(g.lc()) < 0) cont = -cont;
    return g * (Rational(1) / Rational(cont));
}

// coefficients reduced to the symmetric range (-m/2, m/2]
Integer symmetric_mod(const Integer& a, const Integer& m) {
    Integer r = a % m;
    if (r < 0) r += m;
    if (2 * r > m) r -= m;
    return r;
}

using ZmPoly = std::vector<Integer>; // coeffs mod m (canonical in [0, m))

void ztrim(ZmPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

ZmPoly zmul(const ZmPoly& a, const ZmPoly& b, const Integer& m) {
    if (a.empty() || b.empty()) return {};
    ZmPoly r(a.size() + b.size() - 1, Integer(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % m;
    }
    ztrim(r);
    return r;
}

ZmPoly zadd(ZmPoly a, const ZmPoly& b, const Integer& m) {
    if (b.size() > a.size()) a.resize(b.size(), Integer(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + b[i]) % m;
    ztrim(a);
    return a;
}

ZmPoly zsub(ZmPoly a, const ZmPoly& b, const Integer& m) {
    if (b.size() > a.size()) a.resize(b.size(), Integer(0));
    for (size_t i = 0; i < b.size(); ++i) {
        a[i] = (a[i] - b[i]) % m;
        if (a[i] < 0) a[i] += m;
    }
    ztrim(a);
    return a;
}

// division by a monic divisor mod m
std::pair<ZmPoly, ZmPoly> zdivmod_monic(ZmPoly a, const ZmPoly& b, const Integer& m) {
    int db = static_cast<int>(b.size()) - 1;
    ZmPoly q;
    while (static_cast<int>(a.size()) - 1 >= db) {
        int k = static_cast<int>(a.size()) - 1 - db;
        Integer c = a.back();
        if (static_cast<int>(q.size()) < k + 1) q.resize(k + 1, Integer(0));
        q[k] = (q[k] + c) % m;
        for (int i = 0; i <= db; ++i) {
            a[k + i] = (a[k + i] - c * b[i]) % m;
            if (a[k + i] < 0) a[k + i] += m;
        }
        ztrim(a);
        if (a.empty()) break;
    }
    ztrim(q);
    return {q, a};
}

ZmPoly reduce_mod(const QPoly& f, const Integer& m) {
    ZmPoly r;
    for (const Rational& c : f.coeffs()) {
        if (c.get_den() != 1) throw InternalInconsistency("non-integer coefficient in lift");
        Integer v = c.get_num() % m;
        if (v < 0) v += m;
        r.push_back(v);
    }
    ztrim(r);
    return r;
}

QPoly lift_symmetric(const ZmPoly& f, const Integer& m) {
    std::vector<Rational> c;
    c.reserve(f.size());
    for (const Integer& v : f) c.emplace_back(symmetric_mod(v, m));
    return QPoly(c);
}

// One quadratic Hensel step: f = g h (mod m), s g + t h = 1 (mod m),
// g, h monic -> same data mod m^2.
struct HenselPair {
    ZmPoly g, h, s, t;
};

HenselPair hensel_step(const QPoly& f, const HenselPair& in, const Integer& m) {
    Integer m2 = m * m;
    ZmPoly fm = reduce_mod(f, m2);
    const ZmPoly &g = in.g, &h = in.h, &s = in.s, &t = in.t;
    ZmPoly e = zsub(fm, zmul(g, h, m2), m2);
    auto [q, r] = zdivmod_monic(zmul(s, e, m2), h, m2);
    ZmPoly gstar = zadd(zadd(g, zmul(t, e, m2), m2), zmul(q, g, m2), m2);
    ZmPoly hstar = zadd(h, r, m2);
    ZmPoly one{Integer(1)};
    ZmPoly b = zsub(zadd(zmul(s, gstar, m2), zmul(t, hstar, m2), m2), one, m2);
    auto [c, d] = zdivmod_monic(zmul(s, b, m2), hstar, m2);
    ZmPoly sstar = zsub(s, d, m2);
    ZmPoly tstar = zsub(zsub(t, zmul(t, b, m2), m2), zmul(c, gstar, m2), m2);
    return {gstar, hstar, sstar, tstar};
}

// Lift the factorization f = prod(fact_p) from mod p to mod p^(2^k) >= target.
// f monic squarefree, fact_p monic irreducible mod p.  Recursive two-way tree.
void hensel_tree(const QPoly& f, long p, const Integer& target,
                 const std::vector<PPoly>& fact_p, std::vector<ZmPoly>& out, Integer& modulus) {
    if (fact_p.size() == 1) {
        Integer m = p;
        while (m < target) m = m * m;
        out.push_back(reduce_mod(f, m));
        modulus = m;
        return;
    }
    size_t half = fact_p.size() / 2;
    std::vector<PPoly> left(fact_p.begin(), fact_p.begin() + half);
    std::vector<PPoly> right(fact_p.begin() + half, fact_p.end());
    PPoly gp{1}, hp{1};
    for (const auto& u : left) gp = pmul(gp, u, p);
    for (const auto& u : right) hp = pmul(hp, u, p);
    // Bezout mod p
    PPoly r0 = gp, r1 = hp, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        auto [q, r2] = pdivmod(r0, r1, p);
        r0 = r1; r1 = r2;
        PPoly s2 = psub(s0, pmul(q, s1, p), p), t2 = psub(t0, pmul(q, t1, p), p);
        s0 = s1; s1 = s2;
        t0 = t1; t1 = t2;
    }
    long inv = pinv(r0.empty() ? 1 : r0.back(), p);
    for (auto& c : s0) c = (c * inv) % p;
    for (auto& c : t0) c = (c * inv) % p;

    auto to_zm = [](const PPoly& a) {
        ZmPoly r;
        for (long c : a) r.emplace_back(c);
        return r;
    };
    HenselPair pair{to_zm(gp), to_zm(hp), to_zm(s0), to_zm(t0)};
    Integer m = p;
    while (m < target) {
        pair = hensel_step(f, pair, m);
        m = m * m;
    }
    modulus = m;
    QPoly gq = lift_symmetric(pair.g, m); // used as the sub-target for recursion
    QPoly hq = lift_symmetric(pair.h, m);
    // Recurse with exact integer images mod m: children lift from p again but
    // their product targets are the lifted g and h (still monic, correct mod m).
    std::vector<ZmPoly> lo, ro;
    Integer mg, mh;
    hensel_tree(gq, p, target, left, lo, mg);
    hensel_tree(hq, p, target, right, ro, mh);
    for (auto& u : lo) out.push_back(std::move(u));
    for (auto& u : ro) out.push_back(std::move(u));
}

const long kPrimes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
                        71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139,
                        149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199};

// Factor a monic squarefree integer polynomial into monic irreducible
// integer-coefficient factors.
std::vector<QPoly> factor_monic_squarefree(const QPoly& f) {
    int n = f.degree();
    if (n <= 1) return {f};

    // choose a prime where f stays squarefree
    long p = 0;
    for (long cand : kPrimes) {
        PPoly fp = [&] {
            PPoly r;
            for (const Rational& c : f.coeffs()) r.push_back(pmod(static_cast<long>(mpz_fdiv_ui(c.get_num().get_mpz_t(), cand)), cand));
            ptrim(r);
            return r;
        }();
        if (pdeg(fp) != n) continue; // cannot happen for monic f, kept for safety
        if (pdeg(pgcd(fp, pderiv(fp, cand), cand)) == 0) { p = cand; break; }
    }
    if (p == 0) throw PrecisionExhausted("no small prime keeps the polynomial squarefree");

    PPoly fp;
    for (const Rational& c : f.coeffs()) fp.push_back(pmod(static_cast<long>(mpz_fdiv_ui(c.get_num().get_mpz_t(), p)), p));
    ptrim(fp);
    std::vector<PPoly> modular = berlekamp(fp, p);
    if (modular.size() == 1) return {f};
    std::sort(modular.begin(), modular.end());

    // Landau-Mignotte style bound on factor coefficients (monic f)
    Rational norm2_sq(0);
    for (const Rational& c : f.coeffs()) norm2_sq += c * c;
    Integer bound = 1;
    {
        Integer n2 = norm2_sq.get_num() / norm2_sq.get_den() + 1;
        Integer root = sqrt(n2) + 1;
        bound = root;
        for (int i = 0; i < n + 1; ++i) bound *= 2; // 2^(n+1) * ||f||_2
    }
    Integer target = 2 * bound + 1;

    std::vector<ZmPoly> lifted;
    Integer m;
    hensel_tree(f, p, target, modular, lifted, m);

    // subset recombination
    std::vector<QPoly> out;
    std::vector<int> pool(lifted.size());
    for (size_t i = 0; i < pool.size(); ++i) pool[i] = static_cast<int>(i);
    QPoly rem = f;
    size_t card = 1;
    while (pool.size() > 0 && card <= pool.size()) {
        bool found = false;
        std::vector<int> idx(card);
        for (size_t i = 0; i < card; ++i) idx[i] = static_cast<int>(i);
        while (true) {
            ZmPoly prod{Integer(1)};
            for (size_t i = 0; i < card; ++i) prod = zmul(prod, lifted[pool[idx[i]]], m);
            QPoly cand = lift_symmetric(prod, m);
            if (2 * card <= pool.size() || card == pool.size()) {
                auto [q, r] = divmod(rem, cand);
                if (r.is_zero()) {
                    out.push_back(cand);
                    rem = q;
                    std::vector<int> np;
                    for (size_t i = 0, k = 0; i < pool.size(); ++i) {
                        if (k < card && static_cast<int>(i) == idx[k]) { ++k; continue; }
                        np.push_back(pool[i]);
                    }
                    pool = np;
                    found = true;
                    break;
                }
            }
            // next combination
            int i = static_cast<int>(card) - 1;
            while (i >= 0 && idx[i] == static_cast<int>(pool.size() - card + i)) --i;
            if (i < 0) break;
            ++idx[i];
            for (size_t j = i + 1; j < card; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!found) ++card;
        if (rem.degree() == 0) break;
    }
    if (rem.degree() > 0) out.push_back(rem);
    std::sort(out.begin(), out.end(), [](const QPoly& a, const QPoly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        for (int i = a.degree(); i >= 0; --i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    });
    return out;
}

} // namespace

QFactorization factor_rational_poly(const QPoly& f) {
    if (f.is_zero()) throw DegenerateInput("factorization of the zero polynomial");
    QFactorization res;
    res.unit = f.lc();
    if (f.degree() == 0) return res;
    // squarefree split over Q, then factor each squarefree part
    auto sf = squarefree_factor(f);
    for (const auto& [part, mult] : sf) {
        if (part.degree() == 0) continue;
        QPoly prim = primitive_part(part);
        // monicize: G(x) = l^(n-1) * prim(x/l) is monic with integer coeffs
        Rational l(prim.lc());
        QPoly G;
        {
            int n = prim.degree();
            std::vector<Rational> c(n + 1);
            // coeff of x^i in G = prim[i] * l^(n-1-i)
            for (int i = 0; i <= n; ++i) c[i] = prim[i] * pow_f(l, n - 1 - i >= 0 ? n - 1 - i : 0);
            // i = n gives prim.lc() * l^(-1) = 1 handled below
            c[n] = Rational(1);
            G = QPoly(c);
        }
        std::vector<QPoly> gf = factor_monic_squarefree(G);
        for (const QPoly& gj : gf) {
            // map back: factor of prim is primitive_part(gj(l*x))
            QPoly back;
            {
                std::vector<Rational> c(gj.degree() + 1);
                Rational lp(1);
                for (int i = 0; i <= gj.degree(); ++i) {
                    c[i] = gj[i] * lp;
                    lp *= l;
                }
                back = primitive_part(QPoly(c));
            }
            res.factors.emplace_back(back.monic(), mult);
        }
    }
    std::sort(res.factors.begin(), res.factors.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        for (int i = a.first.degree(); i >= 0; --i)
            if (a.first[i] != b.first[i]) return a.first[i] < b.first[i];
        return a.second < b.second;
    });
    return res;
}

bool is_irreducible_q(const QPoly& f) {
    if (f.degree() <= 0) return false;
    if (f.degree() == 1) return true;
    QFactorization qf = factor_rational_poly(f);
    return qf.factors.size() == 1 && qf.factors[0].second == 1;
}

std::vector<Rational> rational_roots(const QPoly& f) {
    std::vector<Rational> roots;
    QFactorization qf = factor_rational_poly(f);
    for (const auto& [g, mult] : qf.factors) {
        (void)mult;
        if (g.degree() == 1) roots.push_back(-g[0]); // monic x + c
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace algint
