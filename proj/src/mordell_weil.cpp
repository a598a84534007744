#include "algint/mordell_weil.hpp"

#include <algorithm>
#include <map>

#include "algint/errors.hpp"
#include "algint/poly.hpp"
#include "algint/zfactor.hpp"

namespace algint {

EllipticQ::EllipticQ(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {
    if (Rational(4) * a_ * a_ * a_ + Rational(27) * b_ * b_ == 0)
        throw SingularModel("the cubic x^3 + ax + b has a repeated root");
    mpz_lcm(scale_.get_mpz_t(), a_.get_den().get_mpz_t(), b_.get_den().get_mpz_t());
    Integer s2 = scale_ * scale_;
    Rational ra = a_ * Rational(s2 * s2);
    Rational rb = b_ * Rational(s2 * s2 * s2);
    ia_ = ra.get_num();
    ib_ = rb.get_num();
    idisc_ = 4 * ia_ * ia_ * ia_ + 27 * ib_ * ib_;
}

bool EllipticQ::contains(const ECPoint& p) const {
    if (p.infinite) return true;
    return p.y * p.y == p.x * p.x * p.x + a_ * p.x + b_;
}

ECPoint EllipticQ::negate(const ECPoint& p) const {
    if (p.infinite) return p;
    return ECPoint::affine(p.x, -p.y);
}

ECPoint EllipticQ::add(const ECPoint& p, const ECPoint& q) const {
    if (p.infinite) return q;
    if (q.infinite) return p;
    Rational lam;
    if (p.x == q.x) {
        if (p.y == -q.y) return ECPoint::infinity();
        lam = (Rational(3) * p.x * p.x + a_) / (Rational(2) * p.y);
    } else {
        lam = (q.y - p.y) / (q.x - p.x);
    }
    Rational x3 = lam * lam - p.x - q.x;
    return ECPoint::affine(x3, lam * (p.x - x3) - p.y);
}

ECPoint EllipticQ::mul(const Integer& n, const ECPoint& p) const {
    Integer k = abs(n);
    ECPoint base = n < 0 ? negate(p) : p;
    ECPoint acc;
    for (long i = (long)mpz_sizeinbase(k.get_mpz_t(), 2) - 1; i >= 0; --i) {
        acc = add(acc, acc);
        if (mpz_tstbit(k.get_mpz_t(), i)) acc = add(acc, base);
    }
    return acc;
}

std::optional<int> EllipticQ::torsion_order(const ECPoint& p) const {
    if (p.infinite) return 1;
    ECPoint acc = p;
    for (int n = 1; n <= 12; ++n) {
        if (acc.infinite) return n;
        acc = add(acc, p);
    }
    return std::nullopt;
}

const std::vector<ECPoint>& EllipticQ::torsion_points() const {
    if (torsion_) return *torsion_;

    Integer d = abs(idisc_);
    std::vector<std::pair<Integer, int>> fac;
    Integer rest = d;
    for (Integer p = 2; p <= 1000000 && p * p <= rest; p += (p == 2 ? 1 : 2)) {
        if (!mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) continue;
        int e = 0;
        while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
            rest /= p;
            ++e;
        }
        fac.push_back({p, e});
    }
    if (rest > 1) {
        if (mpz_perfect_square_p(rest.get_mpz_t())) {
            Integer rt;
            mpz_sqrt(rt.get_mpz_t(), rest.get_mpz_t());
            if (!mpz_probab_prime_p(rt.get_mpz_t(), 40))
                throw BudgetExhausted("torsion search needs a factorization beyond the trial bound");
            fac.push_back({rt, 2});
        } else if (mpz_probab_prime_p(rest.get_mpz_t(), 40)) {
            fac.push_back({rest, 1});
        } else {
            throw BudgetExhausted("torsion search needs a factorization beyond the trial bound");
        }
    }

    // square divisors of the discriminant bound the y-coordinates of the
    // finite-order points on the integral model
    std::vector<Integer> ys{Integer(0), Integer(1)};
    for (const auto& [p, e] : fac) {
        size_t base = ys.size();
        Integer pw(1);
        for (int k = 1; k <= e / 2; ++k) {
            pw *= p;
            for (size_t i = 1; i < base; ++i) ys.push_back(ys[i] * pw);
        }
    }

    Rational s2(scale_ * scale_), s3(scale_ * scale_ * scale_);
    std::vector<ECPoint> found{ECPoint::infinity()};
    auto consider = [&](const Rational& ix, const Rational& iy) {
        ECPoint p = ECPoint::affine(ix / s2, iy / s3);
        if (!torsion_order(p)) return;
        if (std::find(found.begin(), found.end(), p) == found.end()) found.push_back(p);
    };
    for (const Integer& y : ys) {
        QPoly cubic({Rational(ib_) - Rational(y * y), Rational(ia_), Rational(0), Rational(1)});
        for (const Rational& x : rational_roots(cubic)) {
            if (!is_integer(x)) continue;
            consider(x, Rational(y));
            if (y != 0) consider(x, Rational(-y));
        }
    }

    if (found.size() > 16) throw InternalInconsistency("torsion subgroup is too large");
    for (const ECPoint& p : found)
        for (const ECPoint& q : found)
            if (std::find(found.begin(), found.end(), add(p, q)) == found.end())
                throw InternalInconsistency("torsion candidates do not close under addition");

    torsion_ = std::move(found);
    return *torsion_;
}

std::pair<int, int> EllipticQ::torsion_structure() const {
    const auto& tors = torsion_points();
    int n = (int)tors.size();
    int two = 0;
    for (const ECPoint& p : tors)
        if (!p.infinite && p.y == 0) ++two;
    int n2 = (two == 3) ? 2 : 1;
    int n1 = n / n2;
    bool ok = n1 * n2 == n;
    if (n2 == 1) ok = ok && ((n1 >= 1 && n1 <= 10) || n1 == 12);
    if (n2 == 2) ok = ok && (n1 == 2 || n1 == 4 || n1 == 6 || n1 == 8);
    if (!ok) throw InternalInconsistency("torsion subgroup has an impossible shape");
    return {n1, n2};
}

namespace {

bool is_prime_long(long p) {
    if (p < 2) return false;
    for (long q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

// ---- arithmetic on the reduced curve over a small prime field ----

struct FpPt {
    long x = -1, y = 0; // x = -1 encodes the point at infinity
};

struct FpChart {
    long p, a, b;
    std::vector<long> root_of; // some square root, or -1

    FpChart(long pp, const Integer& ia, const Integer& ib) : p(pp) {
        a = (long)mpz_fdiv_ui(ia.get_mpz_t(), (unsigned long)p);
        b = (long)mpz_fdiv_ui(ib.get_mpz_t(), (unsigned long)p);
        root_of.assign(p, -1);
        for (long y = 0; y <= p / 2; ++y) root_of[y * y % p] = y;
    }

    static bool is_o(const FpPt& q) { return q.x < 0; }
    long code(const FpPt& q) const { return is_o(q) ? p * p : q.x * p + q.y; }

    long inv(long v) const {
        long t = 0, nt = 1, r = p, nr = v % p;
        while (nr != 0) {
            long q = r / nr;
            t -= q * nt;
            std::swap(t, nt);
            r -= q * nr;
            std::swap(r, nr);
        }
        return ((t % p) + p) % p;
    }

    FpPt chord(long lam, const FpPt& u, const FpPt& v) const {
        long x3 = ((lam * lam % p - u.x - v.x) % p + p) % p;
        long y3 = ((lam * ((u.x - x3 + p) % p) % p - u.y) % p + p) % p;
        return {x3, y3};
    }

    FpPt add(const FpPt& u, const FpPt& v) const {
        if (is_o(u)) return v;
        if (is_o(v)) return u;
        if (u.x == v.x) {
            if ((u.y + v.y) % p == 0) return {};
            long num = (3 * (u.x * u.x % p) + a) % p;
            return chord(num * inv(2 * u.y % p) % p, u, v);
        }
        long dy = ((v.y - u.y) % p + p) % p;
        long dx = ((v.x - u.x) % p + p) % p;
        return chord(dy * inv(dx) % p, u, v);
    }

    FpPt mul(long k, FpPt q) const {
        FpPt acc{};
        while (k > 0) {
            if (k & 1) acc = add(acc, q);
            q = add(q, q);
            k >>= 1;
        }
        return acc;
    }

    std::vector<FpPt> all_points() const {
        std::vector<FpPt> pts{FpPt{}};
        for (long x = 0; x < p; ++x) {
            long t = ((x * x % p) * x + a * x + b) % p;
            long r = root_of[t];
            if (r < 0) continue;
            pts.push_back({x, r});
            if (r != 0) pts.push_back({x, p - r});
        }
        return pts;
    }

    // a rational point with p in a denominator reduces to the origin
    FpPt reduce(const ECPoint& q) const {
        if (q.infinite) return {};
        Integer dx = q.x.get_den(), dy = q.y.get_den();
        if (mpz_divisible_ui_p(dx.get_mpz_t(), (unsigned long)p) ||
            mpz_divisible_ui_p(dy.get_mpz_t(), (unsigned long)p))
            return {};
        long nx = (long)mpz_fdiv_ui(q.x.get_num().get_mpz_t(), (unsigned long)p);
        long ny = (long)mpz_fdiv_ui(q.y.get_num().get_mpz_t(), (unsigned long)p);
        long mx = (long)mpz_fdiv_ui(dx.get_mpz_t(), (unsigned long)p);
        long my = (long)mpz_fdiv_ui(dy.get_mpz_t(), (unsigned long)p);
        return {nx * inv(mx) % p, ny * inv(my) % p};
    }
};

// kernel of Z^n -> E(F_p) / (ell E(F_p) + T) as lower-triangular rows,
// where T is the reduced torsion subgroup; ell = 0 drops the ell E part
ZMat fp_quotient_kernel(const FpChart& ch, const std::vector<FpPt>& imgs, int ell,
                        const std::vector<FpPt>& tors_red) {
    std::map<long, FpPt> sub;
    std::vector<FpPt> base{FpPt{}};
    if (ell > 0) {
        base.clear();
        for (const FpPt& q : ch.all_points()) base.push_back(ch.mul(ell, q));
    }
    for (const FpPt& s : base)
        for (const FpPt& t : tors_red) {
            FpPt u = ch.add(s, t);
            sub[ch.code(u)] = u;
        }

    auto coset_key = [&](const FpPt& q) {
        long best = -1;
        for (const auto& [c, s] : sub) {
            long k = ch.code(ch.add(q, s));
            if (best < 0 || k < best) best = k;
        }
        return best;
    };

    int n = (int)imgs.size();
    struct Ent {
        FpPt pt;
        std::vector<Integer> rep;
    };
    std::map<long, Ent> reach;
    reach[coset_key(FpPt{})] = {FpPt{}, std::vector<Integer>(n, Integer(0))};

    ZMat rows;
    for (int i = 0; i < n; ++i) {
        FpPt qi = imgs[i];
        long r = 1;
        FpPt walk = qi;
        while (!reach.count(coset_key(walk))) {
            walk = ch.add(walk, qi);
            ++r;
        }
        std::vector<Integer> row = reach[coset_key(walk)].rep;
        for (auto& e : row) e = -e;
        row[i] += r;
        rows.push_back(std::move(row));

        if (r > 1) {
            auto grown = reach;
            FpPt kq{};
            for (long k = 1; k < r; ++k) {
                kq = ch.add(kq, qi);
                for (const auto& [key, ent] : reach) {
                    FpPt cand = ch.add(ent.pt, kq);
                    long ck = coset_key(cand);
                    if (grown.count(ck)) continue;
                    Ent ne{cand, ent.rep};
                    ne.rep[i] += k;
                    grown[ck] = std::move(ne);
                }
            }
            reach = std::move(grown);
        }
    }
    return rows;
}

// ---- small dense linear algebra over a prime field that fits in a long ----

using LMat = std::vector<std::vector<long>>;

long inv_mod(long v, long ell) {
    long t = 0, nt = 1, r = ell, nr = ((v % ell) + ell) % ell;
    while (nr != 0) {
        long q = r / nr;
        t -= q * nt;
        std::swap(t, nt);
        r -= q * nr;
        std::swap(r, nr);
    }
    return ((t % ell) + ell) % ell;
}

LMat lmat_identity(int n) {
    LMat m(n, std::vector<long>(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

LMat lmat_transpose(const LMat& m) {
    if (m.empty()) return {};
    LMat t(m[0].size(), std::vector<long>(m.size(), 0));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

// row echelon over F_ell restricted to the first `stop` columns; returns the
// number of pivot rows
int echelon_mod(LMat& m, long ell, int stop) {
    int rows = (int)m.size();
    int r = 0;
    for (int c = 0; c < stop && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] % ell != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[piv], m[r]);
        long iv = inv_mod(m[r][c], ell);
        for (auto& e : m[r]) e = e * iv % ell;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c] % ell == 0) continue;
            long f = m[i][c] % ell;
            for (size_t j = 0; j < m[i].size(); ++j)
                m[i][j] = ((m[i][j] - f * m[r][j]) % ell + ell) % ell;
        }
        ++r;
    }
    return r;
}

LMat rref_mod(LMat m, long ell) {
    for (auto& row : m)
        for (auto& e : row) e = ((e % ell) + ell) % ell;
    if (m.empty()) return m;
    int r = echelon_mod(m, ell, (int)m[0].size());
    m.resize(r);
    return m;
}

// basis of { x : x m = 0 } over F_ell
LMat kernel_mod(const LMat& m, long ell) {
    int rows = (int)m.size();
    if (rows == 0) return {};
    int cols = (int)m[0].size();
    LMat aug(rows, std::vector<long>(cols + rows, 0));
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) aug[i][j] = ((m[i][j] % ell) + ell) % ell;
        aug[i][cols + i] = 1;
    }
    echelon_mod(aug, ell, cols);
    LMat ker;
    for (const auto& row : aug) {
        bool zero = true;
        for (int j = 0; j < cols; ++j)
            if (row[j] != 0) {
                zero = false;
                break;
            }
        if (zero) ker.push_back(std::vector<long>(row.begin() + cols, row.end()));
    }
    return rref_mod(std::move(ker), ell);
}

LMat subspace_intersect_mod(const LMat& a, const LMat& b, long ell) {
    if (a.empty() || b.empty()) return {};
    LMat checks = kernel_mod(lmat_transpose(b), ell); // forms vanishing on b
    if (checks.empty()) return rref_mod(a, ell);
    LMat pair(a.size(), std::vector<long>(checks.size(), 0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t k = 0; k < checks.size(); ++k) {
            long dot = 0;
            for (size_t j = 0; j < a[i].size(); ++j)
                dot = (dot + a[i][j] * checks[k][j]) % ell;
            pair[i][k] = dot;
        }
    LMat alpha = kernel_mod(pair, ell);
    LMat out;
    for (const auto& al : alpha) {
        std::vector<long> v(a[0].size(), 0);
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < v.size(); ++j) v[j] = (v[j] + al[i] * a[i][j]) % ell;
        out.push_back(std::move(v));
    }
    return rref_mod(std::move(out), ell);
}

bool subspace_contains(const LMat& rref_basis, std::vector<long> v, long ell) {
    for (auto& e : v) e = ((e % ell) + ell) % ell;
    for (const auto& row : rref_basis) {
        size_t piv = 0;
        while (piv < row.size() && row[piv] == 0) ++piv;
        if (piv == row.size()) continue;
        long f = v[piv]; // pivot entry is 1 in rref
        if (f == 0) continue;
        for (size_t j = 0; j < v.size(); ++j) v[j] = ((v[j] - f * row[j]) % ell + ell) % ell;
    }
    for (long e : v)
        if (e != 0) return false;
    return true;
}

LMat mod_reduce(const ZMat& m, long ell) {
    LMat out;
    for (const auto& row : m) {
        std::vector<long> r;
        for (const Integer& e : row) r.push_back((long)mpz_fdiv_ui(e.get_mpz_t(), (unsigned long)ell));
        out.push_back(std::move(r));
    }
    return out;
}

// exact relation lattice inside the span of `srows`, every row of which must
// map into the torsion subgroup; found by relative orders in that finite group
MwKernel assemble_kernel(const EllipticQ& e, const std::vector<ECPoint>& pts, ZMat srows,
                         bool complete, std::vector<long> primes) {
    MwKernel out;
    out.complete = complete;
    out.primes_used = std::move(primes);
    if (srows.empty()) return out;

    int n = (int)pts.size(), r = (int)srows.size();
    auto psi = [&](const std::vector<Integer>& v) {
        ECPoint acc;
        for (int i = 0; i < n; ++i) acc = e.add(acc, e.mul(v[i], pts[i]));
        return acc;
    };
    const auto& tors = e.torsion_points();

    struct PointLess {
        bool operator()(const ECPoint& u, const ECPoint& v) const {
            if (u.infinite != v.infinite) return u.infinite;
            if (u.infinite) return false;
            if (u.x != v.x) return u.x < v.x;
            return u.y < v.y;
        }
    };
    std::map<ECPoint, std::vector<Integer>, PointLess> reach;
    reach[ECPoint::infinity()] = std::vector<Integer>(r, Integer(0));

    ZMat wrows;
    for (int i = 0; i < r; ++i) {
        ECPoint ti = psi(srows[i]);
        if (std::find(tors.begin(), tors.end(), ti) == tors.end())
            throw InternalInconsistency("a proven relation candidate has infinite order");
        long k = 1;
        ECPoint walk = ti;
        while (!reach.count(walk)) {
            walk = e.add(walk, ti);
            ++k;
        }
        std::vector<Integer> row = reach[walk];
        for (auto& v : row) v = -v;
        row[i] += k;
        wrows.push_back(std::move(row));
        if (k > 1) {
            auto grown = reach;
            ECPoint step;
            for (long j = 1; j < k; ++j) {
                step = e.add(step, ti);
                for (const auto& [pt, rep] : reach) {
                    ECPoint cand = e.add(pt, step);
                    if (grown.count(cand)) continue;
                    auto nr = rep;
                    nr[i] += j;
                    grown[cand] = std::move(nr);
                }
            }
            reach = std::move(grown);
        }
    }

    ZMat kb;
    for (const auto& w : wrows) {
        std::vector<Integer> v(n, Integer(0));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < n; ++j) v[j] += w[i] * srows[i][j];
        kb.push_back(std::move(v));
    }
    out.basis = hnf(std::move(kb));
    for (const auto& row : out.basis)
        if (psi(row) != ECPoint::infinity())
            throw InternalInconsistency("a relation failed its exact replay");
    return out;
}

} // namespace

MwKernel mw_kernel(const EllipticQ& e, const std::vector<ECPoint>& pts, const MwBudget& budget) {
    for (const ECPoint& p : pts)
        if (!e.contains(p)) throw DegenerateInput("relation search requires points on the curve");
    int n = (int)pts.size();
    if (n == 0) return {{}, true, {}};

    const auto& tors = e.torsion_points();
    auto psi = [&](const std::vector<Integer>& v) {
        ECPoint acc;
        for (int i = 0; i < n; ++i) acc = e.add(acc, e.mul(v[i], pts[i]));
        return acc;
    };

    Rational s2(e.integral_scale() * e.integral_scale());
    Rational s3(s2 * Rational(e.integral_scale()));
    auto to_integral = [&](const ECPoint& p) {
        return p.infinite ? p : ECPoint::affine(p.x * s2, p.y * s3);
    };
    std::vector<ECPoint> ipts, itors;
    for (const auto& p : pts) ipts.push_back(to_integral(p));
    for (const auto& t : tors) itors.push_back(to_integral(t));

    const Integer& ia = e.integral_a();
    const Integer& ib = e.integral_b();
    Integer idisc = 4 * ia * ia * ia + 27 * ib * ib;

    ZMat sat_rows, sat_l, k_upper;
    bool have_upper = false;
    std::map<int, LMat> sieve;
    for (int ell : budget.ells) sieve[ell] = lmat_identity(n);
    std::vector<long> primes;

    auto consider = [&](const std::vector<Integer>& v) {
        if (in_lattice(v, sat_l)) return;
        if (std::find(tors.begin(), tors.end(), psi(v)) == tors.end()) return;
        sat_rows.push_back(v);
        sat_l = saturate(sat_rows, n);
    };

    for (long p = 3; p <= budget.prime_limit && p < 1000000; p += 2) {
        if (!is_prime_long(p)) continue;
        if (mpz_divisible_ui_p(idisc.get_mpz_t(), (unsigned long)p)) continue;

        FpChart ch(p, ia, ib);
        std::vector<FpPt> imgs, tred;
        for (const auto& q : ipts) imgs.push_back(ch.reduce(q));
        for (const auto& t : itors) tred.push_back(ch.reduce(t));
        primes.push_back(p);

        ZMat kp = hnf(fp_quotient_kernel(ch, imgs, 0, tred));
        k_upper = have_upper ? lattice_intersect(k_upper, kp, n) : std::move(kp);
        have_upper = true;

        for (const auto& v : k_upper) consider(v);
        for (const auto& v : lll_reduce(k_upper)) consider(v);

        for (int ell : budget.ells) {
            LMat w = rref_mod(mod_reduce(fp_quotient_kernel(ch, imgs, ell, tred), ell), ell);
            sieve[ell] = subspace_intersect_mod(sieve[ell], w, ell);
            if ((int)sieve[ell].size() != (int)sat_l.size()) continue;
            for (const auto& row : mod_reduce(sat_l, ell))
                if (!subspace_contains(sieve[ell], row, ell))
                    throw InternalInconsistency("sieve subspace lost a proven relation");
            return assemble_kernel(e, pts, sat_l, true, std::move(primes));
        }
    }
    return assemble_kernel(e, pts, hnf(sat_rows), false, std::move(primes));
}

} // namespace algint
