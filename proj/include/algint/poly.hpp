#ifndef ALGINT_POLY_HPP
#define ALGINT_POLY_HPP

#include <string>
#include <utility>
#include <vector>

#include "algint/errors.hpp"
#include "algint/rational.hpp"

namespace algint {

// Dense univariate polynomial over a field F.  F must provide F(long),
// +, -, *, /, ==, and a free to_string(F).  Zero polynomial has degree -1.
template <class F>
class Poly {
    std::vector<F> c_; // c_[i] multiplies x^i; trailing zeros are trimmed

    void trim() {
        while (!c_.empty() && c_.back() == F(0)) c_.pop_back();
    }

public:
    Poly() = default;
    Poly(const F& a) { // NOLINT: implicit constant embedding is intended
        c_.push_back(a);
        trim();
    }
    Poly(long a) : Poly(F(a)) {} // NOLINT
    explicit Poly(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly var() { return monomial(F(1), 1); }
    static Poly monomial(const F& a, int k) {
        Poly p;
        if (!(a == F(0))) {
            p.c_.assign(k + 1, F(0));
            p.c_[k] = a;
        }
        return p;
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }

    const F& operator[](int i) const {
        static const F zero = F(0);
        if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
        return c_[i];
    }
    void set_coeff(int i, const F& a) {
        if (i >= static_cast<int>(c_.size())) c_.resize(i + 1, F(0));
        c_[i] = a;
        trim();
    }
    const F& lc() const {
        if (c_.empty()) throw DegenerateInput("leading coefficient of zero polynomial");
        return c_.back();
    }
    F constant_term() const { return (*this)[0]; }
    const std::vector<F>& coeffs() const { return c_; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly operator-() const {
        Poly r(*this);
        for (auto& x : r.c_) x = F(0) - x;
        return r;
    }
    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r;
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), F(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r.c_[i] = r.c_[i] + b.c_[i];
        r.trim();
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        Poly r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, F(0));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == F(0)) continue;
            for (size_t j = 0; j < b.c_.size(); ++j)
                r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
        }
        r.trim();
        return r;
    }
    friend Poly operator*(const Poly& a, const F& s) { return a * Poly(s); }
    friend Poly operator*(const F& s, const Poly& a) { return a * Poly(s); }
    Poly& operator+=(const Poly& b) { return *this = *this + b; }
    Poly& operator-=(const Poly& b) { return *this = *this - b; }
    Poly& operator*=(const Poly& b) { return *this = *this * b; }

    // Euclidean division; quotient and remainder with deg r < deg b.
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw DegenerateInput("polynomial division by zero");
        Poly q, r = a;
        const F inv_lb = F(1) / b.lc();
        while (!r.is_zero() && r.degree() >= b.degree()) {
            int k = r.degree() - b.degree();
            F coef = r.lc() * inv_lb;
            q.set_coeff(k, q[k] + coef);
            // r -= coef * x^k * b
            for (size_t i = 0; i < b.c_.size(); ++i)
                r.set_coeff(k + static_cast<int>(i), r[k + static_cast<int>(i)] - coef * b.c_[i]);
        }
        return {q, r};
    }
    friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

    friend Poly exact_div(const Poly& a, const Poly& b) {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero()) throw InternalInconsistency("inexact polynomial division");
        return q;
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return *this * (F(1) / lc());
    }

    Poly derivative() const {
        Poly r;
        for (size_t i = 1; i < c_.size(); ++i) r.set_coeff(static_cast<int>(i) - 1, c_[i] * F(static_cast<long>(i)));
        return r;
    }

    F eval(const F& x) const {
        F r(0);
        for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }

    // Horner evaluation in another ring; conv embeds coefficients into T.
    template <class T, class Conv>
    T eval_map(const T& x, Conv conv) const {
        T r = conv(F(0));
        for (size_t i = c_.size(); i-- > 0;) r = r * x + conv(c_[i]);
        return r;
    }

    Poly compose(const Poly& inner) const {
        Poly r;
        for (size_t i = c_.size(); i-- > 0;) r = r * inner + Poly(c_[i]);
        return r;
    }

    // x^n * p(1/x) for n = degree (coefficient reversal).
    Poly reversed() const {
        Poly r;
        r.c_.assign(c_.rbegin(), c_.rend());
        r.trim();
        return r;
    }

    Poly shifted(int k) const { // multiply by x^k
        if (is_zero()) return *this;
        Poly r;
        r.c_.assign(c_.size() + k, F(0));
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i + k] = c_[i];
        return r;
    }

    std::string to_string(const std::string& var) const {
        using algint::to_string;
        if (is_zero()) return "0";
        std::string out;
        for (int i = degree(); i >= 0; --i) {
            if ((*this)[i] == F(0)) continue;
            std::string cs = to_string((*this)[i]);
            bool neg = !cs.empty() && cs[0] == '-';
            if (out.empty()) {
                if (neg) { out += "-"; cs = cs.substr(1); }
            } else {
                out += neg ? " - " : " + ";
                if (neg) cs = cs.substr(1);
            }
            bool needs_parens = cs.find_first_of("+- ") != std::string::npos;
            if (i == 0) {
                out += needs_parens ? "(" + cs + ")" : cs;
            } else {
                if (cs != "1") out += (needs_parens ? "(" + cs + ")" : cs) + "*";
                out += var;
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out;
    }
};

template <class F>
Poly<F> pow(Poly<F> base, long e) {
    Poly<F> r(F(1));
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

// Monic gcd; gcd(p, 0) = monic p.
template <class F>
Poly<F> gcd(Poly<F> a, Poly<F> b) {
    while (!b.is_zero()) {
        Poly<F> r = a % b;
        a = b;
        b = r;
    }
    return a.monic();
}

// Extended gcd: returns (g, s, t) monic g with s*a + t*b = g.
template <class F>
std::tuple<Poly<F>, Poly<F>, Poly<F>> xgcd(const Poly<F>& a, const Poly<F>& b) {
    Poly<F> r0 = a, r1 = b;
    Poly<F> s0(F(1)), s1(F(0)), t0(F(0)), t1(F(1));
    while (!r1.is_zero()) {
        auto [q, r2] = divmod(r0, r1);
        r0 = r1; r1 = r2;
        Poly<F> s2 = s0 - q * s1, t2 = t0 - q * t1;
        s0 = s1; s1 = s2;
        t0 = t1; t1 = t2;
    }
    if (r0.is_zero()) return {r0, s0, t0};
    F inv = F(1) / r0.lc();
    return {r0 * inv, s0 * inv, t0 * inv};
}

template <class F>
Poly<F> lcm(const Poly<F>& a, const Poly<F>& b) {
    if (a.is_zero() || b.is_zero()) return Poly<F>();
    return exact_div(a * b, gcd(a, b)).monic();
}

template <class F>
F pow_f(F base, long e) {
    F r(1);
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

// Resultant over a field via the Euclidean remainder sequence:
// Res(a, b) = lc(a)^deg(b) * prod b(alpha_i) over roots alpha_i of a.
template <class F>
F resultant(const Poly<F>& a, const Poly<F>& b) {
    if (a.is_zero() || b.is_zero()) return F(0);
    if (a.degree() == 0) return pow_f(a.lc(), b.degree());
    if (b.degree() == 0) return pow_f(b.lc(), a.degree());
    Poly<F> r = a % b;
    F sign = (a.degree() % 2 == 1 && b.degree() % 2 == 1) ? F(-1) : F(1);
    if (r.is_zero()) return F(0);
    return sign * pow_f(b.lc(), a.degree() - r.degree()) * resultant(b, r);
}

// Yun squarefree factorization for characteristic 0: returns [(g_i, i)] with
// p = lc * prod g_i^i, each g_i monic squarefree, pairwise coprime.
template <class F>
std::vector<std::pair<Poly<F>, int>> squarefree_factor(const Poly<F>& p) {
    if (p.is_zero()) throw DegenerateInput("squarefree factorization of zero");
    std::vector<std::pair<Poly<F>, int>> out;
    Poly<F> f = p.monic();
    if (f.degree() == 0) return out;
    Poly<F> fp = f.derivative();
    Poly<F> a = gcd(f, fp);
    Poly<F> b = exact_div(f, a);
    Poly<F> c = exact_div(fp, a);
    Poly<F> d = c - b.derivative();
    int i = 1;
    while (!(b.degree() == 0)) {
        Poly<F> g = gcd(b, d);
        if (g.degree() > 0) out.emplace_back(g, i);
        b = exact_div(b, g);
        c = exact_div(d, g);
        d = c - b.derivative();
        ++i;
    }
    return out;
}

template <class F>
bool is_squarefree(const Poly<F>& p) {
    if (p.is_zero()) return false;
    return gcd(p, p.derivative()).degree() == 0;
}

// Resultant with coefficients in an integral domain R (supporting exact_div),
// computed as the Sylvester determinant via fraction-free Bareiss elimination.
// Used when R is itself a polynomial ring, e.g. Res_t over Q[x].
template <class R>
R sylvester_resultant(const Poly<R>& a, const Poly<R>& b) {
    int m = a.degree(), n = b.degree();
    if (m < 0 || n < 0) return R(0);
    if (m == 0) return pow_f(a.lc(), n);
    if (n == 0) return pow_f(b.lc(), m);
    int N = m + n;
    std::vector<std::vector<R>> s(N, std::vector<R>(N, R(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) s[i][i + j] = a[m - j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) s[n + i][i + j] = b[n - j];
    // Bareiss: division-free up to exact divisions by the previous pivot.
    R prev(1);
    int sign = 1;
    for (int k = 0; k < N - 1; ++k) {
        if (s[k][k] == R(0)) {
            int p = -1;
            for (int i = k + 1; i < N; ++i)
                if (!(s[i][k] == R(0))) { p = i; break; }
            if (p < 0) return R(0);
            std::swap(s[k], s[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < N; ++i)
            for (int j = k + 1; j < N; ++j)
                s[i][j] = exact_div(s[k][k] * s[i][j] - s[i][k] * s[k][j], prev);
        prev = s[k][k];
    }
    R det = s[N - 1][N - 1];
    return sign < 0 ? R(0) - det : det;
}

using QPoly = Poly<Rational>;

} // namespace algint

#endif
