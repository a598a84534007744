#ifndef ALGINT_BIGFLOAT_HPP
#define ALGINT_BIGFLOAT_HPP

#include <cstdarg>
#include <cstdio>

#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

#include "algint/rational.hpp"

namespace algint {

// Arbitrary-precision binary float.  Each value carries its own precision;
// an arithmetic result is computed at the larger of the operand precisions,
// rounding to nearest.  Precision is therefore set once at the seeds (pi,
// rational inputs, path endpoints) and propagates through a computation.
class BigFloat {
public:
    BigFloat() { mpfr_init2(m_, 64); mpfr_set_zero(m_, 1); }
    ~BigFloat() { mpfr_clear(m_); }

    BigFloat(const BigFloat& o) {
        mpfr_init2(m_, mpfr_get_prec(o.m_));
        mpfr_set(m_, o.m_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(m_, 64);
        mpfr_swap(m_, o.m_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(m_, mpfr_get_prec(o.m_));
            mpfr_set(m_, o.m_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        mpfr_swap(m_, o.m_);
        return *this;
    }

    static BigFloat zero(long prec) {
        BigFloat r = with_prec(prec);
        mpfr_set_zero(r.m_, 1);
        return r;
    }
    static BigFloat from_long(long v, long prec) {
        BigFloat r = with_prec(prec);
        mpfr_set_si(r.m_, v, MPFR_RNDN);
        return r;
    }
    static BigFloat from_double(double v, long prec) {
        BigFloat r = with_prec(prec);
        mpfr_set_d(r.m_, v, MPFR_RNDN);
        return r;
    }
    static BigFloat from_rational(const Rational& q, long prec) {
        BigFloat r = with_prec(prec);
        mpfr_set_q(r.m_, q.get_mpq_t(), MPFR_RNDN);
        return r;
    }
    static BigFloat from_integer(const Integer& z, long prec) {
        BigFloat r = with_prec(prec);
        mpfr_set_z(r.m_, z.get_mpz_t(), MPFR_RNDN);
        return r;
    }
    // 2^k, exact.
    static BigFloat pow2(long k, long prec) {
        BigFloat r = with_prec(prec);
        mpfr_set_ui_2exp(r.m_, 1, k, MPFR_RNDN);
        return r;
    }
    static BigFloat pi(long prec) {
        BigFloat r = with_prec(prec);
        mpfr_const_pi(r.m_, MPFR_RNDN);
        return r;
    }

    long prec() const { return mpfr_get_prec(m_); }
    bool is_zero() const { return mpfr_zero_p(m_) != 0; }
    bool is_finite() const { return mpfr_number_p(m_) != 0; }
    int sign() const { return mpfr_sgn(m_); }
    double to_double() const { return mpfr_get_d(m_, MPFR_RNDN); }
    Integer round_to_integer() const {
        Integer z;
        mpfr_get_z(z.get_mpz_t(), m_, MPFR_RNDN);
        return z;
    }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
        BigFloat r = pair_prec(a, b);
        mpfr_add(r.m_, a.m_, b.m_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
        BigFloat r = pair_prec(a, b);
        mpfr_sub(r.m_, a.m_, b.m_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
        BigFloat r = pair_prec(a, b);
        mpfr_mul(r.m_, a.m_, b.m_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
        BigFloat r = pair_prec(a, b);
        mpfr_div(r.m_, a.m_, b.m_, MPFR_RNDN);
        return r;
    }
    BigFloat operator-() const {
        BigFloat r = with_prec(prec());
        mpfr_neg(r.m_, m_, MPFR_RNDN);
        return r;
    }
    BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
    BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
    BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }
    BigFloat& operator/=(const BigFloat& o) { return *this = *this / o; }

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.m_, b.m_) < 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.m_, b.m_) > 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.m_, b.m_) <= 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.m_, b.m_) >= 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.m_, b.m_) == 0; }
    friend bool operator!=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.m_, b.m_) != 0; }

    friend BigFloat abs(const BigFloat& a) {
        BigFloat r = with_prec(a.prec());
        mpfr_abs(r.m_, a.m_, MPFR_RNDN);
        return r;
    }
    friend BigFloat sqrt(const BigFloat& a) {
        BigFloat r = with_prec(a.prec());
        mpfr_sqrt(r.m_, a.m_, MPFR_RNDN);
        return r;
    }
    friend BigFloat hypot(const BigFloat& a, const BigFloat& b) {
        BigFloat r = pair_prec(a, b);
        mpfr_hypot(r.m_, a.m_, b.m_, MPFR_RNDN);
        return r;
    }
    friend BigFloat exp(const BigFloat& a) {
        BigFloat r = with_prec(a.prec());
        mpfr_exp(r.m_, a.m_, MPFR_RNDN);
        return r;
    }
    friend BigFloat log(const BigFloat& a) {
        BigFloat r = with_prec(a.prec());
        mpfr_log(r.m_, a.m_, MPFR_RNDN);
        return r;
    }
    friend BigFloat sinh(const BigFloat& a) {
        BigFloat r = with_prec(a.prec());
        mpfr_sinh(r.m_, a.m_, MPFR_RNDN);
        return r;
    }
    friend BigFloat cosh(const BigFloat& a) {
        BigFloat r = with_prec(a.prec());
        mpfr_cosh(r.m_, a.m_, MPFR_RNDN);
        return r;
    }
    friend BigFloat tanh(const BigFloat& a) {
        BigFloat r = with_prec(a.prec());
        mpfr_tanh(r.m_, a.m_, MPFR_RNDN);
        return r;
    }
    friend BigFloat sin(const BigFloat& a) {
        BigFloat r = with_prec(a.prec());
        mpfr_sin(r.m_, a.m_, MPFR_RNDN);
        return r;
    }
    friend BigFloat cos(const BigFloat& a) {
        BigFloat r = with_prec(a.prec());
        mpfr_cos(r.m_, a.m_, MPFR_RNDN);
        return r;
    }
    friend BigFloat atan2(const BigFloat& y, const BigFloat& x) {
        BigFloat r = pair_prec(y, x);
        mpfr_atan2(r.m_, y.m_, x.m_, MPFR_RNDN);
        return r;
    }

    std::string str(size_t digits = 20) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), m_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }
    friend std::string to_string(const BigFloat& a) { return a.str(); }

private:
    static BigFloat with_prec(long prec) {
        BigFloat r;
        mpfr_set_prec(r.m_, std::max(prec, 8L));
        return r;
    }
    static BigFloat pair_prec(const BigFloat& a, const BigFloat& b) {
        return with_prec(std::max(a.prec(), b.prec()));
    }

    mpfr_t m_;
};

// Rough decimal-digit to bit conversion with working headroom.
inline long bits_for_digits(long digits) {
    return static_cast<long>(static_cast<double>(digits) * 3.3219280948873626) + 64;
}

// Complex number over BigFloat with principal square root.
struct BigComplex {
    BigFloat re, im;

    BigComplex() = default;
    BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
    explicit BigComplex(BigFloat r) : re(std::move(r)), im(BigFloat::zero(re.prec())) {}

    static BigComplex zero(long prec) { return {BigFloat::zero(prec), BigFloat::zero(prec)}; }
    static BigComplex from_rational(const Rational& q, long prec) {
        return {BigFloat::from_rational(q, prec), BigFloat::zero(prec)};
    }
    static BigComplex i_unit(long prec) { return {BigFloat::zero(prec), BigFloat::from_long(1, prec)}; }

    bool is_finite() const { return re.is_finite() && im.is_finite(); }

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
        BigFloat d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    BigComplex operator-() const { return {-re, -im}; }
    BigComplex& operator+=(const BigComplex& o) { return *this = *this + o; }
    BigComplex& operator-=(const BigComplex& o) { return *this = *this - o; }
    BigComplex& operator*=(const BigComplex& o) { return *this = *this * o; }
    BigComplex& operator/=(const BigComplex& o) { return *this = *this / o; }

    friend BigComplex operator*(const BigFloat& s, const BigComplex& a) { return {s * a.re, s * a.im}; }

    friend BigFloat abs(const BigComplex& a) { return hypot(a.re, a.im); }
    friend BigComplex conj(const BigComplex& a) { return {a.re, -a.im}; }

    friend BigComplex sqrt(const BigComplex& z) {
        long p = std::max(z.re.prec(), z.im.prec());
        if (z.re.is_zero() && z.im.is_zero()) return BigComplex::zero(p);
        BigFloat r = abs(z);
        BigFloat two = BigFloat::from_long(2, p);
        if (z.re.sign() >= 0) {
            BigFloat t = sqrt((r + z.re) / two);
            return {t, z.im / (two * t)};
        }
        BigFloat t = sqrt((r - z.re) / two);
        BigFloat u = abs(z.im) / (two * t);
        return {u, z.im.sign() >= 0 ? t : -t};
    }

    std::string str(size_t digits = 20) const {
        return re.str(digits) + (im.sign() < 0 ? " - " : " + ") + abs(im).str(digits) + "i";
    }
    friend std::string to_string(const BigComplex& a) { return a.str(); }
};

} // namespace algint

#endif
