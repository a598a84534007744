#ifndef ALGINT_SERIES_HPP
#define ALGINT_SERIES_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "algint/errors.hpp"
#include "algint/numberfield.hpp"

namespace algint {

// Truncated Laurent series in a local parameter t with algebraic-number
// coefficients.  Coefficients are exact for all exponents < prec(); asking
// beyond that throws PrecisionExhausted so callers can retry with a longer
// expansion.  Exact values (constants, Laurent polynomials) carry INF_PREC;
// inverse and sqrt of a non-monomial require a finite precision, so exact
// inputs must be truncated first.
class LaurentSeries {
public:
    static constexpr long INF_PREC = 1L << 40;

    LaurentSeries() : v_(0), prec_(INF_PREC) {}
    explicit LaurentSeries(const AlgebraicNumber& c) : v_(0), prec_(INF_PREC) {
        if (!c.is_zero()) c_.push_back(c);
    }
    LaurentSeries(long v, std::vector<AlgebraicNumber> coeffs, long prec)
        : v_(v), prec_(prec), c_(std::move(coeffs)) {
        normalize();
    }

    static LaurentSeries t_power(long k) {
        return LaurentSeries(k, {AlgebraicNumber(1)}, INF_PREC);
    }
    static LaurentSeries zero_to(long prec) { return LaurentSeries(0, {}, prec); }

    long prec() const { return prec_; }
    bool exact() const { return prec_ >= INF_PREC; }

    // True when no nonzero coefficient is known; with finite precision this
    // only certifies vanishing below prec().
    bool is_zero() const { return c_.empty(); }

    // Exponent of the first nonzero coefficient; prec() when none is known.
    long valuation() const { return c_.empty() ? prec_ : v_; }

    const AlgebraicNumber& coeff(long k) const {
        static const AlgebraicNumber zero(0);
        if (k >= prec_)
            throw PrecisionExhausted("series coefficient t^" + std::to_string(k) +
                                     " beyond known precision");
        if (k < v_ || k >= v_ + static_cast<long>(c_.size())) return zero;
        return c_[static_cast<size_t>(k - v_)];
    }

    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
        long prec = std::min(a.prec_, b.prec_);
        if (a.is_zero() && b.is_zero()) return LaurentSeries(0, {}, prec);
        long v = a.is_zero() ? b.v_ : (b.is_zero() ? a.v_ : std::min(a.v_, b.v_));
        long hi = std::max(a.end(), b.end());
        if (hi > prec) hi = prec;
        if (v > hi) return LaurentSeries(0, {}, prec);
        std::vector<AlgebraicNumber> c(static_cast<size_t>(hi - v), AlgebraicNumber(0));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            long k = a.v_ + static_cast<long>(i);
            if (k >= hi) break;
            c[static_cast<size_t>(k - v)] += a.c_[i];
        }
        for (size_t i = 0; i < b.c_.size(); ++i) {
            long k = b.v_ + static_cast<long>(i);
            if (k >= hi) break;
            c[static_cast<size_t>(k - v)] += b.c_[i];
        }
        return LaurentSeries(v, std::move(c), prec);
    }
    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + (-b); }
    LaurentSeries operator-() const {
        LaurentSeries r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
        if ((a.is_zero() && a.exact()) || (b.is_zero() && b.exact()))
            return LaurentSeries(AlgebraicNumber(0));
        if (a.is_zero() || b.is_zero())
            return LaurentSeries(0, {}, a.valuation() + b.valuation());
        long prec;
        if (a.exact() && b.exact())
            prec = INF_PREC;
        else if (a.exact())
            prec = a.v_ + b.prec_;
        else if (b.exact())
            prec = b.v_ + a.prec_;
        else
            prec = std::min(a.v_ + b.prec_, b.v_ + a.prec_);
        long v = a.v_ + b.v_;
        long hi = v + static_cast<long>(a.c_.size() + b.c_.size()) - 1;
        if (hi > prec) hi = prec;
        std::vector<AlgebraicNumber> c(static_cast<size_t>(std::max(0L, hi - v)), AlgebraicNumber(0));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) {
                long k = a.v_ + static_cast<long>(i) + b.v_ + static_cast<long>(j);
                if (k >= hi) break;
                c[static_cast<size_t>(k - v)] += a.c_[i] * b.c_[j];
            }
        }
        return LaurentSeries(v, std::move(c), prec);
    }
    friend LaurentSeries operator*(const AlgebraicNumber& s, const LaurentSeries& a) {
        return LaurentSeries(s) * a;
    }
    friend LaurentSeries operator*(const LaurentSeries& a, const AlgebraicNumber& s) {
        return LaurentSeries(s) * a;
    }
    LaurentSeries& operator+=(const LaurentSeries& b) { return *this = *this + b; }
    LaurentSeries& operator-=(const LaurentSeries& b) { return *this = *this - b; }
    LaurentSeries& operator*=(const LaurentSeries& b) { return *this = *this * b; }

    // Reciprocal.  Needs a nonzero leading coefficient; an exact series must
    // be a monomial or be truncated first (its reciprocal is infinite).
    LaurentSeries inverse() const {
        if (is_zero()) throw DegenerateInput("inverse of a series with no known terms");
        if (exact() && c_.size() == 1)
            return LaurentSeries(-v_, {c_[0].inverse()}, INF_PREC);
        if (exact())
            throw PrecisionExhausted("inverse of an exact series needs truncation");
        long n = prec_ - v_;
        std::vector<AlgebraicNumber> b(static_cast<size_t>(n), AlgebraicNumber(0));
        AlgebraicNumber inv0 = c_[0].inverse();
        b[0] = inv0;
        for (long k = 1; k < n; ++k) {
            AlgebraicNumber s(0);
            for (long i = 1; i <= k; ++i) {
                if (i >= static_cast<long>(c_.size())) break;
                const AlgebraicNumber& ai = c_[static_cast<size_t>(i)];
                if (!ai.is_zero()) s += ai * b[static_cast<size_t>(k - i)];
            }
            b[static_cast<size_t>(k)] = -(s * inv0);
        }
        return LaurentSeries(-v_, std::move(b), prec_ - 2 * v_);
    }
    friend LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b) {
        return a * b.inverse();
    }

    // Square root of a unit series (valuation 0) given a root of the constant
    // term; the returned series has constant term sqrt0.
    LaurentSeries sqrt_unit(const AlgebraicNumber& sqrt0) const {
        if (is_zero() || v_ != 0)
            throw DegenerateInput("sqrt of a series that is not a unit");
        if (!(sqrt0 * sqrt0 == c_[0]))
            throw DegenerateInput("wrong constant-term square root");
        if (exact() && c_.size() == 1) return LaurentSeries(sqrt0);
        if (exact())
            throw PrecisionExhausted("sqrt of an exact series needs truncation");
        long n = prec_;
        std::vector<AlgebraicNumber> b(static_cast<size_t>(n), AlgebraicNumber(0));
        b[0] = sqrt0;
        AlgebraicNumber half_inv = (AlgebraicNumber(2) * sqrt0).inverse();
        for (long k = 1; k < n; ++k) {
            AlgebraicNumber s(0);
            for (long i = 1; i < k; ++i) s += b[static_cast<size_t>(i)] * b[static_cast<size_t>(k - i)];
            AlgebraicNumber ak = (k < static_cast<long>(c_.size())) ? c_[static_cast<size_t>(k)]
                                                                    : AlgebraicNumber(0);
            b[static_cast<size_t>(k)] = (ak - s) * half_inv;
        }
        return LaurentSeries(0, std::move(b), prec_);
    }

    LaurentSeries derivative() const {
        std::vector<AlgebraicNumber> c;
        c.reserve(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) {
            long k = v_ + static_cast<long>(i);
            c.push_back(AlgebraicNumber(Rational(k)) * c_[i]);
        }
        long prec = exact() ? INF_PREC : prec_ - 1;
        return LaurentSeries(v_ - 1, std::move(c), prec);
    }

    LaurentSeries truncated(long new_prec) const {
        if (new_prec >= prec_) return *this;
        std::vector<AlgebraicNumber> c;
        for (size_t i = 0; i < c_.size(); ++i)
            if (v_ + static_cast<long>(i) < new_prec) c.push_back(c_[i]);
        return LaurentSeries(v_, std::move(c), new_prec);
    }

    LaurentSeries shifted(long k) const { // multiply by t^k
        LaurentSeries r = *this;
        r.v_ += k;
        if (!r.exact()) r.prec_ += k;
        if (r.c_.empty()) { r.v_ = 0; }
        return r;
    }

    std::string str() const {
        if (c_.empty()) return exact() ? "0" : "O(t^" + std::to_string(prec_) + ")";
        std::string out;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            long k = v_ + static_cast<long>(i);
            if (!out.empty()) out += " + ";
            out += c_[i].str();
            if (k != 0) out += "*t^" + std::to_string(k);
        }
        if (out.empty()) out = "0";
        if (!exact()) out += " + O(t^" + std::to_string(prec_) + ")";
        return out;
    }

private:
    long v_;    // exponent of c_[0]
    long prec_; // coefficients exact for exponents < prec_
    std::vector<AlgebraicNumber> c_;

    long end() const { return c_.empty() ? v_ : v_ + static_cast<long>(c_.size()); }

    void normalize() {
        while (!c_.empty() && c_.front().is_zero()) {
            c_.erase(c_.begin());
            ++v_;
        }
        while (!c_.empty() && v_ + static_cast<long>(c_.size()) > prec_) c_.pop_back();
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
        if (c_.empty()) v_ = 0;
    }
};

inline LaurentSeries pow(const LaurentSeries& base, long e) {
    if (e < 0) return pow(base.inverse(), -e);
    LaurentSeries r(AlgebraicNumber(1));
    LaurentSeries b = base;
    long k = e;
    while (k > 0) {
        if (k & 1) r = r * b;
        b = b * b;
        k >>= 1;
    }
    return r;
}

// Horner evaluation of a polynomial at a series.
inline LaurentSeries eval_at_series(const APoly& p, const LaurentSeries& s) {
    LaurentSeries r(AlgebraicNumber(0));
    for (int i = p.degree(); i >= 0; --i) r = r * s + LaurentSeries(p[i]);
    return r;
}

} // namespace algint

#endif
