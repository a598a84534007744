#include "algint/fnelem.hpp"

#include <algorithm>

#include "algint/errors.hpp"

namespace algint {

FnElem::FnElem(const AlgebraicNumber& v)
    : curve_(nullptr), a_(v), b_(), c_(APoly(AlgebraicNumber(1))) {}

FnElem::FnElem(CurvePtr curve, APoly a, APoly b, APoly c)
    : curve_(std::move(curve)), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    if (c_.is_zero()) throw DegenerateInput("function with zero denominator");
    if (curve_ && curve_->is_line() && !b_.is_zero())
        throw DegenerateInput("y component on a line");
    if (!curve_ && !b_.is_zero())
        throw DegenerateInput("y component without a curve");
    normalize();
}

FnElem FnElem::y_of(const CurvePtr& c) {
    if (!c || c->is_line()) throw DegenerateInput("y is not a coordinate here");
    return FnElem(c, APoly(), APoly(AlgebraicNumber(1)), APoly(AlgebraicNumber(1)));
}

void FnElem::normalize() {
    if (a_.is_zero() && b_.is_zero()) {
        c_ = APoly(AlgebraicNumber(1));
        return;
    }
    APoly g = gcd(gcd(a_, b_), c_);
    if (g.degree() > 0) {
        a_ = exact_div(a_, g);
        b_ = exact_div(b_, g);
        c_ = exact_div(c_, g);
    }
    AlgebraicNumber lc = c_.lc();
    if (!(lc == AlgebraicNumber(1))) {
        AlgebraicNumber inv = lc.inverse();
        a_ = a_ * inv;
        b_ = b_ * inv;
        c_ = c_ * inv;
    }
}

CurvePtr FnElem::common_curve(const FnElem& a, const FnElem& b) {
    if (!a.curve_) return b.curve_;
    if (!b.curve_) return a.curve_;
    if (a.curve_ != b.curve_)
        throw DegenerateInput("mixing functions of different curves: " + a.curve_->label() +
                              " and " + b.curve_->label());
    return a.curve_;
}

AlgebraicNumber FnElem::constant_value() const {
    if (!is_constant()) throw DegenerateInput("not a constant: " + str());
    return a_[0] / c_[0];
}

FnElem operator+(const FnElem& x, const FnElem& y) {
    CurvePtr c = FnElem::common_curve(x, y);
    return FnElem(c, x.a_ * y.c_ + y.a_ * x.c_, x.b_ * y.c_ + y.b_ * x.c_, x.c_ * y.c_);
}

FnElem operator-(const FnElem& x, const FnElem& y) { return x + (-y); }

FnElem FnElem::operator-() const {
    FnElem r = *this;
    r.a_ = -r.a_;
    r.b_ = -r.b_;
    return r;
}

FnElem operator*(const FnElem& x, const FnElem& y) {
    CurvePtr c = FnElem::common_curve(x, y);
    APoly a = x.a_ * y.a_;
    APoly b = x.a_ * y.b_ + x.b_ * y.a_;
    if (!x.b_.is_zero() && !y.b_.is_zero()) a += x.b_ * y.b_ * c->rhs();
    return FnElem(c, a, b, x.c_ * y.c_);
}

FnElem FnElem::inverse() const {
    if (is_zero()) throw DegenerateInput("inverse of the zero function");
    if (b_.is_zero()) return FnElem(curve_, c_, APoly(), a_);
    // 1/((a+by)/c) = c (a - by) / (a^2 - b^2 P); the norm a^2 - b^2 P is
    // nonzero because P is not a square in K(x)
    APoly norm = a_ * a_ - b_ * b_ * curve_->rhs();
    if (norm.is_zero()) throw InternalInconsistency("vanishing norm of a nonzero function");
    return FnElem(curve_, c_ * a_, -(c_ * b_), norm);
}

FnElem operator/(const FnElem& x, const FnElem& y) { return x * y.inverse(); }

bool operator==(const FnElem& x, const FnElem& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_;
}

FnElem FnElem::derivative() const {
    APoly da = a_.derivative(), db = b_.derivative(), dc = c_.derivative();
    if (b_.is_zero()) return FnElem(curve_, da * c_ - a_ * dc, APoly(), c_ * c_);
    const APoly& p = curve_->rhs();
    APoly dp = p.derivative();
    APoly two(AlgebraicNumber(2));
    APoly na = two * p * (da * c_ - a_ * dc);
    APoly nb = two * p * (db * c_ - b_ * dc) + b_ * c_ * dp;
    return FnElem(curve_, na, nb, two * p * c_ * c_);
}

LaurentSeries FnElem::eval(const LocalExpansion& e) const {
    LaurentSeries num = eval_at_series(a_, e.x);
    if (!b_.is_zero()) num += eval_at_series(b_, e.x) * e.y;
    LaurentSeries den = eval_at_series(c_, e.x);
    if (den.exact() && !num.exact()) den = den.truncated(num.prec());
    if (den.exact() && num.exact()) {
        // both Laurent polynomials; pick a generous common truncation
        long cut = std::max(num.is_zero() ? 0 : num.valuation(), 0L) + 64;
        den = den.truncated(cut);
    }
    return num * den.inverse();
}

LaurentSeries FnElem::expand_at(const Place& p, long prec) const {
    if (curve_ && p.curve->label() != curve_->label())
        throw DegenerateInput("expanding a function at a place of a different curve");
    long base = std::max(prec, 1L) + 8;
    for (long work = base; work <= base * 512; work *= 2) {
        LaurentSeries s = eval(local_expand(p, work));
        if (s.prec() >= prec) return s.truncated(prec);
    }
    throw PrecisionExhausted("local expansion did not reach the requested precision");
}

long FnElem::order_at(const Place& p) const {
    if (is_zero()) throw DegenerateInput("valuation of the zero function");
    for (long prec = 16; prec <= 4096; prec *= 4) {
        LaurentSeries s = expand_at(p, prec);
        if (!s.is_zero()) return s.valuation();
    }
    throw InternalInconsistency("nonzero function with unbounded vanishing order");
}

std::string FnElem::str() const {
    std::string xv = curve_ ? curve_->xname() : "x";
    std::string yv = (curve_ && !curve_->is_line()) ? curve_->yname() : "y";
    std::string num;
    if (b_.is_zero()) {
        num = a_.to_string(xv);
    } else {
        std::string bs = b_.to_string(xv);
        std::string ys = (bs == "1") ? yv : "(" + bs + ")*" + yv;
        if (a_.is_zero())
            num = ys;
        else
            num = a_.to_string(xv) + " + " + ys;
    }
    if (c_.degree() == 0) return num;
    return "(" + num + ")/(" + c_.to_string(xv) + ")";
}

} // namespace algint
