#include "algint/curve.hpp"

#include <algorithm>

#include "algint/errors.hpp"

namespace algint {

CurvePtr Curve::line(std::string label, std::string xname) {
    auto c = std::shared_ptr<Curve>(new Curve());
    c->kind_ = Kind::Line;
    c->label_ = std::move(label);
    c->xname_ = std::move(xname);
    c->yname_.clear();
    return c;
}

CurvePtr Curve::hyperelliptic(std::string label, APoly rhs, std::string xname, std::string yname) {
    if (rhs.degree() < 3)
        throw UnsupportedCurveClass("y^2 = P(x) requires deg P >= 3, got degree " +
                                    std::to_string(rhs.degree()));
    if (!is_squarefree(rhs))
        throw SingularModel("y^2 = P(x) with P not squarefree is a singular model");
    auto c = std::shared_ptr<Curve>(new Curve());
    c->kind_ = Kind::Hyperelliptic;
    c->rhs_ = std::move(rhs);
    c->label_ = std::move(label);
    c->xname_ = std::move(xname);
    c->yname_ = std::move(yname);
    return c;
}

int Curve::genus() const {
    if (kind_ == Kind::Line) return 0;
    return (rhs_.degree() - 1) / 2;
}

std::string Place::str() const {
    std::string base = curve ? curve->label() : "?";
    switch (type) {
        case Type::LineFinite: return base + ":(x=" + x0.str() + ")";
        case Type::LineInfinity: return base + ":(inf)";
        case Type::Unramified: return base + ":(x=" + x0.str() + ",y=" + y0.str() + ")";
        case Type::Ramified: return base + ":(x=" + x0.str() + ",y=0)";
        case Type::InfEven: return base + ":(inf,y~" + y0.str() + ")";
        case Type::InfOdd: return base + ":(inf)";
    }
    return base + ":?";
}

bool operator==(const Place& a, const Place& b) {
    return a.curve->label() == b.curve->label() && a.type == b.type && a.x0 == b.x0 && a.y0 == b.y0;
}
bool operator!=(const Place& a, const Place& b) { return !(a == b); }

bool operator<(const Place& a, const Place& b) {
    if (a.curve->label() != b.curve->label()) return a.curve->label() < b.curve->label();
    if (a.type != b.type) return static_cast<int>(a.type) < static_cast<int>(b.type);
    if (!(a.x0 == b.x0)) return a.x0 < b.x0;
    if (!(a.y0 == b.y0)) return a.y0 < b.y0;
    return false;
}

std::vector<Place> places_above(const CurvePtr& c, const AlgebraicNumber& x0, FieldTower& tower) {
    tower.absorb(x0.field());
    if (c->is_line()) return {Place{c, Place::Type::LineFinite, x0, AlgebraicNumber(0)}};
    AlgebraicNumber val = c->rhs().eval(x0);
    if (val.is_zero()) return {Place{c, Place::Type::Ramified, x0, AlgebraicNumber(0)}};
    AlgebraicNumber y0 = tower.sqrt(val);
    std::vector<Place> out = {Place{c, Place::Type::Unramified, x0, y0},
                              Place{c, Place::Type::Unramified, x0, -y0}};
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Place> places_at_infinity(const CurvePtr& c, FieldTower& tower) {
    if (c->is_line())
        return {Place{c, Place::Type::LineInfinity, AlgebraicNumber(0), AlgebraicNumber(0)}};
    if (c->rhs().degree() % 2 == 1)
        return {Place{c, Place::Type::InfOdd, AlgebraicNumber(0), AlgebraicNumber(0)}};
    AlgebraicNumber s = tower.sqrt(c->rhs().lc());
    std::vector<Place> out = {Place{c, Place::Type::InfEven, AlgebraicNumber(0), s},
                              Place{c, Place::Type::InfEven, AlgebraicNumber(0), -s}};
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Place> places_above_roots(const CurvePtr& c, const APoly& m, FieldTower& tower) {
    std::vector<Place> out;
    for (const AlgebraicNumber& r : tower.split_roots(m)) {
        std::vector<Place> ps = places_above(c, r, tower);
        out.insert(out.end(), ps.begin(), ps.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Solve u * Q(u) = t^2 for the ramified local recipe; u = t^2/Q(0) + ...
LaurentSeries newton_ramified(const APoly& q, long work_prec) {
    AlgebraicNumber q0inv = q[0].inverse();
    LaurentSeries u(2, {q0inv}, work_prec);
    LaurentSeries t2 = LaurentSeries::t_power(2);
    APoly dq = q.derivative();
    int steps = 2;
    for (long reach = 4; reach < work_prec + 4; reach *= 2) ++steps;
    for (int i = 0; i < steps; ++i) {
        LaurentSeries qu = eval_at_series(q, u).truncated(work_prec);
        LaurentSeries f = u * qu - t2;
        LaurentSeries fp = qu + u * eval_at_series(dq, u).truncated(work_prec);
        u = (u - f * fp.inverse()).truncated(work_prec);
    }
    LaurentSeries resid = u * eval_at_series(q, u) - t2;
    if (!resid.is_zero() && resid.valuation() < work_prec - 2)
        throw InternalInconsistency("ramified local solve did not converge");
    return u;
}

// Solve z = t^2 * R(z) for the odd-infinity recipe; z = lc * t^2 + ...
LaurentSeries newton_inf_odd(const APoly& r, long work_prec) {
    LaurentSeries z(2, {r[0]}, work_prec);
    LaurentSeries t2 = LaurentSeries::t_power(2);
    APoly dr = r.derivative();
    int steps = 2;
    for (long reach = 4; reach < work_prec + 4; reach *= 2) ++steps;
    for (int i = 0; i < steps; ++i) {
        LaurentSeries rz = eval_at_series(r, z).truncated(work_prec);
        LaurentSeries f = z - t2 * rz;
        LaurentSeries fp = LaurentSeries(AlgebraicNumber(1)) - t2 * eval_at_series(dr, z).truncated(work_prec);
        z = (z - f * fp.inverse()).truncated(work_prec);
    }
    LaurentSeries resid = z - t2 * eval_at_series(r, z);
    if (!resid.is_zero() && resid.valuation() < work_prec - 2)
        throw InternalInconsistency("odd-infinity local solve did not converge");
    return z;
}

} // namespace

LocalExpansion local_expand(const Place& p, long prec) {
    if (prec < 1) prec = 1;
    const CurvePtr& c = p.curve;
    LaurentSeries t = LaurentSeries::t_power(1);
    switch (p.type) {
        case Place::Type::LineFinite:
            return {LaurentSeries(p.x0) + t, LaurentSeries(AlgebraicNumber(0))};
        case Place::Type::LineInfinity:
            return {LaurentSeries::t_power(-1), LaurentSeries(AlgebraicNumber(0))};
        case Place::Type::Unramified: {
            LaurentSeries x = LaurentSeries(p.x0) + t;
            LaurentSeries s = eval_at_series(c->rhs(), x).truncated(prec);
            return {x, s.sqrt_unit(p.y0)};
        }
        case Place::Type::Ramified: {
            // P(x0 + u) = u * Q(u) with Q(0) = P'(x0) != 0
            APoly shifted = c->rhs().compose(APoly::var() + APoly(p.x0));
            std::vector<AlgebraicNumber> qc;
            for (int i = 1; i <= shifted.degree(); ++i) qc.push_back(shifted[i]);
            APoly q(qc);
            LaurentSeries u = newton_ramified(q, prec + 6);
            return {LaurentSeries(p.x0) + u.truncated(prec), t};
        }
        case Place::Type::InfEven: {
            int g = c->genus();
            LaurentSeries w = eval_at_series(c->rhs().reversed(), t).truncated(prec + g + 2);
            return {LaurentSeries::t_power(-1), w.sqrt_unit(p.y0).shifted(-(g + 1))};
        }
        case Place::Type::InfOdd: {
            int g = c->genus();
            long work = prec + 2 * g + 8;
            LaurentSeries z = newton_inf_odd(c->rhs().reversed(), work);
            LaurentSeries x = z.inverse();
            LaurentSeries y = pow(x, g) * LaurentSeries::t_power(-1);
            return {x.truncated(prec), y.truncated(prec)};
        }
    }
    throw InternalInconsistency("unhandled place type");
}

void Divisor::add(const Place& p, int m) {
    if (m == 0) return;
    auto it = m_.find(p);
    if (it == m_.end()) {
        m_.emplace(p, m);
    } else {
        it->second += m;
        if (it->second == 0) m_.erase(it);
    }
}

int Divisor::coeff(const Place& p) const {
    auto it = m_.find(p);
    return it == m_.end() ? 0 : it->second;
}

int Divisor::degree() const {
    int d = 0;
    for (const auto& [p, m] : m_) d += m;
    return d;
}

bool Divisor::is_effective() const {
    for (const auto& [p, m] : m_)
        if (m < 0) return false;
    return true;
}

Divisor operator+(const Divisor& a, const Divisor& b) {
    Divisor r = a;
    for (const auto& [p, m] : b.m_) r.add(p, m);
    return r;
}

Divisor operator-(const Divisor& a, const Divisor& b) { return a + (-b); }

Divisor Divisor::operator-() const {
    Divisor r;
    for (const auto& [p, m] : m_) r.m_.emplace(p, -m);
    return r;
}

Divisor operator*(int k, const Divisor& d) {
    Divisor r;
    if (k == 0) return r;
    for (const auto& [p, m] : d.m_) r.m_.emplace(p, k * m);
    return r;
}

Divisor Divisor::sup(const Divisor& a, const Divisor& b) {
    Divisor r;
    for (const auto& [p, m] : a.m_) {
        int v = std::max(m, b.coeff(p));
        if (v != 0) r.m_.emplace(p, v);
    }
    for (const auto& [p, m] : b.m_) {
        if (a.m_.count(p)) continue;
        int v = std::max(m, 0);
        if (v != 0) r.m_.emplace(p, v);
    }
    return r;
}

Divisor Divisor::plus() const {
    Divisor r;
    for (const auto& [p, m] : m_)
        if (m > 0) r.m_.emplace(p, m);
    return r;
}

Divisor Divisor::minus() const { return (-*this).plus(); }

std::string Divisor::str() const {
    if (m_.empty()) return "0";
    std::string out;
    for (const auto& [p, m] : m_) {
        if (out.empty()) {
            if (m < 0) out += "-";
        } else {
            out += m < 0 ? " - " : " + ";
        }
        int a = m < 0 ? -m : m;
        if (a != 1) out += std::to_string(a) + "*";
        out += "(" + p.str() + ")";
    }
    return out;
}

Divisor canonical_divisor(const CurvePtr& c, FieldTower& tower) {
    Divisor d;
    if (c->is_line()) {
        d.add(places_at_infinity(c, tower)[0], -2);
        return d;
    }
    for (const Place& p : places_above_roots(c, c->rhs(), tower)) d.add(p, 1);
    bool odd = c->rhs().degree() % 2 == 1;
    for (const Place& p : places_at_infinity(c, tower)) d.add(p, odd ? -3 : -2);
    return d;
}

} // namespace algint
