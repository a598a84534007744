#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "algint/rational.hpp"
#include "algint/zlattice.hpp"

namespace algint {

// point on a short Weierstrass curve y^2 = x^3 + a x + b over the rationals
struct ECPoint {
    bool infinite = true;
    Rational x, y;

    static ECPoint infinity() { return {}; }
    static ECPoint affine(Rational px, Rational py) {
        ECPoint p;
        p.infinite = false;
        p.x = std::move(px);
        p.y = std::move(py);
        return p;
    }
    bool operator==(const ECPoint& o) const {
        return infinite == o.infinite && (infinite || (x == o.x && y == o.y));
    }
    bool operator!=(const ECPoint& o) const { return !(*this == o); }
};

class EllipticQ {
public:
    // y^2 = x^3 + a x + b; throws SingularModel when 4a^3 + 27b^2 = 0
    EllipticQ(Rational a, Rational b);

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }

    bool contains(const ECPoint& p) const;
    ECPoint negate(const ECPoint& p) const;
    ECPoint add(const ECPoint& p, const ECPoint& q) const;
    ECPoint mul(const Integer& n, const ECPoint& p) const;

    // the full torsion subgroup, infinity included
    const std::vector<ECPoint>& torsion_points() const;
    // invariants (n1, n2) with the group Z/n1 x Z/n2 and n2 | n1
    std::pair<int, int> torsion_structure() const;
    // order when the point has finite order, nothing otherwise
    std::optional<int> torsion_order(const ECPoint& p) const;

    // x -> s^2 x, y -> s^3 y carries the curve onto Y^2 = X^3 + A X + B
    // with integer coefficients
    const Integer& integral_a() const { return ia_; }
    const Integer& integral_b() const { return ib_; }
    const Integer& integral_scale() const { return scale_; }

private:
    Rational a_, b_;
    Integer scale_, ia_, ib_, idisc_; // idisc = 4 A^3 + 27 B^2
    mutable std::optional<std::vector<ECPoint>> torsion_;
};

struct MwBudget {
    long prime_limit = 200;        // reduction primes are drawn below this
    std::vector<int> ells = {2, 3, 5}; // sieve moduli tried for the completeness proof
};

// Relation lattice { m in Z^n : sum m_i P_i = O }.  Every basis row is
// replay-verified by exact arithmetic; `complete` is set only when the
// reduction sieve proves no relation is missing.
struct MwKernel {
    ZMat basis;
    bool complete = false;
    std::vector<long> primes_used;
};

MwKernel mw_kernel(const EllipticQ& e, const std::vector<ECPoint>& pts,
                   const MwBudget& budget = {});

} // namespace algint
