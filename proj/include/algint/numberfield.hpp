#ifndef ALGINT_NUMBERFIELD_HPP
#define ALGINT_NUMBERFIELD_HPP

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "algint/poly.hpp"
#include "algint/rational.hpp"

namespace algint {

class AlgebraicNumber;

// One level of a tower of number fields over Q.  Each level stores the monic
// irreducible minimal polynomial over Q of its primitive element and, when it
// refines a previous level, the image of the parent's primitive element.
// Levels form a single chain per problem instance; values from unrelated
// chains refuse to mix.
class NumberField : public std::enable_shared_from_this<NumberField> {
public:
    using Ptr = std::shared_ptr<const NumberField>;

    // Validates irreducibility over Q.  parent_embed gives the coordinates of
    // the parent's primitive element in this field (empty iff parent == nullptr).
    static Ptr create(QPoly minpoly, std::string gen_name, Ptr parent,
                      std::vector<Rational> parent_embed);

    int degree() const { return minpoly_.degree(); }
    const QPoly& minpoly() const { return minpoly_; }
    const Ptr& parent() const { return parent_; }
    const std::vector<Rational>& parent_embed() const { return parent_embed_; }
    int level() const { return level_; }
    const std::string& gen_name() const { return gen_name_; }

    AlgebraicNumber generator() const;

private:
    NumberField() = default;
    QPoly minpoly_;
    Ptr parent_;
    std::vector<Rational> parent_embed_;
    int level_ = 1;
    std::string gen_name_;
};

// An element of Q or of a tower level: coordinates in the power basis of the
// level's primitive element.  field() == nullptr means a plain rational.
// Immutable value type.
class AlgebraicNumber {
public:
    AlgebraicNumber() : coords_{Rational(0)} {}
    AlgebraicNumber(long n) : coords_{Rational(n)} {} // NOLINT
    AlgebraicNumber(const Rational& q) : coords_{q} {} // NOLINT
    AlgebraicNumber(NumberField::Ptr f, std::vector<Rational> coords);

    const NumberField::Ptr& field() const { return field_; }
    int level() const { return field_ ? field_->level() : 0; }
    const std::vector<Rational>& coords() const { return coords_; }

    bool is_zero() const;
    bool is_rational() const;
    Rational to_rational() const; // throws unless is_rational()

    friend AlgebraicNumber operator+(const AlgebraicNumber& a, const AlgebraicNumber& b);
    friend AlgebraicNumber operator-(const AlgebraicNumber& a, const AlgebraicNumber& b);
    friend AlgebraicNumber operator*(const AlgebraicNumber& a, const AlgebraicNumber& b);
    friend AlgebraicNumber operator/(const AlgebraicNumber& a, const AlgebraicNumber& b);
    AlgebraicNumber operator-() const;
    AlgebraicNumber inverse() const;
    AlgebraicNumber& operator+=(const AlgebraicNumber& b) { return *this = *this + b; }
    AlgebraicNumber& operator-=(const AlgebraicNumber& b) { return *this = *this - b; }
    AlgebraicNumber& operator*=(const AlgebraicNumber& b) { return *this = *this * b; }

    friend bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b);
    friend bool operator!=(const AlgebraicNumber& a, const AlgebraicNumber& b) { return !(a == b); }
    // Deterministic total order (coordinatewise after unification); not an
    // order embedding into R, only used for canonical sorting.
    friend bool operator<(const AlgebraicNumber& a, const AlgebraicNumber& b);

    std::string str() const;
    friend std::string to_string(const AlgebraicNumber& a) { return a.str(); }

    // Lift into the given (equal-or-deeper) field of the same chain.
    AlgebraicNumber lifted_to(const NumberField::Ptr& f) const;

private:
    NumberField::Ptr field_; // nullptr: rational
    std::vector<Rational> coords_; // size 1 (rational) or field degree

    void normalize();
};

using APoly = Poly<AlgebraicNumber>;

// Bring two values into a common field of their (shared) chain.
std::pair<AlgebraicNumber, AlgebraicNumber> unify(const AlgebraicNumber& a, const AlgebraicNumber& b);

// Deepest coefficient field of a polynomial (nullptr for rational).
NumberField::Ptr field_of(const APoly& f);

APoly lift_poly(const APoly& f, const NumberField::Ptr& target);
QPoly rational_poly(const APoly& f); // throws unless all coefficients rational
APoly from_rational_poly(const QPoly& f);

// Complete factorization over the coefficient field (Trager norms for proper
// extensions).  Returns monic irreducible factors with multiplicity; the
// product times `unit` reproduces the input.
struct AFactorization {
    AlgebraicNumber unit;
    std::vector<std::pair<APoly, int>> factors;
};
AFactorization factor_over_field(const APoly& f);

// Same, but over an ambient field at least as deep as the coefficients; a
// rational polynomial can split further over a proper extension.
AFactorization factor_over_field(const APoly& f, const NumberField::Ptr& ambient);

// Roots of f lying in the given field, deterministic order.
std::vector<AlgebraicNumber> roots_in_field(const APoly& f);
std::vector<AlgebraicNumber> roots_in_field(const APoly& f, const NumberField::Ptr& ambient);

// Extend `base` (possibly nullptr = Q) by a root of f, which must be
// irreducible over the field of its coefficients; coefficients must live in
// the chain of `base`.  Returns the new root; its field() is the new level.
AlgebraicNumber adjoin_root(const APoly& f, const NumberField::Ptr& base,
                            const std::string& gen_name_hint = "");

// Square root of a: a root already in the field when a is a square there,
// otherwise a root in a freshly adjoined quadratic extension of a's field.
AlgebraicNumber sqrt_in_or_adjoin(const AlgebraicNumber& a);

// Minimal polynomial over Q of an arbitrary tower element.
QPoly minpoly_over_q(const AlgebraicNumber& a);

// Session-wide growable field: all adjunctions go through one tower so every
// value produced during a computation lives in a single chain and can be
// compared or combined with every other.
class FieldTower {
public:
    FieldTower() = default;
    explicit FieldTower(NumberField::Ptr top) : top_(std::move(top)) {}

    const NumberField::Ptr& top() const { return top_; }

    // Deepen to f, which must lie on the current chain (or extend it).
    void absorb(const NumberField::Ptr& f);

    AlgebraicNumber lift(const AlgebraicNumber& a) const;
    APoly lift(const APoly& f) const { return lift_poly(f, top_); }

    // Square root of a, adjoining a new level when a is not a square.
    AlgebraicNumber sqrt(const AlgebraicNumber& a);

    // Root of f: one already in the tower when f splits, otherwise a root in
    // a freshly adjoined level (f must be irreducible over the tower then).
    AlgebraicNumber root(const APoly& f);

    // All roots of f in the splitting closure, growing the tower as needed.
    std::vector<AlgebraicNumber> split_roots(const APoly& f);

private:
    NumberField::Ptr top_;

    void absorb_check(const AlgebraicNumber& a) const;
};

} // namespace algint

#endif
