#pragma once

#include <map>
#include <string>

#include "gengeo/poly.hpp"

namespace gengeo {

// Rational function over the Gaussian rationals in chart variables and
// function symbols, kept in a canonical normal form at all times:
//   * numerator and denominator share no factor (monic gcd divided out),
//   * the denominator is nonzero with leading coefficient 1,
//   * constant denominators are absorbed into the numerator.
// Structural equality on the normal form decides mathematical equality.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : num_(v) {}                     // NOLINT(google-explicit-constructor)
    Scalar(const GRat& c) : num_(Poly::constant(c)) {}  // NOLINT(google-explicit-constructor)
    Scalar(const Poly& p) : num_(p) {}              // NOLINT(google-explicit-constructor)
    Scalar(Poly num, Poly den);                     // normalizes; den == 0 raises

    static Scalar atom(AtomId a) { return Scalar(Poly::atom(a)); }
    static Scalar i() { return Scalar(GRat::i()); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool isZero() const { return num_.isZero(); }
    bool isConstant() const { return num_.isConstant() && den_.isConstant(); }
    bool isPolynomial() const { return den_.isConstant(); }
    GRat constantValue() const { return num_.constantValue() / den_.constantValue(); }

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
    Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }
    Scalar& operator/=(const Scalar& o) { *this = *this / o; return *this; }
    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar derivative(AtomId v) const;              // quotient rule; v must be a variable
    Scalar conjugate() const;
    GRat evaluate(const std::map<AtomId, GRat>& point) const;

    // Real and imaginary parts as scalars: (e ± conj e)/2, the latter over i.
    Scalar realPart() const;
    Scalar imagPart() const;

    std::string str() const;

private:
    Poly num_;       // normalized fraction num_/den_
    Poly den_ = Poly(1);

    // Tag constructor for arithmetic paths that can prove num/den already
    // share no polynomial factor: skips the gcd step of normalization and
    // only rescales to the canonical (monic-denominator) form.
    struct ReducedTag {};
    Scalar(Poly num, Poly den, ReducedTag);

    void normalize();
    void scaleCanonical();
};

} // namespace gengeo
