#include "gengeo/scalar.hpp"

#include "gengeo/errors.hpp"

namespace gengeo {

Scalar::Scalar(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.isZero()) throw DivisionByZero("scalar with zero denominator");
    normalize();
}

Scalar::Scalar(Poly num, Poly den, ReducedTag) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.isZero()) throw DivisionByZero("scalar with zero denominator");
    scaleCanonical();
}

void Scalar::normalize() {
    if (!num_.isZero() && !den_.isConstant()) {
        Poly g = gcdPoly(num_, den_);
        if (!(g == Poly(1))) {
            num_ = divExact(num_, g);
            den_ = divExact(den_, g);
        }
    }
    scaleCanonical();
}

void Scalar::scaleCanonical() {
    if (num_.isZero()) {
        den_ = Poly(1);
        return;
    }
    if (den_.isConstant()) {
        GRat c = den_.constantValue();
        if (!c.isOne()) num_ = num_.scaled(GRat(1) / c);
        den_ = Poly(1);
    } else {
        GRat lc = den_.leadingCoeff();
        if (!lc.isOne()) {
            num_ = num_.scaled(GRat(1) / lc);
            den_ = den_.scaled(GRat(1) / lc);
        }
    }
}

// Addition works against the least common denominator.  Both inputs are
// reduced, so when the denominators are outright coprime the sum over the
// product denominator is reduced as well: a factor of either denominator
// would have to divide the other summand's numerator-times-denominator
// product, and it is coprime to every piece of it.
Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.isPolynomial() && b.isPolynomial()) return Scalar(a.num_ + b.num_);
    if (a.den_ == b.den_) return Scalar(a.num_ + b.num_, a.den_);
    Poly g = gcdPoly(a.den_, b.den_);
    if (g == Poly(1))
        return Scalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, Scalar::ReducedTag{});
    Poly da = divExact(a.den_, g);
    Poly db = divExact(b.den_, g);
    return Scalar(a.num_ * db + b.num_ * da, a.den_ * db);
}

Scalar operator-(const Scalar& a, const Scalar& b) {
    if (a.isPolynomial() && b.isPolynomial()) return Scalar(a.num_ - b.num_);
    if (a.den_ == b.den_) return Scalar(a.num_ - b.num_, a.den_);
    Poly g = gcdPoly(a.den_, b.den_);
    if (g == Poly(1))
        return Scalar(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_, Scalar::ReducedTag{});
    Poly da = divExact(a.den_, g);
    Poly db = divExact(b.den_, g);
    return Scalar(a.num_ * db - b.num_ * da, a.den_ * db);
}

Scalar operator-(const Scalar& a) {
    Scalar r = a;
    r.num_ = -r.num_;
    return r;
}

// Multiplication cancels crosswise before forming products; the four
// remaining pieces are pairwise coprime, so the result needs no further
// gcd.  This keeps every gcd call on operands no bigger than the inputs.
Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.isZero() || b.isZero()) return Scalar();
    if (a.isPolynomial() && b.isPolynomial()) return Scalar(a.num_ * b.num_);
    const Poly one(1);
    Poly g1 = gcdPoly(a.num_, b.den_);
    Poly g2 = gcdPoly(b.num_, a.den_);
    Poly an = (g1 == one) ? a.num_ : divExact(a.num_, g1);
    Poly bd = (g1 == one) ? b.den_ : divExact(b.den_, g1);
    Poly bn = (g2 == one) ? b.num_ : divExact(b.num_, g2);
    Poly ad = (g2 == one) ? a.den_ : divExact(a.den_, g2);
    return Scalar(an * bn, ad * bd, Scalar::ReducedTag{});
}

Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.isZero()) throw DivisionByZero("division by zero scalar");
    if (a.isZero()) return Scalar();
    const Poly one(1);
    Poly g1 = gcdPoly(a.num_, b.num_);
    Poly g2 = gcdPoly(a.den_, b.den_);
    Poly an = (g1 == one) ? a.num_ : divExact(a.num_, g1);
    Poly bn = (g1 == one) ? b.num_ : divExact(b.num_, g1);
    Poly ad = (g2 == one) ? a.den_ : divExact(a.den_, g2);
    Poly bd = (g2 == one) ? b.den_ : divExact(b.den_, g2);
    return Scalar(an * bd, ad * bn, Scalar::ReducedTag{});
}

Scalar Scalar::derivative(AtomId v) const {
    if (symbols::info(v).kind != AtomKind::Variable)
        throw BadArgument("derivative direction must be a chart variable");
    if (isPolynomial()) return Scalar(num_.derivative(v));
    Poly dd = den_.derivative(v);
    if (dd.isZero()) return Scalar(num_.derivative(v), den_);
    Poly r = num_.derivative(v) * den_ - num_ * dd;
    // A factor common to r and the denominator divides num_*dd, hence (being
    // coprime to num_) divides gcd(den_, dd); with that gcd trivial the
    // quotient-rule fraction is already reduced.
    Poly g = gcdPoly(den_, dd);
    if (g == Poly(1)) return Scalar(std::move(r), den_ * den_, ReducedTag{});
    return Scalar(divExact(r, g), divExact(den_, g) * den_);
}

Scalar Scalar::conjugate() const { return Scalar(num_.conjugate(), den_.conjugate()); }

GRat Scalar::evaluate(const std::map<AtomId, GRat>& point) const {
    GRat d = den_.evaluate(point);
    if (d.isZero()) throw DivisionByZero("denominator vanishes at evaluation point");
    return num_.evaluate(point) / d;
}

Scalar Scalar::realPart() const {
    return (*this + conjugate()) / Scalar(GRat(2));
}

Scalar Scalar::imagPart() const {
    return (*this - conjugate()) / (Scalar(GRat(2)) * Scalar::i());
}

std::string Scalar::str() const {
    if (isPolynomial()) return num_.str();
    auto wrap = [](const Poly& p) {
        std::string s = p.str();
        if (p.terms().size() > 1 || s.find('*') != std::string::npos ||
            s.find('/') != std::string::npos)
            return "(" + s + ")";
        return s;
    };
    return wrap(num_) + "/" + wrap(den_);
}

} // namespace gengeo
