#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gengeo/rational.hpp"
#include "gengeo/symbols.hpp"

namespace gengeo {

// Monomial: sorted (atom, exponent) pairs with positive exponents.
struct Mono {
    std::vector<std::pair<AtomId, int>> e;

    int totalDegree() const {
        int d = 0;
        for (auto& [a, k] : e) d += k;
        return d;
    }
    int expOf(AtomId v) const {
        for (auto& [a, k] : e)
            if (a == v) return k;
        return 0;
    }
    bool isOne() const { return e.empty(); }

    friend Mono operator*(const Mono& a, const Mono& b);
    // Divisibility and exact quotient for monomials.
    bool divides(const Mono& d) const;           // *this | d
    Mono divInto(const Mono& d) const;           // d / *this (requires divides)
    friend bool operator==(const Mono& a, const Mono& b) { return a.e == b.e; }
};

// Degree-lexicographic order: total degree first, then exponents compared on
// ascending atom id (larger exponent on the earliest differing atom wins).
struct MonoLess {
    bool operator()(const Mono& a, const Mono& b) const;
};

// Sparse multivariate polynomial over the Gaussian rationals.  The term map
// never stores zero coefficients, so the zero polynomial has an empty map and
// structural equality decides mathematical equality.
class Poly {
public:
    using Terms = std::map<Mono, GRat, MonoLess>;

    Poly() = default;
    Poly(long v) { *this = constant(GRat(v)); }     // NOLINT(google-explicit-constructor)

    static Poly constant(const GRat& c);
    static Poly atom(AtomId a, int exp = 1);

    bool isZero() const { return t_.empty(); }
    bool isConstant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.isOne()); }
    GRat constantValue() const;                     // requires isConstant()

    const Terms& terms() const { return t_; }
    int totalDegree() const;                        // -1 for the zero polynomial
    int degreeIn(AtomId v) const;
    std::set<AtomId> atoms() const;
    bool dependsOn(AtomId v) const { return degreeIn(v) > 0; }

    const Mono& leadingMono() const;                // deglex-largest term
    const GRat& leadingCoeff() const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator+=(const Poly& o) { *this = *this + o; return *this; }
    Poly& operator-=(const Poly& o) { *this = *this - o; return *this; }
    Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.t_ == b.t_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly scaled(const GRat& c) const;
    Poly mulTerm(const Mono& m, const GRat& c) const;
    Poly pow(int n) const;

    // Partial derivative in a chart variable; function symbols differentiate
    // through their registered (or freshly minted) derivative symbols.
    Poly derivative(AtomId v) const;

    Poly conjugate() const;

    GRat evaluate(const std::map<AtomId, GRat>& point) const;

    // Coefficients of powers of v: result[k] is the coefficient of v^k.
    std::map<int, Poly> collect(AtomId v) const;

    std::string str() const;

    void addTerm(const Mono& m, const GRat& c);     // merges, drops zeros

private:
    Terms t_;
};

// Quotient a / b when the division is exact, nullopt otherwise.
std::optional<Poly> tryDivide(const Poly& a, const Poly& b);

// Exact quotient a / b; raises InternalError when b does not divide a.
Poly divExact(const Poly& a, const Poly& b);

// Monic gcd (leading coefficient 1) computed by content extraction and a
// primitive pseudo-remainder sequence in the smallest shared atom.
Poly gcdPoly(const Poly& a, const Poly& b);

} // namespace gengeo
