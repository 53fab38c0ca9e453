#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "gengeo/errors.hpp"

namespace gengeo {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Gaussian rational a + b*i with exact rational parts.  This is the
// coefficient field for the entire symbolic layer: it is closed under the
// four field operations and under complex conjugation.
struct GRat {
    Rat re{0};
    Rat im{0};

    GRat() = default;
    GRat(long v) : re(v) {}                    // NOLINT(google-explicit-constructor)
    GRat(Rat r) : re(std::move(r)) {}          // NOLINT(google-explicit-constructor)
    GRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static GRat i() { return GRat{Rat(0), Rat(1)}; }

    bool isZero() const { return re == 0 && im == 0; }
    bool isOne() const { return re == 1 && im == 0; }
    bool isReal() const { return im == 0; }

    GRat conj() const { return GRat{re, -im}; }

    // Squared modulus a^2 + b^2, a nonnegative rational.
    Rat norm2() const { return re * re + im * im; }

    friend GRat operator+(const GRat& a, const GRat& b) { return {a.re + b.re, a.im + b.im}; }
    friend GRat operator-(const GRat& a, const GRat& b) { return {a.re - b.re, a.im - b.im}; }
    friend GRat operator-(const GRat& a) { return {-a.re, -a.im}; }
    friend GRat operator*(const GRat& a, const GRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GRat operator/(const GRat& a, const GRat& b) {
        if (b.isZero()) throw DivisionByZero("division of coefficients by zero");
        Rat n = b.norm2();
        GRat c = a * b.conj();
        return {c.re / n, c.im / n};
    }

    GRat& operator+=(const GRat& o) { *this = *this + o; return *this; }
    GRat& operator-=(const GRat& o) { *this = *this - o; return *this; }
    GRat& operator*=(const GRat& o) { *this = *this * o; return *this; }
    GRat& operator/=(const GRat& o) { *this = *this / o; return *this; }

    friend bool operator==(const GRat& a, const GRat& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GRat& a, const GRat& b) { return !(a == b); }
    // Total order (lexicographic); used only to make printing/containers deterministic.
    friend bool operator<(const GRat& a, const GRat& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    }

    std::string str() const;
};

std::string ratStr(const Rat& r);

} // namespace gengeo
