#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "gengeo/frame.hpp"

namespace gengeo {

// Basis monomial of the exterior algebra encoded as a bitmask: bit a set
// means the coframe factor e^a is present; factors are ordered ascending.
using Mask = std::uint32_t;

int maskDegree(Mask m);

// Element of the exterior algebra of the coframe, possibly inhomogeneous
// (spinors mix degrees).  Components carry no zero coefficients, so the zero
// form has an empty map and structural equality is mathematical equality.
class Form {
public:
    Form() = default;
    explicit Form(FramePtr frame) : frame_(std::move(frame)) {}

    static Form scalar(FramePtr frame, const Scalar& s);          // degree 0
    static Form basisOne(FramePtr frame, int a);                  // e^a
    static Form basis(FramePtr frame, Mask m);                    // e^{i1} ^ ... ^ e^{ip}
    static Form one(FramePtr frame, const std::vector<Scalar>& comps);  // degree 1

    const FramePtr& frame() const { return frame_; }
    const std::map<Mask, Scalar>& comps() const { return comp_; }
    bool isZero() const { return comp_.empty(); }

    // Largest degree with a nonzero component; -1 for the zero form.
    int maxDegree() const;
    bool isHomogeneous(int degree) const;
    Form degreePart(int degree) const;
    // Components of a 1-form as a coefficient vector of length n.
    std::vector<Scalar> oneComps() const;
    // Coefficient of a single basis monomial (zero when absent).
    Scalar coeff(Mask m) const;
    // Coefficient of the top monomial e^0 ^ ... ^ e^{n-1}.
    Scalar topCoeff() const;

    void addTerm(Mask m, const Scalar& c);

    friend Form operator+(const Form& a, const Form& b);
    friend Form operator-(const Form& a, const Form& b);
    friend Form operator-(const Form& a);
    Form& operator+=(const Form& o) { *this = *this + o; return *this; }
    Form& operator-=(const Form& o) { *this = *this - o; return *this; }
    friend Form operator*(const Scalar& s, const Form& a);
    friend bool operator==(const Form& a, const Form& b);
    friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

    Form conjugate() const;

    std::string str() const;

private:
    FramePtr frame_;
    std::map<Mask, Scalar> comp_;
};

// Exterior product.
Form wedge(const Form& a, const Form& b);

// Interior product with a single frame vector E_a (contraction into the first
// slot) and with a general vector field in frame components.
Form interiorBasis(int a, const Form& w);
Form interior(const Vec& x, const Form& w);

// Exterior derivative in the form's frame, using the frame action on scalars
// and the structure functions for the coframe derivatives.
Form exteriorD(const Form& w);

// Lie derivative of a form along a vector field (contract-then-derive plus
// derive-then-contract).
Form lieForm(const Vec& x, const Form& w);

} // namespace gengeo
