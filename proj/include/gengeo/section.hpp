#pragma once

#include <vector>

#include "gengeo/forms.hpp"
#include "gengeo/frame.hpp"

namespace gengeo {

// Section of the extended bundle T + T*: a vector field plus a 1-form, both
// in frame components.
struct Section {
    FramePtr frame;
    Vec x;                     // vector components, length n
    std::vector<Scalar> xi;    // covector components, length n

    Section() = default;
    Section(FramePtr fr, Vec v, std::vector<Scalar> form);

    static Section vector(FramePtr fr, Vec v);
    static Section covector(FramePtr fr, std::vector<Scalar> form);

    int n() const { return static_cast<int>(x.size()); }
    Form formPart() const { return Form::one(frame, xi); }
    bool isZero() const;

    Section conjugate() const;

    friend Section operator+(const Section& a, const Section& b);
    friend Section operator-(const Section& a, const Section& b);
    friend Section operator-(const Section& a);
    friend Section operator*(const Scalar& s, const Section& a);
    friend bool operator==(const Section& a, const Section& b);
    friend bool operator!=(const Section& a, const Section& b) { return !(a == b); }
};

// Canonical symmetric pairing of the extended bundle:
// (X + xi, Y + eta) = (eta(X) + xi(Y)) / 2.
Scalar pairing(const Section& u, const Section& v);

} // namespace gengeo
