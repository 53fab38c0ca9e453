#pragma once

#include <vector>

#include "gengeo/forms.hpp"
#include "gengeo/section.hpp"

namespace gengeo {

// Clifford action of an extended-bundle section on a form:
// (X + xi) . phi = i_X phi + xi ^ phi.
// Squares to the pairing: u.(u.phi) = (u,u) phi.
Form cliffordAct(const Section& u, const Form& phi);

// Bilinear spinor pairing of two (possibly inhomogeneous) forms: the sum over
// j of (-1)^j (a_{2j} ^ b_{n-2j} + a_{2j+1} ^ b_{n-2j-1}) where subscripts
// pick homogeneous parts.  Returns the coefficient of the top-degree
// monomial.  Invariant (up to the one global sign determined by n) under the
// simultaneous Clifford action of a null section on both arguments and under
// the simultaneous 2-form exponential transform.
Scalar mukaiPairing(const Form& a, const Form& b);

// Wedge exponential 1 + B + B^B/2 + ... of a form with no degree-0 part
// (finite by nilpotency).
Form wedgeExp(const Form& b);

// Spinor transform matching the shear u -> u + i_X B of the extended bundle:
// phi -> e^{-B} ^ phi.
Form spinorShear(const Form& b, const Form& phi);

// Annihilator of a spinor: basis of the sections u with u . phi = 0, computed
// over the rational-function field.  Raises ZeroSpinor on the zero form.
std::vector<Section> annihilator(const Form& phi);

// A spinor is pure when its annihilator has the maximal dimension n.
bool isPure(const Form& phi);

} // namespace gengeo
