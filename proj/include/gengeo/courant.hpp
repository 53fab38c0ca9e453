#pragma once

#include <array>
#include <map>
#include <utility>
#include <vector>

#include "gengeo/clifford.hpp"
#include "gengeo/section.hpp"

namespace gengeo {

// Shear of the extended bundle by a 2-form: X + xi -> X + xi + i_X B.
Section bfieldShear(const Form& b, const Section& u);

// Skew bracket on sections of T + T*:
//   [X+xi, Y+eta] = [X,Y] + L_X eta - L_Y xi - d(i_X eta - i_Y xi)/2,
// plus i_Y i_X H on the covector part when a twisting 3-form is supplied.
// H must be closed (NotClosed otherwise).
Section courantBracket(const Section& u, const Section& v, const Form& h = Form());

// Non-skew derived bracket u o v = [X,Y] + L_X eta - i_Y d xi (+ i_Y i_X H).
Section dorfmanBracket(const Section& u, const Section& v, const Form& h = Form());

// Twisted exterior derivative d phi + H ^ phi; requires dH = 0.
Form twistedD(const Form& h, const Form& phi);

// Derivative of a form along an extended-bundle section:
// d(u . phi) + u . d phi, with d replaced by the twisted derivative when a
// closed 3-form is supplied.
Form extendedLie(const Section& u, const Form& phi, const Form& h = Form());

// Cyclic sum [[u,v],w] + [[v,w],u] + [[w,u],v] of the skew bracket.
Section jacobiator(const Section& u, const Section& v, const Section& w,
                   const Form& h = Form());

// The closed-form side of the bracket's Jacobi anomaly:
// d( ([u,v],w) + ([v,w],u) + ([w,u],v) ) / 3 as a covector section.
Section jacobiatorPotential(const Section& u, const Section& v, const Section& w,
                            const Form& h = Form());

// Gerbe-style twisting data over a formal patch cover: closed shear 2-forms
// b[{alpha,beta}] on overlaps, a list of triple overlaps on which the cocycle
// condition is enforced, and one curving 2-form per patch.
struct TwistData {
    FramePtr frame;
    int patches = 0;
    std::map<std::pair<int, int>, Form> shears;    // key (alpha, beta), alpha < beta
    std::vector<std::array<int, 3>> triples;       // overlaps for the cocycle check
    std::vector<Form> curvings;                    // F_alpha, one per patch

    // Shear on an ordered overlap (antisymmetric in the patch labels).
    Form shear(int alpha, int beta) const;
};

// Validates the twisting data: every shear closed, the cocycle sum on each
// declared triple zero, and the curvings compatible (F_beta - F_alpha equals
// the shear on the overlap).  Returns the resulting global closed 3-form
// dF_alpha after checking it is patch-independent.  Raises NotClosed or
// CocycleViolation with the offending patch labels.
Form twistCheck(const TwistData& data);

} // namespace gengeo
