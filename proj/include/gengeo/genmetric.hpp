#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "gengeo/courant.hpp"
#include "gengeo/linalg.hpp"
#include "gengeo/section.hpp"

namespace gengeo {

// Generalized metric: the rank-n subbundle V = {X + gX + i_X F} of T + T*,
// described by a symmetric invertible matrix g in frame components plus an
// optional "curving" 2-form F.  The canonical pairing restricted to V equals
// g; the orthocomplement V-perp = {X - gX + i_X F} carries -g.  The exterior
// derivative H = dF is the 3-form that shows up as the skew torsion of the
// induced connection.
class GenMetric {
public:
    // Validates: g square of the frame dimension, symmetric, invertible over
    // the scalar fraction field; curving (when nonzero) a 2-form on the same
    // frame.  Raises BadArgument otherwise.
    GenMetric(FramePtr frame, SMat g, Form curving = Form());

    const FramePtr& frame() const { return frame_; }
    int n() const { return static_cast<int>(g_.size()); }
    const SMat& g() const { return g_; }
    const SMat& gInv() const { return gInv_; }
    const Form& curving() const { return f_; }
    // H = d(curving); closed by construction.
    const Form& torsionForm() const { return h_; }

    // Basis sections v_a = E_a + g E_a + i_{E_a} F of V, and the mirror
    // basis w_a = E_a - g E_a + i_{E_a} F of V-perp.
    const std::vector<Section>& basisV() const { return vplus_; }
    const std::vector<Section>& basisVPerp() const { return vminus_; }

private:
    FramePtr frame_;
    SMat g_;
    SMat gInv_;
    Form f_;
    Form h_;
    std::vector<Section> vplus_;
    std::vector<Section> vminus_;
};

// X + gX + i_X F for sign = +1 (a section of V), X - gX + i_X F for
// sign = -1 (a section of V-perp).  The self-pairing is sign * g(X,X).
Section lift(const GenMetric& m, const Vec& x, int sign);

// Orthogonal projection of T + T* onto V along V-perp, computed against the
// Gram matrix of the V basis (which is g).  Fixes sections of V, kills
// sections of V-perp; a pure vector X goes to lift(X,+)/2.
Section projectV(const GenMetric& m, const Section& u);

// Mirror projection onto V-perp along V (Gram matrix -g).
Section projectVPerp(const GenMetric& m, const Section& u);

// Connection on V induced by the bracket: nabla_X v = projectV [X^-, v]
// where X^- = lift(X,-).  v must be a section of V (checked by the
// projection fixed-point test; NotInSubbundle otherwise).  An optional
// closed 3-form twists the bracket.
Section covariantDerivative(const GenMetric& m, const Vec& x, const Section& v,
                            const Form& twist = Form());

// Mirror connection on V-perp: nabla_X w = projectVPerp [X^+, w].  Its
// torsion is opposite to that of the V connection.
Section covariantDerivativePerp(const GenMetric& m, const Vec& x, const Section& w,
                                const Form& twist = Form());

// Christoffel symbols of the induced connection, recovered purely from
// brackets and projection: christoffel(m)[k][i][j] = Gamma^k_{ij} with
// nabla_{E_i} E_j = Gamma^k_{ij} E_k.  Requires a coordinate frame and zero
// curving (BadArgument otherwise); the result is then the Levi-Civita
// connection of g.
std::vector<SMat> christoffel(const GenMetric& m);

// Torsion T(E_i, E_j) = nabla_i E_j - nabla_j E_i - [E_i, E_j] of the induced
// connection on a coordinate frame, as components torsion(m)[k][i][j] with
// T(E_i, E_j) = sum_k T[k][i][j] E_k.  Sign convention, fixed once here:
// lowering the upper index gives the exterior derivative of the curving
// evaluated on coordinate fields,
//   g(T(X,Y), Z) = dF(X,Y,Z),
// so the lowered tensor is totally antisymmetric and vanishes when F is
// closed.  With fromOrthocomplement the mirror connection is used instead,
// which flips the overall sign.
std::vector<SMat> torsion(const GenMetric& m, bool fromOrthocomplement = false);

// Positive-definiteness of g at one sample point, by leading principal
// minors of the evaluated matrix.  Every atom appearing in g must be given a
// real value (BadArgument on complex values, UnknownVariable when missing).
bool positiveDefiniteAt(const GenMetric& m, const std::map<AtomId, GRat>& point);

// The diagonal SU(2) x R metric (abc)^2 dt^2 + a^2 s1^2 + b^2 s2^2 + c^2 s3^2
// over the invariant frame {d/dt, X1, X2, X3}, ds1 = -s2^s3 cyclically, with
// its covariant-derivative table on the orthonormal coframe
//   e0 = abc dt,  e1 = a s1,  e2 = b s2,  e3 = c s3.
//
// table[d][alpha][beta] is the coefficient of the basis section s_beta in
// the derivative of s_alpha along direction d (direction 0 = d/dt,
// direction i = X_i), where the differentiated sections are
//   * for rows d = 1..3 and the entry (d=0, alpha=0): the unit sections
//     e_alpha (V lifts of the orthonormal vector fields), expressed again in
//     the unit basis; and
//   * for row d = 0, alpha > 0: the coordinate sections X_i + g X_i (metric
//     duals of the unnormalized invariant fields).  These derivatives are
//     diagonal, and the stored coefficient is the factor against the section
//     itself (a'/a, b'/b, c'/c); the unit sections would instead be parallel
//     along d/dt.
// Every entry is computed through brackets and projection; none is entered
// by hand.
struct BianchiIX {
    FramePtr frame;
    GenMetric metric;
    // Normalization factors (abc, a, b, c): e_alpha = scales[alpha] * coframe.
    SVec scales;
    std::array<std::array<std::array<Scalar, 4>, 4>, 4> table;
    std::array<std::string, 4> directionNames;
};

// Build the table for function symbols a, b, c (all functions of the same
// chart variable; BadArgument otherwise).
BianchiIX bianchiIX(AtomId a, AtomId b, AtomId c);

// Convenience preset registering t and a(t), b(t), c(t).
BianchiIX bianchiIX();

} // namespace gengeo
