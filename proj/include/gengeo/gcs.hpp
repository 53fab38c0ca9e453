#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gengeo/clifford.hpp"
#include "gengeo/courant.hpp"
#include "gengeo/forms.hpp"
#include "gengeo/frame.hpp"
#include "gengeo/linalg.hpp"
#include "gengeo/poisson.hpp"
#include "gengeo/section.hpp"

namespace gengeo {

// Generalized complex structure over a frame, kept in three equivalent
// presentations simultaneously:
//   * span:   a basis u_1..u_n of the +i eigenbundle E of the structure,
//             isotropic for the canonical pairing and with E meeting its
//             conjugate only in zero,
//   * spinor: a generator of the line of forms annihilated by every u_i
//             under the Clifford action (pure, with nonvanishing spinor
//             pairing against its conjugate),
//   * endo:   the 2n x 2n matrix acting on extended-bundle columns
//             (vector components first, covector components second) with
//             square -1, skew for the canonical pairing, and +i eigenspace
//             spanned by the u_i.
// An optional closed 3-form twists the bracket used by integrability and by
// the operators below.
struct GCStruct {
    FramePtr frame;
    std::vector<Section> span;
    Form spinor;
    SMat endo;
    Form twist;

    int n() const { return frame ? frame->n() : 0; }
};

// Gram matrix of the canonical pairing on extended columns: (1/2) [[0,I],[I,0]].
SMat pairingGram(int n);

// Section <-> extended column of length 2n (vector block then covector block).
SVec sectionColumn(const Section& u);
Section columnSection(const FramePtr& frame, const SVec& c);

// Scalar lambda with a == lambda * b, when one exists (b must be nonzero).
std::optional<Scalar> formMultiple(const Form& a, const Form& b);

// Scale a nonzero form so the coefficient of its numerically smallest basis
// monomial becomes 1; the canonical representative of a spinor line.
Form normalizeSpinor(const Form& phi);

// Converters between the three presentations.  spanToSpinor returns the
// normalized generator of the annihilated line; endoToSpan returns the
// reduced-echelon basis of the +i eigenspace.
SMat spanToEndo(const std::vector<Section>& span);
std::vector<Section> endoToSpan(const FramePtr& frame, const SMat& j);
Form spanToSpinor(const std::vector<Section>& span);

// General constructors.  Each validates its input (isotropy and conjugate
// transversality for spans; square -1 plus pairing skewness for matrices;
// purity plus nonzero conjugate pairing for spinors; closedness for the
// twist) and fills in the other two presentations.
GCStruct gcsFromSpan(std::vector<Section> span, Form twist = Form());
GCStruct gcsFromSpinor(const FramePtr& frame, const Form& psi, Form twist = Form());
GCStruct gcsFromEndo(const FramePtr& frame, SMat j, Form twist = Form());

// Standard structures.
//   * gcsComplex: coordinate frame of a complex-paired chart; the +i
//     eigenbundle is spanned by the antiholomorphic coordinate vectors and
//     the holomorphic coordinate covectors, with spinor dz_1 ^ ... ^ dz_m.
//   * gcsSymplectic: nondegenerate closed 2-form; the spinor is the wedge
//     exponential of i*omega (NonClosedSymplecticForm / BadArgument).
//   * gcsPoisson: holomorphic bivector passing the Jacobi check (NotPoisson);
//     the span replaces each dz_i by dz_i - sigma(dz_i), and the spinor is
//     normalized so the top holomorphic form has coefficient 1.
//   * gcsBfield: shear of any structure by a 2-form b; the twist drops by
//     d(b), so a closed shear preserves it.
GCStruct gcsComplex(const FramePtr& frame, Form twist = Form());
GCStruct gcsSymplectic(const FramePtr& frame, const Form& omega);
GCStruct gcsPoisson(const Bivector& sigma, Form twist = Form());
GCStruct gcsBfield(const GCStruct& j, const Form& b);

// Integrability verdict.  courant mode checks that the twisted bracket of
// every pair of span sections stays inside the span; on failure, residual
// holds the offending bracket.  spinor mode solves
//   d(psi) - twist ^ psi = w . psi
// for an extended section w (free variables set to zero, so w == 0 exactly
// when the twisted derivative of the spinor vanishes); on failure, remainder
// holds the unsolvable twisted derivative.  Neither mode throws.
enum class IntegrabilityMode { courant, spinor };

struct Integrability {
    bool ok = true;
    std::string detail;     // empty when ok
    Section w;              // spinor mode success: the derivative witness
    Section residual;       // courant mode failure: the escaping bracket
    Form remainder;         // spinor mode failure: the twisted derivative
};

Integrability integrability(const GCStruct& j, IntegrabilityMode mode);

// Component of d(f) lying in the conjugate eigenbundle, as a section.  For
// the three standard structures this reproduces the antiholomorphic
// derivative, the half-sum (df - i X)/2 with X the omega-dual of df, and the
// antiholomorphic derivative corrected by the bivector contractions.
Section dbar(const GCStruct& j, const Scalar& f);

// The same derivative viewed as a functional on the span basis:
// result[i] = 2 * pairing(df, u_i), which equals X_i(f) for u_i = X_i + xi_i.
SVec dbarFunctional(const GCStruct& j, const Scalar& f);

// Extension of the derivative to functionals: given alpha with components on
// the span basis, returns the antisymmetric matrix
//   beta_{ij} = ( X_i(alpha_j) - X_j(alpha_i) - alpha([u_i,u_j]) ) / 2,
// where the bracket (twisted) is expanded in the span basis before alpha is
// applied.  Composing with dbarFunctional gives zero on integrable
// structures; BadArgument when a bracket leaves the span.
SMat dbar1(const GCStruct& j, const SVec& alpha);

// Flow section attached to a scalar potential: u = endo applied to d(f).
// For integrable structures the extended derivative of the spinor along u is
// a multiple of the spinor; lambda is that multiple and proportional records
// whether the identity holds exactly.
struct SymmetryCheck {
    Section u;
    Scalar lambda;
    bool proportional = false;
};

SymmetryCheck symmetrySection(const GCStruct& j, const Scalar& f);

// ---------------------------------------------------------------------------
// Commuting pairs with a positive product metric.

using SamplePoint = std::map<AtomId, GRat>;

// Checks that the two structures commute, that the product G = J1 J2 is
// symmetric for the canonical pairing (both exact), and that the quadratic
// form (G u, u) is positive definite at every given sample point (evaluated
// on a real basis; at least one point is required -- BadArgument).
bool gkCheck(const GCStruct& j1, const GCStruct& j2,
             const std::vector<SamplePoint>& points);

// The pair with its product endomorphism and the +1 / -1 eigenbundles of the
// product (each of rank n, in reduced-echelon bases).  gkMake validates via
// gkCheck unless told otherwise, requires matching twists, and raises
// DegenerateEigenbundle when the eigenbundle ranks are not n and n.
struct GKPair {
    GCStruct j1, j2;
    SMat product;                   // G = J1 J2
    std::vector<Section> v;         // +1 eigenbundle of G
    std::vector<Section> vPerp;     // -1 eigenbundle of G
};

GKPair gkMake(const GCStruct& j1, const GCStruct& j2,
              const std::vector<SamplePoint>& points, bool validate = true);

// Classical data carried by a pair: both eigenbundles of the product are
// graphs over the tangent directions, the lifts of X by (b +/- g)(X, .),
// which yields the metric g, the 2-form part b (stored as the coefficients
// b(e_a, e_b), so a shear by a 2-form adds that form's coefficient matrix),
// and the two complex structures obtained by restricting J1 to the graphs.  The four joint eigenbundles refine the
// splitting (first sign: J1 eigenvalue; second: J2); vpm and vmm generate
// the +i directions of iPlus and the -i directions of iMinus, and their
// closure under the twisted bracket certifies integrability of iPlus and
// iMinus.  The torsion residuals compare the twist against the complex
// structures' torsion forms: twist - dc(omegaPlus) and twist + dc(omegaMinus)
// with omega = g composed with the complex structure and
// (dc w)(X,Y,Z) = -(d w)(IX, IY, IZ).  DegenerateEigenbundle when any rank
// degenerates.
struct GKData {
    SMat metric;                    // n x n symmetric
    SMat bfield;                    // n x n antisymmetric
    SMat iPlus, iMinus;             // n x n, square -1
    std::vector<Section> vpp, vpm, vmp, vmm;
    bool iPlusClosed = false;       // vpm closed under the twisted bracket
    bool iMinusClosed = false;      // vmm closed under the twisted bracket
    Form torsionPlus, torsionMinus; // twist -/+ the dc-forms of iPlus/iMinus
};

GKData gkExtract(const GKPair& p);

// Reconstruction from classical data: a metric, two compatible complex
// structures (g Hermitian for both), and a closed twist 3-form.  Builds the
// pair whose product eigenbundles are the graphs of +/- g, with J1 acting by
// +i on the lifts of the +i directions of iPlus (graph over +g) and of iMinus
// (graph over -g).  Both outputs are validated under the twisted bracket;
// inconsistent data (for example a twist that does not match the torsion of
// the complex structures) raises IntegrabilityFailure naming the residual.
std::pair<GCStruct, GCStruct> gkFromBihermitian(const FramePtr& frame,
                                                const SMat& g,
                                                const SMat& iPlus,
                                                const SMat& iMinus,
                                                const Form& h);

} // namespace gengeo
