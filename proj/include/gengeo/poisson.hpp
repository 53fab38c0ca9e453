#pragma once

#include <map>
#include <string>
#include <vector>

#include "gengeo/forms.hpp"
#include "gengeo/frame.hpp"
#include "gengeo/linalg.hpp"

namespace gengeo {

// Holomorphic bivector field on the coordinate frame of a complex-paired
// chart: sigma = sum_{j<k} sigma^{jk} d/dz_{j+1} ^ d/dz_{k+1}, stored as the
// full antisymmetric m x m coefficient matrix.  All contractions use the
// first slot: sigma(dz_{j+1}) = sum_k sigma^{jk} d/dz_{k+1}.
class Bivector {
public:
    // Validates: coordinate frame over a complex-paired chart, matrix m x m
    // and antisymmetric (BadArgument), entries independent of the conjugate
    // variables (NotHolomorphic).
    Bivector(FramePtr frame, SMat sigma);

    const FramePtr& frame() const { return frame_; }
    int m() const { return static_cast<int>(sigma_.size()); }
    const SMat& sigma() const { return sigma_; }
    // sigma^{jk} with zero-based indices.
    const Scalar& coeff(int j, int k) const { return sigma_[j][k]; }

private:
    FramePtr frame_;
    SMat sigma_;
};

// Zero bivector on the given frame.
Bivector zeroBivector(FramePtr frame);

// First-slot contraction of a covector (components on dz_1..dz_m):
// sigmaSharp(xi)^k = sum_j sigma^{jk} xi_j.
SVec sigmaSharp(const Bivector& sigma, const SVec& xi);

// Apply a vector field with holomorphic components (length m, on d/dz_k) to
// a scalar; only holomorphic derivatives enter.
Scalar applyHol(const FramePtr& frame, const SVec& x, const Scalar& f);

// Lie bracket of two holomorphic-direction vector fields; coefficients may
// depend on the conjugate variables, which simply ride along.
SVec lieHol(const FramePtr& frame, const SVec& x, const SVec& y);

// Hamiltonian field X_f = sigmaSharp(df), using the holomorphic derivatives
// of f.
SVec hamiltonianField(const Bivector& sigma, const Scalar& f);

// Poisson bracket {f,g} = X_f(g) = sum_{jk} sigma^{jk} (d_j f)(d_k g).
Scalar poissonBracket(const Bivector& sigma, const Scalar& f, const Scalar& g);

// Jacobi identity: the cyclic sum
//   sum_l ( sigma^{lj} d_l sigma^{ik} + sigma^{li} d_l sigma^{kj}
//         + sigma^{lk} d_l sigma^{ji} )
// vanishes for every triple i < j < k.  Bivectors with m <= 2 always pass.
bool poissonCheck(const Bivector& sigma);

// Raises NotPoisson (naming the first violating triple) unless poissonCheck
// holds.
void requirePoisson(const Bivector& sigma);

// Antiholomorphic q-form with values in the holomorphic tangent directions:
//   phi = sum_{|K|=q} dzb^K tensor (phi_K^k d/dz_{k+1}),
// summed over ascending multi-indices K of conjugate coordinates.  comp maps
// the bitmask of K (bit j <-> dzb_{j+1}) to the component vector of length m;
// all-zero component vectors are dropped, so structural equality of the maps
// is equality of forms.
struct TValuedForm {
    FramePtr frame;
    int q = 0;
    std::map<Mask, SVec> comp;

    TValuedForm() = default;
    TValuedForm(FramePtr fr, int degree);

    int m() const;
    bool isZero() const { return comp.empty(); }
    // Accumulate a component vector onto a multi-index (mask degree must
    // equal q); zero results are dropped.
    void addTerm(Mask k, const SVec& v);
    // Component vector of a multi-index; the zero vector when absent.
    SVec component(Mask k) const;

    friend TValuedForm operator+(const TValuedForm& a, const TValuedForm& b);
    friend TValuedForm operator-(const TValuedForm& a, const TValuedForm& b);
    friend TValuedForm operator-(const TValuedForm& a);
    friend TValuedForm operator*(const Scalar& s, const TValuedForm& a);
    friend bool operator==(const TValuedForm& a, const TValuedForm& b);
    friend bool operator!=(const TValuedForm& a, const TValuedForm& b) { return !(a == b); }

    std::string str() const;
};

// Graded bracket pairing the wedge of the antiholomorphic factors with the
// Lie bracket of the vector parts:
//   [phi, psi] = sum_{K,L disjoint} shuffleSign(K,L) dzb^{K u L} tensor [phi_K, psi_L].
// Satisfies [phi,psi] = -(-1)^{q q'} [psi,phi].
TValuedForm deformationBracket(const TValuedForm& phi, const TValuedForm& psi);

// Half self-bracket of a degree-1 form: the coefficient of dzb_k ^ dzb_l
// (k < l) is [phi_k, phi_l].  This is the quadratic obstruction to extending
// a first-order deformation; BadArgument unless q == 1.
TValuedForm obstruction(const TValuedForm& phi);

// First-order deformation class attached to a bivector against a 2-form:
//   alpha_{jk} = -2i sum_l omega_{jl} sigma^{lk},
// where omega_{jl} is the coefficient of dz_{l+1} ^ dzb_{j+1} in omega,
// returned as the T-valued (0,1)-form sum alpha_{jk} dzb_{j+1} (x) d/dz_{k+1}.
// minusSide selects the opposite orientation's class, -alpha.
TValuedForm deformationClass(const Bivector& sigma, const Form& omega,
                             bool minusSide = false);

// One deformation step generated by a scalar potential f.
struct DeformationStep {
    // phi1 = sum_k X_{(df/dzb_k)} (x) dzb_k: the first-order deformation.
    TValuedForm phi1;
    // obstruction(phi1).
    TValuedForm selfBracket;
    // sum_{k<l} X_{{f_k, f_l}} (x) dzb_k ^ dzb_l with f_k = df/dzb_k: the
    // Hamiltonian lift that absorbs the obstruction.
    TValuedForm hamiltonianLift;
    // selfBracket == hamiltonianLift; guaranteed once sigma is Poisson.
    bool unobstructed = false;
};

// Requires poissonCheck (NotPoisson otherwise); the two reported forms then
// agree, exhibiting the obstruction as Hamiltonian and the step as
// unobstructed.
DeformationStep unobstructedStep(const Bivector& sigma, const Scalar& f);

// Module structure over a bivector: a rank-k free module with action
//   f . s = X_f(s) + A(df) s,    A(df) = sum_j A_j (df/dz_{j+1}),
// for k x k matrices A_j with holomorphic entries.  The derivative operator
// pairing with it is dbarModule below; compatibility of the action with the
// Poisson bracket is checked on concrete data by moduleCheck.
struct PoissonModule {
    Bivector sigma;
    int k = 0;
    std::vector<SMat> a;   // m matrices, each k x k
};

// Validates shapes and holomorphy (BadArgument / NotHolomorphic).
PoissonModule poissonModule(Bivector sigma, std::vector<SMat> a);

// Module action f . s on a component vector of length k.
SVec moduleAction(const PoissonModule& mod, const Scalar& f, const SVec& s);

// Derivative operator: result[j]^a = sum_k sigma^{jk} d_k s^a + (A_j s)^a,
// the row index matching the first bivector slot so that the action
// decomposes as f . s = sum_j (d_j f) result[j].  Flat sections are those
// with every component zero.
std::vector<SVec> dbarModule(const PoissonModule& mod, const SVec& s);

// Compatibility of the action on concrete data:
//   g.(f.s) - f.(g.s) == {g,f}.s.
bool moduleCheck(const PoissonModule& mod, const Scalar& f, const Scalar& g,
                 const SVec& s);

// Rank-2 module generated by two pointwise-independent holomorphic fields on
// a two-variable chart: sigma = X1 ^ X2 and A_j = -sum_k sigma^{jk} (d_k P) P^{-1}
// with P = [X1 | X2] (columns) -- the conjugation of the trivial action by P,
// so concretely
//   A_1 = -(d_2 P) adj P,   A_2 = (d_1 P) adj P.
// The columns of P are flat for dbarModule.  Raises DegeneratePair when
// det P == 0 identically.
PoissonModule moduleFromTwoFields(const FramePtr& frame, const SVec& x1,
                                  const SVec& x2);

// Canonical rank-1 module: A_j = sum_k d_k sigma^{jk}.  The action is the
// Lie derivative along X_f of the coefficient of the top holomorphic form
// h dz_1 ^ ... ^ dz_m.
PoissonModule canonicalModule(Bivector sigma);

// Degenerate-bivector module: sigma = 0 and A_j the components of a
// matrix-valued field whose components pairwise commute (NonCommutingHiggs
// otherwise).  The action reduces to f . s = A(df) s.
PoissonModule coHiggsModule(const FramePtr& frame, std::vector<SMat> phi);

} // namespace gengeo
