#include "gengeo/gcs.hpp"

#include <cstddef>
#include <string>
#include <utility>

#include "gengeo/errors.hpp"

namespace gengeo {

namespace {

// One solution of a x = b with free variables set to zero, or nullopt when
// the system is inconsistent (never throws).
std::optional<SVec> trySolve(const SMat& a, const SVec& b) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    SMat aug = a;
    for (int r = 0; r < rows; ++r) aug[r].push_back(b[r]);
    std::vector<int> pivots;
    smatRref(aug, &pivots);
    SVec x(cols, Scalar(0));
    for (std::size_t k = 0; k < pivots.size(); ++k) {
        if (pivots[k] == cols) return std::nullopt;
        x[pivots[k]] = aug[k][cols];
    }
    return x;
}

SVec formColumn(const Form& w, int n) {
    SVec c(static_cast<std::size_t>(1) << n, Scalar(0));
    for (const auto& [m, s] : w.comps()) c[m] = s;
    return c;
}

SMat diagonal(const SVec& d) {
    SMat a = smatZero(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (std::size_t k = 0; k < d.size(); ++k) a[k][k] = d[k];
    return a;
}

std::string scalarList(const std::vector<Scalar>& v) {
    std::string s = "(";
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) s += ", ";
        s += v[k].str();
    }
    return s + ")";
}

std::string sectionStr(const Section& u) {
    return "[x: " + scalarList(u.x) + " | xi: " + scalarList(u.xi) + "]";
}

void validateTwist(const FramePtr& frame, const Form& twist) {
    if (twist.frame() == nullptr || twist.isZero()) return;
    requireSameFrame(twist.frame(), frame);
    if (!twist.isHomogeneous(3))
        throw BadArgument("a bracket twist must be a homogeneous 3-form");
    if (!exteriorD(twist).isZero())
        throw NotClosed("bracket twist");
}

// Columns of the span sections: 2n x k.
SMat spanColumns(const std::vector<Section>& span) {
    const int n = span.empty() ? 0 : span[0].n();
    SMat u = smatZero(2 * n, static_cast<int>(span.size()));
    for (std::size_t i = 0; i < span.size(); ++i) {
        for (int a = 0; a < n; ++a) {
            u[a][i] = span[i].x[a];
            u[n + a][i] = span[i].xi[a];
        }
    }
    return u;
}

SMat conjugateColumns(const std::vector<Section>& span) {
    std::vector<Section> c;
    c.reserve(span.size());
    for (const Section& u : span) c.push_back(u.conjugate());
    return spanColumns(c);
}

SMat sideBySide(const SMat& a, const SMat& b) {
    SMat m = a;
    for (std::size_t r = 0; r < m.size(); ++r)
        m[r].insert(m[r].end(), b[r].begin(), b[r].end());
    return m;
}

SMat stacked(const SMat& a, const SMat& b) {
    SMat m = a;
    m.insert(m.end(), b.begin(), b.end());
    return m;
}

// j - lambda * identity.
SMat shifted(const SMat& j, const Scalar& lambda) {
    SMat a = j;
    for (std::size_t k = 0; k < a.size(); ++k) a[k][k] = a[k][k] - lambda;
    return a;
}

std::vector<Section> nullspaceSections(const FramePtr& frame, const SMat& a) {
    std::vector<Section> out;
    for (SVec& v : smatNullspace(a)) out.push_back(columnSection(frame, v));
    return out;
}

// Pullback of a form through an endomorphism of the frame directions:
// the result evaluates the original on m-transformed vectors, i.e. each
// coframe factor e^a is replaced by sum_b m[a][b] e^b.
Form pullback(const Form& w, const SMat& m) {
    const FramePtr& fr = w.frame();
    const int n = static_cast<int>(m.size());
    Form out(fr);
    for (const auto& [mask, c] : w.comps()) {
        Form term = Form::scalar(fr, c);
        for (int a = 0; a < n; ++a)
            if (mask >> a & 1) term = wedge(term, Form::one(fr, m[a]));
        out += term;
    }
    return out;
}

// Antisymmetric coefficient matrix of a 2-form (w[a][b] = coefficient of
// e^a ^ e^b for a < b).
SMat twoFormMatrix(const Form& w, int n) {
    SMat m = smatZero(n, n);
    for (const auto& [mask, c] : w.comps()) {
        int a = -1, b = -1;
        for (int k = 0; k < n; ++k)
            if (mask >> k & 1) (a < 0 ? a : b) = k;
        m[a][b] = c;
        m[b][a] = Scalar(0) - c;
    }
    return m;
}

Form matrixTwoForm(const FramePtr& frame, const SMat& m) {
    Form w(frame);
    const int n = static_cast<int>(m.size());
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (!m[a][b].isZero()) w.addTerm((Mask(1) << a) | (Mask(1) << b), m[a][b]);
    return w;
}

// Real basis of the extended bundle as a 2n x 2n column matrix: conjugation
// pairs of frame directions are replaced by their sum and i times their
// difference, self-conjugate directions stay; covectors follow the same
// pattern in the second block.
SMat realBasisColumns(const FramePtr& frame) {
    const int n = frame->n();
    SMat r = smatZero(2 * n, 2 * n);
    const Scalar iu = Scalar::i();
    for (int block = 0; block < 2; ++block) {
        const int off = block * n;
        for (int a = 0; a < n; ++a) {
            const int ca = frame->conjIndex(a);
            if (ca == a) {
                r[off + a][off + a] = Scalar(1);
            } else if (a < ca) {
                r[off + a][off + a] = Scalar(1);
                r[off + ca][off + a] = Scalar(1);
            } else {
                r[off + ca][off + a] = iu;
                r[off + a][off + a] = Scalar(0) - iu;
            }
        }
    }
    return r;
}

// All pairwise twisted brackets of the basis stay inside its own span.
bool bracketClosed(const std::vector<Section>& basis, const Form& twist) {
    if (basis.size() < 2) return true;
    SMat cols = spanColumns(basis);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            Section br = courantBracket(basis[i], basis[j], twist);
            if (!trySolve(cols, sectionColumn(br))) return false;
        }
    return true;
}

Scalar evaluateReal(const Scalar& s, const SamplePoint& p, bool* realOk) {
    GRat v = s.evaluate(p);
    if (v.im != 0) *realOk = false;
    return Scalar(v);
}

} // namespace

SMat pairingGram(int n) {
    SMat q = smatZero(2 * n, 2 * n);
    const Scalar half = Scalar(1) / Scalar(2);
    for (int a = 0; a < n; ++a) {
        q[a][n + a] = half;
        q[n + a][a] = half;
    }
    return q;
}

SVec sectionColumn(const Section& u) {
    SVec c;
    c.reserve(2 * u.x.size());
    c.insert(c.end(), u.x.begin(), u.x.end());
    c.insert(c.end(), u.xi.begin(), u.xi.end());
    return c;
}

Section columnSection(const FramePtr& frame, const SVec& c) {
    const int n = frame->n();
    if (static_cast<int>(c.size()) != 2 * n)
        throw BadArgument("extended column must have twice the frame dimension");
    return Section(frame, Vec(c.begin(), c.begin() + n),
                   std::vector<Scalar>(c.begin() + n, c.end()));
}

std::optional<Scalar> formMultiple(const Form& a, const Form& b) {
    if (b.isZero()) throw BadArgument("proportionality against the zero form");
    if (a.isZero()) return Scalar(0);
    const auto& [mask, low] = *b.comps().begin();
    Scalar lambda = a.coeff(mask) / low;
    if (a == lambda * b) return lambda;
    return std::nullopt;
}

Form normalizeSpinor(const Form& phi) {
    if (phi.isZero()) throw ZeroSpinor("cannot normalize the zero form");
    return (Scalar(1) / phi.comps().begin()->second) * phi;
}

SMat spanToEndo(const std::vector<Section>& span) {
    const int n = span.empty() ? 0 : span[0].n();
    if (static_cast<int>(span.size()) != n)
        throw BadArgument("a span needs exactly as many sections as the frame dimension");
    SMat m = sideBySide(spanColumns(span), conjugateColumns(span));
    SMat mInv;
    try {
        mInv = smatInverse(m);
    } catch (const BadArgument&) {
        throw BadArgument("the span meets its conjugate: cannot diagonalize");
    }
    SVec d(2 * n, Scalar::i());
    for (int k = 0; k < n; ++k) d[n + k] = Scalar(0) - Scalar::i();
    return smatMul(m, smatMul(diagonal(d), mInv));
}

std::vector<Section> endoToSpan(const FramePtr& frame, const SMat& j) {
    const int n = frame->n();
    std::vector<Section> span = nullspaceSections(frame, shifted(j, Scalar::i()));
    if (static_cast<int>(span.size()) != n)
        throw BadArgument("the +i eigenspace has dimension " +
                          std::to_string(span.size()) + ", expected " + std::to_string(n));
    return span;
}

Form spanToSpinor(const std::vector<Section>& span) {
    if (span.empty()) throw BadArgument("empty span");
    const FramePtr& fr = span[0].frame;
    const int n = fr->n();
    const int dim = 1 << n;
    SMat stack = smatZero(static_cast<int>(span.size()) * dim, dim);
    for (std::size_t i = 0; i < span.size(); ++i)
        for (int mask = 0; mask < dim; ++mask) {
            Form acted = cliffordAct(span[i], Form::basis(fr, static_cast<Mask>(mask)));
            for (const auto& [m, c] : acted.comps())
                stack[i * dim + m][mask] = c;
        }
    std::vector<SVec> ns = smatNullspace(stack);
    if (ns.size() != 1)
        throw BadArgument("the annihilated line of the span has dimension " +
                          std::to_string(ns.size()) + ", expected 1");
    Form psi(fr);
    for (int mask = 0; mask < dim; ++mask)
        if (!ns[0][mask].isZero()) psi.addTerm(static_cast<Mask>(mask), ns[0][mask]);
    return normalizeSpinor(psi);
}

GCStruct gcsFromSpan(std::vector<Section> span, Form twist) {
    if (span.empty()) throw BadArgument("empty span");
    const FramePtr& fr = span[0].frame;
    const int n = fr->n();
    if (static_cast<int>(span.size()) != n)
        throw BadArgument("a span needs exactly " + std::to_string(n) + " sections");
    for (const Section& u : span) requireSameFrame(fr, u.frame);
    validateTwist(fr, twist);
    for (std::size_t i = 0; i < span.size(); ++i)
        for (std::size_t j = i; j < span.size(); ++j)
            if (!pairing(span[i], span[j]).isZero())
                throw BadArgument("span is not isotropic: sections " + std::to_string(i) +
                                  " and " + std::to_string(j) + " have nonzero pairing");
    SMat m = sideBySide(spanColumns(span), conjugateColumns(span));
    if (smatRref(m) != 2 * n)
        throw BadArgument("the span meets its conjugate in a nonzero section");
    GCStruct g;
    g.frame = fr;
    g.endo = spanToEndo(span);
    g.spinor = spanToSpinor(span);
    g.span = std::move(span);
    g.twist = std::move(twist);
    return g;
}

GCStruct gcsFromSpinor(const FramePtr& frame, const Form& psi, Form twist) {
    requireSameFrame(frame, psi.frame());
    if (!isPure(psi))
        throw BadArgument("the form is not pure: its annihilator is too small");
    if (mukaiPairing(psi, psi.conjugate()).isZero())
        throw BadArgument("the form pairs to zero with its conjugate");
    GCStruct g = gcsFromSpan(annihilator(psi), std::move(twist));
    g.spinor = psi;
    return g;
}

GCStruct gcsFromEndo(const FramePtr& frame, SMat j, Form twist) {
    const int n = frame->n();
    if (static_cast<int>(j.size()) != 2 * n)
        throw BadArgument("the matrix must act on extended columns of length 2n");
    SMat sq = smatMul(j, j);
    for (int a = 0; a < 2 * n; ++a)
        for (int b = 0; b < 2 * n; ++b)
            if (sq[a][b] != (a == b ? Scalar(-1) : Scalar(0)))
                throw BadArgument("the matrix does not square to -1");
    SMat q = pairingGram(n);
    if (!smatIsZero(smatAdd(smatMul(smatTranspose(j), q), smatMul(q, j))))
        throw BadArgument("the matrix is not skew for the canonical pairing");
    GCStruct g = gcsFromSpan(endoToSpan(frame, j), std::move(twist));
    g.endo = std::move(j);
    return g;
}

GCStruct gcsComplex(const FramePtr& frame, Form twist) {
    if (!frame->isCoordinate() || !frame->chart().complexPaired)
        throw BadArgument("the complex preset needs the coordinate frame of a "
                          "complex-paired chart");
    validateTwist(frame, twist);
    const int m = frame->chart().m();
    const int n = frame->n();
    GCStruct g;
    g.frame = frame;
    for (int k = 0; k < m; ++k) {
        Vec x(n, Scalar(0));
        x[m + k] = Scalar(1);
        g.span.push_back(Section::vector(frame, std::move(x)));
    }
    for (int k = 0; k < m; ++k) {
        std::vector<Scalar> xi(n, Scalar(0));
        xi[k] = Scalar(1);
        g.span.push_back(Section::covector(frame, std::move(xi)));
    }
    g.spinor = Form::basis(frame, (Mask(1) << m) - 1);
    SVec d(2 * n);
    for (int a = 0; a < n; ++a) {
        const Scalar s = a < m ? Scalar(0) - Scalar::i() : Scalar::i();
        d[a] = s;
        d[n + a] = Scalar(0) - s;
    }
    g.endo = diagonal(d);
    g.twist = std::move(twist);
    return g;
}

GCStruct gcsSymplectic(const FramePtr& frame, const Form& omega) {
    requireSameFrame(frame, omega.frame());
    if (omega.isZero() || !omega.isHomogeneous(2))
        throw BadArgument("the symplectic preset needs a nonzero 2-form");
    if (!exteriorD(omega).isZero())
        throw NonClosedSymplecticForm("the 2-form is not closed");
    const int n = frame->n();
    SMat w = twoFormMatrix(omega, n);
    SMat wInv;
    try {
        wInv = smatInverse(w);
    } catch (const BadArgument&) {
        throw BadArgument("the 2-form is degenerate");
    }
    GCStruct g;
    g.frame = frame;
    const Scalar iu = Scalar::i();
    for (int a = 0; a < n; ++a) {
        Vec x(n, Scalar(0));
        x[a] = Scalar(1);
        std::vector<Scalar> xi(n);
        for (int b = 0; b < n; ++b) xi[b] = Scalar(0) - iu * w[a][b];
        g.span.emplace_back(frame, std::move(x), std::move(xi));
    }
    g.spinor = wedgeExp(iu * omega);
    g.endo = smatZero(2 * n, 2 * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            g.endo[a][n + b] = wInv[a][b];
            g.endo[n + a][b] = Scalar(0) - w[a][b];
        }
    return g;
}

GCStruct gcsPoisson(const Bivector& sigma, Form twist) {
    requirePoisson(sigma);
    const FramePtr& fr = sigma.frame();
    const int m = sigma.m();
    const int n = fr->n();
    std::vector<Section> span;
    for (int k = 0; k < m; ++k) {
        Vec x(n, Scalar(0));
        x[m + k] = Scalar(1);
        span.push_back(Section::vector(fr, std::move(x)));
    }
    for (int j = 0; j < m; ++j) {
        Vec x(n, Scalar(0));
        for (int k = 0; k < m; ++k) x[k] = Scalar(0) - sigma.coeff(j, k);
        std::vector<Scalar> xi(n, Scalar(0));
        xi[j] = Scalar(1);
        span.emplace_back(fr, std::move(x), std::move(xi));
    }
    GCStruct g = gcsFromSpan(std::move(span), std::move(twist));
    g.spinor = (Scalar(1) / g.spinor.coeff((Mask(1) << m) - 1)) * g.spinor;
    return g;
}

GCStruct gcsBfield(const GCStruct& j, const Form& b) {
    if (!b.isZero()) {
        requireSameFrame(j.frame, b.frame());
        if (!b.isHomogeneous(2)) throw BadArgument("a shear must be a 2-form");
    }
    const int n = j.n();
    GCStruct g;
    g.frame = j.frame;
    for (const Section& u : j.span) g.span.push_back(bfieldShear(b, u));
    g.spinor = spinorShear(b, j.spinor);
    SMat s = smatIdentity(2 * n), sInv = smatIdentity(2 * n);
    for (int a = 0; a < n; ++a) {
        Vec x(n, Scalar(0));
        x[a] = Scalar(1);
        Section sheared = bfieldShear(b, Section::vector(j.frame, std::move(x)));
        for (int c = 0; c < n; ++c) {
            s[n + c][a] = sheared.xi[c];
            sInv[n + c][a] = Scalar(0) - sheared.xi[c];
        }
    }
    g.endo = smatMul(s, smatMul(j.endo, sInv));
    Form db = b.isZero() ? Form() : exteriorD(b);
    if (db.isZero()) {
        g.twist = j.twist;
    } else {
        Form base = j.twist.isZero() ? Form(j.frame) : j.twist;
        g.twist = base - db;
    }
    return g;
}

Integrability integrability(const GCStruct& j, IntegrabilityMode mode) {
    Integrability out;
    const int n = j.n();
    if (mode == IntegrabilityMode::courant) {
        SMat u = spanColumns(j.span);
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                Section br = courantBracket(j.span[a], j.span[b], j.twist);
                if (!trySolve(u, sectionColumn(br))) {
                    out.ok = false;
                    out.detail = "the bracket of span sections " + std::to_string(a) +
                                 " and " + std::to_string(b) + " leaves the span";
                    out.residual = br;
                    return out;
                }
            }
        return out;
    }
    const int dim = 1 << n;
    Form lhs = exteriorD(j.spinor);
    if (!j.twist.isZero()) lhs = lhs - wedge(j.twist, j.spinor);
    SMat a = smatZero(dim, 2 * n);
    for (int k = 0; k < n; ++k) {
        Form acted = interiorBasis(k, j.spinor);
        for (const auto& [m, c] : acted.comps()) a[m][k] = c;
        acted = wedge(Form::basisOne(j.frame, k), j.spinor);
        for (const auto& [m, c] : acted.comps()) a[m][n + k] = c;
    }
    if (auto sol = trySolve(a, formColumn(lhs, n))) {
        out.w = columnSection(j.frame, *sol);
        return out;
    }
    out.ok = false;
    out.detail = "no extended section reproduces the twisted derivative of the spinor";
    out.remainder = lhs;
    return out;
}

Section dbar(const GCStruct& j, const Scalar& f) {
    const int n = j.n();
    SMat m = sideBySide(spanColumns(j.span), conjugateColumns(j.span));
    SVec rhs(2 * n, Scalar(0));
    std::vector<Scalar> df = j.frame->diff(f);
    for (int a = 0; a < n; ++a) rhs[n + a] = df[a];
    SVec c = smatSolve(m, rhs);
    Vec x(n, Scalar(0));
    std::vector<Scalar> xi(n, Scalar(0));
    for (int i = 0; i < n; ++i) {
        Section conj = j.span[i].conjugate();
        for (int a = 0; a < n; ++a) {
            x[a] += c[n + i] * conj.x[a];
            xi[a] += c[n + i] * conj.xi[a];
        }
    }
    return Section(j.frame, std::move(x), std::move(xi));
}

SVec dbarFunctional(const GCStruct& j, const Scalar& f) {
    Section df = Section::covector(j.frame, j.frame->diff(f));
    SVec alpha(j.n());
    for (int i = 0; i < j.n(); ++i) alpha[i] = Scalar(2) * pairing(df, j.span[i]);
    return alpha;
}

SMat dbar1(const GCStruct& j, const SVec& alpha) {
    const int n = j.n();
    if (static_cast<int>(alpha.size()) != n)
        throw BadArgument("the functional needs one component per span section");
    SMat u = spanColumns(j.span);
    SMat beta = smatZero(n, n);
    const Scalar half = Scalar(1) / Scalar(2);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            Section br = courantBracket(j.span[a], j.span[b], j.twist);
            auto c = trySolve(u, sectionColumn(br));
            if (!c)
                throw BadArgument("a span bracket leaves the span: the structure "
                                  "is not integrable");
            Scalar applied(0);
            for (int k = 0; k < n; ++k) applied += alpha[k] * (*c)[k];
            beta[a][b] = half * (j.frame->applyVec(j.span[a].x, alpha[b]) -
                                 j.frame->applyVec(j.span[b].x, alpha[a]) - applied);
            beta[b][a] = Scalar(0) - beta[a][b];
        }
    return beta;
}

SymmetryCheck symmetrySection(const GCStruct& j, const Scalar& f) {
    const int n = j.n();
    SVec col(2 * n, Scalar(0));
    std::vector<Scalar> df = j.frame->diff(f);
    for (int a = 0; a < n; ++a) col[n + a] = df[a];
    SymmetryCheck out;
    out.u = columnSection(j.frame, smatVec(j.endo, col));
    Form negTwist = j.twist.isZero() ? Form() : (-j.twist);
    Form moved = extendedLie(out.u, j.spinor, negTwist);
    if (auto lambda = formMultiple(moved, j.spinor)) {
        out.lambda = *lambda;
        out.proportional = true;
    } else {
        out.lambda = Scalar(0);
        out.proportional = false;
    }
    return out;
}

bool gkCheck(const GCStruct& j1, const GCStruct& j2,
             const std::vector<SamplePoint>& points) {
    requireSameFrame(j1.frame, j2.frame);
    if (points.empty())
        throw BadArgument("definiteness needs at least one sample point");
    const int n = j1.n();
    SMat g = smatMul(j1.endo, j2.endo);
    if (g != smatMul(j2.endo, j1.endo)) return false;
    SMat q = pairingGram(n);
    SMat qg = smatMul(q, g);
    if (smatTranspose(qg) != qg) return false;
    SMat r = realBasisColumns(j1.frame);
    SMat s = smatMul(smatTranspose(r), smatMul(qg, r));
    for (const SamplePoint& p : points) {
        bool realOk = true;
        SMat e = smatZero(2 * n, 2 * n);
        for (int a = 0; a < 2 * n; ++a)
            for (int b = 0; b < 2 * n; ++b) e[a][b] = evaluateReal(s[a][b], p, &realOk);
        if (!realOk) return false;
        for (int k = 1; k <= 2 * n; ++k) {
            SMat lead(k, SVec(k));
            for (int a = 0; a < k; ++a)
                for (int b = 0; b < k; ++b) lead[a][b] = e[a][b];
            GRat det = smatDet(lead).constantValue();
            if (det.im != 0 || det.re <= 0) return false;
        }
    }
    return true;
}

GKPair gkMake(const GCStruct& j1, const GCStruct& j2,
              const std::vector<SamplePoint>& points, bool validate) {
    requireSameFrame(j1.frame, j2.frame);
    if (!(j1.twist == j2.twist))
        throw BadArgument("the two structures carry different twists");
    if (validate && !gkCheck(j1, j2, points))
        throw BadArgument("the pair fails the commuting/symmetric/positive checks");
    GKPair p;
    p.j1 = j1;
    p.j2 = j2;
    p.product = smatMul(j1.endo, j2.endo);
    const int n = j1.n();
    p.v = nullspaceSections(j1.frame, shifted(p.product, Scalar(1)));
    p.vPerp = nullspaceSections(j1.frame, shifted(p.product, Scalar(-1)));
    if (static_cast<int>(p.v.size()) != n || static_cast<int>(p.vPerp.size()) != n)
        throw DegenerateEigenbundle("the product eigenbundles have ranks " +
                                    std::to_string(p.v.size()) + " and " +
                                    std::to_string(p.vPerp.size()) + ", expected " +
                                    std::to_string(n) + " each");
    return p;
}

namespace {

// Graph matrix of an eigenbundle basis: xi-components composed with the
// inverse of the x-components.
SMat graphMatrix(const std::vector<Section>& basis, const char* side) {
    const int n = basis.empty() ? 0 : basis[0].n();
    SMat xm = smatZero(n, n), xim = smatZero(n, n);
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < n; ++a) {
            xm[a][i] = basis[i].x[a];
            xim[a][i] = basis[i].xi[a];
        }
    try {
        return smatMul(xim, smatInverse(xm));
    } catch (const BadArgument&) {
        throw DegenerateEigenbundle(std::string("the ") + side +
                                    " eigenbundle does not project onto the "
                                    "tangent directions");
    }
}

} // namespace

GKData gkExtract(const GKPair& p) {
    const int n = p.j1.n();
    const FramePtr& fr = p.j1.frame;
    SMat mPlus = graphMatrix(p.v, "+1");
    SMat mMinus = graphMatrix(p.vPerp, "-1");
    const Scalar half = Scalar(1) / Scalar(2);
    GKData d;
    d.metric = smatScale(half, smatSub(mPlus, mMinus));
    // The graphs compose covectors as columns, which transposes (negates) the
    // bilinear coefficients; stored as b(e_a, e_b) so that shearing by a
    // 2-form adds that form's coefficient matrix.
    d.bfield = smatScale(Scalar(0) - half, smatAdd(mPlus, mMinus));
    SMat a = smatZero(n, n), b = smatZero(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            a[r][c] = p.j1.endo[r][c];
            b[r][c] = p.j1.endo[r][n + c];
        }
    d.iPlus = smatAdd(a, smatMul(b, mPlus));
    d.iMinus = smatAdd(a, smatMul(b, mMinus));

    const Scalar iu = Scalar::i();
    SMat j1p = shifted(p.j1.endo, iu), j1m = shifted(p.j1.endo, Scalar(0) - iu);
    SMat j2p = shifted(p.j2.endo, iu), j2m = shifted(p.j2.endo, Scalar(0) - iu);
    d.vpp = nullspaceSections(fr, stacked(j1p, j2p));
    d.vpm = nullspaceSections(fr, stacked(j1p, j2m));
    d.vmp = nullspaceSections(fr, stacked(j1m, j2p));
    d.vmm = nullspaceSections(fr, stacked(j1m, j2m));
    if (d.vpp.size() != d.vmm.size() || d.vpm.size() != d.vmp.size() ||
        static_cast<int>(d.vpp.size() + d.vpm.size()) != n)
        throw DegenerateEigenbundle("the joint eigenbundles have ranks " +
                                    std::to_string(d.vpp.size()) + "/" +
                                    std::to_string(d.vpm.size()) + "/" +
                                    std::to_string(d.vmp.size()) + "/" +
                                    std::to_string(d.vmm.size()));
    d.iPlusClosed = bracketClosed(d.vpm, p.j1.twist);
    d.iMinusClosed = bracketClosed(d.vmm, p.j1.twist);

    Form twist = p.j1.twist.isZero() ? Form(fr) : p.j1.twist;
    Form omegaPlus = matrixTwoForm(fr, smatMul(smatTranspose(d.iPlus), d.metric));
    Form omegaMinus = matrixTwoForm(fr, smatMul(smatTranspose(d.iMinus), d.metric));
    Form dcPlus = -pullback(exteriorD(omegaPlus), d.iPlus);
    Form dcMinus = -pullback(exteriorD(omegaMinus), d.iMinus);
    d.torsionPlus = twist - dcPlus;
    d.torsionMinus = twist + dcMinus;
    return d;
}

std::pair<GCStruct, GCStruct> gkFromBihermitian(const FramePtr& frame,
                                                const SMat& g,
                                                const SMat& iPlus,
                                                const SMat& iMinus,
                                                const Form& h) {
    const int n = frame->n();
    if (static_cast<int>(g.size()) != n || static_cast<int>(iPlus.size()) != n ||
        static_cast<int>(iMinus.size()) != n)
        throw BadArgument("metric and complex structures must match the frame dimension");
    if (smatTranspose(g) != g) throw BadArgument("the metric is not symmetric");
    const SMat minusId = smatScale(Scalar(-1), smatIdentity(n));
    for (const SMat* i : {&iPlus, &iMinus}) {
        if (smatMul(*i, *i) != minusId)
            throw BadArgument("a complex structure does not square to -1");
        if (smatMul(smatTranspose(*i), smatMul(g, *i)) != g)
            throw BadArgument("the metric is not Hermitian for a complex structure");
    }
    validateTwist(frame, h);

    const Scalar iu = Scalar::i();
    auto eigen = [&](const SMat& m, const Scalar& lambda) {
        return smatNullspace(shifted(m, lambda));
    };
    std::vector<SVec> plusP = eigen(iPlus, iu), minusP = eigen(iPlus, Scalar(0) - iu);
    std::vector<SVec> plusM = eigen(iMinus, iu), minusM = eigen(iMinus, Scalar(0) - iu);
    if (2 * plusP.size() != static_cast<std::size_t>(n) || plusP.size() != minusP.size() ||
        2 * plusM.size() != static_cast<std::size_t>(n) || plusM.size() != minusM.size())
        throw DegenerateEigenbundle("a complex structure has unbalanced eigenspaces");

    // Columns (x; +/- g x); the sign picks the graph over +g or -g.
    auto lift = [&](const std::vector<SVec>& xs, bool plus) {
        SMat cols = smatZero(2 * n, static_cast<int>(xs.size()));
        for (std::size_t i = 0; i < xs.size(); ++i) {
            SVec gx = smatVec(g, xs[i]);
            for (int a = 0; a < n; ++a) {
                cols[a][i] = xs[i][a];
                cols[n + a][i] = plus ? gx[a] : Scalar(0) - gx[a];
            }
        }
        return cols;
    };
    SMat pCols = sideBySide(sideBySide(lift(plusM, false), lift(plusP, true)),
                            sideBySide(lift(minusM, false), lift(minusP, true)));
    SMat pInv;
    try {
        pInv = smatInverse(pCols);
    } catch (const BadArgument&) {
        throw DegenerateEigenbundle("the four joint eigenbundles overlap");
    }
    const int npp = static_cast<int>(plusM.size());
    const int npm = static_cast<int>(plusP.size());
    const int nmm = static_cast<int>(minusM.size());
    SVec d1(2 * n), d2(2 * n);
    for (int k = 0; k < 2 * n; ++k) {
        const bool j1plus = k < npp + npm;
        const bool isPP = k < npp;
        const bool isMM = k >= npp + npm && k < npp + npm + nmm;
        d1[k] = j1plus ? iu : Scalar(0) - iu;
        d2[k] = (isPP || !(j1plus || isMM)) ? iu : Scalar(0) - iu;
    }
    SMat j1 = smatMul(pCols, smatMul(diagonal(d1), pInv));
    SMat j2 = smatMul(pCols, smatMul(diagonal(d2), pInv));
    GCStruct g1 = gcsFromEndo(frame, std::move(j1), h);
    GCStruct g2 = gcsFromEndo(frame, std::move(j2), h);
    for (const GCStruct* s : {&g1, &g2}) {
        Integrability verdict = integrability(*s, IntegrabilityMode::courant);
        if (!verdict.ok)
            throw IntegrabilityFailure("the reconstructed pair is not integrable: " +
                                       verdict.detail + "; residual " +
                                       sectionStr(verdict.residual));
    }
    return {std::move(g1), std::move(g2)};
}

} // namespace gengeo
