#include "gengeo/genmetric.hpp"

#include <utility>

namespace gengeo {

namespace {

Section zeroSection(const FramePtr& fr) {
    int n = fr->n();
    return Section(fr, Vec(n, Scalar(0)), std::vector<Scalar>(n, Scalar(0)));
}

Section liftOf(const FramePtr& fr, const SMat& g, const Form& f, const Vec& x, int sign) {
    int n = fr->n();
    if (static_cast<int>(x.size()) != n)
        throw BadArgument("vector length does not match the frame dimension");
    SVec gx = smatVec(g, x);
    std::vector<Scalar> xi(n, Scalar(0));
    for (int a = 0; a < n; ++a) xi[a] = (sign > 0) ? gx[a] : -gx[a];
    if (!f.isZero()) {
        Form ixf = interior(x, f);
        if (!ixf.isZero()) {
            std::vector<Scalar> fc = ixf.oneComps();
            for (int a = 0; a < n; ++a) xi[a] += fc[a];
        }
    }
    return Section(fr, x, std::move(xi));
}

} // namespace

GenMetric::GenMetric(FramePtr frame, SMat g, Form curving)
    : frame_(std::move(frame)), g_(std::move(g)), f_(std::move(curving)) {
    if (!frame_) throw BadArgument("generalized metric needs a frame");
    int n = frame_->n();
    if (static_cast<int>(g_.size()) != n)
        throw BadArgument("metric matrix must match the frame dimension");
    for (const auto& row : g_)
        if (static_cast<int>(row.size()) != n)
            throw BadArgument("metric matrix must be square");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (g_[i][j] != g_[j][i])
                throw BadArgument("metric matrix must be symmetric");
    try {
        gInv_ = smatInverse(g_);
    } catch (const BadArgument&) {
        throw BadArgument("metric matrix must be invertible");
    }
    if (f_.isZero()) {
        f_ = Form(frame_);
        h_ = Form(frame_);
    } else {
        requireSameFrame(f_.frame(), frame_);
        if (!f_.isHomogeneous(2))
            throw BadArgument("curving must be a homogeneous 2-form");
        h_ = exteriorD(f_);
    }
    for (int a = 0; a < n; ++a) {
        Vec e(n, Scalar(0));
        e[a] = Scalar(1);
        vplus_.push_back(liftOf(frame_, g_, f_, e, +1));
        vminus_.push_back(liftOf(frame_, g_, f_, e, -1));
    }
}

Section lift(const GenMetric& m, const Vec& x, int sign) {
    if (sign != 1 && sign != -1) throw BadArgument("lift sign must be +1 or -1");
    return liftOf(m.frame(), m.g(), m.curving(), x, sign);
}

namespace {

// Projection onto the span of basis sections with invertible Gram matrix:
// u |-> sum_k (gram^{-1})^{kl} (u, basis_l) basis_k.
Section projectOnto(const GenMetric& m, const Section& u,
                    const std::vector<Section>& basis, const SMat& gramInv) {
    requireSameFrame(u.frame, m.frame());
    int n = m.n();
    SVec p(n);
    for (int l = 0; l < n; ++l) p[l] = pairing(u, basis[l]);
    SVec c = smatVec(gramInv, p);
    Section r = zeroSection(m.frame());
    for (int k = 0; k < n; ++k) r = r + c[k] * basis[k];
    return r;
}

} // namespace

Section projectV(const GenMetric& m, const Section& u) {
    return projectOnto(m, u, m.basisV(), m.gInv());
}

Section projectVPerp(const GenMetric& m, const Section& u) {
    // Gram matrix of the mirror basis is -g.
    return projectOnto(m, u, m.basisVPerp(), smatScale(Scalar(-1), m.gInv()));
}

Section covariantDerivative(const GenMetric& m, const Vec& x, const Section& v,
                            const Form& twist) {
    if (projectV(m, v) != v)
        throw NotInSubbundle("covariant derivative needs a section of the metric subbundle");
    return projectV(m, courantBracket(lift(m, x, -1), v, twist));
}

Section covariantDerivativePerp(const GenMetric& m, const Vec& x, const Section& w,
                                const Form& twist) {
    if (projectVPerp(m, w) != w)
        throw NotInSubbundle("mirror covariant derivative needs a section of the orthocomplement");
    return projectVPerp(m, courantBracket(lift(m, x, +1), w, twist));
}

std::vector<SMat> christoffel(const GenMetric& m) {
    if (!m.frame()->isCoordinate())
        throw BadArgument("Christoffel recovery needs a coordinate frame");
    if (!m.curving().isZero())
        throw BadArgument("Christoffel recovery needs zero curving");
    int n = m.n();
    std::vector<SMat> gamma(n, smatZero(n, n));
    for (int i = 0; i < n; ++i) {
        Vec ei(n, Scalar(0));
        ei[i] = Scalar(1);
        for (int j = 0; j < n; ++j) {
            // Sections of V are graphs over their vector part, so the
            // components of nabla_{E_i} E_j can be read off the vector part.
            Section w = covariantDerivative(m, ei, m.basisV()[j]);
            for (int k = 0; k < n; ++k) gamma[k][i][j] = w.x[k];
        }
    }
    return gamma;
}

std::vector<SMat> torsion(const GenMetric& m, bool fromOrthocomplement) {
    if (!m.frame()->isCoordinate())
        throw BadArgument("torsion needs a coordinate frame");
    int n = m.n();
    const std::vector<Section>& basis =
        fromOrthocomplement ? m.basisVPerp() : m.basisV();
    // nabla_{E_i} of every basis section; coordinate fields commute, so the
    // bracket term of the torsion drops.
    std::vector<std::vector<Section>> der(n);
    for (int i = 0; i < n; ++i) {
        Vec ei(n, Scalar(0));
        ei[i] = Scalar(1);
        for (int j = 0; j < n; ++j)
            der[i].push_back(fromOrthocomplement
                                 ? covariantDerivativePerp(m, ei, basis[j])
                                 : covariantDerivative(m, ei, basis[j]));
    }
    std::vector<SMat> t(n, smatZero(n, n));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Scalar v = der[i][j].x[k] - der[j][i].x[k];
                t[k][i][j] = v;
                t[k][j][i] = -v;
            }
    return t;
}

namespace {

Rat leadingMinor(const std::vector<std::vector<Rat>>& a, int k) {
    // Determinant of the leading k x k block by exact Gaussian elimination.
    std::vector<std::vector<Rat>> b(k, std::vector<Rat>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) b[i][j] = a[i][j];
    Rat det(1);
    for (int col = 0; col < k; ++col) {
        int pivot = -1;
        for (int r = col; r < k; ++r)
            if (b[r][col] != 0) { pivot = r; break; }
        if (pivot < 0) return Rat(0);
        if (pivot != col) {
            std::swap(b[pivot], b[col]);
            det = -det;
        }
        det *= b[col][col];
        for (int r = col + 1; r < k; ++r) {
            if (b[r][col] == 0) continue;
            Rat f = b[r][col] / b[col][col];
            for (int c = col; c < k; ++c) b[r][c] -= f * b[col][c];
        }
    }
    return det;
}

} // namespace

bool positiveDefiniteAt(const GenMetric& m, const std::map<AtomId, GRat>& point) {
    int n = m.n();
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            GRat v = m.g()[i][j].evaluate(point);
            if (!v.isReal())
                throw BadArgument("metric must evaluate to real values at the sample point");
            a[i][j] = v.re;
        }
    for (int k = 1; k <= n; ++k)
        if (leadingMinor(a, k) <= 0) return false;
    return true;
}

BianchiIX bianchiIX(AtomId a, AtomId b, AtomId c) {
    const AtomInfo& ia = symbols::info(a);
    const AtomInfo& ib = symbols::info(b);
    const AtomInfo& ic = symbols::info(c);
    if (ia.kind != AtomKind::Function || ib.kind != AtomKind::Function ||
        ic.kind != AtomKind::Function)
        throw BadArgument("the three coefficients must be function symbols");
    if (ib.arg != ia.arg || ic.arg != ia.arg)
        throw BadArgument("the three coefficients must depend on the same variable");

    Chart chart{"bianchi9", {ia.arg}, false};
    int n = 4;
    Scalar zero(0), one(1);
    // Action on the chart variable: only the time direction differentiates.
    std::vector<std::vector<Scalar>> action(n, std::vector<Scalar>(1, zero));
    action[0][0] = one;
    // [X1, X2] = X3 cyclically; the time direction is central.
    std::vector<std::vector<std::vector<Scalar>>> cs(
        n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n, zero)));
    cs[1][2][3] = one;
    cs[2][1][3] = -one;
    cs[2][3][1] = one;
    cs[3][2][1] = -one;
    cs[3][1][2] = one;
    cs[1][3][2] = -one;
    FramePtr frame = Frame::fromStructure("su2xR", chart, action, cs);

    Scalar A = Scalar::atom(a), B = Scalar::atom(b), C = Scalar::atom(c);
    SVec scales = {A * B * C, A, B, C};
    SMat g = smatZero(n, n);
    for (int d = 0; d < n; ++d) g[d][d] = scales[d] * scales[d];
    GenMetric metric(frame, g);

    std::array<std::array<std::array<Scalar, 4>, 4>, 4> table;
    for (int d = 0; d < n; ++d) {
        Vec dir(n, zero);
        dir[d] = one;
        for (int alpha = 0; alpha < n; ++alpha) {
            bool unitSection = (d != 0) || (alpha == 0);
            Vec xv(n, zero);
            xv[alpha] = unitSection ? one / scales[alpha] : one;
            Section w = covariantDerivative(metric, dir, lift(metric, xv, +1));
            for (int beta = 0; beta < n; ++beta)
                table[d][alpha][beta] =
                    unitSection ? w.x[beta] * scales[beta] : w.x[beta];
        }
    }

    return BianchiIX{frame, metric, scales, table,
                     {"d/dt", "X1", "X2", "X3"}};
}

BianchiIX bianchiIX() {
    AtomId t = symbols::variable("t");
    AtomId a = symbols::function("a", t);
    AtomId b = symbols::function("b", t);
    AtomId c = symbols::function("c", t);
    return bianchiIX(a, b, c);
}

} // namespace gengeo
