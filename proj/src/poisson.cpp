#include "gengeo/poisson.hpp"

#include <array>
#include <bit>
#include <optional>
#include <sstream>
#include <utility>

#include "gengeo/errors.hpp"

namespace gengeo {

namespace {

// Holomorphic calculus lives on the coordinate frame of a complex-paired
// chart; returns the number of holomorphic coordinates.
int requireComplexCoordinate(const FramePtr& frame) {
    if (!frame) throw BadArgument("missing frame");
    if (!frame->isCoordinate() || !frame->chart().complexPaired)
        throw BadArgument("expected the coordinate frame of a complex-paired chart, got '" +
                          frame->name() + "'");
    return frame->chart().m();
}

void requireHolomorphicEntry(const FramePtr& frame, const Scalar& s, const std::string& what) {
    const int m = frame->chart().m();
    for (int j = 0; j < m; ++j)
        if (!frame->apply(m + j, s).isZero())
            throw NotHolomorphic(what + " depends on " +
                                 symbols::info(frame->chart().vars[m + j]).name);
}

// Sign of the permutation merging the ascending sequences encoded by two
// disjoint bitmasks into one ascending sequence.
int shuffleSign(Mask a, Mask b) {
    int inversions = 0;
    for (int i = 0; i < 32; ++i)
        if (b & (Mask(1) << i)) inversions += std::popcount(a >> (i + 1));
    return (inversions & 1) ? -1 : 1;
}

bool allZero(const SVec& v) {
    for (const Scalar& s : v)
        if (!s.isZero()) return false;
    return true;
}

// First violating triple of the Jacobi identity, if any.
std::optional<std::array<int, 3>> jacobiViolation(const Bivector& sigma) {
    const FramePtr& fr = sigma.frame();
    const int m = sigma.m();
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int k = j + 1; k < m; ++k) {
                Scalar sum(0);
                for (int l = 0; l < m; ++l) {
                    sum = sum + sigma.coeff(l, j) * fr->apply(l, sigma.coeff(i, k));
                    sum = sum + sigma.coeff(l, i) * fr->apply(l, sigma.coeff(k, j));
                    sum = sum + sigma.coeff(l, k) * fr->apply(l, sigma.coeff(j, i));
                }
                if (!sum.isZero()) return std::array<int, 3>{i, j, k};
            }
    return std::nullopt;
}

} // namespace

Bivector::Bivector(FramePtr frame, SMat sigma)
    : frame_(std::move(frame)), sigma_(std::move(sigma)) {
    const int m = requireComplexCoordinate(frame_);
    if (static_cast<int>(sigma_.size()) != m)
        throw BadArgument("bivector matrix must be m x m");
    for (const auto& row : sigma_)
        if (static_cast<int>(row.size()) != m)
            throw BadArgument("bivector matrix must be m x m");
    for (int j = 0; j < m; ++j)
        for (int k = 0; k <= j; ++k)
            if (!(sigma_[j][k] + sigma_[k][j]).isZero())
                throw BadArgument("bivector matrix must be antisymmetric");
    for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
            requireHolomorphicEntry(frame_, sigma_[j][k], "bivector coefficient");
}

Bivector zeroBivector(FramePtr frame) {
    const int m = requireComplexCoordinate(frame);
    return Bivector(std::move(frame), smatZero(m, m));
}

SVec sigmaSharp(const Bivector& sigma, const SVec& xi) {
    const int m = sigma.m();
    if (static_cast<int>(xi.size()) != m)
        throw BadArgument("covector length must match the holomorphic dimension");
    SVec out(m, Scalar(0));
    for (int k = 0; k < m; ++k)
        for (int j = 0; j < m; ++j)
            out[k] = out[k] + sigma.coeff(j, k) * xi[j];
    return out;
}

Scalar applyHol(const FramePtr& frame, const SVec& x, const Scalar& f) {
    const int m = requireComplexCoordinate(frame);
    if (static_cast<int>(x.size()) != m)
        throw BadArgument("vector length must match the holomorphic dimension");
    Scalar out(0);
    for (int k = 0; k < m; ++k)
        if (!x[k].isZero()) out = out + x[k] * frame->apply(k, f);
    return out;
}

SVec lieHol(const FramePtr& frame, const SVec& x, const SVec& y) {
    const int m = requireComplexCoordinate(frame);
    if (static_cast<int>(x.size()) != m || static_cast<int>(y.size()) != m)
        throw BadArgument("vector length must match the holomorphic dimension");
    SVec out(m, Scalar(0));
    for (int k = 0; k < m; ++k) {
        out[k] = applyHol(frame, x, y[k]) - applyHol(frame, y, x[k]);
    }
    return out;
}

SVec hamiltonianField(const Bivector& sigma, const Scalar& f) {
    const int m = sigma.m();
    SVec xi(m, Scalar(0));
    for (int j = 0; j < m; ++j) xi[j] = sigma.frame()->apply(j, f);
    return sigmaSharp(sigma, xi);
}

Scalar poissonBracket(const Bivector& sigma, const Scalar& f, const Scalar& g) {
    return applyHol(sigma.frame(), hamiltonianField(sigma, f), g);
}

bool poissonCheck(const Bivector& sigma) { return !jacobiViolation(sigma).has_value(); }

void requirePoisson(const Bivector& sigma) {
    if (auto bad = jacobiViolation(sigma)) {
        const auto& vars = sigma.frame()->chart().vars;
        throw NotPoisson("Jacobi cyclic sum fails for (" + symbols::info(vars[(*bad)[0]]).name +
                         ", " + symbols::info(vars[(*bad)[1]]).name + ", " +
                         symbols::info(vars[(*bad)[2]]).name + ")");
    }
}

TValuedForm::TValuedForm(FramePtr fr, int degree) : frame(std::move(fr)), q(degree) {
    requireComplexCoordinate(frame);
    if (q < 0) throw BadArgument("form degree must be non-negative");
}

int TValuedForm::m() const { return frame ? frame->chart().m() : 0; }

void TValuedForm::addTerm(Mask k, const SVec& v) {
    if (maskDegree(k) != q) throw BadArgument("multi-index degree must equal the form degree");
    const int mm = m();
    if (k >= (Mask(1) << mm)) throw BadArgument("multi-index outside the conjugate coordinates");
    if (static_cast<int>(v.size()) != mm)
        throw BadArgument("component length must match the holomorphic dimension");
    auto it = comp.find(k);
    if (it == comp.end()) {
        if (!allZero(v)) comp.emplace(k, v);
        return;
    }
    for (int i = 0; i < mm; ++i) it->second[i] = it->second[i] + v[i];
    if (allZero(it->second)) comp.erase(it);
}

SVec TValuedForm::component(Mask k) const {
    auto it = comp.find(k);
    if (it != comp.end()) return it->second;
    return SVec(m(), Scalar(0));
}

TValuedForm operator+(const TValuedForm& a, const TValuedForm& b) {
    requireSameFrame(a.frame, b.frame);
    if (a.q != b.q) throw BadArgument("cannot add forms of different degree");
    TValuedForm out = a;
    for (const auto& [k, v] : b.comp) out.addTerm(k, v);
    return out;
}

TValuedForm operator-(const TValuedForm& a) {
    TValuedForm out(a.frame, a.q);
    for (const auto& [k, v] : a.comp) {
        SVec w = v;
        for (Scalar& s : w) s = Scalar(0) - s;
        out.comp.emplace(k, std::move(w));
    }
    return out;
}

TValuedForm operator-(const TValuedForm& a, const TValuedForm& b) { return a + (-b); }

TValuedForm operator*(const Scalar& s, const TValuedForm& a) {
    TValuedForm out(a.frame, a.q);
    if (s.isZero()) return out;
    for (const auto& [k, v] : a.comp) {
        SVec w = v;
        for (Scalar& c : w) c = s * c;
        out.addTerm(k, w);
    }
    return out;
}

bool operator==(const TValuedForm& a, const TValuedForm& b) {
    return a.frame == b.frame && a.q == b.q && a.comp == b.comp;
}

std::string TValuedForm::str() const {
    if (comp.empty()) return "0";
    const auto& vars = frame->chart().vars;
    const int mm = m();
    std::ostringstream os;
    bool firstTerm = true;
    for (const auto& [k, v] : comp) {
        if (!firstTerm) os << " + ";
        firstTerm = false;
        if (k == 0) {
            os << "1";
        } else {
            bool first = true;
            for (int j = 0; j < mm; ++j)
                if (k & (Mask(1) << j)) {
                    if (!first) os << "^";
                    first = false;
                    os << "d" << symbols::info(vars[mm + j]).name;
                }
        }
        os << " (x) [";
        bool first = true;
        for (int i = 0; i < mm; ++i) {
            if (v[i].isZero()) continue;
            if (!first) os << " + ";
            first = false;
            os << "(" << v[i].str() << ") @" << symbols::info(vars[i]).name;
        }
        if (first) os << "0";
        os << "]";
    }
    return os.str();
}

TValuedForm deformationBracket(const TValuedForm& phi, const TValuedForm& psi) {
    requireSameFrame(phi.frame, psi.frame);
    TValuedForm out(phi.frame, phi.q + psi.q);
    for (const auto& [ka, va] : phi.comp)
        for (const auto& [kb, vb] : psi.comp) {
            if (ka & kb) continue;
            SVec w = lieHol(phi.frame, va, vb);
            if (shuffleSign(ka, kb) < 0)
                for (Scalar& s : w) s = Scalar(0) - s;
            out.addTerm(ka | kb, w);
        }
    return out;
}

TValuedForm obstruction(const TValuedForm& phi) {
    if (phi.q != 1) throw BadArgument("obstruction expects a degree-1 form");
    TValuedForm out(phi.frame, 2);
    for (const auto& [ka, va] : phi.comp)
        for (const auto& [kb, vb] : phi.comp) {
            if (ka >= kb) continue;
            out.addTerm(ka | kb, lieHol(phi.frame, va, vb));
        }
    return out;
}

TValuedForm deformationClass(const Bivector& sigma, const Form& omega, bool minusSide) {
    if (omega.frame()) requireSameFrame(sigma.frame(), omega.frame());
    if (!omega.isZero() && omega.maxDegree() > 2)
        throw BadArgument("deformation class expects a form of degree at most 2");
    const int m = sigma.m();
    SMat w = smatZero(m, m);
    for (int j = 0; j < m; ++j)
        for (int l = 0; l < m; ++l)
            w[j][l] = omega.coeff((Mask(1) << l) | (Mask(1) << (m + j)));
    Scalar c = Scalar(-2) * Scalar::i();
    if (minusSide) c = Scalar(0) - c;
    SMat alpha = smatScale(c, smatMul(w, sigma.sigma()));
    TValuedForm out(sigma.frame(), 1);
    for (int j = 0; j < m; ++j) out.addTerm(Mask(1) << j, alpha[j]);
    return out;
}

DeformationStep unobstructedStep(const Bivector& sigma, const Scalar& f) {
    requirePoisson(sigma);
    const FramePtr& fr = sigma.frame();
    const int m = sigma.m();
    DeformationStep step;
    std::vector<Scalar> fbar(m, Scalar(0));
    for (int k = 0; k < m; ++k) fbar[k] = fr->apply(m + k, f);
    step.phi1 = TValuedForm(fr, 1);
    for (int k = 0; k < m; ++k)
        step.phi1.addTerm(Mask(1) << k, hamiltonianField(sigma, fbar[k]));
    step.selfBracket = obstruction(step.phi1);
    step.hamiltonianLift = TValuedForm(fr, 2);
    for (int k = 0; k < m; ++k)
        for (int l = k + 1; l < m; ++l)
            step.hamiltonianLift.addTerm(
                (Mask(1) << k) | (Mask(1) << l),
                hamiltonianField(sigma, poissonBracket(sigma, fbar[k], fbar[l])));
    step.unobstructed = (step.selfBracket == step.hamiltonianLift);
    return step;
}

PoissonModule poissonModule(Bivector sigma, std::vector<SMat> a) {
    const int m = sigma.m();
    if (static_cast<int>(a.size()) != m)
        throw BadArgument("need one action matrix per holomorphic coordinate");
    const int k = a.empty() ? 0 : static_cast<int>(a[0].size());
    if (k <= 0) throw BadArgument("module rank must be positive");
    for (const SMat& mat : a) {
        if (static_cast<int>(mat.size()) != k)
            throw BadArgument("action matrices must share one square shape");
        for (const auto& row : mat) {
            if (static_cast<int>(row.size()) != k)
                throw BadArgument("action matrices must share one square shape");
            for (const Scalar& s : row)
                requireHolomorphicEntry(sigma.frame(), s, "action matrix entry");
        }
    }
    return PoissonModule{std::move(sigma), k, std::move(a)};
}

SVec moduleAction(const PoissonModule& mod, const Scalar& f, const SVec& s) {
    const FramePtr& fr = mod.sigma.frame();
    if (static_cast<int>(s.size()) != mod.k)
        throw BadArgument("section length must equal the module rank");
    const SVec xf = hamiltonianField(mod.sigma, f);
    SVec out(mod.k, Scalar(0));
    for (int a = 0; a < mod.k; ++a) out[a] = applyHol(fr, xf, s[a]);
    const int m = mod.sigma.m();
    for (int j = 0; j < m; ++j) {
        Scalar fj = fr->apply(j, f);
        if (fj.isZero()) continue;
        SVec as = smatVec(mod.a[j], s);
        for (int a = 0; a < mod.k; ++a) out[a] = out[a] + fj * as[a];
    }
    return out;
}

std::vector<SVec> dbarModule(const PoissonModule& mod, const SVec& s) {
    const FramePtr& fr = mod.sigma.frame();
    if (static_cast<int>(s.size()) != mod.k)
        throw BadArgument("section length must equal the module rank");
    const int m = mod.sigma.m();
    std::vector<SVec> out(m, SVec(mod.k, Scalar(0)));
    for (int j = 0; j < m; ++j) {
        SVec as = smatVec(mod.a[j], s);
        for (int a = 0; a < mod.k; ++a) {
            Scalar v = as[a];
            for (int l = 0; l < m; ++l)
                v = v + mod.sigma.coeff(j, l) * fr->apply(l, s[a]);
            out[j][a] = v;
        }
    }
    return out;
}

bool moduleCheck(const PoissonModule& mod, const Scalar& f, const Scalar& g, const SVec& s) {
    const SVec gf = moduleAction(mod, g, moduleAction(mod, f, s));
    const SVec fg = moduleAction(mod, f, moduleAction(mod, g, s));
    const SVec rhs = moduleAction(mod, poissonBracket(mod.sigma, g, f), s);
    for (int a = 0; a < mod.k; ++a)
        if (!(gf[a] - fg[a] - rhs[a]).isZero()) return false;
    return true;
}

PoissonModule moduleFromTwoFields(const FramePtr& frame, const SVec& x1, const SVec& x2) {
    const int m = requireComplexCoordinate(frame);
    if (m != 2) throw BadArgument("the two-field module needs exactly two holomorphic coordinates");
    if (x1.size() != 2 || x2.size() != 2)
        throw BadArgument("fields must have two components");
    for (const Scalar& s : x1) requireHolomorphicEntry(frame, s, "field component");
    for (const Scalar& s : x2) requireHolomorphicEntry(frame, s, "field component");
    // Columns of p are the two fields.
    SMat p{{x1[0], x2[0]}, {x1[1], x2[1]}};
    const Scalar det = p[0][0] * p[1][1] - p[0][1] * p[1][0];
    if (det.isZero()) throw DegeneratePair("the two fields are dependent: X1 ^ X2 == 0");
    const SMat adj{{p[1][1], Scalar(0) - p[0][1]}, {Scalar(0) - p[1][0], p[0][0]}};
    auto dP = [&](int j) {
        SMat d = smatZero(2, 2);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) d[r][c] = frame->apply(j, p[r][c]);
        return d;
    };
    const SMat a1 = smatScale(Scalar(-1), smatMul(dP(1), adj));
    const SMat a2 = smatMul(dP(0), adj);
    SMat sig{{Scalar(0), det}, {Scalar(0) - det, Scalar(0)}};
    return poissonModule(Bivector(frame, std::move(sig)), {a1, a2});
}

PoissonModule canonicalModule(Bivector sigma) {
    const FramePtr& fr = sigma.frame();
    const int m = sigma.m();
    std::vector<SMat> a(m);
    for (int j = 0; j < m; ++j) {
        Scalar div(0);
        for (int k = 0; k < m; ++k) div = div + fr->apply(k, sigma.coeff(j, k));
        a[j] = SMat{{div}};
    }
    return poissonModule(std::move(sigma), std::move(a));
}

PoissonModule coHiggsModule(const FramePtr& frame, std::vector<SMat> phi) {
    const int m = requireComplexCoordinate(frame);
    if (static_cast<int>(phi.size()) != m)
        throw BadArgument("need one component matrix per holomorphic coordinate");
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (!smatIsZero(smatSub(smatMul(phi[i], phi[j]), smatMul(phi[j], phi[i]))))
                throw NonCommutingHiggs("components " + std::to_string(i + 1) + " and " +
                                        std::to_string(j + 1) + " do not commute");
    return poissonModule(zeroBivector(frame), std::move(phi));
}

} // namespace gengeo
