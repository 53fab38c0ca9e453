#include "gengeo/forms.hpp"

#include <algorithm>
#include <bit>
#include <vector>

#include "gengeo/errors.hpp"

namespace gengeo {

int maskDegree(Mask m) { return std::popcount(m); }

namespace {

// Sign of e^A ^ e^B as a reordering of the ascending product e^{A|B}: count
// inversions between the two ascending factor lists.
int wedgeSign(Mask a, Mask b) {
    int inv = 0;
    for (Mask bb = b; bb; bb &= bb - 1) {
        int bit = std::countr_zero(bb);
        // Factors of a that must jump over this factor of b.
        inv += std::popcount(a >> (bit + 1));
    }
    return (inv & 1) ? -1 : 1;
}

// Sign of removing factor a from the ascending monomial m (contraction into
// the first slot): (-1)^{number of factors before a}.
int removeSign(Mask m, int a) {
    int before = std::popcount(m & ((Mask(1) << a) - 1));
    return (before & 1) ? -1 : 1;
}

} // namespace

Form Form::scalar(FramePtr frame, const Scalar& s) {
    Form f(std::move(frame));
    f.addTerm(0, s);
    return f;
}

Form Form::basisOne(FramePtr frame, int a) {
    if (a < 0 || a >= frame->n()) throw BadArgument("coframe index out of range");
    Form f(std::move(frame));
    f.addTerm(Mask(1) << a, Scalar(1));
    return f;
}

Form Form::basis(FramePtr frame, Mask m) {
    if (m >> frame->n()) throw BadArgument("coframe monomial out of range");
    Form f(std::move(frame));
    f.addTerm(m, Scalar(1));
    return f;
}

Form Form::one(FramePtr frame, const std::vector<Scalar>& comps) {
    if (static_cast<int>(comps.size()) != frame->n())
        throw BadArgument("one-form component count must match the frame dimension");
    Form f(std::move(frame));
    for (size_t a = 0; a < comps.size(); ++a) f.addTerm(Mask(1) << a, comps[a]);
    return f;
}

int Form::maxDegree() const {
    int d = -1;
    for (auto& [m, c] : comp_) d = std::max(d, maskDegree(m));
    return d;
}

bool Form::isHomogeneous(int degree) const {
    for (auto& [m, c] : comp_)
        if (maskDegree(m) != degree) return false;
    return true;
}

Form Form::degreePart(int degree) const {
    Form f(frame_);
    for (auto& [m, c] : comp_)
        if (maskDegree(m) == degree) f.comp_.emplace(m, c);
    return f;
}

std::vector<Scalar> Form::oneComps() const {
    if (!isHomogeneous(1)) throw BadArgument("oneComps requires a 1-form");
    std::vector<Scalar> r(frame_->n());
    for (auto& [m, c] : comp_) r[std::countr_zero(m)] = c;
    return r;
}

Scalar Form::coeff(Mask m) const {
    auto it = comp_.find(m);
    return it == comp_.end() ? Scalar() : it->second;
}

Scalar Form::topCoeff() const {
    return coeff((Mask(1) << frame_->n()) - 1);
}

void Form::addTerm(Mask m, const Scalar& c) {
    if (c.isZero()) return;
    auto it = comp_.find(m);
    if (it == comp_.end()) {
        comp_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.isZero()) comp_.erase(it);
    }
}

Form operator+(const Form& a, const Form& b) {
    if (a.frame_ == nullptr) return b;
    if (b.frame_ == nullptr) return a;
    requireSameFrame(a.frame_, b.frame_);
    Form r = a;
    for (auto& [m, c] : b.comp_) r.addTerm(m, c);
    return r;
}

Form operator-(const Form& a, const Form& b) { return a + (-b); }

Form operator-(const Form& a) {
    Form r(a.frame_);
    for (auto& [m, c] : a.comp_) r.comp_.emplace(m, -c);
    return r;
}

Form operator*(const Scalar& s, const Form& a) {
    Form r(a.frame_);
    if (s.isZero()) return r;
    for (auto& [m, c] : a.comp_) r.addTerm(m, s * c);
    return r;
}

bool operator==(const Form& a, const Form& b) {
    if (a.comp_.empty() && b.comp_.empty()) return true;
    return a.frame_ == b.frame_ && a.comp_ == b.comp_;
}

Form Form::conjugate() const {
    Form r(frame_);
    for (auto& [m, c] : comp_) {
        // Map each factor through the conjugation permutation, then re-sort.
        std::vector<int> bits;
        for (Mask mm = m; mm; mm &= mm - 1)
            bits.push_back(frame_->conjIndex(std::countr_zero(mm)));
        int inv = 0;
        for (size_t i = 0; i < bits.size(); ++i)
            for (size_t j = i + 1; j < bits.size(); ++j)
                if (bits[i] > bits[j]) ++inv;
        Mask nm = 0;
        for (int b : bits) nm |= Mask(1) << b;
        Scalar cc = c.conjugate();
        r.addTerm(nm, (inv & 1) ? -cc : cc);
    }
    return r;
}

std::string Form::str() const {
    if (comp_.empty()) return "0";
    std::string s;
    for (auto& [m, c] : comp_) {
        if (!s.empty()) s += " + ";
        std::string cs = c.str();
        if (cs.find(' ') != std::string::npos) cs = "(" + cs + ")";
        s += cs;
        for (Mask mm = m; mm; mm &= mm - 1)
            s += "^e" + std::to_string(std::countr_zero(mm));
    }
    return s;
}

Form wedge(const Form& a, const Form& b) {
    if (a.frame() == nullptr || b.frame() == nullptr) return Form();
    requireSameFrame(a.frame(), b.frame());
    Form r(a.frame());
    for (auto& [ma, ca] : a.comps())
        for (auto& [mb, cb] : b.comps()) {
            if (ma & mb) continue;
            Scalar c = ca * cb;
            if (wedgeSign(ma, mb) < 0) c = -c;
            r.addTerm(ma | mb, c);
        }
    return r;
}

Form interiorBasis(int a, const Form& w) {
    Form r(w.frame());
    Mask bit = Mask(1) << a;
    for (auto& [m, c] : w.comps()) {
        if (!(m & bit)) continue;
        Scalar cc = c;
        if (removeSign(m, a) < 0) cc = -cc;
        r.addTerm(m & ~bit, cc);
    }
    return r;
}

Form interior(const Vec& x, const Form& w) {
    const FramePtr& fr = w.frame();
    if (fr == nullptr) return Form();
    if (static_cast<int>(x.size()) != fr->n())
        throw BadArgument("vector components must match the frame dimension");
    Form r(fr);
    for (int a = 0; a < fr->n(); ++a) {
        if (x[a].isZero()) continue;
        r += x[a] * interiorBasis(a, w);
    }
    return r;
}

namespace {

// d e^k = - sum_{a<b} c(a,b,k) e^a ^ e^b.
Form dBasisOne(const FramePtr& fr, int k) {
    Form r(fr);
    for (int a = 0; a < fr->n(); ++a)
        for (int b = a + 1; b < fr->n(); ++b) {
            const Scalar& s = fr->structure(a, b, k);
            if (!s.isZero()) r.addTerm((Mask(1) << a) | (Mask(1) << b), -s);
        }
    return r;
}

} // namespace

Form exteriorD(const Form& w) {
    const FramePtr& fr = w.frame();
    if (fr == nullptr) return Form();
    Form r(fr);
    for (auto& [m, c] : w.comps()) {
        // d(coefficient) ^ monomial.
        for (int a = 0; a < fr->n(); ++a) {
            Scalar da = fr->apply(a, c);
            if (da.isZero()) continue;
            Mask bit = Mask(1) << a;
            if (m & bit) continue;
            if (wedgeSign(bit, m) < 0) da = -da;
            r.addTerm(bit | m, da);
        }
        // coefficient * d(monomial), one Leibniz term per factor.
        int pos = 0;
        for (Mask mm = m; mm; mm &= mm - 1, ++pos) {
            int k = std::countr_zero(mm);
            Form dk = dBasisOne(fr, k);
            if (dk.isZero()) continue;
            Mask rest = m & ~(Mask(1) << k);
            Scalar coeff = (pos & 1) ? -c : c;
            // Sign convention: e^{i1}^..^d(e^{i_pos})^..  The replaced factor
            // moves to the front past `pos` earlier factors, then the 2-form
            // dk is wedged back in from the left.
            r += coeff * wedge(dk, Form::basis(fr, rest));
        }
    }
    return r;
}

Form lieForm(const Vec& x, const Form& w) {
    return interior(x, exteriorD(w)) + exteriorD(interior(x, w));
}

} // namespace gengeo
