#include "gengeo/section.hpp"

#include "gengeo/errors.hpp"

namespace gengeo {

Section::Section(FramePtr fr, Vec v, std::vector<Scalar> form)
    : frame(std::move(fr)), x(std::move(v)), xi(std::move(form)) {
    if (!frame) throw BadArgument("section requires a frame");
    if (static_cast<int>(x.size()) != frame->n() ||
        static_cast<int>(xi.size()) != frame->n())
        throw BadArgument("section components must match the frame dimension");
}

Section Section::vector(FramePtr fr, Vec v) {
    std::vector<Scalar> zero(fr->n());
    return Section(std::move(fr), std::move(v), std::move(zero));
}

Section Section::covector(FramePtr fr, std::vector<Scalar> form) {
    Vec zero(fr->n());
    return Section(std::move(fr), std::move(zero), std::move(form));
}

bool Section::isZero() const {
    for (auto& s : x)
        if (!s.isZero()) return false;
    for (auto& s : xi)
        if (!s.isZero()) return false;
    return true;
}

Section Section::conjugate() const {
    Section r = *this;
    for (int a = 0; a < n(); ++a) {
        int ca = frame->conjIndex(a);
        r.x[ca] = x[a].conjugate();
        r.xi[ca] = xi[a].conjugate();
    }
    return r;
}

Section operator+(const Section& a, const Section& b) {
    requireSameFrame(a.frame, b.frame);
    Section r = a;
    for (int i = 0; i < r.n(); ++i) {
        r.x[i] += b.x[i];
        r.xi[i] += b.xi[i];
    }
    return r;
}

Section operator-(const Section& a, const Section& b) { return a + (-b); }

Section operator-(const Section& a) {
    Section r = a;
    for (int i = 0; i < r.n(); ++i) {
        r.x[i] = -r.x[i];
        r.xi[i] = -r.xi[i];
    }
    return r;
}

Section operator*(const Scalar& s, const Section& a) {
    Section r = a;
    for (int i = 0; i < r.n(); ++i) {
        r.x[i] *= s;
        r.xi[i] *= s;
    }
    return r;
}

bool operator==(const Section& a, const Section& b) {
    if (a.frame != b.frame) return false;
    return a.x == b.x && a.xi == b.xi;
}

Scalar pairing(const Section& u, const Section& v) {
    requireSameFrame(u.frame, v.frame);
    Scalar s;
    for (int a = 0; a < u.n(); ++a) s += u.xi[a] * v.x[a] + v.xi[a] * u.x[a];
    return s / Scalar(2);
}

} // namespace gengeo
