#include "gengeo/courant.hpp"

#include "gengeo/errors.hpp"

namespace gengeo {

namespace {

// i_X applied to a scalar-producing 1-form given by components.
Scalar contract(const std::vector<Scalar>& xi, const Vec& x) {
    Scalar s;
    for (size_t a = 0; a < xi.size(); ++a)
        if (!xi[a].isZero() && !x[a].isZero()) s += xi[a] * x[a];
    return s;
}

void requireClosed(const Form& h) {
    if (h.frame() == nullptr) return;
    if (!exteriorD(h).isZero())
        throw NotClosed("twisting 3-form must be closed");
}

} // namespace

Section bfieldShear(const Form& b, const Section& u) {
    if (b.frame() == nullptr) return u;
    requireSameFrame(b.frame(), u.frame);
    if (!b.isHomogeneous(2)) throw BadArgument("shear requires a 2-form");
    Form extra = interior(u.x, b);
    Section r = u;
    std::vector<Scalar> add = extra.isZero() ? std::vector<Scalar>(u.n()) : extra.oneComps();
    for (int a = 0; a < u.n(); ++a) r.xi[a] += add[a];
    return r;
}

Section courantBracket(const Section& u, const Section& v, const Form& h) {
    requireSameFrame(u.frame, v.frame);
    requireClosed(h);
    const FramePtr& fr = u.frame;

    Vec xy = fr->bracket(u.x, v.x);
    Form eta = v.formPart(), xiF = u.formPart();
    Form formPart = lieForm(u.x, eta) - lieForm(v.x, xiF);
    Scalar half = Scalar(1) / Scalar(2);
    Scalar asym = contract(v.xi, u.x) - contract(u.xi, v.x);  // i_X eta - i_Y xi
    formPart -= half * exteriorD(Form::scalar(fr, asym));
    if (h.frame() != nullptr) {
        requireSameFrame(h.frame(), fr);
        if (!h.isHomogeneous(3)) throw BadArgument("twisting form must be a 3-form");
        formPart += interior(v.x, interior(u.x, h));
    }
    return Section(fr, std::move(xy),
                   formPart.isZero() ? std::vector<Scalar>(fr->n()) : formPart.oneComps());
}

Section dorfmanBracket(const Section& u, const Section& v, const Form& h) {
    requireSameFrame(u.frame, v.frame);
    requireClosed(h);
    const FramePtr& fr = u.frame;

    Vec xy = fr->bracket(u.x, v.x);
    Form formPart = lieForm(u.x, v.formPart()) - interior(v.x, exteriorD(u.formPart()));
    if (h.frame() != nullptr) {
        requireSameFrame(h.frame(), fr);
        if (!h.isHomogeneous(3)) throw BadArgument("twisting form must be a 3-form");
        formPart += interior(v.x, interior(u.x, h));
    }
    return Section(fr, std::move(xy),
                   formPart.isZero() ? std::vector<Scalar>(fr->n()) : formPart.oneComps());
}

Form twistedD(const Form& h, const Form& phi) {
    if (h.frame() == nullptr) return exteriorD(phi);
    requireSameFrame(h.frame(), phi.frame());
    if (!h.isHomogeneous(3)) throw BadArgument("twisting form must be a 3-form");
    requireClosed(h);
    return exteriorD(phi) + wedge(h, phi);
}

Form extendedLie(const Section& u, const Form& phi, const Form& h) {
    requireSameFrame(u.frame, phi.frame());
    return twistedD(h, cliffordAct(u, phi)) + cliffordAct(u, twistedD(h, phi));
}

Section jacobiator(const Section& u, const Section& v, const Section& w, const Form& h) {
    return courantBracket(courantBracket(u, v, h), w, h) +
           courantBracket(courantBracket(v, w, h), u, h) +
           courantBracket(courantBracket(w, u, h), v, h);
}

Section jacobiatorPotential(const Section& u, const Section& v, const Section& w,
                            const Form& h) {
    Scalar cyc = pairing(courantBracket(u, v, h), w) +
                 pairing(courantBracket(v, w, h), u) +
                 pairing(courantBracket(w, u, h), v);
    Form d = exteriorD(Form::scalar(u.frame, cyc / Scalar(3)));
    return Section::covector(u.frame,
                             d.isZero() ? std::vector<Scalar>(u.frame->n()) : d.oneComps());
}

Form TwistData::shear(int alpha, int beta) const {
    if (alpha == beta) return Form(frame);
    auto it = shears.find({std::min(alpha, beta), std::max(alpha, beta)});
    if (it == shears.end())
        throw BadArgument("no shear declared for overlap (" + std::to_string(alpha) + "," +
                          std::to_string(beta) + ")");
    return alpha < beta ? it->second : -it->second;
}

Form twistCheck(const TwistData& data) {
    if (!data.frame) throw BadArgument("twist data requires a frame");
    for (auto& [key, b] : data.shears) {
        if (b.frame() != nullptr) requireSameFrame(b.frame(), data.frame);
        if (!b.isZero() && !b.isHomogeneous(2))
            throw BadArgument("overlap shears must be 2-forms");
        if (!exteriorD(b).isZero())
            throw NotClosed("shear on overlap (" + std::to_string(key.first) + "," +
                            std::to_string(key.second) + ") is not closed");
    }
    for (auto& t : data.triples) {
        Form sum = data.shear(t[0], t[1]) + data.shear(t[1], t[2]) + data.shear(t[2], t[0]);
        if (!sum.isZero())
            throw CocycleViolation("shears fail the cocycle condition on triple (" +
                                   std::to_string(t[0]) + "," + std::to_string(t[1]) + "," +
                                   std::to_string(t[2]) + ")");
    }
    if (static_cast<int>(data.curvings.size()) != data.patches)
        throw BadArgument("exactly one curving 2-form per patch is required");
    for (auto& f : data.curvings) {
        if (f.frame() != nullptr) requireSameFrame(f.frame(), data.frame);
        if (!f.isZero() && !f.isHomogeneous(2))
            throw BadArgument("curvings must be 2-forms");
    }
    // Compatibility F_beta - F_alpha = B_{alpha beta} on every declared overlap.
    for (auto& [key, b] : data.shears) {
        auto [alpha, beta] = key;
        if (alpha < 0 || beta >= data.patches)
            throw BadArgument("overlap labels out of range");
        if (data.curvings[beta] - data.curvings[alpha] != b)
            throw CocycleViolation("curvings do not match the shear on overlap (" +
                                   std::to_string(alpha) + "," + std::to_string(beta) + ")");
    }
    if (data.patches == 0) return Form(data.frame);
    Form h = exteriorD(data.curvings[0]);
    for (int p = 1; p < data.patches; ++p)
        if (exteriorD(data.curvings[p]) != h)
            throw CocycleViolation("curvature 3-form differs between patches 0 and " +
                                   std::to_string(p));
    if (!exteriorD(h).isZero())
        throw InternalError("curvature of a curving family failed to be closed");
    return h;
}

} // namespace gengeo
