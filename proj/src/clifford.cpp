#include "gengeo/clifford.hpp"

#include "gengeo/errors.hpp"
#include "gengeo/linalg.hpp"

namespace gengeo {

Form cliffordAct(const Section& u, const Form& phi) {
    requireSameFrame(u.frame, phi.frame());
    return interior(u.x, phi) + wedge(u.formPart(), phi);
}

Scalar mukaiPairing(const Form& a, const Form& b) {
    requireSameFrame(a.frame(), b.frame());
    int n = a.frame()->n();
    Form total(a.frame());
    for (int j = 0; 2 * j <= n; ++j) {
        Scalar sign((j % 2) ? -1 : 1);
        Form evenPart = wedge(a.degreePart(2 * j), b.degreePart(n - 2 * j));
        total += sign * evenPart;
        if (2 * j + 1 <= n) {
            Form oddPart = wedge(a.degreePart(2 * j + 1), b.degreePart(n - 2 * j - 1));
            total += sign * oddPart;
        }
    }
    return total.topCoeff();
}

Form wedgeExp(const Form& b) {
    if (b.frame() == nullptr) return Form();
    if (!b.degreePart(0).isZero())
        throw BadArgument("wedge exponential requires a form without degree-0 part");
    Form result = Form::scalar(b.frame(), Scalar(1));
    Form power = result;
    GRat factorial(1);
    int n = b.frame()->n();
    for (int k = 1; k <= n; ++k) {
        power = wedge(power, b);
        if (power.isZero()) break;
        factorial *= GRat(k);
        result += Scalar(GRat(1) / factorial) * power;
    }
    return result;
}

Form spinorShear(const Form& b, const Form& phi) {
    if (b.frame() == nullptr) return phi;
    requireSameFrame(b.frame(), phi.frame());
    if (!b.isHomogeneous(2)) throw BadArgument("shear transform requires a 2-form");
    return wedge(wedgeExp(-b), phi);
}

std::vector<Section> annihilator(const Form& phi) {
    if (phi.isZero()) throw ZeroSpinor("annihilator of the zero spinor");
    const FramePtr& fr = phi.frame();
    int n = fr->n();

    // Unknowns: X^0..X^{n-1}, xi_0..xi_{n-1}.  Each basis monomial of
    // (X + xi) . phi yields one linear equation over the scalar field.
    std::map<Mask, SVec> rows;
    auto rowFor = [&](Mask m) -> SVec& {
        auto it = rows.find(m);
        if (it == rows.end()) it = rows.emplace(m, SVec(2 * n)).first;
        return it->second;
    };
    for (int a = 0; a < n; ++a) {
        Form ia = interiorBasis(a, phi);
        for (auto& [m, c] : ia.comps()) rowFor(m)[a] += c;
        Form wa = wedge(Form::basisOne(fr, a), phi);
        for (auto& [m, c] : wa.comps()) rowFor(m)[n + a] += c;
    }
    SMat sys;
    sys.reserve(rows.size());
    for (auto& [m, row] : rows) sys.push_back(row);

    std::vector<SVec> null = smatNullspace(sys);
    std::vector<Section> result;
    result.reserve(null.size());
    for (auto& v : null) {
        Vec x(v.begin(), v.begin() + n);
        std::vector<Scalar> xi(v.begin() + n, v.end());
        result.emplace_back(fr, std::move(x), std::move(xi));
    }
    return result;
}

bool isPure(const Form& phi) {
    return static_cast<int>(annihilator(phi).size()) == phi.frame()->n();
}

} // namespace gengeo
