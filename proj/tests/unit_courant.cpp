#include "doctest.h"

#include "gengeo/courant.hpp"
#include "gengeo/errors.hpp"
#include "test_support.hpp"

using namespace gengeo;
using testsupport::Rng;

namespace {

struct Space {
    Chart chart = Chart::real("ucr_c", {"ucr_x", "ucr_y", "ucr_z"});
    FramePtr fr = Frame::coordinate(chart);
    std::vector<AtomId> atoms{chart.vars[0], chart.vars[1], chart.vars[2]};
    Scalar x = Scalar::atom(chart.vars[0]);
    Scalar y = Scalar::atom(chart.vars[1]);
    Scalar z = Scalar::atom(chart.vars[2]);

    Scalar fn(Rng& rng) { return Scalar(rng.poly(atoms, 2, 2, false)); }

    Section section(Rng& rng) {
        Vec v(3);
        std::vector<Scalar> form(3);
        for (int a = 0; a < 3; ++a) {
            v[a] = fn(rng);
            form[a] = fn(rng);
        }
        return Section(fr, v, form);
    }

    Form form2(Rng& rng) {
        Form f(fr);
        f.addTerm(0b011, fn(rng));
        f.addTerm(0b101, fn(rng));
        f.addTerm(0b110, fn(rng));
        return f;
    }

    Form form3(Rng& rng) { return fn(rng) * Form::basis(fr, 0b111); }

    Form randomSpinor(Rng& rng) {
        Form f(fr);
        for (Mask m = 0; m < 8; ++m) f.addTerm(m, fn(rng));
        return f;
    }
};

Section dPairing(const Section& u, const Section& v) {
    Form d = exteriorD(Form::scalar(u.frame, pairing(u, v)));
    return Section::covector(u.frame, d.isZero() ? std::vector<Scalar>(u.frame->n())
                                                 : d.oneComps());
}

} // namespace

TEST_CASE("pairing and shear transforms") {
    Space s;
    Rng rng(0x7001ULL);
    for (int it = 0; it < 6; ++it) {
        Section u = s.section(rng), v = s.section(rng);
        CHECK(pairing(u, v) == pairing(v, u));
        // Closed or not, a shear is always an isometry of the pairing.
        Form b = s.form2(rng);
        CHECK(pairing(bfieldShear(b, u), bfieldShear(b, v)) == pairing(u, v));
    }
}

TEST_CASE("Clifford action squares to the pairing") {
    Space s;
    Rng rng(0x7002ULL);
    for (int it = 0; it < 6; ++it) {
        Section u = s.section(rng);
        Form phi = s.randomSpinor(rng);
        CHECK(cliffordAct(u, cliffordAct(u, phi)) == pairing(u, u) * phi);
        // Polarized form: uv + vu acting on phi gives 2(u,v) phi.
        Section v = s.section(rng);
        CHECK(cliffordAct(u, cliffordAct(v, phi)) + cliffordAct(v, cliffordAct(u, phi)) ==
              (Scalar(2) * pairing(u, v)) * phi);
    }
}

TEST_CASE("spinor pairing: worked value, symmetry, shear invariance") {
    Chart chart = Chart::real("ucr_p", {"ucr_px", "ucr_py"});
    FramePtr fr = Frame::coordinate(chart);
    Form one = Form::scalar(fr, Scalar(1));
    Form vol = Form::basis(fr, 0b11);

    // <1 + dx^dy, 1 - dx^dy> = -2 dx^dy: coefficient -2.
    CHECK(mukaiPairing(one + vol, one - vol) == Scalar(-2));
    // Interchange on a 2-dimensional frame flips the sign.
    CHECK(mukaiPairing(one - vol, one + vol) == Scalar(2));

    Space s;
    Rng rng(0x7003ULL);
    for (int it = 0; it < 6; ++it) {
        Form a = s.randomSpinor(rng), b = s.randomSpinor(rng);
        // On a 3-dimensional frame the pairing is symmetric up to the global
        // sign (-1)^{n(n-1)/2} = -1.
        CHECK(mukaiPairing(a, b) == -mukaiPairing(b, a));
        // Simultaneous shear by any 2-form preserves the pairing.
        Form bf = s.form2(rng);
        CHECK(mukaiPairing(spinorShear(bf, a), spinorShear(bf, b)) == mukaiPairing(a, b));
        // The Clifford action of a null section annihilates the pairing in
        // the polarized sense: <u.a, b> = +/- <a, u.b>; on an isotropic u
        // acting twice, <u.a, u.b> = (u,u)<a,b> = 0 picks out nullity.
        Section u = s.section(rng);
        CHECK(mukaiPairing(cliffordAct(u, a), cliffordAct(u, b)) ==
              pairing(u, u) * mukaiPairing(a, b));
    }
}

TEST_CASE("wedge exponential and spinor purity") {
    Space s;
    Form b = (s.x) * wedge(Form::basisOne(s.fr, 0), Form::basisOne(s.fr, 1)) +
             Scalar(2) * wedge(Form::basisOne(s.fr, 1), Form::basisOne(s.fr, 2));
    Form eb = wedgeExp(b);
    // exp of a 2-form: 1 + b (+ b^b/2 which dies on a 3-dim frame).
    CHECK(eb == Form::scalar(s.fr, Scalar(1)) + b);
    CHECK_THROWS_AS(wedgeExp(Form::scalar(s.fr, Scalar(1))), BadArgument);

    // The constant spinor 1 is pure (annihilated by all vectors), and purity
    // is preserved by shears.
    Form one = Form::scalar(s.fr, Scalar(1));
    CHECK(isPure(one));
    CHECK(isPure(spinorShear(b, one)));
    auto ann = annihilator(spinorShear(b, one));
    REQUIRE(ann.size() == 3);
    for (auto& u : ann) {
        CHECK(cliffordAct(u, spinorShear(b, one)).isZero());
        // The annihilator of a pure spinor is isotropic.
        for (auto& v : ann) CHECK(pairing(u, v).isZero());
    }

    // 1 + volume is not pure: only the zero section annihilates it.
    Form notPure = one + Form::basis(s.fr, 0b111);
    CHECK(annihilator(notPure).empty());
    CHECK(!isPure(notPure));
    CHECK_THROWS_AS(annihilator(Form(s.fr)), ZeroSpinor);
}

TEST_CASE("skew bracket: antisymmetry, symmetrization, scaling rule") {
    Space s;
    Rng rng(0x7004ULL);
    for (int it = 0; it < 5; ++it) {
        Section u = s.section(rng), v = s.section(rng);
        Section c = courantBracket(u, v);
        CHECK(courantBracket(v, u) == -c);
        // Dorfman symmetrization: u o v + v o u = 2 d(u,v); antisymmetrization
        // recovers the skew bracket.
        Section duv = dorfmanBracket(u, v), dvu = dorfmanBracket(v, u);
        CHECK(duv + dvu == Scalar(2) * dPairing(u, v));
        CHECK(duv - dvu == Scalar(2) * c);
        // Module rule: [u, fv] = f[u,v] + (Xf) v - (u,v) df.
        Scalar f = s.fn(rng);
        Section lhs = courantBracket(u, Scalar(f) * v);
        Section rhs = f * c + s.fr->applyVec(u.x, f) * v;
        Form df = exteriorD(Form::scalar(s.fr, f));
        std::vector<Scalar> dfc = df.isZero() ? std::vector<Scalar>(3) : df.oneComps();
        rhs = rhs - pairing(u, v) * Section::covector(s.fr, dfc);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("derived bracket: derivation identity and pairing compatibility") {
    Space s;
    Rng rng(0x7005ULL);
    for (int it = 0; it < 3; ++it) {
        Section u = s.section(rng), v = s.section(rng), w = s.section(rng);
        // u o (v o w) = (u o v) o w + v o (u o w).
        CHECK(dorfmanBracket(u, dorfmanBracket(v, w)) ==
              dorfmanBracket(dorfmanBracket(u, v), w) +
                  dorfmanBracket(v, dorfmanBracket(u, w)));
        // X(v,w) = (u o v, w) + (v, u o w).
        CHECK(s.fr->applyVec(u.x, pairing(v, w)) ==
              pairing(dorfmanBracket(u, v), w) + pairing(v, dorfmanBracket(u, w)));
    }
}

TEST_CASE("Jacobi anomaly of the skew bracket is an exact covector") {
    Space s;
    Rng rng(0x7006ULL);
    Section u = s.section(rng), v = s.section(rng), w = s.section(rng);
    Section jac = jacobiator(u, v, w);
    for (auto& comp : jac.x) CHECK(comp.isZero());
    CHECK(jac == jacobiatorPotential(u, v, w));
    // Same statement for the twisted bracket with a closed 3-form.
    Form h = Scalar(3) * Form::basis(s.fr, 0b111);
    Section jacH = jacobiator(u, v, w, h);
    CHECK(jacH == jacobiatorPotential(u, v, w, h));
}

TEST_CASE("shears versus the bracket: equivariance and its obstruction") {
    Space s;
    Rng rng(0x7007ULL);
    Section u = s.section(rng), v = s.section(rng);

    // Closed shear commutes with the bracket.
    Form closedB = exteriorD(s.fn(rng) * Form::basisOne(s.fr, 0) +
                             s.fn(rng) * Form::basisOne(s.fr, 2));
    CHECK(courantBracket(bfieldShear(closedB, u), bfieldShear(closedB, v)) ==
          bfieldShear(closedB, courantBracket(u, v)));

    // General shear: the defect is the contraction of dB.
    Form b = s.form2(rng);
    Section lhs = courantBracket(bfieldShear(b, u), bfieldShear(b, v));
    Form defect = interior(v.x, interior(u.x, exteriorD(b)));
    Section rhs = bfieldShear(b, courantBracket(u, v)) +
                  Section::covector(s.fr, defect.isZero() ? std::vector<Scalar>(3)
                                                          : defect.oneComps());
    CHECK(lhs == rhs);

    // A shear by F matches the bracket twisted by dF.
    Form f2 = s.form2(rng);
    Form h = exteriorD(f2);
    CHECK(courantBracket(bfieldShear(f2, u), bfieldShear(f2, v)) ==
          bfieldShear(f2, courantBracket(u, v, h)));

    // The twisting form must be closed.
    Form notClosed = s.x * wedge(Form::basisOne(s.fr, 1), Form::basisOne(s.fr, 2));
    Form badH = wedge(Form::basisOne(s.fr, 0), notClosed);
    if (!exteriorD(badH).isZero())
        CHECK_THROWS_AS(courantBracket(u, v, badH), NotClosed);
}

TEST_CASE("extended derivative: Clifford compatibility and commutators") {
    Space s;
    Rng rng(0x7008ULL);
    Section u = s.section(rng), v = s.section(rng);
    Form phi(s.fr);
    phi.addTerm(0, s.fn(rng));
    phi.addTerm(0b011, s.fn(rng));
    phi.addTerm(0b110, s.fn(rng));

    // On a plain vector field the extended derivative is the Lie derivative.
    Section xv = Section::vector(s.fr, u.x);
    CHECK(extendedLie(xv, phi) == lieForm(u.x, phi));

    // Closed form of the extended derivative: L_X phi + d(xi) ^ phi.
    CHECK(extendedLie(u, phi) ==
          lieForm(u.x, phi) + wedge(exteriorD(u.formPart()), phi));

    // Derivation property through the Clifford action with the derived
    // bracket on the left.
    CHECK(extendedLie(u, cliffordAct(v, phi)) ==
          cliffordAct(dorfmanBracket(u, v), phi) + cliffordAct(v, extendedLie(u, phi)));

    // Commutator of extended derivatives is the extended derivative of the
    // derived bracket (equivalently of the skew bracket, exact parts acting
    // trivially).
    Form comm = extendedLie(u, extendedLie(v, phi)) - extendedLie(v, extendedLie(u, phi));
    CHECK(comm == extendedLie(dorfmanBracket(u, v), phi));
    CHECK(comm == extendedLie(courantBracket(u, v), phi));

    // Twisted version: the derivative built from d + H^ and the bracket
    // carrying +i_Y i_X H sit on opposite sides of the derived-bracket
    // convention, so the derivation rule holds with an explicit correction
    // of twice the bracket's twist term.
    Form h = Scalar(2) * Form::basis(s.fr, 0b111);
    Form hxy = interior(v.x, interior(u.x, h));
    CHECK(extendedLie(u, cliffordAct(v, phi), h) ==
          cliffordAct(dorfmanBracket(u, v, h), phi) +
              cliffordAct(v, extendedLie(u, phi, h)) -
              Scalar(2) * wedge(hxy, phi));
    // d_H composed with itself vanishes for closed H of odd degree.
    CHECK(twistedD(h, twistedD(h, phi)).isZero());
}

TEST_CASE("patchwise twisting data validates and produces the curvature") {
    Space s;
    Scalar fx = s.x * s.y, fy = s.z * s.x;
    Form a0 = fx * Form::basisOne(s.fr, 1);
    Form a1 = fy * Form::basisOne(s.fr, 0);
    Form b01 = exteriorD(a0), b12 = exteriorD(a1);

    TwistData t;
    t.frame = s.fr;
    t.patches = 3;
    t.shears[{0, 1}] = b01;
    t.shears[{1, 2}] = b12;
    t.shears[{0, 2}] = b01 + b12;
    t.triples.push_back({0, 1, 2});
    Form f0 = s.z * wedge(Form::basisOne(s.fr, 0), Form::basisOne(s.fr, 1));
    t.curvings = {f0, f0 + b01, f0 + b01 + b12};

    Form h = twistCheck(t);
    CHECK(h == exteriorD(f0));
    CHECK(exteriorD(h).isZero());

    // Breaking the cocycle on the declared triple is rejected.
    TwistData bad = t;
    bad.shears[{0, 2}] = b01;
    CHECK_THROWS_AS(twistCheck(bad), CocycleViolation);

    // A non-closed shear is rejected.
    TwistData bad2 = t;
    bad2.shears[{0, 1}] = s.x * wedge(Form::basisOne(s.fr, 1), Form::basisOne(s.fr, 2));
    CHECK_THROWS_AS(twistCheck(bad2), NotClosed);

    // Curvings that disagree with a shear are rejected.
    TwistData bad3 = t;
    bad3.curvings[2] = f0;
    CHECK_THROWS_AS(twistCheck(bad3), CocycleViolation);
}

TEST_CASE("bracket calculus on an invariant frame") {
    // Frame: E_0 = d/dt plus three invariant fields with cyclic structure
    // constants; scalars are functions of t through one function symbol.
    Chart chart = Chart::real("ucr_it", {"ucr_itv"});
    std::vector<std::vector<Scalar>> action(4, std::vector<Scalar>(1));
    action[0][0] = Scalar(1);
    std::vector c(4, std::vector(4, std::vector<Scalar>(4)));
    c[1][2][3] = Scalar(1);
    c[2][1][3] = Scalar(-1);
    c[2][3][1] = Scalar(1);
    c[3][2][1] = Scalar(-1);
    c[3][1][2] = Scalar(1);
    c[1][3][2] = Scalar(-1);
    FramePtr fr = Frame::fromStructure("ucr_inv", chart, action, c);
    AtomId t = chart.vars[0];
    Scalar at = Scalar::atom(symbols::function("ucr_a", t));
    Scalar atp = Scalar::atom(symbols::derivative(symbols::function("ucr_a", t)));

    // Sections mixing the coordinate and invariant directions.
    Vec v1(4), v2(4);
    v1[0] = Scalar(1);
    v1[1] = at;
    v2[2] = at * at;
    std::vector<Scalar> f1(4), f2(4);
    f1[3] = at;
    f2[0] = Scalar(1);
    Section u(fr, v1, f1), v(fr, v2, f2);

    // The axioms hold frame-independently.
    Section cuv = courantBracket(u, v);
    CHECK(courantBracket(v, u) == -cuv);
    CHECK(dorfmanBracket(u, v) - dorfmanBracket(v, u) == Scalar(2) * cuv);
    CHECK(dorfmanBracket(u, v) + dorfmanBracket(v, u) == Scalar(2) * dPairing(u, v));
    Section w = Section::vector(fr, Vec{Scalar(), at, Scalar(1), Scalar()});
    CHECK(jacobiator(u, v, w) == jacobiatorPotential(u, v, w));

    // Spot-check the bracket against the structure constants.
    Section e1 = Section::vector(fr, Vec{Scalar(), Scalar(1), Scalar(), Scalar()});
    Section e2 = Section::vector(fr, Vec{Scalar(), Scalar(), Scalar(1), Scalar()});
    Section b12 = courantBracket(e1, e2);
    CHECK(b12.x[3] == Scalar(1));
    // [E_0, a(t) E_1] = a'(t) E_1.
    Section ae1 = at * e1;
    Section e0 = Section::vector(fr, Vec{Scalar(1), Scalar(), Scalar(), Scalar()});
    Section b01 = courantBracket(e0, ae1);
    CHECK(b01.x[1] == atp);
    CHECK(b01.x[0].isZero());
}
