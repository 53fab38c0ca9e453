#include "doctest.h"

#include "gengeo/errors.hpp"
#include "gengeo/forms.hpp"
#include "gengeo/frame.hpp"
#include "gengeo/linalg.hpp"
#include "test_support.hpp"

using namespace gengeo;
using testsupport::Rng;

namespace {

// Three-variable coordinate playground shared by the cases below.
struct Space {
    Chart chart = Chart::real("uf_c", {"uf_x", "uf_y", "uf_z"});
    FramePtr fr = Frame::coordinate(chart);
    Scalar x = Scalar::atom(chart.vars[0]);
    Scalar y = Scalar::atom(chart.vars[1]);
    Scalar z = Scalar::atom(chart.vars[2]);
    Form dx = Form::basisOne(fr, 0);
    Form dy = Form::basisOne(fr, 1);
    Form dz = Form::basisOne(fr, 2);
};

Form randomForm(Rng& rng, const Space& s, int degree) {
    Form f(s.fr);
    std::vector<AtomId> atoms{s.chart.vars[0], s.chart.vars[1], s.chart.vars[2]};
    for (Mask m = 0; m < 8; ++m) {
        if (maskDegree(m) != degree) continue;
        f.addTerm(m, Scalar(rng.poly(atoms, 2, 2)));
    }
    return f;
}

Vec randomVec(Rng& rng, const Space& s) {
    std::vector<AtomId> atoms{s.chart.vars[0], s.chart.vars[1], s.chart.vars[2]};
    Vec v;
    for (int a = 0; a < 3; ++a) v.push_back(Scalar(rng.poly(atoms, 2, 2)));
    return v;
}

// The frame of one coordinate direction t and three invariant directions
// with cyclic unit structure functions ([E_1,E_2] = E_3 and cyclic).
FramePtr cyclicFrame() {
    static FramePtr fr = [] {
        Chart chart = Chart::real("uf_t", {"uf_tv"});
        std::vector<std::vector<Scalar>> action(4, std::vector<Scalar>(1));
        action[0][0] = Scalar(1);  // E_0 = d/dt; E_1..E_3 kill chart functions
        std::vector c(4, std::vector(4, std::vector<Scalar>(4)));
        c[1][2][3] = Scalar(1);
        c[2][1][3] = Scalar(-1);
        c[2][3][1] = Scalar(1);
        c[3][2][1] = Scalar(-1);
        c[3][1][2] = Scalar(1);
        c[1][3][2] = Scalar(-1);
        return Frame::fromStructure("uf_inv", chart, action, c);
    }();
    return fr;
}

} // namespace

TEST_CASE("wedge products: associativity, graded commutativity, signs") {
    Space s;
    CHECK(wedge(s.dx, s.dy) == -wedge(s.dy, s.dx));
    CHECK(wedge(s.dx, s.dx).isZero());
    CHECK(wedge(wedge(s.dx, s.dy), s.dz) == wedge(s.dx, wedge(s.dy, s.dz)));
    // e0^e2 ^ e1 = -e0^e1^e2: one inversion.
    Form e02 = Form::basis(s.fr, 0b101);
    CHECK(wedge(e02, s.dy) == -Form::basis(s.fr, 0b111));

    Rng rng(0x11aaULL);
    for (int it = 0; it < 12; ++it) {
        int p = static_cast<int>(rng.intIn(0, 2));
        int q = static_cast<int>(rng.intIn(0, 2));
        Form a = randomForm(rng, s, p), b = randomForm(rng, s, q), c = randomForm(rng, s, 1);
        // Graded commutativity (-1)^{pq} and bilinearity.
        Form ab = wedge(a, b), ba = wedge(b, a);
        CHECK(ab == ((p * q) % 2 ? -ba : ba));
        CHECK(wedge(a + b, c) == wedge(a, c) + wedge(b, c));
        CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
    }
}

TEST_CASE("interior product is an odd derivation squaring to zero") {
    Space s;
    Rng rng(0x22bbULL);
    for (int it = 0; it < 10; ++it) {
        Vec X = randomVec(rng, s), Y = randomVec(rng, s);
        int p = static_cast<int>(rng.intIn(1, 2));
        Form a = randomForm(rng, s, p), b = randomForm(rng, s, 1);
        CHECK(interior(X, wedge(a, b)) ==
              wedge(interior(X, a), b) + ((p % 2) ? -wedge(a, interior(X, b))
                                                  : wedge(a, interior(X, b))));
        CHECK(interior(X, interior(Y, a)) == -interior(Y, interior(X, a)));
        CHECK(interior(X, interior(X, wedge(a, b))).isZero());
    }
    // Contraction into the first slot: i_X (dx^dy) = X^0 dy - X^1 dx.
    Vec X{s.y, s.x * s.x, Scalar()};
    CHECK(interior(X, wedge(s.dx, s.dy)) == s.y * s.dy - (s.x * s.x) * s.dx);
}

TEST_CASE("exterior derivative: nilpotency and the antiderivation rule") {
    Space s;
    // d(x^2 y dz) = 2xy dx^dz + x^2 dy^dz.
    Form w = (s.x * s.x * s.y) * s.dz;
    CHECK(exteriorD(w) ==
          (Scalar(2) * s.x * s.y) * wedge(s.dx, s.dz) + (s.x * s.x) * wedge(s.dy, s.dz));

    Rng rng(0x33ccULL);
    for (int it = 0; it < 10; ++it) {
        int p = static_cast<int>(rng.intIn(0, 2));
        Form a = randomForm(rng, s, p), b = randomForm(rng, s, 1);
        CHECK(exteriorD(exteriorD(a)).isZero());
        CHECK(exteriorD(wedge(a, b)) ==
              wedge(exteriorD(a), b) + ((p % 2) ? -wedge(a, exteriorD(b))
                                                : wedge(a, exteriorD(b))));
    }
}

TEST_CASE("Lie derivative via contract/derive agrees with bracket structure") {
    Space s;
    Rng rng(0x44ddULL);
    for (int it = 0; it < 8; ++it) {
        Vec X = randomVec(rng, s), Y = randomVec(rng, s);
        Form a = randomForm(rng, s, static_cast<int>(rng.intIn(0, 2)));
        // L_X d = d L_X.
        CHECK(exteriorD(lieForm(X, a)) == lieForm(X, exteriorD(a)));
        // L_{[X,Y]} = L_X L_Y - L_Y L_X.
        CHECK(lieForm(s.fr->bracket(X, Y), a) ==
              lieForm(X, lieForm(Y, a)) - lieForm(Y, lieForm(X, a)));
        // On functions the Lie derivative is the vector action.
        Form f = randomForm(rng, s, 0);
        CHECK(lieForm(X, f) == Form::scalar(s.fr, s.fr->applyVec(X, f.coeff(0))));
    }
    // Jacobi identity for the vector-field bracket.
    Vec X = randomVec(rng, s), Y = randomVec(rng, s), Z = randomVec(rng, s);
    Vec j1 = s.fr->bracket(s.fr->bracket(X, Y), Z);
    Vec j2 = s.fr->bracket(s.fr->bracket(Y, Z), X);
    Vec j3 = s.fr->bracket(s.fr->bracket(Z, X), Y);
    for (int a = 0; a < 3; ++a) CHECK((j1[a] + j2[a] + j3[a]).isZero());
}

TEST_CASE("invariant frame: structure constants drive the coframe derivative") {
    FramePtr fr = cyclicFrame();
    // d e^1 = -e^2 ^ e^3 and cyclic; d e^0 = 0.
    CHECK(exteriorD(Form::basisOne(fr, 1)) == -Form::basis(fr, 0b1100));
    CHECK(exteriorD(Form::basisOne(fr, 2)) == -wedge(Form::basisOne(fr, 3),
                                                     Form::basisOne(fr, 1)));
    CHECK(exteriorD(Form::basisOne(fr, 0)).isZero());

    // d^2 = 0 holds on every coframe monomial.
    for (Mask m = 1; m < 16; ++m)
        CHECK(exteriorD(exteriorD(Form::basis(fr, m))).isZero());

    // A function of t only differentiates along E_0.
    AtomId t = fr->chart().vars[0];
    AtomId f = symbols::function("uf_a", t);
    Form w = Form::scalar(fr, Scalar::atom(f));
    Form dw = exteriorD(w);
    CHECK(dw == Scalar::atom(symbols::derivative(f)) * Form::basisOne(fr, 0));
    CHECK(fr->apply(2, Scalar::atom(f)).isZero());

    // Frame bracket of invariant fields reproduces the structure constants.
    Vec e1(4), e2(4);
    e1[1] = Scalar(1);
    e2[2] = Scalar(1);
    Vec br = fr->bracket(e1, e2);
    CHECK(br[3] == Scalar(1));
    CHECK(br[0].isZero());

    // Inconsistent structure data is rejected.
    Chart chart = Chart::real("uf_bad", {"uf_badv"});
    std::vector<std::vector<Scalar>> action(2, std::vector<Scalar>(1));
    action[0][0] = Scalar(1);
    std::vector c(2, std::vector(2, std::vector<Scalar>(2)));
    c[0][1][0] = Scalar(1);  // not antisymmetric: c[1][0][0] left at 0
    CHECK_THROWS_AS(Frame::fromStructure("uf_bad", chart, action, c), BadArgument);
}

TEST_CASE("conjugation on complex-paired coordinate frames") {
    Chart cc = Chart::complexified("uf_cc", {"uf_w1", "uf_w2"});
    FramePtr fr = Frame::coordinate(cc);
    Scalar z1 = Scalar::atom(cc.vars[0]);
    Form dz1 = Form::basisOne(fr, 0), dz2 = Form::basisOne(fr, 1);
    Form dz1b = Form::basisOne(fr, 2), dz2b = Form::basisOne(fr, 3);

    CHECK(dz1.conjugate() == dz1b);
    CHECK((Scalar::i() * dz1).conjugate() == Scalar(GRat(0) - GRat::i()) * dz1b);
    // Conjugating dz1^dz2b: factors map to dz1b^dz2, needing one swap to sort.
    CHECK(wedge(dz1, dz2b).conjugate() == -wedge(dz2, dz1b));
    // Conjugation is an involution and respects wedge.
    Form mixed = z1 * wedge(dz1, dz2) + Scalar::i() * dz1b;
    CHECK(mixed.conjugate().conjugate() == mixed);
    CHECK(wedge(mixed, dz2).conjugate() == wedge(mixed.conjugate(), dz2.conjugate()));
}

TEST_CASE("exact linear algebra over the scalar field") {
    Chart chart = Chart::real("ul_c", {"ul_x", "ul_y"});
    Scalar x = Scalar::atom(chart.vars[0]), y = Scalar::atom(chart.vars[1]);

    SMat a{{x, Scalar(1)}, {Scalar(1), y}};
    Scalar det = smatDet(a);
    CHECK(det == x * y - Scalar(1));
    SMat inv = smatInverse(a);
    CHECK(smatMul(a, inv) == smatIdentity(2));
    CHECK(smatMul(inv, a) == smatIdentity(2));
    CHECK_THROWS_AS(smatInverse(SMat{{x, x}, {x, x}}), BadArgument);

    // Singular 3x3 with rational-function entries: nullspace and solve.
    SMat b{{Scalar(1), x, Scalar()}, {y, x * y, Scalar(1)}, {Scalar(1), x, Scalar(1)}};
    CHECK(smatDet(b).isZero());
    auto ns = smatNullspace(b);
    REQUIRE(ns.size() == 1);
    for (auto& row : b) {
        Scalar dot;
        for (int j = 0; j < 3; ++j) dot += row[j] * ns[0][j];
        CHECK(dot.isZero());
    }
    // Consistent system: A (1, 1, 1)^T.
    SVec rhs = smatVec(b, SVec{Scalar(1), Scalar(1), Scalar(1)});
    SVec sol = smatSolve(b, rhs);
    CHECK(smatVec(b, sol) == rhs);
    // Inconsistent system raises.
    CHECK_THROWS_AS(smatSolve(SMat{{Scalar(1)}, {Scalar(1)}}, SVec{Scalar(), Scalar(1)}),
                    BadArgument);

    Rng rng(0x55eeULL);
    std::vector<AtomId> atoms{chart.vars[0], chart.vars[1]};
    for (int it = 0; it < 6; ++it) {
        SMat m(3, SVec(3));
        for (auto& row : m)
            for (auto& e : row) e = Scalar(rng.poly(atoms, 1, 2));
        Scalar d = smatDet(m);
        if (d.isZero()) {
            CHECK(!smatNullspace(m).empty());
        } else {
            CHECK(smatMul(m, smatInverse(m)) == smatIdentity(3));
            CHECK(smatNullspace(m).empty());
        }
    }
}
