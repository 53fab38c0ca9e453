#include "doctest.h"

#include "gengeo/errors.hpp"
#include "gengeo/poly.hpp"
#include "gengeo/rational.hpp"
#include "gengeo/scalar.hpp"
#include "gengeo/symbols.hpp"
#include "test_support.hpp"

using namespace gengeo;
using testsupport::Rng;

TEST_CASE("Gaussian rational field operations") {
    GRat i = GRat::i();
    CHECK(i * i == GRat(-1));
    GRat a(Rat(3, 2), Rat(-1));
    GRat b(Rat(0), Rat(2));
    CHECK((a + b) - b == a);
    CHECK((a * b) / b == a);
    CHECK(a.conj().conj() == a);
    CHECK((a * a.conj()).isReal());
    CHECK_THROWS_AS(a / GRat(0), DivisionByZero);
    CHECK(GRat(Rat(1, 2)).str() == "1/2");
    CHECK(GRat(Rat(1), Rat(-1)).str() == "(1-i)");
    CHECK(GRat(Rat(0), Rat(-3)).str() == "-3*i");
}

TEST_CASE("symbol registry is idempotent and conflict-checked") {
    AtomId x = symbols::variable("ureg_x");
    CHECK(symbols::variable("ureg_x") == x);
    CHECK(symbols::info(x).kind == AtomKind::Variable);
    CHECK(symbols::info(x).conj == x);  // real by default
    CHECK_THROWS_AS(symbols::function("ureg_x", x), SymbolConflict);

    AtomId t = symbols::variable("ureg_t");
    AtomId f = symbols::function("ureg_f", t, std::string("ureg_f1"));
    CHECK(symbols::function("ureg_f", t, std::string("ureg_f1")) == f);
    AtomId fd = symbols::derivative(f);
    CHECK(symbols::info(fd).name == "ureg_f1");
    CHECK(symbols::info(fd).kind == AtomKind::Function);
    CHECK(symbols::info(fd).arg == t);
    // Derivative chains mint primed names on demand.
    AtomId fdd = symbols::derivative(fd);
    CHECK(symbols::info(fdd).name == "ureg_f1'");
    CHECK(symbols::find("ureg_f1'").has_value());
    CHECK(!symbols::find("ureg_absent").has_value());
}

TEST_CASE("complex-paired charts link conjugate variables") {
    Chart c = Chart::complexified("uchart", {"uz1", "uz2"});
    REQUIRE(c.dim() == 4);
    CHECK(c.m() == 2);
    AtomId z1 = c.vars[0], z2 = c.vars[1], z1b = c.vars[2], z2b = c.vars[3];
    CHECK(symbols::info(z1).conj == z1b);
    CHECK(symbols::info(z1b).conj == z1);
    CHECK(symbols::info(z2).conj == z2b);
    CHECK(symbols::info(z1b).name == "uz1b");
    // Re-creating the same chart is idempotent.
    Chart c2 = Chart::complexified("uchart", {"uz1", "uz2"});
    CHECK(c2.vars == c.vars);
}

TEST_CASE("polynomial ring structure") {
    AtomId x = symbols::variable("up_x");
    AtomId y = symbols::variable("up_y");
    Poly px = Poly::atom(x), py = Poly::atom(y);

    Poly p = px * px - Poly(1);          // x^2 - 1
    Poly q = px - Poly(1);               // x - 1
    CHECK(p.totalDegree() == 2);
    CHECK(p.degreeIn(x) == 2);
    CHECK(p.degreeIn(y) == 0);
    CHECK(divExact(p, q) == px + Poly(1));
    CHECK_THROWS_AS(divExact(px * px + Poly(1), q), InternalError);

    // Deglex leading term: x^2*y beats x*y^2 iff x precedes y in atom order.
    Poly mix = px * px * py + px * py * py;
    CHECK(mix.leadingMono().expOf(x) == 2);

    Rng rng(0x5ca1ab1eULL);
    std::vector<AtomId> atoms{x, y};
    for (int it = 0; it < 30; ++it) {
        Poly a = rng.poly(atoms, 3, 4), b = rng.poly(atoms, 3, 4), c = rng.poly(atoms, 3, 4);
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == Poly());
        if (!b.isZero()) CHECK(divExact(a * b, b) == a);
    }
}

TEST_CASE("polynomial derivative, conjugation, evaluation") {
    AtomId x = symbols::variable("ud_x");
    AtomId y = symbols::variable("ud_y");
    Poly px = Poly::atom(x), py = Poly::atom(y);

    Rng rng(0xfeedc0deULL);
    std::vector<AtomId> atoms{x, y};
    for (int it = 0; it < 20; ++it) {
        Poly a = rng.poly(atoms, 3, 4), b = rng.poly(atoms, 3, 4);
        // Mixed partials commute.
        CHECK(a.derivative(x).derivative(y) == a.derivative(y).derivative(x));
        // Leibniz rule.
        CHECK((a * b).derivative(x) == a.derivative(x) * b + a * b.derivative(x));
        // Conjugation is an involutive ring map.
        CHECK(a.conjugate().conjugate() == a);
        CHECK((a * b).conjugate() == a.conjugate() * b.conjugate());
        CHECK((a + b).conjugate() == a.conjugate() + b.conjugate());
        // Evaluation is a ring homomorphism.
        std::map<AtomId, GRat> pt{{x, rng.smallGRat()}, {y, rng.smallGRat()}};
        CHECK(a.evaluate(pt) * b.evaluate(pt) == (a * b).evaluate(pt));
    }

    CHECK((px.pow(3) * py).derivative(x) == Poly(3) * px.pow(2) * py);
    CHECK_THROWS_AS(px.evaluate({}), UnknownVariable);

    // Function symbols differentiate through their derivative atoms.
    AtomId t = symbols::variable("ud_t");
    AtomId fa = symbols::function("ud_a", t, std::string("ud_a1"));
    AtomId fb = symbols::function("ud_b", t, std::string("ud_b1"));
    Poly A = Poly::atom(fa), B = Poly::atom(fb);
    Poly Ad = Poly::atom(symbols::derivative(fa)), Bd = Poly::atom(symbols::derivative(fb));
    CHECK((A * B).derivative(t) == Ad * B + A * Bd);
    CHECK(A.pow(2).derivative(t) == Poly(2) * A * Ad);
    CHECK(A.derivative(x) == Poly());

    // Conjugation swaps paired chart variables and conjugates coefficients.
    Chart cc = Chart::complexified("ud_cc", {"ud_z"});
    Poly z = Poly::atom(cc.vars[0]), zb = Poly::atom(cc.vars[1]);
    Poly w = z.scaled(GRat::i()) + zb * zb;
    CHECK(w.conjugate() == zb.scaled(-GRat::i()) + z * z);
}

TEST_CASE("collect groups coefficients by exponent") {
    AtomId x = symbols::variable("uc_x");
    AtomId y = symbols::variable("uc_y");
    Poly px = Poly::atom(x), py = Poly::atom(y);
    Poly p = px.pow(2) * py + px * py + py.pow(3) + Poly(5);
    auto byX = p.collect(x);
    REQUIRE(byX.size() == 3);
    CHECK(byX[0] == py.pow(3) + Poly(5));
    CHECK(byX[1] == py);
    CHECK(byX[2] == py);
    // Reassembly round-trips.
    Poly back;
    for (auto& [k, c] : byX) back += c * px.pow(k);
    CHECK(back == p);
}

TEST_CASE("polynomial gcd") {
    AtomId x = symbols::variable("ug_x");
    AtomId y = symbols::variable("ug_y");
    Poly px = Poly::atom(x), py = Poly::atom(y);

    CHECK(gcdPoly(px * px - Poly(1), px - Poly(1)) == px - Poly(1));
    CHECK(gcdPoly(px * py, px * px) == px);
    CHECK(gcdPoly(px + Poly(1), py + Poly(1)) == Poly(1));
    CHECK(gcdPoly(Poly(), px.scaled(GRat(3))) == px);
    CHECK(gcdPoly(Poly(6), Poly(4)) == Poly(1));

    Rng rng(0xdecafbadULL);
    std::vector<AtomId> atoms{x, y};
    for (int it = 0; it < 15; ++it) {
        Poly g = rng.nonzeroPoly(atoms, 2, 2);
        Poly p = rng.nonzeroPoly(atoms, 2, 2);
        Poly q = rng.nonzeroPoly(atoms, 2, 2);
        Poly full = gcdPoly(g * p, g * q);
        Poly mg = gcdPoly(g, g);  // monic copy of g
        // The common factor g divides the gcd, and the gcd divides both
        // products (divExact throws if any division fails to be exact).
        CHECK(divExact(full, mg) * mg == full);
        CHECK(divExact(g * p, full) * full == g * p);
        CHECK(divExact(g * q, full) * full == g * q);
        // Monic normal form.
        CHECK(full.leadingCoeff().isOne());
    }
}

TEST_CASE("scalar normal form and field operations") {
    AtomId x = symbols::variable("us_x");
    AtomId y = symbols::variable("us_y");
    Poly px = Poly::atom(x), py = Poly::atom(y);

    // (x^2 - 1)/(x - 1) reduces to x + 1.
    Scalar s(px * px - Poly(1), px - Poly(1));
    CHECK(s == Scalar(px + Poly(1)));
    CHECK(s.isPolynomial());

    // Denominators are monic: 2x/(2y) -> x/y with denominator leading coeff 1.
    Scalar t(px.scaled(GRat(2)), py.scaled(GRat(2)));
    CHECK(t.den() == py);
    CHECK(t.num() == px);

    CHECK_THROWS_AS(Scalar(px, Poly()), DivisionByZero);
    CHECK_THROWS_AS(Scalar(px) / Scalar(), DivisionByZero);
    CHECK(Scalar::i() * Scalar::i() == Scalar(-1));

    Rng rng(0xabad1deaULL);
    std::vector<AtomId> atoms{x, y};
    for (int it = 0; it < 20; ++it) {
        Scalar a = rng.scalar(atoms, 2, 3);
        Scalar b = rng.scalar(atoms, 2, 3);
        Scalar c = rng.scalar(atoms, 2, 3);
        CHECK(a + b == b + a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == Scalar());
        if (!b.isZero()) {
            CHECK((a / b) * b == a);
            CHECK(b / b == Scalar(1));
        }
        // Normal form makes equality structural: a/b == (a*c)/(b*c).
        if (!b.isZero() && !c.isZero()) CHECK(a / b == (a * c) / (b * c));
    }
}

TEST_CASE("scalar calculus and complex structure") {
    AtomId x = symbols::variable("usc_x");
    Poly px = Poly::atom(x);

    // d/dx (1/x) = -1/x^2.
    Scalar inv = Scalar(1) / Scalar(px);
    CHECK(inv.derivative(x) == Scalar(Poly(-1), px * px));
    // Quotient rule against the product rule on random data.
    AtomId y = symbols::variable("usc_y");
    Rng rng(0x600dcafeULL);
    std::vector<AtomId> atoms{x, y};
    for (int it = 0; it < 10; ++it) {
        Scalar a = rng.scalar(atoms, 2, 2);
        Scalar b = rng.scalar(atoms, 2, 2);
        CHECK((a * b).derivative(x) == a.derivative(x) * b + a * b.derivative(x));
        if (!b.isZero())
            CHECK((a / b).derivative(x) ==
                  (a.derivative(x) * b - a * b.derivative(x)) / (b * b));
    }

    // Differentiating along a function symbol is rejected.
    AtomId tt = symbols::variable("usc_t");
    AtomId fn = symbols::function("usc_f", tt);
    CHECK_THROWS_AS(Scalar(px).derivative(fn), BadArgument);

    // Real/imaginary parts on a complex-paired chart: f = z*zb + i*z.
    Chart cc = Chart::complexified("usc_cc", {"usc_z"});
    Scalar z = Scalar::atom(cc.vars[0]), zb = Scalar::atom(cc.vars[1]);
    Scalar f = z * zb + Scalar::i() * z;
    CHECK(f.realPart() + Scalar::i() * f.imagPart() == f);
    CHECK(f.realPart().conjugate() == f.realPart());
    CHECK(f.imagPart().conjugate() == f.imagPart());
    CHECK(z.realPart() == (z + zb) / Scalar(2));

    // Deterministic printing of the normal form: (x^2-1)/(2x-2) reduces to
    // (x+1)/2 and the constant denominator is absorbed into the numerator.
    Scalar r(px * px - Poly(1), px.scaled(GRat(2)) - Poly(2));
    CHECK(r.str() == "(1/2)*usc_x + 1/2");
    Scalar q(Poly(1), px - Poly(1));
    CHECK(q.str() == "1/(usc_x - 1)");
}
