#include "gengeo/poly.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

#include "gengeo/errors.hpp"

namespace gengeo {

// ---------------------------------------------------------------------------
// Mono

Mono operator*(const Mono& a, const Mono& b) {
    Mono r;
    r.e.reserve(a.e.size() + b.e.size());
    auto ia = a.e.begin(), ib = b.e.begin();
    while (ia != a.e.end() || ib != b.e.end()) {
        if (ib == b.e.end() || (ia != a.e.end() && ia->first < ib->first)) {
            r.e.push_back(*ia++);
        } else if (ia == a.e.end() || ib->first < ia->first) {
            r.e.push_back(*ib++);
        } else {
            r.e.emplace_back(ia->first, ia->second + ib->second);
            ++ia;
            ++ib;
        }
    }
    return r;
}

bool Mono::divides(const Mono& d) const {
    for (auto& [a, k] : e)
        if (d.expOf(a) < k) return false;
    return true;
}

Mono Mono::divInto(const Mono& d) const {
    Mono r;
    for (auto& [a, k] : d.e) {
        int q = k - expOf(a);
        if (q < 0) throw InternalError("monomial quotient with negative exponent");
        if (q > 0) r.e.emplace_back(a, q);
    }
    // Every atom of the divisor must appear in the dividend.
    for (auto& [a, k] : e)
        if (d.expOf(a) < k) throw InternalError("monomial quotient is not exact");
    return r;
}

bool MonoLess::operator()(const Mono& a, const Mono& b) const {
    int da = a.totalDegree(), db = b.totalDegree();
    if (da != db) return da < db;
    // Same total degree: compare exponent vectors on ascending atom id.  The
    // monomial with the larger exponent on the earliest differing atom is the
    // larger monomial.
    auto ia = a.e.begin(), ib = b.e.begin();
    while (ia != a.e.end() && ib != b.e.end()) {
        if (ia->first != ib->first) {
            // The one owning the earlier atom has positive exponent there.
            return ia->first > ib->first;  // b owns the earlier atom => a < b
        }
        if (ia->second != ib->second) return ia->second < ib->second;
        ++ia;
        ++ib;
    }
    // Equal prefixes and equal total degree force both ends simultaneously.
    return false;
}

// ---------------------------------------------------------------------------
// Poly basics

Poly Poly::constant(const GRat& c) {
    Poly p;
    if (!c.isZero()) p.t_.emplace(Mono{}, c);
    return p;
}

Poly Poly::atom(AtomId a, int exp) {
    if (exp < 0) throw InternalError("atom with negative exponent");
    Poly p;
    if (exp == 0) return Poly(1);
    Mono m;
    m.e.emplace_back(a, exp);
    p.t_.emplace(std::move(m), GRat(1));
    return p;
}

GRat Poly::constantValue() const {
    if (t_.empty()) return GRat(0);
    if (t_.size() != 1 || !t_.begin()->first.isOne())
        throw InternalError("constantValue on non-constant polynomial");
    return t_.begin()->second;
}

int Poly::totalDegree() const {
    if (t_.empty()) return -1;
    return t_.rbegin()->first.totalDegree();  // deglex: last term has max degree
}

int Poly::degreeIn(AtomId v) const {
    int d = 0;
    for (auto& [m, c] : t_) d = std::max(d, m.expOf(v));
    return d;
}

std::set<AtomId> Poly::atoms() const {
    std::set<AtomId> s;
    for (auto& [m, c] : t_)
        for (auto& [a, k] : m.e) s.insert(a);
    return s;
}

const Mono& Poly::leadingMono() const {
    if (t_.empty()) throw InternalError("leadingMono of zero polynomial");
    return t_.rbegin()->first;
}

const GRat& Poly::leadingCoeff() const {
    if (t_.empty()) throw InternalError("leadingCoeff of zero polynomial");
    return t_.rbegin()->second;
}

void Poly::addTerm(const Mono& m, const GRat& c) {
    if (c.isZero()) return;
    auto it = t_.find(m);
    if (it == t_.end()) {
        t_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.isZero()) t_.erase(it);
    }
}

// ---------------------------------------------------------------------------
// Poly arithmetic

Poly operator+(const Poly& a, const Poly& b) {
    Poly r = a;
    for (auto& [m, c] : b.t_) r.addTerm(m, c);
    return r;
}

Poly operator-(const Poly& a, const Poly& b) {
    Poly r = a;
    for (auto& [m, c] : b.t_) r.addTerm(m, -c);
    return r;
}

Poly operator-(const Poly& a) {
    Poly r;
    for (auto& [m, c] : a.t_) r.t_.emplace(m, -c);
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (auto& [ma, ca] : a.t_)
        for (auto& [mb, cb] : b.t_) r.addTerm(ma * mb, ca * cb);
    return r;
}

Poly Poly::scaled(const GRat& c) const {
    Poly r;
    if (c.isZero()) return r;
    for (auto& [m, k] : t_) r.t_.emplace(m, k * c);
    return r;
}

Poly Poly::mulTerm(const Mono& m, const GRat& c) const {
    Poly r;
    if (c.isZero()) return r;
    for (auto& [mm, k] : t_) r.t_.emplace(mm * m, k * c);
    return r;
}

Poly Poly::pow(int n) const {
    if (n < 0) throw InternalError("negative polynomial power");
    Poly r = 1;
    Poly base = *this;
    while (n > 0) {
        if (n & 1) r *= base;
        base *= base;
        n >>= 1;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Calculus and structure maps

Poly Poly::derivative(AtomId v) const {
    Poly r;
    for (auto& [m, c] : t_) {
        for (size_t idx = 0; idx < m.e.size(); ++idx) {
            auto [a, k] = m.e[idx];
            const AtomInfo& ai = symbols::info(a);
            AtomId factorDeriv;
            if (ai.kind == AtomKind::Variable) {
                if (a != v) continue;
                factorDeriv = 0;  // d a / d v == 1
            } else {
                if (ai.arg != v) continue;
                factorDeriv = symbols::derivative(a);
            }
            // d(a^k)/dv = k a^(k-1) * (da/dv), times the untouched factors.
            Mono rest;
            for (size_t j = 0; j < m.e.size(); ++j) {
                if (j == idx) {
                    if (k > 1) rest.e.emplace_back(a, k - 1);
                } else {
                    rest.e.push_back(m.e[j]);
                }
            }
            Poly factor = 1;
            if (ai.kind == AtomKind::Function) factor = Poly::atom(factorDeriv);
            r += factor.mulTerm(rest, c * GRat(k));
        }
    }
    return r;
}

Poly Poly::conjugate() const {
    Poly r;
    for (auto& [m, c] : t_) {
        Mono cm;
        cm.e.reserve(m.e.size());
        for (auto& [a, k] : m.e) cm.e.emplace_back(symbols::info(a).conj, k);
        std::sort(cm.e.begin(), cm.e.end(),
                  [](auto& x, auto& y) { return x.first < y.first; });
        r.addTerm(cm, c.conj());
    }
    return r;
}

GRat Poly::evaluate(const std::map<AtomId, GRat>& point) const {
    GRat total(0);
    for (auto& [m, c] : t_) {
        GRat v = c;
        for (auto& [a, k] : m.e) {
            auto it = point.find(a);
            if (it == point.end())
                throw UnknownVariable("no value given for '" + symbols::info(a).name + "'");
            GRat p(1);
            for (int j = 0; j < k; ++j) p *= it->second;
            v *= p;
        }
        total += v;
    }
    return total;
}

std::map<int, Poly> Poly::collect(AtomId v) const {
    std::map<int, Poly> r;
    for (auto& [m, c] : t_) {
        int k = m.expOf(v);
        Mono rest;
        for (auto& [a, e] : m.e)
            if (a != v) rest.e.emplace_back(a, e);
        r[k].addTerm(rest, c);
    }
    for (auto it = r.begin(); it != r.end();)
        it = it->second.isZero() ? r.erase(it) : std::next(it);
    return r;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string monoStr(const Mono& m) {
    std::string s;
    for (auto& [a, k] : m.e) {
        if (!s.empty()) s += "*";
        s += symbols::info(a).name;
        if (k != 1) s += "^" + std::to_string(k);
    }
    return s;
}

// Coefficient rendered for use as a multiplicative prefix.
std::string coeffStr(const GRat& c) {
    std::string s = c.str();
    bool wrapped = !s.empty() && s.front() == '(';
    if (!wrapped && s.find('/') != std::string::npos) s = "(" + s + ")";
    return s;
}

std::string termStr(const Mono& m, const GRat& c) {
    if (m.isOne()) return c.str();
    if (c.isOne()) return monoStr(m);
    if (c == GRat(-1)) return "-" + monoStr(m);
    return coeffStr(c) + "*" + monoStr(m);
}

// True when the rendered term starts with a unary minus that the joiner can
// absorb into " - ".
bool negLeading(const GRat& c) {
    if (c.im == 0) return c.re < 0;
    if (c.re == 0) return c.im < 0;
    return false;  // mixed coefficients print parenthesized
}

} // namespace

std::string Poly::str() const {
    if (t_.empty()) return "0";
    std::string s;
    bool first = true;
    // Descending deglex order reads naturally (highest degree first).
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        const auto& [m, c] = *it;
        if (first) {
            s = termStr(m, c);
            first = false;
        } else if (negLeading(c)) {
            s += " - " + termStr(m, -c);
        } else {
            s += " + " + termStr(m, c);
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Exact division

std::optional<Poly> tryDivide(const Poly& a, const Poly& b) {
    if (b.isZero()) throw InternalError("exact division by zero polynomial");
    if (a.isZero()) return Poly();
    if (b.isConstant()) return a.scaled(GRat(1) / b.constantValue());
    Poly q, r = a;
    const Mono& lmB = b.leadingMono();
    const GRat& lcB = b.leadingCoeff();
    while (!r.isZero()) {
        const Mono& lmR = r.leadingMono();
        if (!lmB.divides(lmR)) return std::nullopt;
        Mono qm = lmB.divInto(lmR);
        GRat qc = r.leadingCoeff() / lcB;
        q.addTerm(qm, qc);
        r -= b.mulTerm(qm, qc);
    }
    return q;
}

Poly divExact(const Poly& a, const Poly& b) {
    auto q = tryDivide(a, b);
    if (!q) throw InternalError("polynomial division is not exact");
    return *q;
}

// ---------------------------------------------------------------------------
// Gcd via content extraction and a primitive pseudo-remainder sequence

namespace {

using Uni = std::map<int, Poly>;  // univariate view: exponent -> coefficient

int uniDeg(const Uni& u) { return u.empty() ? -1 : u.rbegin()->first; }

// -- Univariate evaluation certificate ---------------------------------------
// Specializing every atom except the main variable at a random point can only
// enlarge the gcd (as long as the leading coefficients survive), so if the
// univariate images are coprime the primitive parts are coprime too.  Almost
// all gcd queries from fraction normalization end in "coprime", and the
// certificate answers those without any remainder sequence.

std::uint64_t mixSeed(std::uint64_t s) {
    s += 0x9e3779b97f4a7c15ull;
    s = (s ^ (s >> 30)) * 0xbf58476d1ce4e5b9ull;
    s = (s ^ (s >> 27)) * 0x94d049bb133111ebull;
    return s ^ (s >> 31);
}

// Modular image arithmetic for the gcd-degree certificate.  The modulus is
// the Mersenne prime 2^61-1, which is 3 mod 4, so the Gaussian residues
// Z_p[i] form a field and Euclid's algorithm applies to reduced images.
// Everything here is single-word arithmetic: the degree bound costs O(n^2)
// machine operations no matter how fat the exact coefficients are.
constexpr std::uint64_t kCertP = (1ull << 61) - 1;

std::uint64_t certAdd(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a + b;
    return s >= kCertP ? s - kCertP : s;
}
std::uint64_t certSub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kCertP - b; }
std::uint64_t certMul(std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kCertP);
}
std::uint64_t certPow(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = certMul(r, a);
        a = certMul(a, a);
        e >>= 1;
    }
    return r;
}
std::uint64_t certInv(std::uint64_t a) { return certPow(a, kCertP - 2); }

struct CertC {
    std::uint64_t re = 0, im = 0;
    bool isZero() const { return re == 0 && im == 0; }
};
CertC certAdd(const CertC& a, const CertC& b) { return {certAdd(a.re, b.re), certAdd(a.im, b.im)}; }
CertC certSub(const CertC& a, const CertC& b) { return {certSub(a.re, b.re), certSub(a.im, b.im)}; }
CertC certMul(const CertC& a, const CertC& b) {
    return {certSub(certMul(a.re, b.re), certMul(a.im, b.im)),
            certAdd(certMul(a.re, b.im), certMul(a.im, b.re))};
}
CertC certInv(const CertC& a) {
    std::uint64_t n = certAdd(certMul(a.re, a.re), certMul(a.im, a.im));
    std::uint64_t ni = certInv(n);  // nonzero: p = 3 mod 4 keeps re^2+im^2 != 0
    return {certMul(a.re, ni), certMul(kCertP - 1, certMul(a.im, ni))};
}

// Residue of an arbitrary-precision rational; fails when the denominator
// vanishes mod p.
bool certResidue(const Rat& q, std::uint64_t& out) {
    BigInt n = numerator(q) % kCertP, d = denominator(q) % kCertP;
    if (d == 0) return false;
    std::uint64_t nn = static_cast<std::uint64_t>(n < 0 ? n + kCertP : n);
    out = certMul(nn, certInv(static_cast<std::uint64_t>(d)));
    return true;
}

// Dense modular coefficients of the image of p in v with every other atom
// evaluated at a seed-drawn residue.  Fails when a denominator reduces to
// zero or the leading coefficient dies under the evaluation.
bool evalImage(const Poly& p, AtomId v, std::uint64_t seed, std::vector<CertC>& out) {
    int d = p.degreeIn(v);
    out.assign(static_cast<std::size_t>(d) + 1, CertC{});
    for (const auto& [m, c] : p.terms()) {
        CertC val;
        if (!certResidue(c.re, val.re) || !certResidue(c.im, val.im)) return false;
        int ev = 0;
        for (const auto& [atom, exp] : m.e) {
            if (atom == v) {
                ev = exp;
                continue;
            }
            std::uint64_t h = mixSeed(seed ^ (0x517cc1b727220a95ull * (atom + 1)));
            std::uint64_t x = 2 + h % (kCertP - 4);
            CertC xe{certPow(x, static_cast<std::uint64_t>(exp)), 0};
            val = certMul(val, xe);
        }
        out[static_cast<std::size_t>(ev)] = certAdd(out[static_cast<std::size_t>(ev)], val);
    }
    return !out.back().isZero();
}

// Degree of the gcd of two dense univariate polynomials over Z_p[i].
int imageGcdDegree(std::vector<CertC> p, std::vector<CertC> q) {
    auto trim = [](std::vector<CertC>& u) {
        while (!u.empty() && u.back().isZero()) u.pop_back();
    };
    trim(p);
    trim(q);
    if (p.size() < q.size()) std::swap(p, q);
    while (!q.empty()) {
        CertC li = certInv(q.back());
        while (p.size() >= q.size()) {
            CertC f = certMul(p.back(), li);
            std::size_t off = p.size() - q.size();
            if (!f.isZero())
                for (std::size_t j = 0; j + 1 < q.size(); ++j)
                    p[off + j] = certSub(p[off + j], certMul(f, q[j]));
            p.pop_back();
        }
        trim(p);
        std::swap(p, q);
    }
    return static_cast<int>(p.size()) - 1;
}

// Clear rational denominators and divide out the integer content, so the
// remainder sequence runs on Gaussian-integer coefficients of content one.
// This is what keeps the coefficient arithmetic cheap: monic-rational
// scaling would push boost's per-operation rational normalization into
// every polynomial product of the sequence.
void uniIntegerNormalize(Uni& u) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::gcd;
    using boost::multiprecision::lcm;
    using boost::multiprecision::numerator;
    BigInt l = 1;
    for (const auto& [k, c] : u)
        for (const auto& [m, q] : c.terms()) {
            l = lcm(l, denominator(q.re));
            l = lcm(l, denominator(q.im));
        }
    BigInt g = 0;
    for (const auto& [k, c] : u)
        for (const auto& [m, q] : c.terms()) {
            g = gcd(g, numerator(q.re) * (l / denominator(q.re)));
            g = gcd(g, numerator(q.im) * (l / denominator(q.im)));
        }
    if (g == 0) return;
    if (g < 0) g = -g;
    GRat factor{Rat(l, g)};
    if (factor.isOne()) return;
    for (auto& [k, c] : u) c = c.scaled(factor);
}

Poly uniToPoly(const Uni& u, AtomId v) {
    Poly r;
    for (auto& [k, c] : u) r += c * Poly::atom(v, k);
    return r;
}

void uniAddScaled(Uni& target, const Uni& src, const Poly& scale, int shift) {
    for (auto& [k, c] : src) {
        Poly& slot = target[k + shift];
        slot += c * scale;
        if (slot.isZero()) target.erase(k + shift);
    }
}

void uniScale(Uni& u, const Poly& s) {
    for (auto& [k, c] : u) c *= s;
}

// Pseudo-remainder of p by q in the variable v: repeatedly multiply through by
// the leading coefficient of q so every elimination step stays polynomial.
Uni pseudoRem(Uni p, const Uni& q) {
    int dq = uniDeg(q);
    const Poly& lq = q.rbegin()->second;
    while (uniDeg(p) >= dq) {
        int dp = uniDeg(p);
        Poly lp = p.rbegin()->second;
        uniScale(p, lq);
        uniAddScaled(p, q, -lp, dp - dq);
        if (uniDeg(p) == dp)
            throw InternalError("pseudo-remainder failed to reduce degree");
    }
    return p;
}

Poly contentOf(const Uni& u) {
    Poly c;
    for (auto& [k, coeff] : u) {
        c = c.isZero() ? coeff : gcdPoly(c, coeff);
        if (c.isConstant() && !c.isZero()) return Poly(1);
    }
    return c;
}

// Remove the polynomial content and renormalize the coefficients to
// content-one Gaussian integers; the constant rescaling keeps the remainder
// sequence from growing without bound.
Uni prsNormalize(const Uni& u, const Poly& content) {
    Uni r;
    if (content == Poly(1)) {
        r = u;
    } else {
        for (auto& [k, c] : u) r.emplace(k, divExact(c, content));
    }
    uniIntegerNormalize(r);
    return r;
}

Poly makeMonic(const Poly& p) {
    if (p.isZero()) return p;
    return p.scaled(GRat(1) / p.leadingCoeff());
}

// Gcd of a single-term polynomial with an arbitrary one: the common monomial
// factor (coefficients are units).
Poly monoGcd(const Poly& single, const Poly& other) {
    const Mono& m = single.leadingMono();
    Mono g;
    for (auto& [atom, exp] : m.e) {
        int minExp = exp;
        for (auto& [om, oc] : other.terms()) {
            minExp = std::min(minExp, om.expOf(atom));
            if (minExp == 0) break;
        }
        if (minExp > 0) g.e.emplace_back(atom, minExp);
    }
    Poly r;
    r.addTerm(g, GRat(1));
    return r;
}

} // namespace

Poly gcdPoly(const Poly& a, const Poly& b) {
    if (a.isZero()) return makeMonic(b);
    if (b.isZero()) return makeMonic(a);
    if (a.isConstant() || b.isConstant()) return Poly(1);
    if (a == b) return makeMonic(a);
    if (a.terms().size() == 1) return monoGcd(a, b);
    if (b.terms().size() == 1) return monoGcd(b, a);

    // Trial divisions catch the very common "one operand divides the other"
    // case (e.g. cancelling a known factor) without running the remainder
    // sequence.
    if (auto q = tryDivide(a, b)) {
        (void)q;
        return makeMonic(b);
    }
    if (auto q = tryDivide(b, a)) {
        (void)q;
        return makeMonic(a);
    }

    // Main variable: the smallest atom appearing in either operand.
    std::set<AtomId> as = a.atoms(), bs = b.atoms();
    AtomId v = std::min(*as.begin(), *bs.begin());

    // If only one side involves v, the gcd divides a v-free polynomial, so v
    // can only enter through the other side's content.
    if (!a.dependsOn(v)) return gcdPoly(a, contentOf(b.collect(v)));
    if (!b.dependsOn(v)) return gcdPoly(contentOf(a.collect(v)), b);

    Uni ua = a.collect(v), ub = b.collect(v);
    Poly ca = contentOf(ua), cb = contentOf(ub);
    Poly cg = gcdPoly(ca, cb);
    Uni p = prsNormalize(ua, ca), q = prsNormalize(ub, cb);
    if (uniDeg(p) < uniDeg(q)) std::swap(p, q);
    Poly pa = uniToPoly(p, v), pb = uniToPoly(q, v);

    // Certified upper bound on the gcd degree in v from two image gcds; a
    // bound of zero settles the primitive parts as coprime outright.
    int bound = uniDeg(q);
    for (std::uint64_t trial = 0; trial < 2; ++trial) {
        std::vector<CertC> ia, ib;
        std::uint64_t seed = mixSeed(0x8f1bbcdc5d2f0e63ull + trial);
        if (evalImage(pa, v, seed, ia) && evalImage(pb, v, seed, ib))
            bound = std::min(bound, imageGcdDegree(std::move(ia), std::move(ib)));
    }
    if (bound == 0) return makeMonic(cg);

    while (true) {
        // Any primitive remainder that reaches the certified bound is a
        // candidate for the gcd itself; verifying it by division cuts the
        // tail off the remainder sequence.
        if (uniDeg(q) <= bound) {
            Poly cand = uniToPoly(q, v);
            if (tryDivide(pa, cand) && tryDivide(pb, cand))
                return makeMonic(cg * cand);
        }
        Uni r = pseudoRem(p, q);
        if (r.empty()) break;
        if (uniDeg(r) == 0) {
            // Coprime primitive parts: the whole gcd is the content gcd.
            return makeMonic(cg);
        }
        p = std::move(q);
        q = prsNormalize(r, contentOf(r));
    }
    Poly g = uniToPoly(q, v);
    return makeMonic(cg * g);
}

} // namespace gengeo
