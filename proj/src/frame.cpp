#include "gengeo/frame.hpp"

#include "gengeo/errors.hpp"

namespace gengeo {

FramePtr Frame::coordinate(const Chart& chart) {
    auto f = std::shared_ptr<Frame>(new Frame());
    f->name_ = chart.name;
    f->chart_ = chart;
    f->coordinate_ = true;
    int n = chart.dim();
    f->action_.assign(n, std::vector<Scalar>(n, Scalar()));
    for (int j = 0; j < n; ++j) f->action_[j][j] = Scalar(1);
    f->c_.assign(n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n, Scalar())));
    f->conjIndex_.resize(n);
    for (int j = 0; j < n; ++j) f->conjIndex_[j] = j;
    if (chart.complexPaired) {
        int m = chart.m();
        for (int j = 0; j < m; ++j) {
            f->conjIndex_[j] = j + m;
            f->conjIndex_[j + m] = j;
        }
    }
    return f;
}

FramePtr Frame::fromStructure(std::string name, Chart chart,
                              std::vector<std::vector<Scalar>> action,
                              std::vector<std::vector<std::vector<Scalar>>> c) {
    auto f = std::shared_ptr<Frame>(new Frame());
    f->name_ = std::move(name);
    f->chart_ = std::move(chart);
    f->action_ = std::move(action);
    f->c_ = std::move(c);
    int n = f->n();
    if (n == 0) throw BadArgument("frame must contain at least one vector field");
    for (auto& row : f->action_)
        if (static_cast<int>(row.size()) != f->chart_.dim())
            throw BadArgument("frame action row length must match chart dimension");
    if (static_cast<int>(f->c_.size()) != n)
        throw BadArgument("structure function table must be n x n x n");
    for (auto& row : f->c_) {
        if (static_cast<int>(row.size()) != n)
            throw BadArgument("structure function table must be n x n x n");
        for (auto& entry : row)
            if (static_cast<int>(entry.size()) != n)
                throw BadArgument("structure function table must be n x n x n");
    }
    f->conjIndex_.resize(n);
    for (int j = 0; j < n; ++j) f->conjIndex_[j] = j;
    f->validate();
    return f;
}

void Frame::validate() const {
    int n = this->n();
    int m = chart_.dim();
    // Antisymmetry of the structure functions.
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int k = 0; k < n; ++k)
                if (c_[a][b][k] != -c_[b][a][k])
                    throw BadArgument("structure functions must be antisymmetric in the "
                                      "first two indices");
    // The bracket of frame actions on chart variables must agree with the
    // structure functions: E_a(E_b(x_j)) - E_b(E_a(x_j)) = sum_k c(a,b,k) E_k(x_j).
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int j = 0; j < m; ++j) {
                Scalar lhs = apply(a, action_[b][j]) - apply(b, action_[a][j]);
                Scalar rhs;
                for (int k = 0; k < n; ++k) rhs += c_[a][b][k] * action_[k][j];
                if (lhs != rhs)
                    throw BadArgument("frame action is incompatible with the structure "
                                      "functions");
            }
    // Jacobi identity:
    // sum_cyc(a,b,c) [ sum_e c(a,b,e) c(e,c,d) - E_c(c(a,b,d)) ] = 0.
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int cc = b + 1; cc < n; ++cc)
                for (int d = 0; d < n; ++d) {
                    Scalar total;
                    int tri[3][3] = {{a, b, cc}, {b, cc, a}, {cc, a, b}};
                    for (auto& t : tri) {
                        for (int e = 0; e < n; ++e)
                            total += c_[t[0]][t[1]][e] * c_[e][t[2]][d];
                        total -= apply(t[2], c_[t[0]][t[1]][d]);
                    }
                    if (!total.isZero())
                        throw BadArgument("structure functions violate the Jacobi identity");
                }
}

Scalar Frame::apply(int a, const Scalar& f) const {
    Scalar r;
    for (int j = 0; j < chart_.dim(); ++j) {
        if (action_[a][j].isZero()) continue;
        r += action_[a][j] * f.derivative(chart_.vars[j]);
    }
    return r;
}

std::vector<Scalar> Frame::diff(const Scalar& f) const {
    std::vector<Scalar> r(n());
    for (int a = 0; a < n(); ++a) r[a] = apply(a, f);
    return r;
}

Vec Frame::bracket(const Vec& x, const Vec& y) const {
    int nn = n();
    if (static_cast<int>(x.size()) != nn || static_cast<int>(y.size()) != nn)
        throw BadArgument("vector field components must match the frame dimension");
    Vec r(nn);
    for (int k = 0; k < nn; ++k) {
        Scalar s;
        for (int a = 0; a < nn; ++a) {
            if (!x[a].isZero()) s += x[a] * apply(a, y[k]);
            if (!y[a].isZero()) s -= y[a] * apply(a, x[k]);
        }
        for (int a = 0; a < nn; ++a)
            for (int b = 0; b < nn; ++b)
                if (!x[a].isZero() && !y[b].isZero() && !c_[a][b][k].isZero())
                    s += x[a] * y[b] * c_[a][b][k];
        r[k] = s;
    }
    return r;
}

Scalar Frame::applyVec(const Vec& x, const Scalar& f) const {
    Scalar r;
    for (int a = 0; a < n(); ++a)
        if (!x[a].isZero()) r += x[a] * apply(a, f);
    return r;
}

void requireSameFrame(const FramePtr& a, const FramePtr& b) {
    if (a != b)
        throw FrameMismatch("operands live over different frames ('" +
                            (a ? a->name() : std::string("<null>")) + "' vs '" +
                            (b ? b->name() : std::string("<null>")) + "')");
}

} // namespace gengeo
