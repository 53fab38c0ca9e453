#include "gengeo/linalg.hpp"

#include "gengeo/errors.hpp"

namespace gengeo {

SMat smatIdentity(int n) {
    SMat a(n, SVec(n));
    for (int i = 0; i < n; ++i) a[i][i] = Scalar(1);
    return a;
}

SMat smatZero(int rows, int cols) { return SMat(rows, SVec(cols)); }

SMat smatTranspose(const SMat& a) {
    if (a.empty()) return a;
    SMat r(a[0].size(), SVec(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) r[j][i] = a[i][j];
    return r;
}

SMat smatMul(const SMat& a, const SMat& b) {
    if (a.empty() || b.empty()) return {};
    size_t n = a.size(), k = b.size(), m = b[0].size();
    if (a[0].size() != k) throw InternalError("matrix product dimension mismatch");
    SMat r(n, SVec(m));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l].isZero()) continue;
            for (size_t j = 0; j < m; ++j) {
                if (b[l][j].isZero()) continue;
                r[i][j] += a[i][l] * b[l][j];
            }
        }
    return r;
}

SVec smatVec(const SMat& a, const SVec& x) {
    SVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != x.size()) throw InternalError("matrix-vector dimension mismatch");
        for (size_t j = 0; j < x.size(); ++j)
            if (!a[i][j].isZero() && !x[j].isZero()) r[i] += a[i][j] * x[j];
    }
    return r;
}

SMat smatAdd(const SMat& a, const SMat& b) {
    SMat r = a;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) r[i][j] += b[i][j];
    return r;
}

SMat smatSub(const SMat& a, const SMat& b) {
    SMat r = a;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) r[i][j] -= b[i][j];
    return r;
}

SMat smatScale(const Scalar& s, const SMat& a) {
    SMat r = a;
    for (auto& row : r)
        for (auto& e : row) e *= s;
    return r;
}

bool smatIsZero(const SMat& a) {
    for (auto& row : a)
        for (auto& e : row)
            if (!e.isZero()) return false;
    return true;
}

namespace {

// Clears the denominators of one matrix row: returns polynomial entries
// num * (D / den) where D is the least common denominator of the row.
// Row scaling changes neither the reduced row echelon form nor, when the
// scale is tracked separately, the determinant.
std::vector<Poly> clearRow(const SVec& row, Poly* scale = nullptr) {
    Poly d(1);
    for (const Scalar& e : row) {
        if (e.isPolynomial()) continue;
        Poly g = gcdPoly(d, e.den());
        d = d * divExact(e.den(), g);
    }
    std::vector<Poly> out(row.size());
    for (size_t j = 0; j < row.size(); ++j)
        out[j] = row[j].num() * divExact(d, row[j].den());
    if (scale) *scale = d;
    return out;
}

} // namespace

// Fraction-free Gauss-Jordan elimination (Bareiss/Montante one-step
// division scheme).  Every intermediate entry is a minor of the cleared
// input matrix, so the division by the previous pivot is exact and no
// rational-function normalization happens until the final writeback.
int smatRref(SMat& a, std::vector<int>* pivotCols) {
    if (pivotCols) pivotCols->clear();
    if (a.empty()) return 0;
    int rows = static_cast<int>(a.size());
    int cols = static_cast<int>(a[0].size());

    std::vector<std::vector<Poly>> p(rows);
    for (int i = 0; i < rows; ++i) p[i] = clearRow(a[i]);

    const Poly one(1);
    Poly prev = one;
    std::vector<int> pcols;
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        size_t best = 0;
        for (int r = rank; r < rows; ++r) {
            size_t sz = p[r][col].terms().size();
            if (sz != 0 && (pivot < 0 || sz < best)) {
                pivot = r;
                best = sz;
            }
        }
        if (pivot < 0) continue;
        std::swap(p[rank], p[pivot]);
        const Poly piv = p[rank][col];
        for (int r = 0; r < rows; ++r) {
            if (r == rank) continue;
            const Poly f = p[r][col];
            for (int j = 0; j < cols; ++j) {
                Poly t = p[r][j] * piv;
                if (!f.isZero() && !p[rank][j].isZero()) t = t - f * p[rank][j];
                p[r][j] = (prev == one) ? std::move(t) : divExact(t, prev);
            }
        }
        prev = piv;
        pcols.push_back(col);
        ++rank;
    }

    for (int r = 0; r < rows; ++r)
        for (int j = 0; j < cols; ++j) a[r][j] = Scalar();
    for (int r = 0; r < rank; ++r) {
        int c = pcols[r];
        a[r][c] = Scalar(1);
        for (int j = c + 1; j < cols; ++j)
            if (!p[r][j].isZero()) a[r][j] = Scalar(p[r][j], p[r][c]);
    }
    if (pivotCols) *pivotCols = pcols;
    return rank;
}

// Fraction-free triangularization (Bareiss): the final corner entry is the
// determinant of the cleared matrix, which the tracked row scales relate
// back to the original.
Scalar smatDet(SMat a) {
    int n = static_cast<int>(a.size());
    for (auto& row : a)
        if (static_cast<int>(row.size()) != n)
            throw InternalError("determinant of a non-square matrix");
    if (n == 0) return Scalar(1);

    Poly denom(1);
    std::vector<std::vector<Poly>> p(n);
    for (int i = 0; i < n; ++i) {
        Poly d;
        p[i] = clearRow(a[i], &d);
        denom = denom * d;
    }

    const Poly one(1);
    Poly prev = one;
    bool negate = false;
    for (int col = 0; col < n - 1; ++col) {
        int pivot = -1;
        size_t best = 0;
        for (int r = col; r < n; ++r) {
            size_t sz = p[r][col].terms().size();
            if (sz != 0 && (pivot < 0 || sz < best)) {
                pivot = r;
                best = sz;
            }
        }
        if (pivot < 0) return Scalar();
        if (pivot != col) {
            std::swap(p[col], p[pivot]);
            negate = !negate;
        }
        const Poly piv = p[col][col];
        for (int r = col + 1; r < n; ++r) {
            const Poly f = p[r][col];
            for (int j = col + 1; j < n; ++j) {
                Poly t = p[r][j] * piv;
                if (!f.isZero() && !p[col][j].isZero()) t = t - f * p[col][j];
                p[r][j] = (prev == one) ? std::move(t) : divExact(t, prev);
            }
            p[r][col] = Poly();
        }
        prev = piv;
    }
    Poly det = p[n - 1][n - 1];
    if (negate) det = -det;
    return Scalar(std::move(det), std::move(denom));
}

SMat smatInverse(const SMat& a) {
    int n = static_cast<int>(a.size());
    SMat aug(n, SVec(2 * n));
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(a[i].size()) != n)
            throw InternalError("inverse of a non-square matrix");
        for (int j = 0; j < n; ++j) aug[i][j] = a[i][j];
        aug[i][n + i] = Scalar(1);
    }
    std::vector<int> pivots;
    int rank = smatRref(aug, &pivots);
    if (rank < n || pivots[n - 1] >= n)
        throw BadArgument("matrix is singular");
    SMat r(n, SVec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[i][j] = aug[i][n + j];
    return r;
}

std::vector<SVec> smatNullspace(const SMat& a) {
    if (a.empty()) return {};
    SMat m = a;
    std::vector<int> pivots;
    smatRref(m, &pivots);
    int cols = static_cast<int>(a[0].size());
    std::vector<bool> isPivot(cols, false);
    for (int p : pivots) isPivot[p] = true;
    std::vector<SVec> basis;
    for (int j = 0; j < cols; ++j) {
        if (isPivot[j]) continue;
        SVec v(cols);
        v[j] = Scalar(1);
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][j];
        basis.push_back(std::move(v));
    }
    return basis;
}

SVec smatSolve(const SMat& a, const SVec& b) {
    if (a.empty()) {
        for (auto& e : b)
            if (!e.isZero()) throw BadArgument("linear system is inconsistent");
        return {};
    }
    int rows = static_cast<int>(a.size());
    int cols = static_cast<int>(a[0].size());
    if (static_cast<int>(b.size()) != rows)
        throw InternalError("right-hand side length mismatch");
    SMat aug(rows, SVec(cols + 1));
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) aug[i][j] = a[i][j];
        aug[i][cols] = b[i];
    }
    std::vector<int> pivots;
    smatRref(aug, &pivots);
    for (int p : pivots)
        if (p == cols) throw BadArgument("linear system is inconsistent");
    SVec x(cols);
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][cols];
    return x;
}

} // namespace gengeo
