#pragma once

#include <vector>

#include "gengeo/scalar.hpp"

namespace gengeo {

// Dense matrix over the exact scalar field (rational functions with Gaussian
// rational coefficients).  All eliminations are exact, so pivoting is purely
// structural: the first nonzero candidate is used.
using SMat = std::vector<std::vector<Scalar>>;
using SVec = std::vector<Scalar>;

SMat smatIdentity(int n);
SMat smatZero(int rows, int cols);
SMat smatTranspose(const SMat& a);
SMat smatMul(const SMat& a, const SMat& b);
SVec smatVec(const SMat& a, const SVec& x);
SMat smatAdd(const SMat& a, const SMat& b);
SMat smatSub(const SMat& a, const SMat& b);
SMat smatScale(const Scalar& s, const SMat& a);
bool smatIsZero(const SMat& a);

// In-place reduction to reduced row echelon form; returns the rank and, when
// requested, the pivot columns.
int smatRref(SMat& a, std::vector<int>* pivotCols = nullptr);

Scalar smatDet(SMat a);

// Inverse of a square matrix; raises BadArgument when singular.
SMat smatInverse(const SMat& a);

// Basis of the right nullspace in reduced-echelon form: one vector per free
// column, with entry 1 in that column and support otherwise only on pivot
// columns.  Basis vectors are ordered by ascending free column.
std::vector<SVec> smatNullspace(const SMat& a);

// One solution of A x = b with all free variables set to zero; raises
// BadArgument when the system is inconsistent.
SVec smatSolve(const SMat& a, const SVec& b);

} // namespace gengeo
