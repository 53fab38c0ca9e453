#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gengeo/scalar.hpp"
#include "gengeo/symbols.hpp"

namespace gengeo {

class Frame;
using FramePtr = std::shared_ptr<const Frame>;

// Vector field expressed in frame components (length = frame dimension).
using Vec = std::vector<Scalar>;

// A frame over a chart: an ordered family of vector fields E_0..E_{n-1},
// given by
//   * their action on the chart variables: E_a(x_j) = action[a][j], and
//   * structure functions [E_a, E_b] = sum_c c(a,b,c) E_c.
// The frame dimension may exceed the chart dimension (invariant frames over a
// symmetry-reduced chart); the two pieces of data are validated against each
// other and against the Jacobi identity on construction.
class Frame {
public:
    // Coordinate frame of a chart: E_j = d/dx_j, vanishing structure functions.
    static FramePtr coordinate(const Chart& chart);

    // General frame with explicit action matrix (n rows, chart.dim() columns)
    // and structure functions c[a][b] (vectors of length n, antisymmetric in
    // a,b).  Raises BadArgument when the data is inconsistent.
    static FramePtr fromStructure(std::string name, Chart chart,
                                  std::vector<std::vector<Scalar>> action,
                                  std::vector<std::vector<std::vector<Scalar>>> c);

    const std::string& name() const { return name_; }
    const Chart& chart() const { return chart_; }
    int n() const { return static_cast<int>(action_.size()); }
    bool isCoordinate() const { return coordinate_; }

    // Structure function coefficient of E_k in [E_a, E_b].
    const Scalar& structure(int a, int b, int k) const { return c_[a][b][k]; }

    // Derivative of a scalar along frame vector E_a.
    Scalar apply(int a, const Scalar& f) const;

    // Coframe components of df: diff(f)[a] = E_a(f).
    std::vector<Scalar> diff(const Scalar& f) const;

    // Frame index of the complex conjugate of E_a (identity on real frames;
    // swaps the two halves of a coordinate frame on a complex-paired chart).
    int conjIndex(int a) const { return conjIndex_[a]; }

    // Lie bracket of vector fields in frame components.
    Vec bracket(const Vec& x, const Vec& y) const;

    // Apply a vector field (frame components) to a scalar.
    Scalar applyVec(const Vec& x, const Scalar& f) const;

private:
    Frame() = default;
    void validate() const;

    std::string name_;
    Chart chart_;
    bool coordinate_ = false;
    std::vector<std::vector<Scalar>> action_;           // n x chart.dim()
    std::vector<std::vector<std::vector<Scalar>>> c_;   // n x n x n
    std::vector<int> conjIndex_;
};

// Raises FrameMismatch unless both frames are the same object.
void requireSameFrame(const FramePtr& a, const FramePtr& b);

} // namespace gengeo
