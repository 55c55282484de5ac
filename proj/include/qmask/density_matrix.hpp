// density_matrix.hpp
// Dense Hermitian complex matrices for reduced states. All comparisons use
// the maximum absolute entrywise difference; trace norm and eigenvalue
// margins are computed only on the diagnostic path.

#pragma once

#include <complex>
#include <vector>

#include "qmask/util.hpp"

namespace qmask {

class DensityMatrix {
public:
    DensityMatrix() = default;
    explicit DensityMatrix(int dim);

    // I_dim / dim, the maximally mixed state.
    static DensityMatrix maximally_mixed(int dim);

    int dim() const { return dim_; }

    Complex& at(int row, int col) { return a_[static_cast<std::size_t>(row) * dim_ + col]; }
    const Complex& at(int row, int col) const {
        return a_[static_cast<std::size_t>(row) * dim_ + col];
    }

    Complex trace() const;

    // max |a(r,c) - conj(a(c,r))|
    double hermiticity_deviation() const;

    // max |a(r,c) - other(r,c)|; dims must match.
    double max_abs_diff(const DensityMatrix& other) const;

private:
    int dim_ = 0;
    std::vector<Complex> a_;
};

// Eigenvalues of a Hermitian matrix, ascending. Cyclic Jacobi with exact
// 2x2 block diagonalization; intended for the small matrices that appear as
// reduced states (dim <= a few dozen).
std::vector<double> hermitian_eigenvalues(const DensityMatrix& m);

double min_eigenvalue(const DensityMatrix& m);

// Trace norm ||a - b||_1 = sum of |eigenvalues| of the Hermitian difference.
double trace_norm_diff(const DensityMatrix& a, const DensityMatrix& b);

} // namespace qmask
