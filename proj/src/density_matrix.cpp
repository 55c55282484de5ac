#include "qmask/density_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "qmask/errors.hpp"

namespace qmask {

DensityMatrix::DensityMatrix(int dim) : dim_(dim) {
    if (dim < 1) throw ArgumentError("DensityMatrix: dimension must be >= 1");
    a_.assign(static_cast<std::size_t>(dim) * dim, Complex{0.0, 0.0});
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
    DensityMatrix m(dim);
    const double w = 1.0 / dim;
    for (int i = 0; i < dim; ++i) m.at(i, i) = Complex{w, 0.0};
    return m;
}

Complex DensityMatrix::trace() const {
    Complex t{0.0, 0.0};
    for (int i = 0; i < dim_; ++i) t += at(i, i);
    return t;
}

double DensityMatrix::hermiticity_deviation() const {
    double dev = 0.0;
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c)
            dev = std::max(dev, std::abs(at(r, c) - std::conj(at(c, r))));
    return dev;
}

double DensityMatrix::max_abs_diff(const DensityMatrix& other) const {
    if (dim_ != other.dim_)
        throw DimensionMismatchError("DensityMatrix: comparing different dimensions");
    double dev = 0.0;
    for (std::size_t i = 0; i < a_.size(); ++i)
        dev = std::max(dev, std::abs(a_[i] - other.a_[i]));
    return dev;
}

namespace {

double off_diagonal_sum(const std::vector<Complex>& w, int n) {
    double s = 0.0;
    for (int r = 0; r < n; ++r)
        for (int c = r + 1; c < n; ++c) s += std::norm(w[static_cast<std::size_t>(r) * n + c]);
    return s;
}

} // namespace

std::vector<double> hermitian_eigenvalues(const DensityMatrix& m) {
    const int n = m.dim();
    std::vector<Complex> w(static_cast<std::size_t>(n) * n);
    double scale = 0.0;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            // Work on the Hermitian part; asymmetry from rounding is folded in.
            w[static_cast<std::size_t>(r) * n + c] =
                0.5 * (m.at(r, c) + std::conj(m.at(c, r)));
            scale = std::max(scale, std::abs(w[static_cast<std::size_t>(r) * n + c]));
        }
    if (scale == 0.0) return std::vector<double>(static_cast<std::size_t>(n), 0.0);

    auto W = [&](int r, int c) -> Complex& { return w[static_cast<std::size_t>(r) * n + c]; };
    const double stop = 1e-30 * scale * scale * n * n;

    for (int sweep = 0; sweep < 64 && off_diagonal_sum(w, n) > stop; ++sweep) {
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const Complex apq = W(p, q);
                if (std::abs(apq) <= 1e-300) {
                    W(p, q) = W(q, p) = Complex{0.0, 0.0};
                    continue;
                }
                const double app = W(p, p).real();
                const double aqq = W(q, q).real();

                // Exact eigen-decomposition of the 2x2 block [[app, apq], [conj(apq), aqq]].
                const double delta = 0.5 * (app - aqq);
                const double mag = std::abs(apq);
                const double r = std::hypot(delta, mag);
                const double lam_hi = 0.5 * (app + aqq) + r;
                const double lam_lo = 0.5 * (app + aqq) - r;

                // Eigenvector for lam_hi: (apq, lam_hi - app), with (1,0) fallback
                // when the block is already diagonal to rounding.
                Complex x1 = apq;
                Complex y1 = Complex{lam_hi - app, 0.0};
                double nrm = std::sqrt(std::norm(x1) + std::norm(y1));
                if (nrm < 1e-300) {
                    x1 = {1.0, 0.0};
                    y1 = {0.0, 0.0};
                    nrm = 1.0;
                }
                x1 /= nrm;
                y1 /= nrm;
                // Orthonormal complement.
                const Complex x2 = -std::conj(y1);
                const Complex y2 = std::conj(x1);

                // M <- J^dagger M J with J = I except J(p,p)=x1, J(q,p)=y1,
                // J(p,q)=x2, J(q,q)=y2.
                for (int i = 0; i < n; ++i) {
                    if (i == p || i == q) continue;
                    const Complex mip = W(i, p);
                    const Complex miq = W(i, q);
                    W(i, p) = mip * x1 + miq * y1;
                    W(i, q) = mip * x2 + miq * y2;
                    W(p, i) = std::conj(W(i, p));
                    W(q, i) = std::conj(W(i, q));
                }
                W(p, p) = Complex{lam_hi, 0.0};
                W(q, q) = Complex{lam_lo, 0.0};
                W(p, q) = W(q, p) = Complex{0.0, 0.0};
            }
        }
    }

    std::vector<double> eig(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) eig[i] = W(i, i).real();
    std::sort(eig.begin(), eig.end());
    return eig;
}

double min_eigenvalue(const DensityMatrix& m) {
    return hermitian_eigenvalues(m).front();
}

double trace_norm_diff(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim())
        throw DimensionMismatchError("trace_norm_diff: dimensions differ");
    DensityMatrix d(a.dim());
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) d.at(r, c) = a.at(r, c) - b.at(r, c);
    double t = 0.0;
    for (double lam : hermitian_eigenvalues(d)) t += std::abs(lam);
    return t;
}

} // namespace qmask
