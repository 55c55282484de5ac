// partial_trace.hpp
// Reduced density matrices of sparse pure states. The general algorithm
// groups amplitude pairs whose multi-index agrees on every traced-out party;
// it assumes nothing about orthonormality. The closed form for orthonormal
// complementary decompositions is provided separately so the two routes can
// be checked against one another.

#pragma once

#include <span>
#include <vector>

#include "qmask/density_matrix.hpp"
#include "qmask/sparse_state.hpp"

namespace qmask {

struct TraceDiagnostics {
    double input_norm_sq = 0.0;
    // Set when the input deviates from unit norm by more than NORM_TOL.
    // The reduced state is still returned, scaled by the actual norm.
    bool norm_warning = false;
};

// Reduced state of the single party `keep`.
DensityMatrix partial_trace(const SparseState& state, int keep,
                            TraceDiagnostics* diag = nullptr);

// Joint reduced state of a non-empty, strictly increasing party subset.
// Row/column index is the mixed-radix flattening of the kept digits.
DensityMatrix partial_trace_general(const SparseState& state,
                                    const std::vector<int>& keep);

// Σ_k |c_k|^2 |ψ_k⟩⟨ψ_k| — exact reduced state when the complementary
// factors of the decomposition are orthonormal. locals[k] is a dense
// single-party vector; all must share one dimension.
DensityMatrix closed_form_reduced_state(std::span<const Complex> coeffs,
                                        const std::vector<std::vector<Complex>>& locals);

} // namespace qmask
