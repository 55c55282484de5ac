// sparse_state.hpp
// Sparse multipartite pure states: an association from basis multi-indices
// to complex amplitudes, with per-party local dimensions. Masked states have
// at most d^d (generalized-Bell) or d (Latin-square) nonzeros inside Hilbert
// spaces of dimension up to d^{2d}, so a dense vector is never materialized.

#pragma once

#include <complex>
#include <span>
#include <vector>

#include "qmask/errors.hpp"
#include "qmask/util.hpp"

namespace qmask {

// One basis site label per party, 0-based. 1-based only in file I/O.
using MultiIndex = std::vector<int>;

struct AmpEntry {
    MultiIndex idx;
    Complex amp;
};

class SparseState {
public:
    SparseState() = default;

    // Validates every index against dims, sums duplicates, prunes amplitudes
    // with magnitude below PRUNE_THRESHOLD, and sorts entries
    // lexicographically. Does not normalize.
    SparseState(std::vector<int> dims, std::vector<AmpEntry> entries);

    const std::vector<int>& dims() const { return dims_; }
    int parties() const { return static_cast<int>(dims_.size()); }

    // Entries in lexicographic MultiIndex order.
    const std::vector<AmpEntry>& entries() const { return entries_; }
    std::size_t support_size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    double norm_sq() const;
    double norm() const;
    bool is_normalized(double tol = NORM_TOL) const;

    // 0 for absent keys.
    Complex amplitude(const MultiIndex& idx) const;

private:
    std::vector<int> dims_;
    std::vector<AmpEntry> entries_;
};

SparseState make_state(std::vector<int> dims, std::vector<AmpEntry> entries);

// ⟨a|b⟩ = Σ conj(a_idx)·b_idx over the shared support.
Complex inner(const SparseState& a, const SparseState& b);

// Σ_k coeffs[k]·states[k]; all states must share dims.
SparseState linear_combination(std::span<const SparseState> states,
                               std::span<const Complex> coeffs);

// |a⟩ ⊗ |b⟩ on the concatenated party list.
SparseState tensor(const SparseState& a, const SparseState& b);

} // namespace qmask
