#include "qmask/sparse_state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qmask {

SparseState::SparseState(std::vector<int> dims, std::vector<AmpEntry> entries)
    : dims_(std::move(dims)) {
    const int n = static_cast<int>(dims_.size());
    for (int p = 0; p < n; ++p) {
        if (dims_[p] < 1)
            throw DimensionMismatchError("SparseState: local dimension must be >= 1");
    }
    for (const auto& e : entries) {
        if (static_cast<int>(e.idx.size()) != n)
            throw DimensionMismatchError("SparseState: index has " +
                                         std::to_string(e.idx.size()) + " digits, expected " +
                                         std::to_string(n));
        for (int p = 0; p < n; ++p) {
            if (e.idx[p] < 0 || e.idx[p] >= dims_[p])
                throw DimensionMismatchError("SparseState: digit " + std::to_string(e.idx[p]) +
                                             " out of range for party " + std::to_string(p) +
                                             " (dim " + std::to_string(dims_[p]) + ")");
        }
    }

    std::sort(entries.begin(), entries.end(),
              [](const AmpEntry& a, const AmpEntry& b) { return a.idx < b.idx; });

    // Merge duplicates, then prune cancellation artifacts.
    entries_.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size();) {
        Complex sum = entries[i].amp;
        std::size_t j = i + 1;
        while (j < entries.size() && entries[j].idx == entries[i].idx) {
            sum += entries[j].amp;
            ++j;
        }
        if (std::abs(sum) >= PRUNE_THRESHOLD)
            entries_.push_back({std::move(entries[i].idx), sum});
        i = j;
    }
}

double SparseState::norm_sq() const {
    double n = 0.0;
    for (const auto& e : entries_) n += std::norm(e.amp);
    return n;
}

double SparseState::norm() const { return std::sqrt(norm_sq()); }

bool SparseState::is_normalized(double tol) const {
    return std::abs(norm_sq() - 1.0) <= tol;
}

Complex SparseState::amplitude(const MultiIndex& idx) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), idx,
                               [](const AmpEntry& e, const MultiIndex& key) { return e.idx < key; });
    if (it != entries_.end() && it->idx == idx) return it->amp;
    return Complex{0.0, 0.0};
}

SparseState make_state(std::vector<int> dims, std::vector<AmpEntry> entries) {
    return SparseState(std::move(dims), std::move(entries));
}

Complex inner(const SparseState& a, const SparseState& b) {
    if (a.dims() != b.dims())
        throw DimensionMismatchError("inner: states have different party dimensions");
    const auto& ea = a.entries();
    const auto& eb = b.entries();
    Complex acc{0.0, 0.0};
    std::size_t i = 0, j = 0;
    while (i < ea.size() && j < eb.size()) {
        if (ea[i].idx < eb[j].idx) {
            ++i;
        } else if (eb[j].idx < ea[i].idx) {
            ++j;
        } else {
            acc += std::conj(ea[i].amp) * eb[j].amp;
            ++i;
            ++j;
        }
    }
    return acc;
}

SparseState linear_combination(std::span<const SparseState> states,
                               std::span<const Complex> coeffs) {
    if (states.size() != coeffs.size())
        throw ArgumentError("linear_combination: states and coefficients differ in length");
    if (states.empty())
        throw ArgumentError("linear_combination: empty combination");
    const auto& dims = states[0].dims();
    std::vector<AmpEntry> all;
    for (std::size_t k = 0; k < states.size(); ++k) {
        if (states[k].dims() != dims)
            throw DimensionMismatchError("linear_combination: mixed party dimensions");
        for (const auto& e : states[k].entries())
            all.push_back({e.idx, coeffs[k] * e.amp});
    }
    return SparseState(dims, std::move(all));
}

SparseState tensor(const SparseState& a, const SparseState& b) {
    std::vector<int> dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    std::vector<AmpEntry> out;
    out.reserve(a.support_size() * b.support_size());
    for (const auto& ea : a.entries()) {
        for (const auto& eb : b.entries()) {
            MultiIndex idx = ea.idx;
            idx.insert(idx.end(), eb.idx.begin(), eb.idx.end());
            out.push_back({std::move(idx), ea.amp * eb.amp});
        }
    }
    return SparseState(std::move(dims), std::move(out));
}

} // namespace qmask
