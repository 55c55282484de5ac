#include "qmask/partial_trace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qmask/errors.hpp"

namespace qmask {

DensityMatrix partial_trace(const SparseState& state, int keep, TraceDiagnostics* diag) {
    const auto& dims = state.dims();
    const int parties = state.parties();
    if (keep < 0 || keep >= parties)
        throw ArgumentError("partial_trace: party index " + std::to_string(keep) +
                            " out of range for " + std::to_string(parties) + " parties");

    const double n2 = state.norm_sq();
    if (diag) {
        diag->input_norm_sq = n2;
        diag->norm_warning = std::abs(n2 - 1.0) > NORM_TOL;
    }

    const auto& es = state.entries();
    std::vector<std::uint32_t> order(es.size());
    std::iota(order.begin(), order.end(), 0u);

    auto rest_cmp = [&](std::uint32_t a, std::uint32_t b) -> int {
        const auto& ia = es[a].idx;
        const auto& ib = es[b].idx;
        for (int p = 0; p < parties; ++p) {
            if (p == keep) continue;
            if (ia[p] != ib[p]) return ia[p] < ib[p] ? -1 : 1;
        }
        return 0;
    };
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        const int c = rest_cmp(a, b);
        if (c != 0) return c < 0;
        return es[a].idx[keep] < es[b].idx[keep];
    });

    DensityMatrix rho(dims[keep]);
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i + 1;
        while (j < order.size() && rest_cmp(order[i], order[j]) == 0) ++j;
        for (std::size_t a = i; a < j; ++a) {
            const auto& ea = es[order[a]];
            for (std::size_t b = i; b < j; ++b) {
                const auto& eb = es[order[b]];
                rho.at(ea.idx[keep], eb.idx[keep]) += ea.amp * std::conj(eb.amp);
            }
        }
        i = j;
    }
    return rho;
}

DensityMatrix partial_trace_general(const SparseState& state, const std::vector<int>& keep) {
    const auto& dims = state.dims();
    const int parties = state.parties();
    if (keep.empty()) throw ArgumentError("partial_trace_general: empty kept subset");
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] < 0 || keep[i] >= parties)
            throw ArgumentError("partial_trace_general: party index out of range");
        if (i > 0 && keep[i] <= keep[i - 1])
            throw ArgumentError("partial_trace_general: kept subset must be strictly increasing");
    }

    long long joint = 1;
    for (int p : keep) joint *= dims[p];

    std::vector<char> kept_mask(static_cast<std::size_t>(parties), 0);
    for (int p : keep) kept_mask[p] = 1;

    const auto& es = state.entries();
    std::vector<std::uint32_t> order(es.size());
    std::iota(order.begin(), order.end(), 0u);

    auto rest_cmp = [&](std::uint32_t a, std::uint32_t b) -> int {
        const auto& ia = es[a].idx;
        const auto& ib = es[b].idx;
        for (int p = 0; p < parties; ++p) {
            if (kept_mask[p]) continue;
            if (ia[p] != ib[p]) return ia[p] < ib[p] ? -1 : 1;
        }
        return 0;
    };
    auto flat = [&](std::uint32_t a) -> long long {
        long long v = 0;
        for (int p : keep) v = v * dims[p] + es[a].idx[p];
        return v;
    };
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        const int c = rest_cmp(a, b);
        if (c != 0) return c < 0;
        return flat(a) < flat(b);
    });

    DensityMatrix rho(static_cast<int>(joint));
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i + 1;
        while (j < order.size() && rest_cmp(order[i], order[j]) == 0) ++j;
        for (std::size_t a = i; a < j; ++a) {
            const long long fa = flat(order[a]);
            for (std::size_t b = i; b < j; ++b) {
                rho.at(static_cast<int>(fa), static_cast<int>(flat(order[b]))) +=
                    es[order[a]].amp * std::conj(es[order[b]].amp);
            }
        }
        i = j;
    }
    return rho;
}

DensityMatrix closed_form_reduced_state(std::span<const Complex> coeffs,
                                        const std::vector<std::vector<Complex>>& locals) {
    if (coeffs.size() != locals.size())
        throw ArgumentError("closed_form_reduced_state: coefficient/state count mismatch");
    if (coeffs.empty())
        throw ArgumentError("closed_form_reduced_state: empty decomposition");
    const std::size_t dim = locals[0].size();
    for (const auto& v : locals)
        if (v.size() != dim)
            throw ArgumentError("closed_form_reduced_state: local vectors of unequal dimension");

    DensityMatrix rho(static_cast<int>(dim));
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        const double w = std::norm(coeffs[k]);
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c)
                rho.at(static_cast<int>(r), static_cast<int>(c)) +=
                    w * locals[k][r] * std::conj(locals[k][c]);
    }
    return rho;
}

} // namespace qmask
