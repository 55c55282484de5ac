// verifier.hpp
// Numerical certification of the masking property: Gram/isometry deviation,
// single-party marginal deviations of every basis image, and marginal
// deviations across pseudo-random superposition inputs.
//
// Per-sample evaluations are independent pure computations; the parallel
// path distributes them with OpenMP and folds results in sample-index order,
// so serial and parallel runs produce bit-identical reports. The serial path
// is kept as the reference implementation for tests and benchmarks.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmask/masker.hpp"
#include "qmask/sampling.hpp"

namespace qmask {

enum class ExecMode { serial, parallel };

struct CheckOptions {
    int samples = 100;
    std::uint64_t seed = 42;
    double tol = DEFAULT_CHECK_TOL;
    ExecMode mode = ExecMode::parallel;
    // Adds trace-norm deviations and minimum marginal eigenvalues to the
    // per-party breakdown.
    bool diagnostics = false;
};

struct PartyReport {
    int party = 0; // 1-based in reports
    double basis_dev = 0.0;
    double superpos_dev = 0.0;
    // Diagnostic-only fields (0 unless diagnostics were requested).
    double trace_norm_dev = 0.0;
    double min_marginal_eigenvalue = 0.0;
};

struct MaskingReport {
    std::string scheme;
    int d = 0;
    int parties = 0;
    std::vector<int> local_dims;
    double tol = 0.0;
    std::uint64_t seed = 0;
    int samples = 0;
    double gram_dev = 0.0;
    double basis_dev = 0.0;
    double superpos_dev = 0.0;
    bool pass = false;
    std::vector<PartyReport> per_party;
    bool diagnostics = false;
};

// max entry of |G - I| with G_jk = ⟨Φ_j|Φ_k⟩.
double gram_check(const Masker& m, ExecMode mode = ExecMode::parallel);

MaskingReport masking_check(const Masker& m, const CheckOptions& opt = {});

// Deviation of the joint reduced state of the first two parties of a
// 2d-party generalized-Bell encoding from Σ_k |α_k|^2 |ψ_k⟩⟨ψ_k| built from
// the d generalized Bell states. Only meaningful for the bell scheme.
double two_party_check(const Masker& m, const InputState& x);

// All single-party reduced states of a state, in party order.
std::vector<DensityMatrix> single_party_marginals(const SparseState& state);

nlohmann::ordered_json report_to_json(const MaskingReport& r);

} // namespace qmask
