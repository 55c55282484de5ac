#include "qmask/verifier.hpp"

#include <algorithm>
#include <cmath>

#include "qmask/partial_trace.hpp"

namespace qmask {

namespace {

struct Deviations {
    std::vector<double> per_party;      // max-entry deviation from expected
    std::vector<double> trace_norm;     // diagnostics
    std::vector<double> min_eigenvalue; // diagnostics
};

Deviations marginal_deviations(const SparseState& state, const Masker& m, bool diagnostics) {
    Deviations dev;
    dev.per_party.resize(static_cast<std::size_t>(m.parties));
    if (diagnostics) {
        dev.trace_norm.resize(static_cast<std::size_t>(m.parties));
        dev.min_eigenvalue.resize(static_cast<std::size_t>(m.parties));
    }
    for (int p = 0; p < m.parties; ++p) {
        const DensityMatrix rho = partial_trace(state, p);
        dev.per_party[p] = rho.max_abs_diff(m.expected_marginals[p]);
        if (diagnostics) {
            dev.trace_norm[p] = trace_norm_diff(rho, m.expected_marginals[p]);
            dev.min_eigenvalue[p] = min_eigenvalue(rho);
        }
    }
    return dev;
}

} // namespace

double gram_check(const Masker& m, ExecMode mode) {
    const int n = static_cast<int>(m.images.size());
    std::vector<double> dev(static_cast<std::size_t>(n) * n, 0.0);

    // Entries land in distinct slots; the fold below runs in index order, so
    // the result is identical for both modes.
    if (mode == ExecMode::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int cell = 0; cell < n * n; ++cell) {
            const int j = cell / n;
            const int k = cell % n;
            const Complex g = inner(m.images[j], m.images[k]);
            dev[cell] = std::abs(g - (j == k ? Complex{1.0, 0.0} : Complex{0.0, 0.0}));
        }
    } else {
        for (int cell = 0; cell < n * n; ++cell) {
            const int j = cell / n;
            const int k = cell % n;
            const Complex g = inner(m.images[j], m.images[k]);
            dev[cell] = std::abs(g - (j == k ? Complex{1.0, 0.0} : Complex{0.0, 0.0}));
        }
    }

    double worst = 0.0;
    for (double v : dev) worst = std::max(worst, v);
    return worst;
}

MaskingReport masking_check(const Masker& m, const CheckOptions& opt) {
    if (opt.samples < 1) throw ArgumentError("masking_check: samples must be >= 1");

    MaskingReport r;
    r.scheme = scheme_name(m.scheme);
    r.d = m.input_dim;
    r.parties = m.parties;
    r.local_dims = m.local_dims;
    r.tol = opt.tol;
    r.seed = opt.seed;
    r.samples = opt.samples;
    r.diagnostics = opt.diagnostics;

    r.gram_dev = gram_check(m, opt.mode);

    const int n_images = static_cast<int>(m.images.size());
    std::vector<Deviations> basis(static_cast<std::size_t>(n_images));
    std::vector<Deviations> superpos(static_cast<std::size_t>(opt.samples));

    if (opt.mode == ExecMode::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int j = 0; j < n_images; ++j)
            basis[j] = marginal_deviations(m.images[j], m, opt.diagnostics);
#pragma omp parallel for schedule(dynamic)
        for (int s = 0; s < opt.samples; ++s) {
            const InputState x = sample_input(m.input_dim, opt.seed, s);
            superpos[s] = marginal_deviations(combine_images(m, x.coeffs), m, opt.diagnostics);
        }
    } else {
        for (int j = 0; j < n_images; ++j)
            basis[j] = marginal_deviations(m.images[j], m, opt.diagnostics);
        for (int s = 0; s < opt.samples; ++s) {
            const InputState x = sample_input(m.input_dim, opt.seed, s);
            superpos[s] = marginal_deviations(combine_images(m, x.coeffs), m, opt.diagnostics);
        }
    }

    // Deterministic fold in slot order regardless of completion order.
    r.per_party.resize(static_cast<std::size_t>(m.parties));
    for (int p = 0; p < m.parties; ++p) {
        auto& pr = r.per_party[p];
        pr.party = p + 1;
        pr.min_marginal_eigenvalue = opt.diagnostics ? 1.0 : 0.0;
        for (const auto& b : basis) {
            pr.basis_dev = std::max(pr.basis_dev, b.per_party[p]);
            if (opt.diagnostics) {
                pr.trace_norm_dev = std::max(pr.trace_norm_dev, b.trace_norm[p]);
                pr.min_marginal_eigenvalue =
                    std::min(pr.min_marginal_eigenvalue, b.min_eigenvalue[p]);
            }
        }
        for (const auto& s : superpos) {
            pr.superpos_dev = std::max(pr.superpos_dev, s.per_party[p]);
            if (opt.diagnostics) {
                pr.trace_norm_dev = std::max(pr.trace_norm_dev, s.trace_norm[p]);
                pr.min_marginal_eigenvalue =
                    std::min(pr.min_marginal_eigenvalue, s.min_eigenvalue[p]);
            }
        }
        r.basis_dev = std::max(r.basis_dev, pr.basis_dev);
        r.superpos_dev = std::max(r.superpos_dev, pr.superpos_dev);
    }

    r.pass = std::max({r.gram_dev, r.basis_dev, r.superpos_dev}) <= r.tol;
    return r;
}

double two_party_check(const Masker& m, const InputState& x) {
    if (m.scheme != Scheme::bell)
        throw ArgumentError("two_party_check: only defined for the bell scheme");
    if (x.dim != m.input_dim)
        throw ArgumentError("two_party_check: input dimension mismatch");

    const int d = m.input_dim;
    const DensityMatrix rho = partial_trace_general(encode(m, x), {0, 1});

    // Σ_k |α_k|^2 |ψ_k⟩⟨ψ_k| with ψ_k the generalized Bell state of phase k.
    const auto roots = unit_roots(d);
    const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
    DensityMatrix expected(d * d);
    for (int k = 0; k < d; ++k) {
        std::vector<Complex> psi(static_cast<std::size_t>(d) * d, Complex{0.0, 0.0});
        for (int j = 0; j < d; ++j)
            psi[static_cast<std::size_t>(j) * d + j] =
                inv_sqrt_d * roots[(static_cast<long long>(j) * k) % d];
        const double w = std::norm(x.coeffs[k]);
        for (int r = 0; r < d * d; ++r)
            for (int c = 0; c < d * d; ++c)
                expected.at(r, c) += w * psi[r] * std::conj(psi[c]);
    }
    return rho.max_abs_diff(expected);
}

std::vector<DensityMatrix> single_party_marginals(const SparseState& state) {
    std::vector<DensityMatrix> out;
    out.reserve(state.dims().size());
    for (int p = 0; p < state.parties(); ++p) out.push_back(partial_trace(state, p));
    return out;
}

nlohmann::ordered_json report_to_json(const MaskingReport& r) {
    nlohmann::ordered_json j;
    j["scheme"] = r.scheme;
    j["d"] = r.d;
    j["parties"] = r.parties;
    j["local_dims"] = r.local_dims;
    j["tol"] = r.tol;
    j["seed"] = r.seed;
    j["samples"] = r.samples;
    j["gram_dev"] = r.gram_dev;
    j["basis_dev"] = r.basis_dev;
    j["superpos_dev"] = r.superpos_dev;
    j["pass"] = r.pass;
    auto parties = nlohmann::ordered_json::array();
    for (const auto& p : r.per_party) {
        nlohmann::ordered_json pj;
        pj["party"] = p.party;
        pj["basis_dev"] = p.basis_dev;
        pj["superpos_dev"] = p.superpos_dev;
        if (r.diagnostics) {
            pj["trace_norm_dev"] = p.trace_norm_dev;
            pj["min_marginal_eigenvalue"] = p.min_marginal_eigenvalue;
        }
        parties.push_back(std::move(pj));
    }
    j["per_party"] = std::move(parties);
    return j;
}

} // namespace qmask
