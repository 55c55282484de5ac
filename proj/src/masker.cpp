#include "qmask/masker.hpp"

#include <cmath>
#include <cstdlib>

#include "qmask/state_io.hpp"

namespace qmask {

std::string scheme_name(Scheme s) {
    switch (s) {
        case Scheme::bell: return "bell";
        case Scheme::shor: return "shor";
        case Scheme::mols: return "mols";
        case Scheme::embedded: return "embedded";
    }
    return "?";
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "bell") return Scheme::bell;
    if (name == "shor") return Scheme::shor;
    if (name == "mols") return Scheme::mols;
    if (name == "embedded") return Scheme::embedded;
    throw ArgumentError("unknown scheme '" + name + "' (expected bell|shor|mols|embedded)");
}

InputState InputState::make(std::vector<Complex> coeffs) {
    if (coeffs.size() < 2) throw ArgumentError("InputState: need at least 2 coefficients");
    double n2 = 0.0;
    for (const auto& c : coeffs) n2 += std::norm(c);
    if (std::abs(n2 - 1.0) > NORM_TOL)
        throw ArgumentError("InputState: coefficients are not normalized (|norm^2-1| = " +
                            format_double(std::abs(n2 - 1.0)) + ")");
    InputState x;
    x.dim = static_cast<int>(coeffs.size());
    x.coeffs = std::move(coeffs);
    return x;
}

InputState InputState::basis(int dim, int index) {
    if (dim < 2) throw ArgumentError("InputState: dimension must be >= 2");
    if (index < 0 || index >= dim)
        throw ArgumentError("InputState: basis index " + std::to_string(index) +
                            " out of range for dimension " + std::to_string(dim));
    std::vector<Complex> c(static_cast<std::size_t>(dim), Complex{0.0, 0.0});
    c[index] = Complex{1.0, 0.0};
    InputState x;
    x.dim = dim;
    x.coeffs = std::move(c);
    return x;
}

namespace {

// Image orthonormality and shared dims; fills the expected marginals.
Masker finalize_masker(Scheme scheme, int input_dim, std::vector<int> local_dims,
                       std::vector<SparseState> images) {
    for (const auto& img : images) {
        if (img.dims() != local_dims)
            throw DimensionMismatchError("masker: image dims differ from scheme local dims");
        if (std::abs(img.norm_sq() - 1.0) > GRAM_TOL)
            throw ArgumentError("masker: image state is not normalized");
    }
    for (std::size_t j = 0; j < images.size(); ++j)
        for (std::size_t k = j + 1; k < images.size(); ++k)
            if (std::abs(inner(images[j], images[k])) > GRAM_TOL)
                throw ArgumentError("masker: images are not pairwise orthogonal");

    Masker m;
    m.scheme = scheme;
    m.input_dim = input_dim;
    m.parties = static_cast<int>(local_dims.size());
    m.local_dims = std::move(local_dims);
    m.images = std::move(images);
    m.expected_marginals.reserve(m.local_dims.size());
    for (int dim : m.local_dims)
        m.expected_marginals.push_back(DensityMatrix::maximally_mixed(dim));
    return m;
}

// The set equalities that make the tripartite construction work, checked
// combinatorially: with u_jk = k, each of the cell maps (u,v), (u,w), (v,w)
// must be a bijection onto {1..d}^2, and each row of U, V, W must contain
// every symbol.
void check_set_equalities(const LatinSquare& v, const LatinSquare& w) {
    const int d = v.order();
    auto check_bijection = [d](auto left, auto right, const char* what) {
        std::vector<char> seen(static_cast<std::size_t>(d) * d, 0);
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                const std::size_t key =
                    static_cast<std::size_t>(left(j, k) - 1) * d + (right(j, k) - 1);
                if (seen[key])
                    throw CertificationRequiredError(std::string("mols_masker: cell map ") +
                                                     what + " is not a bijection");
                seen[key] = 1;
            }
    };
    auto u = [](int /*j*/, int k) { return k + 1; };
    auto vv = [&](int j, int k) { return v.at(j, k); };
    auto ww = [&](int j, int k) { return w.at(j, k); };
    check_bijection(u, vv, "(u,v)");
    check_bijection(u, ww, "(u,w)");
    check_bijection(vv, ww, "(v,w)");

    for (int j = 0; j < d; ++j) {
        std::vector<char> sv(static_cast<std::size_t>(d) + 1, 0);
        std::vector<char> sw(static_cast<std::size_t>(d) + 1, 0);
        std::vector<char> su(static_cast<std::size_t>(d) + 1, 0);
        for (int k = 0; k < d; ++k) {
            sv[v.at(j, k)] = 1;
            sw[w.at(j, k)] = 1;
            su[u(j, k)] = 1;
        }
        for (int s = 1; s <= d; ++s)
            if (!sv[s] || !sw[s] || !su[s])
                throw CertificationRequiredError(
                    "mols_masker: row " + std::to_string(j + 1) + " does not cover every symbol");
    }
}

std::vector<SparseState> mols_images(const LatinSquare& v, const LatinSquare& w) {
    const int d = v.order();
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    std::vector<int> dims{d, d, d};
    std::vector<SparseState> images;
    images.reserve(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
        std::vector<AmpEntry> entries;
        entries.reserve(static_cast<std::size_t>(d));
        for (int k = 0; k < d; ++k)
            entries.push_back({MultiIndex{k, v.at(j, k) - 1, w.at(j, k) - 1},
                               Complex{amp, 0.0}});
        images.emplace_back(dims, std::move(entries));
    }
    return images;
}

} // namespace

Masker bell_masker(int d, int dim_cap) {
    if (d < 2) throw ArgumentError("bell_masker: dimension must be >= 2");
    if (d > dim_cap)
        throw ResourceCapError("bell_masker: d = " + std::to_string(d) +
                               " exceeds the cap " + std::to_string(dim_cap) +
                               " (each image has d^d nonzeros; raise the cap to proceed)");

    const int parties = 2 * d;
    std::vector<int> dims(static_cast<std::size_t>(parties), d);
    const auto roots = unit_roots(d);
    const double scale = std::pow(static_cast<double>(d), -0.5 * d);

    // d^d basis tuples (j_0,...,j_{d-1}); each appears doubled as
    // |j_0 j_0⟩|j_1 j_1⟩⋯ and, in image l, carries phase ω^{l·Σj}.
    std::vector<std::vector<int>> tuples;
    std::vector<int> tuple_sum;
    {
        std::vector<int> t(static_cast<std::size_t>(d), 0);
        while (true) {
            int s = 0;
            for (int x : t) s += x;
            tuples.push_back(t);
            tuple_sum.push_back(s % d);
            int pos = d - 1;
            while (pos >= 0 && t[pos] == d - 1) t[pos--] = 0;
            if (pos < 0) break;
            ++t[pos];
        }
    }

    std::vector<SparseState> images;
    images.reserve(static_cast<std::size_t>(d));
    for (int l = 0; l < d; ++l) {
        std::vector<AmpEntry> entries;
        entries.reserve(tuples.size());
        for (std::size_t t = 0; t < tuples.size(); ++t) {
            MultiIndex idx(static_cast<std::size_t>(parties));
            for (int p = 0; p < d; ++p) idx[2 * p] = idx[2 * p + 1] = tuples[t][p];
            entries.push_back({std::move(idx),
                               scale * roots[(static_cast<long long>(l) * tuple_sum[t]) % d]});
        }
        images.emplace_back(dims, std::move(entries));
    }
    return finalize_masker(Scheme::bell, d, std::move(dims), std::move(images));
}

Masker shor_masker() {
    const int parties = 9;
    std::vector<int> dims(static_cast<std::size_t>(parties), 2);
    const double amp = 1.0 / (2.0 * std::sqrt(2.0));
    std::vector<SparseState> images;
    for (int sign = 0; sign < 2; ++sign) {
        std::vector<AmpEntry> entries;
        for (int b1 = 0; b1 < 2; ++b1)
            for (int b2 = 0; b2 < 2; ++b2)
                for (int b3 = 0; b3 < 2; ++b3) {
                    MultiIndex idx{b1, b1, b1, b2, b2, b2, b3, b3, b3};
                    const int parity = sign ? (b1 + b2 + b3) % 2 : 0;
                    entries.push_back({std::move(idx),
                                       Complex{parity ? -amp : amp, 0.0}});
                }
        images.emplace_back(dims, std::move(entries));
    }
    return finalize_masker(Scheme::shor, 2, std::move(dims), std::move(images));
}

Masker mols_masker(const MOLSPair& pair) {
    if (!pair.certified)
        throw CertificationRequiredError(
            "mols_masker: pair is not certified orthogonal; run the orthogonality check first");
    const int d = pair.first.order();
    if (d < 3) throw ArgumentError("mols_masker: order must be >= 3");
    check_set_equalities(pair.first, pair.second);
    std::vector<int> dims{d, d, d};
    return finalize_masker(Scheme::mols, d, std::move(dims),
                           mols_images(pair.first, pair.second));
}

Masker embedded_masker(int d) {
    if (d < 2) throw ArgumentError("embedded_masker: dimension must be >= 2");
    if (d % 2 != 0)
        throw ArgumentError("embedded_masker: d must be even (odd d has a direct "
                            "tripartite masker; use mols_masker with cyclic_pair)");
    const MOLSPair pair = cyclic_pair(d + 1);
    check_set_equalities(pair.first, pair.second);
    auto images = mols_images(pair.first, pair.second);
    images.resize(static_cast<std::size_t>(d)); // first d images mask C^d
    std::vector<int> dims{d + 1, d + 1, d + 1};
    return finalize_masker(Scheme::embedded, d, std::move(dims), std::move(images));
}

Masker make_masker_unchecked(Scheme scheme, int input_dim, std::vector<int> local_dims,
                             std::vector<SparseState> images) {
    Masker m;
    m.scheme = scheme;
    m.input_dim = input_dim;
    m.parties = static_cast<int>(local_dims.size());
    m.local_dims = std::move(local_dims);
    m.images = std::move(images);
    m.expected_marginals.reserve(m.local_dims.size());
    for (int dim : m.local_dims)
        m.expected_marginals.push_back(DensityMatrix::maximally_mixed(dim));
    return m;
}

SparseState encode(const Masker& m, const InputState& x) {
    if (x.dim != m.input_dim)
        throw ArgumentError("encode: input dimension " + std::to_string(x.dim) +
                            " does not match masker dimension " + std::to_string(m.input_dim));
    return combine_images(m, x.coeffs);
}

SparseState combine_images(const Masker& m, std::span<const Complex> coeffs) {
    if (coeffs.size() != m.images.size())
        throw ArgumentError("combine_images: expected " + std::to_string(m.images.size()) +
                            " coefficients, got " + std::to_string(coeffs.size()));
    return linear_combination(m.images, coeffs);
}

nlohmann::ordered_json masker_manifest(const Masker& m) {
    nlohmann::ordered_json j;
    j["scheme"] = scheme_name(m.scheme);
    j["d"] = m.input_dim;
    j["parties"] = m.parties;
    j["local_dims"] = m.local_dims;
    auto images = nlohmann::ordered_json::array();
    for (const auto& img : m.images) images.push_back(state_to_json(img));
    j["images"] = std::move(images);
    return j;
}

} // namespace qmask
