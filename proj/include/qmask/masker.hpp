// masker.hpp
// Masking schemes: each one maps the d basis states of the input system to d
// orthonormal multipartite images whose single-party reduced states are all
// maximally mixed. Four constructions are provided:
//
//   bell_masker(d)     2d parties of dimension d; image l is the d-fold
//                      tensor power of the generalized Bell state with
//                      phase ω^l, ω = e^{2πi/d}.
//   shor_masker()      the 9-qubit repetition-of-GHZ encoding
//                      |0⟩,|1⟩ → ((|000⟩ ± |111⟩)/√2)^⊗3.
//   mols_masker(pair)  tripartite: image j places 1/√d at the triples
//                      (k, v_jk, w_jk) of a certified orthogonal pair.
//   embedded_masker(d) even d handled inside dimension d+1 using the first
//                      d images of the order-(d+1) cyclic pair masker.

#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmask/density_matrix.hpp"
#include "qmask/latin.hpp"
#include "qmask/sparse_state.hpp"

namespace qmask {

enum class Scheme { bell, shor, mols, embedded };

std::string scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

struct Masker {
    Scheme scheme = Scheme::bell;
    int input_dim = 0;
    int parties = 0;
    std::vector<int> local_dims;
    std::vector<SparseState> images;           // {|Φ_j⟩}, one per basis state
    std::vector<DensityMatrix> expected_marginals; // I_dim/dim per party
};

// Normalized input state Σ α_l |l⟩.
struct InputState {
    int dim = 0;
    std::vector<Complex> coeffs;

    // Throws ArgumentError unless Σ|α|² = 1 within NORM_TOL.
    static InputState make(std::vector<Complex> coeffs);

    static InputState basis(int dim, int index);
};

Masker bell_masker(int d, int dim_cap = BELL_DIM_CAP);

Masker shor_masker();

// Requires pair.certified; throws CertificationRequiredError otherwise.
Masker mols_masker(const MOLSPair& pair);

Masker embedded_masker(int d);

// No validation at all: for hand-built or deliberately broken schemes that
// the verifier should be able to inspect.
Masker make_masker_unchecked(Scheme scheme, int input_dim, std::vector<int> local_dims,
                             std::vector<SparseState> images);

// Σ_l α_l |Φ_l⟩ for a normalized input of matching dimension.
SparseState encode(const Masker& m, const InputState& x);

// Raw linear combination of the images; no normalization requirement.
SparseState combine_images(const Masker& m, std::span<const Complex> coeffs);

// Manifest: {"scheme":…, "d":…, "parties":…, "local_dims":[…], "images":[…]}
// using the state dump format for each image.
nlohmann::ordered_json masker_manifest(const Masker& m);

} // namespace qmask
