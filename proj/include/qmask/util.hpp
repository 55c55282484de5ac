// util.hpp
// Shared numeric constants and small helpers: tolerances, roots of unity,
// counter-based hashing, and shortest round-trip decimal formatting.

#pragma once

#include <charconv>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace qmask {

using Complex = std::complex<double>;

// Amplitude magnitudes below this are dropped after arithmetic.
inline constexpr double PRUNE_THRESHOLD = 1e-14;

// A normalized state must have |norm^2 - 1| within this bound.
inline constexpr double NORM_TOL = 1e-10;

// Image orthonormality bound enforced at masker construction.
inline constexpr double GRAM_TOL = 1e-12;

// Default tolerance for masking certification.
inline constexpr double DEFAULT_CHECK_TOL = 1e-10;

// Default dimension cap for the 2d-party generalized-Bell construction
// (d = 6 already means 46656 nonzeros per image).
inline constexpr int BELL_DIM_CAP = 6;

// Default branch-node budget for the orthogonal-pair backtracking search.
inline constexpr std::uint64_t DEFAULT_NODE_BUDGET = 10'000'000;

// ω_d^e for e = 0..d-1, ω_d = e^{2πi/d}. Exponents reduced mod d before
// evaluation; quarter-turn angles (multiples of π/2) are returned exactly
// so d = 2 and d = 4 phases are ±1 / ±i with no sin/cos residue.
std::vector<Complex> unit_roots(int d);

// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-based hash: same (seed, a, b) always gives the same word,
// independent of evaluation order.
inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::uint64_t h = mix64(seed ^ 0x6a09e667f3bcc909ULL);
    h = mix64(h ^ mix64(a));
    h = mix64(h ^ mix64(b));
    return h;
}

// Shortest decimal string that round-trips to the same double.
std::string format_double(double x);

} // namespace qmask
