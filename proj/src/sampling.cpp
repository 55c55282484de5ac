#include "qmask/sampling.hpp"

#include <cmath>

namespace qmask {

namespace {

// (0, 1]: never zero, so log is safe.
double to_open_unit(std::uint64_t x) {
    return (static_cast<double>(x >> 11) + 1.0) * 0x1.0p-53;
}

// [0, 1)
double to_half_open_unit(std::uint64_t x) {
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

} // namespace

InputState sample_input(int d, std::uint64_t seed, std::uint64_t position) {
    if (d < 2) throw ArgumentError("sample_input: dimension must be >= 2");
    std::vector<Complex> c(static_cast<std::size_t>(d));
    double n2 = 0.0;
    for (int i = 0; i < d; ++i) {
        const double u1 = to_open_unit(counter_hash(seed, position, 2ull * i));
        const double u2 = to_half_open_unit(counter_hash(seed, position, 2ull * i + 1));
        const double r = std::sqrt(-2.0 * std::log(u1));
        c[i] = Complex{r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
        n2 += std::norm(c[i]);
    }
    if (n2 < 1e-280) {
        c.assign(static_cast<std::size_t>(d), Complex{0.0, 0.0});
        c[0] = Complex{1.0, 0.0};
    } else {
        const double inv = 1.0 / std::sqrt(n2);
        for (auto& z : c) z *= inv;
    }
    return InputState::make(std::move(c));
}

} // namespace qmask
