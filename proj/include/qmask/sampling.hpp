// sampling.hpp
// Counter-based deterministic sampling of unit input states: uniform on the
// complex unit sphere via normalized standard-normal coordinates. Keyed by
// (seed, position) only, so samples are order-independent and can be drawn
// concurrently with reproducible results.

#pragma once

#include <cstdint>

#include "qmask/masker.hpp"

namespace qmask {

InputState sample_input(int d, std::uint64_t seed, std::uint64_t position);

} // namespace qmask
