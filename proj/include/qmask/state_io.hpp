// state_io.hpp
// JSON dump format for sparse states:
//   {"dims":[d1,...,dn], "amps":[{"idx":[i1,...,in], "re":x, "im":y}, ...]}
// with 1-based idx digits and entries sorted lexicographically. The emitted
// bytes are deterministic so dumps can serve as golden files.

#pragma once

#include <json.hpp>

#include "qmask/sparse_state.hpp"

namespace qmask {

nlohmann::ordered_json state_to_json(const SparseState& state);

SparseState state_from_json(const nlohmann::json& j);

} // namespace qmask
