// mols_search.hpp
// Bounded backtracking search for an orthogonal Latin square pair of a given
// order. The first square is enumerated in reduced form (first row and first
// column in natural order), the second with its first row in natural order;
// any orthogonal pair can be normalized into that shape by relabeling
// symbols and permuting rows, so exhausting the reduced space is a complete
// nonexistence proof.

#pragma once

#include <cstdint>
#include <optional>

#include "qmask/latin.hpp"
#include "qmask/util.hpp"

namespace qmask {

struct SearchStats {
    std::uint64_t nodes = 0;       // branch nodes (cell assignments tried)
    std::uint64_t node_budget = 0;
    bool found = false;
    // True when the whole reduced search space was explored without finding
    // a pair — a genuine nonexistence proof. Budget exhaustion leaves this
    // false: no conclusion about existence.
    bool exhausted = false;
};

struct SearchResult {
    std::optional<MOLSPair> pair;
    SearchStats stats;
};

// Deterministic given (d, node_budget): single-threaded, lexicographic
// branching. Budget exhaustion is a result, not an error.
SearchResult mols_search(int d, std::uint64_t node_budget = DEFAULT_NODE_BUDGET);

} // namespace qmask
