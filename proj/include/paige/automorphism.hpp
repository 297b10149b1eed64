#ifndef PAIGE_AUTOMORPHISM_HPP
#define PAIGE_AUTOMORPHISM_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "paige/loop_table.hpp"

namespace paige {

struct AutoSearchOptions {
    bool collect = false;              // keep the found permutations
    std::uint64_t node_budget = 0;     // 0 = unlimited; counts extension attempts
    std::uint32_t order_limit = 200;   // hard limit on the loop order
};

struct AutomorphismReport {
    std::uint64_t count = 0;
    bool budget_exhausted = false;
    std::array<std::uint32_t, 3> generators{}; // the generating triple searched over
    std::vector<std::vector<std::uint32_t>> automorphisms; // collect mode only

    // search statistics
    std::uint64_t nodes = 0;              // partial-map extension attempts
    std::uint64_t fingerprint_pruned = 0; // candidates rejected before extension
    std::uint64_t conflict_pruned = 0;    // extensions that died on a conflict
};

/// Exhaustive backtracking count of table-preserving permutations fixing 0.
/// Fixes a generating triple, filters candidate images by automorphism-
/// invariant fingerprints (element order, fixed points of T(x), multiset of
/// orders of x*y over all y), and grows each candidate map by closure;
/// any conflict prunes the branch. Requires a generating triple to exist.
AutomorphismReport automorphism_search(const LoopOps& t, const AutoSearchOptions& opts = {});

} // namespace paige

#endif
