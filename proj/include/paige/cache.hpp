#ifndef PAIGE_CACHE_HPP
#define PAIGE_CACHE_HPP

#include <optional>
#include <string>

#include "paige/loop_table.hpp"
#include "paige/paige_loop.hpp"

namespace paige {

// Binary cache layout (little-endian):
//   magic "PAIGE1" (6 bytes)
//   p, n                      u64
//   modulus length            u64, followed by that many coefficient bytes
//   element count N           u64
//   N 8-tuples in serialization order (a1, a12_1..3, a21_1..3, a2),
//     each component ceil(log256(p^n)) bytes
//   table flag                u8
//   if set: N*N row-major indices, each ceil(log256(N)) bytes

/// Writes the element list, plus the Cayley table when `table` is given.
void write_cache(const std::string& path, const PaigeLoop& loop,
                 const LoopTable* table = nullptr);

struct LoadedCache {
    PaigeLoop loop;
    std::optional<LoopTable> table;
};

/// Reads and validates a cache. Validation re-checks norms, canonical form,
/// element order, the predicted-order match and (when a table block is
/// present) the Latin square property; `trust` skips all of that beyond
/// structural parsing.
LoadedCache load_cache(const std::string& path, bool trust = false);

} // namespace paige

#endif
