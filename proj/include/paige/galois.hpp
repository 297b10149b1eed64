#ifndef PAIGE_GALOIS_HPP
#define PAIGE_GALOIS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "paige/field.hpp"
#include "paige/paige_loop.hpp"

namespace paige {

/// Subgroup <phi^d> of the cyclic Galois group of GF(p^n)/GF(p), stored as
/// the exponent set {0, d, 2d, ...} of the Frobenius.
struct GaloisSubgroup {
    std::uint64_t d = 1;
    std::uint64_t order = 1; // n/d
    std::vector<std::uint64_t> exponents;

    bool contains(const GaloisSubgroup& other) const;
};

struct GaloisGroupDesc {
    std::uint64_t p = 0;
    std::uint64_t n = 1;
    std::vector<GaloisSubgroup> subgroups; // one per divisor of n, ascending
};

/// Gal(GF(p^n)/GF(p)): cyclic of order n, generated by a -> a^p.
GaloisGroupDesc galois_group(std::uint64_t p, std::uint64_t n);

/// Fixed field of <phi^d> inside GF(p^n): the elements with a^(p^d) = a.
/// Verified to have exactly p^d elements, to be closed under the field
/// operations, and to coincide with the image of the standalone GF(p^d).
struct FixedField {
    std::uint64_t d = 1;
    std::vector<std::uint64_t> elements;  // sorted indices in the big field
    std::vector<std::uint64_t> embedding; // GF(p^d) index -> big index
};
FixedField fixed_field(const Field& big, std::uint64_t d,
                       std::uint64_t scan_limit = 1u << 16);

struct TowerOptions {
    /// Elementwise data (embeddings, fixed sets) is computed only when the
    /// big field has at most this many elements; the divisor/subgroup
    /// structure is always built.
    std::uint64_t elementwise_limit = 1u << 16;
};

struct TowerRecord {
    std::uint64_t d = 1;
    Field subfield = Field::rationals(); // standalone GF(p^d)
    GaloisSubgroup subgroup;
    std::optional<std::vector<std::uint64_t>> embedding; // into GF(p^n)
    std::optional<std::vector<std::uint64_t>> fixed_set; // sorted big indices
    std::optional<std::uint64_t> paige_order;            // |M(GF(p^d))| when it fits u64
};

/// Divisor-indexed rendering of the finite Galois correspondence for
/// GF(p^n): subfields, Galois subgroups and Paige subloop markers share the
/// divisor as their common key. The containment anti-isomorphism is
/// verified during construction.
struct GaloisTower {
    std::uint64_t p = 0;
    std::uint64_t n = 1;
    Field big = Field::rationals();
    std::vector<TowerRecord> records; // divisors ascending
    std::vector<std::pair<std::uint64_t, std::uint64_t>> covers; // (d, d'), d' covers d
    bool elementwise = false;

    const TowerRecord& record(std::uint64_t d) const;
};

GaloisTower correspondence_table(std::uint64_t p, std::uint64_t n,
                                 const TowerOptions& opts = {});

/// Meet and join in the divisor lattice (= subfield intersection and
/// compositum). Arguments must divide n.
std::uint64_t lattice_meet(const GaloisTower& tower, std::uint64_t d1, std::uint64_t d2);
std::uint64_t lattice_join(const GaloisTower& tower, std::uint64_t d1, std::uint64_t d2);

struct EmbedOptions {
    std::uint64_t max_small_elements = 2'000'000; // guardrail on the small loop
    unsigned threads = 0;
};

/// The loop embedding M(GF(p^m)) -> M(GF(p^n)) induced componentwise by the
/// subfield embedding. Verified exhaustively over the small loop: injective
/// and multiplication-preserving. The big loop is never enumerated; its
/// side of every product is computed directly from Zorn arithmetic.
struct PaigeEmbedding {
    Field small_field = Field::rationals();
    Field big_field = Field::rationals();
    std::vector<std::uint64_t> element_map; // field indices
    std::uint64_t small_order = 0;
    std::vector<std::uint64_t> image_keys;  // canonical big-loop key per small index
    std::uint64_t pairs_checked = 0;
};
PaigeEmbedding embed_paige(const Field& small, const Field& big,
                           const EmbedOptions& opts = {});

std::string tower_to_dot(const GaloisTower& tower);
std::string tower_to_json(const GaloisTower& tower); // pretty-printed document

} // namespace paige

#endif
