#ifndef PAIGE_PAIGE_LOOP_HPP
#define PAIGE_PAIGE_LOOP_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "paige/zorn.hpp"

namespace paige {

/// Canonical representative of a unit-norm Zorn matrix modulo the center
/// {1, -1}: of {a, -a}, the one whose serialized 8-tuple is
/// lexicographically smaller. In characteristic 2 every unit-norm matrix is
/// its own representative.
class PaigeElement {
public:
    const ZornMatrix& rep() const { return rep_; }
    friend bool operator==(const PaigeElement& x, const PaigeElement& y) {
        return x.rep_ == y.rep_;
    }
    friend bool operator!=(const PaigeElement& x, const PaigeElement& y) { return !(x == y); }

private:
    friend PaigeElement canonicalize(const ZornMatrix&);
    explicit PaigeElement(ZornMatrix rep) : rep_(std::move(rep)) {}
    ZornMatrix rep_;
};

PaigeElement canonicalize(const ZornMatrix& a); // throws unless norm(a) == 1
PaigeElement paige_mul(const PaigeElement& x, const PaigeElement& y);
PaigeElement paige_inv(const PaigeElement& x);
/// Loop associator: the u with (xy)z = (x(yz)) u, i.e. (x(yz))^{-1} ((xy)z).
PaigeElement loop_associator(const PaigeElement& x, const PaigeElement& y,
                             const PaigeElement& z);
std::uint64_t element_order(const PaigeElement& x);

/// |M(GF(q))| = q^3 (q^4 - 1) / gcd(2, q - 1).
std::uint64_t predicted_order(std::uint64_t q);
/// |M*(GF(q))| = q^3 (q^4 - 1).
std::uint64_t predicted_star_order(std::uint64_t q);

struct EnumerateOptions {
    bool quotient = true;                     // false: the unit-norm loop M*(F)
    std::uint64_t max_elements = 2'000'000;   // guardrail on the predicted order
};

/// The enumerated loop M(F) (or M*(F)): element i is a canonical 8-tuple of
/// field-element indices, identity at index 0, the rest ascending by packed
/// key. Immutable; all ops are pure.
class PaigeLoop {
public:
    static PaigeLoop enumerate(const Field& f, const EnumerateOptions& opts = {});

    /// Rebuild from a stored tuple list (cache load). Validates canonical
    /// form, ordering, unit norms and the identity slot; classifies the list
    /// as M (all tuples canonical) or M* (closed under negation).
    static PaigeLoop from_tuples(const Field& f,
                                 const std::vector<std::array<std::uint64_t, 8>>& tuples);

    const Field& field() const { return field_; }
    bool quotiented() const { return quotient_; }
    std::uint32_t size() const { return static_cast<std::uint32_t>(keys_.size()); }

    std::uint32_t mul(std::uint32_t i, std::uint32_t j) const;
    std::uint32_t inv(std::uint32_t i) const;
    std::uint64_t order_of(std::uint32_t i) const;

    const std::array<std::uint8_t, 8>& components(std::uint32_t i) const { return comps_[i]; }
    std::array<std::uint64_t, 8> tuple(std::uint32_t i) const;
    ZornMatrix matrix(std::uint32_t i) const;
    PaigeElement element(std::uint32_t i) const;

    std::uint32_t index_of(const PaigeElement& x) const;
    std::optional<std::uint32_t> find_tuple(const std::array<std::uint64_t, 8>& t) const;

    /// Permutation induced by applying the Frobenius k times to every
    /// component and recanonicalizing. 0 <= k < degree.
    std::vector<std::uint32_t> frobenius_map(unsigned k) const;

    std::uint64_t key_at(std::uint32_t i) const { return keys_[i]; }

private:
    PaigeLoop(Field f, bool quotient);
    void finalize(std::vector<std::uint64_t> keys); // sort, dedup, rotate identity, decode
    std::uint64_t encode(const std::uint8_t* t) const;
    void canonical_of(std::uint8_t* t) const; // in place, no-op unless quotiented char != 2
    std::uint32_t index_of_key(std::uint64_t key) const;

    Field field_;
    bool quotient_;
    std::uint64_t q_;
    std::uint64_t identity_key_;
    std::vector<std::uint64_t> keys_;                 // [0] = identity, [1..] ascending
    std::vector<std::array<std::uint8_t, 8>> comps_;  // decoded tuples
    std::vector<std::uint32_t> dense_index_;          // key -> index+1 when q^8 is small
    // raw table pointers into the (shared, immutable) field data
    const std::uint32_t* add_tab_ = nullptr;
    const std::uint32_t* mul_tab_ = nullptr;
    const std::uint32_t* neg_tab_ = nullptr;
};

} // namespace paige

#endif
