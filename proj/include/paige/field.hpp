#ifndef PAIGE_FIELD_HPP
#define PAIGE_FIELD_HPP

#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "paige/errors.hpp"
#include "paige/rational.hpp"

namespace paige {

/// One element of a field. For GF(p^n) this is the stable index in
/// [0, p^n) obtained by base-p evaluation of the coefficient vector; for the
/// rationals it is an exact fraction. Elements do not remember their field;
/// all arithmetic goes through Field.
class FieldElem {
public:
    FieldElem() : v_(std::uint64_t{0}) {}
    explicit FieldElem(std::uint64_t index) : v_(index) {}
    explicit FieldElem(Rational r) : v_(r) {}

    bool is_rational() const { return std::holds_alternative<Rational>(v_); }
    std::uint64_t index() const {
        if (is_rational()) throw value_error("rational element has no index");
        return std::get<std::uint64_t>(v_);
    }
    const Rational& rational() const {
        if (!is_rational()) throw value_error("finite-field element is not rational");
        return std::get<Rational>(v_);
    }

    friend bool operator==(const FieldElem& a, const FieldElem& b) { return a.v_ == b.v_; }
    friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }

private:
    std::variant<std::uint64_t, Rational> v_;
};

/// A concrete field: GF(p) for prime p, GF(p^n) with a deterministically
/// chosen irreducible modulus, or the rationals (characteristic 0, used only
/// for spot checks). Immutable after construction; cheap to copy.
///
/// Modulus choice for GF(p^n), n > 1: the first monic irreducible
/// x^n + c_{n-1} x^{n-1} + ... + c_0 found when the low-coefficient vector
/// (c_0, ..., c_{n-1}) runs through base-p counting order (constant term =
/// least significant digit). Same (p, n) always yields the same modulus, so
/// all element indices are reproducible.
class Field {
public:
    /// make_field. p = 0 with n = 1 gives the rationals.
    static Field make(std::uint64_t p, std::uint64_t n);
    static Field rationals() { return make(0, 1); }

    std::uint64_t characteristic() const; // p, 0 for rationals
    std::uint64_t degree() const;         // n
    std::uint64_t order() const;          // p^n, 0 for rationals
    bool is_rational_field() const { return characteristic() == 0; }

    /// Modulus coefficients c_0..c_{n-1} (leading x^n implicit).
    /// Empty when n == 1 or for the rationals.
    const std::vector<std::uint32_t>& modulus() const;

    // -- element construction ------------------------------------------------
    FieldElem zero() const;
    FieldElem one() const;
    FieldElem from_index(std::uint64_t idx) const;
    FieldElem from_int(std::int64_t v) const; // canonical image of an integer
    FieldElem from_rational(const Rational& r) const;
    std::vector<std::uint32_t> coefficients(const FieldElem& a) const; // length n, base-p digits

    // -- arithmetic ----------------------------------------------------------
    FieldElem add(const FieldElem& a, const FieldElem& b) const;
    FieldElem sub(const FieldElem& a, const FieldElem& b) const;
    FieldElem mul(const FieldElem& a, const FieldElem& b) const;
    FieldElem neg(const FieldElem& a) const;
    FieldElem inv(const FieldElem& a) const; // throws value_error on zero
    FieldElem pow(const FieldElem& a, std::uint64_t e) const;
    FieldElem frobenius(const FieldElem& a) const; // a^p; throws for rationals
    std::uint64_t multiplicative_order(const FieldElem& a) const; // a != 0, finite field

    // -- index-level ops for hot loops (finite fields only) -------------------
    std::uint32_t add_idx(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t sub_idx(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t mul_idx(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t neg_idx(std::uint32_t a) const;
    std::uint32_t inv_idx(std::uint32_t a) const;
    std::uint32_t frob_idx(std::uint32_t a) const;

    /// Raw q*q / q tables when the field is small enough to have them
    /// (order <= 256 for the binary tables); nullptr otherwise.
    const std::uint32_t* add_table() const;
    const std::uint32_t* mul_table() const;
    const std::uint32_t* neg_table() const;
    const std::uint32_t* inv_table() const; // inv_table()[0] is a sentinel 0

    /// Descriptor equality: same (p, n, modulus).
    friend bool operator==(const Field& a, const Field& b);
    friend bool operator!=(const Field& a, const Field& b) { return !(a == b); }

    /// True when both handles point at the same immutable data (fast path
    /// for the == check).
    bool same_instance(const Field& other) const { return d_ == other.d_; }

    struct Data; // opaque; defined in field.cpp

private:
    explicit Field(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    std::shared_ptr<const Data> d_;
};

/// Trial-division irreducibility over GF(p). `poly` holds coefficients
/// c_0..c_deg with c_deg the leading coefficient; must be monic, degree >= 1.
bool is_irreducible(const std::vector<std::uint32_t>& poly, std::uint64_t p);

/// Smallest-index element of multiplicative order p^n - 1. Guardrailed: the
/// whole field is scanned.
FieldElem primitive_element(const Field& f, std::uint64_t scan_limit = 1u << 20);

/// Injective (add, mul)-preserving map GF(p^m) -> GF(p^n), fixing GF(p)
/// pointwise, m | n. Returned as an index map of size p^m. Deterministic:
/// the small field's modulus root with the smallest index in the big field
/// is used. Throws value_error with distinct messages for characteristic
/// mismatch vs m not dividing n.
std::vector<std::uint64_t> subfield_embedding(const Field& small, const Field& big,
                                              std::uint64_t scan_limit = 1u << 20);

bool is_prime_u64(std::uint64_t v);

} // namespace paige

#endif
