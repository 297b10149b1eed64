#ifndef PAIGE_ZORN_HPP
#define PAIGE_ZORN_HPP

#include <array>
#include <cstdint>
#include <string>

#include "paige/field.hpp"

namespace paige {

/// Coordinate vector in F^3.
struct Vec3 {
    FieldElem c1, c2, c3;

    friend bool operator==(const Vec3& a, const Vec3& b) {
        return a.c1 == b.c1 && a.c2 == b.c2 && a.c3 == b.c3;
    }
    friend bool operator!=(const Vec3& a, const Vec3& b) { return !(a == b); }
};

/// Zorn vector matrix (a1, a12; a21, a2): scalar diagonal, vector
/// off-diagonal. The element type of the split octonion algebra C(F).
class ZornMatrix {
public:
    ZornMatrix(Field field, FieldElem a1, Vec3 a12, Vec3 a21, FieldElem a2)
        : field_(std::move(field)), a1_(a1), a12_(a12), a21_(a21), a2_(a2) {}

    const Field& field() const { return field_; }
    const FieldElem& a1() const { return a1_; }
    const Vec3& a12() const { return a12_; }
    const Vec3& a21() const { return a21_; }
    const FieldElem& a2() const { return a2_; }

    /// Fixed serialization order (a1, a12_1, a12_2, a12_3, a21_1, a21_2,
    /// a21_3, a2) as element indices. Finite fields only.
    std::array<std::uint64_t, 8> serialize() const;

    friend bool operator==(const ZornMatrix& x, const ZornMatrix& y) {
        return x.field_ == y.field_ && x.a1_ == y.a1_ && x.a12_ == y.a12_ &&
               x.a21_ == y.a21_ && x.a2_ == y.a2_;
    }
    friend bool operator!=(const ZornMatrix& x, const ZornMatrix& y) { return !(x == y); }

private:
    Field field_;
    FieldElem a1_;
    Vec3 a12_, a21_;
    FieldElem a2_;
};

Vec3 zero_vec(const Field& f);
Vec3 basis_vec(const Field& f, int i); // e1, e2, e3 for i = 1, 2, 3

ZornMatrix zorn_identity(const Field& f);
ZornMatrix zorn_zero(const Field& f);
ZornMatrix zorn_diag(const Field& f, const FieldElem& a, const FieldElem& b);
ZornMatrix zorn_from_tuple(const Field& f, const std::array<std::uint64_t, 8>& t);

FieldElem dot(const Field& f, const Vec3& g, const Vec3& d);
Vec3 cross(const Field& f, const Vec3& g, const Vec3& d);

ZornMatrix zorn_add(const ZornMatrix& a, const ZornMatrix& b);
ZornMatrix zorn_sub(const ZornMatrix& a, const ZornMatrix& b);
ZornMatrix scalar_mul(const FieldElem& c, const ZornMatrix& a);
ZornMatrix zorn_neg(const ZornMatrix& a);
ZornMatrix zorn_mul(const ZornMatrix& a, const ZornMatrix& b);
FieldElem norm(const ZornMatrix& a);
ZornMatrix conjugate(const ZornMatrix& a);
ZornMatrix zorn_inverse(const ZornMatrix& a); // throws value_error on zero norm

/// Algebra associator (a, b, c) = (ab)c - a(bc).
ZornMatrix alg_associator(const ZornMatrix& a, const ZornMatrix& b, const ZornMatrix& c);

std::string to_string(const ZornMatrix& a);

} // namespace paige

#endif
